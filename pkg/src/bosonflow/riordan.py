"""Substitution-with-prefunction (Riordan) matrices.

A pair (g, phi) with phi(0) = 0 acts on series by f -> g * (f o phi); in
a fixed denominator convention its matrix has column k generating
function g * phi^k / d_k.  This module builds the matrix from a pair,
recovers the candidate pair from a matrix, tests the full column law
(the Sheffer condition), composes pairs, and expands the bivariate
characteristic series g(x) e^{y phi(x)} for the EGF convention.
"""

from dataclasses import dataclass
from fractions import Fraction

from .boxseries import BivarSeries, BoxSeries
from .errors import ConventionMismatch, PreconditionError
from .scalar import format_rational, parse_rational
from .series import Convention, TruncSeries
from .triangular import TriMatrix


@dataclass(frozen=True)
class RiordanPair:
    g: TruncSeries
    phi: TruncSeries

    def __post_init__(self):
        if self.g.conv is not self.phi.conv:
            raise ConventionMismatch("g and phi must share a convention")
        if self.g.order != self.phi.order:
            raise ConventionMismatch("g and phi must share an order")
        if self.phi.raw(0) != 0:
            raise PreconditionError("phi must have no constant term")

    @property
    def convention(self):
        return self.g.conv

    @property
    def order(self):
        return self.g.order

    def is_unipotent(self):
        """Unit diagonal of the matrix: g(0) = 1 and phi'(0) = 1, raw."""
        return self.g.raw(0) == 1 and self.phi.raw(1) == 1

    @classmethod
    def identity(cls, conv, order):
        return cls(TruncSeries.one(conv, order), TruncSeries.x(conv, order))


def riordan_matrix(pair, n_max):
    """Matrix with column k reading off g * phi^k / d_k."""
    if pair.order < n_max:
        raise PreconditionError("series order too small for the requested matrix")
    conv = pair.convention
    g = pair.g.truncate(n_max) if pair.order > n_max else pair.g
    phi = pair.phi.truncate(n_max) if pair.order > n_max else pair.phi
    cols = []
    current = g
    for k in range(n_max + 1):
        if k:
            current = current * phi
        dk = Fraction(1, conv.denominator(k))
        cols.append([current.raw(n) * dk * conv.denominator(n) for n in range(n_max + 1)])
    return TriMatrix([[cols[k][n] for k in range(n_max + 1)] for n in range(n_max + 1)])


def recover_pair(m, conv):
    """The unique candidate (g, phi) from columns 0 and 1 of a matrix."""
    size = m.size
    col0 = [m.entry(n, 0) for n in range(size)]
    col1 = [m.entry(n, 1) for n in range(size)]
    if not any(col0) or not any(col1):
        raise PreconditionError("pair recovery needs nonzero first two columns")
    first0 = next(n for n, c in enumerate(col0) if c)
    first1 = next(n for n, c in enumerate(col1) if c)
    if first0 > first1:
        raise PreconditionError(
            "column ordering hypothesis violated: column 0 starts below column 1"
        )
    order = size - 1
    g = TruncSeries.from_raw(
        conv, [Fraction(c, conv.denominator(n)) for n, c in enumerate(col0)]
    )
    col1_series = TruncSeries.from_raw(
        conv, [Fraction(c, conv.denominator(n)) for n, c in enumerate(col1)]
    )
    phi = col1_series.divide(g).scale(conv.denominator(1))
    # dividing by a valuation-l series shortens the result; keep the pair
    # orders aligned
    if phi.order < order:
        g = g.truncate(phi.order)
    if phi.raw(0) != 0:
        raise PreconditionError("recovered phi has a constant term; not row-finite")
    return RiordanPair(g, phi)


@dataclass
class ShefferResult:
    ok: bool
    witness: tuple | None
    pair: RiordanPair | None

    def __bool__(self):
        return self.ok


def is_sheffer(m, conv):
    """Full column law: every column k equals g * phi^k / d_k.

    Exact equality only; on failure the witness is the first violating
    (column, row).
    """
    try:
        pair = recover_pair(m, conv)
    except PreconditionError:
        return ShefferResult(False, None, None)
    n_check = pair.order
    current = pair.g
    for k in range(m.size):
        if k:
            if k > n_check:
                break
            current = current * pair.phi
        dk = Fraction(1, conv.denominator(k))
        for n in range(n_check + 1):
            expected = current.raw(n) * dk * conv.denominator(n)
            if m.entry(n, k) != expected:
                return ShefferResult(False, (k, n), pair)
    # columns beyond the diagonal of the checked region must vanish
    for n in range(n_check + 1):
        for k in range(n_check + 1, m.size):
            if m.entry(n, k):
                return ShefferResult(False, (k, n), pair)
    return ShefferResult(True, None, pair)


def riordan_compose(p, q):
    """Pair whose matrix is riordan_matrix(p) * riordan_matrix(q).

    Operator composition gives g = g_p * (g_q o phi_p) and
    phi = phi_q o phi_p; the matrix-product contract is what tests pin.
    """
    if p.convention is not q.convention:
        raise ConventionMismatch("pair conventions differ")
    if p.order != q.order:
        raise ConventionMismatch("pair orders differ")
    g = p.g * q.g.compose(p.phi)
    phi = q.phi.compose(p.phi)
    return RiordanPair(g, phi)


def bivariate_char_series(pair, orders):
    """Grid T(n, k) of g(x) e^{y phi(x)}; EGF in x, plain powers of y.

    An independent route to the matrix entries: tests compare it against
    riordan_matrix column by column.
    """
    if pair.convention is not Convention.EGF:
        raise PreconditionError("the characteristic series is stated for EGF")
    n_x, n_y = orders
    if pair.order < n_x:
        raise PreconditionError("series order too small for the requested grid")
    vars, caps = ("x", "y"), (n_x, n_y)
    g_box = BoxSeries.from_univariate(pair.g, vars, caps, "x")
    phi_box = BoxSeries.from_univariate(pair.phi, vars, caps, "x")
    y = BoxSeries.generator(vars, caps, "y")
    box = g_box * (y * phi_box).exp()
    return BivarSeries.from_box(box, Convention.EGF, Convention.OGF)


# -- JSON round trip --------------------------------------------------


def pair_to_json(pair):
    return {
        "convention": pair.convention.value.upper(),
        "g": [format_rational(c) for c in pair.g.coeffs],
        "phi": [format_rational(c) for c in pair.phi.coeffs],
        "order": pair.order,
    }


def pair_from_json(data):
    conv = Convention(data["convention"].lower())
    order = data["order"]
    g = TruncSeries.from_display(conv, [parse_rational(c) for c in data["g"]], order=order)
    phi = TruncSeries.from_display(conv, [parse_rational(c) for c in data["phi"]], order=order)
    return RiordanPair(g, phi)
