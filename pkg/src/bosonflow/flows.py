"""One-parameter groups from vector fields on the line.

Under a+ -> multiplication by x and a -> d/dx, a word with a single
annihilator is x^{r-p} (d/dx) x^p, and exp(lam * Omega) acts as a
substitution with prefunction: (s_lam(x)/x)^p f(s_lam(x)) where s_lam is
the flow of the field x^r d/dx.  Everything here is formal: flows are
truncated bivariate series in (x, lam), integrated order by order in lam,
and every closed form is re-expanded and compared, never trusted.

The matrix exponential of the operator in the monomial basis is the
universal oracle tying this module back to normal ordering.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import boson
from .boxseries import BivarSeries, BoxSeries
from .errors import ConventionMismatch, ParseError, PreconditionError
from .riordan import RiordanPair, recover_pair, riordan_matrix
from .scalar import parse_rational
from .series import Convention, TruncSeries
from .triangular import exp_series_in_parameter

X, LAM = "x", "lam"


class HomogeneousOperator:
    """Sum of single-annihilator monomials (a+)^alpha a (a+)^beta.

    All monomials must share the same weight e = alpha + beta - 1 (the
    grading weight(a+) = 1, weight(a) = -1).
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        clean = {}
        for (alpha, beta), c in terms.items():
            c = Fraction(c)
            if alpha < 0 or beta < 0:
                raise PreconditionError("exponents must be non-negative")
            if c:
                clean[(alpha, beta)] = c
        if not clean:
            raise PreconditionError("an operator needs at least one term")
        weights = {alpha + beta - 1 for alpha, beta in clean}
        if len(weights) > 1:
            raise PreconditionError(
                f"mixed weights {sorted(weights)}: not a homogeneous operator"
            )
        self.terms = clean

    @classmethod
    def single_word(cls, r, p, c=1):
        if not 0 <= p <= r:
            raise PreconditionError("need 0 <= p <= r")
        return cls({(r - p, p): c})

    @classmethod
    def parse(cls, text):
        return parse_operator(text)

    @property
    def weight(self):
        alpha, beta = next(iter(self.terms))
        return alpha + beta - 1

    @property
    def is_single_word(self):
        return len(self.terms) == 1

    def word_shape(self):
        """(r, p, c) of a single-word operator c (a+)^{r-p} a (a+)^p."""
        if not self.is_single_word:
            raise PreconditionError("not a single word")
        (alpha, beta), c = next(iter(self.terms.items()))
        return alpha + beta, beta, c

    def normal_form(self):
        nf = boson.NormalForm()
        for (alpha, beta), c in self.terms.items():
            word = boson.BosonWord(
                (boson.CREATE,) * alpha + (boson.ANNIHILATE,) + (boson.CREATE,) * beta
            )
            nf = nf + boson.normalize(word).scale(c)
        return nf

    def __eq__(self, other):
        return isinstance(other, HomogeneousOperator) and self.terms == other.terms

    def __repr__(self):
        parts = []
        for (alpha, beta), c in sorted(self.terms.items(), reverse=True):
            mono = []
            if alpha:
                mono.append(f"(a+)^{alpha}" if alpha > 1 else "a+")
            mono.append("a")
            if beta:
                mono.append(f"(a+)^{beta}" if beta > 1 else "a+")
            body = " ".join(mono)
            parts.append(body if c == 1 else f"{c} {body}")
        return "HomogeneousOperator(%s)" % " + ".join(parts)


@dataclass(frozen=True)
class Flow:
    """Bivariate substitution factor s_lam(x) with its tangent field."""

    v: TruncSeries
    box: BoxSeries  # raw coefficients over (x, lam)

    @property
    def orders(self):
        return self.box.orders

    def coeff(self, n, k):
        return self.box.coeff(n, k)

    def bivar(self):
        return BivarSeries.from_box(self.box, Convention.OGF, Convention.OGF)

    def tangent(self):
        """d/dlam at lam = 0, as raw x-coefficients."""
        n_x = self.orders[0]
        return [self.box.coeff(n, 1) for n in range(n_x + 1)]


def formal_flow(v, orders):
    """Integrate ds/dlam = v(s), s_0(x) = x, order by order in lam.

    ``v`` must be known to x-order at least N_x + N_lam, or the higher
    lam coefficients would be undetermined.
    """
    n_x, n_lam = orders
    if v.order < n_x + n_lam:
        raise PreconditionError(
            f"field known to order {v.order} cannot determine the flow to "
            f"orders ({n_x}, {n_lam})"
        )
    v_box = BoxSeries.from_univariate(v, ("u",), (n_x + n_lam,), "u")
    s = BoxSeries.generator((X, LAM), (n_x, n_lam), X)
    for k in range(n_lam):
        w = v_box.substitute("u", s)  # v(s_lam(x))
        slice_k = {
            (n, k + 1): c * Fraction(1, k + 1)
            for (n, kk), c in w.coeffs.items()
            if kk == k
        }
        s = s + BoxSeries((X, LAM), (n_x, n_lam), slice_k)
    return Flow(v, s)


def _field_monomial(r, c, order):
    return TruncSeries.monomial(Convention.OGF, order, r, c)


def substitution_factor_closed(r, orders):
    """Closed-form flow of x^r: shift, dilation, or the binomial formula.

    r = 0: x + lam; r = 1: x e^lam; otherwise
    x (1 - lam (r-1) x^{r-1})^{-1/(r-1)}.  Built independently of the
    integrator so the two can be compared coefficient for coefficient.
    """
    if r < 0:
        raise PreconditionError("r must be >= 0")
    n_x, n_lam = orders
    env = ((X, LAM), (n_x, n_lam))
    x = BoxSeries.generator(*env, X)
    lam = BoxSeries.generator(*env, LAM)
    if r == 0:
        s = x + lam
    elif r == 1:
        s = x * lam.exp()
    else:
        base = BoxSeries.constant(*env, 1) - lam * x.pow_int(r - 1).scale(r - 1)
        s = x * base.pow_fraction(Fraction(-1, r - 1))
    return Flow(_field_monomial(r, 1, n_x + n_lam), s)


def group_action(op, f, orders):
    """e^{lam Omega} [f] for a single-word operator: (s/x)^p f(s).

    The prefactor exponent is the word's p; the pure-substitution case is
    p = 0.  Requires excess e = r - 1 >= 0 and f known to x-order at
    least N_x + N_lam.
    """
    n_x, n_lam = orders
    r, p, c = op.word_shape()
    if r < 1:
        raise PreconditionError("group_action needs excess e = r - 1 >= 0")
    if f.order < n_x + n_lam:
        raise PreconditionError("f known to too small an order for this box")
    v = _field_monomial(r, c, n_x + p + n_lam)
    flow = formal_flow(v, (n_x + p, n_lam))
    s = flow.box
    result = BoxSeries.from_univariate(f, ("u",), (f.order,), "u").substitute(
        "u", s.truncate((n_x, n_lam))
    )
    if p:
        pref = s.divide_by_power(X, 1).pow_int(p).truncate((n_x, n_lam))
        result = pref * result
    return BivarSeries.from_box(result, Convention.OGF, Convention.OGF)


def conjugacy_exp(u1, u2, f, orders):
    """e^{lam u1 (d/dx) u2} [f] = (1/u2) * (u2 f)(s), s the flow of u1 u2.

    u2 must either be invertible as a series (nonzero constant term) or a
    pure monomial c x^p, handled by exponent bookkeeping.
    """
    n_x, n_lam = orders
    if u1.conv is not u2.conv or u1.conv is not f.conv:
        raise ConventionMismatch("u1, u2, f must share a convention")
    common = min(u1.order, u2.order, f.order)
    if common < n_x + n_lam:
        raise PreconditionError("inputs known to too small an order for this box")
    u1, u2, f = u1.truncate(common), u2.truncate(common), f.truncate(common)
    v = u1 * u2
    nonzero = [n for n, c in enumerate(u2.raw_list()) if c]
    if not nonzero:
        raise PreconditionError("u2 must be nonzero")
    if u2.raw(0):
        flow = formal_flow(v, (n_x, n_lam))
        s = flow.box
        w = u2 * f
        result = BoxSeries.from_univariate(w, ("u",), (w.order,), "u").substitute("u", s)
        inv = BoxSeries.from_univariate(
            u2.inverse().truncate(n_x), (X, LAM), (n_x, n_lam), X
        )
        result = inv * result
    elif len(nonzero) == 1:
        p = nonzero[0]
        if v.order < n_x + p + n_lam:
            raise PreconditionError(
                "u1, u2 known to too small an order for the monomial prefactor"
            )
        flow = formal_flow(v, (n_x + p, n_lam))
        s = flow.box
        result = BoxSeries.from_univariate(f, ("u",), (f.order,), "u").substitute(
            "u", s.truncate((n_x, n_lam))
        )
        pref = s.divide_by_power(X, 1).pow_int(p).truncate((n_x, n_lam))
        result = pref * result
    else:
        raise PreconditionError(
            "u2 must be invertible or a pure monomial x^p"
        )
    return BivarSeries.from_box(result, Convention.OGF, Convention.OGF)


def operator_exp_grid(op_nf, m, orders):
    """Oracle: column m of the truncated exp(lam H), H the monomial-basis matrix.

    Returns the BivarSeries grid of e^{lam Omega}[x^m] computed purely
    from normal ordering and matrix arithmetic.
    """
    n_x, n_lam = orders
    size = max(n_x, m + n_lam) + 1
    h = op_nf.apply_to_monomials(size - 1)
    expm = exp_series_in_parameter(h, n_lam)
    grid = [
        [expm.entry(n, m).coeff(k) for k in range(n_lam + 1)] for n in range(n_x + 1)
    ]
    return BivarSeries(Convention.OGF, Convention.OGF, grid)


def flow_group_law_holds(v, orders):
    """Trivariate check s_lam(s_mu(x)) = s_{lam+mu}(x) inside the box.

    The left side needs the outer flow to x-order N_x + N_lam; the right
    side needs it to lam-order 2 N_lam, so the comparison box
    (N_x, N_lam, N_lam) is fully determined on both sides.
    """
    n_x, n_lam = orders
    big = formal_flow(v, (n_x + n_lam, max(n_lam, 2 * n_lam)))
    outer = big.box.truncate((n_x + n_lam, n_lam)).rename({X: "y"})
    inner = big.box.truncate((n_x, n_lam)).rename({LAM: "mu"})
    lhs = outer.substitute("y", inner).reorder((X, LAM, "mu"))

    env = ((LAM, "mu"), (n_lam, n_lam))
    lam_plus_mu = BoxSeries.generator(*env, LAM) + BoxSeries.generator(*env, "mu")
    rhs = (
        big.box.truncate((n_x, 2 * n_lam))
        .substitute(LAM, lam_plus_mu)
        .reorder((X, LAM, "mu"))
    )
    if lhs == rhs:
        return True, None
    for exps in sorted(set(lhs.coeffs) | set(rhs.coeffs)):
        if lhs.coeffs.get(exps) != rhs.coeffs.get(exps):
            return False, exps
    return False, None


@dataclass
class CorrespondenceReport:
    ok: bool
    sheffer_ok: bool
    mismatches: list = field(default_factory=list)
    detail: str = ""

    def __bool__(self):
        return self.ok


def characteristic_correspondence(op, n_max, lam_order=6, mono_max=6):
    """Normal-ordering coefficients vs one-parameter group action.

    Computes the triangle S(n, k) of the operator by normal ordering,
    recovers (g, phi) by the Sheffer machinery, rebuilds the group action
    U_lam[f](x) = g(lam x^e) f(x (1 + phi(lam x^e))) from the pair, and
    compares it against the matrix-exponential oracle on monomials.
    """
    e = op.weight
    if e < 0:
        raise PreconditionError("the correspondence needs excess e >= 0")
    order = max(n_max, lam_order)
    base = op.normal_form()
    rows = []
    nf = boson.NormalForm.identity()
    for n in range(order + 1):
        if n:
            nf = nf * base
        rows.append(boson._extract_row(nf, n, e, integral=False))
    triangle = boson.StirlingMatrix(None, e, rows[: n_max + 1])
    full = boson.StirlingMatrix(None, e, rows)

    m = full.to_square_matrix()
    try:
        pair = recover_pair(m, Convention.EGF)
    except PreconditionError as exc:
        return triangle, None, CorrespondenceReport(False, False, detail=str(exc))
    if pair.order < lam_order or riordan_matrix(pair, pair.order) != m.truncate(pair.order):
        return triangle, pair, CorrespondenceReport(
            False, False, detail="matrix fails the Sheffer column law"
        )

    n_x = mono_max + e * lam_order
    env = ((X, LAM), (n_x, lam_order))
    z = BoxSeries.generator(*env, LAM) * BoxSeries.generator(*env, X).pow_int(e)
    g_z = BoxSeries.from_univariate(pair.g.convert(Convention.OGF), ("u",), (pair.order,), "u").substitute("u", z)
    phi_z = BoxSeries.from_univariate(pair.phi.convert(Convention.OGF), ("u",), (pair.order,), "u").substitute("u", z)
    x_gen = BoxSeries.generator(*env, X)
    inner = x_gen * (BoxSeries.constant(*env, 1) + phi_z)

    mismatches = []
    upow = BoxSeries.constant(*env, 1)
    for mono in range(mono_max + 1):
        if mono:
            upow = upow * inner
        reconstructed = BivarSeries.from_box(
            g_z * upow, Convention.OGF, Convention.OGF
        )
        oracle = operator_exp_grid(base, mono, (n_x, lam_order))
        if reconstructed != oracle:
            for n in range(n_x + 1):
                for k in range(lam_order + 1):
                    if reconstructed.coeff(n, k) != oracle.coeff(n, k):
                        mismatches.append((mono, n, k))
    ok = not mismatches
    return triangle, pair, CorrespondenceReport(ok, True, mismatches)


# -- operator and field parsing ---------------------------------------


def parse_operator(text):
    """Sums of coefficient-weighted single-annihilator words.

    Examples: ``a+ a a+``, ``3/2 (a+)^2 a``, ``(a+)^2 a + a`` (the last
    is rejected as mixed-weight).
    """
    stream = boson.TokenStream(boson.tokenize(text))
    terms = {}
    while True:
        coeff = Fraction(1)
        kind, value, pos = stream.peek()
        if kind == "number":
            stream.next()
            coeff = parse_rational(value)
            if stream.peek()[0] == "star":
                stream.next()
        start = stream.peek()
        letters = boson._parse_expr(stream)
        word = boson.BosonWord(letters)
        if word.annihilations != 1:
            raise ParseError(
                "operator terms must contain exactly one annihilator", start[2]
            )
        idx = letters.index(boson.ANNIHILATE)
        key = (idx, len(letters) - idx - 1)
        terms[key] = terms.get(key, Fraction(0)) + coeff
        kind, value, pos = stream.peek()
        if kind == "plus":
            stream.next()
            continue
        if kind == "end":
            break
        raise ParseError(f"unexpected {value!r} in operator", pos)
    try:
        return HomogeneousOperator(terms)
    except PreconditionError as exc:
        raise ParseError(str(exc), 0) from exc


def parse_field(text, order):
    """Polynomial vector fields such as ``x^2`` or ``1 + x^2``, exact.

    Returns a TruncSeries (OGF) padded to the requested order.
    """
    stream = boson.TokenStream(boson.tokenize(text))
    coeffs = {}
    while True:
        kind, value, pos = stream.peek()
        coeff = Fraction(1)
        if kind == "number":
            stream.next()
            coeff = parse_rational(value)
            if stream.peek()[0] == "star":
                stream.next()
            kind, value, pos = stream.peek()
        degree = 0
        if kind == "x":
            stream.next()
            degree = 1
            if stream.peek()[0] == "caret":
                stream.next()
                k, v, p = stream.expect("number")
                if "/" in v or v.startswith("-"):
                    raise ParseError("exponents must be non-negative integers", p)
                degree = int(v)
        elif kind not in ("plus", "end"):
            raise ParseError(f"unexpected {value!r} in field expression", pos)
        coeffs[degree] = coeffs.get(degree, Fraction(0)) + coeff
        kind, value, pos = stream.peek()
        if kind == "plus":
            stream.next()
            continue
        if kind == "end":
            break
        raise ParseError(f"unexpected {value!r} in field expression", pos)
    top = max(coeffs)
    if top > order:
        raise ParseError(f"field degree {top} exceeds the requested order {order}", 0)
    return TruncSeries.from_raw(
        Convention.OGF, [coeffs.get(n, Fraction(0)) for n in range(order + 1)]
    )
