"""Truncated square matrices and the unipotent one-parameter calculus.

The interesting classes are the lower-triangular ones: invertible
(nonzero diagonal), unipotent (unit diagonal) and strictly lower
(zero diagonal, hence nilpotent at any truncation size).  exp and log
between the last two are finite sums here, so they are exact, and
fractional powers M^t come out with entries polynomial in t of degree
at most n - k.

General (non-triangular) matrices are also allowed; they appear as
monomial-basis representations of operators that lower degree, and in
the truncated exponential-in-a-parameter oracle.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import PreconditionError
from .parampoly import ParamPoly, generalized_binomial
from .scalar import format_rational, parse_rational


def _coerce(c):
    if isinstance(c, ParamPoly):
        return c
    if isinstance(c, str):
        return parse_rational(c)
    return Fraction(c)


class TriMatrix:
    """Square matrix with exact entries (rationals or parameter polynomials)."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(_coerce(c) for c in row) for row in rows)
        n = len(self.rows)
        if any(len(row) != n for row in self.rows):
            raise PreconditionError("matrix must be square")

    @classmethod
    def identity(cls, size):
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def zero(cls, size):
        return cls([[0] * size for _ in range(size)])

    @classmethod
    def from_lower_rows(cls, rows):
        """Build from lower-triangular row-major data (row n has n+1 entries)."""
        size = len(rows)
        full = []
        for n, row in enumerate(rows):
            if len(row) != n + 1:
                raise PreconditionError("row %d must have %d entries" % (n, n + 1))
            full.append(list(row) + [0] * (size - n - 1))
        return cls(full)

    @property
    def size(self):
        return len(self.rows)

    def entry(self, n, k):
        return self.rows[n][k]

    def __eq__(self, other):
        return isinstance(other, TriMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"TriMatrix(size={self.size})"

    # -- classification ------------------------------------------------

    def is_lower_triangular(self):
        return all(
            not self.rows[n][k] for n in range(self.size) for k in range(n + 1, self.size)
        )

    def is_unipotent(self):
        return self.is_lower_triangular() and all(
            self.rows[n][n] == 1 for n in range(self.size)
        )

    def is_strictly_lower(self):
        return self.is_lower_triangular() and all(
            not self.rows[n][n] for n in range(self.size)
        )

    def is_diagonal(self):
        return all(
            not self.rows[n][k]
            for n in range(self.size)
            for k in range(self.size)
            if n != k
        )

    def is_invertible_triangular(self):
        return self.is_lower_triangular() and all(
            self.rows[n][n] for n in range(self.size)
        )

    def matrix_class(self):
        if self.is_strictly_lower():
            return "NT"
        if self.is_unipotent():
            return "UT"
        if self.is_diagonal() and all(self.rows[n][n] for n in range(self.size)):
            return "D_inv"
        if self.is_invertible_triangular():
            return "T_inv"
        return "general"

    # -- arithmetic ----------------------------------------------------

    def _check_size(self, other):
        if self.size != other.size:
            raise PreconditionError("matrix sizes differ")

    def __add__(self, other):
        self._check_size(other)
        return TriMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other):
        self._check_size(other)
        return TriMatrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ]
        )

    def scale(self, c):
        return TriMatrix([[a * c for a in row] for row in self.rows])

    def __mul__(self, other):
        self._check_size(other)
        size = self.size
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = Fraction(0)
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return TriMatrix(out)

    def power(self, p):
        """Integer power; negative powers require an invertible triangular matrix."""
        if p < 0:
            return self.inverse().power(-p)
        result = TriMatrix.identity(self.size)
        for _ in range(p):
            result = result * self
        return result

    def inverse(self):
        """Inverse of an invertible lower-triangular matrix (forward substitution)."""
        if not self.is_invertible_triangular():
            raise PreconditionError("inverse needs an invertible triangular matrix")
        size = self.size
        inv = [[Fraction(0)] * size for _ in range(size)]
        for k in range(size):
            inv[k][k] = 1 / self.rows[k][k]
            for n in range(k + 1, size):
                acc = Fraction(0)
                for j in range(k, n):
                    if self.rows[n][j] and inv[j][k]:
                        acc = acc + self.rows[n][j] * inv[j][k]
                inv[n][k] = -acc / self.rows[n][n]
        return TriMatrix(inv)

    def truncate(self, n):
        """The [0..n] x [0..n] corner; an algebra morphism on triangular matrices."""
        if n > self.size - 1:
            raise PreconditionError("truncation size exceeds the matrix size")
        return TriMatrix([row[: n + 1] for row in self.rows[: n + 1]])

    def specialize(self, value):
        """Evaluate every ParamPoly entry at a concrete parameter value."""
        return TriMatrix(
            [
                [c(value) if isinstance(c, ParamPoly) else c for c in row]
                for row in self.rows
            ]
        )


def decompose(m):
    """Factor an invertible triangular matrix as diagonal times unipotent."""
    if not m.is_invertible_triangular():
        raise PreconditionError("decomposition needs a nonzero diagonal")
    diag = TriMatrix(
        [
            [m.rows[n][n] if n == k else 0 for k in range(m.size)]
            for n in range(m.size)
        ]
    )
    unip = TriMatrix([[c / m.rows[n][n] for c in row] for n, row in enumerate(m.rows)])
    return diag, unip


def mat_exp(h):
    """exp of a strictly lower matrix: a finite sum by nilpotency."""
    if not h.is_strictly_lower():
        raise PreconditionError("mat_exp needs a strictly lower-triangular matrix")
    acc = TriMatrix.identity(h.size)
    pw = TriMatrix.identity(h.size)
    for k in range(1, h.size):
        pw = pw * h
        acc = acc + pw.scale(Fraction(1, factorial(k)))
    return acc


def mat_log(m):
    """log of a unipotent matrix: sum (-1)^{k-1} N^k / k, N = M - I."""
    if not m.is_unipotent():
        raise PreconditionError("mat_log needs a unipotent matrix")
    n = m - TriMatrix.identity(m.size)
    acc = TriMatrix.zero(m.size)
    pw = TriMatrix.identity(m.size)
    for k in range(1, m.size):
        pw = pw * n
        acc = acc + pw.scale(Fraction((-1) ** (k - 1), k))
    return acc


def mat_power(m, t):
    """M^t = sum_k binom(t, k) (M - I)^k for unipotent M.

    ``t`` may be a rational or a ParamPoly; entries of the result are
    polynomials in t of degree at most n - k, with unit diagonal.
    """
    if not m.is_unipotent():
        raise PreconditionError("fractional powers need a unipotent matrix")
    n = m - TriMatrix.identity(m.size)
    acc = TriMatrix.identity(m.size)
    pw = TriMatrix.identity(m.size)
    for k in range(1, m.size):
        pw = pw * n
        acc = acc + pw.scale(generalized_binomial(t, k))
    return acc


def mat_power_via_log(m, t):
    """Independent route to M^t: exp(t log M)."""
    return mat_exp(mat_log(m).scale(t))


def exp_series_in_parameter(h, param_order, var="lam"):
    """Truncated exp(lam H) = sum_{k <= param_order} H^k lam^k / k!.

    H may be any square matrix; the truncation is in the parameter, so no
    nilpotency is needed.  Entries of the result are ParamPoly in ``var``.
    """
    size = h.size
    lam_unit = [ParamPoly([Fraction(0)] * k + [Fraction(1)], var) for k in range(param_order + 1)]
    acc = [[ParamPoly((), var) for _ in range(size)] for _ in range(size)]
    pw = TriMatrix.identity(size)
    for k in range(param_order + 1):
        if k:
            pw = pw * h
        c = Fraction(1, factorial(k))
        for n in range(size):
            row = pw.rows[n]
            for m in range(size):
                if row[m]:
                    acc[n][m] = acc[n][m] + lam_unit[k] * (row[m] * c)
    return TriMatrix(acc)


@dataclass
class GroupCheckReport:
    ok: bool
    witness: tuple | None
    generator: TriMatrix | None

    def __bool__(self):
        return self.ok


def one_param_group_check(family, samples=None):
    """Verify family(t1) family(t2) = family(t1 + t2) on sampled rationals.

    On success the report carries the tangent generator log(family(1))
    when family(1) is unipotent.  On failure the witness names the first
    (t1, t2, row, col) where the group law breaks.
    """
    if samples is None:
        samples = [
            (Fraction(1), Fraction(1)),
            (Fraction(1, 2), Fraction(1, 2)),
            (Fraction(2), Fraction(-1)),
            (Fraction(1, 3), Fraction(2, 3)),
            (Fraction(-1, 2), Fraction(3)),
        ]
    for t1, t2 in samples:
        lhs = family(t1) * family(t2)
        rhs = family(t1 + t2)
        if lhs != rhs:
            for n in range(lhs.size):
                for k in range(lhs.size):
                    if lhs.entry(n, k) != rhs.entry(n, k):
                        return GroupCheckReport(False, (t1, t2, n, k), None)
    m1 = family(Fraction(1))
    generator = mat_log(m1) if m1.is_unipotent() else None
    return GroupCheckReport(True, None, generator)


# -- JSON round trip --------------------------------------------------


def matrix_to_json(m):
    """Schema: {"size": N+1, "entries": [...], "class": ...}.

    Entries are rational strings; lower-triangular row-major (row n has
    n+1 entries) for the triangular classes, full rows for "general".
    """
    cls = m.matrix_class()
    if any(isinstance(c, ParamPoly) for row in m.rows for c in row):
        raise PreconditionError("parameter-valued matrices have no JSON form")
    if cls == "general":
        entries = [[format_rational(c) for c in row] for row in m.rows]
    else:
        entries = [
            [format_rational(m.rows[n][k]) for k in range(n + 1)]
            for n in range(m.size)
        ]
    return {"size": m.size, "entries": entries, "class": cls}


def matrix_from_json(data):
    size = data["size"]
    entries = data["entries"]
    if len(entries) != size:
        raise PreconditionError("entry rows do not match the declared size")
    if data.get("class", "general") == "general":
        m = TriMatrix(entries)
    else:
        m = TriMatrix.from_lower_rows(entries)
    if m.matrix_class() != data.get("class", m.matrix_class()):
        raise PreconditionError("declared matrix class does not match the entries")
    return m
