"""Univariate truncated series with explicit denominator conventions.

A series is a coefficient list ``a_0 .. a_N`` read as ``sum a_n x^n / d_n``
where the denominators ``d_n`` come from the chosen convention: OGF
(``d_n = 1``), EGF (``d_n = n!``) or DEGF (``d_n = (n!)^2``).  The order
``N`` and the convention are part of the value; operations on mismatched
series are rejected rather than silently truncated.

All arithmetic is exact.  Coefficients are rationals, or ParamPoly values
for parameter-dependent series.
"""

import enum
from fractions import Fraction
from math import factorial

from .errors import ConventionMismatch, PreconditionError
from .parampoly import ParamPoly, generalized_binomial
from .scalar import parse_rational


class Convention(enum.Enum):
    OGF = "ogf"
    EGF = "egf"
    DEGF = "degf"

    def denominator(self, n):
        if self is Convention.OGF:
            return 1
        if self is Convention.EGF:
            return factorial(n)
        return factorial(n) ** 2


def _coerce(c):
    if isinstance(c, ParamPoly):
        return c
    if isinstance(c, str):
        return parse_rational(c)
    return Fraction(c)


class TruncSeries:
    """Immutable truncated series; ``coeffs`` are the displayed a_n."""

    __slots__ = ("conv", "coeffs")

    def __init__(self, conv, coeffs):
        self.conv = conv
        self.coeffs = tuple(_coerce(c) for c in coeffs)
        if not self.coeffs:
            raise PreconditionError("a series needs at least the constant coefficient")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_display(cls, conv, coeffs, order=None):
        cs = list(coeffs)
        if order is not None:
            if len(cs) > order + 1:
                raise PreconditionError("more coefficients than the order allows")
            cs += [0] * (order + 1 - len(cs))
        return cls(conv, cs)

    @classmethod
    def from_raw(cls, conv, raw):
        return cls(conv, [c * conv.denominator(n) for n, c in enumerate(raw)])

    @classmethod
    def zero(cls, conv, order):
        return cls(conv, [0] * (order + 1))

    @classmethod
    def one(cls, conv, order):
        return cls(conv, [1] + [0] * order)

    @classmethod
    def x(cls, conv, order):
        return cls.monomial(conv, order, 1)

    @classmethod
    def monomial(cls, conv, order, k, c=1):
        if k > order:
            raise PreconditionError("monomial degree exceeds the order")
        return cls.from_raw(conv, [Fraction(0)] * k + [_coerce(c)] + [Fraction(0)] * (order - k))

    # -- basic accessors ----------------------------------------------

    @property
    def order(self):
        return len(self.coeffs) - 1

    def coeff(self, n):
        return self.coeffs[n]

    def raw(self, n):
        return self.coeffs[n] * Fraction(1, self.conv.denominator(n))

    def raw_list(self):
        return [self.raw(n) for n in range(self.order + 1)]

    def valuation(self):
        """Smallest n with a_n nonzero, or None for the zero series."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and self.conv is other.conv
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.conv, self.coeffs))

    def __repr__(self):
        return f"TruncSeries({self.conv.value}, {list(self.coeffs)!r})"

    def _check_compatible(self, other):
        if self.conv is not other.conv:
            raise ConventionMismatch(
                f"conventions differ: {self.conv.value} vs {other.conv.value}"
            )
        if self.order != other.order:
            raise ConventionMismatch(f"orders differ: {self.order} vs {other.order}")

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        self._check_compatible(other)
        return TruncSeries(self.conv, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check_compatible(other)
        return TruncSeries(self.conv, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncSeries(self.conv, [-a for a in self.coeffs])

    def scale(self, c):
        c = _coerce(c)
        return TruncSeries(self.conv, [a * c for a in self.coeffs])

    def __mul__(self, other):
        self._check_compatible(other)
        a, b = self.raw_list(), other.raw_list()
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j in range(n + 1 - i):
                if b[j]:
                    out[i + j] = out[i + j] + ai * b[j]
        return TruncSeries.from_raw(self.conv, out)

    def pow_int(self, k):
        if k < 0:
            raise PreconditionError("use inverse() for negative powers")
        result = TruncSeries.one(self.conv, self.order)
        for _ in range(k):
            result = result * self
        return result

    # -- composition and friends --------------------------------------

    def compose(self, phi):
        """f(phi(x)); phi must have no constant term."""
        self._check_compatible(phi)
        if phi.raw(0) != 0:
            raise PreconditionError("composition needs phi(0) = 0")
        f = self.raw_list()
        acc = TruncSeries.zero(self.conv, self.order)
        for n in range(self.order, -1, -1):
            acc = acc * phi + TruncSeries.from_raw(
                self.conv, [f[n]] + [Fraction(0)] * self.order
            )
        return acc

    def exp(self):
        """exp(f) for valuation(f) >= 1."""
        if self.raw(0) != 0:
            raise PreconditionError("exp needs a series with zero constant term")
        f = self.raw_list()
        g = [Fraction(1)] + [Fraction(0)] * self.order
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if f[k]:
                    acc = acc + k * f[k] * g[n - k]
            g[n] = acc * Fraction(1, n)
        return TruncSeries.from_raw(self.conv, g)

    def log(self):
        """log(f) for f = 1 + higher terms."""
        if self.raw(0) != 1:
            raise PreconditionError("log needs constant term 1")
        g = self.raw_list()
        f = [Fraction(0)] * (self.order + 1)
        for n in range(1, self.order + 1):
            acc = n * g[n]
            for k in range(1, n):
                if f[k]:
                    acc = acc - k * f[k] * g[n - k]
            f[n] = acc * Fraction(1, n)
        return TruncSeries.from_raw(self.conv, f)

    def reversion(self):
        """Compositional inverse of a series with valuation exactly 1."""
        a = self.raw_list()
        if a[0] != 0 or not a[1]:
            raise PreconditionError("reversion needs valuation exactly 1")
        if isinstance(a[1], ParamPoly):
            raise PreconditionError("reversion needs an invertible rational linear coefficient")
        n = self.order
        psi = [Fraction(0)] * (n + 1)
        psi[1] = Fraction(1) / a[1]
        for m in range(2, n + 1):
            # phi(psi) truncated with psi_m still zero; the x^m defect is linear in psi_m
            comp = _raw_compose(a, psi, m)
            psi[m] = -comp[m] / a[1]
        return TruncSeries.from_raw(self.conv, psi)

    def inverse(self):
        """Multiplicative inverse 1/f; needs a nonzero constant term."""
        a = self.raw_list()
        if not a[0]:
            raise PreconditionError("inverse needs a nonzero constant term")
        b = [Fraction(0)] * (self.order + 1)
        b[0] = Fraction(1) / a[0]
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if a[k]:
                    acc = acc + a[k] * b[n - k]
            b[n] = -b[0] * acc
        return TruncSeries.from_raw(self.conv, b)

    def divide(self, other):
        """self / other, allowing a common valuation shift.

        Requires valuation(self) >= valuation(other); the result is known
        to order N - valuation(other), padded back with zeros is *not*
        done: the order shrinks accordingly.
        """
        self._check_compatible(other)
        v = other.valuation()
        if v is None:
            raise PreconditionError("division by the zero series")
        num = self.raw_list()
        if any(num[i] for i in range(min(v, self.order + 1))):
            raise PreconditionError("division not exact: numerator valuation too small")
        order = self.order - v
        num_s = TruncSeries.from_raw(self.conv, num[v : v + order + 1])
        den_s = TruncSeries.from_raw(self.conv, other.raw_list()[v : v + order + 1])
        return num_s * den_s.inverse()

    def pow_fraction(self, alpha):
        """Binomial power f^alpha for f = 1 + higher terms, alpha rational."""
        if self.raw(0) != 1:
            raise PreconditionError("fractional powers need constant term 1")
        alpha = Fraction(alpha)
        u = self - TruncSeries.one(self.conv, self.order)
        acc = TruncSeries.one(self.conv, self.order)
        upow = TruncSeries.one(self.conv, self.order)
        for k in range(1, self.order + 1):
            upow = upow * u
            acc = acc + upow.scale(generalized_binomial(alpha, k))
        return acc

    # -- convention plumbing ------------------------------------------

    def convert(self, conv):
        """Reinterpret the same underlying function in another convention."""
        if conv is self.conv:
            return self
        return TruncSeries.from_raw(conv, self.raw_list())

    def truncate(self, order):
        if order > self.order:
            raise PreconditionError("cannot extend a truncated series")
        return TruncSeries(self.conv, self.coeffs[: order + 1])


def _raw_compose(f, psi, order):
    """Raw-coefficient composition f(psi) to the given order (psi[0] = 0)."""
    acc = [Fraction(0)] * (order + 1)
    acc[0] = f[0] if len(f) > 0 else Fraction(0)
    pw = [Fraction(0)] * (order + 1)
    pw[0] = Fraction(1)
    for n in range(1, min(len(f), order + 1)):
        nxt = [Fraction(0)] * (order + 1)
        for i in range(order + 1):
            if pw[i]:
                for j in range(1, order + 1 - i):
                    if psi[j] if j < len(psi) else 0:
                        nxt[i + j] = nxt[i + j] + pw[i] * psi[j]
        pw = nxt
        if f[n]:
            for i in range(order + 1):
                if pw[i]:
                    acc[i] = acc[i] + f[n] * pw[i]
    return acc
