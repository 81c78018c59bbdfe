"""Dense polynomials in one formal parameter.

These hold the symbolic parameter of one-parameter families: fractional
matrix powers have entries polynomial in ``t``, flows have coefficients
polynomial in ``lam``.  Coefficients are exact rationals, or nested
:class:`ParamPoly` values when a computation needs two independent
parameters at once (e.g. checking the group law in ``t`` and ``s``).

The zero polynomial has degree ``-inf`` (a distinguished marker); all
other representations are canonical, with no trailing zero coefficient.
"""

from fractions import Fraction
from math import factorial

from .scalar import format_rational

_NEG_INF = float("-inf")


def _coerce(c):
    return Fraction(c) if isinstance(c, int) else c


class ParamPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="t"):
        cs = [_coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def variable(cls, var="t"):
        return cls((Fraction(0), Fraction(1)), var)

    @classmethod
    def constant(cls, value, var="t"):
        return cls((value,), var)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else _NEG_INF

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            if self.coeffs and other.coeffs and self.var != other.var:
                return False
            return self.coeffs == other.coeffs
        # scalar comparison: constant (or zero) polynomial
        if len(self.coeffs) > 1:
            return False
        return self.coeff(0) == other

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeff(0))
        return hash((self.coeffs, self.var))

    def _check_var(self, other):
        if self.coeffs and other.coeffs and self.var != other.var:
            raise ValueError(
                f"mixing parameters {self.var!r} and {other.var!r}; "
                "nest one inside the other instead"
            )

    def __add__(self, other):
        if not isinstance(other, ParamPoly):
            cs = list(self.coeffs) or [Fraction(0)]
            cs[0] = cs[0] + other
            return ParamPoly(cs, self.var)
        self._check_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ParamPoly(
            [self.coeff(k) + other.coeff(k) for k in range(n)],
            self.var if self.coeffs else other.var,
        )

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-other if isinstance(other, ParamPoly) else -_coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ParamPoly):
            return ParamPoly([c * other for c in self.coeffs], self.var)
        self._check_var(other)
        if not self.coeffs or not other.coeffs:
            return ParamPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ParamPoly(out, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ParamPoly):
            raise TypeError("polynomial division is not supported")
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("ParamPoly powers must be non-negative integers")
        result = ParamPoly((Fraction(1),), self.var)
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, value):
        """Evaluate at a concrete parameter value (Horner)."""
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def truncated(self, degree):
        return ParamPoly(self.coeffs[: degree + 1], self.var)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if isinstance(c, ParamPoly):
                cs = f"({c!r})"
            else:
                cs = format_rational(c)
            if k == 0:
                parts.append(cs)
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                parts.append(mono if cs == "1" else f"{cs}*{mono}")
        return " + ".join(parts)


def generalized_binomial(t, k):
    """Binomial coefficient t(t-1)...(t-k+1)/k! for rational or polynomial t."""
    result = Fraction(1, factorial(k))
    for i in range(k):
        result = result * (t - i)
    return result
