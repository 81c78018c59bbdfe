"""Box-truncated multivariate power series (raw coefficients).

Quotienting by the monomial ideal (x_1^{N_1+1}, ..., x_m^{N_m+1}) gives a
genuine ring, so sums and products of box-truncated series are always
well defined.  Substitution is the delicate operation: plugging a series
with positive valuation into a truncated one is only determined when the
outer series is known far enough; :meth:`BoxSeries.substitute` guards
this and raises :class:`InsufficientOrder` otherwise.

Coefficients here are always raw (no denominator convention); the
:class:`BivarSeries` wrapper attaches conventions for display.
"""

from fractions import Fraction
from math import factorial

from .errors import InsufficientOrder, PreconditionError
from .parampoly import generalized_binomial
from .series import Convention


class BoxSeries:
    __slots__ = ("vars", "orders", "coeffs")

    def __init__(self, vars, orders, coeffs=None):
        self.vars = tuple(vars)
        self.orders = tuple(orders)
        if len(self.vars) != len(self.orders):
            raise PreconditionError("one order cap per variable")
        clean = {}
        for exps, c in (coeffs or {}).items():
            c = Fraction(c) if not isinstance(c, Fraction) else c
            if c and all(e <= n for e, n in zip(exps, self.orders)):
                clean[tuple(exps)] = c
        self.coeffs = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars, orders):
        return cls(vars, orders)

    @classmethod
    def constant(cls, vars, orders, value):
        return cls(vars, orders, {(0,) * len(tuple(vars)): Fraction(value)})

    @classmethod
    def generator(cls, vars, orders, var):
        vars = tuple(vars)
        exps = tuple(1 if v == var else 0 for v in vars)
        if sum(exps) != 1:
            raise PreconditionError(f"unknown variable {var!r}")
        return cls(vars, orders, {exps: Fraction(1)})

    @classmethod
    def from_univariate(cls, ts, vars, orders, var):
        """Embed the raw coefficients of a TruncSeries along one variable."""
        vars = tuple(vars)
        i = vars.index(var)
        coeffs = {}
        for n, c in enumerate(ts.raw_list()):
            if c:
                exps = [0] * len(vars)
                exps[i] = n
                coeffs[tuple(exps)] = c
        return cls(vars, orders, coeffs)

    # -- accessors ----------------------------------------------------

    def coeff(self, *exps):
        return self.coeffs.get(tuple(exps), Fraction(0))

    def is_zero(self):
        return not self.coeffs

    def valuation(self):
        """Minimum total degree of a nonzero term; None if zero."""
        if not self.coeffs:
            return None
        return min(sum(e) for e in self.coeffs)

    def min_degree(self, var):
        """Minimum exponent of ``var`` over nonzero terms; None if zero."""
        if not self.coeffs:
            return None
        i = self.vars.index(var)
        return min(e[i] for e in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, BoxSeries)
            and self.vars == other.vars
            and self.orders == other.orders
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.vars, self.orders, frozenset(self.coeffs.items())))

    def __repr__(self):
        terms = []
        for exps in sorted(self.coeffs):
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in zip(self.vars, exps) if e
            )
            terms.append(f"{self.coeffs[exps]}{'*' + mono if mono else ''}")
        body = " + ".join(terms) if terms else "0"
        return f"BoxSeries[{','.join(self.vars)}; {self.orders}]({body})"

    # -- structural plumbing ------------------------------------------

    def _check_env(self, other):
        if self.vars != other.vars or self.orders != other.orders:
            raise PreconditionError(
                f"variable environments differ: {self.vars}{self.orders} "
                f"vs {other.vars}{other.orders}"
            )

    def truncate(self, orders):
        orders = tuple(orders)
        if any(n > m for n, m in zip(orders, self.orders)):
            raise PreconditionError("cannot extend a truncated series")
        return BoxSeries(self.vars, orders, self.coeffs)

    def rename(self, mapping):
        return BoxSeries(
            tuple(mapping.get(v, v) for v in self.vars), self.orders, self.coeffs
        )

    def reorder(self, vars):
        vars = tuple(vars)
        if sorted(vars) != sorted(self.vars):
            raise PreconditionError("reorder must permute the existing variables")
        perm = [self.vars.index(v) for v in vars]
        return BoxSeries(
            vars,
            tuple(self.orders[i] for i in perm),
            {tuple(e[i] for i in perm): c for e, c in self.coeffs.items()},
        )

    def embed(self, vars, orders):
        """View this series in a larger variable environment."""
        vars, orders = tuple(vars), tuple(orders)
        pos = [vars.index(v) for v in self.vars]
        coeffs = {}
        for e, c in self.coeffs.items():
            exps = [0] * len(vars)
            for p, k in zip(pos, e):
                exps[p] = k
            coeffs[tuple(exps)] = c
        return BoxSeries(vars, orders, coeffs)

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BoxSeries):
            other = BoxSeries.constant(self.vars, self.orders, other)
        self._check_env(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return BoxSeries(self.vars, self.orders, out)

    __radd__ = __add__

    def __neg__(self):
        return BoxSeries(self.vars, self.orders, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, BoxSeries):
            other = BoxSeries.constant(self.vars, self.orders, other)
        return self + (-other)

    def scale(self, value):
        value = Fraction(value)
        return BoxSeries(
            self.vars, self.orders, {e: c * value for e, c in self.coeffs.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, BoxSeries):
            return self.scale(other)
        self._check_env(other)
        caps = self.orders
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                if any(e > n for e, n in zip(exps, caps)):
                    continue
                out[exps] = out.get(exps, Fraction(0)) + c1 * c2
        return BoxSeries(self.vars, self.orders, out)

    __rmul__ = __mul__

    def pow_int(self, n):
        result = BoxSeries.constant(self.vars, self.orders, 1)
        for _ in range(n):
            result = result * self
        return result

    # -- analytic-style operations (all finite here) ------------------

    def _nilpotency_bound(self):
        return sum(self.orders) + 1

    def inverse(self):
        c0 = self.coeff(*(0,) * len(self.vars))
        if not c0:
            raise PreconditionError("inverse needs a nonzero constant term")
        u = self.scale(Fraction(1) / c0) - 1  # valuation >= 1
        acc = BoxSeries.constant(self.vars, self.orders, 1)
        pw = BoxSeries.constant(self.vars, self.orders, 1)
        for _ in range(self._nilpotency_bound() - 1):
            pw = pw * (-u)
            if pw.is_zero():
                break
            acc = acc + pw
        return acc.scale(Fraction(1) / c0)

    def exp(self):
        if self.coeff(*(0,) * len(self.vars)):
            raise PreconditionError("exp needs zero constant term")
        acc = BoxSeries.constant(self.vars, self.orders, 1)
        pw = BoxSeries.constant(self.vars, self.orders, 1)
        for k in range(1, self._nilpotency_bound()):
            pw = pw * self
            if pw.is_zero():
                break
            acc = acc + pw.scale(Fraction(1, factorial(k)))
        return acc

    def pow_fraction(self, alpha):
        if self.coeff(*(0,) * len(self.vars)) != 1:
            raise PreconditionError("fractional powers need constant term 1")
        alpha = Fraction(alpha)
        u = self - 1
        acc = BoxSeries.constant(self.vars, self.orders, 1)
        pw = BoxSeries.constant(self.vars, self.orders, 1)
        for k in range(1, self._nilpotency_bound()):
            pw = pw * u
            if pw.is_zero():
                break
            acc = acc + pw.scale(generalized_binomial(alpha, k))
        return acc

    def divide_by_power(self, var, p):
        """Divide by var^p; every term must carry at least var^p.

        The cap of ``var`` shrinks by p (higher coefficients are unknown).
        """
        i = self.vars.index(var)
        if any(e[i] < p for e in self.coeffs):
            raise PreconditionError(f"not divisible by {var}^{p}")
        orders = list(self.orders)
        orders[i] -= p
        coeffs = {
            tuple(e[j] - p if j == i else e[j] for j in range(len(e))): c
            for e, c in self.coeffs.items()
        }
        return BoxSeries(self.vars, tuple(orders), coeffs)

    # -- substitution -------------------------------------------------

    def substitute(self, var, image, exact=False):
        """Replace ``var`` by ``image`` (a BoxSeries over other variables).

        The remaining variables of self must be disjoint from the image's
        variables.  ``image`` needs positive valuation.  Unless ``exact``
        is set (self is a polynomial known in full), the cap of ``var``
        must be high enough that dropped powers land outside the result
        box; otherwise the result would not be determined.
        """
        i = self.vars.index(var)
        rest_vars = self.vars[:i] + self.vars[i + 1 :]
        rest_orders = self.orders[:i] + self.orders[i + 1 :]
        if set(rest_vars) & set(image.vars):
            raise PreconditionError("substitution variables overlap the remaining ones")
        res_vars = rest_vars + image.vars
        res_orders = rest_orders + image.orders

        if not image.is_zero():
            if image.valuation() < 1:
                raise PreconditionError("substituted series must have positive valuation")
            if not exact:
                cap = self.orders[i]
                total_ok = image.valuation() * (cap + 1) > sum(image.orders)
                var_ok = any(
                    image.min_degree(v) and (cap + 1) * image.min_degree(v) > n
                    for v, n in zip(image.vars, image.orders)
                )
                if not (total_ok or var_ok):
                    raise InsufficientOrder(
                        f"series known to {var}-order {cap} cannot determine the "
                        "requested substitution box"
                    )

        image_env = image.embed(res_vars, res_orders)
        powers = {0: BoxSeries.constant(res_vars, res_orders, 1)}

        def image_pow(n):
            if n not in powers:
                powers[n] = image_pow(n - 1) * image_env
            return powers[n]

        out = BoxSeries.zero(res_vars, res_orders)
        for e, c in sorted(self.coeffs.items()):
            rest = e[:i] + e[i + 1 :]
            pw = image_pow(e[i])
            shifted = {}
            for pe, pc in pw.coeffs.items():
                exps = tuple(
                    a + b for a, b in zip(pe, rest + (0,) * len(image.vars))
                )
                if all(a <= n for a, n in zip(exps, res_orders)):
                    shifted[exps] = pc * c
            out = out + BoxSeries(res_vars, res_orders, shifted)
        return out


class BivarSeries:
    """Displayed bivariate series sum a_{n,k} x^n/d_n y^k/e_k on a grid."""

    __slots__ = ("conv_x", "conv_y", "grid")

    def __init__(self, conv_x, conv_y, grid):
        self.conv_x = conv_x
        self.conv_y = conv_y
        self.grid = tuple(tuple(Fraction(c) for c in row) for row in grid)
        width = {len(row) for row in self.grid}
        if len(width) != 1:
            raise PreconditionError("coefficient grid must be rectangular")

    @classmethod
    def from_box(cls, box, conv_x=Convention.OGF, conv_y=Convention.OGF):
        if len(box.vars) != 2:
            raise PreconditionError("a bivariate series needs exactly two variables")
        nx, ny = box.orders
        grid = [
            [
                box.coeff(n, k) * conv_x.denominator(n) * conv_y.denominator(k)
                for k in range(ny + 1)
            ]
            for n in range(nx + 1)
        ]
        return cls(conv_x, conv_y, grid)

    @property
    def orders(self):
        return (len(self.grid) - 1, len(self.grid[0]) - 1)

    def coeff(self, n, k):
        return self.grid[n][k]

    def raw(self, n, k):
        return self.grid[n][k] / (
            self.conv_x.denominator(n) * self.conv_y.denominator(k)
        )

    def __eq__(self, other):
        return (
            isinstance(other, BivarSeries)
            and self.conv_x is other.conv_x
            and self.conv_y is other.conv_y
            and self.grid == other.grid
        )

    def __repr__(self):
        return (
            f"BivarSeries({self.conv_x.value}/{self.conv_y.value}, "
            f"orders={self.orders})"
        )
