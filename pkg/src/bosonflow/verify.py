"""The acceptance suite: reference values and structural laws, checked exactly.

Each criterion returns a :class:`CriterionResult`; ``run_all`` prints one
pass/fail line per criterion and reports the first witness on failure.
Reference triangles for the words a+ a (Stirling second kind), a+ a a+,
a+ a a a+ a+ and for the idempotent numbers are frozen below; everything
else is checked law-against-oracle.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import boson, flows, riordan, triangular
from .boxseries import BoxSeries
from .series import Convention, TruncSeries

# Stirling numbers of the second kind, rows 0..6.
STIRLING_ROWS = [
    [1],
    [0, 1],
    [0, 1, 1],
    [0, 1, 3, 1],
    [0, 1, 7, 6, 1],
    [0, 1, 15, 25, 10, 1],
    [0, 1, 31, 90, 65, 15, 1],
]

# Triangle of the word a+ a a+ (substitution with prefunction), rows 0..6.
PREFUNCTION_ROWS = [
    [1],
    [1, 1],
    [2, 4, 1],
    [6, 18, 9, 1],
    [24, 96, 72, 16, 1],
    [120, 600, 600, 200, 25, 1],
    [720, 4320, 5400, 2400, 450, 36, 1],
]

# Triangle of the word a+ a a a+ a+ (two annihilators), rows 0..4.
TWO_ANNIHILATOR_ROWS = [
    [1],
    [2, 4, 1],
    [12, 60, 54, 14, 1],
    [144, 1296, 2232, 1296, 306, 30, 1],
    [2880, 40320, 109440, 105120, 45000, 9504, 1016, 52, 1],
]

# Idempotent numbers (endofunction components), rows 0..6.
IDEMPOTENT_ROWS = [
    [1],
    [0, 1],
    [0, 2, 1],
    [0, 3, 6, 1],
    [0, 4, 24, 12, 1],
    [0, 5, 80, 90, 20, 1],
    [0, 6, 240, 540, 240, 30, 1],
]

ORACLE_OPERATORS = [
    "a+ a",
    "(a+)^2 a",
    "(a+)^3 a",
    "a+ a a+",
    "(a+)^2 a a+",
    "a+ a (a+)^2",
]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = f" -- {self.detail}" if (self.detail and not self.passed) else ""
        return f"[{status}] criterion {self.number}: {self.title}{extra}"


def _triangle_matches(word_text, n_max, expected):
    sm = boson.stirling_matrix(boson.BosonWord.parse(word_text), n_max)
    got = [list(r) for r in sm.rows]
    if got == expected:
        return True, ""
    return False, f"rows computed {got} != expected {expected}"


def criterion_1():
    ok, detail = _triangle_matches("a+ a", 6, STIRLING_ROWS)
    return CriterionResult(1, "triangle of a+ a (Stirling, n <= 6)", ok, detail)


def criterion_2():
    ok, detail = _triangle_matches("a+ a a+", 6, PREFUNCTION_ROWS)
    return CriterionResult(2, "triangle of a+ a a+ (n <= 6)", ok, detail)


def criterion_3():
    ok, detail = _triangle_matches("a+ a a a+ a+", 4, TWO_ANNIHILATOR_ROWS)
    return CriterionResult(3, "triangle of a+ a a a+ a+ (n <= 4)", ok, detail)


def criterion_4():
    order = 6
    pair = riordan.RiordanPair(
        TruncSeries.one(Convention.EGF, order),
        TruncSeries.from_raw(
            Convention.EGF,
            [Fraction(0)] + [Fraction(1, factorial(n - 1)) for n in range(1, order + 1)],
        ),
    )
    m = riordan.riordan_matrix(pair, order)
    expected = triangular.TriMatrix.from_lower_rows(IDEMPOTENT_ROWS)
    ok = m == expected
    return CriterionResult(
        4, "Riordan matrix of (1, x e^x) is the idempotent triangle", ok,
        "" if ok else "entries differ",
    )


def criterion_5():
    # The staircase step is the annihilation count for excess >= 0 and,
    # by the mirror factorization, the creation count otherwise: the
    # leading monomial of the normal form of w^n fixes the last one.
    rng = random.Random(20240)
    for trial in range(50):
        length = rng.randint(1, 6)
        word = boson.BosonWord(
            tuple(rng.choice((boson.CREATE, boson.ANNIHILATE)) for _ in range(length))
        )
        n_max = rng.randint(2, 5)
        sm = boson.stirling_matrix(word, n_max)
        step = word.annihilations if word.excess >= 0 else word.creations
        for n in range(n_max + 1):
            row = sm.rows[n]
            if len(row) != n * step + 1 or row[-1] != 1:
                return CriterionResult(
                    5, "staircase law on random words", False,
                    f"word {word.letters} row {n}: {row}",
                )
        square = sm.to_square_matrix()
        if step == 1 and not square.is_unipotent():
            return CriterionResult(
                5, "staircase law on random words", False,
                f"word {word.letters} should be unitriangular",
            )
        if step != 1 and step <= n_max and square.is_unipotent():
            return CriterionResult(
                5, "staircase law on random words", False,
                f"word {word.letters} should not be unitriangular",
            )
        # a trailing annihilator kills the vacuum, so column 0 collapses
        if word.excess >= 0 and word.letters[-1] == boson.ANNIHILATE:
            col0 = [sm.entry(n, 0) for n in range(n_max + 1)]
            if col0 != [1] + [0] * n_max:
                return CriterionResult(
                    5, "staircase law on random words", False,
                    f"word {word.letters}: first-column law broken",
                )
    return CriterionResult(5, "staircase law on 50 random words", True)


def random_unipotent(rng, size):
    rows = []
    for n in range(size):
        row = [
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)
        ] + [Fraction(1)] + [Fraction(0)] * (size - n - 1)
        rows.append(row)
    return triangular.TriMatrix(rows)


def criterion_6():
    rng = random.Random(20241)
    for trial in range(100):
        size = rng.randint(2, 10)
        m = random_unipotent(rng, size)
        if triangular.mat_exp(triangular.mat_log(m)) != m:
            return CriterionResult(6, "exp/log round trip", False, f"trial {trial}")
        h = triangular.mat_log(m)
        if triangular.mat_log(triangular.mat_exp(h)) != h:
            return CriterionResult(6, "log/exp round trip", False, f"trial {trial}")
    # bivariate group law M^t M^s = M^{t+s}
    from .parampoly import ParamPoly

    t_inner = ParamPoly.variable("t")
    t_biv = ParamPoly([t_inner], "s")
    s_biv = ParamPoly([ParamPoly((), "t"), ParamPoly.constant(1, "t")], "s")
    for size in (4, 6, 8):
        m = random_unipotent(rng, size)
        lhs = triangular.mat_power(m, t_biv) * triangular.mat_power(m, s_biv)
        rhs = triangular.mat_power(m, t_biv + s_biv)
        if lhs != rhs:
            return CriterionResult(
                6, "fractional-power group law", False, f"size {size}"
            )
    return CriterionResult(
        6, "exp/log round trips (100 matrices) and M^t M^s = M^(t+s)", True
    )


def random_unipotent_pair(rng, order, conv=Convention.EGF):
    g_raw = [Fraction(1)] + [
        Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(order)
    ]
    phi_raw = [Fraction(0), Fraction(1)] + [
        Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(order - 1)
    ]
    return riordan.RiordanPair(
        TruncSeries.from_raw(conv, g_raw), TruncSeries.from_raw(conv, phi_raw)
    )


def criterion_7():
    rng = random.Random(20242)
    exponents = [Fraction(1, 2), Fraction(-2), Fraction(3)]
    order = 7  # size 8
    for trial in range(20):
        pair = random_unipotent_pair(rng, order)
        m = riordan.riordan_matrix(pair, order)
        for t in exponents:
            mt = triangular.mat_power(m, t)
            result = riordan.is_sheffer(mt, Convention.EGF)
            if not result:
                return CriterionResult(
                    7, "closure of Riordan matrices under M^t", False,
                    f"trial {trial}, t = {t}, witness {result.witness}",
                )
    return CriterionResult(
        7, "closure under fractional powers (20 pairs, t in {1/2, -2, 3})", True
    )


def criterion_8():
    orders = (10, 6)
    n_x, n_lam = orders
    for r in range(4):
        field = TruncSeries.monomial(Convention.OGF, n_x + n_lam, r)
        integrated = flows.formal_flow(field, orders)
        closed = flows.substitution_factor_closed(r, orders)
        if integrated.box != closed.box:
            return CriterionResult(
                8, "flow table", False, f"r = {r}: integrator disagrees with closed form"
            )
    fields = [
        TruncSeries.monomial(Convention.OGF, n_x + 3 * n_lam, r) for r in range(4)
    ]
    tangent = TruncSeries.from_raw(
        Convention.OGF,
        [Fraction(1), Fraction(0), Fraction(1)] + [Fraction(0)] * (n_x + 3 * n_lam - 2),
    )
    fields.append(tangent)
    for field in fields:
        ok, witness = flows.flow_group_law_holds(field, orders)
        if not ok:
            return CriterionResult(
                8, "flow group law", False, f"field {field.raw_list()[:4]}: {witness}"
            )
    # the trigonometric closed form for the field 1 + x^2
    env = ((flows.X, flows.LAM), orders)
    cos_l = BoxSeries.from_univariate(
        TruncSeries.from_raw(
            Convention.OGF,
            [
                Fraction((-1) ** (k // 2), factorial(k))
                if k % 2 == 0
                else Fraction(0)
                for k in range(n_lam + 1)
            ],
        ),
        *env,
        flows.LAM,
    )
    sin_l = BoxSeries.from_univariate(
        TruncSeries.from_raw(
            Convention.OGF,
            [
                Fraction((-1) ** ((k - 1) // 2), factorial(k))
                if k % 2 == 1
                else Fraction(0)
                for k in range(n_lam + 1)
            ],
        ),
        *env,
        flows.LAM,
    )
    x = BoxSeries.generator(*env, flows.X)
    closed_tan = (x * cos_l + sin_l) * (cos_l - x * sin_l).inverse()
    integrated = flows.formal_flow(tangent.truncate(n_x + n_lam), orders)
    if integrated.box != closed_tan:
        return CriterionResult(
            8, "flow table", False, "field 1 + x^2: trigonometric closed form differs"
        )
    return CriterionResult(
        8, "flow table (r = 0..3 and 1 + x^2) and trivariate group law", True
    )


def criterion_9():
    n_lam = 6
    m_max = 8
    for text in ORACLE_OPERATORS:
        op = flows.parse_operator(text)
        r, p, _ = op.word_shape()
        e = r - 1
        n_x = m_max + e * n_lam
        nf = op.normal_form()
        for m in range(m_max + 1):
            f = TruncSeries.monomial(Convention.OGF, n_x + n_lam, m)
            action = flows.group_action(op, f, (n_x, n_lam))
            oracle = flows.operator_exp_grid(nf, m, (n_x, n_lam))
            if action != oracle:
                return CriterionResult(
                    9, "group action vs matrix exponential", False,
                    f"op {text!r}, monomial {m}",
                )
    # the inhomogeneous field (1 + (a+)^2) a through the conjugacy route
    n_x = m_max + n_lam
    u1 = TruncSeries.from_raw(
        Convention.OGF,
        [Fraction(1), Fraction(0), Fraction(1)] + [Fraction(0)] * (n_x + n_lam - 2),
    )
    u2 = TruncSeries.one(Convention.OGF, n_x + n_lam)
    nf = boson.normalize(boson.BosonWord.parse("a")) + boson.normalize(
        boson.BosonWord.parse("(a+)^2 a")
    )
    for m in range(m_max + 1):
        f = TruncSeries.monomial(Convention.OGF, n_x + n_lam, m)
        action = flows.conjugacy_exp(u1, u2, f, (n_x, n_lam))
        oracle = flows.operator_exp_grid(nf, m, (n_x, n_lam))
        if action != oracle:
            return CriterionResult(
                9, "group action vs matrix exponential", False,
                f"op (1 + (a+)^2) a, monomial {m}",
            )
    return CriterionResult(
        9, "group action matches the matrix exponential oracle (7 operators)", True
    )


def criterion_10():
    for text in ORACLE_OPERATORS:
        op = flows.parse_operator(text)
        _, pair, report = flows.characteristic_correspondence(
            op, 6, lam_order=6, mono_max=6
        )
        if not report:
            return CriterionResult(
                10, "characteristic-series correspondence", False,
                f"op {text!r}: {report.detail or report.mismatches[:3]}",
            )
    _, pair, _ = flows.characteristic_correspondence(
        flows.parse_operator("a+ a a+"), 6, lam_order=6, mono_max=6
    )
    expected_g = [Fraction(1)] * 7
    expected_phi = [Fraction(0)] + [Fraction(1)] * 6
    ok = (
        pair.g.raw_list() == expected_g and pair.phi.raw_list() == expected_phi
    )
    return CriterionResult(
        10,
        "correspondence holds; pair of a+ a a+ is (1/(1-z), z/(1-z))",
        ok,
        "" if ok else f"recovered pair {pair.g.raw_list()}, {pair.phi.raw_list()}",
    )


ALL_CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def run_all(out=print):
    """Run every criterion, print one line each; True iff all passed."""
    all_ok = True
    first_failure = None
    for fn in ALL_CRITERIA:
        result = fn()
        out(result.line())
        if not result.passed:
            all_ok = False
            if first_failure is None:
                first_failure = result
    if first_failure is not None:
        out(f"first failure: {first_failure.line()}")
    return all_ok
