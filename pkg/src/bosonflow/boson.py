"""Symbolic normal ordering of boson words.

Words are strings over {a, a+} with the commutation rule a a+ = a+ a + 1.
Normal forms are finite sums sum c_{i,j} (a+)^i a^j; products of normal
forms are computed in closed form (no string rewriting), which keeps the
powers w^n polynomial-sized.  A direct string-rewriting normalizer is
kept as a slow oracle for short words.

The triangle S_w(n, k) is read off the normal form of w^n by factoring
the excess: (a+)^{ne} on the left when the excess e is >= 0, a^{n|e|} on
the right otherwise.
"""

from fractions import Fraction
from math import comb, factorial

from .errors import InternalConsistencyError, ParseError, PreconditionError
from .triangular import TriMatrix

CREATE = "a+"
ANNIHILATE = "a"


class BosonWord:
    """A finite word over {a, a+}."""

    __slots__ = ("letters",)

    def __init__(self, letters):
        letters = tuple(letters)
        for l in letters:
            if l not in (CREATE, ANNIHILATE):
                raise PreconditionError(f"unknown letter {l!r}")
        self.letters = letters

    @classmethod
    def parse(cls, text):
        return cls(parse_word(text))

    @property
    def creations(self):
        return sum(1 for l in self.letters if l == CREATE)

    @property
    def annihilations(self):
        return sum(1 for l in self.letters if l == ANNIHILATE)

    @property
    def excess(self):
        return self.creations - self.annihilations

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, BosonWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other):
        return BosonWord(self.letters + other.letters)

    def __repr__(self):
        return "BosonWord(%s)" % " ".join(self.letters) if self.letters else "BosonWord(1)"


class NormalForm:
    """Finite sum of normal monomials (a+)^i a^j with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[(i, j)] = c
        self.terms = clean

    @classmethod
    def identity(cls):
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    def coeff(self, i, j):
        return self.terms.get((i, j), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, NormalForm) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return NormalForm(out)

    def scale(self, c):
        c = Fraction(c)
        return NormalForm({key: v * c for key, v in self.terms.items()})

    def __mul__(self, other):
        """Normal-ordered product.

        (a+)^i a^j (a+)^k a^l = sum_m m! C(j,m) C(k,m) (a+)^{i+k-m} a^{j+l-m}.
        """
        out = {}
        for (i, j), c1 in self.terms.items():
            for (k, l), c2 in other.terms.items():
                c = c1 * c2
                for m in range(min(j, k) + 1):
                    w = c * (factorial(m) * comb(j, m) * comb(k, m))
                    key = (i + k - m, j + l - m)
                    out[key] = out.get(key, Fraction(0)) + w
        return NormalForm(out)

    def __repr__(self):
        if not self.terms:
            return "NormalForm(0)"
        parts = []
        for (i, j) in sorted(self.terms, reverse=True):
            c = self.terms[(i, j)]
            mono = []
            if i:
                mono.append(f"(a+)^{i}" if i > 1 else "a+")
            if j:
                mono.append(f"a^{j}" if j > 1 else "a")
            body = " ".join(mono) or "1"
            parts.append(body if c == 1 and mono else f"{c} {body}")
        return "NormalForm(%s)" % " + ".join(parts)

    def apply_to_monomials(self, n_max):
        """Matrix of the operator on {x^m} under a+ -> x, a -> d/dx.

        (a+)^i a^j x^m = m(m-1)...(m-j+1) x^{m-j+i}; entries land at
        (m - j + i, m).  The result is a general square matrix (rows can
        sit above the diagonal when the operator lowers degree).
        """
        rows = [[Fraction(0)] * (n_max + 1) for _ in range(n_max + 1)]
        for (i, j), c in self.terms.items():
            for m in range(n_max + 1):
                n = m - j + i
                if not 0 <= n <= n_max:
                    continue
                fall = 1
                for d in range(j):
                    fall *= m - d
                if fall:
                    rows[n][m] += c * fall
        return TriMatrix(rows)


_LETTER_NF = {
    CREATE: NormalForm.monomial(1, 0),
    ANNIHILATE: NormalForm.monomial(0, 1),
}


def normalize(word):
    """Normal form of a word, by folding normal-ordered products."""
    nf = NormalForm.identity()
    for letter in word.letters:
        nf = nf * _LETTER_NF[letter]
    return nf


def normalize_power(word, n):
    """Normal form of w^n via iterated normal-ordered multiplication."""
    if n < 0:
        raise PreconditionError("powers must be non-negative")
    base = normalize(word)
    nf = NormalForm.identity()
    for _ in range(n):
        nf = nf * base
    return nf


def normalize_slow(word):
    """String-rewriting oracle: rewrite a a+ -> a+ a + 1 to a fixed point.

    Exponential in the word length; intended for cross-checks on words of
    length <= 6.
    """
    pending = {word.letters: Fraction(1)}
    done = {}
    while pending:
        nxt = {}
        for letters, c in pending.items():
            for pos in range(len(letters) - 1):
                if letters[pos] == ANNIHILATE and letters[pos + 1] == CREATE:
                    swapped = letters[:pos] + (CREATE, ANNIHILATE) + letters[pos + 2 :]
                    dropped = letters[:pos] + letters[pos + 2 :]
                    nxt[swapped] = nxt.get(swapped, Fraction(0)) + c
                    nxt[dropped] = nxt.get(dropped, Fraction(0)) + c
                    break
            else:
                done[letters] = done.get(letters, Fraction(0)) + c
        pending = {k: v for k, v in nxt.items() if v}
    out = {}
    for letters, c in done.items():
        i = sum(1 for l in letters if l == CREATE)
        j = len(letters) - i
        out[(i, j)] = out.get((i, j), Fraction(0)) + c
    return NormalForm(out)


class StirlingMatrix:
    """Triangle S_w(n, k) extracted from the normal forms of w^n."""

    __slots__ = ("word", "excess", "rows")

    def __init__(self, word, excess, rows):
        self.word = word
        self.excess = excess
        self.rows = tuple(tuple(r) for r in rows)

    @property
    def n_max(self):
        return len(self.rows) - 1

    def entry(self, n, k):
        row = self.rows[n]
        return row[k] if 0 <= k < len(row) else 0

    def width(self):
        return max(len(r) for r in self.rows)

    def to_square_matrix(self, size=None):
        """Square matrix of the triangle; entries beyond size-1 are dropped."""
        size = size if size is not None else self.n_max + 1
        return TriMatrix(
            [[Fraction(self.entry(n, k)) for k in range(size)] for n in range(size)]
        )

    def __eq__(self, other):
        return (
            isinstance(other, StirlingMatrix)
            and self.excess == other.excess
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"StirlingMatrix(excess={self.excess}, rows={self.n_max + 1})"


def _extract_row(nf, n, e, integral=True):
    """Read S(n, .) off a normal form, factoring the excess per side."""
    row = {}
    for (i, j), c in nf.terms.items():
        if e >= 0:
            if i - j != n * e:
                raise InternalConsistencyError(
                    f"term (a+)^{i} a^{j} breaks the excess factorization at n={n}"
                )
            k = j
        else:
            if j - i != n * (-e):
                raise InternalConsistencyError(
                    f"term (a+)^{i} a^{j} breaks the excess factorization at n={n}"
                )
            k = i
        if integral:
            if c.denominator != 1:
                raise InternalConsistencyError(f"non-integer coefficient {c} at n={n}")
            c = c.numerator
        row[k] = c
    top = max(row) if row else 0
    return [row.get(k, 0) for k in range(top + 1)]


def stirling_matrix(word, n_max):
    """Triangle of generalized Stirling numbers for a boson word."""
    if n_max < 0:
        raise PreconditionError("n_max must be >= 0")
    e = word.excess
    base = normalize(word)
    rows = []
    nf = NormalForm.identity()
    for n in range(n_max + 1):
        if n:
            nf = nf * base
        rows.append(_extract_row(nf, n, e))
    return StirlingMatrix(word, e, rows)


def apply_to_monomials(nf, n_max):
    return nf.apply_to_monomials(n_max)


# -- word grammar ----------------------------------------------------
#
# expr   := factor+
# factor := atom ('^' integer)?
# atom   := 'a' | 'a+' | '(' expr ')'
#
# 'a+' is a single token only when the plus sign immediately follows the
# letter; a freestanding '+' is a term separator (used by the operator
# grammar in the flows module).


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == "a":
            if pos + 1 < len(text) and text[pos + 1] == "+":
                tokens.append(("create", CREATE, pos))
                pos += 2
            else:
                tokens.append(("annihilate", ANNIHILATE, pos))
                pos += 1
            continue
        if ch in "()^+":
            kind = {"(": "lparen", ")": "rparen", "^": "caret", "+": "plus"}[ch]
            tokens.append((kind, ch, pos))
            pos += 1
            continue
        if ch.isdigit() or (ch == "-" and pos + 1 < len(text) and text[pos + 1].isdigit()):
            start = pos
            pos += 1
            while pos < len(text) and (text[pos].isdigit() or text[pos] == "/"):
                pos += 1
            tokens.append(("number", text[start:pos], start))
            continue
        if ch == "x":
            tokens.append(("x", ch, pos))
            pos += 1
            continue
        if ch == "*":
            tokens.append(("star", ch, pos))
            pos += 1
            continue
        raise ParseError(f"unknown token {ch!r}", pos)
    tokens.append(("end", "", len(text)))
    return tokens


class TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def next(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        return tok


def _parse_expr(stream):
    letters = []
    while True:
        kind, _, _ = stream.peek()
        if kind in ("create", "annihilate", "lparen"):
            letters.extend(_parse_factor(stream))
        else:
            break
    if not letters:
        kind, value, pos = stream.peek()
        raise ParseError(f"expected a boson letter, found {value!r}", pos)
    return letters


def _parse_factor(stream):
    kind, value, pos = stream.next()
    if kind == "create":
        atom = [CREATE]
    elif kind == "annihilate":
        atom = [ANNIHILATE]
    elif kind == "lparen":
        atom = _parse_expr(stream)
        stream.expect("rparen")
    else:
        raise ParseError(f"expected a boson letter, found {value!r}", pos)
    if stream.peek()[0] == "caret":
        stream.next()
        kind, value, pos = stream.expect("number")
        if "/" in value or value.startswith("-"):
            raise ParseError("exponents must be non-negative integers", pos)
        atom = atom * int(value)
    return atom


def parse_word(text):
    """Parse the shared word syntax, e.g. ``a+ a`` or ``(a+)^2 a``."""
    stream = TokenStream(tokenize(text))
    if stream.peek()[0] == "end":
        raise ParseError("empty word", 0)
    letters = _parse_expr(stream)
    kind, value, pos = stream.peek()
    if kind != "end":
        raise ParseError(f"unexpected {value!r} after word", pos)
    return letters
