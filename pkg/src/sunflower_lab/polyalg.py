"""Exact sparse multivariate polynomial arithmetic, monomials, and term orders.

Monomials are dense exponent tuples of a fixed length N (the ambient variable
count).  Coefficients are exact: ``fractions.Fraction`` by default, with an
optional prime-field mode (``PrimeField(p)``, p > 3) for speed.  Variables are
written ``x1 .. xN`` in the text format; internally they are 0-based indices.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ArityError, CapExceededError, ZeroPolynomialError


# ---------------------------------------------------------------------------
# coefficient fields


class Rationals:
    """The default coefficient field: exact rationals."""

    name = "QQ"

    def of(self, v):
        return Fraction(v)

    def __repr__(self):
        return "Rationals()"


class ModP:
    """An element of GF(p).  Mixed arithmetic with int coerces the int."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else ModP(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else ModP(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else ModP(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else ModP(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModP(self.value * pow(v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModP(v * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __eq__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else self.value == v

    def __hash__(self):
        # matches hash(int) for the canonical representative
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}"


class PrimeField:
    """GF(p) coefficients; requires p > 3 so 2 and 2-3 stay invertible."""

    def __init__(self, p):
        if p <= 3:
            raise ValueError("prime-field mode needs p > 3")
        if any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"

    def of(self, v):
        if isinstance(v, ModP):
            if v.p != self.p:
                raise ValueError("modulus mismatch")
            return v
        return ModP(v, self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"


RATIONALS = Rationals()


# ---------------------------------------------------------------------------
# monomials: dense exponent tuples


def mono_one(nvars):
    return (0,) * nvars


def mono_degree(m):
    return sum(m)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True iff a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_is_squarefree(m):
    return all(e <= 1 for e in m)


def mono_support(m):
    """0-based indices of variables appearing in m."""
    return tuple(i for i, e in enumerate(m) if e)


# ---------------------------------------------------------------------------
# term orders


def paper_ranking(nvars):
    """The ranking induced by the displayed lex formula: x1 is largest."""
    return tuple(range(nvars, 0, -1))


def reversed_ranking(nvars):
    """The opposite convention: xN is largest."""
    return tuple(range(1, nvars + 1))


RANKINGS = {"paper": paper_ranking, "reversed": reversed_ranking}


@dataclass(frozen=True)
class TermOrder:
    """A monomial order: lex or deglex over an explicit variable ranking.

    ``ranking[i]`` is the rank of variable i; a higher rank means a larger
    variable.  deglex compares total degree first, ties broken by lex.
    """

    kind: str
    ranking: tuple

    def __post_init__(self):
        if self.kind not in ("lex", "deglex"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if sorted(self.ranking) != list(range(1, len(self.ranking) + 1)):
            raise ValueError("ranking must be a permutation of 1..N")

    @property
    def nvars(self):
        return len(self.ranking)

    @functools.cached_property
    def _significance(self):
        # variable indices from largest rank to smallest
        return tuple(sorted(range(self.nvars), key=lambda i: -self.ranking[i]))

    def sort_key(self, m):
        """A tuple that sorts monomials in increasing order."""
        if len(m) != self.nvars:
            raise ArityError(f"monomial of length {len(m)} in {self.nvars}-variable order")
        lexkey = tuple(m[i] for i in self._significance)
        if self.kind == "deglex":
            return (sum(m),) + lexkey
        return lexkey

    def compare(self, a, b):
        """-1, 0, or 1 as a <, =, > b."""
        ka, kb = self.sort_key(a), self.sort_key(b)
        return (ka > kb) - (ka < kb)


def lex_order(nvars, ranking="paper"):
    if isinstance(ranking, str):
        ranking = RANKINGS[ranking](nvars)
    return TermOrder("lex", tuple(ranking))


def deglex_order(nvars, ranking="paper"):
    if isinstance(ranking, str):
        ranking = RANKINGS[ranking](nvars)
    return TermOrder("deglex", tuple(ranking))


def block_order(kind, n, blocks=3, ranking="paper"):
    """An order over blocks*n variables with blockwise-contiguous ranks.

    Block 0 (the x-block) is largest; within a block the given ranking
    applies.  This is the shape the product-ideal Groebner basis needs.
    """
    within = RANKINGS[ranking](n) if isinstance(ranking, str) else tuple(ranking)
    full = []
    for b in range(blocks):
        base = (blocks - 1 - b) * n
        full.extend(base + r for r in within)
    return TermOrder(kind, tuple(full))


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """A sparse exact-coefficient polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for m, c in (terms or {}).items():
            if len(m) != nvars:
                raise ArityError(f"monomial {m} in {nvars}-variable ring")
            if c != 0:
                clean[m] = c
        self.terms = clean

    # -- constructors

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {mono_one(nvars): c})

    @classmethod
    def variable(cls, nvars, i, field=RATIONALS):
        """The variable with 0-based index i."""
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): field.of(1)})

    @classmethod
    def from_monomial(cls, nvars, m, c):
        return cls(nvars, {tuple(m): c})

    # -- queries

    @property
    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max(map(mono_degree, self.terms), default=-1)

    def coefficient(self, m):
        return self.terms.get(tuple(m), 0)

    # -- ring operations (exact, canonical: no stored zeros)

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ArityError(f"{self.nvars}- vs {other.nvars}-variable polynomials")

    def __add__(self, other):
        self._check(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s == 0:
                res.pop(m, None)
            else:
                res[m] = s
        return Polynomial(self.nvars, res)

    def __sub__(self, other):
        self._check(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) - c
            if s == 0:
                res.pop(m, None)
            else:
                res[m] = s
        return Polynomial(self.nvars, res)

    def __neg__(self):
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = res.get(m, 0) + c1 * c2
                if s == 0:
                    res.pop(m, None)
                else:
                    res[m] = s
        return Polynomial(self.nvars, res)

    def scale(self, c):
        if c == 0:
            return Polynomial.zero(self.nvars)
        return Polynomial(self.nvars, {m: c * v for m, v in self.terms.items()})

    def evaluate(self, point):
        """Exact substitution value at a point (sequence of length N)."""
        if len(point) != self.nvars:
            raise ArityError(f"point of length {len(point)} in {self.nvars}-variable ring")
        total = 0
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    v = v * point[i] ** e
            total = total + v
        return total

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return dump_poly(self)


def add(f, g):
    return f + g


def multiply(f, g):
    return f * g


def scale(f, c):
    return f.scale(c)


def evaluate(f, point):
    return f.evaluate(point)


def leading_monomial(f, order):
    """The order-maximal monomial of f with its coefficient."""
    if f.is_zero:
        raise ZeroPolynomialError("the zero polynomial has no leading monomial")
    m = max(f.terms, key=order.sort_key)
    return m, f.terms[m]


def poly_sum(polys, nvars):
    total = Polynomial.zero(nvars)
    for p in polys:
        total = total + p
    return total


# ---------------------------------------------------------------------------
# the tensor polynomial T(x, y, z) = prod_i (2 - (x_i + y_i + z_i))


def t_factor(n, i, field=RATIONALS):
    """The i-th factor (1-based), a polynomial in 3n variables x..y..z."""
    one3n = mono_one(3 * n)
    terms = {one3n: field.of(2)}
    for block in range(3):
        e = [0] * (3 * n)
        e[block * n + i - 1] = 1
        terms[tuple(e)] = field.of(-1)
    return Polynomial(3 * n, terms)


def t_factors(n, field=RATIONALS):
    """Lazy representation of T: the list of unexpanded factors."""
    return [t_factor(n, i, field) for i in range(1, n + 1)]


def build_T(n, cap=8, field=RATIONALS):
    """The fully expanded T over 3n variables (4^n terms; capped)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise CapExceededError(f"build_T expansion for n={n} exceeds cap {cap}", flag="cap argument")
    prod = Polynomial.constant(3 * n, field.of(1))
    for f in t_factors(n, field):
        prod = prod * f
    return prod


def t_value(xv, yv, zv):
    """Direct product evaluation of T at a triple of length-n vectors."""
    total = 1
    for a, b, c in zip(xv, yv, zv):
        total = total * (2 - (a + b + c))
    return total


# ---------------------------------------------------------------------------
# debug text format: sum of coef*x<i>^<e> terms


def _term_str(m, c):
    factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e]
    if not factors:
        return str(c)
    return str(c) + "*" + "*".join(factors)


def dump_poly(f):
    """Canonical text form; terms in decreasing (degree, exponents) order."""
    if f.is_zero:
        return "0"
    monos = sorted(f.terms, key=lambda m: (mono_degree(m), m), reverse=True)
    parts = []
    for m in monos:
        c = f.terms[m]
        if not parts:
            parts.append(_term_str(m, c))
            continue
        if isinstance(c, (Fraction, int)) and c < 0:
            parts.append("- " + _term_str(m, -c))
        else:
            parts.append("+ " + _term_str(m, c))
    return " ".join(parts)


def parse_poly(text, nvars, field=RATIONALS):
    """Parse the dump_poly grammar (also accepts bare variables like 'x1')."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return Polynomial.zero(nvars)
    # split into signed chunks at top-level + and -
    chunks = []
    sign, buf = 1, []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch in "+-" and (not buf or s[i - 1] in " \t"):
            if buf and "".join(buf).strip():
                chunks.append((sign, "".join(buf).strip()))
                buf = []
                sign = 1
            sign *= -1 if ch == "-" else 1
            i += 1
            continue
        buf.append(ch)
        i += 1
    if "".join(buf).strip():
        chunks.append((sign, "".join(buf).strip()))
    terms = {}
    for sign, chunk in chunks:
        coeff = field.of(sign)
        exps = [0] * nvars
        for part in chunk.split("*"):
            part = part.strip()
            if not part:
                raise ValueError(f"empty factor in {chunk!r}")
            if part[0] == "x":
                if "^" in part:
                    var_s, exp_s = part[1:].split("^", 1)
                    e = int(exp_s)
                else:
                    var_s, e = part[1:], 1
                idx = int(var_s) - 1
                if not 0 <= idx < nvars:
                    raise ValueError(f"variable {part!r} outside 1..{nvars}")
                if e < 1:
                    raise ValueError(f"exponent must be positive in {part!r}")
                exps[idx] += e
            else:
                # leading sign may be glued onto the coefficient
                q = Fraction(part)
                coeff = coeff * field.of(q.numerator) / field.of(q.denominator)
        m = tuple(exps)
        s_c = terms.get(m, 0) + coeff
        if s_c == 0:
            terms.pop(m, None)
        else:
            terms[m] = s_c
    return Polynomial(nvars, terms)
