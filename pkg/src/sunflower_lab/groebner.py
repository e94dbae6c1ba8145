"""Multivariate division, Buchberger's algorithm, vanishing ideals of finite
point sets, standard and ballot monomials.

All bases produced here are reduced: monic generators, minimal leading
monomials, tails supported on standard monomials.  Reduction always rewrites
the order-largest reducible monomial using the first applicable generator,
so normal forms are deterministic.
"""

from __future__ import annotations

import functools
import hashlib
import heapq
import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ArityError,
    BallotRangeError,
    CapExceededError,
    DuplicatePointError,
    NotZeroDimensionalError,
    ZeroPolynomialError,
)
from .polyalg import (
    RATIONALS,
    Polynomial,
    TermOrder,
    block_order,
    deglex_order,
    dump_poly,
    leading_monomial,
    mono_degree,
    mono_div,
    mono_divides,
    mono_is_squarefree,
    mono_lcm,
    mono_mul,
    mono_one,
    mono_support,
    parse_poly,
)

DEFAULT_PAIR_CAP = 200_000


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis together with its term order."""

    generators: tuple
    order: TermOrder

    def __post_init__(self):
        for g in self.generators:
            if g.is_zero:
                raise ZeroPolynomialError("basis generators must be nonzero")

    def __len__(self):
        return len(self.generators)

    def leading_monomials(self):
        return [leading_monomial(g, self.order)[0] for g in self.generators]


@dataclass(frozen=True)
class StandardMonomialSet:
    """The monomials outside the leading-monomial ideal, sorted increasingly."""

    monomials: tuple
    order: TermOrder

    def __len__(self):
        return len(self.monomials)

    def as_index_sets(self):
        """Squarefree monomials as tuples of 1-based variable indices."""
        out = []
        for m in self.monomials:
            if not mono_is_squarefree(m):
                raise ValueError(f"monomial {m} is not squarefree")
            out.append(tuple(i + 1 for i in mono_support(m)))
        return out


@dataclass(frozen=True)
class BallotSet:
    """All subsets G = {s_1 < ... < s_t} of [n] with t <= j and s_i >= 2i."""

    n: int
    j: int
    sets: tuple


def _neg_key(key):
    return tuple(-v for v in key)


def reduce(f, gens, order):
    """Full normal form of f modulo gens: no monomial of the result is
    divisible by any generator's leading monomial.

    Deterministic: the order-largest reducible monomial is rewritten with the
    first applicable generator.  Under a deglex order the total degree never
    increases.
    """
    if not gens:
        return f
    data = []
    for g in gens:
        lm, lc = leading_monomial(g, order)
        tail = tuple((m, c) for m, c in g.terms.items() if m != lm)
        data.append((lm, lc, tail))
    work = dict(f.terms)
    start_degree = f.degree()
    heap = []
    inheap = set()
    for m in work:
        heapq.heappush(heap, (_neg_key(order.sort_key(m)), m))
        inheap.add(m)
    done = set()
    while heap:
        _, m = heapq.heappop(heap)
        inheap.discard(m)
        if m not in work:
            continue
        hit = None
        for lm, lc, tail in data:
            if mono_divides(lm, m):
                hit = (lm, lc, tail)
                break
        if hit is None:
            done.add(m)
            continue
        lm, lc, tail = hit
        coef = work.pop(m)
        u = mono_div(m, lm)
        ratio = coef / lc
        for tm, tc in tail:
            nm = mono_mul(u, tm)
            val = work.get(nm, 0) - ratio * tc
            if val == 0:
                work.pop(nm, None)
            else:
                work[nm] = val
                if nm not in done and nm not in inheap:
                    heapq.heappush(heap, (_neg_key(order.sort_key(nm)), nm))
                    inheap.add(nm)
    result = Polynomial(f.nvars, work)
    if order.kind == "deglex":
        assert result.degree() <= start_degree, "reduction increased deglex degree"
    return result


def s_polynomial(f, g, order):
    """lcm(lm f, lm g)/lt(f) * f - lcm(lm f, lm g)/lt(g) * g."""
    lf, cf = leading_monomial(f, order)
    lg, cg = leading_monomial(g, order)
    lcm = mono_lcm(lf, lg)
    uf = Polynomial.from_monomial(f.nvars, mono_div(lcm, lf), 1 / cf)
    ug = Polynomial.from_monomial(g.nvars, mono_div(lcm, lg), 1 / cg)
    return uf * f - ug * g


def _monic(f, order):
    _, lc = leading_monomial(f, order)
    return f.scale(1 / lc)


def _interreduce(polys, order):
    """Minimal, interreduced, monic form; sorted by leading monomial."""
    current = [p for p in polys if not p.is_zero]
    changed = True
    while changed:
        changed = False
        nxt = []
        for i, p in enumerate(current):
            others = nxt + current[i + 1 :]
            r = reduce(p, others, order) if others else p
            if r.is_zero:
                changed = True
                continue
            r = _monic(r, order)
            if r != p:
                changed = True
            nxt.append(r)
        current = nxt
    current.sort(key=lambda p: order.sort_key(leading_monomial(p, order)[0]))
    return tuple(current)


def buchberger(gens, order, pair_cap=DEFAULT_PAIR_CAP):
    """A minimal, interreduced Groebner basis of the ideal generated by gens.

    Normal selection strategy (order-smallest lcm first) with both of
    Buchberger's criteria; deterministic generator ordering.
    """
    basis = []
    for g in gens:
        if g.is_zero:
            raise ZeroPolynomialError("input generators must be nonzero")
        basis.append(_monic(g, order))
    lms = [leading_monomial(g, order)[0] for g in basis]

    pending = set()
    heap = []

    def push_pairs(j):
        for i in range(j):
            lcm = mono_lcm(lms[i], lms[j])
            heapq.heappush(heap, (order.sort_key(lcm), i, j))
            pending.add((i, j))

    for j in range(len(basis)):
        push_pairs(j)

    while heap:
        if len(heap) > pair_cap:
            raise CapExceededError(
                f"Buchberger pair queue exceeded {pair_cap}", flag="--cap-pairs"
            )
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = lms[i], lms[j]
        lcm = mono_lcm(li, lj)
        # first criterion: coprime leading monomials
        if lcm == mono_mul(li, lj):
            continue
        # chain criterion: some k divides the lcm and both cross pairs are settled
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if mono_divides(lms[k], lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pending and pjk not in pending:
                    skip = True
                    break
        if skip:
            continue
        r = reduce(s_polynomial(basis[i], basis[j], order), basis, order)
        if not r.is_zero:
            basis.append(_monic(r, order))
            lms.append(leading_monomial(r, order)[0])
            push_pairs(len(basis) - 1)

    return GroebnerBasis(_interreduce(basis, order), order)


def normal_form(f, basis):
    return reduce(f, basis.generators, basis.order)


def is_groebner(basis):
    """Direct audit: every pairwise S-polynomial reduces to zero."""
    gens = basis.generators
    for f, g in itertools.combinations(gens, 2):
        if not reduce(s_polynomial(f, g, basis.order), gens, basis.order).is_zero:
            return False
    return True


# ---------------------------------------------------------------------------
# vanishing ideals of finite point sets (linear-algebra interpolation)


def vanishing_ideal_points(points, order):
    """Reduced Groebner basis and standard monomials of I(points).

    Candidate monomials are visited in increasing term order; each one is
    either linearly independent on the points (a standard monomial) or yields
    a basis element t - sum(c_s s) over previously accepted standard
    monomials.  Exact arithmetic, first-nonzero pivoting.
    """
    nv = order.nvars
    pts = []
    for p in points:
        if len(p) != nv:
            raise ArityError(f"point of length {len(p)} in {nv}-variable order")
        pts.append(tuple(Fraction(c) for c in p))
    if len(set(pts)) != len(pts):
        raise DuplicatePointError("points must be distinct")
    m = len(pts)

    gens = []
    lms = []
    sms = []
    echelon = []  # (pivot index, vector, combo {sm monomial: coefficient})

    start = mono_one(nv)
    heap = [(order.sort_key(start), start)]
    seen = {start}
    while heap:
        _, t = heapq.heappop(heap)
        if any(mono_divides(l, t) for l in lms):
            continue
        vec = []
        for p in pts:
            v = Fraction(1)
            for i, e in enumerate(t):
                if e:
                    v *= p[i] ** e
            vec.append(v)
        combo = {}
        r = list(vec)
        for piv, evec, ecombo in echelon:
            if r[piv] != 0:
                lam = r[piv] / evec[piv]
                for idx in range(m):
                    r[idx] -= lam * evec[idx]
                for mono, co in ecombo.items():
                    combo[mono] = combo.get(mono, Fraction(0)) + lam * co
        if any(r):
            sms.append(t)
            piv = next(i for i, v in enumerate(r) if v)
            # the reduced row is v_t - sum(combo[s] * v_s); record it in full
            full = {t: Fraction(1)}
            for mono, co in combo.items():
                if co != 0:
                    full[mono] = -co
            echelon.append((piv, r, full))
            for i in range(nv):
                child = tuple(e + (1 if idx == i else 0) for idx, e in enumerate(t))
                if child not in seen:
                    seen.add(child)
                    heapq.heappush(heap, (order.sort_key(child), child))
        else:
            terms = {t: Fraction(1)}
            for mono, co in combo.items():
                if co != 0:
                    terms[mono] = -co
            gens.append(Polynomial(nv, terms))
            lms.append(t)

    gens.sort(key=lambda g: order.sort_key(leading_monomial(g, order)[0]))
    sms.sort(key=order.sort_key)
    basis = GroebnerBasis(tuple(gens), order)
    return basis, StandardMonomialSet(tuple(sms), order)


# ---------------------------------------------------------------------------
# the complete k-uniform slice and its product powers


def slice_ideal_generators(n, k, field=RATIONALS):
    """{x_i^2 - x_i for all i} plus (sum x_i - k): cuts out the weight-k slice
    of the 0/1 cube."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    gens = []
    one = field.of(1)
    for i in range(n):
        sq = [0] * n
        sq[i] = 2
        lin = [0] * n
        lin[i] = 1
        gens.append(Polynomial(n, {tuple(sq): one, tuple(lin): -one}))
    terms = {}
    for i in range(n):
        lin = [0] * n
        lin[i] = 1
        terms[tuple(lin)] = one
    terms[mono_one(n)] = field.of(-k)
    gens.append(Polynomial(n, terms))
    return gens


def _block_suborder(order, block, n):
    """The order induced on one contiguous variable block, as an n-variable order."""
    ranks = order.ranking[block * n : (block + 1) * n]
    rel = sorted(ranks)
    within = tuple(rel.index(r) + 1 for r in ranks)
    return TermOrder(order.kind, within)


def _inflate(poly, block, n, ell):
    """Re-index an n-variable polynomial into block `block` of ell*n variables."""
    nv = ell * n
    terms = {}
    for m, c in poly.terms.items():
        e = [0] * nv
        e[block * n : (block + 1) * n] = m
        terms[tuple(e)] = c
    return Polynomial(nv, terms)


def product_block_gb(n, k, ell, order=None, pair_cap=DEFAULT_PAIR_CAP):
    """Groebner basis of the vanishing ideal of the ell-fold product of the
    weight-k slice, as the union of re-indexed per-block bases.

    Valid because leading monomials of distinct blocks are coprime, so all
    cross-block S-pairs reduce to zero.
    """
    if ell < 1:
        raise ValueError("need ell >= 1")
    if order is None:
        order = block_order("deglex", n, ell)
    if order.nvars != ell * n:
        raise ArityError(f"order has {order.nvars} variables, expected {ell * n}")
    for b in range(ell):
        ranks = sorted(order.ranking[b * n : (b + 1) * n])
        if ranks != list(range(ranks[0], ranks[0] + n)):
            raise ValueError("order ranking is not blockwise contiguous")
    gens = []
    for b in range(ell):
        sub = _block_suborder(order, b, n)
        block_basis = slice_basis(n, k, sub, pair_cap=pair_cap)
        gens.extend(_inflate(g, b, n, ell) for g in block_basis.generators)
    gens.sort(key=lambda g: order.sort_key(leading_monomial(g, order)[0]))
    return GroebnerBasis(tuple(gens), order)


def standard_monomials(basis):
    """Enumerate the (finite) standard monomial set of a zero-dimensional ideal."""
    order = basis.order
    nv = order.nvars
    lms = basis.leading_monomials()
    for i in range(nv):
        if not any(mono_support(l) == (i,) for l in lms):
            raise NotZeroDimensionalError(
                f"no leading monomial is a pure power of x{i + 1}"
            )
    found = []
    stack = [mono_one(nv)]
    seen = {mono_one(nv)}
    while stack:
        m = stack.pop()
        if any(mono_divides(l, m) for l in lms):
            continue
        found.append(m)
        for i in range(nv):
            child = tuple(e + (1 if idx == i else 0) for idx, e in enumerate(m))
            if child not in seen:
                seen.add(child)
                stack.append(child)
    found.sort(key=order.sort_key)
    return StandardMonomialSet(tuple(found), order)


# ---------------------------------------------------------------------------
# ballot monomials


def ballot_sets(n, j):
    """All subsets {s_1 < ... < s_t} of [n], t <= j, with s_i >= 2i."""
    out = []
    for t in range(j + 1):
        for combo in itertools.combinations(range(1, n + 1), t):
            if all(s >= 2 * (i + 1) for i, s in enumerate(combo)):
                out.append(combo)
    out.sort(key=lambda s: (len(s), s))
    return out


def ballot_monomials(n, j):
    """The ballot sets of size <= j; their count is C(n, j) when 2j <= n."""
    if j < 0 or 2 * j > n:
        raise BallotRangeError(f"need 0 <= j <= n/2, got j={j}, n={n}")
    return BallotSet(n=n, j=j, sets=tuple(ballot_sets(n, j)))


def verify_sm1(n, k, order=None, pair_cap=DEFAULT_PAIR_CAP):
    """Check that the standard monomials of the weight-k slice ideal equal the
    ballot sets of size <= min(k, n-k), as squarefree monomial sets."""
    if n > 8:
        raise CapExceededError(f"verify_sm1 capped at n <= 8, got {n}", flag="cap argument")
    if order is None:
        order = deglex_order(n)
    basis = slice_basis(n, k, order, pair_cap=pair_cap)
    sm = standard_monomials(basis)
    expected = set(ballot_monomials(n, min(k, n - k)).sets)
    try:
        actual = set(sm.as_index_sets())
    except ValueError:
        return False
    return actual == expected


# ---------------------------------------------------------------------------
# dumps, parsing, caching


def _ranking_str(order):
    return ",".join(str(r) for r in order.ranking)


def dump_basis(basis, n, k, ell=1):
    lines = [
        f"# sunflower-lab basis n={n} k={k} l={ell} "
        f"order={basis.order.kind} ranking={_ranking_str(basis.order)}"
    ]
    lines.extend(dump_poly(g) for g in basis.generators)
    return "\n".join(lines) + "\n"


def load_basis(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing basis header")
    meta = {}
    for tok in lines[0].lstrip("# ").split():
        if "=" in tok:
            key, val = tok.split("=", 1)
            meta[key] = val
    ranking = tuple(int(r) for r in meta["ranking"].split(","))
    order = TermOrder(meta["order"], ranking)
    gens = tuple(parse_poly(ln, order.nvars) for ln in lines[1:])
    basis = GroebnerBasis(gens, order)
    info = {"n": int(meta["n"]), "k": int(meta["k"]), "l": int(meta["l"])}
    return basis, info


def dump_sm(sm, n, k, ell=1):
    lines = [
        f"# sunflower-lab sm n={n} k={k} l={ell} "
        f"order={sm.order.kind} ranking={_ranking_str(sm.order)}"
    ]
    for m in sm.monomials:
        factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e]
        lines.append("*".join(factors) if factors else "1")
    return "\n".join(lines) + "\n"


def _cache_path(n, k, ell, order):
    root = os.environ.get("SUNFLOWER_LAB_CACHE")
    if not root:
        return None
    digest = hashlib.sha256(
        f"{n}|{k}|{ell}|{order.kind}|{_ranking_str(order)}".encode()
    ).hexdigest()[:16]
    return os.path.join(root, f"gb_n{n}_k{k}_l{ell}_{order.kind}_{digest}.txt")


@functools.lru_cache(maxsize=None)
def _slice_basis_cached(n, k, order, pair_cap):
    path = _cache_path(n, k, 1, order)
    if path and os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            basis, _ = load_basis(fh.read())
        return basis
    basis = buchberger(slice_ideal_generators(n, k), order, pair_cap=pair_cap)
    if path:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dump_basis(basis, n, k))
    return basis


def slice_basis(n, k, order=None, pair_cap=DEFAULT_PAIR_CAP):
    """Reduced Groebner basis of the weight-k slice ideal (memoized)."""
    if order is None:
        order = deglex_order(n)
    return _slice_basis_cached(n, k, order, pair_cap)
