"""Slice-rank-one decompositions over finite 0/1 point domains, decomposition
verification, diagonal-rank accounting, and extraction of the pigeonhole
decomposition from a reduced polynomial.

A rank-one term is (x1,x2,x3) -> f(x_axis) * g(the other two coordinates in
their original order); f and g are stored as exact value tables.
"""

from __future__ import annotations

import hashlib
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceededError, DomainError, PigeonholeViolationError
from .polyalg import mono_degree, mono_is_squarefree

DEFAULT_TRIPLE_CAP = 1_000_000


@dataclass(frozen=True)
class PointDomain:
    """A finite list of distinct 0/1 vectors of a fixed length."""

    points: tuple

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("domain points must be distinct")
        lengths = {len(p) for p in self.points}
        if len(lengths) > 1:
            raise ValueError("domain points must share one length")

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return p in set(self.points)


@dataclass
class RankOneTerm:
    """One slice-rank-one summand: axis in {1,2,3}, f over points, g over pairs."""

    axis: int
    f: dict
    g: dict
    label: tuple = ()

    def value(self, x1, x2, x3):
        if self.axis == 1:
            return self.f[x1] * self.g[(x2, x3)]
        if self.axis == 2:
            return self.f[x2] * self.g[(x1, x3)]
        return self.f[x3] * self.g[(x1, x2)]


@dataclass
class Decomposition:
    """A list of rank-one terms over a shared point domain."""

    terms: list
    domain: PointDomain


@dataclass
class DiagonalFunction:
    """Coefficients of a diagonal function, point -> value (zeros allowed)."""

    coefficients: dict


def evaluate_decomposition(d, x1, x2, x3):
    """Sum of all rank-one terms at one triple."""
    pts = set(d.domain.points)
    for p in (x1, x2, x3):
        if p not in pts:
            raise DomainError(f"point {p} is not in the domain")
    total = 0
    for t in d.terms:
        total = total + t.value(x1, x2, x3)
    return total


def verify_decomposition(d, target, cap=DEFAULT_TRIPLE_CAP, jobs=1):
    """Exact pointwise equality of the decomposition against the target on
    every triple of domain points.  `target` is a callable on three points or
    a mapping keyed by point triples."""
    n_pts = len(d.domain)
    if n_pts**3 > cap:
        raise CapExceededError(
            f"{n_pts}^3 triples exceed the verification cap {cap}", flag="--cap-triples"
        )
    if callable(target):
        target_fn = target
    else:
        target_fn = lambda a, b, c: target[(a, b, c)]
    triples = list(itertools.product(d.domain.points, repeat=3))

    def check(chunk):
        for a, b, c in chunk:
            total = 0
            for t in d.terms:
                total = total + t.value(a, b, c)
            if total != target_fn(a, b, c):
                return False
        return True

    if jobs <= 1:
        return check(triples)
    size = -(-len(triples) // jobs)
    chunks = [triples[i : i + size] for i in range(0, len(triples), size)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return all(pool.map(check, chunks))


def diagonal_rank(df):
    """Number of nonzero diagonal coefficients (= the slice rank of the
    induced diagonal function)."""
    return sum(1 for v in df.coefficients.values() if v != 0)


def _block_parts(m, n):
    return m[:n], m[n : 2 * n], m[2 * n :]


def _support_1based(part):
    return tuple(i + 1 for i, e in enumerate(part) if e)


def _point_value(index_set, point):
    """x_M evaluated at a 0/1 point: 1 iff M is inside the point's support."""
    return 1 if all(point[i - 1] for i in index_set) else 0


def extract_decomposition(h, n, threshold=None, domain=None):
    """Partition the monomials x_I y_K z_L of h by whichever block has degree
    at most the threshold (axis 1 first, then 2, then 3), group each class by
    its small index set M, and emit one rank-one term per distinct M.

    Returns the decomposition over `domain` and the per-axis distinct-M
    counts.  Raises if some monomial exceeds degree n, is not blockwise
    squarefree, or falls in no class (which would falsify the degree bound).
    """
    if threshold is None:
        threshold = n // 3
    if h.nvars != 3 * n:
        raise ValueError(f"expected a polynomial in {3 * n} variables")
    groups = {1: {}, 2: {}, 3: {}}
    for m, coef in h.terms.items():
        if mono_degree(m) > n:
            raise ValueError(f"monomial of degree {mono_degree(m)} exceeds n={n}")
        if not mono_is_squarefree(m):
            raise ValueError("monomials must be blockwise squarefree")
        bi, bk, bl = _block_parts(m, n)
        i_set, k_set, l_set = map(_support_1based, (bi, bk, bl))
        if len(i_set) <= threshold:
            axis, label, cof = 1, i_set, (k_set, l_set)
        elif len(k_set) <= threshold:
            axis, label, cof = 2, k_set, (i_set, l_set)
        elif len(l_set) <= threshold:
            axis, label, cof = 3, l_set, (i_set, k_set)
        else:
            raise PigeonholeViolationError(
                f"monomial with block degrees ({len(i_set)},{len(k_set)},{len(l_set)})"
                f" all above {threshold}"
            )
        groups[axis].setdefault(label, []).append((cof, coef))

    points = domain.points
    pairs = list(itertools.product(points, repeat=2))
    terms = []
    for axis in (1, 2, 3):
        for label in sorted(groups[axis]):
            entries = groups[axis][label]
            f_table = {p: _point_value(label, p) for p in points}
            g_table = {}
            for p, q in pairs:
                total = Fraction(0)
                for (first, second), coef in entries:
                    total += coef * _point_value(first, p) * _point_value(second, q)
                g_table[(p, q)] = total
            terms.append(RankOneTerm(axis=axis, f=f_table, g=g_table, label=label))
    counts = tuple(len(groups[axis]) for axis in (1, 2, 3))
    return Decomposition(terms=terms, domain=domain), counts


def restrict(d, subdomain):
    """The same decomposition over a subdomain; terms identically zero on the
    subdomain are dropped."""
    if not set(subdomain.points) <= set(d.domain.points):
        raise DomainError("not a subdomain")
    pts = subdomain.points
    pairs = list(itertools.product(pts, repeat=2))
    terms = []
    for t in d.terms:
        f_new = {p: t.f[p] for p in pts}
        g_new = {pq: t.g[pq] for pq in pairs}
        if any(v != 0 for v in f_new.values()) and any(v != 0 for v in g_new.values()):
            terms.append(RankOneTerm(axis=t.axis, f=f_new, g=g_new, label=t.label))
    return Decomposition(terms=terms, domain=subdomain)


# ---------------------------------------------------------------------------
# the bilinear (m = 2) cross-check mode: slice rank == matrix rank


def matrix_rank_exact(table, domain):
    """Exact rank of a value table over domain^2 by fraction Gauss elimination."""
    pts = list(domain.points)
    rows = [[Fraction(table[(p, q)]) for q in pts] for p in pts]
    rank = 0
    for col in range(len(pts)):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                lam = rows[r][col] / pv
                for c in range(col, len(pts)):
                    rows[r][c] -= lam * rows[rank][c]
        rank += 1
    return rank


def bilinear_decomposition(table, domain):
    """Write a value table on domain^2 as a sum of rank(T) products
    f_r(x) * g_r(y); LU-style peeling in exact arithmetic."""
    pts = list(domain.points)
    residual = {pq: Fraction(table[pq]) for pq in itertools.product(pts, repeat=2)}
    terms = []
    for p in pts:
        q_piv = next((q for q in pts if residual[(p, q)] != 0), None)
        if q_piv is None:
            continue
        pivot = residual[(p, q_piv)]
        f_table = {a: residual[(a, q_piv)] / pivot for a in pts}
        g_table = {b: residual[(p, b)] for b in pts}
        for a, b in itertools.product(pts, repeat=2):
            residual[(a, b)] -= f_table[a] * g_table[b]
        terms.append((f_table, g_table))
    assert all(v == 0 for v in residual.values())
    return terms


# ---------------------------------------------------------------------------
# dump format: header plus one digest record per term


def _table_digest(table):
    payload = ";".join(f"{key!r}={value!r}" for key, value in sorted(table.items(), key=repr))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def dump_decomposition(d, n, k, threshold, counts):
    lines = [
        f"# sunflower-lab decomposition n={n} k={k} threshold={threshold} "
        f"axis_counts={counts[0]},{counts[1]},{counts[2]}"
    ]
    for t in d.terms:
        m_str = ",".join(str(e) for e in t.label) if t.label else "-"
        lines.append(f"axis={t.axis} M={m_str} f={_table_digest(t.f)} g={_table_digest(t.g)}")
    return "\n".join(lines) + "\n"
