"""End-to-end certification: given a k-uniform sunflower-free family, produce
and verify the chain |F| = diagonal rank <= decomposition size <= 3*C(n, n//3).

The per-(n,k) machinery (product-ideal basis, the reduced tensor polynomial H,
its full value table on the complete slice product, and the extracted
decomposition) does not depend on the family and is cached; a family run
performs the family-specific checks against it.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import setfam
from .bounds import main_bound
from .errors import CapExceededError, DuplicatePointError
from .groebner import (
    DEFAULT_PAIR_CAP,
    product_block_gb,
    reduce,
    slice_basis,
    standard_monomials,
    vanishing_ideal_points,
)
from .polyalg import (
    Polynomial,
    block_order,
    deglex_order,
    dump_poly,
    mono_divides,
    t_factor,
    t_value,
)
from .slicerank import (
    DEFAULT_TRIPLE_CAP,
    Decomposition,
    DiagonalFunction,
    PointDomain,
    diagonal_rank,
    dump_decomposition,
    extract_decomposition,
    restrict,
    verify_decomposition,
)

DEFAULT_N_CAP = 6
DEFAULT_POINT_CAP = 4096


@dataclass(frozen=True)
class Certificate:
    """The machine-readable record of one pipeline run."""

    n: int
    k: int
    family_digest: str
    hypothesis_ok: bool
    sunflower_free: bool
    triple_class_ok: bool
    identity_on_product_ok: bool
    diagonal_ok: bool
    family_size: int
    decomposition_terms: int
    bound_value: int
    chain_ok: bool
    notes: tuple = field(default=())


@dataclass
class SliceContext:
    """Family-independent pipeline artifacts for one (n, k, ranking)."""

    n: int
    k: int
    ranking: str
    order: object
    basis: object
    points: tuple
    index: dict
    h: object
    values: list
    eq1_ok: bool
    diagonal_closed_ok: bool
    decomposition: Decomposition
    axis_counts: tuple
    decomposition_ok_on_product: bool


def _point_eval_01(mono, point):
    return 1 if all(point[i] for i, e in enumerate(mono) if e) else 0


@functools.lru_cache(maxsize=None)
def slice_context(n, k, ranking="paper", pair_cap=DEFAULT_PAIR_CAP):
    """Build (or fetch) the cached family-independent artifacts for (n, k)."""
    order3 = block_order("deglex", n, 3, ranking)
    order1 = deglex_order(n, ranking)
    basis3 = product_block_gb(n, k, 3, order3, pair_cap=pair_cap)

    # factor-by-factor reduction keeps intermediate degree at most n
    h = Polynomial.constant(3 * n, Fraction(1))
    for i in range(1, n + 1):
        h = reduce(h * t_factor(n, i), basis3.generators, order3)

    family = setfam.complete_family(n, k)
    points = tuple(setfam.char_vector(m, n) for m in family.members)
    index = {p: i for i, p in enumerate(points)}
    d = len(points)

    sm1 = standard_monomials(slice_basis(n, k, order1, pair_cap=pair_cap))
    sm_list = list(sm1.monomials)
    assert len(sm_list) == d, "slice dimension identity failed"
    sm_index = {m: i for i, m in enumerate(sm_list)}
    eval_mat = [[_point_eval_01(m, p) for p in points] for m in sm_list]

    # contract the coefficient tensor of h against the block evaluation matrix
    coeff = {}
    for m, c in h.terms.items():
        bi, bk, bl = m[:n], m[n : 2 * n], m[2 * n :]
        coeff[(sm_index[bi], sm_index[bk], sm_index[bl])] = c
    v1 = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for (i, kk, ll), c in coeff.items():
        row = eval_mat[i]
        for a in range(d):
            if row[a]:
                v1[a][kk][ll] += c
    v2 = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for a in range(d):
        for kk in range(d):
            row = v1[a][kk]
            emat = eval_mat[kk]
            for ll in range(d):
                c = row[ll]
                if c:
                    for b in range(d):
                        if emat[b]:
                            v2[a][b][ll] += c
    values = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for a in range(d):
        for b in range(d):
            row = v2[a][b]
            for ll in range(d):
                c = row[ll]
                if c:
                    emat = eval_mat[ll]
                    for cc in range(d):
                        if emat[cc]:
                            values[a][b][cc] += c

    eq1_ok = all(
        values[a][b][c] == t_value(points[a], points[b], points[c])
        for a in range(d)
        for b in range(d)
        for c in range(d)
    )
    diag_target = (-1) ** k * 2 ** (n - k)
    diagonal_closed_ok = all(values[a][a][a] == diag_target for a in range(d))

    domain = PointDomain(points)
    decomposition, axis_counts = extract_decomposition(h, n, domain=domain)
    dec_ok = verify_decomposition(
        decomposition,
        lambda x, y, z: values[index[x]][index[y]][index[z]],
        cap=max(d**3, DEFAULT_TRIPLE_CAP),
    )

    return SliceContext(
        n=n,
        k=k,
        ranking=ranking,
        order=order3,
        basis=basis3,
        points=points,
        index=index,
        h=h,
        values=values,
        eq1_ok=eq1_ok,
        diagonal_closed_ok=diagonal_closed_ok,
        decomposition=decomposition,
        axis_counts=axis_counts,
        decomposition_ok_on_product=dec_ok,
    )


def family_digest(family):
    return hashlib.sha256(setfam.write_family(family).encode()).hexdigest()


def certify_family(
    family,
    k,
    ranking="paper",
    n_cap=DEFAULT_N_CAP,
    pair_cap=DEFAULT_PAIR_CAP,
    triple_cap=DEFAULT_TRIPLE_CAP,
    jobs=1,
):
    """Run every pipeline step in order and return the filled Certificate.

    Semantic failures (a sunflower, a failed identity) surface as false flags
    with chain_ok false; resource-cap breaches raise CapExceededError.
    """
    n = family.n
    if n > n_cap:
        raise CapExceededError(f"pipeline capped at n <= {n_cap}, got n={n}", flag="--cap-n")
    digest = family_digest(family)
    notes = []
    hypothesis_ok = 3 * k <= 2 * n and n <= 3 * k
    if not hypothesis_ok:
        notes.append(f"hypothesis 3k/2 <= n <= 3k fails for (n,k)=({n},{k}); proceeding")
    if n % 3:
        notes.append(f"bound uses floor(n/3)={n // 3} inside the binomial")
    bound = main_bound(n)

    uniform_ok = len(family) == 0 or family.uniformity() == k
    if not uniform_ok:
        notes.append(f"family is not {k}-uniform; pipeline steps not applicable")
        wit = setfam.find_sunflower(family, 3) if len(family) >= 3 else None
        return Certificate(
            n=n,
            k=k,
            family_digest=digest,
            hypothesis_ok=hypothesis_ok,
            sunflower_free=wit is None,
            triple_class_ok=False,
            identity_on_product_ok=False,
            diagonal_ok=False,
            family_size=len(family),
            decomposition_terms=0,
            bound_value=bound,
            chain_ok=False,
            notes=tuple(notes),
        )

    d = len(setfam.complete_family(n, k))
    if d**3 > triple_cap:
        raise CapExceededError(
            f"complete product has {d}^3 triples over cap {triple_cap}", flag="--cap-triples"
        )
    ctx = slice_context(n, k, ranking, pair_cap)
    notes.append(f"ranking={ranking}; axis_counts={ctx.axis_counts}")
    notes.append(f"eq(1) checked exhaustively on {d}^3 product triples")
    notes.append(f"H diagonal closed form (-1)^k*2^(n-k): {'ok' if ctx.diagonal_closed_ok else 'FAILED'}")

    # (a) sunflower-freeness
    wit = setfam.find_sunflower(family, 3)
    sunflower_free = wit is None
    if wit is not None:
        notes.append(f"sunflower witness: member indices {wit.petals}, kernel {wit.kernel}")

    # (b) triple-class check on all of F^3
    masks = family.masks()
    triple_class_ok = all(
        setfam._triple_class_mask(masks[i], masks[j], masks[l]) == (i == j == l)
        for i, j, l in itertools.product(range(len(masks)), repeat=3)
    )

    # (c)-(e): basis, reduction, and the identity H = T on the whole product
    identity_on_product_ok = ctx.eq1_ok

    member_points = tuple(setfam.char_vector(m, n) for m in family.members)
    idx = [ctx.index[p] for p in member_points]

    # (f) eq (2): H nonzero exactly on the diagonal of F^3
    diagonal_ok = all(
        (ctx.values[a][b][c] != 0) == (a == b == c)
        for a, b, c in itertools.product(idx, repeat=3)
    )

    # (g) decomposition restricted to F, verified pointwise on F^3
    if member_points:
        sub = PointDomain(member_points)
        dec_r = restrict(ctx.decomposition, sub)
        g_ok = verify_decomposition(
            dec_r,
            lambda x, y, z: ctx.values[ctx.index[x]][ctx.index[y]][ctx.index[z]],
            cap=triple_cap,
            jobs=jobs,
        )
        if len(dec_r.terms) < len(family):
            g_ok = False
            notes.append(
                f"FALSIFICATION: verified decomposition with {len(dec_r.terms)} terms "
                f"for a family of {len(family)}"
            )
    else:
        g_ok = True

    # (h) diagonal rank equals the family size
    diag = DiagonalFunction({p: ctx.values[i][i][i] for p, i in zip(member_points, idx)})
    h_ok = diagonal_rank(diag) == len(family)

    # (i) the chain
    family_size = len(family)
    terms = len(ctx.decomposition.terms)
    chain_ineq = family_size <= terms <= bound
    chain_ok = all(
        (
            sunflower_free,
            triple_class_ok,
            identity_on_product_ok,
            diagonal_ok,
            g_ok,
            h_ok,
            ctx.diagonal_closed_ok,
            ctx.decomposition_ok_on_product,
            chain_ineq,
        )
    )
    if not g_ok:
        notes.append("restricted decomposition failed pointwise verification on F^3")
    if not h_ok:
        notes.append("diagonal rank does not equal the family size")

    return Certificate(
        n=n,
        k=k,
        family_digest=digest,
        hypothesis_ok=hypothesis_ok,
        sunflower_free=sunflower_free,
        triple_class_ok=triple_class_ok,
        identity_on_product_ok=identity_on_product_ok,
        diagonal_ok=diagonal_ok,
        family_size=family_size,
        decomposition_terms=terms,
        bound_value=bound,
        chain_ok=chain_ok,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# the interpolation oracle for normal forms


@functools.lru_cache(maxsize=None)
def _interpolation_data(points, order):
    basis, sm = vanishing_ideal_points(points, order)
    monos = list(sm.monomials)
    m = len(points)
    rows = [
        [Fraction(1) * _eval_mono(mono, p) for mono in monos] for p in points
    ]
    inverse = _invert(rows)
    return monos, inverse


def _eval_mono(mono, point):
    v = Fraction(1)
    for i, e in enumerate(mono):
        if e:
            v *= Fraction(point[i]) ** e
    return v


def _invert(rows):
    m = len(rows)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(rows)]
    for col in range(m):
        pivot = next(r for r in range(col, m) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                lam = aug[r][col]
                aug[r] = [v - lam * w for v, w in zip(aug[r], aug[col])]
    return [row[m:] for row in aug]


def interpolation_normal_form(f, points, order, cap=DEFAULT_POINT_CAP):
    """The unique combination of standard monomials of I(points) agreeing with
    f at every point: a linear-algebra oracle, independent of symbolic
    division."""
    pts = tuple(tuple(Fraction(c) for c in p) for p in points)
    if len(pts) > cap:
        raise CapExceededError(f"{len(pts)} points exceed the cap {cap}", flag="cap argument")
    if len(set(pts)) != len(pts):
        raise DuplicatePointError("points must be distinct")
    monos, inverse = _interpolation_data(pts, order)
    vals = [f.evaluate(p) for p in pts]
    coeffs = [
        sum((inverse[i][j] * vals[j] for j in range(len(pts))), Fraction(0))
        for i in range(len(pts))
    ]
    terms = {}
    for mono, c in zip(monos, coeffs):
        if c != 0:
            terms[mono] = c
    return Polynomial(order.nvars, terms)


# ---------------------------------------------------------------------------
# stratified bound (Corollary-6 style check)


@dataclass(frozen=True)
class StratumRecord:
    s: int
    size: int
    mode: str  # "trivial" | "certified" | "empty"
    bound: int
    chain_ok: bool


@dataclass(frozen=True)
class StratifiedReport:
    n: int
    sunflower_free: bool
    strata: tuple
    total: int
    bound_total: int
    ok: bool


def verify_corollary6(family, n_cap=DEFAULT_N_CAP, pair_cap=DEFAULT_PAIR_CAP,
                      triple_cap=DEFAULT_TRIPLE_CAP):
    """Stratify a family by member size, bound outer strata trivially and
    certify the middle ones, then compare the total with the stratified bound."""
    from .bounds import stratified_bound
    import math

    n = family.n
    wit = setfam.find_sunflower(family, 3) if len(family) >= 3 else None
    sunflower_free = wit is None
    strata = []
    ok = sunflower_free
    total = 0
    for s in range(n + 1):
        members = tuple(m for m in family.members if len(m) == s)
        size = len(members)
        total += size
        if 3 * s <= n or 3 * s >= 2 * n:
            mode = "trivial"
            bound = math.comb(n, s)
            chain = size <= bound
        elif size == 0:
            mode, bound, chain = "empty", main_bound(n), True
        else:
            mode = "certified"
            cert = certify_family(
                setfam.SetFamily(n, members), s,
                n_cap=n_cap, pair_cap=pair_cap, triple_cap=triple_cap,
            )
            bound = cert.bound_value
            chain = cert.chain_ok and size <= bound
        ok = ok and chain
        strata.append(StratumRecord(s=s, size=size, mode=mode, bound=bound, chain_ok=chain))
    bound_total = stratified_bound(n)
    ok = ok and total <= bound_total
    return StratifiedReport(
        n=n,
        sunflower_free=sunflower_free,
        strata=tuple(strata),
        total=total,
        bound_total=bound_total,
        ok=ok,
    )


# ---------------------------------------------------------------------------
# certificate file format: one key per line, nested sections indented


_BOOL_FIELDS = (
    "hypothesis_ok",
    "sunflower_free",
    "triple_class_ok",
    "identity_on_product_ok",
    "diagonal_ok",
    "chain_ok",
)
_INT_FIELDS = ("n", "k", "family_size", "decomposition_terms", "bound_value")


def write_certificate(cert, full_sections=None):
    lines = ["sunflower-lab certificate"]
    for name in ("n", "k", "family_digest", "hypothesis_ok", "sunflower_free",
                 "triple_class_ok", "identity_on_product_ok", "diagonal_ok",
                 "family_size", "decomposition_terms", "bound_value", "chain_ok"):
        value = getattr(cert, name)
        if isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{name}: {value}")
    lines.append("notes:")
    for note in cert.notes:
        lines.append(f"  - {note}")
    for section, body in (full_sections or {}).items():
        lines.append(f"{section}:")
        lines.extend(f"  {ln}" for ln in body)
    return "\n".join(lines) + "\n"


def read_certificate(text):
    lines = text.splitlines()
    if not lines or lines[0].strip() != "sunflower-lab certificate":
        raise ValueError("not a certificate file")
    fields = {}
    notes = []
    section = None
    for ln in lines[1:]:
        if ln.startswith("  "):
            if section == "notes" and ln.lstrip().startswith("- "):
                notes.append(ln.lstrip()[2:])
            continue
        if not ln.strip():
            continue
        key, _, value = ln.partition(":")
        key, value = key.strip(), value.strip()
        if not value:
            section = key
            continue
        section = None
        if key in _BOOL_FIELDS:
            fields[key] = value == "true"
        elif key in _INT_FIELDS:
            fields[key] = int(value)
        else:
            fields[key] = value
    return Certificate(notes=tuple(notes), **fields)


def certificate_full_sections(cert, family, ctx):
    """The --full audit payload: family members, H, and the decomposition."""
    fam_lines = [",".join(str(e) for e in m) if m else "(empty set)" for m in sorted(family.members)]
    dec_dump = dump_decomposition(
        ctx.decomposition, ctx.n, ctx.k, ctx.n // 3, ctx.axis_counts
    ).splitlines()
    return {
        "family": fam_lines,
        "h_polynomial": [dump_poly(ctx.h)],
        "decomposition": dec_dump,
    }
