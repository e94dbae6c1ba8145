"""Set families over [n]: sunflower detection, characteristic vectors, and
exhaustive extremal search.

Subsets of the ground set are sorted tuples of distinct 1-based integers;
the empty tuple is the empty set.  Families keep their member order as given
(the file writer sorts); members must be pairwise distinct.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapExceededError, InvalidWitnessError

DEFAULT_CAP_UNRESTRICTED = 6
DEFAULT_CAP_UNIFORM = 8


def subset_of(elements, n):
    """Normalize an iterable of elements into a valid subset of [n]."""
    elems = tuple(sorted(elements))
    for a, b in zip(elems, elems[1:]):
        if a == b:
            raise ValueError(f"repeated element {a} in subset")
    if elems and not (1 <= elems[0] and elems[-1] <= n):
        raise ValueError(f"elements of {elems} outside 1..{n}")
    return elems


def subset_mask(s):
    """Bitmask of a subset (bit i-1 set iff i is a member)."""
    mask = 0
    for e in s:
        mask |= 1 << (e - 1)
    return mask


def mask_subset(mask, n):
    return tuple(i for i in range(1, n + 1) if mask >> (i - 1) & 1)


def char_vector(s, n):
    """0/1 vector of length n; coordinate i-1 is 1 iff i is in s."""
    if s and s[-1] > n:
        raise ValueError(f"subset {s} not within [{n}]")
    members = set(s)
    return tuple(1 if i in members else 0 for i in range(1, n + 1))


@dataclass(frozen=True)
class SetFamily:
    """A ground-set size n and a list of pairwise-distinct subsets of [n]."""

    n: int
    members: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground set size must be >= 1")
        seen = set()
        for m in self.members:
            if subset_of(m, self.n) != m:
                raise ValueError(f"member {m} is not a sorted subset of [{self.n}]")
            if m in seen:
                raise ValueError(f"duplicate member {m}")
            seen.add(m)

    @classmethod
    def from_sets(cls, n, sets):
        return cls(n, tuple(subset_of(s, n) for s in sets))

    def __len__(self):
        return len(self.members)

    def uniformity(self):
        """k if every member has k elements, else None."""
        sizes = {len(m) for m in self.members}
        return sizes.pop() if len(sizes) == 1 else None

    def masks(self):
        return [subset_mask(m) for m in self.members]


@dataclass(frozen=True)
class SunflowerWitness:
    """Indices of t members forming a sunflower, with their common kernel."""

    petals: tuple
    kernel: tuple


def is_sunflower(sets):
    """True iff every pairwise intersection equals the overall intersection."""
    if len(sets) < 2:
        raise InvalidWitnessError("a sunflower needs at least 2 sets")
    masks = [subset_mask(s) for s in sets]
    if len(set(masks)) != len(masks):
        raise InvalidWitnessError("sunflower sets must be pairwise distinct")
    kernel = masks[0]
    for m in masks[1:]:
        kernel &= m
    return all(a & b == kernel for a, b in itertools.combinations(masks, 2))


def find_sunflower(family, t):
    """The lexicographically first t-petal sunflower by member indices, or None."""
    if t < 2:
        raise ValueError("t must be >= 2")
    masks = family.masks()
    for idxs in itertools.combinations(range(len(masks)), t):
        chosen = [masks[i] for i in idxs]
        kernel = chosen[0]
        for m in chosen[1:]:
            kernel &= m
        if all(a & b == kernel for a, b in itertools.combinations(chosen, 2)):
            return SunflowerWitness(petals=idxs, kernel=mask_subset(kernel, family.n))
    return None


def triple_sum_class(h1, h2, h3, n):
    """True iff the coordinate sums of the three characteristic vectors all lie in {0,1,3}."""
    v1, v2, v3 = (char_vector(h, n) for h in (h1, h2, h3))
    return all(a + b + c in (0, 1, 3) for a, b, c in zip(v1, v2, v3))


def _triple_class_mask(a, b, c):
    # no coordinate in exactly two of the three sets
    return (a & b) | (a & c) | (b & c) == a & b & c


def complete_family(n, k):
    """All C(n,k) k-subsets of [n] in lexicographic order."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return SetFamily(n, tuple(itertools.combinations(range(1, n + 1), k)))


# ---------------------------------------------------------------------------
# extremal search


def _sunflower_triple(a, b, c):
    kernel = a & b & c
    return a & b == kernel and a & c == kernel and b & c == kernel


def max_sunflower_free(n, t, k=None, cap=None, canonical=False):
    """Exact maximum size of a (k-uniform) family of subsets of [n] with no
    t-petal sunflower, plus one maximizer.

    Branch-and-bound over the subset lattice; candidates in colexicographic
    order (ascending bitmask), pruned by the best size found so far.  With
    ``canonical=True`` (k-uniform only) the first member is fixed to
    {1..k} by symmetry, which speeds the search without changing the size.
    """
    if t < 3:
        raise ValueError("t must be >= 3")
    if cap is None:
        cap = DEFAULT_CAP_UNIFORM if k is not None else DEFAULT_CAP_UNRESTRICTED
    if n > cap:
        raise CapExceededError(f"search instance n={n} exceeds cap {cap}", flag="--cap-sets")

    if k is not None:
        if not 0 <= k <= n:
            raise ValueError("need 0 <= k <= n")
        cand = sorted(subset_mask(s) for s in itertools.combinations(range(1, n + 1), k))
    else:
        cand = list(range(1 << n))
    nc = len(cand)

    best_size = 0
    best_sets = []

    if t == 3:
        # bad[i][j]: candidate indices completing a sunflower with pair (i, j)
        bad = [[0] * nc for _ in range(nc)]
        for i, j, l in itertools.combinations(range(nc), 3):
            if _sunflower_triple(cand[i], cand[j], cand[l]):
                bit_l, bit_j, bit_i = 1 << l, 1 << j, 1 << i
                bad[i][j] |= bit_l
                bad[i][l] |= bit_j
                bad[j][l] |= bit_i
                bad[j][i] |= bit_l
                bad[l][i] |= bit_j
                bad[l][j] |= bit_i

        def extend(start, chosen, blocked):
            nonlocal best_size, best_sets
            if len(chosen) > best_size:
                best_size = len(chosen)
                best_sets = [cand[i] for i in chosen]
            for idx in range(start, nc):
                if blocked >> idx & 1:
                    continue
                avail_after = bin(~blocked >> (idx + 1) & ((1 << (nc - idx - 1)) - 1)).count("1")
                if len(chosen) + 1 + avail_after <= best_size:
                    break
                nb = blocked
                for a in chosen:
                    nb |= bad[a][idx]
                chosen.append(idx)
                extend(idx + 1, chosen, nb)
                chosen.pop()

        if canonical and k is not None and nc:
            # colex-first member of some maximizer maps to {1..k} under relabeling
            extend(1, [0], 0)
        else:
            extend(0, [], 0)
    else:

        def conflicts(chosen, idx):
            new = cand[idx]
            for sub in itertools.combinations(chosen, t - 1):
                group = [cand[i] for i in sub] + [new]
                kernel = group[0]
                for m in group[1:]:
                    kernel &= m
                if all(a & b == kernel for a, b in itertools.combinations(group, 2)):
                    return True
            return False

        def extend_general(start, chosen):
            nonlocal best_size, best_sets
            if len(chosen) > best_size:
                best_size = len(chosen)
                best_sets = [cand[i] for i in chosen]
            for idx in range(start, nc):
                if len(chosen) + 1 + (nc - idx - 1) <= best_size:
                    break
                if len(chosen) >= t - 1 and conflicts(chosen, idx):
                    continue
                chosen.append(idx)
                extend_general(idx + 1, chosen)
                chosen.pop()

        extend_general(0, [])

    witness = SetFamily(n, tuple(mask_subset(m, n) for m in best_sets))
    return best_size, witness


# ---------------------------------------------------------------------------
# family file format


def write_family(family):
    """Canonical text form: header line n=<int>, one member per line."""
    lines = [f"n={family.n}"]
    for m in sorted(family.members):
        lines.append(",".join(str(e) for e in m))
    return "\n".join(lines) + "\n"


def read_family(text):
    """Parse the family file format.  A line with an empty body is the empty set."""
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("family file has no header line")
    header = lines[0].strip()
    if not header.startswith("n="):
        raise ValueError(f"expected n=<int> header, got {header!r}")
    n = int(header[2:])
    members = []
    for ln in lines[1:]:
        body = ln.strip()
        if not body:
            members.append(())
        else:
            members.append(subset_of((int(tok) for tok in body.split(",")), n))
    return SetFamily(n, tuple(members))


def load_family(path):
    with open(path, encoding="utf-8") as fh:
        return read_family(fh.read())


def save_family(family, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_family(family))
