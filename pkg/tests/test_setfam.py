"""Tests for set families, sunflower detection, and the extremal search."""

import itertools
import random

import pytest

from sunflower_lab import setfam
from sunflower_lab.bounds import main_bound
from sunflower_lab.errors import CapExceededError, InvalidWitnessError
from sunflower_lab.setfam import (
    SetFamily,
    char_vector,
    complete_family,
    find_sunflower,
    is_sunflower,
    max_sunflower_free,
    read_family,
    subset_mask,
    triple_sum_class,
    write_family,
)


def brute_force_max(n, k, t=3):
    """Independent oracle: scan every subfamily of the k-uniform candidates."""
    cand = list(itertools.combinations(range(1, n + 1), k))
    masks = [subset_mask(s) for s in cand]
    nc = len(cand)
    bad = [
        frozenset(tr)
        for tr in itertools.combinations(range(nc), t)
        if is_sunflower([cand[i] for i in tr])
    ]
    best = 0
    for sub in range(1 << nc):
        chosen = frozenset(i for i in range(nc) if sub >> i & 1)
        if len(chosen) > best and all(not b <= chosen for b in bad):
            best = len(chosen)
    return best


def brute_force_max_unrestricted(n, t=3):
    cand = [setfam.mask_subset(m, n) for m in range(1 << n)]
    bad = [
        frozenset(tr)
        for tr in itertools.combinations(range(len(cand)), t)
        if is_sunflower([cand[i] for i in tr])
    ]
    best = 0
    for sub in range(1 << len(cand)):
        chosen = frozenset(i for i in range(len(cand)) if sub >> i & 1)
        if len(chosen) > best and all(not b <= chosen for b in bad):
            best = len(chosen)
    return best


def random_sunflower_free(n, k, rng):
    """Greedy maximal sunflower-free subfamily of the complete k-uniform family."""
    members = list(complete_family(n, k).members)
    rng.shuffle(members)
    chosen = []
    for cand in members:
        if all(
            not is_sunflower([a, b, cand])
            for a, b in itertools.combinations(chosen, 2)
        ):
            chosen.append(cand)
    return SetFamily(n, tuple(chosen))


class TestIsSunflower:
    def test_pairwise_disjoint(self):
        assert is_sunflower([(1, 2), (3, 4), (5, 6)])

    def test_common_kernel(self):
        assert is_sunflower([(1, 2), (1, 3), (1, 4)])

    def test_triangle_is_not(self):
        assert not is_sunflower([(1, 2), (2, 3), (1, 3)])

    def test_two_sets_always(self):
        assert is_sunflower([(1, 2), (2, 3)])

    def test_rejects_duplicates(self):
        with pytest.raises(InvalidWitnessError):
            is_sunflower([(1, 2), (1, 2), (3,)])

    def test_rejects_single(self):
        with pytest.raises(InvalidWitnessError):
            is_sunflower([(1, 2)])


class TestFindSunflower:
    def test_disjoint_singletons(self):
        fam = SetFamily(3, ((1,), (2,), (3,)))
        wit = find_sunflower(fam, 3)
        assert wit is not None
        assert wit.petals == (0, 1, 2)
        assert wit.kernel == ()

    def test_triangle_has_none(self):
        fam = SetFamily(3, ((1, 2), (2, 3), (1, 3)))
        assert find_sunflower(fam, 3) is None

    def test_complete_4_2_has_one(self):
        # oracle: scan all C(6,3)=20 member triples directly
        fam = complete_family(4, 2)
        triples = [
            tr for tr in itertools.combinations(range(len(fam)), 3)
            if is_sunflower([fam.members[i] for i in tr])
        ]
        assert triples, "exhaustive scan must find a sunflower in C([4],2)"
        wit = find_sunflower(fam, 3)
        assert wit is not None
        assert wit.petals == min(triples)

    def test_round_trip_on_random_families(self):
        rng = random.Random(7)
        for _ in range(30):
            n = rng.randint(2, 6)
            all_subsets = [setfam.mask_subset(m, n) for m in range(1 << n)]
            members = tuple(rng.sample(all_subsets, rng.randint(3, min(10, 1 << n))))
            fam = SetFamily(n, members)
            wit = find_sunflower(fam, 3)
            if wit is not None:
                assert is_sunflower([fam.members[i] for i in wit.petals])

    def test_t_must_be_at_least_two(self):
        with pytest.raises(ValueError):
            find_sunflower(SetFamily(2, ((1,),)), 1)


class TestTripleSumClass:
    def test_equal_sets(self):
        assert triple_sum_class((1, 2), (1, 2), (1, 2), 3)

    def test_triangle(self):
        assert not triple_sum_class((1, 2), (1, 3), (2, 3), 3)

    def test_disjoint_singletons(self):
        assert triple_sum_class((1,), (2,), (3,), 3)

    def test_matches_mask_version(self):
        rng = random.Random(3)
        n = 5
        for _ in range(100):
            sets = [
                tuple(sorted(rng.sample(range(1, n + 1), rng.randint(0, n))))
                for _ in range(3)
            ]
            masks = [subset_mask(s) for s in sets]
            assert triple_sum_class(*sets, n) == setfam._triple_class_mask(*masks)


class TestCompleteFamilyAndVectors:
    def test_singletons(self):
        assert complete_family(3, 1).members == ((1,), (2,), (3,))

    def test_counts(self):
        assert len(complete_family(4, 2)) == 6
        assert len(complete_family(6, 2)) == 15

    def test_char_vector(self):
        assert char_vector((1, 3), 4) == (1, 0, 1, 0)
        assert char_vector((), 2) == (0, 0)
        assert char_vector((1, 2, 3), 3) == (1, 1, 1)


class TestSetFamilyValidation:
    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            SetFamily(3, ((1, 2), (1, 2)))

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            SetFamily(2, ((1, 3),))

    def test_unsorted_rejected(self):
        with pytest.raises(ValueError):
            SetFamily(3, ((2, 1),))

    def test_uniformity(self):
        assert complete_family(4, 2).uniformity() == 2
        assert SetFamily(3, ((1,), (1, 2))).uniformity() is None


class TestMaxSunflowerFree:
    def test_three_singletons(self):
        size, wit = max_sunflower_free(3, 3, 1)
        assert size == 2
        assert find_sunflower(wit, 3) is None

    def test_two_singletons(self):
        size, _ = max_sunflower_free(2, 3, 1)
        assert size == 2

    def test_4_2_matches_brute_force(self):
        assert brute_force_max(4, 2) == 4  # frozen from the 2^6 subfamily scan
        size, wit = max_sunflower_free(4, 3, 2)
        assert size == 4
        assert find_sunflower(wit, 3) is None

    def test_small_uniform_against_oracle(self):
        for n, k in [(3, 1), (4, 1), (4, 2), (3, 2), (4, 3)]:
            assert max_sunflower_free(n, 3, k)[0] == brute_force_max(n, k)

    def test_unrestricted_against_oracle(self):
        for n in (2, 3):
            assert max_sunflower_free(n, 3)[0] == brute_force_max_unrestricted(n)

    def test_canonical_matches_plain(self):
        for n, k in [(4, 2), (5, 2), (4, 3)]:
            plain, _ = max_sunflower_free(n, 3, k)
            canon, _ = max_sunflower_free(n, 3, k, canonical=True)
            assert plain == canon

    def test_four_petals(self):
        # any 4 distinct singletons are pairwise disjoint
        size, _ = max_sunflower_free(4, 4, 1)
        assert size == 3

    def test_cap(self):
        with pytest.raises(CapExceededError):
            max_sunflower_free(7, 3)
        with pytest.raises(CapExceededError):
            max_sunflower_free(9, 3, 2)

    def test_witness_is_sunflower_free_and_maximal_size(self):
        size, wit = max_sunflower_free(5, 3, 2)
        assert len(wit) == size
        assert find_sunflower(wit, 3) is None


class TestProofOpeningClaim:
    """Sunflower-free k-uniform: coordinate sums avoid 2 exactly on the diagonal."""

    @pytest.mark.parametrize("n,k", [(3, 1), (4, 2), (5, 2), (6, 2), (6, 3)])
    def test_on_search_witness(self, n, k):
        _, fam = max_sunflower_free(n, 3, k)
        self._check(fam, n)

    def test_on_random_families(self):
        rng = random.Random(11)
        for _ in range(10):
            n = rng.randint(3, 6)
            k = rng.randint(1, n - 1)
            fam = random_sunflower_free(n, k, rng)
            self._check(fam, n)

    @staticmethod
    def _check(fam, n):
        for h1, h2, h3 in itertools.product(fam.members, repeat=3):
            assert triple_sum_class(h1, h2, h3, n) == (h1 == h2 == h3)


class TestExtremalConsistency:
    def test_max_below_main_bound(self):
        for n in range(2, 6):
            for k in range(1, n + 1):
                if 3 * k <= 2 * n <= 6 * k:
                    size, _ = max_sunflower_free(n, 3, k)
                    assert size <= main_bound(n)

    def test_complete_family_has_sunflower_above_max(self):
        for n, k in [(3, 1), (4, 2), (4, 1), (5, 2)]:
            size, _ = max_sunflower_free(n, 3, k)
            fam = complete_family(n, k)
            if len(fam) > size:
                assert find_sunflower(fam, 3) is not None


class TestFamilyFiles:
    def test_round_trip(self, tmp_path):
        fam = SetFamily.from_sets(4, [(2, 4), (1,), ()])
        path = tmp_path / "fam.txt"
        setfam.save_family(fam, path)
        back = setfam.load_family(path)
        assert back.n == 4
        assert sorted(back.members) == sorted(fam.members)

    def test_comments_and_empty_set(self):
        text = "# a comment\nn=3\n\n1,3\n# trailing comment\n2\n"
        fam = read_family(text)
        assert fam.members == ((), (1, 3), (2,))

    def test_duplicate_members_rejected(self):
        with pytest.raises(ValueError):
            read_family("n=3\n1,2\n1,2\n")

    def test_bad_header(self):
        with pytest.raises(ValueError):
            read_family("m=3\n1\n")

    def test_writer_sorts(self):
        fam = SetFamily(3, ((2,), (1,)))
        assert write_family(fam) == "n=3\n1\n2\n"
