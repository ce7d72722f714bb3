"""
Tests for progression gaps and essential subsets.
Includes an exhaustive-search oracle on random small bases.
"""

import itertools
import math
import random
import warnings
from functools import reduce
from typing import List, Set, Tuple

import pytest
from hypothesis import given, settings, strategies as st

from devolved import (
    EssentialityReport,
    GapParams,
    GapUndefinedError,
    IntegerSet,
    SubsetError,
    asymptotic_gap,
    covers_residues,
    create_gap_params,
    create_set,
    enumerate_essential_subsets,
    gap_product,
    is_basis_window,
    is_essential_subset,
    pairwise_coprime,
    primorial,
    progression_gap,
    union_size_within_bound,
)
from devolved._core.essentiality import candidate_primes


SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19]


@st.composite
def _coprime_gaps(draw) -> List[int]:
    """Gaps built from disjoint sets of small primes."""
    primes = draw(st.lists(st.sampled_from(SMALL_PRIMES), min_size=1, max_size=6, unique=True))
    count = draw(st.integers(min_value=1, max_value=len(primes)))
    owners = list(range(count)) + draw(
        st.lists(
            st.integers(min_value=0, max_value=count - 1),
            min_size=len(primes) - count,
            max_size=len(primes) - count,
        )
    )
    gaps = [1] * count
    for p, owner in zip(primes, owners):
        gaps[owner] *= p ** draw(st.integers(min_value=1, max_value=2))
    return gaps


class TestProgressionGap:
    """Test d(P), the gcd of the tail differences."""

    def test_small_set(self) -> None:
        """Test gcd(4, 6) = 2."""
        assert progression_gap(IntegerSet.from_members([0, 4, 10])) == 2

    def test_interval(self) -> None:
        """Test that consecutive integers have gap 1."""
        assert progression_gap(IntegerSet.interval(0, 100)) == 1

    def test_multiples_of_three(self) -> None:
        """Test a single progression."""
        assert progression_gap(IntegerSet.progression(0, 99, 3)) == 3

    def test_cutoff_ignores_head(self) -> None:
        """Test that members below the cutoff do not count."""
        A = create_set([1, 2], limit=99, runs=[(0, 99, 5)])

        assert progression_gap(A) == 1
        assert progression_gap(A, GapParams(tail_cutoff=10)) == 5

    def test_near_empty_tail(self) -> None:
        """Test that fewer than two tail members is an error."""
        with pytest.raises(GapUndefinedError) as exc:
            progression_gap(IntegerSet.from_members([0, 50]), GapParams(tail_cutoff=10))

        assert exc.value.count == 1
        assert "near-empty tail" in str(exc.value)

    def test_asymptotic_gap(self) -> None:
        """Test a(A) on a set that becomes a progression halfway."""
        A = create_set([1, 2, 4], limit=100, runs=[(0, 100, 4)])
        assert asymptotic_gap(A) == 4

    @settings(max_examples=50, deadline=None)
    @given(
        members=st.sets(st.integers(min_value=0, max_value=40), min_size=2, max_size=10),
        shift=st.integers(min_value=0, max_value=20),
        factor=st.integers(min_value=1, max_value=5),
    )
    def test_translation_and_dilation(self, members, shift: int, factor: int) -> None:
        """Test gap(S + t) = gap(S) and gap(m S) = m gap(S)."""
        S = IntegerSet.from_members(members)
        gap = progression_gap(S)

        assert progression_gap(IntegerSet.from_members([x + shift for x in members])) == gap
        assert progression_gap(IntegerSet.from_members([x * factor for x in members])) == gap * factor


class TestIsEssentialSubset:
    """Test the essentiality verdict on single candidates."""

    def test_essential_element(self, multiples_of_three_and_one) -> None:
        """Test that {1} is essential in 3N_0 u {1}."""
        report = is_essential_subset(multiples_of_three_and_one, [1])

        assert report.essential
        assert report.gap == 3
        assert report.minimality_witnesses == {(): 1}

    def test_interval_has_no_essential_element(self) -> None:
        """Test that removing 5 from [0,100] changes nothing."""
        report = is_essential_subset(IntegerSet.interval(0, 100), [5])

        assert not report.essential
        assert report.gap == 1

    def test_empty_candidate(self, multiples_of_three_and_one) -> None:
        """Test that the empty set is never essential."""
        assert not is_essential_subset(multiples_of_three_and_one, []).essential

    def test_non_minimal_candidate(self, multiples_of_three_and_one) -> None:
        """Test that {1, 3} is not minimal."""
        report = is_essential_subset(multiples_of_three_and_one, [1, 3])

        assert report.gap == 3
        assert not report.essential

    def test_candidate_outside_set(self, multiples_of_three_and_one) -> None:
        """Test that P must be a subset of A."""
        with pytest.raises(SubsetError):
            is_essential_subset(multiples_of_three_and_one, [2])

    def test_candidate_with_zero(self, multiples_of_three_and_one) -> None:
        """Test that 0 cannot be removed."""
        with pytest.raises(SubsetError):
            is_essential_subset(multiples_of_three_and_one, [0, 1])

    def test_report_serialization(self, multiples_of_three_and_one) -> None:
        """Test the JSON form of a report."""
        data = is_essential_subset(multiples_of_three_and_one, [1]).to_dict()

        assert data == {
            "subset": [1],
            "gap": 3,
            "essential": True,
            "witnesses": {"": 1},
            "cutoff_stable": True,
        }

    def test_cutoff_perturbation_is_flagged(self) -> None:
        """Test that a verdict depending on the cutoff is reported unstable."""
        # 13 sits between the perturbed cutoffs 5 and 25
        A = create_set([13, 33], limit=100, runs=[(0, 100, 4)])

        with pytest.warns(UserWarning, match="cutoff"):
            report = is_essential_subset(A, [33], GapParams(tail_cutoff=15))

        assert report.essential
        assert report.gap == 4
        assert not report.cutoff_stable


class TestEnumerateEssentialSubsets:
    """Test the prime-driven enumeration."""

    def test_interval_has_none(self) -> None:
        """Test that N_0 has no essential subsets."""
        assert enumerate_essential_subsets(IntegerSet.interval(0, 100), 3) == []

    def test_single_essential_element(self, multiples_of_three_and_one) -> None:
        """Test that 3N_0 u {1} has exactly {1}."""
        reports = enumerate_essential_subsets(multiples_of_three_and_one, 1)

        assert len(reports) == 1
        assert reports[0].subset == (1,)
        assert reports[0].gap == 3
        assert pairwise_coprime([r.gap for r in reports])

    def test_two_essential_elements(self) -> None:
        """Test 6N_0 u {2, 3}: removing 3 leaves 2N, removing 2 leaves 3N."""
        A = create_set([2, 3], limit=120, runs=[(0, 120, 6)])
        reports = enumerate_essential_subsets(A, 1)

        assert [(r.subset, r.gap) for r in reports] == [((3,), 2), ((2,), 3)]
        assert pairwise_coprime([r.gap for r in reports])
        assert gap_product(reports) == 6
        assert union_size_within_bound(reports, 1)

    def test_essential_pair(self) -> None:
        """Test that two odd extras over 2N form an essential pair."""
        A = create_set([5, 9], limit=80, runs=[(0, 80, 2)])

        assert enumerate_essential_subsets(A, 1) == []
        reports = enumerate_essential_subsets(A, 2)
        assert [r.subset for r in reports] == [(5, 9)]
        assert reports[0].gap == 2

    def test_head_bound_excludes_large_subsets(self) -> None:
        """Test that candidates above the head bound are skipped."""
        A = create_set([3], limit=60, runs=[(0, 60, 2)])

        assert len(enumerate_essential_subsets(A, 1)) == 1
        assert enumerate_essential_subsets(A, 1, create_gap_params(head_bound=2)) == []

    def test_candidate_primes(self) -> None:
        """Test that only primes dividing the k+1 smallest members are searched."""
        A = create_set([1], limit=99, runs=[(0, 99, 3)])

        assert candidate_primes(A, 1) == [3]
        assert candidate_primes(A, 2) == [2, 3]

    def test_rejects_non_positive_k(self, multiples_of_three_and_one) -> None:
        """Test that k must be positive."""
        with pytest.raises(ValueError):
            enumerate_essential_subsets(multiples_of_three_and_one, 0)

    def test_positive_cutoff_matches_verdict(self) -> None:
        """Test that the search above a cutoff finds what is_essential_subset accepts."""
        A = create_set([1, 31], limit=100, runs=[(0, 100, 2)])
        params = create_gap_params(tail_cutoff=20)

        assert is_essential_subset(A, [31], params).essential
        reports = enumerate_essential_subsets(A, 1, params)
        assert [(r.subset, r.gap) for r in reports] == [((31,), 2)]

    def test_positive_cutoff_odd_class(self) -> None:
        """Test a tail that survives in the class 1 mod 2."""
        A = create_set([0, 40], limit=90, runs=[(21, 89, 2)])
        params = create_gap_params(tail_cutoff=20)
        reports = enumerate_essential_subsets(A, 1, params)

        assert is_essential_subset(A, [40], params).essential
        assert [(r.subset, r.gap) for r in reports] == [((40,), 2)]

    def test_positive_cutoff_agrees_with_exhaustive_verdicts(self) -> None:
        """Test the search against is_essential_subset on every small subset."""
        rng = random.Random(7)
        for _ in range(30):
            limit = rng.randint(24, 40)
            A = _random_basis(rng, limit)
            params = GapParams(tail_cutoff=limit // 5)
            head_bound = params.resolved_head_bound(A)
            candidates = [int(m) for m in A.members() if 0 < m <= head_bound]

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                expected = set()
                for size in (1, 2):
                    for P in itertools.combinations(candidates, size):
                        try:
                            if is_essential_subset(A, P, params).essential:
                                expected.add(P)
                        except GapUndefinedError:
                            continue
                found = {r.subset for r in enumerate_essential_subsets(A, 2, params)}

            assert found == expected, f"A={list(A)}, cutoff={params.tail_cutoff}"


class TestHelpers:
    """Test coprimality, coverage and union helpers."""

    def test_pairwise_coprime(self) -> None:
        """Test the coprimality check."""
        assert pairwise_coprime([2, 3, 5])
        assert not pairwise_coprime([2, 4])
        assert pairwise_coprime([3])
        assert pairwise_coprime([])

    def test_covers_residues(self) -> None:
        """Test residue coverage of a small sumset."""
        Y = IntegerSet.from_members([0, 1])

        assert covers_residues(Y, 2, 3)
        assert not covers_residues(Y, 2, 4)

    @settings(max_examples=50, deadline=None)
    @given(gaps=_coprime_gaps())
    def test_coprime_gap_product_reaches_primorial(self, gaps: List[int]) -> None:
        """Test that phi pairwise coprime gaps multiply to at least p_phi#."""
        reports = [
            EssentialityReport(subset=(i + 1,), gap=g, essential=True) for i, g in enumerate(gaps)
        ]

        assert pairwise_coprime(gaps)
        assert gap_product(reports) >= primorial(len(gaps))

    @settings(max_examples=50, deadline=None)
    @given(
        extras=st.sets(st.integers(min_value=1, max_value=12), min_size=1, max_size=5),
        h=st.integers(min_value=1, max_value=3),
        modulus=st.integers(min_value=1, max_value=30),
    )
    def test_residue_cover_needs_enough_sums(self, extras, h: int, modulus: int) -> None:
        """Test that covering t classes with hY forces |Y|^h >= t."""
        Y = IntegerSet.from_members(sorted({0} | extras))

        if covers_residues(Y, h, modulus):
            assert len(Y) ** h >= modulus


# Oracle


def _gap(values: List[int]) -> int:
    first = values[0]
    return reduce(math.gcd, (v - first for v in values[1:]), 0)


def _oracle(members: List[int], k: int, head_bound: int) -> Set[Tuple[int, ...]]:
    """Every subset of size <= k passing the gcd criterion, by brute force."""
    nonzero = [m for m in members if m > 0]
    found = set()
    for size in range(1, k + 1):
        for P in itertools.combinations(nonzero, size):
            if P[-1] > head_bound:
                continue
            rest = [m for m in members if m not in P]
            if len(rest) < 2 or _gap(rest) < 2:
                continue
            minimal = all(
                _gap([m for m in members if m not in Q]) == 1
                for q_size in range(size)
                for Q in itertools.combinations(P, q_size)
            )
            if minimal:
                found.add(P)
    return found


def _random_basis(rng: random.Random, limit: int) -> IntegerSet:
    kind = rng.random()
    if kind < 0.4:
        density = rng.uniform(0.3, 0.9)
        members = {0} | {x for x in range(1, limit + 1) if rng.random() < density}
    elif kind < 0.7:
        p = rng.choice([2, 3, 5])
        extras = [x for x in range(1, limit // 2 + 1) if x % p]
        members = set(range(0, limit + 1, p)) | set(rng.sample(extras, rng.randint(1, 2)))
    else:
        p, q = rng.sample([2, 3, 5], 2)
        members = set(range(0, limit + 1, p * q)) | {p, q}
        if rng.random() < 0.5:
            members.add(rng.randint(1, limit))
    return IntegerSet.from_members(sorted(members), limit=limit)


class TestEssentialityOracle:
    """Compare the enumeration with exhaustive search on random bases."""

    INSTANCES = 200
    ORDER = 8

    def _instances(self):
        rng = random.Random(20240611)
        produced = 0
        for _ in range(50 * self.INSTANCES):
            limit = rng.randint(20, 60)
            A = _random_basis(rng, limit)
            if not is_basis_window(A, self.ORDER, limit // 2, limit):
                continue
            yield A
            produced += 1
            if produced == self.INSTANCES:
                return
        raise AssertionError(f"only {produced} random bases passed the basis check")

    def test_enumeration_matches_exhaustive_search(self) -> None:
        """Test agreement for k = 1 and k = 2 on every instance."""
        with_findings = 0
        for A in self._instances():
            members = [int(m) for m in A.members()]
            for k in (1, 2):
                reports = enumerate_essential_subsets(A, k)
                expected = _oracle(members, k, A.limit // 2)

                assert {r.subset for r in reports} == expected, f"A={members}, k={k}"
                with_findings += bool(reports)
        assert with_findings > 0

    def test_gaps_pairwise_coprime(self) -> None:
        """Test that distinct essential subsets have coprime gaps."""
        for A in self._instances():
            reports = enumerate_essential_subsets(A, 2)
            if len(reports) < 2:
                continue
            assert pairwise_coprime([r.gap for r in reports]), [r.subset for r in reports]
