# devolved/_core/essentiality.py

"""
Essential subsets of truncated bases.

A finite P inside a basis A is essential when A\\P is no longer a basis of
any order and P is minimal with that property. On a truncation containing 0
this becomes a gcd test: A\\P fails to be a basis exactly when all of it lies
in one progression of common difference d(P) >= 2.
"""

import itertools
import math
import warnings
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import GapUndefinedError, SubsetError
from .primes import get_prime_cache
from .sets import IntegerSet, h_fold_sumset

# Largest |P| accepted by is_essential_subset (2**|P| minimality checks)
MAX_SUBSET_SIZE = 20


@dataclass(frozen=True)
class GapParams:
    """
    Truncation conventions for d(P) and the essential-subset search.

    Attributes:
        tail_cutoff: Members below this are ignored when computing the gap
                     (0 reads "A\\P lies in one progression" literally)
        head_bound: Largest element a finite essential subset may contain
                    (None means limit // 2 of the set in question)
        prime_bound: Optional cap on the primes searched by the enumeration
    """
    tail_cutoff: int = 0
    head_bound: Optional[int] = None
    prime_bound: Optional[int] = None

    def __post_init__(self):
        if self.tail_cutoff < 0:
            raise ValueError(f"tail_cutoff must be non-negative, got {self.tail_cutoff}")
        if self.head_bound is not None and self.head_bound < 0:
            raise ValueError(f"head_bound must be non-negative, got {self.head_bound}")
        if self.prime_bound is not None and self.prime_bound < 2:
            raise ValueError(f"prime_bound must be at least 2, got {self.prime_bound}")

    def resolved_head_bound(self, A: IntegerSet) -> int:
        return A.limit // 2 if self.head_bound is None else self.head_bound

    def validate_for(self, A: IntegerSet) -> None:
        if self.tail_cutoff > A.limit:
            raise ValueError(f"tail_cutoff {self.tail_cutoff} exceeds set limit {A.limit}")

    def with_cutoff(self, cutoff: int) -> "GapParams":
        return GapParams(tail_cutoff=cutoff, head_bound=self.head_bound, prime_bound=self.prime_bound)


@dataclass
class EssentialityReport:
    """
    Verdict on one candidate subset.

    Attributes:
        subset: The candidate P, ascending
        gap: d(P), the gcd of the differences of A\\P above the cutoff
        essential: gap >= 2 and every proper subset leaves gap 1
        minimality_witnesses: d(A\\Q) for each proper subset Q tested, keyed by Q
        cutoff_stable: False when a +-10% cutoff perturbation changes the verdict
    """
    subset: Tuple[int, ...]
    gap: int
    essential: bool
    minimality_witnesses: Dict[Tuple[int, ...], int] = field(default_factory=dict)
    cutoff_stable: bool = True

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.gap, self.subset)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subset": list(self.subset),
            "gap": self.gap,
            "essential": self.essential,
            "witnesses": {
                ",".join(str(x) for x in q) if q else "": d
                for q, d in sorted(self.minimality_witnesses.items())
            },
            "cutoff_stable": self.cutoff_stable,
        }


def _gcd_of_differences(members: np.ndarray) -> int:
    diffs = np.diff(members)
    g = 0
    for d in np.unique(diffs):
        g = math.gcd(g, int(d))
        if g == 1:
            break
    return g


def progression_gap(S: IntegerSet, params: Optional[GapParams] = None) -> int:
    """
    Largest d such that the members of S at or above the cutoff lie in one class mod d.

    Args:
        S: The set
        params: Gap conventions (default: cutoff 0)

    Returns:
        gcd of consecutive differences of the tail

    Raises:
        GapUndefinedError: If fewer than two members reach the cutoff
    """
    params = params or GapParams()
    tail = S.members()
    if params.tail_cutoff:
        tail = tail[tail >= params.tail_cutoff]
    if len(tail) < 2:
        raise GapUndefinedError(len(tail), params.tail_cutoff)
    return _gcd_of_differences(tail)


def asymptotic_gap(A: IntegerSet, cutoff: Optional[int] = None) -> int:
    """
    a(A): the largest a such that A lies in one progression of difference a from some point on.

    Evaluated on the tail above `cutoff` (default A.limit // 2).
    """
    if cutoff is None:
        cutoff = A.limit // 2
    return progression_gap(A, GapParams(tail_cutoff=cutoff))


def _as_subset(P: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted({int(x) for x in P}))


def _verdict(A: IntegerSet, P: Tuple[int, ...], params: GapParams) -> EssentialityReport:
    gap = progression_gap(A.without(P), params)
    witnesses: Dict[Tuple[int, ...], int] = {}
    essential = gap >= 2 and len(P) > 0
    if essential:
        for size in range(len(P)):
            for Q in itertools.combinations(P, size):
                d = progression_gap(A.without(Q), params)
                witnesses[Q] = d
                if d != 1:
                    essential = False
                    break
            if not essential:
                break
    return EssentialityReport(subset=P, gap=gap, essential=essential, minimality_witnesses=witnesses)


def is_essential_subset(
    A: IntegerSet,
    P: Iterable[int],
    params: Optional[GapParams] = None,
) -> EssentialityReport:
    """
    Decide whether P is an essential subset of the truncation A.

    P is essential iff d(P) >= 2 and d(Q) == 1 for every proper Q of P.
    With a positive tail cutoff the verdict is recomputed at cutoff +-10% of
    the limit, and a change marks the report unstable.

    Args:
        A: Truncated basis containing 0
        P: Finite candidate, P subset of A, 0 not in P
        params: Gap conventions

    Returns:
        EssentialityReport

    Raises:
        SubsetError: If P is not a subset of A, contains 0, or is too large
        GapUndefinedError: If fewer than two members of A\\P reach the cutoff
    """
    params = params or GapParams()
    params.validate_for(A)
    subset = _as_subset(P)
    missing = [x for x in subset if x not in A]
    if missing:
        raise SubsetError(f"P is not contained in A: {missing} not in A")
    if 0 in subset:
        raise SubsetError("P must not contain 0 (the empty sum is always available)")
    if len(subset) > MAX_SUBSET_SIZE:
        raise SubsetError(f"|P| = {len(subset)} exceeds the subset-iteration limit {MAX_SUBSET_SIZE}")

    report = _verdict(A, subset, params)

    if params.tail_cutoff > 0:
        delta = max(1, A.limit // 10)
        for cutoff in (max(0, params.tail_cutoff - delta), min(A.limit, params.tail_cutoff + delta)):
            try:
                other = _verdict(A, subset, params.with_cutoff(cutoff))
            except GapUndefinedError:
                report.cutoff_stable = False
                continue
            if other.essential != report.essential:
                report.cutoff_stable = False
        if not report.cutoff_stable:
            warnings.warn(
                f"essentiality of {list(subset)} changes under a +-10% tail cutoff perturbation "
                f"(cutoff {params.tail_cutoff}, limit {A.limit})",
                UserWarning,
            )
    return report


def candidate_primes(A: IntegerSet, k: int, params: Optional[GapParams] = None) -> List[int]:
    """
    Primes that can be d(P)-divisors of an essential subset of size <= k.

    At cutoff 0 any such prime p divides every member of A\\P, so it divides at
    least one of the k+1 smallest nonzero members of A. With a positive cutoff
    at least two of the k+2 smallest tail members survive, so p divides one of
    their differences.
    """
    params = params or GapParams()
    members = A.members()
    if params.tail_cutoff:
        tail = [int(m) for m in members[members >= params.tail_cutoff][: k + 2]]
        values = {b - a for a, b in itertools.combinations(tail, 2)}
    else:
        values = {int(m) for m in members[members > 0][: k + 1]}
    cache = get_prime_cache()
    primes = sorted({p for v in values for p in cache.factor_primes(v)})
    if params.prime_bound is not None:
        primes = [p for p in primes if p <= params.prime_bound]
    return primes


def _candidate_subsets(A: IntegerSet, k: int, params: GapParams) -> Iterator[Tuple[int, ...]]:
    """
    Every P of size <= k whose removal leaves the tail in one class mod a prime.

    At cutoff 0 the class is 0 mod p, since 0 stays in A\\P. Above a positive
    cutoff each class c of the k+2 smallest tail members is tried, and P is
    the tail members outside c mod p.
    """
    members = A.members()
    if params.tail_cutoff:
        tail = members[members >= params.tail_cutoff]
        classes_from = tail[: k + 2]
    else:
        tail = members
        classes_from = tail[:1]
    for p in candidate_primes(A, k, params):
        for c in sorted({int(m) % p for m in classes_from}):
            outside = tail[tail % p != c]
            if 0 < len(outside) <= k:
                yield tuple(int(x) for x in outside)


def enumerate_essential_subsets(
    A: IntegerSet,
    k: int,
    params: Optional[GapParams] = None,
) -> List[EssentialityReport]:
    """
    All essential subsets of size at most k visible in the truncation.

    For each candidate prime p and each class c mod p that a surviving tail
    member can occupy, the only possible P is the set of tail members outside
    c mod p. A candidate is kept when it is nonempty, has at most k elements,
    lies below the head bound and passes is_essential_subset with the same
    conventions, so both functions agree at any cutoff.

    Args:
        A: Truncated basis containing 0
        k: Largest subset size
        params: Gap conventions

    Returns:
        Reports of the essential subsets, sorted by gap then subset
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    params = params or GapParams()
    params.validate_for(A)
    head_bound = params.resolved_head_bound(A)

    seen = set()
    reports: List[EssentialityReport] = []
    for subset in _candidate_subsets(A, k, params):
        if subset in seen or subset[-1] > head_bound:
            continue
        seen.add(subset)
        try:
            report = is_essential_subset(A, subset, params)
        except GapUndefinedError:
            continue
        if report.essential:
            reports.append(report)

    reports.sort(key=EssentialityReport.sort_key)
    return reports


def pairwise_coprime(gaps: Sequence[int]) -> bool:
    """True iff every pair of gaps has gcd 1 (vacuous for fewer than two)."""
    return all(math.gcd(a, b) == 1 for a, b in itertools.combinations(gaps, 2))


def covers_residues(Y: IntegerSet, h: int, modulus: int) -> bool:
    """
    Whether the h-fold sumset of Y meets every residue class mod `modulus`.

    Y must contain 0. Residues are taken over the full sumset, whose largest
    element is h * max(Y).
    """
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    sums = h_fold_sumset(Y, h, h * Y.max())
    residues = np.unique(sums.members() % modulus)
    return len(residues) == modulus


def union_size_within_bound(reports: Sequence[EssentialityReport], k: int) -> bool:
    """|P_1 u ... u P_phi| <= k * phi for a list of reports of size <= k."""
    union: FrozenSet[int] = frozenset(x for r in reports for x in r.subset)
    return len(union) <= k * len(reports)


def gap_product(reports: Sequence[EssentialityReport]) -> int:
    """t = product of the gaps d(P_i)."""
    return reduce(lambda acc, r: acc * r.gap, reports, 1)
