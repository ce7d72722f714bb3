# devolved/_core/sets.py

"""
Finite-truncation integer sets and h-fold sumsets.

An IntegerSet is the characteristic function of a subset of [0, limit],
stored as a Python int used as a bitset (bit m is set iff m is a member).
Sumsets are computed by shift-or over that bitset, one arithmetic run of
the summand at a time.
"""

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, TYPE_CHECKING

import numpy as np

from .errors import DevolvedError, WindowError

if TYPE_CHECKING:
    from devolved._config import Settings

Run = Tuple[int, int, int]


def _popcount(x: int) -> int:
    try:
        return x.bit_count()
    except AttributeError:  # Python 3.9
        return bin(x).count("1")


def _mask(limit: int) -> int:
    return (1 << (limit + 1)) - 1


class IntegerSet:
    """
    Immutable subset of [0, limit].

    Attributes:
        limit (int): Inclusive upper end of the represented window
        bits (int): Characteristic function, bit m set iff m is a member

    Examples:
        A = IntegerSet.from_members([0, 1, 3], limit=10)
        B = IntegerSet.interval(0, 2) | IntegerSet.progression(4, 14, 2)
        3 in A            # True
        list(B)           # [0, 1, 2, 4, 6, 8, 10, 12, 14]
    """

    def __init__(self, bits: int, limit: int):
        if limit < 0:
            raise WindowError(f"limit must be non-negative, got {limit}")
        if bits < 0:
            raise DevolvedError("bitset must be a non-negative integer")
        if bits >> (limit + 1):
            raise WindowError(
                f"set has members above its limit {limit} (max member {bits.bit_length() - 1})"
            )
        self._bits = bits
        self._limit = limit
        self._runs: Optional[List[Run]] = None

    # Construction

    @classmethod
    def empty(cls, limit: int) -> "IntegerSet":
        return cls(0, limit)

    @classmethod
    def from_members(cls, members: Iterable[int], limit: Optional[int] = None) -> "IntegerSet":
        """
        Build a set from explicit members.

        Args:
            members: Non-negative integers
            limit: Window end (defaults to the largest member, or 0 for no members)

        Returns:
            IntegerSet instance
        """
        values = [int(m) for m in members]
        if any(m < 0 for m in values):
            raise WindowError(f"members must be non-negative, got {min(values)}")
        if limit is None:
            limit = max(values) if values else 0
        bits = 0
        for m in values:
            if m > limit:
                raise WindowError(f"member {m} exceeds limit {limit}")
            bits |= 1 << m
        return cls(bits, limit)

    @classmethod
    def interval(cls, lo: int, hi: int, limit: Optional[int] = None) -> "IntegerSet":
        """The interval [lo, hi]; empty when hi < lo."""
        if limit is None:
            limit = max(hi, 0)
        if lo < 0:
            raise WindowError(f"interval start must be non-negative, got {lo}")
        if hi > limit:
            raise WindowError(f"interval end {hi} exceeds limit {limit}")
        if hi < lo:
            return cls(0, limit)
        return cls(_mask(hi - lo) << lo, limit)

    @classmethod
    def progression(cls, start: int, stop: int, step: int, limit: Optional[int] = None) -> "IntegerSet":
        """The progression {start, start+step, ...} up to and including stop."""
        if step < 1:
            raise DevolvedError(f"step must be positive, got {step}")
        if start < 0:
            raise WindowError(f"progression start must be non-negative, got {start}")
        if limit is None:
            limit = max(stop, 0)
        if stop > limit:
            raise WindowError(f"progression end {stop} exceeds limit {limit}")
        if stop < start:
            return cls(0, limit)
        count = (stop - start) // step + 1
        return cls(_spread(1 << start, 0, step, count, _mask(limit)), limit)

    @classmethod
    def from_runs(cls, runs: Iterable[Sequence[int]], limit: int) -> "IntegerSet":
        """Union of progressions given as (a, b, step) triples; every run must fit in the window."""
        bits = 0
        for run in runs:
            if len(run) != 3:
                raise DevolvedError(f"run must be [a, b, step], got {list(run)}")
            a, b, step = (int(v) for v in run)
            bits |= cls.progression(a, b, step, limit=limit).bits
        return cls(bits, limit)

    # Basic protocol

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def limit(self) -> int:
        return self._limit

    def __contains__(self, m) -> bool:
        if not isinstance(m, (int, np.integer)) or m < 0 or m > self._limit:
            return False
        return bool((self._bits >> int(m)) & 1)

    def __len__(self) -> int:
        return _popcount(self._bits)

    def __bool__(self) -> bool:
        return self._bits != 0

    def __iter__(self) -> Iterator[int]:
        for m in self.members():
            yield int(m)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerSet):
            return NotImplemented
        return self._bits == other._bits and self._limit == other._limit

    def __hash__(self) -> int:
        return hash((self._bits, self._limit))

    def __repr__(self) -> str:
        n = len(self)
        if n <= 12:
            return f"IntegerSet({list(self)}, limit={self._limit})"
        return f"IntegerSet(<{n} members>, limit={self._limit})"

    def members(self) -> np.ndarray:
        """Members as an ascending int64 numpy array."""
        nbytes = self._limit // 8 + 1
        raw = np.frombuffer(self._bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        flags = np.unpackbits(raw, bitorder="little")[: self._limit + 1]
        return np.flatnonzero(flags).astype(np.int64)

    def min(self) -> int:
        if not self._bits:
            raise DevolvedError("min() of an empty set")
        return (self._bits & -self._bits).bit_length() - 1

    def max(self) -> int:
        if not self._bits:
            raise DevolvedError("max() of an empty set")
        return self._bits.bit_length() - 1

    # Set algebra

    def with_limit(self, limit: int) -> "IntegerSet":
        """Same members, different window; members above the new limit are dropped."""
        if limit < 0:
            raise WindowError(f"limit must be non-negative, got {limit}")
        return IntegerSet(self._bits & _mask(limit), limit)

    def restrict(self, lo: int, hi: int) -> "IntegerSet":
        """Members in [lo, hi], keeping this set's limit."""
        if lo > hi:
            return IntegerSet(0, self._limit)
        lo = max(lo, 0)
        hi = min(hi, self._limit)
        window = _mask(hi - lo) << lo if hi >= lo else 0
        return IntegerSet(self._bits & window, self._limit)

    def union(self, other: "IntegerSet") -> "IntegerSet":
        return IntegerSet(self._bits | other._bits, max(self._limit, other._limit))

    def difference(self, other: "IntegerSet") -> "IntegerSet":
        return IntegerSet(self._bits & ~other._bits, self._limit)

    def without(self, values: Iterable[int]) -> "IntegerSet":
        bits = self._bits
        for v in values:
            if 0 <= v <= self._limit:
                bits &= ~(1 << int(v))
        return IntegerSet(bits, self._limit)

    def issubset(self, other: "IntegerSet") -> bool:
        return self._bits & ~other._bits == 0

    __or__ = union
    __sub__ = difference

    def count_residue(self, c: int, d: int) -> int:
        """Number of members congruent to c modulo d."""
        members = self.members()
        return int(np.count_nonzero(members % d == c % d))

    # Run decomposition

    def runs(self) -> List[Run]:
        """
        Greedy decomposition into arithmetic progressions.

        Walks the sorted members and extends the current progression while the
        gap stays the same; a member that breaks the gap starts a new one.

        Returns:
            List of (a, b, step) triples, ascending, pairwise disjoint
        """
        if self._runs is None:
            self._runs = _greedy_runs(self.members())
        return list(self._runs)


def _greedy_runs(members: np.ndarray) -> List[Run]:
    n = len(members)
    if n == 0:
        return []
    if n == 1:
        return [(int(members[0]), int(members[0]), 1)]

    diffs = np.diff(members)
    # segment_end[i]: last index j >= i with diffs[j] == diffs[i] contiguously
    change = np.flatnonzero(diffs[1:] != diffs[:-1])
    ends = np.append(change, len(diffs) - 1)

    runs: List[Run] = []
    i = 0
    while i < n:
        if i == n - 1:
            runs.append((int(members[i]), int(members[i]), 1))
            break
        step = int(diffs[i])
        j = int(ends[np.searchsorted(ends, i)])
        runs.append((int(members[i]), int(members[j + 1]), step))
        i = j + 2
    return runs


def _spread(x: int, offset: int, step: int, count: int, mask: int) -> int:
    """OR of x << (offset + j*step) for 0 <= j < count, truncated to mask."""
    y = (x << offset) & mask
    if not y or count <= 0:
        return 0
    result = 0
    shift = 0
    block, width = y, 1
    while count:
        if count & 1:
            result |= (block << (shift * step)) & mask
            shift += width
        count >>= 1
        if not count:
            break
        block |= (block << (width * step)) & mask
        width *= 2
    return result


def _add_runs(x: int, runs: Sequence[Run], mask: int) -> int:
    acc = 0
    for a, b, step in runs:
        acc |= _spread(x, a, step, (b - a) // step + 1, mask)
    return acc


def _check_sumset_args(A: IntegerSet, h: int, limit: int) -> None:
    if h < 1:
        raise DevolvedError(f"h must be a positive integer, got {h}")
    if limit < 0:
        raise WindowError(f"limit must be non-negative, got {limit}")
    if 0 not in A:
        raise DevolvedError("A must contain 0")


def h_fold_sumset(A: IntegerSet, h: int, limit: int, settings: Optional["Settings"] = None) -> IntegerSet:
    """
    h-fold sumset of A truncated to [0, limit].

    Because 0 is in A this is the set of sums of at most h nonzero members,
    together with 0.

    Args:
        A: Set containing 0
        h: Number of summands (>= 1)
        limit: Window end of the result
        settings: Optional settings whose memory budget bounds `limit`

    Returns:
        IntegerSet with limit `limit`

    Raises:
        DevolvedError: If 0 is not in A or h < 1
        BudgetExceededError: If the window exceeds the memory budget
    """
    _check_sumset_args(A, h, limit)
    if settings is not None:
        settings.check_bits(limit + 1)

    mask = _mask(limit)
    base = A.with_limit(limit) if limit < A.limit else A
    runs = base.runs()
    result = base.bits & mask
    for _ in range(h - 1):
        result = _add_runs(result, runs, mask)
    return IntegerSet(result, limit)


def h_fold_sumset_naive(A: IntegerSet, h: int, limit: int) -> IntegerSet:
    """Reference sumset by enumerating all h-tuples. Small inputs only."""
    _check_sumset_args(A, h, limit)
    members = [m for m in A if m <= limit]
    sums = set()
    for combo in itertools.combinations_with_replacement(members, h):
        total = sum(combo)
        if total <= limit:
            sums.add(total)
    return IntegerSet.from_members(sums, limit=limit)


def is_basis_window(A: IntegerSet, h: int, lo: int, hi: int) -> bool:
    """
    Check that every integer in [lo, hi] is a sum of at most h nonzero members of A.

    This is the finite stand-in for "A is an asymptotic basis of order h whose
    exceptional set lies below lo".

    Raises:
        WindowError: If the window is inverted, negative or beyond A.limit
    """
    if lo < 0 or lo > hi:
        raise WindowError(f"invalid window [{lo}, {hi}]")
    if hi > A.limit:
        raise WindowError(f"window end {hi} exceeds truncation limit {A.limit}")
    sumset = h_fold_sumset(A, h, hi)
    window = _mask(hi - lo) << lo
    return sumset.bits & window == window


@dataclass(frozen=True)
class Representation:
    """
    A way of writing `target` as a sum of at most `size_bound` nonzero parts.

    Attributes:
        target: The represented number
        parts: Nonzero summands in non-increasing order (a multiset)
        size_bound: Largest number of parts allowed
    """
    target: int
    parts: Tuple[int, ...]
    size_bound: int

    def __post_init__(self):
        if sum(self.parts) != self.target:
            raise DevolvedError(f"parts {self.parts} do not sum to {self.target}")
        if len(self.parts) > self.size_bound:
            raise DevolvedError(f"{len(self.parts)} parts exceed size bound {self.size_bound}")
        if any(p <= 0 for p in self.parts):
            raise DevolvedError(f"parts must be positive, got {self.parts}")

    def uses_any(self, S: IntegerSet) -> bool:
        return any(p in S for p in self.parts)

    def __len__(self) -> int:
        return len(self.parts)


def _reachability(nonzero: IntegerSet, target: int, size_bound: int) -> List[int]:
    """reach[j] = bitset of numbers <= target that are sums of at most j parts."""
    mask = _mask(target)
    runs = nonzero.runs()
    reach = [1]
    for _ in range(size_bound):
        prev = reach[-1]
        reach.append(prev | _add_runs(prev, runs, mask))
    return reach


def iter_representations(A: IntegerSet, target: int, size_bound: int) -> Iterator[Representation]:
    """
    Lazily yield every multiset of at most size_bound nonzero members of A summing to target.

    Parts are chosen in non-increasing order; branches that cannot reach the
    remaining total with the parts left are pruned with precomputed sumsets.
    """
    if target < 0:
        raise WindowError(f"target must be non-negative, got {target}")
    if target > A.limit:
        raise WindowError(f"target {target} exceeds truncation limit {A.limit}")
    if size_bound < 1:
        raise DevolvedError(f"size_bound must be positive, got {size_bound}")

    nonzero = A.with_limit(target).without([0])
    reach = _reachability(nonzero, target, size_bound)
    if not (reach[size_bound] >> target) & 1:
        return

    candidates = [int(m) for m in nonzero.members()[::-1]]

    def walk(remaining: int, parts_left: int, start: int, parts: List[int]):
        if remaining == 0:
            yield Representation(target, tuple(parts), size_bound)
            return
        if parts_left == 0:
            return
        below = reach[parts_left - 1]
        for idx in range(start, len(candidates)):
            c = candidates[idx]
            if c > remaining:
                continue
            if (below >> (remaining - c)) & 1:
                parts.append(c)
                yield from walk(remaining - c, parts_left - 1, idx, parts)
                parts.pop()

    yield from walk(target, size_bound, 0, [])


def enumerate_representations(A: IntegerSet, target: int, size_bound: int) -> List[Representation]:
    """
    Complete, duplicate-free list of representations of target.

    Args:
        A: Underlying set (0 is ignored as a part)
        target: Number to represent (<= A.limit)
        size_bound: Largest number of parts

    Returns:
        List of Representation; [Representation(target=0, parts=())] for target 0,
        empty when target has no representation
    """
    return list(iter_representations(A, target, size_bound))
