# devolved/_core/construction.py

"""
Block plans of devolved bases.

A devolved basis of order h is built as alternating blocks
I_1, J_1, I_2, J_2, ... where I_n = [r_n, R_n] is an interval and J_n is the
progression [s_n, S_n] n (c_n + d_n Z). Each J_n serves the least triple
(c, d, t) not yet used whose modulus fits the preceding interval, so every
residue class is served infinitely often.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

from .errors import DevolvedError, WindowError
from .sets import IntegerSet

# R_1; the recipe is stated for this value only
FIRST_INTERVAL_END = 2


class Triple(NamedTuple):
    """A residue class c mod d together with a repetition index t."""
    c: int
    d: int
    t: int

    @property
    def weight(self) -> int:
        return self.d + self.t


def _weight_size(w: int) -> int:
    """Number of triples of weight w: sum of d for 2 <= d <= w - 1."""
    return (w - 1) * w // 2 - 1 if w >= 3 else 0


class TripleEnumerator:
    """
    Well-ordering of all triples (c, d, t) with t >= 1, d >= 2, 0 <= c < d.

    Triples are ordered by weight d + t, then d, then c. Every weight class
    is finite, so every triple has finitely many predecessors. The enumerator
    also remembers which triples have been consumed.
    """

    def __init__(self, consumed: Iterable[Triple] = ()):
        self._consumed: Set[Triple] = set()
        self._history: List[Triple] = []
        for triple in consumed:
            self.consume(Triple(*triple))

    @staticmethod
    def validate(triple: Triple) -> None:
        c, d, t = triple
        if t < 1 or d < 2 or not 0 <= c < d:
            raise DevolvedError(f"not a valid triple (c, d, t): {tuple(triple)}")

    @staticmethod
    def key(triple: Triple) -> Tuple[int, int, int]:
        return (triple.d + triple.t, triple.d, triple.c)

    @staticmethod
    def iter_order(max_d: Optional[int] = None) -> Iterator[Triple]:
        """All triples in order (infinite); with max_d, only those with d <= max_d."""
        w = 3
        while True:
            top = w - 1 if max_d is None else min(w - 1, max_d)
            for d in range(2, top + 1):
                t = w - d
                for c in range(d):
                    yield Triple(c, d, t)
            w += 1

    @staticmethod
    def rank(triple: Triple) -> int:
        """Number of predecessors of a triple."""
        TripleEnumerator.validate(triple)
        c, d, t = triple
        w = d + t
        before = sum(_weight_size(v) for v in range(3, w))
        return before + sum(range(2, d)) + c

    @property
    def consumed(self) -> frozenset:
        return frozenset(self._consumed)

    @property
    def history(self) -> Tuple[Triple, ...]:
        """Consumed triples in consumption order."""
        return tuple(self._history)

    def consume(self, triple: Triple) -> None:
        self.validate(triple)
        if triple in self._consumed:
            raise DevolvedError(f"triple {tuple(triple)} was already consumed")
        self._consumed.add(triple)
        self._history.append(triple)

    def peek(self, max_d: int) -> Triple:
        """Least unconsumed triple with d <= max_d."""
        if max_d < 2:
            raise DevolvedError(f"no admissible triple: modulus bound {max_d} < 2")
        for triple in self.iter_order(max_d):
            if triple not in self._consumed:
                return triple
        raise AssertionError("unreachable: the order is infinite")

    def take(self, max_d: int) -> Triple:
        triple = self.peek(max_d)
        self.consume(triple)
        return triple

    def copy(self) -> "TripleEnumerator":
        return TripleEnumerator(self._history)


class BlockKind(Enum):
    INTERVAL = "I"
    PROGRESSION = "J"


@dataclass(frozen=True)
class Block:
    """
    One piece of the construction.

    Intervals use lo = r_n, hi = R_n. Progressions use lo = s_n, hi = S_n and
    carry c_n, d_n, q_n and the triple that scheduled them.
    """
    index: int
    kind: BlockKind
    lo: int
    hi: int
    c: Optional[int] = None
    d: Optional[int] = None
    q: Optional[int] = None
    triple: Optional[Triple] = None

    @classmethod
    def interval(cls, index: int, r: int, R: int) -> "Block":
        return cls(index=index, kind=BlockKind.INTERVAL, lo=r, hi=R)

    @classmethod
    def progression(cls, index: int, s: int, S: int, c: int, d: int, q: int, triple: Triple) -> "Block":
        return cls(index=index, kind=BlockKind.PROGRESSION, lo=s, hi=S, c=c, d=d, q=q, triple=Triple(*triple))

    @property
    def is_interval(self) -> bool:
        return self.kind is BlockKind.INTERVAL

    @property
    def step(self) -> int:
        return 1 if self.is_interval else self.d

    @property
    def size(self) -> int:
        return (self.hi - self.lo) // self.step + 1

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi and (x - self.lo) % self.step == 0

    def last_at_most(self, limit: int) -> Optional[int]:
        """Largest member <= limit, or None."""
        if limit < self.lo:
            return None
        top = min(limit, self.hi)
        return self.lo + (top - self.lo) // self.step * self.step

    def as_set(self, limit: Optional[int] = None) -> IntegerSet:
        limit = self.hi if limit is None else limit
        top = self.last_at_most(limit)
        if top is None:
            return IntegerSet.empty(limit)
        return IntegerSet.progression(self.lo, top, self.step, limit=limit)

    def violations(self, h: int, previous: Optional["Block"] = None) -> List[str]:
        """Structural problems with this block (empty when it is well formed)."""
        name = f"{self.kind.value}_{self.index}"
        found: List[str] = []
        if self.is_interval:
            if not self.lo <= self.hi:
                found.append(f"{name}: r > R")
            return found
        c, d, q = self.c, self.d, self.q
        if d is None or c is None or q is None or self.triple is None:
            return [f"{name}: progression without c, d, q and triple"]
        if d < 2 or not 0 <= c < d:
            found.append(f"{name}: bad residue class c={c} mod d={d}")
            return found
        if self.triple.c != c or self.triple.d != d:
            found.append(f"{name}: triple {tuple(self.triple)} does not match c={c}, d={d}")
        if self.lo % d != c or self.hi % d != c:
            found.append(f"{name}: endpoints not congruent to {c} mod {d}")
        if not self.lo < self.hi:
            found.append(f"{name}: s >= S")
        if q != h + self.index:
            found.append(f"{name}: q={q} but h+n={h + self.index}")
        if not self.hi > q * self.lo:
            found.append(f"{name}: S={self.hi} is not above q*s={q * self.lo}")
        if previous is not None and previous.is_interval:
            bound = (h - 1) * (previous.hi - previous.lo) + 1
            if d > bound:
                found.append(f"{name}: d={d} exceeds (h-1)(R-r)+1={bound}")
        return found

    def to_dict(self) -> Dict[str, Any]:
        if self.is_interval:
            return {"kind": "I", "r": self.lo, "R": self.hi}
        return {
            "kind": "J",
            "s": self.lo,
            "S": self.hi,
            "c": self.c,
            "d": self.d,
            "q": self.q,
            "t": self.triple.t,
        }


def _least_above(x: int, c: int, d: int) -> int:
    """Least integer > x congruent to c mod d."""
    return x + 1 + (c - (x + 1)) % d


class BlockPlan:
    """
    The alternating block list of a devolved basis of order h.

    Plans are values: next_block returns a new plan and leaves this one as it was.

    Attributes:
        h (int): Order of the basis (>= 2)
        blocks (Tuple[Block, ...]): I_1, J_1, I_2, ... ending with an interval
                                    when freshly generated
        enumerator (TripleEnumerator): Consumed-triple state
    """

    def __init__(self, h: int, blocks: Sequence[Block], enumerator: Optional[TripleEnumerator] = None):
        if h < 2:
            raise DevolvedError(f"devolved bases are built for h >= 2, got h={h}")
        self.h = h
        self.blocks: Tuple[Block, ...] = tuple(blocks)
        if enumerator is None:
            enumerator = TripleEnumerator(b.triple for b in self.blocks if not b.is_interval)
        self.enumerator = enumerator

    def __repr__(self) -> str:
        return f"BlockPlan(h={self.h}, intervals={self.n_intervals}, progressions={self.n_progressions})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlockPlan):
            return NotImplemented
        return self.h == other.h and self.blocks == other.blocks

    @property
    def intervals(self) -> List[Block]:
        return [b for b in self.blocks if b.is_interval]

    @property
    def progressions(self) -> List[Block]:
        return [b for b in self.blocks if not b.is_interval]

    @property
    def n_intervals(self) -> int:
        return sum(1 for b in self.blocks if b.is_interval)

    @property
    def n_progressions(self) -> int:
        return len(self.blocks) - self.n_intervals

    def interval(self, n: int) -> Block:
        """I_n, 1-based."""
        blocks = self.intervals
        if not 1 <= n <= len(blocks):
            raise WindowError(f"plan has {len(blocks)} interval(s); I_{n} does not exist yet")
        return blocks[n - 1]

    def progression(self, n: int) -> Block:
        """J_n, 1-based."""
        blocks = self.progressions
        if not 1 <= n <= len(blocks):
            raise WindowError(f"plan has {len(blocks)} progression(s); J_{n} does not exist yet")
        return blocks[n - 1]

    @property
    def coverage(self) -> int:
        """Largest integer whose membership the plan determines."""
        return self.blocks[-1].hi

    def violations(self) -> List[str]:
        """Every broken structural invariant of the plan and its blocks."""
        found: List[str] = []
        if not self.blocks:
            return ["plan has no blocks"]
        first = self.blocks[0]
        if not first.is_interval or first.lo != 0:
            found.append("plan must start with I_1 = [0, R_1]")
        previous: Optional[Block] = None
        for position, block in enumerate(self.blocks):
            expected_kind = BlockKind.INTERVAL if position % 2 == 0 else BlockKind.PROGRESSION
            expected_index = position // 2 + 1
            if block.kind is not expected_kind or block.index != expected_index:
                found.append(
                    f"block {position}: expected {expected_kind.value}_{expected_index}, "
                    f"got {block.kind.value}_{block.index}"
                )
            found.extend(block.violations(self.h, previous))
            if previous is not None:
                if not previous.hi < block.lo:
                    found.append(f"{block.kind.value}_{block.index}: blocks out of order or overlapping")
                if block.is_interval and block.index > 1:
                    if block.lo != previous.hi + 1:
                        found.append(f"I_{block.index}: r != S_(n-1) + 1")
                    if block.hi != self.h * block.lo:
                        found.append(f"I_{block.index}: R != h*r")
            previous = block
        return found

    def check(self) -> "BlockPlan":
        """Raise DevolvedError if any structural invariant fails."""
        found = self.violations()
        if found:
            raise DevolvedError("invalid block plan: " + "; ".join(found))
        return self

    def next_block(self) -> "BlockPlan":
        return next_block(self)

    def extend(self, steps: int) -> "BlockPlan":
        """Apply next_block `steps` times."""
        plan = self
        for _ in range(steps):
            plan = next_block(plan)
        return plan

    def extend_to_coverage(self, limit: int) -> "BlockPlan":
        plan = self
        while plan.coverage < limit:
            plan = next_block(plan)
        return plan

    def prefix_set(self, n: int) -> IntegerSet:
        """A_n = I_1 u ... u I_n u J_1 u ... u J_(n-1), with limit R_n."""
        R = self.interval(n).hi
        return materialize(self, R)

    def materialize(self, limit: int) -> IntegerSet:
        return materialize(self, limit)

    def to_dict(self) -> Dict[str, Any]:
        return {"h": self.h, "blocks": [b.to_dict() for b in self.blocks]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BlockPlan":
        """Rebuild a plan from its JSON form; invariants are re-checked."""
        h = int(data["h"])
        blocks: List[Block] = []
        n_i = n_j = 0
        for raw in data["blocks"]:
            kind = raw["kind"]
            if kind == "I":
                n_i += 1
                blocks.append(Block.interval(n_i, int(raw["r"]), int(raw["R"])))
            elif kind == "J":
                n_j += 1
                c, d = int(raw["c"]), int(raw["d"])
                blocks.append(
                    Block.progression(
                        n_j, int(raw["s"]), int(raw["S"]), c, d, int(raw["q"]), Triple(c, d, int(raw["t"]))
                    )
                )
            else:
                raise DevolvedError(f"unknown block kind {kind!r}")
        return cls(h, blocks).check()


def new_plan(h: int) -> BlockPlan:
    """
    Seed a plan with I_1 = [0, 2] and nothing consumed.

    Raises:
        DevolvedError: If h < 2
    """
    if isinstance(h, bool) or not isinstance(h, int):
        raise DevolvedError(f"h must be an integer, got {h!r}")
    return BlockPlan(h, [Block.interval(1, 0, FIRST_INTERVAL_END)], TripleEnumerator())


def next_block(plan: BlockPlan) -> BlockPlan:
    """
    Extend a plan ending in I_n by J_n and I_(n+1).

    J_n serves the least unconsumed triple with d <= (h-1)(R_n - r_n) + 1;
    s_n is the least number above R_n in the class, S_n the least above
    q_n * s_n with q_n = h + n, and I_(n+1) = [S_n + 1, h(S_n + 1)].
    """
    last = plan.blocks[-1]
    if not last.is_interval:
        raise DevolvedError("next_block needs a plan that ends with an interval")
    h, n = plan.h, last.index
    r, R = last.lo, last.hi

    enumerator = plan.enumerator.copy()
    triple = enumerator.take((h - 1) * (R - r) + 1)
    c, d = triple.c, triple.d
    q = h + n
    s = _least_above(R, c, d)
    S = _least_above(q * s, c, d)
    r_next = S + 1

    blocks = plan.blocks + (
        Block.progression(n, s, S, c, d, q, triple),
        Block.interval(n + 1, r_next, h * r_next),
    )
    extended = BlockPlan(h, blocks, enumerator)
    found = extended.violations()
    if found:
        raise AssertionError("construction produced an invalid plan: " + "; ".join(found))
    return extended


def materialize(plan: BlockPlan, limit: int) -> IntegerSet:
    """
    The union of all block members in [0, limit].

    Raises:
        WindowError: If limit is negative or beyond the plan's coverage
    """
    if limit < 0:
        raise WindowError(f"limit must be non-negative, got {limit}")
    if limit > plan.coverage:
        raise WindowError(
            f"plan covers [0, {plan.coverage}] but {limit} was requested; "
            f"call next_block until the coverage reaches the limit"
        )
    bits = 0
    previous_hi = -1
    for block in plan.blocks:
        if block.lo <= previous_hi:
            raise DevolvedError(f"block {block.kind.value}_{block.index} overlaps its predecessor")
        previous_hi = block.hi
        if block.lo > limit:
            break
        bits |= block.as_set(limit).bits
    return IntegerSet(bits, limit)
