# devolved/_core/claims.py

"""
Finite verification of a block plan.

Claim 1: the prefix A_n = I_1 u ... u I_n u J_1 u ... u J_(n-1) has
hA_n = [0, h R_n]. Claim 2: every representation of S_n by at most h+n
nonzero members uses an element of J_n. Also the bounded form of the
"every residue class is served infinitely often" property, and a spot
check that removing finitely many members leaves every requested class
populated.
"""

import warnings
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from devolved._config import Settings
from devolved.observability import SpanType, get_tracer

from .construction import BlockPlan, materialize, next_block
from .errors import DevolvedError, ResidueError, WindowError
from .sets import IntegerSet, _mask, h_fold_sumset, iter_representations


@dataclass(frozen=True)
class ClaimResult:
    """
    Outcome of one claim check.

    Attributes:
        claim: 1 or 2
        n: Block index checked
        holds: Whether the claim holds at n
        window: Largest integer the check looked at (h R_n or S_n)
    """
    claim: int
    n: int
    holds: bool
    window: int

    def to_dict(self) -> Dict[str, Any]:
        return {"claim": self.claim, "n": self.n, "holds": self.holds, "window": self.window}


def _settings(settings: Optional[Settings]) -> Settings:
    return settings if settings is not None else Settings()


def verify_claim1(plan: BlockPlan, n: int, settings: Optional[Settings] = None) -> bool:
    """
    Check hA_n == [0, h R_n] exactly.

    Args:
        plan: Block plan with at least n intervals
        n: Interval index (1-based)
        settings: Memory budget for the sumset window

    Returns:
        True iff the sumset fills the whole window

    Raises:
        WindowError: If the plan has fewer than n intervals
        BudgetExceededError: If h R_n + 1 bits exceed the budget
    """
    settings = _settings(settings)
    h = plan.h
    window = h * plan.interval(n).hi
    settings.check_bits(window + 1)

    with get_tracer().trace_step(SpanType.CLAIM_CHECK, f"claim 1, n={n}") as span:
        sums = h_fold_sumset(plan.prefix_set(n), h, window, settings)
        holds = sums.bits == _mask(window)
        if span:
            span.set_window(h=h, window=window, block_index=n).set_verdict(holds)
    return holds


def verify_claim2(
    plan: BlockPlan,
    n: int,
    settings: Optional[Settings] = None,
    exhaustive: bool = False,
) -> bool:
    """
    Check that every representation of S_n with at most h+n parts hits J_n.

    Members above S_n cannot be parts, so the truncation at S_n is exact. The
    default search looks for a representation that avoids J_n altogether
    (over the materialized set minus J_n) and succeeds when none exists. With
    exhaustive=True every representation over the full truncation is listed
    and inspected instead; use it for small n only.

    Raises:
        WindowError: If J_n is not in the plan yet
        BudgetExceededError: If S_n + 1 bits exceed the budget
    """
    settings = _settings(settings)
    h = plan.h
    J = plan.progression(n)
    target = J.hi
    size_bound = h + n
    settings.check_bits(target + 1)

    with get_tracer().trace_step(SpanType.CLAIM_CHECK, f"claim 2, n={n}") as span:
        A = materialize(plan, target)
        J_set = J.as_set(target)
        if exhaustive:
            holds = all(rep.uses_any(J_set) for rep in iter_representations(A, target, size_bound))
        else:
            avoiding = iter_representations(A.difference(J_set), target, size_bound)
            holds = next(avoiding, None) is None
        if span:
            span.set_window(h=h, window=target, block_index=n).set_verdict(holds)
            span.add_metadata("exhaustive", exhaustive)
    return holds


def verify_claim1_range(
    plan: BlockPlan,
    upto: Optional[int] = None,
    max_window: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> List[ClaimResult]:
    """
    Run verify_claim1 for n = 1, 2, ...

    Stops after `upto` (default: every interval in the plan) or before the
    first n whose window h R_n exceeds `max_window`.
    """
    last = plan.n_intervals if upto is None else upto
    results: List[ClaimResult] = []
    for n in range(1, last + 1):
        window = plan.h * plan.interval(n).hi
        if max_window is not None and window > max_window:
            break
        results.append(ClaimResult(1, n, verify_claim1(plan, n, settings), window))
    return results


def verify_claim2_range(
    plan: BlockPlan,
    upto: Optional[int] = None,
    max_window: Optional[int] = None,
    settings: Optional[Settings] = None,
    exhaustive: bool = False,
) -> List[ClaimResult]:
    """
    Run verify_claim2 for n = 1 .. upto (default: every progression in the plan).

    Stops before the first n whose target S_n exceeds `max_window`.
    """
    last = plan.n_progressions if upto is None else upto
    results: List[ClaimResult] = []
    for n in range(1, last + 1):
        window = plan.progression(n).hi
        if max_window is not None and window > max_window:
            break
        results.append(ClaimResult(2, n, verify_claim2(plan, n, settings, exhaustive=exhaustive), window))
    return results


def _check_residue(c: int, d: int) -> None:
    if d < 2:
        raise DevolvedError(f"modulus must be at least 2, got {d}")
    if not 0 <= c < d:
        raise ResidueError(c, d)


@dataclass(frozen=True)
class E4Result:
    """
    Outcome of a bounded search for progressions inside c + dZ.

    Attributes:
        c, d: The requested class
        m: Hits required
        hits: Indices n with d | d_n and c_n = c mod d
        blocks_scanned: Progressions inspected
        conclusive: True when m hits were found; False means the budget ran out
        plan: The plan as extended by the search
    """
    c: int
    d: int
    m: int
    hits: Tuple[int, ...]
    blocks_scanned: int
    conclusive: bool
    plan: BlockPlan

    @property
    def found(self) -> bool:
        return len(self.hits) >= self.m

    def __bool__(self) -> bool:
        return self.found

    def to_dict(self) -> Dict[str, Any]:
        return {
            "c": self.c,
            "d": self.d,
            "m": self.m,
            "found": self.found,
            "hits": list(self.hits),
            "blocks_scanned": self.blocks_scanned,
            "conclusive": self.conclusive,
        }


def verify_E4_bounded(plan: BlockPlan, c: int, d: int, m: int, max_blocks: int) -> E4Result:
    """
    Look for m progression blocks J_n contained in c + dZ among the first max_blocks.

    J_n lies in c + dZ whenever d divides d_n and c_n = c (mod d). The plan is
    extended as needed. Running out of blocks is not a structural failure: the
    result is marked inconclusive and a warning is issued.

    Raises:
        ResidueError: If c is outside [0, d)
        DevolvedError: If d < 2, m < 1 or max_blocks < 1
    """
    _check_residue(c, d)
    if m < 1 or max_blocks < 1:
        raise DevolvedError(f"m and max_blocks must be positive, got m={m}, max_blocks={max_blocks}")

    hits: List[int] = []
    scanned = 0
    current = plan
    with get_tracer().trace_step(SpanType.PLAN_GENERATION, f"E4 search {c} mod {d}") as span:
        for n in range(1, max_blocks + 1):
            while current.n_progressions < n:
                current = next_block(current)
            J = current.progression(n)
            scanned = n
            if J.d % d == 0 and J.c % d == c:
                hits.append(n)
                if len(hits) >= m:
                    break
        conclusive = len(hits) >= m
        if span:
            span.set_window(h=plan.h, block_index=scanned).set_verdict(conclusive)

    if not conclusive:
        warnings.warn(
            f"inconclusive: only {len(hits)} of {m} progression(s) inside {c} + {d}Z "
            f"within {max_blocks} blocks",
            UserWarning,
        )
    return E4Result(c=c, d=d, m=m, hits=tuple(hits), blocks_scanned=scanned, conclusive=conclusive, plan=current)


def devolved_spot_check(
    plan: BlockPlan,
    removals: Union[IntegerSet, Iterable[int]],
    probes: Sequence[Tuple[int, int]],
    m: int,
    limit: int,
) -> bool:
    """
    Finite spot check of the devolved property.

    Removes a finite set from the truncation at `limit` and checks that each
    requested class c mod d still has at least m members.

    Raises:
        WindowError: If limit exceeds the plan's coverage
        ResidueError: If a requested class has c outside [0, d)
    """
    if limit > plan.coverage:
        raise WindowError(f"limit {limit} exceeds plan coverage {plan.coverage}")
    for c, d in probes:
        _check_residue(c, d)

    remaining = materialize(plan, limit)
    if isinstance(removals, IntegerSet):
        remaining = remaining.difference(removals.with_limit(min(removals.limit, limit)))
    else:
        remaining = remaining.without(removals)
    return all(remaining.count_residue(c, d) >= m for c, d in probes)
