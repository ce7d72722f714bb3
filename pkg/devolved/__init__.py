# devolved/__init__.py

from typing import Iterable, Optional, Sequence

from ._core.errors import (
    DevolvedError,
    WindowError,
    GapUndefinedError,
    SubsetError,
    ResidueError,
    BudgetExceededError,
    SetFormatError,
)
from ._core.sets import (
    IntegerSet,
    Representation,
    h_fold_sumset,
    h_fold_sumset_naive,
    is_basis_window,
    iter_representations,
    enumerate_representations,
)
from ._core.essentiality import (
    GapParams,
    EssentialityReport,
    progression_gap,
    asymptotic_gap,
    is_essential_subset,
    enumerate_essential_subsets,
    pairwise_coprime,
    covers_residues,
    union_size_within_bound,
    gap_product,
)
from ._core.primes import PrimeCache, get_prime_cache, primes_upto
from ._core.bounds import (
    BoundResult,
    ProbeMode,
    ProbeRow,
    primorial,
    log_primorial,
    phi_bound,
    primorial_growth_ratio,
    second_order_ratio,
    asymptotic_probe,
    probe_to_tsv,
)
from ._core.construction import (
    Triple,
    TripleEnumerator,
    BlockKind,
    Block,
    BlockPlan,
    new_plan,
    next_block,
    materialize,
)
from ._core.claims import (
    ClaimResult,
    E4Result,
    verify_claim1,
    verify_claim2,
    verify_claim1_range,
    verify_claim2_range,
    verify_E4_bounded,
    devolved_spot_check,
)
from ._config import Settings

# Define what gets imported with "from devolved import *"
__all__ = [
    'create_set',
    'create_plan',
    'create_gap_params',
    # Errors
    'DevolvedError',
    'WindowError',
    'GapUndefinedError',
    'SubsetError',
    'ResidueError',
    'BudgetExceededError',
    'SetFormatError',
    # Sets
    'IntegerSet',
    'Representation',
    'h_fold_sumset',
    'h_fold_sumset_naive',
    'is_basis_window',
    'iter_representations',
    'enumerate_representations',
    # Essentiality
    'GapParams',
    'EssentialityReport',
    'progression_gap',
    'asymptotic_gap',
    'is_essential_subset',
    'enumerate_essential_subsets',
    'pairwise_coprime',
    'covers_residues',
    'union_size_within_bound',
    'gap_product',
    # Bounds
    'PrimeCache',
    'get_prime_cache',
    'primes_upto',
    'BoundResult',
    'ProbeMode',
    'ProbeRow',
    'primorial',
    'log_primorial',
    'phi_bound',
    'primorial_growth_ratio',
    'second_order_ratio',
    'asymptotic_probe',
    'probe_to_tsv',
    # Construction
    'Triple',
    'TripleEnumerator',
    'BlockKind',
    'Block',
    'BlockPlan',
    'new_plan',
    'next_block',
    'materialize',
    'ClaimResult',
    'E4Result',
    'verify_claim1',
    'verify_claim2',
    'verify_claim1_range',
    'verify_claim2_range',
    'verify_E4_bounded',
    'devolved_spot_check',
    # Config
    'Settings',
]


def create_set(
    members: Optional[Iterable[int]] = None,
    limit: Optional[int] = None,
    runs: Optional[Iterable[Sequence[int]]] = None,
) -> IntegerSet:
    """
    Create a truncated set from members, runs, or both.

    Args:
        members: Explicit members
        limit: Window end (default: largest member or run end)
        runs: (a, b, step) progressions to include

    Returns:
        IntegerSet

    Examples:
        # 3N_0 u {1} up to 99
        A = create_set([1], limit=99, runs=[(0, 99, 3)])

        # Just a few members
        A = create_set([0, 1, 3])
    """
    members = [int(m) for m in (members or [])]
    runs = [tuple(int(v) for v in run) for run in (runs or [])]
    if limit is None:
        ends = members + [run[1] for run in runs]
        limit = max(ends) if ends else 0
    result = IntegerSet.from_members(members, limit=limit)
    if runs:
        result = result | IntegerSet.from_runs(runs, limit)
    return result


def create_plan(h: int, blocks: int = 0) -> BlockPlan:
    """
    Create the block plan of a devolved basis of order h.

    Args:
        h: Order (>= 2)
        blocks: Number of progression blocks to generate after I_1

    Returns:
        BlockPlan ending with the interval I_(blocks+1)

    Example:
        plan = create_plan(2, blocks=3)
        plan.progression(1)   # J_1 = {4, 6, ..., 14}
    """
    return new_plan(h).extend(blocks)


def create_gap_params(
    tail_cutoff: int = 0,
    head_bound: Optional[int] = None,
    prime_bound: Optional[int] = None,
) -> GapParams:
    """Create GapParams; see GapParams for the meaning of each field."""
    return GapParams(tail_cutoff=tail_cutoff, head_bound=head_bound, prime_bound=prime_bound)
