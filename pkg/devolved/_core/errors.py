# devolved/_core/errors.py

"""
Exception hierarchy for devolved.

Every precondition failure raised by the library derives from DevolvedError,
which is itself a ValueError so callers that only care about "bad input" can
catch the builtin.
"""

from typing import Optional


class DevolvedError(ValueError):
    """Base class for all devolved errors."""
    pass


class WindowError(DevolvedError):
    """A window is negative, inverted, exceeds a truncation limit or plan coverage."""
    pass


class GapUndefinedError(DevolvedError):
    """Fewer than two elements remain above the tail cutoff."""

    def __init__(self, count: int, cutoff: int):
        self.count = count
        self.cutoff = cutoff
        super().__init__(
            f"gap undefined on near-empty tail: {count} element(s) >= cutoff {cutoff}"
        )


class SubsetError(DevolvedError):
    """A candidate subset is not contained in the set it is removed from."""
    pass


class ResidueError(DevolvedError):
    """A residue lies outside [0, modulus)."""

    def __init__(self, residue: int, modulus: int):
        self.residue = residue
        self.modulus = modulus
        super().__init__(f"residue out of range: c={residue} is not in [0, {modulus})")


class BudgetExceededError(DevolvedError):
    """A bitset would exceed the configured memory budget."""

    def __init__(self, bits: int, budget: int):
        self.bits = bits
        self.budget = budget
        super().__init__(
            f"window of {bits} bits exceeds the memory budget of {budget} bits "
            f"(raise DEVOLVED_MEMORY_BUDGET_BITS to allow it)"
        )


class SetFormatError(DevolvedError):
    """A set or plan file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, source: Optional[str] = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"line {line}: "
        elif where:
            where += " "
        super().__init__(f"{where}{message}")
