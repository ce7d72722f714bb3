"""
Settings module for devolved.

Provides the Settings dataclass, filled from the environment (and a local
.env file when present).
"""

import os
from dataclasses import dataclass
from typing import Mapping, Optional

from dotenv import load_dotenv

MEMORY_BUDGET_ENV = "DEVOLVED_MEMORY_BUDGET_BITS"
TRACE_DIR_ENV = "DEVOLVED_TRACE_DIR"
TRACING_ENV = "DEVOLVED_TRACING"

DEFAULT_MEMORY_BUDGET_BITS = 2 ** 31

_TRUTHY = {"1", "true", "yes", "on"}


@dataclass
class Settings:
    """
    Runtime settings shared by the verifiers and the CLI.

    Examples:
        # Defaults
        settings = Settings()

        # Read DEVOLVED_* variables (after loading .env)
        settings = Settings.from_env()

        # Tight budget for a quick run
        settings = Settings(memory_budget_bits=1 << 24)
    """
    memory_budget_bits: int = DEFAULT_MEMORY_BUDGET_BITS
    trace_dir: Optional[str] = None
    tracing: bool = False

    def __post_init__(self):
        """Validate configuration after initialization."""
        if isinstance(self.memory_budget_bits, bool) or not isinstance(self.memory_budget_bits, int):
            raise ValueError(
                f"memory_budget_bits must be an integer, got {type(self.memory_budget_bits).__name__}"
            )
        if self.memory_budget_bits < 1:
            raise ValueError(f"memory_budget_bits must be positive, got {self.memory_budget_bits}")

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """
        Build settings from environment variables.

        Args:
            environ: Mapping to read instead of os.environ (the .env file is
                     only loaded when reading the real environment)

        Returns:
            Settings instance
        """
        if environ is None:
            load_dotenv()
            environ = os.environ

        kwargs = {}
        raw_budget = environ.get(MEMORY_BUDGET_ENV)
        if raw_budget:
            try:
                kwargs["memory_budget_bits"] = int(raw_budget.replace("_", ""), 0)
            except ValueError:
                raise ValueError(f"{MEMORY_BUDGET_ENV} must be an integer, got '{raw_budget}'")

        trace_dir = environ.get(TRACE_DIR_ENV)
        if trace_dir:
            kwargs["trace_dir"] = trace_dir

        tracing = environ.get(TRACING_ENV)
        if tracing is not None:
            kwargs["tracing"] = tracing.strip().lower() in _TRUTHY

        return cls(**kwargs)

    def check_bits(self, bits: int) -> None:
        """Raise BudgetExceededError if a bitset of `bits` bits is over budget."""
        from devolved._core.errors import BudgetExceededError

        if bits > self.memory_budget_bits:
            raise BudgetExceededError(bits, self.memory_budget_bits)
