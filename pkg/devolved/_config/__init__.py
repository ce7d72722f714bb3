"""
Configuration module for devolved.

Provides configuration classes for the verifiers and the CLI.
"""

from .settings import Settings, MEMORY_BUDGET_ENV, TRACE_DIR_ENV, TRACING_ENV

__all__ = ['Settings', 'MEMORY_BUDGET_ENV', 'TRACE_DIR_ENV', 'TRACING_ENV']
