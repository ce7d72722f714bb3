# devolved/observability/__init__.py

"""
Tracing of CLI runs and verification campaigns.

Records timing, window sizes and verdicts of sumsets, claim checks,
enumerations and bound scans. Tracing is off until configured.

Usage:
    from devolved.observability import enable_tracing, get_tracer

    tracer = enable_tracing()
    with tracer.trace_run("verify", {"upto": 4}):
        verify_claim1_range(plan, upto=4)
    tracer.print_traces()
"""

# Core classes
from .span import Span, SpanType, SpanStatus
from .trace import Trace, TraceStatus
from .tracer import Tracer, TracerContext, get_tracer, set_tracer, configure_tracing, enable_tracing

# Storage
from .store import (
    TracingStore,
    InMemoryTracingStore,
    FileTracingStore,
)

# Formatters
from .formatters import (
    TerminalFormatter,
    JSONFormatter,
    format_trace,
)


__all__ = [
    # Core
    "Span",
    "SpanType",
    "SpanStatus",
    "Trace",
    "TraceStatus",
    "Tracer",
    "TracerContext",
    "get_tracer",
    "set_tracer",
    "configure_tracing",
    "enable_tracing",

    # Storage
    "TracingStore",
    "InMemoryTracingStore",
    "FileTracingStore",

    # Formatters
    "TerminalFormatter",
    "JSONFormatter",
    "format_trace",
]
