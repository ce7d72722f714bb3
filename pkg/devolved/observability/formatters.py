# devolved/observability/formatters.py

"""Formatters for displaying traces in various formats.
"""

from .trace import Trace
from .span import Span

class TerminalFormatter:
    """Formats traces for terminal output with colors.
    """
    # ANSI color codes
    RESET = "\033[0m"
    BOLD = "\033[1m"
    DIM = "\033[2m"

    # Colors
    GREEN = "\033[32m"
    RED = "\033[31m"
    YELLOW = "\033[33m"
    BLUE = "\033[34m"
    CYAN = "\033[36m"

    def __init__(self, use_colors: bool = True):
        """Initialize formatter

        Args:
            use_colors (bool, optional): Whether to use ANSI colors. Defaults to True.
        """
        self.use_colors = use_colors

    def format(self, trace: Trace) -> str:
        """Format a trace for terminal output.

        Args:
            trace (Trace): The trace to format.

        Returns:
            str: The formatted trace string.
        """
        rule = self._color("-" * 80, self.CYAN)
        lines = [rule, self._format_header(trace), rule]

        if trace.error_message:
            lines.append(f"{self._color('Error:', self.RED)} {trace.error_type}: {trace.error_message}")

        if trace.spans:
            lines.append(self._bold("Steps:"))
            for span in trace.spans:
                if span.parent_id is None:
                    lines.extend(self._format_span(span, trace, indent=1))

        lines.append(rule)
        lines.append(self._format_metrics(trace))
        lines.append(rule)

        return "\n".join(lines)

    def _format_header(self, trace: Trace) -> str:
        """Format the header of the trace."""
        lines = []
        lines.append(f"{self._bold('Trace:')} {trace.trace_id[:16]}...")
        lines.append(f"Command: {self._color(trace.command, self.BLUE)}")
        lines.append(f"Status: {self._color_status(trace.status.value)}")

        if trace.duration:
            lines.append(f"Duration: {self._color(f'{trace.duration:.3f}s', self.CYAN)}")

        if trace.arguments:
            args = ", ".join(f"{k}={v}" for k, v in sorted(trace.arguments.items()))
            lines.append(f"Arguments: {self._dim(self._truncate(args, 100))}")

        return "\n".join(lines)

    def _format_span(self, span: Span, trace: Trace, indent: int = 0):
        """Format a span with its children."""
        prefix = "  " * indent
        duration = f"{span.duration:.3f}s" if span.duration else "running"
        verdict = ""
        if span.verdict is not None:
            verdict = " " + (self._color("ok", self.GREEN) if span.verdict else self._color("FAILED", self.RED))

        lines = [f"{prefix}{self._bold(span.name)} ({self._color(duration, self.CYAN)}){verdict}"]

        details = []
        if span.h is not None:
            details.append(f"h={span.h}")
        if span.window is not None:
            details.append(f"window={span.window:,}")
        if span.block_index is not None:
            details.append(f"n={span.block_index}")
        if details:
            lines.append(f"{prefix}  {self._dim(', '.join(details))}")
        if span.error_message:
            lines.append(f"{prefix}  {self._color('Error:', self.RED)} {span.error_message}")

        for child in trace.get_child_spans(span.span_id):
            lines.extend(self._format_span(child, trace, indent + 1))
        return lines

    def _format_metrics(self, trace: Trace) -> str:
        """Format aggregate metrics."""
        metrics = [
            f"Checks: {self._color(str(trace.checks_count), self.BLUE)}",
            f"Failed: {self._color(str(trace.failed_checks_count), self.RED if trace.failed_checks_count else self.GREEN)}",
            f"Largest window: {self._color(f'{trace.largest_window:,}', self.CYAN)}",
            f"Total Spans: {self._color(str(len(trace.spans)), self.CYAN)}",
        ]
        return "  |  ".join(metrics)

    def _color_status(self, status_val: str) -> str:
        """Color text based on status."""
        if status_val == "success":
            return self._color(status_val, self.GREEN)
        elif status_val in ("error", "failed"):
            return self._color(status_val, self.RED)
        elif status_val == "running":
            return self._color(status_val, self.YELLOW)
        return status_val

    def _color(self, text: str, color: str) -> str:
        """Apply color to text."""
        if not self.use_colors:
            return text
        return f"{color}{text}{self.RESET}"

    def _bold(self, text: str) -> str:
        """Make text bold."""
        if not self.use_colors:
            return text
        return f"{self.BOLD}{text}{self.RESET}"

    def _dim(self, text: str) -> str:
        """Make text dim."""
        if not self.use_colors:
            return text
        return f"{self.DIM}{text}{self.RESET}"

    def _truncate(self, text: str, max_length: int) -> str:
        """Truncate text to max length."""
        if len(text) <= max_length:
            return text
        return text[:max_length - 3] + "..."


class JSONFormatter:
    """
    Formats traces as JSON.
    """

    def __init__(self, indent: int = 2):
        """
        Initialize formatter.

        Args:
            indent: JSON indentation level
        """
        self.indent = indent

    def format(self, trace: Trace) -> str:
        """
        Format trace as JSON.

        Args:
            trace: The trace to format

        Returns:
            JSON string
        """
        return trace.to_json(indent=self.indent)


def format_trace(trace: Trace, format: str = "terminal", **kwargs) -> str:
    """
    Convenience function to format a trace.

    Args:
        trace: The trace to format
        format: Format type ("terminal", "json")
        **kwargs: Additional arguments for the formatter

    Returns:
        Formatted string
    """
    if format == "terminal":
        formatter = TerminalFormatter(**kwargs)
    elif format == "json":
        formatter = JSONFormatter(**kwargs)
    else:
        raise ValueError(f"Unknown format: {format}")

    return formatter.format(trace)
