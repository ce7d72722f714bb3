# devolved/_core/bounds.py

"""
Primorial bound on the number of small essential subsets.

A basis of order h has at most phi(k, h) essential subsets of size at most
k, where phi(k, h) is the largest phi with (k*phi + 1)**h >= p_phi#. All
comparisons are exact big-integer comparisons.
"""

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from .errors import DevolvedError
from .primes import get_prime_cache

# log_primorial switches from the exact product to summed logs above this n
EXACT_LOG_LIMIT = 20000

_LN2 = math.log(2.0)


def _product(values: Sequence[int]) -> int:
    """Balanced product tree; much faster than a running product for long inputs."""
    n = len(values)
    if n == 0:
        return 1
    if n <= 16:
        result = 1
        for v in values:
            result *= v
        return result
    mid = n // 2
    return _product(values[:mid]) * _product(values[mid:])


@lru_cache(maxsize=256)
def primorial(n: int) -> int:
    """
    Product of the first n primes.

    Args:
        n: Number of primes (n = 0 gives the empty product 1)

    Returns:
        p_n# as a Python int
    """
    if n < 0:
        raise DevolvedError(f"n must be non-negative, got {n}")
    primes = get_prime_cache().first(n)
    return _product([int(p) for p in primes])


def log_big(x: int) -> float:
    """Natural log of a positive int of any size, from its bit length and a 53-bit mantissa."""
    if x <= 0:
        raise DevolvedError(f"log_big needs a positive integer, got {x}")
    b = x.bit_length()
    if b <= 53:
        return math.log(x)
    shift = b - 53
    return math.log(x >> shift) + shift * _LN2


def log_primorial(n: int) -> float:
    """log(p_n#); exact product up to EXACT_LOG_LIMIT, fsum of prime logs beyond."""
    if n < 0:
        raise DevolvedError(f"n must be non-negative, got {n}")
    if n == 0:
        return 0.0
    if n <= EXACT_LOG_LIMIT:
        return log_big(primorial(n))
    primes = get_prime_cache().first(n)
    return math.fsum(np.log(primes.astype(np.float64)).tolist())


def primorial_growth_ratio(n: int) -> float:
    """
    log(p_n#) / (n log n), which tends to 1 by the prime number theorem.

    Raises:
        DevolvedError: If n < 2
    """
    if n < 2:
        raise DevolvedError(f"primorial_growth_ratio needs n >= 2, got {n}")
    return log_primorial(n) / (n * math.log(n))


def second_order_ratio(n: int) -> float:
    """Prediction 1 + (log log n - 1) / log n for the growth ratio."""
    if n < 2:
        raise DevolvedError(f"second_order_ratio needs n >= 2, got {n}")
    ln = math.log(n)
    return 1.0 + (math.log(ln) - 1.0) / ln


@dataclass(frozen=True)
class BoundResult:
    """
    Outcome of the phi(k, h) scan.

    Attributes:
        k: Largest essential-subset size considered
        h: Order of the basis
        phi: Largest phi with (k*phi + 1)**h >= p_phi#
        primorial_at_phi: p_phi#
        first_failure: Smallest phi' > phi where the inequality fails (always phi + 1)
    """
    k: int
    h: int
    phi: int
    primorial_at_phi: int
    first_failure: int

    def holds_at(self, phi: int) -> bool:
        return (self.k * phi + 1) ** self.h >= primorial(phi)

    def check(self) -> bool:
        """Re-verify both defining inequalities with exact arithmetic."""
        return (
            self.holds_at(self.phi)
            and primorial(self.phi) == self.primorial_at_phi
            and not self.holds_at(self.first_failure)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "h": self.h,
            "phi": self.phi,
            "primorial_at_phi": self.primorial_at_phi,
            "first_failure": self.first_failure,
        }


def _check_positive(name: str, value: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise DevolvedError(f"{name} must be a positive integer, got {value!r}")


def phi_bound(k: int, h: int) -> BoundResult:
    """
    Largest phi with (k*phi + 1)**h >= p_phi#.

    The scan goes upward and stops at the first infeasible phi where
    2**phi > (k*phi + 1)**h; phi*log 2 - h*log(k*phi + 1) is convex and zero at
    0, so from there on p_phi# >= 2**phi stays ahead.

    Args:
        k: Positive subset size
        h: Positive order

    Returns:
        BoundResult
    """
    _check_positive("k", k)
    _check_positive("h", h)

    cache = get_prime_cache()
    best, best_primorial = 0, 1
    running = 1
    phi = 0
    while True:
        phi += 1
        running *= cache.nth(phi)
        lhs = (k * phi + 1) ** h
        if lhs >= running:
            best, best_primorial = phi, running
        elif (1 << phi) > lhs:
            break

    return BoundResult(k=k, h=h, phi=best, primorial_at_phi=best_primorial, first_failure=best + 1)


class ProbeMode(Enum):
    """Which parameter grows in asymptotic_probe."""
    FIXED_H = "fixed-h"
    FIXED_K = "fixed-k"


@dataclass(frozen=True)
class ProbeRow:
    """
    One row of the growth table.

    `scaled` is phi / log k for FIXED_H (None at k = 1) and phi / h for FIXED_K.
    """
    parameter: int
    phi: int
    scaled: Optional[float]


def asymptotic_probe(mode, fixed_value: int, samples: Iterable[int]) -> List[ProbeRow]:
    """
    Tabulate phi_bound over growing k (h fixed) or growing h (k fixed).

    Args:
        mode: ProbeMode or its string value ("fixed-h" / "fixed-k")
        fixed_value: The parameter held constant
        samples: Strictly ascending values of the growing parameter

    Returns:
        List of ProbeRow, one per sample
    """
    mode = ProbeMode(mode)
    samples = list(samples)
    if any(b <= a for a, b in zip(samples, samples[1:])):
        raise DevolvedError(f"samples must be strictly ascending, got {samples}")

    rows: List[ProbeRow] = []
    for value in samples:
        if mode is ProbeMode.FIXED_H:
            result = phi_bound(value, fixed_value)
            scaled = result.phi / math.log(value) if value > 1 else None
        else:
            result = phi_bound(fixed_value, value)
            scaled = result.phi / value
        rows.append(ProbeRow(parameter=value, phi=result.phi, scaled=scaled))
    return rows


def probe_to_tsv(mode, rows: Sequence[ProbeRow]) -> str:
    """Render growth-table rows as TSV with a header line."""
    mode = ProbeMode(mode)
    if mode is ProbeMode.FIXED_H:
        header = "k\tphi\tphi_over_log_k"
    else:
        header = "h\tphi\tphi_over_h"
    lines = [header]
    for row in rows:
        scaled = "" if row.scaled is None else f"{row.scaled:.6f}"
        lines.append(f"{row.parameter}\t{row.phi}\t{scaled}")
    return "\n".join(lines) + "\n"
