# devolved/_core/primes.py

"""
Prime generation.

A process-wide cache of the first primes, grown by re-sieving a doubled
range. Readers see either the old or the new array, never a partial one.
"""

import math
import threading
from typing import List, Tuple

import numpy as np


def prime_flags_upto(N: int) -> np.ndarray:
    """
    Return boolean array where flags[i] is True iff i is prime.

    Args:
        N: Upper bound (inclusive)

    Returns:
        Boolean array of length N+1
    """
    flags = np.ones(N + 1, dtype=bool)
    flags[: min(2, N + 1)] = False
    for p in range(2, int(N ** 0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def primes_upto(N: int) -> np.ndarray:
    """Array of all primes <= N (int64)."""
    if N < 2:
        return np.array([], dtype=np.int64)
    return np.flatnonzero(prime_flags_upto(N)).astype(np.int64)


class PrimeCache:
    """
    Thread-safe cache of the first n primes.

    The sieve range starts at `initial_limit` and doubles until it holds
    enough primes. The sieve limit and its primes are published together as
    one `(limit, primes)` tuple, replaced under a lock and read once per call.
    """

    def __init__(self, initial_limit: int = 1 << 12):
        limit = max(initial_limit, 16)
        self._state: Tuple[int, np.ndarray] = (limit, primes_upto(limit))
        self._lock = threading.Lock()

    @property
    def limit(self) -> int:
        return self._state[0]

    def _grow_to_count(self, n: int) -> np.ndarray:
        with self._lock:
            limit, primes = self._state
            if len(primes) < n:
                while len(primes) < n:
                    limit *= 2
                    primes = primes_upto(limit)
                self._state = (limit, primes)
            return primes

    def _grow_to_value(self, x: int) -> np.ndarray:
        with self._lock:
            limit, primes = self._state
            if limit < x:
                while limit < x:
                    limit *= 2
                primes = primes_upto(limit)
                self._state = (limit, primes)
            return primes

    def first(self, n: int) -> np.ndarray:
        """The first n primes as an int64 array."""
        if n < 0:
            raise ValueError(f"n must be non-negative, got {n}")
        _, primes = self._state
        if len(primes) < n:
            primes = self._grow_to_count(n)
        return primes[:n]

    def nth(self, n: int) -> int:
        """The n-th prime, 1-based (nth(1) == 2)."""
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        return int(self.first(n)[n - 1])

    def upto(self, x: int) -> np.ndarray:
        """All primes <= x."""
        if x < 2:
            return np.array([], dtype=np.int64)
        limit, primes = self._state
        if limit < x:
            primes = self._grow_to_value(x)
        return primes[: int(np.searchsorted(primes, x, side="right"))]

    def factor_primes(self, m: int) -> List[int]:
        """Distinct prime divisors of m >= 1, ascending."""
        if m < 1:
            raise ValueError(f"m must be positive, got {m}")
        found: List[int] = []
        root = math.isqrt(m) + 1
        for p in self.upto(root):
            p = int(p)
            if p * p > m:
                break
            if m % p == 0:
                found.append(p)
                while m % p == 0:
                    m //= p
        if m > 1:
            found.append(m)
        return found


_prime_cache = PrimeCache()


def get_prime_cache() -> PrimeCache:
    """Get the process-wide prime cache."""
    return _prime_cache
