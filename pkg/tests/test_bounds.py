"""
Tests for primes, primorials and the phi(k, h) bound.
"""

import math
from concurrent.futures import ThreadPoolExecutor

import pytest

from devolved import (
    DevolvedError,
    ProbeMode,
    get_prime_cache,
    log_primorial,
    phi_bound,
    primes_upto,
    primorial,
    primorial_growth_ratio,
    probe_to_tsv,
    asymptotic_probe,
    second_order_ratio,
)
from devolved._core.bounds import log_big
from devolved._core.primes import PrimeCache


class TestPrimes:
    """Test the sieve and the prime cache."""

    def test_primes_upto(self) -> None:
        """Test the primes below 30."""
        assert primes_upto(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert primes_upto(1).tolist() == []

    def test_cache_grows(self) -> None:
        """Test that a small cache grows on demand."""
        cache = PrimeCache(initial_limit=16)

        assert cache.nth(1) == 2
        assert cache.nth(1000) == 7919
        assert cache.upto(100)[-1] == 97

    def test_cache_matches_sieve(self) -> None:
        """Test the shared cache against an independent sieve."""
        assert get_prime_cache().first(500).tolist() == primes_upto(3571).tolist()

    def test_factor_primes(self) -> None:
        """Test distinct prime factors."""
        cache = get_prime_cache()

        assert cache.factor_primes(1) == []
        assert cache.factor_primes(360) == [2, 3, 5]
        assert cache.factor_primes(7919) == [7919]

    def test_concurrent_growth(self) -> None:
        """Test that readers racing the doubling always see a consistent sieve."""
        cache = PrimeCache(initial_limit=16)
        bounds = [97 + 131 * i for i in range(40)]

        def read(x: int):
            return cache.upto(x).tolist(), cache.first(x // 10).tolist()

        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(read, bounds))

        for x, (upto, first) in zip(bounds, results):
            assert upto == primes_upto(x).tolist()
            assert first == get_prime_cache().first(x // 10).tolist()
        assert cache.factor_primes(9991) == [97, 103]

    def test_state_is_one_snapshot(self) -> None:
        """Test that the published limit matches its primes after growth."""
        cache = PrimeCache(initial_limit=16)
        cache.nth(300)
        cache.upto(5000)

        limit, primes = cache._state
        assert cache.limit == limit
        assert limit >= 5000
        assert primes.tolist() == primes_upto(limit).tolist()


class TestPrimorial:
    """Test primorials and their logarithms."""

    def test_values(self) -> None:
        """Test small primorials."""
        assert primorial(0) == 1
        assert primorial(3) == 30
        assert primorial(5) == 2310

    def test_successive_ratio_is_next_prime(self) -> None:
        """Test p_(n+1)# / p_n# = p_(n+1)."""
        primes = primes_upto(600).tolist()
        for n in range(100):
            assert primorial(n + 1) // primorial(n) == primes[n]
            assert primorial(n + 1) % primorial(n) == 0

    def test_negative_rejected(self) -> None:
        """Test that n must be non-negative."""
        with pytest.raises(DevolvedError):
            primorial(-1)

    def test_log_big(self) -> None:
        """Test the logarithm of integers beyond float range."""
        assert log_big(10 ** 400) == pytest.approx(400 * math.log(10), rel=1e-12)
        assert log_big(7) == pytest.approx(math.log(7))

    def test_log_primorial(self) -> None:
        """Test log(p_n#) against a direct sum."""
        primes = primes_upto(600).tolist()[:100]
        assert log_primorial(100) == pytest.approx(math.fsum(math.log(p) for p in primes), rel=1e-9)
        assert log_primorial(0) == 0.0


class TestPhiBound:
    """Test the exact phi(k, h) scan."""

    def test_k1_h2(self) -> None:
        """Test phi(1, 2) = 2: 9 >= 6 but 16 < 30."""
        result = phi_bound(1, 2)

        assert result.phi == 2
        assert result.primorial_at_phi == 6
        assert result.first_failure == 3

    def test_k1_h1(self) -> None:
        """Test phi(1, 1) = 1 at the equality 2 = 2."""
        result = phi_bound(1, 1)

        assert result.phi == 1
        assert result.primorial_at_phi == 2

    def test_known_values(self) -> None:
        """Test a few hand-checked values."""
        assert phi_bound(10, 2).phi == 5
        assert phi_bound(100, 2).phi == 6
        assert phi_bound(1, 4).phi == 4
        assert phi_bound(1, 8).phi == 8

    def test_exactness_grid(self) -> None:
        """Test both defining inequalities for k <= 100, h <= 20."""
        for k in range(1, 101):
            for h in range(1, 21):
                result = phi_bound(k, h)

                assert result.phi >= 1
                assert (k * result.phi + 1) ** h >= primorial(result.phi)
                assert (k * (result.phi + 1) + 1) ** h < primorial(result.phi + 1)
                assert result.check()

    def test_monotone(self) -> None:
        """Test that phi is nondecreasing in k and in h."""
        for h in range(1, 8):
            values = [phi_bound(k, h).phi for k in range(1, 60)]
            assert values == sorted(values)
        for k in (1, 3, 10):
            values = [phi_bound(k, h).phi for h in range(1, 30)]
            assert values == sorted(values)

    def test_serialization(self) -> None:
        """Test the JSON form of a result."""
        assert phi_bound(1, 2).to_dict() == {
            "k": 1,
            "h": 2,
            "phi": 2,
            "primorial_at_phi": 6,
            "first_failure": 3,
        }

    @pytest.mark.parametrize("k, h", [(0, 2), (1, 0), (-3, 2), (True, 2)])
    def test_invalid_arguments(self, k, h) -> None:
        """Test that k and h must be positive integers."""
        with pytest.raises(DevolvedError):
            phi_bound(k, h)


class TestGrowthRatio:
    """Test the prime number theorem diagnostic."""

    def test_small_values(self) -> None:
        """Test log 6 / (2 log 2) and log 30 / (3 log 3)."""
        assert primorial_growth_ratio(2) == pytest.approx(1.29248, abs=1e-5)
        assert primorial_growth_ratio(3) == pytest.approx(1.03196, abs=1e-5)

    def test_near_one_at_1000(self) -> None:
        """Test |ratio - 1| < 0.15 at n = 1000."""
        assert abs(primorial_growth_ratio(1000) - 1) < 0.15

    def test_second_order_prediction(self) -> None:
        """Test that the ratio approaches 1 + (log log n - 1) / log n."""
        error_100 = abs(primorial_growth_ratio(100) - second_order_ratio(100))
        error_1000 = abs(primorial_growth_ratio(1000) - second_order_ratio(1000))

        assert error_1000 < error_100
        assert error_1000 < 0.01

    def test_small_n_rejected(self) -> None:
        """Test that n < 2 is refused."""
        with pytest.raises(DevolvedError):
            primorial_growth_ratio(1)


class TestAsymptoticProbe:
    """Test the growth table."""

    def test_fixed_h(self) -> None:
        """Test that phi grows with k while phi / log k falls."""
        rows = asymptotic_probe(ProbeMode.FIXED_H, 2, [10, 10 ** 2, 10 ** 4, 10 ** 8])
        phis = [row.phi for row in rows]
        scaled = [row.scaled for row in rows]

        assert phis == [5, 6, 10, 15]
        assert phis == sorted(phis)
        assert scaled == sorted(scaled, reverse=True)

    def test_fixed_k(self) -> None:
        """Test that phi stays below 2h for k = 1."""
        rows = asymptotic_probe("fixed-k", 1, [1, 2, 4, 8])

        assert [row.phi for row in rows] == [1, 2, 4, 8]
        assert all(row.phi <= 2 * row.parameter for row in rows)

    def test_single_row(self) -> None:
        """Test the TSV of one fixed-k row."""
        rows = asymptotic_probe(ProbeMode.FIXED_K, 1, [1])

        assert probe_to_tsv(ProbeMode.FIXED_K, rows) == "h\tphi\tphi_over_h\n1\t1\t1.000000\n"

    def test_k1_has_no_scaled_value(self) -> None:
        """Test that phi / log k is blank at k = 1."""
        rows = asymptotic_probe(ProbeMode.FIXED_H, 2, [1, 10])

        assert rows[0].scaled is None
        assert probe_to_tsv("fixed-h", rows).splitlines()[1] == "1\t2\t"

    def test_samples_must_ascend(self) -> None:
        """Test that unsorted samples are refused."""
        with pytest.raises(DevolvedError):
            asymptotic_probe(ProbeMode.FIXED_H, 2, [10, 5])
