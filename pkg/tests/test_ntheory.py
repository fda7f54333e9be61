import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxfam.ntheory import FactoredInt, factorize, is_prime, prime_power


def _trial_is_prime(n):
    return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))


def test_is_prime_matches_trial_division_below_5000():
    assert [n for n in range(5000) if is_prime(n)] == [n for n in range(5000) if _trial_is_prime(n)]


def test_is_prime_large_known_values():
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_factorize_small_examples():
    assert factorize(91).factors == ((7, 1), (13, 1))
    assert factorize(9).factors == ((3, 2),)
    assert factorize(1).factors == ()


def test_factorize_uses_rho_beyond_trial_limit():
    p, q = 1_000_003, 1_000_033
    assert factorize(p * q).factors == ((p, 1), (q, 1))
    assert factorize(p**2 * 6).factors == ((2, 1), (3, 1), (p, 2))


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10**12))
def test_factorization_reconstructs(n):
    f = factorize(n)
    assert all(is_prime(p) for p in f.primes)
    assert math.prod(p**e for p, e in f.factors) == n


def test_factored_int_rejects_bad_factors():
    with pytest.raises(ValueError):
        FactoredInt(12, ((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        FactoredInt(6, ((3, 1), (2, 1)))


def test_prime_power():
    assert prime_power(49) == (7, 2)
    assert prime_power(81) == (3, 4)
    assert prime_power(13) == (13, 1)
    assert prime_power(45) is None
    assert prime_power(1) is None
