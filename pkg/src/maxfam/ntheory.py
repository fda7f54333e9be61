"""Small integer helpers: primality, factorization, prime-power detection."""

from __future__ import annotations

import math
from dataclasses import dataclass

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_LIMIT = 10**6
_RHO_SEEDS = (2, 3, 5, 7, 11, 13, 17, 19)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    # Brent's variant; fixed seeds and increments keep results reproducible.
    for seed in _RHO_SEEDS:
        for c in range(1, 64):
            y, r, g = seed, 1, 1
            x = ys = y
            m, qq = 128, 1
            while g == 1:
                x = y
                for _ in range(r):
                    y = (y * y + c) % n
                k = 0
                while k < r and g == 1:
                    ys = y
                    for _ in range(min(m, r - k)):
                        y = (y * y + c) % n
                        qq = qq * abs(x - y) % n
                    g = math.gcd(qq, n)
                    k += m
                r *= 2
            if g == n:
                g = 1
                while g == 1:
                    ys = (ys * ys + c) % n
                    g = math.gcd(abs(x - ys), n)
            if 1 < g < n:
                return g
    raise ArithmeticError(f"pollard rho failed on {n}")


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    f = _pollard_rho(n)
    _factor_into(f, out)
    _factor_into(n // f, out)


@dataclass(frozen=True)
class FactoredInt:
    """An integer together with its prime factorization (primes increasing)."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        for p, e in self.factors:
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not reconstruct {self.value}")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


def factorize(n: int) -> FactoredInt:
    """Trial division up to 10**6, then Pollard rho on whatever is left."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m and p <= _TRIAL_LIMIT:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        _factor_into(m, out)
    return FactoredInt(n, tuple(sorted(out.items())))


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, n) with q = p**n, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorize(q).factors
    if len(f) != 1:
        return None
    return f[0]
