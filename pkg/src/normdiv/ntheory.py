"""Elementary integer helpers: prime tables, factorization, divisor functions."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


@lru_cache(maxsize=8)
def _small_primes(limit: int) -> tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(limit))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def factorint(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} of a positive integer."""
    if n < 1:
        raise ValueError("factorint needs a positive integer")
    out: dict[int, int] = {}
    for p in _small_primes(1000):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))
    return dict(sorted(out.items()))


def tau_prime_power(k: int, alpha: int) -> int:
    """tau_k(p^alpha) = binom(alpha + k - 1, k - 1)."""
    return math.comb(alpha + k - 1, k - 1)


def tau(k: int, n: int) -> int:
    """Number of ordered k-tuples of positive integers with product n."""
    if k == 0:
        return int(n == 1)
    out = 1
    for a in factorint(n).values():
        out *= tau_prime_power(k, a)
    return out


def tau_bruteforce(k: int, n: int) -> int:
    """tau_k(n) by recursive enumeration of ordered factorizations."""
    if k == 1:
        return 1
    return sum(tau_bruteforce(k - 1, n // d) for d in range(1, n + 1) if n % d == 0)


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, a in factorint(n).items():
        divs = [d * p**e for d in divs for e in range(a + 1)]
    return sorted(divs)


def omega(n: int) -> int:
    return len(factorint(n))
