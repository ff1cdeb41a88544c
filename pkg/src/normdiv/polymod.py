"""Dense polynomials over F_p and their factorization.

Polynomials are lists of coefficients, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).  Factorization follows the usual
squarefree / distinct-degree / equal-degree (Cantor-Zassenhaus) pipeline; the
randomized splitting step draws from a seeded ``random.Random``.
"""

from __future__ import annotations

import random

Poly = list[int]

DEFAULT_SEED = 20240917


def trim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(a, p: int) -> Poly:
    return trim([c % p for c in a])


def add(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return reduce(out, p)


def divmod_poly(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return trim(q), trim(a[:db])


def rem(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_poly(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def derivative(a: Poly, p: int) -> Poly:
    return trim([(i * a[i]) % p for i in range(1, len(a))])


def powmod(a: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = [1]
    base = rem(a, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = rem(mul(base, base, p), m, p)
    return result


def evaluate(a, x: int, m: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % m
    return acc


def squarefree_decomposition(a: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic squarefree factors with multiplicities: a = lc * prod g_i^{e_i}."""
    a = monic(reduce(a, p), p)
    out: list[tuple[Poly, int]] = []
    if len(a) <= 1:
        return out

    def rec(f: Poly, mult: int):
        d = derivative(f, p)
        if not d:
            # f is a p-th power: f(x) = g(x^p), coefficients are fixed by Frobenius.
            g = [f[i] for i in range(0, len(f), p)]
            rec(g, mult * p)
            return
        c = gcd(f, d, p)
        w = divmod_poly(f, c, p)[0]
        i = 1
        while len(w) > 1:
            y = gcd(w, c, p)
            z = divmod_poly(w, y, p)[0]
            if len(z) > 1:
                out.append((monic(z, p), i * mult))
            i += 1
            w = y
            c = divmod_poly(c, y, p)[0]
        if len(c) > 1:
            g = [c[i] for i in range(0, len(c), p)]
            rec(g, mult * p)

    rec(a, 1)
    return out


def distinct_degree(a: Poly, p: int) -> list[tuple[Poly, int]]:
    """Split a monic squarefree polynomial into products of equal-degree irreducibles."""
    out = []
    f = monic(a, p)
    h: Poly = [0, 1]
    d = 0
    while 2 * (d + 1) <= len(f) - 1:
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_poly(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(a: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    """Split a monic squarefree product of degree-d irreducibles (Cantor-Zassenhaus)."""
    n = len(a) - 1
    if n == d:
        return [a]
    while True:
        r = trim([rng.randrange(p) for _ in range(n)])
        if len(r) <= 1:
            continue
        if p == 2:
            # Trace map r + r^2 + ... + r^(2^(d-1)).
            t, s = r, r
            for _ in range(d - 1):
                s = rem(mul(s, s, p), a, p)
                t = add(t, s, p)
            g = gcd(a, t, p)
        else:
            e = (p**d - 1) // 2
            g = gcd(a, sub(powmod(r, e, a, p), [1], p), p)
        if 1 < len(g) < len(a):
            q = divmod_poly(a, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(monic(q, p), d, p, rng)


def factor(a, p: int, seed: int = DEFAULT_SEED) -> list[tuple[Poly, int]]:
    """Monic irreducible factors of ``a`` mod p with multiplicities, sorted."""
    rng = random.Random(seed * 1000003 + p)
    out = []
    for sqf, mult in squarefree_decomposition(a, p):
        for block, d in distinct_degree(sqf, p):
            for g in equal_degree(block, d, p, rng):
                out.append((g, mult))
    out.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return out


def roots(a, p: int, seed: int = DEFAULT_SEED) -> list[int]:
    """Distinct roots of ``a`` in F_p, ascending."""
    return sorted((-g[0]) % p for g, _ in factor(a, p, seed) if len(g) == 2)
