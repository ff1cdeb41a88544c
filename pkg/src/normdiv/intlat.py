"""Exact integer linear algebra: Hermite normal form, kernels, LLL, enumeration.

Matrices are lists of rows holding Python ints (or Fractions where noted).
Lattice bases are given as lists of *vectors*; the column-style HNF used for
ideals is returned as a list of column vectors.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Vector = list[int]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def hnf_columns(gens: Sequence[Sequence[int]], dim: int, modulus: int | None = None) -> list[Vector]:
    """Column-style Hermite normal form of the lattice spanned by ``gens``.

    Returns columns ``h_1..h_dim`` with ``h_j[i] == 0`` for ``i > j``,
    ``h_j[j] > 0`` and ``0 <= h_j[i] < h_i[i]`` for ``i < j``.  The lattice must
    have full rank.  If ``modulus`` is given it must be a multiple of the
    determinant's exponent (``modulus * Z^dim`` contained in the lattice); entries are
    then kept reduced modulo it.
    """
    vecs = [list(map(int, v)) for v in gens]
    if modulus is not None:
        modulus = abs(int(modulus))
        vecs = [[c % modulus for c in v] for v in vecs]
        for i in range(dim):
            e = [0] * dim
            e[i] = modulus
            vecs.append(e)
    vecs = [v for v in vecs if any(v)]
    cols: list[Vector | None] = [None] * dim
    for row in range(dim - 1, -1, -1):
        pivot = None
        rest = []
        for v in vecs:
            if v[row] == 0:
                rest.append(v)
                continue
            if pivot is None:
                pivot = v
                continue
            g, s, t = xgcd(pivot[row], v[row])
            a, b = pivot[row] // g, v[row] // g
            new_pivot = [s * x + t * y for x, y in zip(pivot, v)]
            other = [b * x - a * y for x, y in zip(pivot, v)]
            if modulus is not None:
                new_pivot = [c % modulus if i != row else c for i, c in enumerate(new_pivot)]
                other = [c % modulus for c in other]
            pivot = new_pivot
            if any(other):
                rest.append(other)
        if pivot is None:
            raise ValueError("lattice is not of full rank")
        if pivot[row] < 0:
            pivot = [-c for c in pivot]
        if modulus is not None:
            pivot = [c % modulus if i < row else c for i, c in enumerate(pivot)]
        cols[row] = pivot
        vecs = rest
    hcols: list[Vector] = cols  # type: ignore[assignment]
    for j in range(dim):
        for i in range(j - 1, -1, -1):
            q = hcols[j][i] // hcols[i][i]
            if q:
                hcols[j] = [x - q * y for x, y in zip(hcols[j], hcols[i])]
    return hcols


def hnf_solve(hcols: Sequence[Sequence[int]], x: Sequence[int]) -> list[int] | None:
    """Coefficients c with sum c_j h_j == x, or None if x is not in the lattice.

    Back-substitution against a column-style HNF, bottom row first.
    """
    dim = len(hcols)
    r = list(x)
    coeffs = [0] * dim
    for j in range(dim - 1, -1, -1):
        h = hcols[j]
        q, rem = divmod(r[j], h[j])
        if rem:
            return None
        coeffs[j] = q
        if q:
            for i in range(j + 1):
                r[i] -= q * h[i]
    return coeffs


def integer_kernel(row: Sequence[int]) -> list[Vector]:
    """A Z-basis of {b in Z^n : row . b == 0} (n - 1 vectors when row != 0)."""
    n = len(row)
    w = list(map(int, row))
    basis = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of U
    # Column operations on w, mirrored on U, until w = (g, 0, ..., 0).
    for j in range(1, n):
        if w[j] == 0:
            continue
        g, s, t = xgcd(w[0], w[j])
        a, b = w[0] // g, w[j] // g
        u0, uj = basis[0], basis[j]
        basis[0] = [s * x + t * y for x, y in zip(u0, uj)]
        basis[j] = [-b * x + a * y for x, y in zip(u0, uj)]
        w[0], w[j] = g, 0
    if w[0] == 0:
        return basis
    return basis[1:]


def gram(basis: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[sum(x * y for x, y in zip(u, v)) for v in basis] for u in basis]


def gram_det(basis: Sequence[Sequence[int]]) -> int:
    """Squared covolume of the lattice spanned by ``basis`` (exact)."""
    return det_bareiss(gram(basis))


def lll_gram(g: Sequence[Sequence], delta=Fraction(99, 100)) -> list[list[int]]:
    """LLL-reduce a lattice given by its Gram matrix.

    ``g`` may hold ints/Fractions (exact) or floats.  Returns the unimodular
    transform ``U`` (rows) such that the vectors ``sum_j U[i][j] b_j`` form a
    reduced basis.  Linearly independent input is required.
    """
    n = len(g)
    exact = all(isinstance(x, (int, Fraction)) for row in g for x in row)
    conv = Fraction if exact else float
    G = [[conv(x) for x in row] for row in g]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    delta = conv(delta)

    def gso():
        mu = [[conv(0)] * n for _ in range(n)]
        bstar = [conv(0)] * n
        for i in range(n):
            for j in range(i):
                s = G[i][j] - sum(mu[j][m] * mu[i][m] * bstar[m] for m in range(j))
                mu[i][j] = s / bstar[j]
            bstar[i] = G[i][i] - sum(mu[i][m] ** 2 * bstar[m] for m in range(i))
            if bstar[i] <= 0:
                raise ValueError("basis is not linearly independent")
        return mu, bstar

    def swap(i, j):
        U[i], U[j] = U[j], U[i]
        G[i], G[j] = G[j], G[i]
        for row in G:
            row[i], row[j] = row[j], row[i]

    def size_reduce(i, j, mu):
        q = round(mu[i][j])
        if q == 0:
            return False
        q = int(q)
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]
        # Gram update for b_i <- b_i - q b_j.
        gii = G[i][i] - 2 * q * G[i][j] + q * q * G[j][j]
        row = [G[i][m] - q * G[j][m] for m in range(n)]
        row[i] = gii
        G[i] = row
        for m in range(n):
            G[m][i] = row[m]
        for m in range(j + 1):
            mu[i][m] -= q * (mu[j][m] if m < j else 1)
        return True

    k = 1
    mu, bstar = gso()
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > conv(1) / 2:
                size_reduce(k, j, mu)
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            swap(k, k - 1)
            mu, bstar = gso()
            k = max(k - 1, 1)
    return U


def lll(basis: Sequence[Sequence[int]], delta=Fraction(99, 100)) -> list[Vector]:
    """LLL-reduced basis (exact arithmetic) of the integer lattice spanned by ``basis``."""
    basis = [list(map(int, v)) for v in basis]
    U = lll_gram(gram(basis), delta)
    return [[sum(u * v[c] for u, v in zip(row, basis)) for c in range(len(basis[0]))] for row in U]


def fincke_pohst(g: Sequence[Sequence[float]], bound: float, limit: int = 10**6):
    """Yield coefficient vectors c != 0 with c^T g c <= bound (one of each ±pair).

    ``g`` is a positive definite Gram matrix (floats).  Stops after ``limit``
    candidates.
    """
    n = len(g)
    # Cholesky-style decomposition q_ii, q_ij of the quadratic form.
    q = [[float(x) for x in row] for row in g]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for kk in range(i + 1, n):
            for l in range(kk, n):
                q[kk][l] -= q[kk][i] * q[i][l]
    # q[i][i] diag, q[i][j] (j > i) multipliers.
    x = [0] * n
    count = 0
    eps = 1e-9 * max(1.0, bound)

    def rec(i, remaining):
        nonlocal count
        centre = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        rad = math.sqrt(max(remaining, 0.0) / q[i][i])
        lo, hi = math.ceil(centre - rad - 1e-12), math.floor(centre + rad + 1e-12)
        for v in range(lo, hi + 1):
            x[i] = v
            rem = remaining - q[i][i] * (v - centre) ** 2
            if rem < -eps:
                continue
            if i == 0:
                if any(x):
                    count += 1
                    if count > limit:
                        return True
                    yield list(x)
            else:
                stop = yield from rec(i - 1, rem)
                if stop:
                    return True
        x[i] = 0
        return False

    seen = set()
    for c in rec(n - 1, float(bound)):
        t = tuple(c)
        neg = tuple(-a for a in t)
        if neg in seen:
            continue
        seen.add(t)
        yield c


def shortest_vector(basis: Sequence[Sequence[int]]) -> Vector:
    """Exhaustive shortest nonzero vector of an integer lattice (test oracle)."""
    red = lll(basis)
    g = gram(red)
    best = min(g[i][i] for i in range(len(red)))
    bestc = None
    for c in fincke_pohst(g, best + 0.5):
        val = sum(c[i] * g[i][j] * c[j] for i in range(len(c)) for j in range(len(c)))
        if val <= best and (bestc is None or val < best):
            best, bestc = val, c
    if bestc is None:
        i = min(range(len(red)), key=lambda i: g[i][i])
        return red[i]
    dim = len(red[0])
    return [sum(c * v[d] for c, v in zip(bestc, red)) for d in range(dim)]
