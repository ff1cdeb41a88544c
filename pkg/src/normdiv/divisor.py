"""Divisor functions on norm-form values.

The main quantity is ``M(R_X) = sum_{x in R_X} tau_k(f(x))``.  The values
f(x) lie in ``[X^k, 2 X^k]``; tau_k on that interval comes from a segmented
multiplicative sieve.  The module also contains the exact hyperbola-type
decomposition of tau_k by a size threshold, the sharp-cutoff sums M_j and E,
and an ideal-lattice sieve for averages of multiplicative functions of N(v).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from normdiv.field import FieldSpec
from normdiv.ideals import arithmetic
from normdiv.lattice import enumerate_hnf, ideal_sublattice, region_points
from normdiv.ntheory import factorint, primes_up_to, tau
from normdiv.region import Region

SEGMENT = 2**22


class SieveBudgetError(RuntimeError):
    """A sieve window or enumeration exceeds its budget."""


def default_threads() -> int:
    """Worker count from ``NORMDIV_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("NORMDIV_THREADS", "1")))
    except ValueError:
        return 1


@lru_cache(maxsize=4)
def _prime_table(limit: int) -> np.ndarray:
    return primes_up_to(limit)


def _binom_table(k: int, maxe: int = 80) -> np.ndarray:
    return np.array([math.comb(e + k - 1, k - 1) for e in range(maxe + 1)], dtype=np.int64)


# -- sieve ------------------------------------------------------------------


@dataclass
class DivisorWindow:
    """tau_k values on the integer interval ``[A, B]``.

    Attributes:
        A: First integer of the window.
        B: Last integer of the window.
        taus: Mapping k -> int64 array with ``taus[k][n - A] = tau_k(n)``.
        omega: Number of distinct prime factors for each n.
    """

    A: int
    B: int
    taus: dict[int, np.ndarray]
    omega: np.ndarray
    primes: np.ndarray = dc_field(repr=False)

    def tau(self, k: int, n) -> np.ndarray | int:
        arr = self.taus[k]
        if np.isscalar(n):
            return int(arr[int(n) - self.A])
        return arr[np.asarray(n, dtype=np.int64) - self.A]

    def factorization(self, n: int) -> dict[int, int]:
        """Prime factorization of n by trial division with the window's prime table."""
        if not self.A <= n <= self.B:
            raise ValueError("n outside the window")
        out = {}
        m = n
        for p in self.primes:
            p = int(p)
            if p * p > m:
                break
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out[p] = e
        if m > 1:
            out[m] = out.get(m, 0) + 1
        return out


def sieve_window(A: int, B: int, ks: Sequence[int] = (3,), segment_budget: int = SEGMENT,
                 primes: np.ndarray | None = None) -> DivisorWindow:
    """Sieve tau_k for every n in ``[A, B]``.

    For each prime p <= sqrt(B) the exponent of p is accumulated on the
    multiples of p, p^2, ... by strided slices; tau_k is multiplied by
    binom(e + k - 1, k - 1) and p^e is divided out of a residual array.  A
    residual left above 1 is a single prime, contributing a factor k.

    Args:
        A: Window start (>= 1).
        B: Window end.
        ks: Which divisor functions to produce.
        segment_budget: Maximum window length.
        primes: Optional precomputed primes up to at least sqrt(B).

    Returns:
        A :class:`DivisorWindow`.

    Raises:
        SieveBudgetError: if the window is longer than ``segment_budget``.
    """
    if A < 1 or B < A:
        raise ValueError("need 1 <= A <= B")
    L = B - A + 1
    if L > segment_budget:
        raise SieveBudgetError(f"window of {L} integers exceeds the segment budget {segment_budget}")
    if B >= 2**62:
        raise SieveBudgetError("window end too large for the int64 sieve")
    root = math.isqrt(B)
    if primes is None:
        primes = _prime_table(max(root, 2))
    resid = np.arange(A, B + 1, dtype=np.int64)
    taus = {k: np.ones(L, dtype=np.int64) for k in ks}
    tables = {k: _binom_table(k) for k in ks}
    omega = np.zeros(L, dtype=np.int16)
    expo = np.zeros(L, dtype=np.int16)
    for p in primes:
        p = int(p)
        if p > root:
            break
        first = (-A) % p
        if first >= L:
            continue
        q = p
        while q <= B:
            start = (-A) % q
            if start >= L:
                break
            expo[start::q] += 1
            q *= p
        e = expo[first::p]
        for k in ks:
            taus[k][first::p] *= tables[k][e]
        omega[first::p] += 1
        resid[first::p] //= np.power(p, e.astype(np.int64))
        expo[first::p] = 0
    big = resid > 1
    for k in ks:
        taus[k][big] *= k
    omega[big] += 1
    return DivisorWindow(A, B, taus, omega, primes)


def tau_values(values: np.ndarray, k: int) -> np.ndarray:
    """tau_k of arbitrary positive int64 values by vectorized trial division (oracle)."""
    vals = np.asarray(values, dtype=np.int64)
    if vals.size == 0:
        return np.zeros(0, dtype=np.int64)
    resid = vals.copy()
    out = np.ones(len(vals), dtype=np.int64)
    table = _binom_table(k)
    for p in _prime_table(max(math.isqrt(int(vals.max())), 2)):
        p = int(p)
        idx = np.flatnonzero(resid % p == 0)
        if idx.size == 0:
            continue
        e = np.zeros(idx.size, dtype=np.int64)
        sub = resid[idx]
        while True:
            div = sub % p == 0
            if not div.any():
                break
            e += div
            sub = np.where(div, sub // p, sub)
        resid[idx] = sub
        out[idx] *= table[e]
    out[resid > 1] *= k
    return out


def tau_lookup(values: np.ndarray, k: int, threads: int | None = None, segment: int = SEGMENT) -> np.ndarray:
    """tau_k(values) via sieve windows covering only the segments that contain values.

    Segments are independent work units; with ``threads > 1`` they run in a
    thread pool.  Results are placed by index, so the output does not depend
    on scheduling.
    """
    vals = np.asarray(values, dtype=np.int64)
    out = np.zeros(len(vals), dtype=np.int64)
    if vals.size == 0:
        return out
    lo, hi = int(vals.min()), int(vals.max())
    primes = _prime_table(max(math.isqrt(hi), 2))
    seg_id = (vals - lo) // segment
    order = np.argsort(seg_id, kind="stable")
    ids, starts = np.unique(seg_id[order], return_index=True)
    bounds = list(starts) + [len(order)]
    jobs = []
    for t, sid in enumerate(ids):
        idx = order[bounds[t]: bounds[t + 1]]
        jobs.append((int(vals[idx].min()), int(vals[idx].max()), idx))

    def run(job):
        A, B, idx = job
        w = sieve_window(A, B, (k,), segment_budget=segment, primes=primes)
        return idx, w.tau(k, vals[idx])

    threads = default_threads() if threads is None else threads
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    for idx, t in results:
        out[idx] = t
    return out


# -- the divisor sum --------------------------------------------------------


def region_values(region: Region, X) -> np.ndarray:
    """All f(x) for x in R_X cap Z^(k-1), in enumeration order."""
    chunks = [fv.astype(np.int64) for _, fv in region_points(region, X)]
    return np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)


def M_exact(region: Region, X, threads: int | None = None, k: int | None = None) -> int:
    """M(R_X) = sum of tau_k(f(x)) over integer points of R_X.

    Args:
        region: The region R.
        X: Dilation.
        threads: Worker threads for the sieve segments (default from the
            environment).
        k: Divisor function index (defaults to the field degree).

    Returns:
        The exact sum.
    """
    k = region.field.k if k is None else k
    vals = region_values(region, X)
    if vals.size == 0:
        return 0
    return int(tau_lookup(vals, k, threads).sum(dtype=np.int64))


# -- hyperbola decomposition -------------------------------------------------


def _divisors_from(fac: dict[int, int]) -> list[int]:
    divs = [1]
    for p, a in fac.items():
        divs = [d * p**e for d in divs for e in range(a + 1)]
    return sorted(divs)


def count_factorizations(n: int, slots: Sequence[Callable[[int], bool] | None],
                         divisors: Sequence[int] | None = None) -> int:
    """Ordered factorizations n = n_1 ... n_s with slot i satisfying ``slots[i]``.

    ``None`` means unconstrained.  Recursion over the divisor list of n.
    """
    if divisors is None:
        divisors = _divisors_from(factorint(n)) if n > 1 else [1]
    dset = divisors

    @lru_cache(maxsize=None)
    def rec(m: int, i: int) -> int:
        if i == len(slots) - 1:
            ok = slots[i]
            return int(ok is None or ok(m))
        total = 0
        ok = slots[i]
        for d in dset:
            if d > m:
                break
            if m % d == 0 and (ok is None or ok(d)):
                total += rec(m // d, i + 1)
        return total

    if not slots:
        return int(n == 1)
    return rec(n, 0)


@dataclass(frozen=True)
class DecompositionTerms:
    """Terms of tau_k(n) = S_0 + sum_j (-1)^(j-1) C(k, j) T_j.

    Attributes:
        n: The integer decomposed.
        y: Size threshold.
        k: Divisor function index.
        all_small: S_0, factorizations with every factor <= y.
        terms: T_1..T_k, factorizations with n_1..n_j > y (rest free).
        tau: tau_k(n) computed independently.
    """

    n: int
    y: int
    k: int
    all_small: int
    terms: tuple[int, ...]
    tau: int

    @property
    def assembled(self) -> int:
        return self.all_small + sum((-1) ** (j - 1) * math.comb(self.k, j) * t for j, t in enumerate(self.terms, 1))

    @property
    def holds(self) -> bool:
        return self.assembled == self.tau


def hyperbola_decompose(n: int, y, k: int = 3) -> DecompositionTerms:
    """Split tau_k(n) by how many factors exceed y (inclusion-exclusion).

    Args:
        n: Positive integer.
        y: Threshold (y >= 1).
        k: Number of factors.

    Returns:
        The :class:`DecompositionTerms`; ``holds`` compares with tau_k(n).
    """
    if n < 1 or y < 1:
        raise ValueError("need n >= 1 and y >= 1")
    divs = _divisors_from(factorint(n)) if n > 1 else [1]
    small = lambda d: d <= y  # noqa: E731
    large = lambda d: d > y  # noqa: E731
    s0 = count_factorizations(n, [small] * k, divs)
    terms = tuple(count_factorizations(n, [large] * j + [None] * (k - j), divs) for j in range(1, k + 1))
    return DecompositionTerms(n, y, k, s0, terms, tau(k, n))


def _dirichlet(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Dirichlet convolution of sequences indexed 1..N (index 0 unused)."""
    N = len(a) - 1
    out = np.zeros(N + 1, dtype=np.int64)
    for d in np.flatnonzero(a[1:]) + 1:
        m = N // d
        out[d:: d][:m] += a[d] * b[1: m + 1]
    return out


def hyperbola_table(N: int, y, k: int) -> dict[str, np.ndarray]:
    """S_0 and T_1..T_k for every n <= N at once, via Dirichlet convolutions.

    Returns:
        Arrays indexed by n (index 0 unused): ``"S0"``, ``"T1"``..``"Tk"``,
        ``"assembled"`` and ``"tau"`` (from the sieve).
    """
    idx = np.arange(N + 1)
    one = np.ones(N + 1, dtype=np.int64)
    one[0] = 0
    small = ((idx >= 1) & (idx <= y)).astype(np.int64)
    large = (idx > y).astype(np.int64)

    def power(seq, e):
        out = np.zeros(N + 1, dtype=np.int64)
        out[1] = 1
        for _ in range(e):
            out = _dirichlet(seq, out)
        return out

    res = {"S0": power(small, k)}
    ones_pow = [power(one, e) for e in range(k + 1)]
    large_pow = np.zeros(N + 1, dtype=np.int64)
    large_pow[1] = 1
    assembled = res["S0"].copy()
    for j in range(1, k + 1):
        large_pow = _dirichlet(large, large_pow)
        t = _dirichlet(large_pow, ones_pow[k - j])
        res[f"T{j}"] = t
        assembled += (-1) ** (j - 1) * math.comb(k, j) * t
    res["assembled"] = assembled
    w = sieve_window(1, N, (k,), segment_budget=max(N, SEGMENT))
    tau_arr = np.zeros(N + 1, dtype=np.int64)
    tau_arr[1:] = w.taus[k]
    res["tau"] = tau_arr
    return res


# -- sharp-cutoff M_j and E ---------------------------------------------------


@dataclass(frozen=True)
class SharpTerms:
    """Per-value pieces of the sharp-cutoff decomposition at scale X, Delta."""

    all_small: int
    M: tuple[int, ...]
    D: tuple[int, ...]
    E: int
    tau: int


def sharp_terms(v: int, X: int, Delta, k: int, fac: dict[int, int] | None = None) -> SharpTerms:
    """Decompose tau_k(v) for X^k <= v <= 2X^k with y = X Delta.

    ``M_j`` counts (n_2, ..., n_k) with n_2..n_j > y, product m | v and
    m <= 2X^(k-1)/Delta; ``D_j`` is the part of M_j with n_1 = v/m <= y (the
    condition dropped when passing to M_j).  Then
    ``tau_k(v) = S_0 + sum_j (-1)^(j-1) C(k,j) (M_j - D_j)`` exactly when
    y >= 2X.  ``E`` is sum of tau_{k-1}(m) over m | v with
    X^(k-1)/Delta <= m <= 2X^(k-1).
    """
    from fractions import Fraction

    Delta = Fraction(Delta)
    y = X * Delta
    cap = 2 * Fraction(X) ** (k - 1) / Delta
    lower = Fraction(X) ** (k - 1) / Delta
    fac = factorint(v) if fac is None else fac
    divs = _divisors_from(fac)
    large = lambda d: d > y  # noqa: E731
    small = lambda d: d <= y  # noqa: E731
    s0 = count_factorizations(v, [small] * k, divs)
    Ms, Ds = [], []
    for j in range(1, k):
        slots = [large] * (j - 1) + [None] * (k - j)
        m_tot = d_tot = 0
        for m in divs:
            if m > cap:
                break
            c = count_factorizations(m, slots, [d for d in divs if m % d == 0])
            if not c:
                continue
            m_tot += c
            if v // m <= y:
                d_tot += c
        Ms.append(m_tot)
        Ds.append(d_tot)
    e_tot = 0
    for m in divs:
        if lower <= m <= 2 * Fraction(X) ** (k - 1):
            e_tot += tau(k - 1, m)
    t = 1
    for a in fac.values():
        t *= math.comb(a + k - 1, k - 1)
    return SharpTerms(s0, tuple(Ms), tuple(Ds), e_tot, t)


@dataclass(frozen=True)
class SharpDecomposition:
    """Region sums of the sharp-cutoff decomposition.

    Attributes:
        X: Scale.
        Delta: Cutoff parameter, y = X Delta.
        M: M_1..M_{k-1}.
        correction: S_0 - sum_j (-1)^(j-1) C(k,j) D_j summed over the region.
        E: The boundary population sum.
        total: M(R_X).
    """

    X: int
    Delta: float
    k: int
    M: tuple[int, ...]
    D: tuple[int, ...]
    all_small: int
    E: int
    total: int

    @property
    def main_part(self) -> int:
        return sum((-1) ** (j - 1) * math.comb(self.k, j) * m for j, m in enumerate(self.M, 1))

    @property
    def correction(self) -> int:
        return self.all_small - sum((-1) ** (j - 1) * math.comb(self.k, j) * d for j, d in enumerate(self.D, 1))

    @property
    def holds(self) -> bool:
        return self.main_part + self.correction == self.total


def sharp_decomposition(region: Region, X: int, Delta, budget: int = 10**6) -> SharpDecomposition:
    """Evaluate M_j, D_j, S_0 and E over R_X by factoring each f(x).

    Args:
        region: The region.
        X: Integer scale.
        Delta: Cutoff parameter with X * Delta >= 2X, i.e. Delta >= 2.
        budget: Maximum number of region points.

    Returns:
        A :class:`SharpDecomposition`; ``holds`` checks the exact identity.
    """
    k = region.field.k
    vals = region_values(region, X)
    if len(vals) > budget:
        raise SieveBudgetError(f"{len(vals)} region points exceed the budget")
    M = [0] * (k - 1)
    D = [0] * (k - 1)
    s0 = e = total = 0
    cache: dict[int, SharpTerms] = {}
    for v in vals.tolist():
        st = cache.get(v)
        if st is None:
            st = cache[v] = sharp_terms(v, X, Delta, k)
        for j in range(k - 1):
            M[j] += st.M[j]
            D[j] += st.D[j]
        s0 += st.all_small
        e += st.E
        total += st.tau
    return SharpDecomposition(X, float(Delta), k, tuple(M), tuple(D), s0, e, total)


def Mj_empirical(region: Region, X: int, Delta, j: int) -> int:
    """The sharp-cutoff sum M_j over R_X."""
    k = region.field.k
    if not 1 <= j <= k - 1:
        raise ValueError("j must lie in [1, k-1]")
    return sharp_decomposition(region, X, Delta).M[j - 1]


def E_empirical(region: Region, X: int, Delta) -> int:
    """The boundary sum E over R_X."""
    return sharp_decomposition(region, X, Delta).E


# -- averages of multiplicative functions of norms ---------------------------


PrimePowerFunction = Callable[[int, int, bool], int]
"""A multiplicative function given on prime powers as ``F(p, a, degree_one)``.

``degree_one`` tells whether p lies under a prime ideal of residue degree 1.
"""


def corollary_F(k: int) -> PrimePowerFunction:
    """F(p) = k for degree-one p, 0 otherwise, and F(p^a) = tau_k(p^a) for a >= 2.

    This is tau_k(N) with the value at primes restricted to degree-one support.
    """

    def F(p: int, a: int, degree_one: bool) -> int:
        if a == 1:
            return k if degree_one else 0
        return math.comb(a + k - 1, k - 1)

    return F


def majorant_F(k: int) -> PrimePowerFunction:
    """F(p) as in :func:`corollary_F`, F(p^a) = tau(p^a)^(k+1) tau_{k-1}(p^a) for a >= 2.

    This is the majorant used to bound the tails of the divisor sum; its
    prime-power values grow like a^(2k-2).
    """

    def F(p: int, a: int, degree_one: bool) -> int:
        if a == 1:
            return k if degree_one else 0
        return (a + 1) ** (k + 1) * math.comb(a + k - 2, k - 2)

    return F


def constant_F(p: int, a: int, degree_one: bool) -> int:
    return 1


F_SPECS = {"corollary": corollary_F, "majorant": majorant_F, "one": lambda k: constant_F}


def resolve_F(spec: str | PrimePowerFunction | None, k: int) -> PrimePowerFunction:
    """Turn a spec name (``corollary``, ``majorant``, ``one``) or callable into a function."""
    if spec is None:
        spec = "corollary"
    if callable(spec):
        return spec
    try:
        return F_SPECS[spec](k)
    except KeyError:
        raise ValueError(f"unknown F spec {spec!r}; choose from {sorted(F_SPECS)}") from None


@dataclass(frozen=True)
class WolkeResult:
    V: int
    total: int
    ratio: float
    points: int


def wolke_average(field: FieldSpec, V: int, F: str | PrimePowerFunction | None = None,
                  budget: int = 2 * 10**7) -> WolkeResult:
    """Sum of F(|N(v)|) over nonzero v in [-V, V]^(k-1), and its normalized ratio.

    Prime factors p <= sqrt(max |N|) are found by an ideal sieve: p | N(v)
    exactly when v lies in Z^(k-1) cap P for a prime ideal P above p, and those
    points are enumerated lattice by lattice.  Whatever cofactor remains is a
    single prime to the first power, hence of degree one.

    Args:
        field: The field.
        V: Box radius (sup norm).
        F: Spec name or multiplicative function ``F(p, a, degree_one)``;
            defaults to ``"corollary"``.
        budget: Maximum number of grid points.

    Returns:
        A :class:`WolkeResult` with ratio ``total / (V^(k-1) (log V)^(k-1))``.
    """
    k = field.k
    if V < 1:
        return WolkeResult(V, 0, 0.0, 0)
    F = resolve_F(F, k)
    d = k - 1
    side = 2 * V + 1
    if side**d > budget:
        raise SieveBudgetError(f"{side}^{d} grid points exceed the budget")
    axes = np.arange(-V, V + 1, dtype=np.int64)
    grids = np.meshgrid(*([axes] * d), indexing="ij")
    coords = [g.ravel() for g in grids]
    norms = np.abs(field.f_array(coords, V)).astype(np.int64)
    nonzero = norms > 0
    resid = norms.copy()
    value = np.where(nonzero, 1, 0).astype(np.int64)
    arith = arithmetic(field)
    ranges = [(-V, V)] * d
    strides = [side ** (d - 1 - i) for i in range(d)]
    max_norm = int(norms.max())
    root = math.isqrt(max_norm)
    for p in primes_up_to(root):
        p = int(p)
        hit = []
        split = arith.split_prime(p)
        deg1 = split[0].f == 1
        for P in split:
            if P.norm > max_norm:
                continue
            cols = ideal_sublattice(arith.prime_ideal(P))
            for xs in enumerate_hnf(cols, ranges):
                hit.append(sum((x + V) * s for x, s in zip(xs, strides)))
        if not hit:
            continue
        idx = np.unique(np.concatenate(hit))
        idx = idx[nonzero[idx]]
        if idx.size == 0:
            continue
        sub = resid[idx]
        e = np.zeros(idx.size, dtype=np.int64)
        while True:
            div = sub % p == 0
            if not div.any():
                break
            e += div
            sub = np.where(div, sub // p, sub)
        resid[idx] = sub
        pos = e > 0
        vals = np.array([F(p, int(a), deg1) for a in range(int(e.max()) + 1)], dtype=np.int64)
        value[idx[pos]] *= vals[e[pos]]
    big = nonzero & (resid > 1)
    if big.any():
        # A leftover prime q > sqrt(max |N|) divides N(v) exactly once: degree one.
        big_idx = np.flatnonzero(big)
        fq = np.array([F(int(q), 1, True) for q in resid[big_idx]], dtype=np.int64)
        value[big_idx] *= fq
    total = int(value[nonzero].sum())
    ratio = total / (V**d * math.log(V) ** d) if V > 1 else float("inf")
    return WolkeResult(V, total, ratio, int(nonzero.sum()))


def wolke_bruteforce(field: FieldSpec, V: int, F: str | PrimePowerFunction | None = None) -> int:
    """Same sum by factoring every norm (test oracle)."""
    import itertools

    F = resolve_F(F, field.k)
    arith = arithmetic(field)
    total = 0
    for v in itertools.product(range(-V, V + 1), repeat=field.k - 1):
        n = abs(field.incomplete_norm(v))
        if n == 0:
            continue
        val = 1
        for p, a in factorint(n).items():
            val *= F(p, a, arith.is_degree_one(p))
        total += val
    return total
