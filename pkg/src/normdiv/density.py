"""Local densities of the incomplete norm form.

Two densities appear: the ideal density ``rho(n)`` (how often an ideal divides
a point of Z^(k-1)) and the congruence density ``varrho(n)`` (how often n divides
f(x)).  Each has an exact counting definition and a faster structural route;
both are implemented so that they can be checked against one another.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from normdiv.field import FieldSpec
from normdiv.ideals import Ideal, IdealArithmetic, arithmetic
from normdiv.ntheory import factorint, is_prime, primes_up_to

DIRECT_BUDGET = 10**8


class BudgetError(RuntimeError):
    """A direct count would exceed its work budget."""


@dataclass(frozen=True)
class DensityValue:
    """An exact density together with the route that produced it.

    Attributes:
        value: The exact rational value.
        provenance: One of ``"direct-count"``, ``"lattice-determinant"`` or
            ``"multiplicative-assembly"``.
    """

    value: Fraction
    provenance: str

    def __float__(self):
        return float(self.value)


# -- rho --------------------------------------------------------------------


def rho_ideal(ideal: Ideal) -> DensityValue:
    """rho of an ideal via the determinant of its hyperplane sublattice.

    The points of Z^(k-1) lying in the ideal are spanned by the first k-1
    columns of the column-style HNF, so their covolume is N / h_kk and the
    density is ``N / det = h_kk``.

    Args:
        ideal: An integral ideal.

    Returns:
        The exact value tagged ``lattice-determinant``.
    """
    h = ideal.hnf
    k = len(h)
    return DensityValue(Fraction(h[k - 1][k - 1]), "lattice-determinant")


def contains_array(hnf, coords: list[np.ndarray]) -> np.ndarray:
    """Vectorized membership of points (x_1..x_{k-1}, 0) in the lattice with HNF ``hnf``.

    Back-substitution against the column-style HNF, applied to whole arrays.
    """
    k = len(hnf)
    r = [np.array(c, dtype=np.int64, copy=True) for c in coords]
    ok = np.ones(r[0].shape, dtype=bool)
    for j in range(k - 2, -1, -1):
        h = hnf[j]
        q, rem = np.divmod(r[j], h[j])
        ok &= rem == 0
        for i in range(j):
            if h[i]:
                r[i] -= q * h[i]
    return ok


def rho_direct(ideal: Ideal, budget: int = 10**7, chunk: int = 2**20) -> DensityValue:
    """rho by counting residues x mod m (m = least positive integer of the ideal).

    Membership of x in the ideal only depends on x mod m, so the count runs
    over (Z/m)^(k-1).

    Args:
        ideal: An integral ideal.
        budget: Maximal number of residues m^(k-1) to scan.
        chunk: Number of residues tested per vectorized block.

    Returns:
        The exact value tagged ``direct-count``.

    Raises:
        BudgetError: if m^(k-1) exceeds ``budget``.
    """
    h = ideal.hnf
    k = len(h)
    m = h[0][0]
    total = m ** (k - 1)
    if total > budget:
        raise BudgetError(f"direct rho count needs {m}^{k - 1} residues")
    count = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        coords = []
        for _ in range(k - 1):
            idx, digit = np.divmod(idx, m)
            coords.append(digit)
        count += int(np.count_nonzero(contains_array(h, coords)))
    return DensityValue(Fraction(ideal.norm * count, total), "direct-count")


def rho_bound_ratio(ideal: Ideal) -> float:
    """rho(n) / N(n)^(1/k), bounded by a field constant."""
    k = len(ideal.hnf)
    return float(rho_ideal(ideal).value) / ideal.norm ** (1 / k)


# -- varrho: direct count ---------------------------------------------------


def _count_mod_prime_power_naive(field: FieldSpec, p: int, alpha: int) -> int:
    """#{x mod p^alpha : p^alpha | f(x)} by a full scan (test oracle)."""
    q = p**alpha
    k = field.k
    axes = np.arange(q, dtype=np.int64)
    grids = np.meshgrid(*([axes] * (k - 1)), indexing="ij")
    return int(np.count_nonzero(field.f_mod(grids, q) == 0))


def _normalized_primitive(k: int, p: int, alpha: int):
    """Primitive vectors mod p^alpha whose first unit coordinate equals 1.

    Yields numpy coordinate arrays, one block per position of that coordinate.
    """
    q = p**alpha
    for i in range(k - 1):
        before = np.arange(0, q, p, dtype=np.int64)
        after = np.arange(q, dtype=np.int64)
        axes = [before] * i + [np.array([1], dtype=np.int64)] + [after] * (k - 2 - i)
        yield np.meshgrid(*axes, indexing="ij")


def count_primitive_direct(field: FieldSpec, p: int, alpha: int) -> int:
    """Primitive solutions of p^alpha | f(x) mod p^alpha by scanning normalized vectors.

    Homogeneity lets every primitive solution be scaled by a unit so that its
    first unit coordinate is 1; the unit group acts freely, hence the factor
    phi(p^alpha).
    """
    if alpha == 0:
        return 1
    q = p**alpha
    k = field.k
    norm_count = 0
    for grids in _normalized_primitive(k, p, alpha):
        norm_count += int(np.count_nonzero(field.f_mod(grids, q) == 0))
    return (q - q // p) * norm_count


@lru_cache(maxsize=None)
def _count_prime_power(field: FieldSpec, p: int, alpha: int) -> int:
    if alpha == 0:
        return 1
    k = field.k
    beta = max(alpha - k, 0)
    # x = p*y: p^alpha | p^k f(y) iff p^beta | f(y), with y mod p^(alpha-1).
    nonprim = p ** ((alpha - 1 - beta) * (k - 1)) * _count_prime_power(field, p, beta)
    return count_primitive_direct(field, p, alpha) + nonprim


def varrho_count(field: FieldSpec, n: int, budget: int = DIRECT_BUDGET) -> int:
    """#{x in (Z/n)^(k-1) : n | f(x)} (multiplicative over prime powers by CRT)."""
    total = 1
    k = field.k
    for p, a in factorint(n).items():
        if (p**a) ** (k - 2) * (k - 1) > budget:
            raise BudgetError(f"direct count at {p}^{a} exceeds the budget; use the assembly route")
        total *= _count_prime_power(field, p, a)
    return total


def varrho_direct(field: FieldSpec, n: int, budget: int = DIRECT_BUDGET) -> DensityValue:
    """varrho(n) = n^(2-k) #{x mod n : n | f(x)} by counting.

    Args:
        field: The field whose incomplete norm form is used.
        n: Positive modulus.
        budget: Work budget per prime power.

    Returns:
        The exact density tagged ``direct-count``.

    Raises:
        BudgetError: when a prime power of n is too large to scan.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return DensityValue(Fraction(varrho_count(field, n, budget), n ** (field.k - 2)), "direct-count")


# -- varrho: assembly over ideals -------------------------------------------


def varrho_prime_power_assembled(arith: IdealArithmetic, p: int, alpha: int) -> Fraction:
    """varrho(p^alpha) = p^alpha * sum mu(n) rho(n) / N(n) over ideals above p."""
    if alpha == 0:
        return Fraction(1)
    mu = arith.mu_coefficients(p**alpha)
    total = Fraction(0)
    for ideal, c in mu.coeffs.items():
        total += c * rho_ideal(ideal).value / ideal.norm
    return p**alpha * total


def varrho_assembled(field_or_arith, n: int) -> DensityValue:
    """varrho(n) from mu_n and rho, assembled multiplicatively over prime powers.

    Args:
        field_or_arith: A :class:`FieldSpec` or its :class:`IdealArithmetic`.
        n: Positive integer.

    Returns:
        The exact density tagged ``multiplicative-assembly``.
    """
    arith = field_or_arith if isinstance(field_or_arith, IdealArithmetic) else arithmetic(field_or_arith)
    out = Fraction(1)
    for p, a in factorint(n).items():
        out *= varrho_prime_power_assembled(arith, p, a)
    return DensityValue(out, "multiplicative-assembly")


# -- varrho*: Hensel lifting ------------------------------------------------


def _valuation(n: int, p: int, cap: int) -> int:
    if n == 0:
        return cap
    v = 0
    while v < cap and n % p == 0:
        n //= p
        v += 1
    return v


def _hensel_classes(field: FieldSpec, pos: int, p: int, alpha: int, node_budget: int) -> int:
    """Solutions of f(x) == 0 mod p^alpha with x_pos = 1 and x_j == 0 mod p for j < pos.

    The free coordinates (all but ``pos``) range over Z/p^alpha.  A residue
    class xbar mod p^j on which the free gradient has valuation v < j is
    counted in closed form: writing x = xbar + p^j t, the polynomial
    f(x) / p^(j+v) is nonsingular mod p in t, so the class holds
    p^(v d) p^((alpha-j-v)(d-1)) solutions when alpha > j + v (d = k - 2 free
    variables).  Classes where the gradient still vanishes are refined one
    level.
    """
    k = field.k
    d = k - 2
    free = [i for i in range(k - 1) if i != pos]

    def point(t):
        x = [0] * (k - 1)
        x[pos] = 1
        for i, v in zip(free, t):
            x[i] = v
        return x

    ranges = [range(0, 1) if i < pos else range(p) for i in free]
    classes = [list(t) for t in itertools.product(*ranges)]
    total = 0
    j = 1
    lifts = list(itertools.product(range(p), repeat=d))
    while classes:
        q = p**j
        refine = []
        for t in classes:
            x = point(t)
            val = field.incomplete_norm(x)
            if val % p ** min(alpha, j):
                continue
            if j == alpha:
                total += 1
                continue
            grad = field.f_gradient(x)
            v = min(_valuation(grad[i], p, j) for i in free)
            if v >= j:
                refine.append(t)
                continue
            need = min(alpha, j + v)
            if val % p**need:
                continue
            if alpha <= j + v:
                total += p ** ((alpha - j) * d)
            else:
                total += p ** (v * d) * p ** ((alpha - j - v) * (d - 1))
        classes = []
        for t in refine:
            for s in lifts:
                classes.append([a + q * b for a, b in zip(t, s)])
        if len(classes) > node_budget:
            raise BudgetError("too many singular residue classes")
        j += 1
    return total


def varrho_star(field: FieldSpec, p: int, alpha: int, node_budget: int = 2 * 10**6) -> int:
    """Primitive solutions of p^alpha | f(x) in (Z/p^alpha)^(k-1) by Hensel lifting.

    Every primitive solution is a unit multiple of exactly one normalized
    solution (first coordinate prime to p equal to 1), so the count is
    phi(p^alpha) times the normalized count.  Normalized residues are lifted
    class by class: nonsingular classes (gradient valuation below the current
    level) are counted in closed form, singular ones are refined.

    Args:
        field: The field.
        p: A prime.
        alpha: Exponent, alpha >= 0.
        node_budget: Maximal number of singular residue classes tracked.

    Returns:
        The exact count (1 for alpha = 0).

    Raises:
        BudgetError: if the singular classes outgrow ``node_budget``.
    """
    if alpha == 0:
        return 1
    if not is_prime(p):
        raise ValueError("p must be prime")
    normalized = sum(_hensel_classes(field, pos, p, alpha, node_budget) for pos in range(field.k - 1))
    return (p**alpha - p ** (alpha - 1)) * normalized


def varrho_from_star(field: FieldSpec, p: int, alpha: int) -> int:
    """Total solution count mod p^alpha from primitive counts (scaling recursion)."""
    if alpha == 0:
        return 1
    k = field.k
    beta = max(alpha - k, 0)
    return varrho_star(field, p, alpha) + p ** ((alpha - 1 - beta) * (k - 1)) * varrho_from_star(field, p, beta)


# -- bounds -----------------------------------------------------------------


@dataclass
class DensityBoundReport:
    """Measured constants for the density bounds over a prime range."""

    prime_range: tuple[int, int]
    max_power_ratio: float
    max_power_ratio_at: tuple[int, int]
    max_split_deviation: float
    max_split_deviation_at: int
    max_nonsplit_ratio: float
    max_nonsplit_ratio_at: int
    split_below_k: bool
    all_below_p: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def check_density_bounds(field: FieldSpec, prime_range: Iterable[int] | tuple[int, int] = (2, 200)) -> DensityBoundReport:
    """Measure the constants in the stated density bounds.

    Computes max of varrho(p^l)/p^[l/k] for l <= 2k, of |varrho(p) - k| p^(1-1/k)
    over degree-one p, and of varrho(p) p^(1-2/k) over the remaining p.

    Args:
        field: The field.
        prime_range: ``(lo, hi)`` bounds for the primes examined.

    Returns:
        A :class:`DensityBoundReport`.
    """
    lo, hi = prime_range
    arith = arithmetic(field)
    k = field.k
    best_pow, best_pow_at = 0.0, (0, 0)
    best_split, best_split_at = 0.0, 0
    best_non, best_non_at = 0.0, 0
    split_below = True
    below_p = True
    for p in primes_up_to(hi):
        p = int(p)
        if p < lo:
            continue
        v1 = varrho_prime_power_assembled(arith, p, 1)
        below_p &= v1 < p
        if arith.is_degree_one(p):
            if arith.splitting_type(p)[0] == 1:
                split_below &= v1 < k
            dev = abs(float(v1) - k) * p ** (1 - 1 / k)
            if dev > best_split:
                best_split, best_split_at = dev, p
        else:
            r = float(v1) * p ** (1 - 2 / k)
            if r > best_non:
                best_non, best_non_at = r, p
        for ell in range(1, 2 * k + 1):
            v = varrho_prime_power_assembled(arith, p, ell)
            ratio = float(v) / p ** (ell // k)
            if ratio > best_pow:
                best_pow, best_pow_at = ratio, (p, ell)
    return DensityBoundReport(
        (lo, hi), best_pow, best_pow_at, best_split, best_split_at, best_non, best_non_at, bool(split_below), bool(below_p)
    )
