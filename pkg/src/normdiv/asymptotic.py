"""The Euler-product constant and the predicted main term.

The constant is ``C = prod_p E_p (1 - 1/p)^(k-1)`` with the local series
``E_p = sum_nu varrho(p^nu) tau_{k-1}(p^nu) / p^nu``.  Taken over p in
increasing order this product converges only conditionally (the degree-one
primes make each factor 1 + O(1/p)).  We therefore divide each factor by the
Euler factor of ``(zeta_K / zeta)^(k-1)`` at s = 1 and multiply by the
residue of zeta_K to the power k-1; the modified factors are
``1 + O(p^-sigma)`` with ``sigma = min(2 - 2/k, 3/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import mpmath

from normdiv.density import varrho_prime_power_assembled
from normdiv.field import FieldSpec
from normdiv.ideals import IdealArithmetic, arithmetic
from normdiv.ntheory import primes_up_to

PRECISION = 40
TERM_TOLERANCE = 1e-15
MAX_DEPTH = 120
# Chebyshev-type bound pi(t) <= PI_CONSTANT * t / log t for t > 1.
PI_CONSTANT = 1.25506


def convergence_exponent(k: int) -> float:
    """sigma = min(2 - 2/k, 3/2): decay exponent of the accelerated factors."""
    return min(2 - 2 / k, 1.5)


def residue_coefficient(k: int, j: int) -> Fraction:
    """(k - j)^(k-1) / (k-1)!, the residue weight of the j-th term."""
    if not 1 <= j <= k - 1:
        raise ValueError("need 1 <= j <= k-1")
    return Fraction((k - j) ** (k - 1), math.factorial(k - 1))


def binomial_identity_check(k: int) -> bool:
    """sum_{j=1}^{k-1} (-1)^(j-1) C(k,j) (k-j)^(k-1) == k^(k-1), in exact integers."""
    total = sum((-1) ** (j - 1) * math.comb(k, j) * (k - j) ** (k - 1) for j in range(1, k))
    return total == k ** (k - 1)


def term_bound(p: int, nu: int, k: int, c_pow: float) -> float:
    """Bound c * tau_{k-1}(p^nu) * p^(nu//k - nu) for a single series term."""
    return c_pow * math.comb(nu + k - 2, k - 2) * float(p) ** (nu // k - nu)


def series_tail(p: int, depth: int, k: int, c_pow: float) -> float:
    """Bound for sum_{nu > depth} of the series terms.

    The terms decrease geometrically once the polynomial factor is dominated,
    so summing 400 further terms and closing with a geometric remainder is
    rigorous given the constant.
    """
    total = 0.0
    last = 0.0
    for nu in range(depth + 1, depth + 401):
        last = term_bound(p, nu, k, c_pow)
        total += last
    ratio = term_bound(p, depth + 401, k, c_pow) / last if last else 0.0
    if ratio < 1:
        total += last * ratio / (1 - ratio)
    return total


def choose_depth(p: int, k: int, c_pow: float, tol: float = TERM_TOLERANCE, max_depth: int = MAX_DEPTH) -> tuple[int, bool]:
    """Smallest depth whose tail bound is below ``tol`` (capped at ``max_depth``).

    Returns:
        ``(depth, limited)`` where ``limited`` is True when the cap was hit.
    """
    for depth in range(1, max_depth + 1):
        if series_tail(p, depth, k, c_pow) < tol:
            return depth, False
    return max_depth, True


_DENSITY_CACHE: dict[tuple[int, int], list[Fraction]] = {}


def local_densities(arith: IdealArithmetic, p: int, depth: int) -> list[Fraction]:
    """[varrho(p^0), ..., varrho(p^depth)] by assembly over ideals (cached)."""
    key = (id(arith), p)
    have = _DENSITY_CACHE.setdefault(key, [Fraction(1)])
    for nu in range(len(have), depth + 1):
        have.append(varrho_prime_power_assembled(arith, p, nu))
    return have[: depth + 1]


@dataclass(frozen=True)
class EulerFactor:
    """One local factor.

    Attributes:
        p: The prime.
        depth: Largest nu included in the series.
        series: Truncated ``sum_nu varrho(p^nu) tau_{k-1}(p^nu) / p^nu`` (exact).
        tail: Bound for the omitted terms of the series.
        value: ``series * (1 - 1/p)^(k-1)``.
        accelerated: ``series * prod_{P | p} (1 - N(P)^-1)^(k-1)``.
        depth_limited: The depth cap was reached before the tolerance.
    """

    p: int
    depth: int
    series: Fraction
    tail: float
    value: mpmath.mpf
    accelerated: mpmath.mpf
    depth_limited: bool = False


def euler_factor_from_densities(densities: Sequence[Fraction], p: int, k: int,
                                prime_norms: Sequence[int] = ()) -> tuple[Fraction, mpmath.mpf, mpmath.mpf]:
    """Series, factor and accelerated factor from given local densities.

    Args:
        densities: varrho(p^nu) for nu = 0..depth.
        p: The prime.
        k: Field degree.
        prime_norms: Norms of the prime ideals above p (for the accelerated factor).

    Returns:
        ``(series, value, accelerated)``.
    """
    series = sum(
        (Fraction(d) * math.comb(nu + k - 2, k - 2) / Fraction(p) ** nu for nu, d in enumerate(densities)),
        Fraction(0),
    )
    with mpmath.workprec(int(PRECISION * 3.33) + 8):
        s = mpmath.mpf(series.numerator) / series.denominator
        value = s * (1 - mpmath.mpf(1) / p) ** (k - 1)
        acc = s
        for q in prime_norms:
            acc *= (1 - mpmath.mpf(1) / q) ** (k - 1)
    return series, value, acc


def euler_factor(field: FieldSpec, p: int, c_pow: float = 20.0, tol: float = TERM_TOLERANCE,
                 max_depth: int = MAX_DEPTH) -> EulerFactor:
    """The local factor at p, truncated where the term bound drops below ``tol``.

    Args:
        field: The field.
        p: A prime.
        c_pow: Constant in varrho(p^nu) <= c_pow p^[nu/k] (a measured value;
            see :func:`normdiv.density.check_density_bounds`).
        tol: Target bound for the omitted part of the series.
        max_depth: Depth cap.

    Returns:
        An :class:`EulerFactor`.
    """
    arith = arithmetic(field)
    k = field.k
    depth, limited = choose_depth(p, k, c_pow, tol, max_depth)
    dens = local_densities(arith, p, depth)
    norms = [P.norm for P in arith.split_prime(p)]
    series, value, acc = euler_factor_from_densities(dens, p, k, norms)
    return EulerFactor(p, depth, series, series_tail(p, depth, k, c_pow), value, acc, limited)


def regulator_mp(field: FieldSpec) -> mpmath.mpf:
    """Regulator at the field's working precision (mpmath).

    Same convention as :attr:`FieldSpec.regulator`: one row per fundamental
    unit, one column per archimedean place except the last, complex places
    weighted by 2.
    """
    r = len(field.units)
    if r == 0:
        return mpmath.mpf(1)
    with mpmath.workprec(field.precision + 32):
        places, seen = [], set()
        for i, t in enumerate(field.conjugates):
            if t.imag == 0:
                places.append((i, 1))
            else:
                key = (round(float(t.real), 12), round(abs(float(t.imag)), 12))
                if key not in seen:
                    seen.add(key)
                    places.append((i, 2))
        logs = [[mpmath.log(abs(v)) for v in field.embeddings(u)] for u in field.units]
        m = mpmath.matrix([[w * logs[u][i] for (i, w) in places[:r]] for u in range(r)])
        return abs(mpmath.det(m))


def dedekind_residue(field: FieldSpec) -> mpmath.mpf:
    """Residue of zeta_K at s = 1 for class number one: 2^r1 (2 pi)^r2 R / (w sqrt|d|)."""
    r1, r2 = field.signature
    with mpmath.workdps(PRECISION):
        return (mpmath.mpf(2) ** r1 * (2 * mpmath.pi) ** r2 * regulator_mp(field)
                / (field.torsion * mpmath.sqrt(abs(field.discriminant))))


def prime_tail_sum(P0: float, sigma: float) -> float:
    """Upper bound for sum_{p > P0} p^-sigma (sigma > 1) by partial summation."""
    return PI_CONSTANT * sigma / ((sigma - 1) * math.log(P0)) * P0 ** (1 - sigma)


@dataclass
class EulerProductEstimate:
    """The constant C from primes up to P0.

    Attributes:
        P0: Prime cutoff.
        value: C from the accelerated product.
        tail_bound: Empirical-constant bound for |C - value| from p > P0 and
            from the truncated series.
        naive_value: The plain product of the factors over p <= P0.
        residue: Residue of zeta_K at 1.
        c_measured: max |log H_p| p^sigma over sqrt(P0) < p <= P0.
        sigma: Convergence exponent used in the tail.
        depths: Series depth per prime.
        depth_limited: Primes where the depth cap was reached.
    """

    P0: int
    value: mpmath.mpf
    tail_bound: float
    naive_value: mpmath.mpf
    residue: mpmath.mpf
    c_measured: float
    sigma: float
    depths: dict[int, int] = dc_field(repr=False)
    depth_limited: list[int] = dc_field(default_factory=list)
    provenance: str = "truncated; empirical-constant bound"

    def as_dict(self) -> dict:
        return {
            "P0": self.P0,
            "value": mpmath.nstr(self.value, 20),
            "tail_bound": self.tail_bound,
            "naive_value": mpmath.nstr(self.naive_value, 20),
            "residue": mpmath.nstr(self.residue, 20),
            "c_measured": self.c_measured,
            "sigma": self.sigma,
            "max_depth": max(self.depths.values()) if self.depths else 0,
            "depth_limited": self.depth_limited,
            "provenance": self.provenance,
        }


def constant_C(field: FieldSpec, P0: int = 1000, c_pow: float = 20.0) -> EulerProductEstimate:
    """Evaluate C from the primes p <= P0 with a tail bound.

    The tail over p > P0 is bounded by ``c * sum_{p > P0} p^-sigma`` where c is
    the largest ``|log H_p| p^sigma`` seen for sqrt(P0) < p <= P0.  This
    constant is measured, not proved, so the bound is labelled accordingly.

    Args:
        field: The field.
        P0: Prime cutoff (at least 100).
        c_pow: Density constant used to truncate the local series.

    Returns:
        An :class:`EulerProductEstimate`.
    """
    if P0 < 100:
        raise ValueError("P0 must be at least 100")
    k = field.k
    sigma = convergence_exponent(k)
    res = dedekind_residue(field)
    depths: dict[int, int] = {}
    limited = []
    series_err = 0.0
    c_meas = 0.0
    with mpmath.workdps(PRECISION):
        acc = mpmath.mpf(1)
        naive = mpmath.mpf(1)
        for p in primes_up_to(P0):
            p = int(p)
            fac = euler_factor(field, p, c_pow)
            depths[p] = fac.depth
            if fac.depth_limited:
                limited.append(p)
            acc *= fac.accelerated
            naive *= fac.value
            series_err += fac.tail / float(fac.series)
            if p * p > P0:
                c_meas = max(c_meas, abs(float(mpmath.log(fac.accelerated))) * p**sigma)
        value = res ** (k - 1) * acc
        tail_log = c_meas * prime_tail_sum(P0, sigma) + series_err
        tail = float(abs(value)) * math.expm1(tail_log)
    return EulerProductEstimate(P0, value, tail, naive, res, c_meas, sigma, depths, limited)


def main_term(volume: float, X: float, C, k: int) -> float:
    """C vol(R) / (k-1)! X^(k-1) (log X^k)^(k-1)."""
    if X <= 1:
        return 0.0
    return float(C) * volume / math.factorial(k - 1) * X ** (k - 1) * (k * math.log(X)) ** (k - 1)
