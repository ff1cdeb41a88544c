import math
from fractions import Fraction

import mpmath
import pytest

from normdiv import asymptotic as A
from normdiv.field import builtin


@pytest.mark.parametrize("k", range(3, 9))
def test_binomial_identity(k):
    assert A.binomial_identity_check(k)


def test_binomial_identity_by_hand():
    assert 4 * 27 - 6 * 8 + 4 * 1 == 64 == 4**3
    assert 3 * 4 - 3 * 1 == 9 == 3**2
    k = 8
    assert sum((-1) ** (j - 1) * math.comb(k, j) * (k - j) ** (k - 1) for j in range(1, k)) == 8**7


def test_residue_coefficients():
    assert A.residue_coefficient(3, 1) == Fraction(4, 2)
    assert A.residue_coefficient(4, 3) == Fraction(1, 6)
    total = sum((-1) ** (j - 1) * math.comb(4, j) * A.residue_coefficient(4, j) for j in range(1, 4))
    assert total == Fraction(4**3, math.factorial(3))
    with pytest.raises(ValueError):
        A.residue_coefficient(3, 3)


def test_degenerate_series():
    series, value, acc = A.euler_factor_from_densities([Fraction(1)], 5, 3)
    assert series == 1
    assert value == pytest.approx((1 - 1 / 5) ** 2)


def test_factor_at_split_and_inert(cubic):
    f17 = A.euler_factor(cubic, 17)
    f2 = A.euler_factor(cubic, 2)
    dens17 = A.local_densities(__import__("normdiv.ideals", fromlist=["x"]).arithmetic(cubic), 17, 2)
    assert dens17[1] == Fraction(49, 17)
    assert f17.series > 1 + 2 * Fraction(49, 17) / 17
    assert f2.series > 1 + 2 * Fraction(1, 2) / 2
    assert f17.tail < 1e-15 and not f17.depth_limited
    for fac in (f2, f17):
        assert fac.value > 0 and fac.accelerated > 0
        ratio = fac.value / (mpmath.mpf(fac.series.numerator) / fac.series.denominator * (1 - mpmath.mpf(1) / fac.p) ** 2)
        assert ratio == pytest.approx(1, abs=1e-14)


def test_dedekind_residue(cubic, quartic):
    # 2^3 R / (2 * 9) and (2 pi)^2 R / (8 * 16)
    assert float(A.dedekind_residue(cubic)) == pytest.approx(8 * cubic.regulator / 18, rel=1e-12)
    assert float(A.dedekind_residue(quartic)) == pytest.approx(4 * math.pi**2 * quartic.regulator / 128, rel=1e-12)


def test_constant_pinned_cubic(cubic):
    est = A.constant_C(cubic, 1000)
    assert mpmath.nstr(est.value, 12) == "1.27241180235"
    assert est.value > 0 and est.tail_bound > 0
    assert abs(est.value - est.naive_value) < 0.05


def test_constant_requires_cutoff(cubic):
    with pytest.raises(ValueError):
        A.constant_C(cubic, 50)


def test_prime_tail_sum_is_upper_bound():
    from normdiv.ntheory import primes_up_to

    ps = primes_up_to(10**6)
    partial = sum(float(p) ** -1.5 for p in ps if p > 1000)
    assert partial <= A.prime_tail_sum(1000, 1.5)


def test_main_term_edges():
    assert A.main_term(0.25, 1, 1.3, 3) == 0
    X = 10**6
    r = A.main_term(0.25, 2 * X, 1.3, 3) / A.main_term(0.25, X, 1.3, 3)
    assert r == pytest.approx(4 * (math.log(2 * X) / math.log(X)) ** 2, rel=1e-12)
    # the logarithmic factor approaches 1 slowly: within 5% of 2^(k-1) only near X = 10^30
    X = 10.0**30
    assert A.main_term(0.25, 2 * X, 1.3, 3) / A.main_term(0.25, X, 1.3, 3) == pytest.approx(4, rel=0.05)
