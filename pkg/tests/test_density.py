from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from normdiv.density import (
    BudgetError, _count_mod_prime_power_naive, check_density_bounds, count_primitive_direct, rho_direct,
    rho_ideal, varrho_assembled, varrho_direct, varrho_from_star, varrho_star,
)
from normdiv.field import builtin
from normdiv.ideals import arithmetic


def test_reference_values(cubic):
    assert varrho_direct(cubic, 17).value == Fraction(49, 17)
    assert varrho_direct(cubic, 2).value == Fraction(1, 2)
    assert varrho_star(cubic, 17, 1) == 48
    assert varrho_star(cubic, 2, 1) == 0


def test_rho_of_prime_above_2(cubic_arith):
    two = cubic_arith.rational(2)
    assert rho_ideal(two).value == 2


def test_rho_direct_matches_determinant(cubic_arith, quartic_arith):
    for arith in (cubic_arith, quartic_arith):
        checked = 0
        for q in arith.ideals_up_to(300):
            if q.hnf[0][0] ** (arith.field.k - 1) > 10**6:
                continue
            assert rho_direct(q, budget=10**6).value == rho_ideal(q).value
            checked += 1
        assert checked > 100


def test_rho_direct_budget(quartic_arith):
    big = quartic_arith.ideals_of_norm(17**4)[0]
    with pytest.raises(BudgetError):
        rho_direct(big, budget=10)


@given(st.integers(1, 200))
def test_varrho_routes_agree(n):
    for name in ("cubic", "quartic"):
        f = builtin(name)
        assert varrho_direct(f, n).value == varrho_assembled(f, n).value


def test_varrho_multiplicative(cubic):
    for m, n in ((4, 9), (8, 17), (5, 27)):
        assert varrho_direct(cubic, m * n).value == varrho_direct(cubic, m).value * varrho_direct(cubic, n).value


@pytest.mark.parametrize("p,alpha", [(2, 3), (3, 3), (5, 2), (7, 2), (17, 2)])
def test_counting_routes(cubic, p, alpha):
    naive = _count_mod_prime_power_naive(cubic, p, alpha)
    arith = arithmetic(cubic)
    assert naive == varrho_assembled(arith, p**alpha).value * p ** (alpha * (cubic.k - 2))
    assert varrho_from_star(cubic, p, alpha) == naive
    assert count_primitive_direct(cubic, p, alpha) == varrho_star(cubic, p, alpha)


@pytest.mark.parametrize("p", [2, 3, 5, 17])
def test_hensel_matches_assembly_quartic(quartic, p):
    for alpha in range(1, 5):
        assert varrho_from_star(quartic, p, alpha) == varrho_assembled(quartic, p**alpha).value * p ** (2 * alpha)


def test_density_bounds_cubic(cubic):
    rep = check_density_bounds(cubic, (2, 60))
    assert rep.all_below_p and rep.split_below_k
    assert rep.max_power_ratio < 20
