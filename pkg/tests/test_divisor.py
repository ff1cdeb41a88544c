import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from normdiv import divisor
from normdiv.field import builtin
from normdiv.ntheory import tau
from normdiv.region import default_region

# Exact M(R_X) on the built-in regions, computed once and kept as regression values.
CUBIC_M = {50: 49882, 100: 268922, 200: 1410352, 400: 7121960}
QUARTIC_M = {30: 5079676, 60: 64797948, 100: 393078577}


@given(st.integers(1, 10**12), st.integers(0, 3000), st.sampled_from([2, 3, 4]))
def test_sieve_window_matches_oracle(A, width, k):
    w = divisor.sieve_window(A, A + width, (k,))
    vals = np.arange(A, A + width + 1, dtype=np.int64)
    assert np.array_equal(w.taus[k], divisor.tau_values(vals, k))


def test_sieve_window_small():
    w = divisor.sieve_window(1, 30, (2, 3))
    assert [w.tau(2, n) for n in range(1, 13)] == [tau(2, n) for n in range(1, 13)]
    assert w.tau(3, 12) == 18
    assert w.factorization(24) == {2: 3, 3: 1}
    assert w.omega[29] == 3  # 30 = 2 3 5


def test_sieve_budget():
    with pytest.raises(divisor.SieveBudgetError):
        divisor.sieve_window(1, 100, segment_budget=10)


def test_tau_lookup_scattered():
    vals = np.array([10**8 + 7, 12, 1, 2**20, 3**15, 10**8 + 7], dtype=np.int64)
    out = divisor.tau_lookup(vals, 3, segment=2**10)
    assert out.tolist() == [tau(3, int(v)) for v in vals]


@given(st.integers(1, 5000), st.integers(1, 200), st.sampled_from([2, 3, 4]))
def test_hyperbola_decomposition_exact(n, y, k):
    assert divisor.hyperbola_decompose(n, y, k).holds


def test_hyperbola_trivial_case():
    d = divisor.hyperbola_decompose(1, 10, 3)
    assert d.all_small == 1 and d.terms == (0, 0, 0) and d.holds


def test_hyperbola_table_matches_single():
    t = divisor.hyperbola_table(3000, 17, 3)
    assert np.array_equal(t["assembled"], t["tau"])
    for n in (1, 360, 2048, 2999):
        d = divisor.hyperbola_decompose(n, 17, 3)
        assert t["S0"][n] == d.all_small
        assert tuple(t[f"T{j}"][n] for j in (1, 2, 3)) == d.terms


def test_m_exact_regression_cubic():
    region = default_region(builtin("cubic"))
    for X in (50, 100, 200):
        assert divisor.M_exact(region, X) == CUBIC_M[X]


def test_m_exact_matches_trial_division(cubic_region):
    vals = divisor.region_values(cubic_region, 50)
    assert divisor.M_exact(cubic_region, 50) == int(divisor.tau_values(vals, 3).sum())


def test_parallel_equals_serial(cubic_region):
    a = divisor.M_exact(cubic_region, 100, threads=1)
    b = divisor.M_exact(cubic_region, 100, threads=4)
    assert a == b == CUBIC_M[100]


def test_m_exact_quartic_small():
    region = default_region(builtin("quartic"))
    assert divisor.M_exact(region, 30) == QUARTIC_M[30]


@pytest.mark.parametrize("X,delta", [(10, 2), (20, 2), (20, 3), (30, 4)])
def test_sharp_decomposition_reassembles(cubic_region, X, delta):
    sd = divisor.sharp_decomposition(cubic_region, X, delta)
    assert sd.holds
    assert sd.total == divisor.M_exact(cubic_region, X)


def test_sharp_decomposition_quartic():
    region = default_region(builtin("quartic"))
    sd = divisor.sharp_decomposition(region, 8, 2)
    assert sd.holds


def test_sharp_terms_single_value():
    st_ = divisor.sharp_terms(8000, 20, 2, 3)
    assert st_.all_small + sum((-1) ** (j - 1) * math.comb(3, j) * (m - d)
                               for j, (m, d) in enumerate(zip(st_.M, st_.D), 1)) == st_.tau


def test_E_regression_and_monotone(cubic_region):
    # the summation range X^(k-1)/Delta <= n <= 2 X^(k-1) widens as Delta grows
    e2 = divisor.E_empirical(cubic_region, 20, 2)
    assert e2 == 777
    assert divisor.E_empirical(cubic_region, 20, 1) <= e2 <= divisor.E_empirical(cubic_region, 20, 8)


def test_Mj_regression(cubic_region):
    assert divisor.Mj_empirical(cubic_region, 20, 2, 1) == 1904
    assert divisor.Mj_empirical(cubic_region, 20, 2, 2) == 288
    with pytest.raises(ValueError):
        divisor.Mj_empirical(cubic_region, 20, 2, 3)


def test_empty_region_sums(cubic):
    from normdiv.region import region_from_box

    empty = region_from_box(cubic, [[-1, -0.5], [-0.1, 0.1]])
    assert divisor.M_exact(empty, 20) == 0
    assert divisor.E_empirical(empty, 20, 2) == 0


@pytest.mark.parametrize("spec", ["corollary", "majorant", "one"])
def test_wolke_matches_bruteforce(spec):
    for name, V in (("cubic", 5), ("quartic", 3)):
        f = builtin(name)
        assert divisor.wolke_average(f, V, spec).total == divisor.wolke_bruteforce(f, V, spec)


def test_wolke_trivial_cases(cubic):
    res = divisor.wolke_average(cubic, 40, "one")
    assert res.total == 81**2 - 1 == res.points
    assert divisor.wolke_average(cubic, 0).total == 0
    ratios = [divisor.wolke_average(cubic, V, "one").ratio for V in (8, 64)]
    assert ratios[1] < ratios[0]


def test_corollary_F_values():
    F = divisor.corollary_F(3)
    assert F(17, 1, True) == 3 and F(2, 1, False) == 0
    assert F(2, 2, False) == tau(3, 4)
    T = divisor.majorant_F(3)
    assert T(5, 2, False) == 3**4 * 3
    with pytest.raises(ValueError):
        divisor.resolve_F("nope", 3)
