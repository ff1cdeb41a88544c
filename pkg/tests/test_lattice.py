import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from normdiv.density import rho_ideal
from normdiv.field import builtin
from normdiv.lattice import (
    EnumerationBudgetError, count_bruteforce, count_exact, count_points, enumerate_hnf, error_envelope,
    ideal_sublattice, multiplier_lattice,
)


@given(st.lists(st.integers(-9, 9), min_size=3, max_size=3).filter(any))
def test_multiplier_lattice_identities(g):
    from normdiv.ideals import arithmetic

    f = builtin("cubic")
    lb = multiplier_lattice(f, g)
    assert len(lb.vectors) == 2
    for v in lb.vectors:
        assert f.mul(g, v)[-1] == 0
    rho = rho_ideal(arithmetic(f).principal(g)).value
    assert lb.det * rho == abs(f.norm(g))
    assert lb.hadamard_ratio() >= 1 - 1e-12
    assert lb.domination_constant() >= 1 - 1e-9


def test_reduction_keeps_lattice(quartic):
    g = (3, 1, -2, 5)
    raw = multiplier_lattice(quartic, g, reduce=False)
    red = multiplier_lattice(quartic, g)
    assert raw.gram_det == red.gram_det
    assert red.shortest_norm <= min(raw.norms) + 1e-9


def test_enumerate_hnf_matches_scan():
    cols = [[3, 0, 0], [1, 2, 0], [2, 1, 5]]
    ranges = [(-4, 6), (-3, 3), (-5, 9)]
    got = set()
    for xs in enumerate_hnf(cols, ranges, chunk=7):
        got.update(zip(*(x.tolist() for x in xs)))
    want = set()
    for c in itertools.product(range(-20, 21), repeat=3):
        x = tuple(sum(c[j] * cols[j][i] for j in range(3)) for i in range(3))
        if all(lo <= xi <= hi for xi, (lo, hi) in zip(x, ranges)):
            want.add(x)
    assert got == want


def test_enumeration_budget():
    with pytest.raises(EnumerationBudgetError):
        list(enumerate_hnf([[1, 0], [0, 1]], [(0, 100), (0, 100)], budget=50))


@pytest.mark.parametrize("name", ["cubic", "quartic"])
def test_counts_match_bruteforce(name):
    from normdiv.ideals import arithmetic
    from normdiv.region import default_region

    f = builtin(name)
    arith = arithmetic(f)
    region = default_region(f)
    rng = random.Random(5)
    ideals = arith.ideals_up_to(400)
    for q in rng.sample(ideals, 8):
        for X in (7, 11):
            assert count_points(q, region, X) == count_bruteforce(q, region, X)


def test_unit_ideal_counts(cubic_arith, cubic_region):
    one = cubic_arith.unit_ideal()
    counts = [count_points(one, cubic_region, X) for X in (50, 100, 200, 400)]
    assert counts == [619, 2452, 9770, 38999]


def test_count_result_fields(cubic_arith, cubic_region):
    q = cubic_arith.ideals_of_norm(17)[0]
    res = count_exact(q, cubic_region, 100)
    assert res.density == rho_ideal(q).value / 17
    assert res.main == pytest.approx(float(res.density) * res.volume * 100**2)
    assert res.calibration == pytest.approx(abs(res.count - res.main) / res.envelope)


def test_error_envelope():
    env, env1 = error_envelope(3, 8, 2.0, 10)
    t = 10 / (2.0 * 8 ** (1 / 3))
    assert env == pytest.approx(1 + t) and env1 == pytest.approx(t)
    env, env1 = error_envelope(4, 16, 1.0, 4)
    assert env1 == pytest.approx(2 + 4)


def test_sublattice_triangular(quartic_arith):
    q = quartic_arith.ideals_of_norm(17 * 9)[0]
    cols = ideal_sublattice(q)
    assert all(cols[j][i] == 0 for j in range(3) for i in range(j + 1, 3))
    # its points are exactly the ideal's points with vanishing last coordinate
    for c in itertools.product(range(-2, 3), repeat=3):
        x = [sum(c[j] * cols[j][i] for j in range(3)) for i in range(3)]
        assert q.contains(x + [0])
