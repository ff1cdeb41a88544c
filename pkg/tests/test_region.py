from fractions import Fraction

import pytest

from normdiv.region import (Region, VolumeBudgetError, default_region, f_interval, region_from_box, region_volume,
                            region_volume_quadrature)


def test_default_box(cubic, quartic):
    r = default_region(cubic)
    assert r.box == ((Fraction(1, 2), Fraction(3, 2)), (Fraction(-1, 2), Fraction(1, 2)))
    assert default_region(quartic).dim == 3


def test_exact_membership(cubic_region):
    r = cubic_region
    assert r.contains((10, 0), 10)  # f = 1000 = X^3
    assert not r.contains((13, 0), 10)  # f = 2197 > 2 X^3
    assert not r.contains((10, 6), 10)  # outside the box


def test_cubic_volume_matches_quadrature(cubic_region):
    est = region_volume(cubic_region, tol=1e-4)
    quad = region_volume_quadrature(cubic_region)
    assert est.inner <= quad <= est.outer
    assert est.value == pytest.approx(0.24323, abs=2e-4)


def test_volume_enclosure_is_monotone(cubic_region):
    coarse = region_volume(cubic_region, tol=1e-2)
    fine = region_volume(cubic_region, tol=1e-4)
    assert coarse.inner <= fine.inner <= fine.outer <= coarse.outer


def test_volume_budget(cubic_region):
    with pytest.raises(VolumeBudgetError):
        region_volume(cubic_region, tol=1e-9, cell_budget=1000)


def test_interval_encloses_samples(cubic):
    import numpy as np

    rng = np.random.default_rng(1)
    lo = rng.uniform(-1, 1, size=(50, 2))
    hi = lo + rng.uniform(0, 0.3, size=(50, 2))
    flo, fhi = f_interval(cubic, lo, hi)
    for t in np.linspace(0, 1, 5):
        for s in np.linspace(0, 1, 5):
            x = lo + (hi - lo) * np.array([t, s])
            v = x[:, 0] ** 3 - 3 * x[:, 0] * x[:, 1] ** 2 + x[:, 1] ** 3
            assert np.all(flo - 1e-12 <= v) and np.all(v <= fhi + 1e-12)


def test_empty_region(cubic):
    r = region_from_box(cubic, [[-1, -0.5], [-0.1, 0.1]])  # f < 0 there
    assert region_volume(r, tol=1e-3).value == pytest.approx(0, abs=1e-3)


def test_bad_box(cubic):
    with pytest.raises(ValueError):
        Region(cubic, ((1, 0), (0, 1)))
