from hypothesis import given, strategies as st

from normdiv import polymod


def _expand(factors, p):
    out = [1]
    for g, m in factors:
        for _ in range(m):
            out = polymod.mul(out, g, p)
    return out


@given(st.sampled_from([2, 3, 5, 7, 17, 41]), st.lists(st.integers(0, 40), min_size=2, max_size=6))
def test_factorization_multiplies_back(p, coeffs):
    a = polymod.monic(polymod.trim(polymod.reduce(coeffs + [1], p)), p)
    factors = polymod.factor(a, p)
    assert _expand(factors, p) == a


def test_known_splittings():
    # x^3 - 3x - 1 splits completely mod 17 and is irreducible mod 2
    assert polymod.roots([-1, -3, 0, 1], 17) == [3, 4, 10]
    assert [len(g) - 1 for g, _ in polymod.factor([-1, -3, 0, 1], 2)] == [3]
    # x^4 + 1 mod 3 splits into two quadratics
    assert [len(g) - 1 for g, _ in polymod.factor([1, 0, 0, 0, 1], 3)] == [2, 2]


def test_roots_are_roots():
    for p in (7, 11, 13, 97):
        for r in polymod.roots([-1, -3, 0, 1], p):
            assert polymod.evaluate([-1, -3, 0, 1], r, p) == 0
