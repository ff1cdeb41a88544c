import itertools
import math

from hypothesis import given, strategies as st

from normdiv.intlat import (det_bareiss, gram_det, hnf_columns, hnf_solve, integer_kernel, lll,
                            shortest_vector, xgcd)

small = st.integers(-30, 30)


@given(small, small)
def test_xgcd_bezout(a, b):
    g, s, t = xgcd(a, b)
    assert g == math.gcd(a, b)
    assert s * a + t * b == g


def test_det_bareiss_examples():
    assert det_bareiss([[2, 0], [0, 3]]) == 6
    assert det_bareiss([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3
    assert det_bareiss([[1, 2], [2, 4]]) == 0


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_bareiss_matches_leibniz(m):
    leibniz = 0
    for perm in itertools.permutations(range(3)):
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign = -sign
        leibniz += sign * m[0][perm[0]] * m[1][perm[1]] * m[2][perm[2]]
    assert det_bareiss(m) == leibniz


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=5))
def test_hnf_shape_and_membership(gens):
    full = [list(v) for v in gens] + [[7, 0, 0], [0, 11, 0], [0, 0, 13]]
    h = hnf_columns(full, 3)
    for j in range(3):
        assert h[j][j] > 0
        assert all(h[j][i] == 0 for i in range(j + 1, 3))
        assert all(0 <= h[j][i] < h[i][i] for i in range(j))
    for v in full:
        assert hnf_solve(h, v) is not None


def test_hnf_modulus_agrees():
    gens = [[6, 4, 2], [0, 2, 8], [2, 2, 2], [12, 0, 0], [0, 12, 0], [0, 0, 12]]
    assert hnf_columns(gens, 3) == hnf_columns(gens, 3, modulus=12)


def test_hnf_solve_rejects_outside():
    h = hnf_columns([[2, 0], [0, 2]], 2)
    assert hnf_solve(h, [1, 0]) is None
    assert hnf_solve(h, [4, -2]) == [2, -1]


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=4).filter(any))
def test_integer_kernel_basis(row):
    basis = integer_kernel(row)
    assert len(basis) == len(row) - 1
    for b in basis:
        assert sum(x * y for x, y in zip(row, b)) == 0
    # the kernel lattice is primitive: its covolume is |row| / gcd(row)
    g = math.gcd(*row)
    assert gram_det(basis) * g * g == sum(x * x for x in row)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_lll_preserves_lattice(basis):
    if det_bareiss(basis) == 0:
        return
    red = lll(basis)
    assert abs(det_bareiss(red)) == abs(det_bareiss(basis))
    for v in basis:
        assert hnf_solve(hnf_columns(red, 3), v) is not None


def test_shortest_vector_matches_search():
    basis = [[12, 5, 0], [7, 3, 1], [0, 0, 9]]
    best = min(
        sum(c * c for c in (a * basis[0][i] + b * basis[1][i] + c_ * basis[2][i] for i in range(3)))
        for a, b, c_ in itertools.product(range(-20, 21), repeat=3)
        if (a, b, c_) != (0, 0, 0)
    )
    v = shortest_vector(basis)
    assert sum(c * c for c in v) == best
    assert sum(c * c for c in shortest_vector([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 1
