import pytest
from hypothesis import given, strategies as st

from normdiv.ideals import local_mu, star_sharp_flat_from


def test_splitting_types(cubic_arith, quartic_arith):
    assert cubic_arith.splitting_type(17) == (1, 1, 3)
    assert cubic_arith.splitting_type(2) == (1, 3, 1)
    assert cubic_arith.splitting_type(3) == (3, 1, 1)
    assert quartic_arith.splitting_type(17) == (1, 1, 4)
    assert quartic_arith.splitting_type(3) == (1, 2, 2)
    assert quartic_arith.splitting_type(2) == (4, 1, 1)
    for p in (5, 7, 11, 13, 19, 23, 29, 31, 37, 41, 43, 47):
        e, f, r = quartic_arith.splitting_type(p)
        assert e * f * r == 4
        assert f == {1: 1, 3: 2, 5: 2, 7: 2}[p % 8]


def test_prime_ideal_norms(any_field):
    from normdiv.ideals import arithmetic

    arith = arithmetic(any_field)
    for p in (2, 3, 5, 7, 17, 41):
        ps = arith.split_prime(p)
        prod = 1
        for P in ps:
            prod *= P.norm ** P.e
        assert prod == p**any_field.k


def test_a_K_counts(cubic_arith, quartic_arith):
    assert quartic_arith.a_K(9) == 2
    assert quartic_arith.a_K(3) == 0
    assert cubic_arith.a_K(17) == 3
    assert cubic_arith.a_K(8) == 1


def test_ideals_up_to_sorted_and_complete(cubic_arith):
    ideals = cubic_arith.ideals_up_to(500)
    assert len(ideals) == sum(cubic_arith.a_K(n) for n in range(1, 501))
    assert all(q.norm <= 500 for q in ideals)


def test_star_sharp_flat(cubic_arith):
    assert cubic_arith.star_sharp_flat(2) == (8, 1, 2)
    assert star_sharp_flat_from(12, lambda p: 1) == (12, 12, 1)


def test_local_mu_small_cases():
    assert local_mu(0, 1, 3) == {(0, 0, 0): 1}
    assert local_mu(1, 1, 1) == {(1,): 1}
    # a = 1, r = 2: [c1 + c2 >= 1] = mu(1,0) + mu(0,1) + mu(1,1) on the corners
    assert local_mu(1, 1, 2) == {(1, 0): 1, (0, 1): 1, (1, 1): -1}


@given(st.integers(0, 6), st.sampled_from([1, 2, 3]), st.integers(1, 3))
def test_local_mu_inverts_indicator(alpha, f, r):
    import itertools

    mu = local_mu(alpha, f, r)
    a = -(-alpha // f)
    for c in itertools.product(range(a + 2), repeat=r):
        total = sum(v for d, v in mu.items() if all(x <= y for x, y in zip(d, c)))
        assert total == int(sum(c) >= a)


@pytest.mark.parametrize("n", range(1, 61))
def test_mu_matches_bruteforce(cubic_arith, quartic_arith, n):
    for arith in (cubic_arith, quartic_arith):
        assert arith.mu_coefficients(n).coeffs == arith.mu_coefficients_bruteforce(n).coeffs


def test_ideal_algebra(cubic_arith):
    a = cubic_arith.ideals_of_norm(17)[0]
    b = cubic_arith.ideals_of_norm(8)[0]
    ab = a * b
    assert ab.norm == 17 * 8
    assert a.divides(ab) and b.divides(ab)
    assert ab / a == b
    with pytest.raises(ValueError):
        a / b


def test_principal_generators(cubic_arith, quartic_arith):
    P2 = quartic_arith.ideals_of_norm(2)[0]
    g = quartic_arith.principal_generator(P2)
    assert abs(quartic_arith.field.norm(g)) == 2
    assert quartic_arith.principal(g) == P2
    for q in cubic_arith.ideals_up_to(200):
        g = cubic_arith.principal_generator(q)
        assert cubic_arith.principal(g) == q


def test_membership_consistent(cubic_arith, cubic):
    q = cubic_arith.ideals_of_norm(17 * 19)[0]
    g = cubic_arith.principal_generator(q)
    for m in ((1, 0, 0), (2, -1, 3), (0, 5, 1)):
        assert q.contains(cubic.mul(g, m))
    assert not q.contains((1, 0, 0))
