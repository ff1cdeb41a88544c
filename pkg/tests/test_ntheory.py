from hypothesis import given, strategies as st

from normdiv.ntheory import divisors, factorint, is_prime, omega, primes_up_to, tau, tau_bruteforce


def test_primes_up_to():
    assert list(primes_up_to(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_up_to(10**5)) == 9592


@given(st.integers(1, 10**12))
def test_factorint_reconstructs(n):
    out = 1
    for p, a in factorint(n).items():
        assert is_prime(p)
        out *= p**a
    assert out == n


@given(st.integers(1, 2000), st.integers(1, 4))
def test_tau_matches_bruteforce(n, k):
    assert tau(k, n) == tau_bruteforce(k, n)


def test_tau_values():
    assert tau(3, 12) == 18
    assert tau(2, 360) == 24
    assert tau(4, 1) == 1


def test_divisors_and_omega():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert omega(360) == 3
