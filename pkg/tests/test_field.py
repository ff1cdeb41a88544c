import dataclasses

import pytest
from hypothesis import given, strategies as st

from normdiv.field import FieldSpec, builtin, builtin_names, load_field, poly_discriminant, verify_field

coords3 = st.lists(st.integers(-20, 20), min_size=3, max_size=3)
coords4 = st.lists(st.integers(-12, 12), min_size=4, max_size=4)


def test_builtins_verify():
    for name in builtin_names():
        checks = verify_field(builtin(name))
        assert all(checks.values()), checks


def test_aliases(cubic, quartic):
    assert load_field("cubic") is cubic
    assert builtin("zeta8") is quartic
    assert cubic.k == 3 and quartic.k == 4


def test_field_invariants(cubic, quartic):
    assert cubic.discriminant == 81 and quartic.discriminant == 256
    assert poly_discriminant(cubic.minpoly) == 81
    assert cubic.signature == (3, 0) and quartic.signature == (0, 2)
    assert len(cubic.automorphisms) == 3 and len(quartic.automorphisms) == 4
    assert cubic.regulator == pytest.approx(0.849287450646, abs=1e-10)
    assert quartic.regulator == pytest.approx(1.762747174039, abs=1e-10)


@given(coords3, coords3)
def test_norm_multiplicative_cubic(x, y):
    f = builtin("cubic")
    assert f.norm(f.mul(x, y)) == f.norm(x) * f.norm(y)


@given(coords4, coords4)
def test_norm_multiplicative_quartic(x, y):
    f = builtin("quartic")
    assert f.norm(f.mul(x, y)) == f.norm(x) * f.norm(y)


def test_incomplete_form_values(cubic, quartic):
    assert cubic.incomplete_norm((1, 0)) == 1
    assert quartic.incomplete_norm((1, 0, 0)) == 1
    # x1^3 - 3 x1 x2^2 + x2^3
    assert cubic.incomplete_norm((2, 1)) == 8 - 6 + 1
    # (x1^2 - 2 x2^2)^2 + x3^2 (2 x1^2 + 4 x2^2 + x3^2)
    assert quartic.incomplete_norm((1, 1, 1)) == 1 + 7


@given(st.lists(st.integers(-50, 50), min_size=3, max_size=3))
def test_quartic_form_even_in_last_two(x):
    f = builtin("quartic")
    a, b, c = x
    v = f.incomplete_norm((a, b, c))
    assert v == f.incomplete_norm((a, -b, c)) == f.incomplete_norm((a, b, -c))


@given(coords3)
def test_f_array_matches_scalar(x):
    import numpy as np

    f = builtin("cubic")
    arr = f.f_array([np.array([x[0]]), np.array([x[1]])], 20)
    assert int(arr[0]) == f.incomplete_norm(x[:2])


def test_units_have_norm_pm1(any_field):
    for u in any_field.units:
        assert abs(any_field.norm(u)) == 1


def test_balance_generator_keeps_ideal(cubic):
    g = (5, 3, 1)
    b = cubic.balance_generator(g)
    assert abs(cubic.norm(b)) == abs(cubic.norm(g))
    assert cubic.spread(b) <= cubic.spread(g) + 1e-9


def test_roundtrip_dump(tmp_path, cubic):
    path = tmp_path / "f.json"
    cubic.dump(path)
    assert FieldSpec.load(path) == cubic


def test_corrupted_data_is_detected(cubic):
    d = cubic.to_dict()
    d["discriminant"] = 82
    bad = FieldSpec.from_dict(d)
    assert not verify_field(bad)["discriminant"]
    t = [[list(r) for r in m] for m in cubic.tensor]
    t[1][1][0] += 1
    t[1][1] = [x for x in t[1][1]]
    try:
        bad2 = dataclasses.replace(cubic, tensor=tuple(tuple(tuple(r) for r in m) for m in t))
    except ValueError:
        return
    assert not all(verify_field(bad2).values())
