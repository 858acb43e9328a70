from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import genus2_closed_form, line_class_walk
from wplbraid.errors import MalformedInput
from wplbraid.ktheory import lattice_dump, lattice_for, lvec, vadd
from wplbraid.linalg import bareiss_det
from wplbraid.weights import canonical_element, dualizing_element, lv_scale, lv_zero, normal_form


def _rand_class(rng, n, r=4):
    return tuple(rng.randint(-r, r) for _ in range(n))


def _rand_lvec(rng, lat, r=6):
    return normal_form(rng.randint(-r, r), [rng.randint(-r, r) for _ in lat.w.weights], lat.w)


def test_gram_examples():
    assert lattice_for((2, 2)).gram == ((1, 1, 1, 2), (0, 1, 0, 1), (0, 0, 1, 1), (0, 0, 0, 1))
    assert lattice_for(()).gram == ((1, 2), (0, 1))


def test_gram_is_upper_unipotent(any_lat):
    g = any_lat.gram
    for i in range(any_lat.n):
        assert g[i][i] == 1
        for j in range(i):
            assert g[i][j] == 0


def test_functionals(any_lat):
    lat = any_lat
    assert all(lat.rank_of(lat.basis(k)) == 1 for k in range(lat.n))
    assert lat.degree_of(lat.basis(0)) == 0
    assert lat.degree_of(lat.basis(lat.n - 1)) == lat.p
    with pytest.raises(MalformedInput):
        lat.euler_form((1,), (1,))


def test_line_class_examples():
    lat = lattice_for((2, 2))
    assert lat.line_class(lv_zero(lat.w)) == lat.basis(0)
    assert lat.line_class(canonical_element(lat.w)) == lat.basis(3)
    assert lat.line_class(lvec(lat, 0, 1, 1)) == (-1, 1, 1, 0)


def test_line_class_order_independent(any_lat):
    rng = random.Random(3)
    for _ in range(60):
        y = _rand_lvec(rng, any_lat)
        assert line_class_walk(any_lat, y, rng) == any_lat.line_class(y)


def test_simple_classes():
    lat = lattice_for((2, 2))
    assert lat.simple_class(1, 1) == (0, -1, 0, 1)
    lat23 = lattice_for((2, 3))
    assert lat23.simple_class(2, 5) == lat23.simple_class(2, 2)
    with pytest.raises(MalformedInput):
        lat23.simple_class(3, 0)


def test_simples_sum_to_ordinary(any_lat):
    lat = any_lat
    s = lat.ordinary_simple_class()
    assert lat.rank_of(s) == 0 and lat.degree_of(s) == lat.p
    for i, p in enumerate(lat.w.weights, start=1):
        acc = (0,) * lat.n
        for j in range(p):
            acc = vadd(acc, lat.simple_class(i, j))
        assert acc == s
        assert lat.degree_of(lat.simple_class(i, 0)) == lat.p // p


def test_euler_examples():
    lat = lattice_for((2, 2))
    assert lat.euler_form(lat.basis(0), lat.basis(3)) == 2
    assert lat.euler_form(lat.simple_class(1, 1), lat.simple_class(2, 1)) == 0


def test_twist_examples():
    lat = lattice_for((2, 2))
    a = (3, -1, 2, 5)
    assert lat.twist_class(a, lv_zero(lat.w)) == a
    assert lat.tau(lat.simple_class(1, 1)) == lat.simple_class(1, 0)
    assert lat.twist_class(lat.basis(0), canonical_element(lat.w)) == lat.basis(3)


def test_twists_compose_and_are_isometries(any_lat):
    lat = any_lat
    rng = random.Random(5)
    for _ in range(30):
        z1, z2 = _rand_lvec(rng, lat, 3), _rand_lvec(rng, lat, 3)
        a, b = _rand_class(rng, lat.n), _rand_class(rng, lat.n)
        assert lat.twist_class(a, z1 + z2) == lat.twist_class(lat.twist_class(a, z1), z2)
        assert lat.twist_class(lat.twist_class(a, z1), -z1) == a
        assert lat.euler_form(lat.twist_class(a, z1), lat.twist_class(b, z1)) == lat.euler_form(a, b)
        assert lat.tau_inv(lat.tau(a)) == a
    assert abs(bareiss_det(lat.omega_matrix)) == 1


def test_tau_power_is_twist_by_multiple_of_omega(any_lat):
    lat = any_lat
    rng = random.Random(8)
    a = _rand_class(rng, lat.n)
    cur = a
    for _ in range(lat.p):
        cur = lat.tau(cur)
    assert cur == lat.twist_class(a, lv_scale(lat.p, dualizing_element(lat.w)))


def test_tau_shifts_tube_index(any_lat):
    lat = any_lat
    for i, p in enumerate(lat.w.weights, start=1):
        for j in range(p):
            assert lat.tau(lat.simple_class(i, j)) == lat.simple_class(i, j - 1)


@pytest.mark.parametrize("w,g2", [((2, 2), 0), ((2, 3, 6), 2), ((), 0), ((2, 3), -3), ((2, 2, 2), 1)])
def test_genus_examples(w, g2):
    assert lattice_for(w).g2 == g2


def test_genus_matches_closed_form(any_lat):
    assert any_lat.g2 == genus2_closed_form(any_lat.w)


def test_riemann_roch_examples():
    lat = lattice_for((2, 2))
    s = lat.simple_class(1, 0)
    assert lat.tau_orbit_sum(s, lat.basis(0)) == -1
    assert lat.riemann_roch_residual(s, lat.basis(0)) == 0
    assert lat.riemann_roch_residual(lat.basis(0), lat.basis(0)) == 0


@settings(max_examples=60)
@given(st.sampled_from([(2, 2), (2, 3), (2, 3, 5), (3, 4), ()]), st.data())
def test_riemann_roch_property(w, data):
    lat = lattice_for(w)
    cls = st.tuples(*[st.integers(-6, 6)] * lat.n)
    a, b = data.draw(cls), data.draw(cls)
    assert lat.riemann_roch_residual(a, b) == 0


def test_lattice_dump_fields():
    d = lattice_dump(lattice_for((2, 3)))
    assert set(d) >= {"weights", "n", "p", "gram", "deg", "omega_matrix", "genus2"}
    assert d["deg"] == [0, 3, 2, 4, 6]
