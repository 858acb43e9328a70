from __future__ import annotations

import random

import pytest

from wplbraid.errors import MalformedInput
from wplbraid.invariants import random_word
from wplbraid.ktheory import lattice_for, vadd
from wplbraid.mutation import apply_word
from wplbraid.orbits import orbit_bfs
from wplbraid.sequences import (
    ExcSeq,
    NotRank0,
    OrdinarySimple,
    Tube,
    Unrecognized,
    canonical_sequence,
    classify_rank0,
    coordinate_det,
    det2_sequence,
    pair_dims,
    seq_fingerprint,
    validate_sequence,
)


def test_canonical_sequence(any_lat):
    k = canonical_sequence(any_lat)
    assert len(k) == any_lat.n
    assert validate_sequence(k).ok
    assert k.classes == tuple(any_lat.basis(i) for i in range(any_lat.n))


def test_det2_sequence(any_lat):
    s = det2_sequence(any_lat)
    assert len(s) == any_lat.n and validate_sequence(s).ok


def test_det2_examples():
    lat = lattice_for((2, 2))
    s = det2_sequence(lat)
    assert s.classes == (lat.basis(0), lat.basis(3), lat.simple_class(1, 1), lat.simple_class(2, 1))
    lat = lattice_for((3, 3))
    s12, s11 = lat.simple_class(1, 2), lat.simple_class(1, 1)
    assert lat.euler_form(s11, s12) == 0       # descending pair has no backward form
    assert lat.euler_form(s12, s11) == -1      # ascending order would violate it
    asc = ExcSeq(lat, (lat.basis(0), lat.basis(5), s11, s12))
    assert not validate_sequence(asc).ok


def test_validation_reports():
    lat = lattice_for((2, 2))
    rep = validate_sequence(ExcSeq(lat, (lat.basis(3), lat.basis(0))))
    assert [(v.kind, v.where, v.value) for v in rep.violations] == [("backward", (2, 1), 2)]
    rep = validate_sequence(ExcSeq(lat, (lat.basis(0), lat.basis(0))))
    assert any(v.kind == "backward" and v.value == 1 for v in rep.violations)
    full = ExcSeq(lat, (lat.basis(0), lat.basis(1), lat.basis(2), (1, 1, 1, 1)))
    rep = validate_sequence(full)
    assert not rep.ok
    assert rep.to_json()["ok"] is False


def test_pair_dims_examples():
    lat = lattice_for((2, 2))
    k = canonical_sequence(lat)
    assert pair_dims(k, 0, 3) == (2, 0)
    s = ExcSeq(lat, (lat.simple_class(1, 1), lat.simple_class(2, 1)))
    assert pair_dims(s, 0, 1) == (0, 0)
    s = ExcSeq(lat, (lat.basis(0), lat.simple_class(1, 1)))
    assert pair_dims(s, 0, 1) == (1, 0)
    with pytest.raises(MalformedInput):
        pair_dims(k, 2, 1)


def test_classify_rank0():
    lat = lattice_for((2, 2))
    assert classify_rank0(lat, lat.simple_class(1, 1)) == Tube(1, 1, 1)
    assert classify_rank0(lat, lat.basis(0)) == NotRank0()
    assert classify_rank0(lat, lat.ordinary_simple_class()) == OrdinarySimple()
    assert classify_rank0(lat, vadd(lat.simple_class(1, 1), lat.simple_class(2, 1))) == Unrecognized()
    lat = lattice_for((2, 3))
    assert classify_rank0(lat, vadd(lat.simple_class(2, 1), lat.simple_class(2, 2))) == Tube(2, 1, 2)


def test_fingerprints():
    lat = lattice_for((2, 2))
    k = canonical_sequence(lat)
    assert seq_fingerprint(k) == seq_fingerprint(canonical_sequence(lat))
    assert seq_fingerprint(k) != seq_fingerprint(apply_word(k, [1]))
    other = k.replace(k.classes[:3] + ((0, 0, 0, 2),))
    assert seq_fingerprint(k) != seq_fingerprint(other)
    # separators keep multi-digit coordinates apart
    a = ExcSeq(lat, ((1, 12, 0, 0),))
    b = ExcSeq(lat, ((11, 2, 0, 0),))
    assert seq_fingerprint(a) != seq_fingerprint(b)


def test_orbit_samples_structural_properties(lat):
    ball = orbit_bfs(canonical_sequence(lat), 3, 600)
    seqs = [c for c, _ in ball.values()]
    for classes in seqs:
        s = ExcSeq(lat, classes)
        assert validate_sequence(s).ok
        assert abs(coordinate_det(s)) == 1
        # no complete exceptional sequence is fully orthogonal
        assert any(lat.euler_form(classes[i], classes[j]) for i in range(lat.n) for j in range(i + 1, lat.n))
        for c in classes:
            if sum(c) == 0:
                assert isinstance(classify_rank0(lat, c), Tube)
    # distinct full sequences differ in at least two places
    by_hole: dict = {}
    for classes in seqs:
        for k in range(lat.n):
            key = (k, classes[:k] + classes[k + 1:])
            assert by_hole.setdefault(key, classes) == classes


def test_random_walks_stay_valid(lat):
    rng = random.Random(2)
    k = canonical_sequence(lat)
    for _ in range(40):
        s = apply_word(k, random_word(lat.n, rng.randint(0, 25), rng))
        assert validate_sequence(s).ok
