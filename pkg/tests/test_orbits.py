from __future__ import annotations

import random

import pytest

from wplbraid.errors import MalformedInput, ModelInconsistency
from wplbraid.invariants import random_word
from wplbraid.ktheory import lattice_for
from wplbraid.mutation import apply_word, mutate_classes
from wplbraid.orbits import (
    SearchBudget,
    find_braid_word,
    find_simple_tail,
    hom_two_ok,
    hom_two_scan,
    kappa_with_simple_tail,
    line_grading,
    orbit_bfs,
    perp_kernel_basis,
    perp_sublattice,
    rank_norm,
    reduce_norm_step,
    sample_positive_sequences,
    wing_gram_check,
)
from wplbraid.sequences import ExcSeq, Tube, canonical_sequence, classify_rank0, det2_sequence, is_simple_class
from wplbraid.linalg import bareiss_det
from wplbraid.weights import normal_form

L22 = lattice_for((2, 2))


def test_rank_norm_examples():
    k = canonical_sequence(L22)
    assert rank_norm(k) == (1, 1, 1, 1)
    assert rank_norm(apply_word(k, [1])) == (1, 1, 1, 0)
    assert rank_norm(det2_sequence(L22)) == (1, 1, 0, 0)


def test_reduce_norm_step_examples():
    word, out = reduce_norm_step(canonical_sequence(L22))
    assert rank_norm(out) < (1, 1, 1, 1)
    assert apply_word(canonical_sequence(L22), word) == out
    lat = lattice_for((2, 3))
    k = canonical_sequence(lat)
    word, out = reduce_norm_step(k)
    scan = [g for i in range(1, lat.n) for g in (i, -i)
            if rank_norm(ExcSeq(lat, mutate_classes(lat, k.classes, g)[0])) < rank_norm(k)]
    assert scan and len(word) == 1 and word[0] in scan
    with pytest.raises(MalformedInput):
        reduce_norm_step(det2_sequence(L22))


def test_iterated_reduction_reaches_torsion(lat):
    for word, s in sample_positive_sequences(lat, 20, seed=4):
        assert apply_word(canonical_sequence(lat), word) == s
        steps = 0
        while all(r >= 1 for r in s.ranks()):
            w, nxt = reduce_norm_step(s)
            assert rank_norm(nxt) < rank_norm(s)
            s = nxt
            steps += 1
        assert steps <= lat.n * max(lat.w.weights) * 10


def test_simple_tail_examples():
    k = canonical_sequence(L22)
    word, out = find_simple_tail(k)
    assert apply_word(k, word) == out
    kind = classify_rank0(L22, out[-1])
    assert isinstance(kind, Tube) and kind.length == 1
    word2, out2 = find_simple_tail(out)
    assert word2 == [] and out2 == out


def test_simple_tail_random_23():
    lat = lattice_for((2, 3))
    rng = random.Random(8)
    k = canonical_sequence(lat)
    for _ in range(20):
        s = apply_word(k, random_word(lat.n, rng.randint(0, 6), rng))
        word, out = find_simple_tail(s, SearchBudget(max_nodes=10**5))
        assert apply_word(s, word) == out and is_simple_class(lat, out[-1])


def test_simple_tail_with_tube_filter(lat):
    k = canonical_sequence(lat)
    for arm in range(1, lat.w.t + 1):
        word, out = find_simple_tail(k, tube=arm)
        assert classify_rank0(lat, out[-1]).arm == arm


def test_kappa_with_simple_tail(lat):
    for i, p in enumerate(lat.w.weights, start=1):
        for j in range(p):
            word, s = kappa_with_simple_tail(lat, i, j)
            assert s[-1] == lat.simple_class(i, j)
            assert apply_word(canonical_sequence(lat), word) == s


def test_find_braid_word_trivial_and_p1():
    k = canonical_sequence(L22)
    for strat in ("recursive", "bidirectional"):
        assert find_braid_word(k, k, strat).word == []
    p1 = lattice_for(())
    src = ExcSeq(p1, (p1.basis(0), p1.basis(1)))
    dst = ExcSeq(p1, tuple(p1.line_class(normal_form(l, [], p1.w)) for l in (-3, -2)))
    for strat in ("recursive", "bidirectional"):
        res = find_braid_word(src, dst, strat)
        assert res.found and res.word == [1, 1, 1]


def test_find_braid_word_example():
    k = canonical_sequence(L22)
    dst = apply_word(k, [2, -1, 3])
    for strat in ("recursive", "bfs"):
        res = find_braid_word(k, dst, strat)
        assert res.found and apply_word(k, res.word) == dst


def test_find_braid_word_between_random_sequences(lat):
    rng = random.Random(12)
    k = canonical_sequence(lat)
    for _ in range(6):
        a = apply_word(k, random_word(lat.n, rng.randint(5, 20), rng))
        b = apply_word(k, random_word(lat.n, rng.randint(5, 20), rng))
        res = find_braid_word(a, b, "recursive", SearchBudget(max_nodes=2 * 10**5))
        assert res.found and apply_word(a, res.word) == b


def test_budget_exhaustion_is_reported():
    lat = lattice_for((2, 3))
    k = canonical_sequence(lat)
    dst = apply_word(k, [1, 2, 3, 4, -1, -2, 3, 4, 1])
    res = find_braid_word(k, dst, "bidirectional", SearchBudget(max_nodes=5))
    assert not res.found and "nodes" in res.stats
    with pytest.raises(MalformedInput):
        SearchBudget(max_nodes=0)
    with pytest.raises(MalformedInput):
        find_braid_word(k, dst, "dfs")


def test_perp_sublattice(lat):
    for i, p in enumerate(lat.w.weights, start=1):
        for j in range(p):
            s = lat.simple_class(i, j)
            P = perp_sublattice(lat, s)
            assert len(P.basis) == lat.n - 1
            assert all(lat.euler_form(s, b) == 0 for b in P.basis)
            assert all(P.gram[a][a] == 1 for a in range(lat.n - 1))
            # the basis spans the whole kernel: compare with the kernel basis
            ker = perp_kernel_basis(lat, s)
            assert len(ker) == lat.n - 1
            # together with S the perpendicular basis is a basis of K_0
            assert abs(bareiss_det([list(b) for b in P.basis] + [list(s)])) == 1
    with pytest.raises(MalformedInput):
        perp_sublattice(lat, lat.basis(0))


def test_perp_closure_under_prefix_mutation(lat):
    rng = random.Random(2)
    _, s = kappa_with_simple_tail(lat, 1, 0)
    S = s[-1]
    classes = s.classes
    for _ in range(50):
        g = rng.choice([1, -1]) * rng.randint(1, lat.n - 2)
        classes = mutate_classes(lat, classes, g)[0]
        assert classes[-1] == S
        assert all(lat.euler_form(S, c) == 0 for c in classes[:-1])


def test_wing_examples():
    rep = wing_gram_check(L22, L22.basis(0))
    assert rep.ok and rep.blocks == [[[1]], [[1]]]
    lat = lattice_for((2, 3))
    rep = wing_gram_check(lat, lat.basis(0))
    assert rep.ok and rep.blocks[1] == [[1, 0], [-1, 1]]
    lat = lattice_for((3, 3))
    assert wing_gram_check(lat, lat.basis(1)).ok
    with pytest.raises(MalformedInput):
        wing_gram_check(lat, lat.simple_class(1, 0))


def test_wing_all_lines(any_lat):
    rng = random.Random(1)
    for _ in range(20):
        y = normal_form(rng.randint(-4, 4), [rng.randint(0, p - 1) for p in any_lat.w.weights], any_lat.w)
        assert line_grading(any_lat, any_lat.line_class(y)) == y
        assert wing_gram_check(any_lat, any_lat.line_class(y)).ok


def test_hom_two_scan(any_lat):
    for x in any_lat.basis_twists:
        rows = hom_two_scan(any_lat, x)
        assert hom_two_ok(rows)
        assert [r["chi"] for r in rows if r["is_c"]] == [2]


def test_orbit_bfs_words_verify():
    k = canonical_sequence(L22)
    ball = orbit_bfs(k, 2, 1000)
    for classes, word in ball.values():
        assert apply_word(k, word).classes == classes
