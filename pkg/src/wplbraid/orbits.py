"""Searches in the braid group orbit of a full exceptional sequence.

Internally searches work on raw class tuples and record letters in the order
they act ("actions"); public results are converted to words with
:func:`wplbraid.mutation.word_from_actions`.  Every search restricted to a
prefix of length ``m`` only uses generators ``1..m-1`` and leaves the
remaining slots untouched.
"""

from __future__ import annotations

import heapq
import random
import logging
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import MalformedInput, ModelInconsistency, SearchExhausted
from .ktheory import EulerLattice, K0Class
from .linalg import covector_kernel, lll_reduce_small
from .mutation import (
    apply_actions,
    apply_word,
    mutate_classes,
    word_from_actions,
    word_inverse,
)
from .sequences import ExcSeq, Tube, classify_rank0, is_simple_class, seq_fingerprint
from .weights import LVec, canonical_element, lv_zero, normal_form

log = logging.getLogger(__name__)

Classes = tuple[K0Class, ...]


@dataclass
class SearchBudget:
    max_nodes: int = 1_000_000
    max_depth: int = 64
    time_limit: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_depth <= 0:
            raise MalformedInput("search limits must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise MalformedInput("time limit must be positive")


class _Meter:
    """Shared node counter for one top-level search."""

    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.t0 = time.monotonic()

    def tick(self, k: int = 1) -> None:
        self.nodes += k
        if self.nodes > self.budget.max_nodes:
            raise SearchExhausted("node budget exhausted", {"nodes": self.nodes})
        if self.budget.time_limit is not None and time.monotonic() - self.t0 > self.budget.time_limit:
            raise SearchExhausted("time limit exceeded", {"nodes": self.nodes})


def _step(lat: EulerLattice, classes: Classes, letter: int, meter: _Meter | None = None) -> Classes:
    if meter is not None:
        meter.tick()
    return mutate_classes(lat, classes, letter)[0]


def _letters(m: int) -> list[int]:
    return [g for i in range(1, m) for g in (i, -i)]


# -- norm ---------------------------------------------------------------------

def rank_norm(s: ExcSeq | Classes, lat: EulerLattice | None = None, m: int | None = None) -> tuple[int, ...]:
    """Entry ranks sorted in descending order (compared lexicographically)."""
    if isinstance(s, ExcSeq):
        lat, classes = s.lat, s.classes
    else:
        classes = s
    if m is not None:
        classes = classes[:m]
    return tuple(sorted((sum(c) for c in classes), reverse=True))


def _minimal_hom_window(lat: EulerLattice, classes: Classes, m: int) -> tuple[int, int] | None:
    # a pair with Hom != 0 of smallest width has no other Hom inside its window
    for width in range(1, m):
        for a in range(0, m - width):
            if lat.euler_form(classes[a], classes[a + width]) > 0:
                return a, a + width
    return None


def _move_right(classes: Classes, q: int, r: int) -> list[int]:
    """Left mutations carrying entry ``q`` to slot ``r`` unchanged (0-based)."""
    return list(range(q + 1, r + 1))


def _move_left_inv(q: int, r: int) -> list[int]:
    """Inverse generators carrying entry ``q`` to slot ``r < q`` unchanged."""
    return [-g for g in range(q, r, -1)]


def _reduce_actions(lat: EulerLattice, classes: Classes, m: int) -> tuple[list[int], Classes]:
    norm0 = rank_norm(classes, m=m)
    win = _minimal_hom_window(lat, classes, m)
    if win is not None:
        a, b = win
        mid = range(a + 1, b)
        pre: list[int] | None = None
        if all(lat.euler_form(classes[a], classes[i]) == 0 for i in mid):
            pre = [-(g) for g in range(a + 1, b)]   # carry E_a right to slot b-1
            slot = b - 1
        elif all(lat.euler_form(classes[i], classes[b]) == 0 for i in mid):
            pre = _move_left_inv(b, a + 1)           # carry E_b left to slot a+1
            slot = a
        if pre is not None:
            moved = apply_actions(lat, classes, pre)
            for g in (slot + 1, -(slot + 1)):
                out = mutate_classes(lat, moved, g)[0]
                if rank_norm(out, m=m) < norm0:
                    if not pre:
                        return [g], out
                    construction = (pre + [g], out)
                    break
            else:
                construction = None
        else:
            construction = None
    else:
        construction = None
    # a single generator is preferred whenever one exists
    for g in _letters(m):
        out = mutate_classes(lat, classes, g)[0]
        if rank_norm(out, m=m) < norm0:
            return [g], out
    if construction is not None:
        return construction
    raise ModelInconsistency("no norm-decreasing braid move found")


def reduce_norm_step(s: ExcSeq) -> tuple[list[int], ExcSeq]:
    """One strictly norm-decreasing move for a full sequence without torsion entries.

    The move follows the reduction argument: take a pair ``E_a -> E_b`` with
    nonzero Hom and no other Hom inside the window, transpose one end across
    the (orthogonal) middle entries, then mutate the now adjacent pair in the
    direction that lowers the larger rank.  Returns the word and the result;
    the word is a run of transpositions followed by a single generator.
    """
    lat = s.lat
    if not s.is_full:
        raise MalformedInput("reduce_norm_step needs a full sequence")
    if any(r < 1 for r in s.ranks()):
        raise MalformedInput("reduce_norm_step needs every entry of rank >= 1")
    actions, out = _reduce_actions(lat, s.classes, len(s))
    return word_from_actions(actions), ExcSeq(lat, out)


# -- torsion tails ------------------------------------------------------------

def _rank0_key(lat: EulerLattice, classes: Classes, m: int, target: Callable[[K0Class], bool]):
    degs = [lat.degree_of(c) for c in classes[:m] if sum(c) == 0]
    hit = any(target(c) for c in classes[:m])
    return (0 if hit else 1, min(degs) if degs else float("inf"), rank_norm(classes, m=m))


def _best_first(lat: EulerLattice, classes: Classes, m: int, meter: _Meter,
                goal: Callable[[Classes], bool], key: Callable[[Classes], tuple],
                max_depth: int) -> tuple[list[int], Classes]:
    if goal(classes):
        return [], classes
    seen = {seq_fingerprint(classes[:m])}
    heap = [(key(classes), 0, 0, classes, ())]
    tie = 1
    while heap:
        _, depth, _, cur, path = heapq.heappop(heap)
        if depth >= max_depth:
            continue
        for g in _letters(m):
            nxt = _step(lat, cur, g, meter)
            fp = seq_fingerprint(nxt[:m])
            if fp in seen:
                continue
            seen.add(fp)
            npath = path + (g,)
            if goal(nxt):
                return list(npath), nxt
            heapq.heappush(heap, (key(nxt), depth + 1, tie, nxt, npath))
            tie += 1
    raise SearchExhausted("best-first search space exhausted", {"nodes": meter.nodes, "seen": len(seen)})


def _to_rank0(lat: EulerLattice, classes: Classes, m: int, meter: _Meter, max_depth: int) -> tuple[list[int], Classes]:
    """Norm reduction until the prefix contains a torsion entry."""
    actions: list[int] = []
    guard = 0
    while all(sum(c) >= 1 for c in classes[:m]):
        guard += 1
        try:
            acts, classes = _reduce_actions(lat, classes, m)
            meter.tick(len(acts))
        except ModelInconsistency:
            acts, classes = _best_first(
                lat, classes, m, meter,
                goal=lambda cs: any(sum(c) == 0 for c in cs[:m]),
                key=lambda cs: rank_norm(cs, m=m), max_depth=max_depth)
        actions += acts
        if guard > 10_000:
            raise SearchExhausted("norm reduction did not terminate", {"nodes": meter.nodes})
    return actions, classes


def find_simple_tail(s: ExcSeq, budget: SearchBudget | None = None,
                     tube: int | None = None) -> tuple[list[int], ExcSeq]:
    """Word moving ``s`` to a full sequence whose last entry is a simple torsion class.

    Norm reduction first produces a torsion entry; a best-first search ordered
    by (smallest torsion degree, norm) then finds a simple entry, which left
    mutations carry to the last slot.  ``tube`` restricts the simple to one arm.
    """
    budget = budget or SearchBudget()
    meter = _Meter(budget)
    actions, classes = _simple_tail_actions(s.lat, s.classes, len(s), meter, budget.max_depth, tube)
    word = word_from_actions(actions)
    out = apply_word(s, word)
    assert out.classes == classes
    return word, out


def _simple_tail_actions(lat, classes, m, meter, max_depth, tube=None):
    def target(c):
        k = classify_rank0(lat, c)
        return isinstance(k, Tube) and k.length == 1 and (tube is None or k.arm == tube)

    if target(classes[m - 1]):
        return [], classes
    actions, classes = _to_rank0(lat, classes, m, meter, max_depth)
    acts, classes = _best_first(
        lat, classes, m, meter,
        goal=lambda cs: any(target(c) for c in cs[:m]),
        key=lambda cs: _rank0_key(lat, cs, m, target), max_depth=max_depth)
    actions += acts
    q = next(k for k in range(m) if target(classes[k]))
    mv = _move_right(classes, q, m - 1)
    classes = apply_actions(lat, classes, mv)
    meter.tick(len(mv))
    return actions + mv, classes


# -- searches -----------------------------------------------------------------

@dataclass
class SearchResult:
    found: bool
    word: list[int] = field(default_factory=list)
    nodes: int = 0
    depth: int = 0
    strategy: str = ""
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "word": self.word,
            "nodes": self.nodes,
            "depth": self.depth,
            "strategy": self.strategy,
            "stats": self.stats,
        }


def _bidirectional(lat: EulerLattice, src: Classes, dst: Classes, meter: _Meter, max_depth: int,
                   m: int | None = None) -> list[int]:
    """Two-frontier BFS; returns actions taking ``src`` to ``dst``."""
    m = len(src) if m is None else m
    if src == dst:
        return []
    letters = _letters(m)
    parents = [{seq_fingerprint(src): (None, 0, src)}, {seq_fingerprint(dst): (None, 0, dst)}]
    frontiers = [[src], [dst]]
    depths = [0, 0]
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        if depths[0] + depths[1] >= max_depth:
            break
        mine, other = parents[side], parents[1 - side]
        nxt_frontier = []
        for cur in frontiers[side]:
            cur_fp = seq_fingerprint(cur)
            for g in letters:
                nxt = _step(lat, cur, g, meter)
                fp = seq_fingerprint(nxt)
                if fp in mine:
                    continue
                mine[fp] = (cur_fp, g, nxt)
                if fp in other:
                    return _join(parents, fp, side)
                nxt_frontier.append(nxt)
        frontiers[side] = nxt_frontier
        depths[side] += 1
    raise SearchExhausted("bidirectional search found no meeting point",
                          {"nodes": meter.nodes, "depths": depths,
                           "frontier": [len(f) for f in frontiers],
                           "visited": [len(p) for p in parents]})


def _path(parent: dict, fp: bytes) -> list[int]:
    acts = []
    while True:
        prev, g, _ = parent[fp]
        if prev is None:
            return list(reversed(acts))
        acts.append(g)
        fp = prev


def _join(parents, fp, side) -> list[int]:
    a = _path(parents[0], fp)   # src -> meet
    b = _path(parents[1], fp)   # dst -> meet
    return a + [-g for g in reversed(b)]


def _move_entry_to_end(lat, classes: Classes, q: int, m: int, meter: _Meter) -> tuple[list[int], Classes]:
    acts = _move_right(classes, q, m - 1)
    meter.tick(len(acts))
    return acts, apply_actions(lat, classes, acts)


def _common_entry(a: Classes, b: Classes, m: int) -> tuple[int, int] | None:
    pos = {c: k for k, c in enumerate(b[:m])}
    best = None
    for k, c in enumerate(a[:m]):
        if c in pos:
            cand = (sum(c) != 0, k, pos[c])
            if best is None or cand < best:
                best = cand
    return None if best is None else (best[1], best[2])


def _line_search(lat, src: Classes, dst: Classes, meter: _Meter) -> list[int]:
    """Length-two base case: walk the B_2 orbit in both directions."""
    up, down = src, src
    seen = {src}
    for k in range(1, meter.budget.max_nodes + 1):
        up = _step(lat, up, 1, meter)
        if up == dst:
            return [1] * k
        down = _step(lat, down, -1, meter)
        if down == dst:
            return [-1] * k
        if up in seen and down in seen:
            break
        seen.add(up)
        seen.add(down)
    raise SearchExhausted("length-two orbit walk did not reach the target", {"nodes": meter.nodes})


def _rotate_sub(lat, classes: Classes, m: int, inverse: bool, meter: _Meter) -> tuple[list[int], Classes]:
    # m helix rotations of the prefix = one Serre twist of the subcategory
    one = list(range(m - 1, 0, -1)) if not inverse else [-g for g in range(1, m)]
    acts = one * m
    meter.tick(len(acts))
    return acts, apply_actions(lat, classes, acts)


def _torsion_tail(lat, classes: Classes, m: int, meter: _Meter, max_depth: int, ambient: bool):
    if ambient:
        return _simple_tail_actions(lat, classes, m, meter, max_depth)
    acts, classes = _to_rank0(lat, classes, m, meter, max_depth)
    tors = [k for k in range(m) if sum(classes[k]) == 0]
    q = min(tors, key=lambda k: lat.degree_of(classes[k]))
    mv, classes = _move_entry_to_end(lat, classes, q, m, meter)
    return acts + mv, classes


def _align(lat, a: Classes, b: Classes, m: int, meter: _Meter, max_depth: int, rotations: int):
    """Actions on ``a`` and on ``b`` after which they share an entry in the prefix."""
    hit = _common_entry(a, b, m)
    if hit:
        return [], a, [], b
    # Serre twists of the subcategory line up simples lying in the same tube
    for inverse in (False, True):
        acts: list[int] = []
        cur = a
        for _ in range(rotations):
            r, cur = _rotate_sub(lat, cur, m, inverse, meter)
            acts += r
            if _common_entry(cur, b, m):
                return acts, cur, [], b
    return _common_entry_bfs(lat, a, b, m, meter, max_depth)


def _common_entry_bfs(lat, a: Classes, b: Classes, m: int, meter: _Meter, max_depth: int):
    letters = _letters(m)
    sides = [{seq_fingerprint(a[:m]): ((), a)}, {seq_fingerprint(b[:m]): ((), b)}]
    entries = [{}, {}]
    for side, start in ((0, a), (1, b)):
        for c in start[:m]:
            entries[side].setdefault(c, ((), start))
    frontiers = [[((), a)], [((), b)]]
    for depth in range(max_depth):
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        nxt_frontier = []
        for path, cur in frontiers[side]:
            for g in letters:
                nxt = _step(lat, cur, g, meter)
                fp = seq_fingerprint(nxt[:m])
                if fp in sides[side]:
                    continue
                npath = path + (g,)
                sides[side][fp] = (npath, nxt)
                nxt_frontier.append((npath, nxt))
                for c in nxt[:m]:
                    if c in entries[1 - side]:
                        opath, oseq = entries[1 - side][c]
                        if side == 0:
                            return list(npath), nxt, list(opath), oseq
                        return list(opath), oseq, list(npath), nxt
                    entries[side].setdefault(c, (npath, nxt))
        frontiers[side] = nxt_frontier
        if not nxt_frontier:
            break
    raise SearchExhausted("no common entry found", {"nodes": meter.nodes})


def _recursive(lat, src: Classes, dst: Classes, m: int, meter: _Meter, max_depth: int) -> list[int]:
    """Actions taking ``src`` to ``dst``; both agree beyond slot ``m``."""
    if src[:m] == dst[:m]:
        return []
    if m == 1:
        raise ModelInconsistency("length-one prefixes with equal suffix must coincide")
    if m == 2:
        return _line_search(lat, src, dst, meter)
    ambient = m == len(src)
    a_acts, a = [], src
    b_acts, b = [], dst
    if _common_entry(a, b, m) is None:
        a_acts, a = _torsion_tail(lat, a, m, meter, max_depth, ambient)
        b_acts, b = _torsion_tail(lat, b, m, meter, max_depth, ambient)
        rot = max(lat.w.weights, default=1) + 1
        x, a, y, b = _align(lat, a, b, m, meter, max_depth, rot)
        a_acts += x
        b_acts += y
    ka, kb = _common_entry(a, b, m)
    x, a = _move_entry_to_end(lat, a, ka, m, meter)
    y, b = _move_entry_to_end(lat, b, kb, m, meter)
    a_acts += x
    b_acts += y
    assert a[m - 1] == b[m - 1]
    mid = _recursive(lat, a, b, m - 1, meter, max_depth)
    return a_acts + mid + [-g for g in reversed(b_acts)]


def find_braid_word(src: ExcSeq, dst: ExcSeq, strategy: str = "bidirectional",
                    budget: SearchBudget | None = None, fallback: bool = False) -> SearchResult:
    """Search for ``w`` with ``apply_word(src, w) == dst``.

    ``strategy`` is ``"recursive"`` (torsion tails, alignment, recursion into
    the perpendicular prefix) or ``"bidirectional"`` (alias ``"bfs"``).  With
    ``fallback=True`` a recursive failure is retried bidirectionally with the
    remaining budget.  A returned word is always verified before returning.
    """
    if src.lat is not dst.lat:
        raise MalformedInput("sequences live over different lattices")
    if not (src.is_full and dst.is_full):
        raise MalformedInput("find_braid_word needs full sequences")
    budget = budget or SearchBudget()
    meter = _Meter(budget)
    lat = src.lat
    strategy = {"bfs": "bidirectional"}.get(strategy, strategy)
    if strategy not in ("recursive", "bidirectional"):
        raise MalformedInput(f"unknown strategy {strategy!r}")
    used = strategy
    try:
        if strategy == "recursive":
            try:
                actions = _recursive(lat, src.classes, dst.classes, len(src), meter, budget.max_depth)
            except (SearchExhausted, ModelInconsistency):
                if not fallback:
                    raise
                used = "recursive+bidirectional"
                actions = _bidirectional(lat, src.classes, dst.classes, meter, budget.max_depth)
        else:
            actions = _bidirectional(lat, src.classes, dst.classes, meter, budget.max_depth)
    except SearchExhausted as exc:
        return SearchResult(False, [], meter.nodes, 0, used, {"reason": str(exc), **exc.stats})
    except ModelInconsistency as exc:
        return SearchResult(False, [], meter.nodes, 0, used, {"reason": str(exc)})
    word = word_from_actions(actions)
    if apply_word(src, word) != dst:
        raise AssertionError("search produced a word that does not verify")
    return SearchResult(True, word, meter.nodes, len(word), used)


# -- perpendicular structure --------------------------------------------------

@dataclass
class PerpLattice:
    simple: K0Class
    basis: list[K0Class]
    gram: list[list[int]]


def kappa_with_simple_tail(lat: EulerLattice, i: int, j: int) -> tuple[list[int], ExcSeq]:
    """Word taking the canonical sequence to ``(F_1, ..., F_{n-1}, S_{i,j})``.

    ``(O(j x_i), O((j+1) x_i))`` is made adjacent by transpositions, right
    mutated to ``(O((j+1) x_i), S_{i,j})``, and the simple is carried to the end.
    """
    from .sequences import canonical_sequence

    p = lat.w.weights[i - 1]
    j %= p
    s = canonical_sequence(lat)
    u, v = lat.index(i, j), lat.index(i, j + 1)
    classes = s.classes
    if j == p - 1:
        acts = _move_right(classes, u, v - 1)
        slot = v - 1
    else:
        acts = _move_left_inv(v, u + 1)
        slot = u
    acts.append(-(slot + 1))
    classes = apply_actions(lat, classes, acts)
    if classes[slot + 1] != lat.simple_class(i, j):
        raise ModelInconsistency("right mutation of neighbouring line bundles is not the simple")
    mv = _move_right(classes, slot + 1, lat.n - 1)
    acts += mv
    word = word_from_actions(acts)
    return word, apply_word(s, word)


def perp_sublattice(lat: EulerLattice, s_class: Sequence[int]) -> PerpLattice:
    """Basis of ``{y : chi(S, y) = 0}`` for a simple torsion class ``S``.

    The basis is the prefix of a full sequence ending in ``S``; restricted to
    it the Euler form is unipotent upper triangular.
    """
    s_class = tuple(s_class)
    k = classify_rank0(lat, s_class)
    if not (isinstance(k, Tube) and k.length == 1):
        raise MalformedInput("perp_sublattice needs a simple torsion class")
    _, seq = kappa_with_simple_tail(lat, k.arm, k.start)
    basis = list(seq.classes[:-1])
    gram = [[lat.euler_form(x, y) for y in basis] for x in basis]
    return PerpLattice(s_class, basis, gram)


def perp_kernel_basis(lat: EulerLattice, s_class: Sequence[int]) -> list[K0Class]:
    """Independent route: integer kernel of the covector ``chi(S, -)``."""
    cov = [sum(s_class[a] * lat.gram[a][b] for a in range(lat.n)) for b in range(lat.n)]
    return lll_reduce_small(covector_kernel(cov))


@dataclass
class WingReport:
    line: K0Class
    ok: bool
    count: int
    blocks: list[list[list[int]]]
    problems: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"line": list(self.line), "ok": self.ok, "count": self.count,
                "blocks": self.blocks, "problems": self.problems}


def line_grading(lat: EulerLattice, line: Sequence[int]) -> LVec:
    """The ``y`` with ``[O(y)] = line``; raises for classes of no line bundle."""
    line = tuple(line)
    if len(line) == lat.n:
        arm = []
        for i, p in enumerate(lat.w.weights, start=1):
            hits = [j for j in range(1, p) if line[lat.index(i, j)]]
            arm.append(hits[0] if len(hits) == 1 else 0)
        y = normal_form(line[-1], arm, lat.w)
        if lat.line_class(y) == line:
            return y
    raise MalformedInput("class is not the class of a line bundle")


def wing_gram_check(lat: EulerLattice, line: Sequence[int]) -> WingReport:
    """Check the finite-length wing attached to a line bundle ``L = O(u)``.

    The simples ``S_{i, u_i + j}``, ``j = 1..p_i-1``, must satisfy
    ``chi(S, L) = chi(S, L(c)) = 0``, and their Euler form must split into
    linear A_{p_i - 1} blocks, one per arm.  Block rows and columns are
    indexed by ``j``.
    """
    line = tuple(line)
    u = line_grading(lat, line)
    line_c = lat.line_class(u + canonical_element(lat.w))
    problems = []

    def simple(i: int, j: int) -> K0Class:
        return lat.simple_class(i, (u.arm[i - 1] + j) % lat.w.weights[i - 1])

    simples = [(i, j, simple(i, j)) for i, p in enumerate(lat.w.weights, start=1) for j in range(1, p)]
    for i, j, sc in simples:
        for tgt, name in ((line, "L"), (line_c, "L(c)")):
            v = lat.euler_form(sc, tgt)
            if v != 0:
                problems.append(f"chi(wing S[{i},+{j}], {name}) = {v}")
    blocks = []
    for i, p in enumerate(lat.w.weights, start=1):
        block = [[lat.euler_form(simple(i, a), simple(i, b)) for b in range(1, p)] for a in range(1, p)]
        blocks.append(block)
        for a in range(1, p):
            for b in range(1, p):
                want = 1 if a == b else (-1 if b == a - 1 else 0)
                if block[a - 1][b - 1] != want:
                    problems.append(f"chi(wing S[{i},+{a}], S[{i},+{b}]) = {block[a - 1][b - 1]}, want {want}")
    for i, j, sc in simples:
        for i2, j2, sc2 in simples:
            if i != i2 and lat.euler_form(sc, sc2) != 0:
                problems.append(f"cross-tube chi(S[{i},+{j}], S[{i2},+{j2}]) != 0")
    if len(simples) != lat.n - 2:
        problems.append(f"found {len(simples)} wing simples, expected n-2 = {lat.n - 2}")
    return WingReport(line, not problems, len(simples), blocks, problems)


def hom_two_scan(lat: EulerLattice, base: LVec | None = None) -> list[dict]:
    """For every ``0 < x <= c``: whether ``(L, L(x))`` is an exceptional pair at
    class level, and ``chi(L, L(x))``, where ``L = O(base)``."""
    base = base if base is not None else lv_zero(lat.w)
    line = lat.line_class(base)
    rows = []
    for x in lat.basis_twists[1:]:
        lx = lat.line_class(base + x)
        rows.append({"x": x.text(), "pair": lat.euler_form(lx, line) == 0,
                     "chi": lat.euler_form(line, lx), "is_c": x.l == 1 and not any(x.arm)})
    return rows


def hom_two_ok(rows: list[dict]) -> bool:
    """``chi >= 2`` exactly at ``x = c``, where it equals 2."""
    return all(r["pair"] and ((r["chi"] >= 2) == r["is_c"]) and (not r["is_c"] or r["chi"] == 2)
               for r in rows)


def basis_line_classes(lat: EulerLattice) -> list[K0Class]:
    return [lat.basis(k) for k in range(lat.n)]


# -- orbit samples ------------------------------------------------------------

def orbit_bfs(s: ExcSeq, radius: int, max_nodes: int) -> dict[bytes, tuple[Classes, list[int]]]:
    """Breadth-first ball of the given radius; values are (classes, word)."""
    lat = s.lat
    seen = {seq_fingerprint(s.classes): (s.classes, [])}
    frontier = [(s.classes, ())]
    letters = _letters(len(s))
    for _ in range(radius):
        nxt = []
        for cur, acts in frontier:
            for g in letters:
                out = mutate_classes(lat, cur, g)[0]
                fp = seq_fingerprint(out)
                if fp in seen:
                    continue
                a = acts + (g,)
                seen[fp] = (out, word_from_actions(a))
                nxt.append((out, a))
                if len(seen) >= max_nodes:
                    return seen
        frontier = nxt
    return seen


def twist_seq(lat: EulerLattice, classes: Classes, z: LVec) -> Classes:
    return tuple(lat.twist_class(c, z) for c in classes)


def sample_positive_sequences(lat: EulerLattice, count: int, seed: int, max_len: int = 30) -> list[tuple[list[int], ExcSeq]]:
    """Distinct full sequences with all ranks >= 1, met along random walks from
    the canonical sequence.  Walks pass freely through torsion entries, so
    sequences of higher rank are reached too.  Returns ``(word, sequence)`` pairs.
    """
    from .sequences import canonical_sequence

    rng = random.Random(seed)
    start = canonical_sequence(lat).classes
    letters = _letters(lat.n)
    out = []
    seen = set()
    walks = 0
    while len(out) < count and walks < 500 * count:
        walks += 1
        cur, acts = start, []
        hits = []
        for _ in range(rng.randint(1, max_len)):
            g = rng.choice(letters)
            cur = mutate_classes(lat, cur, g)[0]
            acts.append(g)
            if all(sum(c) >= 1 for c in cur) and cur not in seen:
                hits.append((list(acts), cur))
        for acts, cur in hits:
            if cur not in seen and len(out) < count:
                seen.add(cur)
                out.append((word_from_actions(acts), ExcSeq(lat, cur)))
    return out
