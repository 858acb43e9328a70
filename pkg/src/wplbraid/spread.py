"""Shift constraints of tilting complexes built from exceptional sequences.

Placing entry ``E_i`` in cohomological degree ``a_i`` gives a tilting complex
iff no morphisms survive in nonzero degrees.  In a hereditary category the
only possibly nonzero spaces are Hom and Ext^1, so for ``i < j``:

* ``Hom(E_i, E_j) != 0`` forces ``a_i = a_j``;
* ``Ext^1(E_i, E_j) != 0`` forces ``a_j = a_i + 1``.

Shifts are read here as ``T = (+) E_i[a_i]``, so ``a`` grows with the shift.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field

from .errors import MalformedInput
from .ktheory import EulerLattice, K0Class
from .mutation import mutate_classes, word_from_actions
from .sequences import ExcSeq, canonical_sequence, pair_dims, seq_fingerprint
from .weights import delta_degree, normal_form


@dataclass(frozen=True)
class ShiftConstraintGraph:
    n: int
    equal: tuple[tuple[int, int], ...]       # 0-based (i, j), i < j
    increment: tuple[tuple[int, int], ...]   # a_j = a_i + 1

    def to_json(self) -> dict:
        return {"n": self.n,
                "equal": [[i + 1, j + 1] for i, j in self.equal],
                "increment": [[i + 1, j + 1] for i, j in self.increment]}


@dataclass
class SpreadResult:
    consistent: bool
    spread: int | None = None
    shifts: list[int] | None = None
    connected: bool = True
    component_spreads: list[int] = field(default_factory=list)
    conflict: tuple[int, int] | None = None

    def to_json(self) -> dict:
        return {"consistent": self.consistent, "spread": self.spread, "shifts": self.shifts,
                "connected": self.connected, "component_spreads": self.component_spreads,
                "conflict": None if self.conflict is None else [x + 1 for x in self.conflict]}


def shift_constraints(s: ExcSeq) -> ShiftConstraintGraph:
    if not s.is_full:
        raise MalformedInput("shift constraints need a full sequence")
    return constraints_from_classes(s.lat, s.classes)


def constraints_from_classes(lat: EulerLattice, classes) -> ShiftConstraintGraph:
    eq, inc = [], []
    n = len(classes)
    for i in range(n):
        for j in range(i + 1, n):
            x = lat.euler_form(classes[i], classes[j])
            if x > 0:
                eq.append((i, j))
            elif x < 0:
                inc.append((i, j))
    return ShiftConstraintGraph(n, tuple(eq), tuple(inc))


def max_spread(g: ShiftConstraintGraph) -> SpreadResult:
    """Solve the difference system ``a_j - a_i in {0, 1}`` edge by edge.

    Each connected component has its potentials fixed up to a constant, so the
    spread of a component is determined; a cycle with nonzero total increment
    makes the system inconsistent.  For several components the reported spread
    is the largest component spread (components are aligned at 0), and
    ``connected`` is False.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, j in g.equal:
        adj[i].append((j, 0))
        adj[j].append((i, 0))
    for i, j in g.increment:
        adj[i].append((j, 1))
        adj[j].append((i, -1))
    pot: list[int | None] = [None] * g.n
    comps: list[list[int]] = []
    for root in range(g.n):
        if pot[root] is not None:
            continue
        pot[root] = 0
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, d in adj[u]:
                want = pot[u] + d
                if pot[v] is None:
                    pot[v] = want
                    comp.append(v)
                    queue.append(v)
                elif pot[v] != want:
                    return SpreadResult(False, conflict=(min(u, v), max(u, v)))
        comps.append(comp)
    shifts = [0] * g.n
    spreads = []
    for comp in comps:
        lo = min(pot[v] for v in comp)
        for v in comp:
            shifts[v] = pot[v] - lo
        spreads.append(max(shifts[v] for v in comp))
    return SpreadResult(True, max(spreads, default=0), shifts, len(comps) <= 1, spreads)


def verify_assignment(s: ExcSeq, shifts: list[int]) -> bool:
    """Independent re-check of an assignment against the pair dimensions."""
    if len(shifts) != len(s):
        return False
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            h, e = pair_dims(s, i, j)
            if h and shifts[j] != shifts[i]:
                return False
            if e and shifts[j] != shifts[i] + 1:
                return False
    return min(shifts, default=0) == 0


# -- orbit search -------------------------------------------------------------

@dataclass
class SgdResult:
    lower_bound: int
    spread: int
    witness: list[K0Class]
    witness_word: list[int]
    shifts: list[int]
    nodes_visited: int
    budget_exhausted: bool
    radius_reached: int

    def to_json(self) -> dict:
        return {
            "lower_bound": self.lower_bound,
            "spread": self.spread,
            "witness_sequence": [list(c) for c in self.witness],
            "witness_word": self.witness_word,
            "shifts": self.shifts,
            "nodes_visited": self.nodes_visited,
            "budget_exhausted": self.budget_exhausted,
            "radius_reached": self.radius_reached,
        }


class _TwistCanon:
    """Canonical representative of a sequence modulo twisting by L(p).

    Twisting by ``z`` moves the total degree by ``R * delta(z)`` where ``R`` is
    the total rank.  For each arm part of ``z`` exactly one multiple of ``c``
    brings the total degree into ``[0, R p)``; the smallest fingerprint among
    those candidates is the representative.
    """

    def __init__(self, lat: EulerLattice):
        self.lat = lat
        w = lat.w
        arms = [()]
        for p in w.weights:
            arms = [a + (k,) for a in arms for k in range(p)]
        self.arms = [normal_form(0, list(a), w) for a in arms]

    def key(self, classes) -> bytes:
        lat = self.lat
        R = sum(sum(c) for c in classes)
        D = sum(lat.degree_of(c) for c in classes)
        if R <= 0:
            return seq_fingerprint(classes)
        p = lat.p
        best = None
        for z in self.arms:
            shift = D + R * delta_degree(z)
            l = -(shift // (R * p))
            zz = normal_form(l, list(z.arm), lat.w)
            fp = seq_fingerprint(tuple(lat.twist_class(c, zz) for c in classes))
            if best is None or fp < best:
                best = fp
        return best


def sgd_lower_bound(lat: EulerLattice, max_nodes: int = 100_000, radius: int | None = None,
                    time_limit: float | None = None) -> SgdResult:
    """Breadth-first orbit search from the canonical sequence for the largest
    consistent spread; the bound is ``spread + 2`` (``1`` on the projective line).

    Sequences are deduplicated modulo twists, which preserve every pair
    dimension and hence the spread.
    """
    if max_nodes <= 0:
        raise MalformedInput("max_nodes must be positive")
    start = canonical_sequence(lat)
    if lat.w.t == 0:
        res = max_spread(shift_constraints(start))
        return SgdResult(1, res.spread, list(start.classes), [], res.shifts, 1, False, 0)
    canon = _TwistCanon(lat)
    letters = [g for i in range(1, lat.n) for g in (i, -i)]
    t0 = time.monotonic()
    seen = {canon.key(start.classes)}
    frontier = [(start.classes, ())]
    best = None
    exhausted = False
    depth = 0

    def consider(classes, acts):
        nonlocal best
        res = max_spread(constraints_from_classes(lat, classes))
        if res.consistent and (best is None or res.spread > best[0]):
            best = (res.spread, classes, acts, res.shifts)

    consider(start.classes, ())
    while frontier and not exhausted:
        if radius is not None and depth >= radius:
            break
        nxt = []
        for classes, acts in frontier:
            for g in letters:
                out = mutate_classes(lat, classes, g)[0]
                k = canon.key(out)
                if k in seen:
                    continue
                seen.add(k)
                a = acts + (g,)
                consider(out, a)
                nxt.append((out, a))
                if len(seen) >= max_nodes or (time_limit is not None and time.monotonic() - t0 > time_limit):
                    exhausted = True
                    break
            if exhausted:
                break
        frontier = nxt
        depth += 1
    spread, classes, acts, shifts = best
    witness = ExcSeq(lat, classes)
    if not verify_assignment(witness, shifts):
        raise AssertionError("spread witness does not re-verify")
    return SgdResult(spread + 2, spread, list(classes), word_from_actions(acts), shifts,
                     len(seen), exhausted, depth)
