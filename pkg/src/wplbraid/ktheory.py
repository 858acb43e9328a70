"""The Grothendieck lattice K_0 of a weighted projective line.

Classes are plain integer tuples of length ``n`` holding coordinates in the
basis ``[O(x)]``, ``0 <= x <= c``, ordered as the canonical sequence:
``[O]``, then ``[O(j x_i)]`` for each arm ``i`` and ``j = 1..p_i-1``, then
``[O(c)]``.

Twisting conventions: ``O(u) -> O(u + x_i)`` has cokernel ``S_{i, u_i}``, so
twisting by ``x_i`` raises the tube index by one and ``S_{i,j}(omega) = S_{i,j-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from operator import mul
from typing import Sequence

from .errors import MalformedInput
from .weights import (
    LVec,
    WeightType,
    canonical_element,
    delta_degree,
    dim_graded_piece,
    dualizing_element,
    lv_neg,
    lv_scale,
    lvecs_between_zero_and_c,
    normal_form,
)

K0Class = tuple[int, ...]


def vadd(a: Sequence[int], b: Sequence[int]) -> K0Class:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[int], b: Sequence[int]) -> K0Class:
    return tuple(x - y for x, y in zip(a, b))


def vscale(k: int, a: Sequence[int]) -> K0Class:
    return tuple(k * x for x in a)


def vcomb(ka: int, a: Sequence[int], kb: int, b: Sequence[int]) -> K0Class:
    return tuple(ka * x + kb * y for x, y in zip(a, b))


@dataclass(frozen=True, eq=False)
class EulerLattice:
    """Weight data together with the Euler form on K_0 in the canonical basis.

    Build with :func:`build_lattice`; instances are cached per weight type and
    never mutated afterwards.
    """

    w: WeightType
    gram: tuple[tuple[int, ...], ...]
    rankvec: tuple[int, ...]
    degvec: tuple[int, ...]
    omega_matrix: tuple[tuple[int, ...], ...]
    g2: int
    basis_twists: tuple[LVec, ...]
    _twist_cache: dict = field(default_factory=dict, repr=False)

    # -- shape -----------------------------------------------------------
    @cached_property
    def n(self) -> int:
        return self.w.n

    @property
    def p(self) -> int:
        return self.w.p

    @property
    def genus(self) -> Fraction:
        return Fraction(self.g2, 2)

    def check(self, a: Sequence[int]) -> K0Class:
        if len(a) != self.n:
            raise MalformedInput(f"class has length {len(a)}, expected n={self.n}")
        return tuple(int(x) for x in a)

    def basis(self, k: int) -> K0Class:
        e = [0] * self.n
        e[k] = 1
        return tuple(e)

    def index(self, i: int, j: int) -> int:
        """Basis slot of ``[O(j x_i)]`` for ``0 <= j <= p_i`` (``j = p_i`` is ``O(c)``)."""
        pi = self.w.weights[i - 1]
        if j == 0:
            return 0
        if j == pi:
            return self.n - 1
        return 1 + sum(p - 1 for p in self.w.weights[: i - 1]) + (j - 1)

    # -- functionals -----------------------------------------------------
    def euler_form(self, a: Sequence[int], b: Sequence[int]) -> int:
        n = self.n
        if len(a) != n or len(b) != n:
            raise MalformedInput("class length does not match lattice rank")
        total = 0
        for ai, row in zip(a, self.gram):
            if ai:
                total += ai * sum(map(mul, row, b))
        return total

    def rank_of(self, a: Sequence[int]) -> int:
        if len(a) != self.n:
            raise MalformedInput("class length does not match lattice rank")
        return sum(a)

    def degree_of(self, a: Sequence[int]) -> int:
        if len(a) != self.n:
            raise MalformedInput("class length does not match lattice rank")
        return sum(d * x for d, x in zip(self.degvec, a))

    # -- distinguished classes --------------------------------------------
    def line_class(self, y: LVec) -> K0Class:
        """Class of ``O(y)``: the walk ``0 -> y`` taking c-steps first, then each arm."""
        if y.wt != self.w:
            raise MalformedInput(f"L-vector over {y.wt} used with lattice {self.w}")
        e0, ec = 0, self.n - 1
        v = [0] * self.n
        v[e0] += 1 - y.l
        v[ec] += y.l
        for i, li in enumerate(y.arm, start=1):
            if li:
                v[self.index(i, li)] += 1
                v[e0] -= 1
        return tuple(v)

    def simple_class(self, i: int, j: int) -> K0Class:
        """``[S_{i,j}] = [O((j+1) x_i)] - [O(j x_i)]`` with ``j`` read mod ``p_i``."""
        if not 1 <= i <= self.w.t:
            raise MalformedInput(f"arm index {i} out of range 1..{self.w.t}")
        j %= self.w.weights[i - 1]
        v = [0] * self.n
        v[self.index(i, j + 1)] += 1
        v[self.index(i, j)] -= 1
        return tuple(v)

    def ordinary_simple_class(self) -> K0Class:
        v = [0] * self.n
        v[-1] = 1
        v[0] = -1
        return tuple(v)

    # -- automorphisms ---------------------------------------------------
    def twist_matrix(self, z: LVec) -> tuple[tuple[int, ...], ...]:
        """Columns are the images of the basis classes under ``- (x) O(z)``."""
        key = (z.l, z.arm)
        m = self._twist_cache.get(key)
        if m is None:
            cols = [self.line_class(x + z) for x in self.basis_twists]
            m = tuple(tuple(cols[k][r] for k in range(self.n)) for r in range(self.n))
            self._twist_cache[key] = m
        return m

    def twist_class(self, a: Sequence[int], z: LVec) -> K0Class:
        m = self.twist_matrix(z)
        return tuple(sum(row[k] * a[k] for k in range(self.n)) for row in m)

    def tau(self, a: Sequence[int]) -> K0Class:
        return self.twist_class(a, dualizing_element(self.w))

    def tau_inv(self, a: Sequence[int]) -> K0Class:
        return self.twist_class(a, lv_neg(dualizing_element(self.w)))

    # -- Riemann-Roch ----------------------------------------------------
    def tau_orbit_sum(self, a: Sequence[int], b: Sequence[int]) -> int:
        """``sum_{j=0}^{p-1} chi(tau^j a, b)``."""
        total = 0
        cur = tuple(a)
        for _ in range(self.p):
            total += self.euler_form(cur, b)
            cur = self.tau(cur)
        return total

    def p_one_minus_g(self) -> int:
        """``p (1 - g)``, an integer by construction."""
        return self.p - self.p * self.g2 // 2

    def riemann_roch_residual(self, a: Sequence[int], b: Sequence[int]) -> int:
        ra, rb = self.rank_of(a), self.rank_of(b)
        da, db = self.degree_of(a), self.degree_of(b)
        rhs = self.p_one_minus_g() * ra * rb + (ra * db - rb * da)
        return self.tau_orbit_sum(a, b) - rhs


def _genus2(w: WeightType, gram, twist_omega) -> int:
    # p(1-g) = sum_j chi(tau^j O, O); g2 = 2g.
    n = w.n
    e0 = tuple(1 if k == 0 else 0 for k in range(n))

    def chi(a, b):
        return sum(a[i] * gram[i][j] * b[j] for i in range(n) for j in range(n))

    total = 0
    cur = e0
    for _ in range(w.p):
        total += chi(cur, e0)
        cur = tuple(sum(row[k] * cur[k] for k in range(n)) for row in twist_omega)
    if (2 * total) % w.p:
        raise AssertionError(f"p(1-g) sum {total} not compatible with p={w.p}")
    return 2 - 2 * total // w.p


@lru_cache(maxsize=None)
def build_lattice(w: WeightType) -> EulerLattice:
    twists = tuple(lvecs_between_zero_and_c(w))
    omega = dualizing_element(w)
    n = w.n
    gram = tuple(
        tuple(
            dim_graded_piece(y - x) - dim_graded_piece(x - y + omega)
            for y in twists
        )
        for x in twists
    )
    lat = EulerLattice(
        w=w,
        gram=gram,
        rankvec=(1,) * n,
        degvec=tuple(delta_degree(x) for x in twists),
        omega_matrix=((0,),),
        g2=0,
        basis_twists=twists,
    )
    om = lat.twist_matrix(omega)
    object.__setattr__(lat, "omega_matrix", om)
    object.__setattr__(lat, "g2", _genus2(w, gram, om))
    return lat


def lattice_for(weights) -> EulerLattice:
    """Convenience: ``lattice_for((2, 3))`` or ``lattice_for("2,3")``."""
    if isinstance(weights, WeightType):
        return build_lattice(weights)
    return build_lattice(WeightType.parse(weights))


def lattice_dump(lat: EulerLattice) -> dict:
    return {
        "weights": list(lat.w.weights),
        "n": lat.n,
        "p": lat.p,
        "gram": [list(r) for r in lat.gram],
        "deg": list(lat.degvec),
        "omega_matrix": [list(r) for r in lat.omega_matrix],
        "genus2": lat.g2,
    }


def c_twist(lat: EulerLattice, k: int = 1) -> LVec:
    return lv_scale(k, canonical_element(lat.w))


def lvec(lat: EulerLattice, l: int, *arm: int) -> LVec:
    """Shorthand for ``normal_form(l, arm, lat.w)``."""
    return normal_form(l, list(arm), lat.w)
