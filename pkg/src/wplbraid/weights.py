"""Arithmetic in the rank one grading group L(p).

The group is generated by x_1, ..., x_t subject to p_1 x_1 = ... = p_t x_t = c.
Every element has a unique normal form ``l*c + sum(l_i * x_i)`` with
``0 <= l_i < p_i``; :class:`LVec` always stores that form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .errors import LatticeMismatch, MalformedInput


@dataclass(frozen=True)
class WeightType:
    """A weight sequence ``(p_1, ..., p_t)``; ``t == 0`` is the projective line."""

    weights: tuple[int, ...]

    def __post_init__(self):
        ws = tuple(int(p) for p in self.weights)
        for p in ws:
            if p < 2:
                raise MalformedInput(f"weights must be >= 2, got {p}")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def parse(cls, text: str | Iterable[int]) -> "WeightType":
        """Build from ``"2,3,5"`` (empty string gives the projective line) or an iterable."""
        if isinstance(text, str):
            text = text.strip()
            if not text or text in ("()", "[]"):
                return cls(())
            try:
                return cls(tuple(int(tok) for tok in text.strip("()[]").split(",") if tok.strip()))
            except ValueError as exc:
                raise MalformedInput(f"cannot parse weights {text!r}") from exc
        return cls(tuple(text))

    @property
    def t(self) -> int:
        return len(self.weights)

    @cached_property
    def p(self) -> int:
        return reduce(math.lcm, self.weights, 1)

    @cached_property
    def n(self) -> int:
        return 2 + sum(p - 1 for p in self.weights)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.weights)) + ")"


@dataclass(frozen=True)
class LVec:
    """Element ``l*c + sum(arm[i] * x_{i+1})`` of L(p), in normal form.

    Construct through :func:`normal_form` or the helpers below; the dataclass
    constructor checks the normal-form ranges but does not reduce.
    """

    wt: WeightType
    l: int
    arm: tuple[int, ...]

    def __post_init__(self):
        if len(self.arm) != self.wt.t:
            raise MalformedInput(f"arm has length {len(self.arm)}, expected {self.wt.t}")
        for a, p in zip(self.arm, self.wt.weights):
            if not 0 <= a < p:
                raise MalformedInput(f"arm {self.arm} not in normal form for {self.wt}")

    def __add__(self, other: "LVec") -> "LVec":
        return lv_add(self, other)

    def __neg__(self) -> "LVec":
        return lv_neg(self)

    def __sub__(self, other: "LVec") -> "LVec":
        return lv_add(self, lv_neg(other))

    def __rmul__(self, k: int) -> "LVec":
        return lv_scale(k, self)

    def text(self) -> str:
        return f"{self.l};" + ",".join(map(str, self.arm))


def normal_form(l: int, arm: Sequence[int], wt: WeightType) -> LVec:
    """Reduce ``l*c + sum(arm_i x_i)`` to normal form, carrying multiples of p_i into c."""
    if len(arm) != wt.t:
        raise MalformedInput(f"arm list has length {len(arm)}, expected t={wt.t}")
    l = int(l)
    out = []
    for a, p in zip(arm, wt.weights):
        q, r = divmod(int(a), p)
        l += q
        out.append(r)
    return LVec(wt, l, tuple(out))


def parse_lvec(text: str, wt: WeightType) -> LVec:
    """Parse the text form ``"l;l1,...,lt"`` (not necessarily normalized)."""
    try:
        head, _, tail = text.partition(";")
        arm = [int(tok) for tok in tail.split(",") if tok.strip()]
        return normal_form(int(head), arm, wt)
    except ValueError as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"cannot parse L-vector {text!r}") from exc


def _same(a: LVec, b: LVec) -> None:
    if a.wt != b.wt:
        raise LatticeMismatch(f"weight types differ: {a.wt} vs {b.wt}")


def lv_zero(wt: WeightType) -> LVec:
    return LVec(wt, 0, (0,) * wt.t)


def lv_add(a: LVec, b: LVec) -> LVec:
    _same(a, b)
    return normal_form(a.l + b.l, [x + y for x, y in zip(a.arm, b.arm)], a.wt)


def lv_neg(a: LVec) -> LVec:
    return normal_form(-a.l, [-x for x in a.arm], a.wt)


def lv_scale(k: int, a: LVec) -> LVec:
    return normal_form(k * a.l, [k * x for x in a.arm], a.wt)


def generator(wt: WeightType, i: int) -> LVec:
    """The generator x_i, 1-based."""
    if not 1 <= i <= wt.t:
        raise MalformedInput(f"arm index {i} out of range 1..{wt.t}")
    arm = [0] * wt.t
    arm[i - 1] = 1
    return normal_form(0, arm, wt)


def canonical_element(wt: WeightType) -> LVec:
    return LVec(wt, 1, (0,) * wt.t)


def dualizing_element(wt: WeightType) -> LVec:
    """omega = (t-2)c - sum(x_i)."""
    return normal_form(wt.t - 2, [-1] * wt.t, wt)


def dim_graded_piece(z: LVec) -> int:
    """dim Hom(O(x), O(x+z)): ``l+1`` for ``l >= -1`` and 0 below."""
    return max(0, z.l + 1)


def delta_degree(z: LVec) -> int:
    p = z.wt.p
    return z.l * p + sum(a * (p // pi) for a, pi in zip(z.arm, z.wt.weights))


def is_effective(z: LVec) -> bool:
    """Membership in the cone spanned by the x_i."""
    return z.l >= 0


def lvecs_between_zero_and_c(wt: WeightType) -> list[LVec]:
    """The twists ``0 <= x <= c`` in canonical-sequence order."""
    out = [lv_zero(wt)]
    for i, p in enumerate(wt.weights):
        for j in range(1, p):
            arm = [0] * wt.t
            arm[i] = j
            out.append(LVec(wt, 0, tuple(arm)))
    out.append(canonical_element(wt))
    return out
