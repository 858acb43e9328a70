"""Left/right mutation of exceptional pairs and the braid group action.

Words follow the usual left-action notation: ``[a1, a2, ..., ak]`` stands for
``s_{a1} s_{a2} ... s_{ak}``, so the *rightmost* letter acts first.  A
positive letter ``i`` is the left mutation at slots ``(i, i+1)`` (1-based), a
negative letter its inverse.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MalformedInput, ModelInconsistency
from .ktheory import EulerLattice, K0Class, vcomb
from .sequences import ExcSeq

Word = list[int]


class MutationCase(enum.Enum):
    CAN_EPI = "can_epi"          # 0 -> L -> Hom(A,B) (x) A -> B -> 0
    CAN_MONO = "can_mono"        # 0 -> Hom(A,B) (x) A -> B -> L -> 0
    EXTENSION = "extension"      # 0 -> B -> L -> Ext(A,B) (x) A -> 0
    TRANSPOSITION = "transposition"


def _check_pair(lat: EulerLattice, a, b) -> None:
    if lat.euler_form(b, a) != 0:
        raise MalformedInput("not an exceptional pair: chi(B, A) != 0")


def select_left_case(lat: EulerLattice, a: Sequence[int], b: Sequence[int]) -> tuple[MutationCase, int]:
    """Which exact sequence defines ``L_A B``; returns the case and ``h`` or ``e``.

    For ``rk A > 0`` the trace map is onto iff ``h * rk A > rk B``.  Between
    torsion sheaves the same test is made with degrees (both lie in one tube
    when ``h > 0``, where length is proportional to degree).
    """
    _check_pair(lat, a, b)
    x = lat.euler_form(a, b)
    if x == 0:
        return MutationCase.TRANSPOSITION, 0
    if x < 0:
        return MutationCase.EXTENSION, -x
    h = x
    ra, rb = lat.rank_of(a), lat.rank_of(b)
    if ra > 0:
        return (MutationCase.CAN_EPI if h * ra > rb else MutationCase.CAN_MONO), h
    if rb > 0:
        raise ModelInconsistency("nonzero map from a torsion class to a class of positive rank")
    da, db = lat.degree_of(a), lat.degree_of(b)
    if h * da > db:
        return MutationCase.CAN_EPI, h
    if h * da < db:
        return MutationCase.CAN_MONO, h
    raise ModelInconsistency("trace map between torsion classes would be bijective")


def left_mutation_class(lat: EulerLattice, a: Sequence[int], b: Sequence[int]) -> K0Class:
    return left_mutation(lat, a, b)[1]


def left_mutation(lat: EulerLattice, a, b) -> tuple[MutationCase, K0Class]:
    case, k = select_left_case(lat, a, b)
    if case is MutationCase.CAN_EPI:
        return case, vcomb(k, a, -1, b)
    if case is MutationCase.CAN_MONO:
        return case, vcomb(-k, a, 1, b)
    if case is MutationCase.EXTENSION:
        return case, vcomb(k, a, 1, b)
    return case, tuple(b)


def _sheaf_like(lat: EulerLattice, r: Sequence[int]) -> bool:
    rk = lat.rank_of(r)
    return rk > 0 or (rk == 0 and lat.degree_of(r) > 0)


def right_mutation(lat: EulerLattice, a, b) -> tuple[MutationCase, K0Class]:
    """``R_B A`` found as the unique inverse of left mutation.

    The candidates are the four class formulas of the right-mutation
    sequences.  A candidate ``r`` must form an exceptional pair ``(B, r)``,
    be the class of a sheaf (positive rank, or rank 0 and positive degree),
    and satisfy ``L_B r = A``.  The returned case is the one selected for
    ``(B, r)``, i.e. the sequence read backwards.
    """
    _check_pair(lat, a, b)
    a, b = tuple(a), tuple(b)
    x = lat.euler_form(a, b)
    h, e = max(x, 0), max(-x, 0)
    cands = {vcomb(h, b, -1, a), vcomb(1, a, -h, b), vcomb(1, a, e, b), a}
    found = []
    for r in cands:
        if lat.euler_form(r, r) != 1 or lat.euler_form(r, b) != 0:
            continue
        if not _sheaf_like(lat, r):
            continue
        try:
            case, back = left_mutation(lat, b, r)
        except ModelInconsistency:
            continue
        if back == a:
            found.append((case, r))
    if len(found) != 1:
        raise ModelInconsistency(f"right mutation has {len(found)} consistent candidates")
    return found[0]


def right_mutation_class(lat: EulerLattice, a: Sequence[int], b: Sequence[int]) -> K0Class:
    return right_mutation(lat, a, b)[1]


# -- sequence level -------------------------------------------------------

def mutate_classes(lat: EulerLattice, classes: tuple[K0Class, ...], letter: int) -> tuple[tuple[K0Class, ...], MutationCase]:
    """Apply one signed generator to a raw class tuple."""
    i = abs(letter)
    if letter == 0 or i >= len(classes):
        raise MalformedInput(f"generator {letter} out of range for length {len(classes)}")
    a, b = classes[i - 1], classes[i]
    if letter > 0:
        case, l = left_mutation(lat, a, b)
        pair = (l, a)
    else:
        case, r = right_mutation(lat, a, b)
        pair = (b, r)
    return classes[: i - 1] + pair + classes[i + 1 :], case


def apply_generator(s: ExcSeq, i: int, sign: int = 1) -> ExcSeq:
    letter = i if sign > 0 else -i
    out, _ = mutate_classes(s.lat, s.classes, letter)
    return ExcSeq(s.lat, out)


@dataclass
class TraceStep:
    step: int
    letter: int
    case: MutationCase
    classes: tuple[K0Class, ...]

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "letter": self.letter,
            "case": self.case.value,
            "classes": [list(c) for c in self.classes],
        }


def parse_word(text: str | Iterable[int]) -> Word:
    if isinstance(text, str):
        try:
            return [int(tok) for tok in text.replace(",", " ").split()]
        except ValueError as exc:
            raise MalformedInput(f"cannot parse braid word {text!r}") from exc
    return [int(x) for x in text]


def word_inverse(word: Sequence[int]) -> Word:
    return [-x for x in reversed(word)]


def action_order(word: Sequence[int]) -> list[int]:
    """Letters in the order they act."""
    return list(reversed(word))


def word_from_actions(actions: Sequence[int]) -> Word:
    """Inverse of :func:`action_order`."""
    return list(reversed(actions))


def apply_actions(lat: EulerLattice, classes: tuple[K0Class, ...], actions: Iterable[int]) -> tuple[K0Class, ...]:
    for letter in actions:
        classes, _ = mutate_classes(lat, classes, letter)
    return classes


def apply_word(s: ExcSeq, word: Sequence[int], trace: bool = False):
    """Act on ``s`` by ``word``; with ``trace=True`` also return the steps."""
    steps: list[TraceStep] = []
    classes = s.classes
    for k, letter in enumerate(action_order(word), start=1):
        classes, case = mutate_classes(s.lat, classes, letter)
        if trace:
            steps.append(TraceStep(k, letter, case, classes))
    out = ExcSeq(s.lat, classes)
    return (out, steps) if trace else out
