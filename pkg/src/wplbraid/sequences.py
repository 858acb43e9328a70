"""Exceptional sequences modelled by their K_0 classes.

A sequence is valid when every entry has ``chi(e, e) = 1``, no entry has
nonzero Euler form towards an earlier one, and (for full length) the entries
form a basis of K_0.  This is the class-level shadow of Hom/Ext vanishing;
sequences produced by mutation from the canonical sequence are genuinely
exceptional, arbitrary tuples that merely pass these checks are only
*combinatorially* exceptional.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import MalformedInput
from .ktheory import EulerLattice, K0Class, vadd
from .linalg import bareiss_det


@dataclass(frozen=True)
class ExcSeq:
    lat: EulerLattice
    classes: tuple[K0Class, ...]

    def __post_init__(self):
        cs = tuple(self.lat.check(c) for c in self.classes)
        object.__setattr__(self, "classes", cs)

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, k):
        return self.classes[k]

    def __iter__(self):
        return iter(self.classes)

    @property
    def is_full(self) -> bool:
        return len(self.classes) == self.lat.n

    def replace(self, classes: Iterable[K0Class]) -> "ExcSeq":
        return ExcSeq(self.lat, tuple(classes))

    def ranks(self) -> list[int]:
        return [self.lat.rank_of(c) for c in self.classes]


def canonical_sequence(lat: EulerLattice) -> ExcSeq:
    return ExcSeq(lat, tuple(lat.basis(k) for k in range(lat.n)))


def det2_sequence(lat: EulerLattice) -> ExcSeq:
    """``(O, O(c), S_{1,p_1-1}, ..., S_{1,1}, ..., S_{t,1})``.

    Inside each arm the simples run in descending index; the ascending order
    has ``chi(S_{i,j+1}, S_{i,j}) = -1`` and is not exceptional under the
    twisting convention used here.
    """
    cs = [lat.basis(0), lat.basis(lat.n - 1)]
    for i, p in enumerate(lat.w.weights, start=1):
        for j in range(p - 1, 0, -1):
            cs.append(lat.simple_class(i, j))
    return ExcSeq(lat, tuple(cs))


@dataclass
class Violation:
    kind: str  # "not_exceptional" | "backward" | "not_unimodular"
    where: tuple[int, ...]
    value: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "where": list(self.where), "value": self.value}


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


def coordinate_det(s: ExcSeq) -> int:
    return bareiss_det([list(c) for c in s.classes])


def validate_sequence(s: ExcSeq) -> ValidationReport:
    """Check the class-level exceptional-sequence conditions.

    Positions in the report are 1-based; a ``backward`` violation at
    ``(j, i)`` means ``chi(e_j, e_i) != 0`` with ``j > i``.
    """
    lat = s.lat
    rep = ValidationReport()
    cs = s.classes
    for i, e in enumerate(cs):
        v = lat.euler_form(e, e)
        if v != 1:
            rep.violations.append(Violation("not_exceptional", (i + 1,), v))
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            v = lat.euler_form(cs[j], cs[i])
            if v != 0:
                rep.violations.append(Violation("backward", (j + 1, i + 1), v))
    if s.is_full:
        d = coordinate_det(s)
        if abs(d) != 1:
            rep.violations.append(Violation("not_unimodular", (), d))
    return rep


def is_valid(s: ExcSeq) -> bool:
    return validate_sequence(s).ok


def pair_dims(s: ExcSeq, i: int, j: int) -> tuple[int, int]:
    """``(dim Hom, dim Ext^1)`` between entries ``i < j`` (0-based).

    One of the two spaces vanishes for an exceptional pair, so the Euler
    form determines both.
    """
    if i >= j:
        raise MalformedInput(f"pair_dims needs i < j, got ({i}, {j})")
    x = s.lat.euler_form(s.classes[i], s.classes[j])
    return max(x, 0), max(-x, 0)


# -- rank zero classification -------------------------------------------------

@dataclass(frozen=True)
class Tube:
    """Indecomposable of length ``length`` in tube ``arm`` with socle-side start ``start``:
    class ``sum_{m=start}^{start+length-1} [S_{arm, m mod p}]``."""

    arm: int
    start: int
    length: int

    @property
    def is_simple(self) -> bool:
        return self.length == 1

    def to_json(self) -> dict:
        return {"kind": "tube", "arm": self.arm, "start": self.start, "length": self.length}


@dataclass(frozen=True)
class OrdinarySimple:
    def to_json(self) -> dict:
        return {"kind": "ordinary_simple"}


@dataclass(frozen=True)
class NotRank0:
    def to_json(self) -> dict:
        return {"kind": "not_rank0"}


@dataclass(frozen=True)
class Unrecognized:
    def to_json(self) -> dict:
        return {"kind": "unrecognized"}


Rank0Kind = Tube | OrdinarySimple | NotRank0 | Unrecognized

_TUBE_TABLES: dict[int, dict[K0Class, Rank0Kind]] = {}


def _tube_table(lat: EulerLattice) -> dict[K0Class, Rank0Kind]:
    key = id(lat)
    table = _TUBE_TABLES.get(key)
    if table is None:
        table = {lat.ordinary_simple_class(): OrdinarySimple()}
        for i, p in enumerate(lat.w.weights, start=1):
            for j in range(p):
                acc = tuple([0] * lat.n)
                for length in range(1, p):
                    acc = vadd(acc, lat.simple_class(i, j + length - 1))
                    assert acc not in table, "tube cells must have distinct classes"
                    table[acc] = Tube(i, j, length)
        _TUBE_TABLES[key] = table
    return table


def classify_rank0(lat: EulerLattice, a: Sequence[int]) -> Rank0Kind:
    a = tuple(a)
    if lat.rank_of(a) != 0:
        return NotRank0()
    return _tube_table(lat).get(a, Unrecognized())


def is_simple_class(lat: EulerLattice, a: Sequence[int]) -> bool:
    k = classify_rank0(lat, a)
    return isinstance(k, Tube) and k.length == 1


def seq_fingerprint(s: ExcSeq | Sequence[Sequence[int]]) -> bytes:
    """Injective byte encoding of the coordinate tuple."""
    classes = s.classes if isinstance(s, ExcSeq) else s
    return "|".join(",".join(map(str, c)) for c in classes).encode()
