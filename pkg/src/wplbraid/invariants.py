"""Determinant invariant and verdict-producing structural checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import MalformedInput
from .ktheory import EulerLattice
from .linalg import bareiss_det
from .mutation import apply_word, mutate_classes
from .sequences import ExcSeq


@dataclass(frozen=True)
class FunctionalSet:
    """``n`` linear functionals on K_0, each an integer covector."""

    names: tuple[str, ...]
    covectors: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.covectors)

    def evaluate(self, k: int, a: Sequence[int]) -> int:
        return sum(x * y for x, y in zip(self.covectors[k], a))


def euler_covector(lat: EulerLattice, target: Sequence[int]) -> tuple[int, ...]:
    """Covector of ``a -> chi(a, target)``."""
    g = lat.gram
    return tuple(sum(g[i][j] * target[j] for j in range(lat.n)) for i in range(lat.n))


def default_functionals(lat: EulerLattice) -> FunctionalSet:
    """rank, degree, then ``chi(-, S_{i,j})`` for ``j = 1..p_i-1`` per arm."""
    names = ["rank", "degree"]
    covs = [lat.rankvec, lat.degvec]
    for i, p in enumerate(lat.w.weights, start=1):
        for j in range(1, p):
            names.append(f"chi(-,S[{i},{j}])")
            covs.append(euler_covector(lat, lat.simple_class(i, j)))
    return FunctionalSet(tuple(names), tuple(covs))


def standard_functionals(lat: EulerLattice) -> FunctionalSet:
    return FunctionalSet(
        tuple(f"coord[{k}]" for k in range(lat.n)),
        tuple(lat.basis(k) for k in range(lat.n)),
    )


def invariant_matrix(lat: EulerLattice, s: ExcSeq, fs: FunctionalSet | None = None) -> list[list[int]]:
    if len(s) != lat.n:
        raise MalformedInput(f"invariant matrix needs a full sequence (length {lat.n}), got {len(s)}")
    fs = fs or default_functionals(lat)
    if len(fs) != lat.n:
        raise MalformedInput(f"need exactly {lat.n} functionals, got {len(fs)}")
    return [[fs.evaluate(i, e) for e in s.classes] for i in range(lat.n)]


def invariant_determinant(lat: EulerLattice, s: ExcSeq, fs: FunctionalSet | None = None) -> int:
    return bareiss_det(invariant_matrix(lat, s, fs))


def random_word(n: int, length: int, rng: random.Random) -> list[int]:
    if n < 2:
        return []
    return [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)]


@dataclass
class Verdict:
    name: str
    passed: bool = True
    checks: int = 0
    failures: list[dict] = field(default_factory=list)
    transcript: list[dict] = field(default_factory=list)

    def fail(self, **info) -> None:
        self.passed = False
        self.failures.append(info)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures[:20],
        }


def det_along_words(lat: EulerLattice, start: ExcSeq, words: int, max_len: int, seed: int,
                    fs: FunctionalSet | None = None) -> Verdict:
    """Check ``|det M|`` after every single mutation step of random words."""
    fs = fs or default_functionals(lat)
    v = Verdict("determinant")
    target = abs(invariant_determinant(lat, start, fs))
    rng = random.Random(seed)
    for k in range(words):
        word = random_word(lat.n, rng.randint(0, max_len), rng)
        classes = start.classes
        for step, letter in enumerate(reversed(word)):
            classes, _ = mutate_classes(lat, classes, letter)
            d = bareiss_det([[fs.evaluate(i, e) for e in classes] for i in range(lat.n)])
            v.checks += 1
            if abs(d) != target:
                v.fail(word=word, step=step, det=d, expected=target)
                break
    return v


def helix_check(lat: EulerLattice, s: ExcSeq) -> Verdict:
    """Both helix rotations computed explicitly and compared with the twisted rotation.

    ``s_1 ... s_{n-1}`` turns ``(E_1..E_n)`` into ``(tau E_n, E_1..E_{n-1})``; its
    inverse read on a rotated sequence, ``s_{n-1}^-1 ... s_1^-1``, turns
    ``(E_1..E_n)`` into ``(E_2..E_n, tau^-1 E_1)``.
    """
    v = Verdict("helix")
    n = len(s)
    fwd = apply_word(s, list(range(1, n)))
    want = (lat.tau(s[n - 1]),) + s.classes[:-1]
    v.checks += 1
    if fwd.classes != want:
        v.fail(kind="forward", got=[list(c) for c in fwd.classes], want=[list(c) for c in want])
    bwd = apply_word(s, [-i for i in range(n - 1, 0, -1)])
    want = s.classes[1:] + (lat.tau_inv(s[0]),)
    v.checks += 1
    if bwd.classes != want:
        v.fail(kind="backward", got=[list(c) for c in bwd.classes], want=[list(c) for c in want])
    return v


def braid_relation_suite(lat: EulerLattice, s: ExcSeq, trials: int, seed: int, context_len: int = 12) -> Verdict:
    """Braid relations and inverse round trips on randomized contexts ``w . s``."""
    v = Verdict("braid_relations")
    rng = random.Random(seed)
    n = len(s)
    if n < 2:
        return v
    for _ in range(trials):
        ctx_word = random_word(n, rng.randint(0, context_len), rng)
        ctx = apply_word(s, ctx_word)
        i = rng.randint(1, n - 1)
        rec = {"context": ctx_word, "slot": i}
        checks = [([i, -i], []), ([-i, i], [])]
        if i + 1 <= n - 1:
            checks.append(([i, i + 1, i], [i + 1, i, i + 1]))
        far = [j for j in range(1, n) if abs(j - i) >= 2]
        if far:
            j = rng.choice(far)
            rec["far"] = j
            checks.append(([i, j], [j, i]))
            checks.append(([-i, j], [j, -i]))
        for lhs, rhs in checks:
            v.checks += 1
            if apply_word(ctx, lhs) != apply_word(ctx, rhs):
                v.fail(context=ctx_word, lhs=lhs, rhs=rhs)
        v.transcript.append(rec)
    return v
