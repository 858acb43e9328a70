"""Command line entry point: ``wplbraid <command> --weights 2,3 ...``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error,
3 search budget exhausted.  Output is canonical JSON unless ``--format csv``
is requested for traces and tables.
"""

from __future__ import annotations

import argparse
import logging
import os
import random
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .errors import MalformedInput, SearchExhausted, WplError
from .invariants import (
    braid_relation_suite,
    default_functionals,
    det_along_words,
    helix_check,
    invariant_determinant,
    invariant_matrix,
    random_word,
)
from .io import dumps, read_sequence, sequence_to_json, trace_to_csv, write_sequence
from .ktheory import EulerLattice, lattice_dump, lattice_for
from .mutation import apply_word, parse_word
from .orbits import (
    SearchBudget,
    find_braid_word,
    hom_two_ok,
    hom_two_scan,
    orbit_bfs,
    perp_sublattice,
    wing_gram_check,
)
from .sequences import canonical_sequence, det2_sequence, validate_sequence
from .spread import max_spread, shift_constraints, sgd_lower_bound

log = logging.getLogger("wplbraid")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Out:
    def __init__(self, stream):
        self.stream = stream

    def json(self, obj) -> None:
        self.stream.write(dumps(obj) + "\n")

    def text(self, s: str) -> None:
        self.stream.write(s)


def _run_config(args: argparse.Namespace) -> dict:
    skip = {"func", "config"}
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items()) if k not in skip}


def _lat(args) -> EulerLattice:
    return lattice_for(args.weights)


def _seq(args, lat: EulerLattice, attr: str = "seq"):
    path = getattr(args, attr, None)
    if path is None:
        return canonical_sequence(lat)
    return read_sequence(path, lat)


# -- commands -----------------------------------------------------------------

def cmd_lattice(args, out: _Out) -> int:
    lat = _lat(args)
    out.json(lattice_dump(lat))
    return EXIT_OK


def cmd_kappa(args, out: _Out) -> int:
    lat = _lat(args)
    s = det2_sequence(lat) if args.det2 else canonical_sequence(lat)
    if args.out:
        write_sequence(s, args.out)
    out.json(sequence_to_json(s))
    return EXIT_OK


def cmd_validate(args, out: _Out) -> int:
    lat = _lat(args)
    s = _seq(args, lat)
    rep = validate_sequence(s)
    # a file only proves the class-level conditions, not sheaf-level vanishing
    label = "combinatorial exceptional sequence" if rep.ok else "invalid"
    out.json({"full": s.is_full, "label": label, **rep.to_json()})
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_mutate(args, out: _Out) -> int:
    lat = _lat(args)
    s = _seq(args, lat)
    word = parse_word(args.word)
    res, steps = apply_word(s, word, trace=True)
    if args.out:
        write_sequence(res, args.out)
    if args.format == "csv":
        out.text(trace_to_csv(steps))
        return EXIT_OK
    doc = {"word": word, "result": sequence_to_json(res)}
    if args.trace:
        doc["trace"] = [st.to_json() for st in steps]
    out.json(doc)
    return EXIT_OK


def cmd_orbit(args, out: _Out) -> int:
    lat = _lat(args)
    s = _seq(args, lat)
    ball = orbit_bfs(s, args.radius, args.max_nodes)
    rows = []
    for classes, word in ball.values():
        res = max_spread(shift_constraints(s.replace(classes)))
        rows.append({"word": word, "classes": [list(c) for c in classes],
                     "norm": sorted((sum(c) for c in classes), reverse=True),
                     "spread": res.spread if res.consistent else None})
    if args.format == "csv":
        lines = ["word,norm,spread,classes"]
        for r in rows:
            lines.append(",".join([
                " ".join(map(str, r["word"])),
                " ".join(map(str, r["norm"])),
                "" if r["spread"] is None else str(r["spread"]),
                ";".join(" ".join(map(str, c)) for c in r["classes"]),
            ]))
        out.text("\n".join(lines) + "\n")
        return EXIT_OK
    doc = {"size": len(rows), "config": _run_config(args)}
    if args.list:
        doc["sequences"] = rows
    out.json(doc)
    return EXIT_OK


def cmd_connect(args, out: _Out) -> int:
    lat = _lat(args)
    src = _seq(args, lat, "src")
    dst = _seq(args, lat, "dst")
    budget = SearchBudget(max_nodes=args.max_nodes, max_depth=args.max_depth,
                          time_limit=args.time_limit, seed=args.seed)
    res = find_braid_word(src, dst, args.strategy, budget, fallback=args.fallback)
    doc = res.to_json()
    doc["config"] = _run_config(args)
    out.json(doc)
    return EXIT_OK if res.found else EXIT_BUDGET


def cmd_det(args, out: _Out) -> int:
    lat = _lat(args)
    s = _seq(args, lat) if args.seq else det2_sequence(lat)
    d = invariant_determinant(lat, s)
    doc = {"p": lat.p, "det": d, "matrix": invariant_matrix(lat, s),
           "functionals": list(default_functionals(lat).names)}
    holds = abs(d) == lat.p
    if args.words:
        v = det_along_words(lat, s, args.words, args.len, args.seed)
        doc["walk"] = v.to_json()
        holds = holds and v.passed
        doc["config"] = _run_config(args)
    doc["invariant_holds"] = holds
    out.json(doc)
    return EXIT_OK if holds else EXIT_FAIL


def cmd_helix(args, out: _Out) -> int:
    lat = _lat(args)
    s = _seq(args, lat)
    verdicts = [helix_check(lat, s)]
    rng = random.Random(args.seed)
    for _ in range(args.random):
        verdicts.append(helix_check(lat, apply_word(s, random_word(lat.n, rng.randint(0, args.len), rng))))
    ok = all(v.passed for v in verdicts)
    out.json({"passed": ok, "checks": sum(v.checks for v in verdicts),
              "failures": [f for v in verdicts for f in v.failures][:20],
              "config": _run_config(args)})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_relations(args, out: _Out) -> int:
    lat = _lat(args)
    s = _seq(args, lat)
    v = braid_relation_suite(lat, s, args.trials, args.seed)
    doc = v.to_json()
    doc["config"] = _run_config(args)
    out.json(doc)
    return EXIT_OK if v.passed else EXIT_FAIL


def cmd_rr(args, out: _Out) -> int:
    lat = _lat(args)
    rng = random.Random(args.seed)
    bad = []
    for _ in range(args.pairs):
        a = tuple(rng.randint(-args.range, args.range) for _ in range(lat.n))
        b = tuple(rng.randint(-args.range, args.range) for _ in range(lat.n))
        r = lat.riemann_roch_residual(a, b)
        if r:
            bad.append({"a": list(a), "b": list(b), "residual": r})
    arms = []
    line = lat.basis(0)
    for i, pi in enumerate(lat.w.weights, start=1):
        got = lat.tau_orbit_sum(lat.simple_class(i, 0), line)
        arms.append({"arm": i, "sum": got, "expected": -(lat.p // pi)})
    ok = not bad and all(a["sum"] == a["expected"] for a in arms)
    out.json({"passed": ok, "pairs": args.pairs, "nonzero_residuals": bad[:20],
              "genus2": lat.g2, "p_one_minus_g": lat.p_one_minus_g(), "tube_sums": arms,
              "config": _run_config(args)})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_perp(args, out: _Out) -> int:
    lat = _lat(args)
    wings = [wing_gram_check(lat, lat.basis(k)) for k in range(lat.n)]
    scans = [{"base": x.text(), "ok": hom_two_ok(hom_two_scan(lat, x))} for x in lat.basis_twists]
    perps = []
    for i, p in enumerate(lat.w.weights, start=1):
        for j in range(p):
            P = perp_sublattice(lat, lat.simple_class(i, j))
            perps.append({"simple": [i, j], "basis": [list(b) for b in P.basis], "gram": P.gram})
    ok = all(w.ok for w in wings) and all(s["ok"] for s in scans)
    out.json({"passed": ok, "wings": [w.to_json() for w in wings], "hom_two_scan": scans,
              "perpendicular": perps})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sgd(args, out: _Out) -> int:
    lat = _lat(args)
    res = sgd_lower_bound(lat, args.max_nodes, args.radius, args.time_limit)
    doc = res.to_json()
    doc["config"] = _run_config(args)
    out.json(doc)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def _weights_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--weights", default="", help='weight sequence such as "2,3,5"; empty for the projective line')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wplbraid", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", type=Path, help="file of key=value lines used as option defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        _weights_arg(p)
        p.set_defaults(func=func)
        return p

    add("lattice", cmd_lattice, "Euler form, degrees and genus")

    p = add("kappa", cmd_kappa, "canonical sequence of line bundles")
    p.add_argument("--det2", action="store_true", help="emit (O, O(c), simples) instead")
    p.add_argument("--out", type=Path)

    p = add("validate", cmd_validate, "check a sequence file")
    p.add_argument("--seq", type=Path, required=True)

    p = add("mutate", cmd_mutate, "apply a braid word")
    p.add_argument("--seq", type=Path)
    p.add_argument("--word", required=True, help='letters such as "1 -2 3"; the rightmost acts first')
    p.add_argument("--trace", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=Path)

    p = add("orbit", cmd_orbit, "breadth-first ball in the braid orbit")
    p.add_argument("--seq", type=Path)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--max-nodes", type=int, default=10_000)
    p.add_argument("--list", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("connect", cmd_connect, "find a braid word between two sequences")
    p.add_argument("--src", type=Path)
    p.add_argument("--dst", type=Path, required=True)
    p.add_argument("--strategy", choices=("recursive", "bidirectional", "bfs"), default="recursive")
    p.add_argument("--max-nodes", type=int, default=1_000_000)
    p.add_argument("--max-depth", type=int, default=64)
    p.add_argument("--time-limit", type=float)
    p.add_argument("--fallback", action="store_true", help="retry bidirectionally if the recursive search fails")
    p.add_argument("--seed", type=int, default=0)

    p = add("det", cmd_det, "determinant invariant")
    p.add_argument("--seq", type=Path)
    p.add_argument("--words", type=int, default=0)
    p.add_argument("--len", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)

    p = add("helix", cmd_helix, "helix rotation check")
    p.add_argument("--seq", type=Path)
    p.add_argument("--random", type=int, default=0, help="also check this many random orbit elements")
    p.add_argument("--len", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    p = add("relations", cmd_relations, "braid relations on random contexts")
    p.add_argument("--seq", type=Path)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)

    p = add("rr-check", cmd_rr, "Riemann-Roch residuals")
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--range", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)

    add("perp", cmd_perp, "wing and perpendicular lattice report")

    p = add("sgd", cmd_sgd, "lower bound for the strongest global dimension")
    p.add_argument("--max-nodes", type=int, default=100_000)
    p.add_argument("--radius", type=int)
    p.add_argument("--time-limit", type=float)
    return parser


def _read_config(path: Path) -> dict[str, str]:
    cfg = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MalformedInput(f"{path}:{lineno}: expected key=value")
        k, v = line.split("=", 1)
        cfg[k.strip().replace("-", "_")] = v.strip()
    return cfg


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str], path: Path) -> argparse.Namespace:
    """Re-parse with file values installed as defaults, so flags still win."""
    first = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[first.command]
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for k, v in _read_config(path).items():
        if k == "command":
            continue
        a = actions.get(k)
        if a is None:
            raise MalformedInput(f"{path}: unknown key {k!r} for command {first.command}")
        if a.const is True and a.nargs == 0:
            defaults[k] = v.lower() in ("1", "true", "yes", "on")
        else:
            defaults[k] = a.type(v) if a.type else v
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def _setup_logging() -> None:
    level = os.environ.get("WPL_BRAID_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None, stdout=None) -> int:
    _setup_logging()
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    out = _Out(stdout or sys.stdout)
    try:
        args = parser.parse_args(argv)
        if args.config is not None:
            args = _apply_config(parser, argv, args.config)
        log.info("running %s for weights %r", args.command, args.weights)
        return args.func(args, out)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    except (MalformedInput, OSError) as exc:
        print(f"wplbraid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SearchExhausted as exc:
        print(f"wplbraid: budget exhausted: {exc}", file=sys.stderr)
        out.json({"found": False, "reason": str(exc), "stats": exc.stats})
        return EXIT_BUDGET
    except WplError as exc:
        print(f"wplbraid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
