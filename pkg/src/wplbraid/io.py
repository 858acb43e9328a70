"""Reading and writing sequences, reports and mutation traces."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable, TextIO

from .errors import SchemaError
from .ktheory import EulerLattice, lattice_for
from .mutation import TraceStep
from .sequences import ExcSeq


def sequence_to_json(s: ExcSeq) -> dict:
    return {"weights": list(s.lat.w.weights), "classes": [list(c) for c in s.classes]}


def sequence_from_json(data: Any, lat: EulerLattice | None = None) -> ExcSeq:
    """Validate the document shape and build the sequence.

    The first offending field is named in the error, e.g. ``classes[2]``.
    """
    if not isinstance(data, dict):
        raise SchemaError("document: expected an object")
    if "classes" not in data:
        raise SchemaError("classes: missing")
    weights = data.get("weights")
    if lat is None:
        if weights is None:
            raise SchemaError("weights: missing")
        if not isinstance(weights, list) or not all(isinstance(p, int) and not isinstance(p, bool) for p in weights):
            raise SchemaError("weights: expected a list of integers")
        lat = lattice_for(tuple(weights))
    elif weights is not None and tuple(weights) != lat.w.weights:
        raise SchemaError(f"weights: file has {weights}, expected {list(lat.w.weights)}")
    classes = data["classes"]
    if not isinstance(classes, list):
        raise SchemaError("classes: expected a list")
    out = []
    for k, c in enumerate(classes):
        if not isinstance(c, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in c):
            raise SchemaError(f"classes[{k}]: expected a list of integers")
        if len(c) != lat.n:
            raise SchemaError(f"classes[{k}]: length {len(c)}, expected {lat.n}")
        out.append(tuple(c))
    return ExcSeq(lat, tuple(out))


def read_sequence(path: str | Path, lat: EulerLattice | None = None) -> ExcSeq:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"document: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return sequence_from_json(data, lat)


def write_sequence(s: ExcSeq, path: str | Path) -> None:
    Path(path).write_text(dumps(sequence_to_json(s)) + "\n")


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, indent=2)


def write_report(obj: Any, stream: TextIO) -> None:
    stream.write(dumps(obj) + "\n")


def trace_to_csv(steps: Iterable[TraceStep], stream: TextIO | None = None) -> str:
    """One row per mutation step: step, letter, case, classes (``;``-joined)."""
    buf = stream if stream is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["step", "letter", "case", "classes"])
    for st in steps:
        writer.writerow([st.step, st.letter, st.case.value,
                         ";".join(" ".join(map(str, c)) for c in st.classes)])
    return buf.getvalue() if stream is None else ""
