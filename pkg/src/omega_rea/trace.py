"""JSON Lines trace files.

Line 1 is a header (format version, config echo, embedded fixtures).  Each
following line is one stage record.  The last line is a summary holding the
store digest and the final yielded set.

Partial functions are written as runs ``[start, stop, bit]`` over consecutive
positions of their domain; set descriptions as ``[column, default, rows]``.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path

from omega_rea.axioms import Axiom
from omega_rea.codec import ColumnDescription, PartialFunction, SetDescription
from omega_rea.errors import TraceError
from omega_rea.strategies import Witness
from omega_rea.tree import Node

FORMAT_VERSION = "1"


def pf_to_json(f: PartialFunction) -> list[list[int]]:
    runs: list[list[int]] = []
    for z, b in f.items():
        if runs and runs[-1][1] == z and runs[-1][2] == b:
            runs[-1][1] = z + 1
        else:
            runs.append([z, z + 1, b])
    return runs


def pf_from_json(runs: Iterable[Iterable[int]]) -> PartialFunction:
    ones: list[int] = []
    zeros: list[int] = []
    for start, stop, b in runs:
        if b not in (0, 1) or stop < start:
            raise TraceError(f"bad partial-function run {[start, stop, b]}")
        (ones if b else zeros).extend(range(start, stop))
    return PartialFunction.from_sets(ones, zeros)


def set_to_json(S: SetDescription) -> list:
    return [[n, S.column(n).default, sorted(S.column(n).exceptions)] for n in S.described_columns()]


def set_from_json(data: Iterable) -> SetDescription:
    return SetDescription(ColumnDescription(n, d, frozenset(rows)) for n, d, rows in data)


def axiom_to_json(a: Axiom) -> dict:
    return {"level": a.level, "cond": pf_to_json(a.condition), "target": a.target}


def axiom_from_json(d: dict) -> Axiom:
    return Axiom(d["level"], pf_from_json(d["cond"]), d["target"])


def witness_to_json(w: Witness) -> dict:
    return {"Y0": pf_to_json(w.y0), "Y1": pf_to_json(w.y1), "x": w.x, "y": w.y, "v0": w.v0, "v1": w.v1}


def witness_from_json(d: dict) -> Witness:
    return Witness(pf_from_json(d["Y0"]), pf_from_json(d["Y1"]), d["x"], d["y"], d["v0"], d["v1"])


@dataclass
class Guess:
    node: Node
    c_guess: SetDescription
    delta: PartialFunction


@dataclass
class TraceRecord:
    """One global stage: the node run, its outcome and everything it did."""

    t: int
    node: Node
    requirement: str
    base_column: int
    execution: int
    outcome: int
    axioms: list[Axiom] = field(default_factory=list)
    fresh: list[dict] = field(default_factory=list)
    guesses: list[Guess] = field(default_factory=list)
    events: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return self.requirement[0]

    @property
    def witness(self) -> Witness | None:
        w = self.events.get("activated")
        return w if isinstance(w, Witness) or w is None else witness_from_json(w)

    def to_json(self) -> dict:
        events = dict(self.events)
        if isinstance(events.get("activated"), Witness):
            events["activated"] = witness_to_json(events["activated"])
        return {
            "kind": "stage",
            "t": self.t,
            "node": list(self.node),
            "req": self.requirement,
            "l": self.base_column,
            "exec": self.execution,
            "w": self.outcome,
            "axioms": [axiom_to_json(a) for a in self.axioms],
            "fresh": self.fresh,
            "guesses": [
                {"node": list(g.node), "C": set_to_json(g.c_guess), "delta": pf_to_json(g.delta)} for g in self.guesses
            ],
            "events": events,
        }

    @classmethod
    def from_json(cls, d: dict) -> TraceRecord:
        events = dict(d.get("events", {}))
        if "activated" in events:
            events["activated"] = witness_from_json(events["activated"])
        return cls(
            t=d["t"],
            node=tuple(d["node"]),
            requirement=d["req"],
            base_column=d["l"],
            execution=d["exec"],
            outcome=d["w"],
            axioms=[axiom_from_json(a) for a in d.get("axioms", [])],
            fresh=list(d.get("fresh", [])),
            guesses=[Guess(tuple(g["node"]), set_from_json(g["C"]), pf_from_json(g["delta"])) for g in d.get("guesses", [])],
            events=events,
        )


@dataclass
class Trace:
    header: dict
    records: list[TraceRecord]
    summary: dict | None = None

    @property
    def history(self) -> list[tuple[int, Node, int]]:
        return [(r.t, r.node, r.outcome) for r in self.records]


def store_digest(entries: Iterable[tuple[Axiom, int]]) -> str:
    h = hashlib.sha256()
    for a, s in entries:
        h.update(_dumps([s, axiom_to_json(a)]).encode())
        h.update(b"\n")
    return h.hexdigest()


def _dumps(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def trace_lines(trace: Trace) -> list[str]:
    lines = [_dumps(trace.header)]
    lines += [_dumps(r.to_json()) for r in trace.records]
    if trace.summary is not None:
        lines.append(_dumps(trace.summary))
    return lines


def write_trace(trace: Trace, path: str | Path) -> None:
    Path(path).write_text("\n".join(trace_lines(trace)) + "\n", encoding="utf-8")


def parse_trace(lines: Iterable[str]) -> Trace:
    header = None
    records: list[TraceRecord] = []
    summary = None
    for k, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            d = json.loads(line)
            kind = d.get("kind")
            if k == 0:
                if kind != "header":
                    raise TraceError("first line is not a header record")
                if d.get("format") != FORMAT_VERSION:
                    raise TraceError(f"unsupported trace format {d.get('format')!r}")
                header = d
            elif kind == "stage":
                if summary is not None:
                    raise TraceError("stage record after the summary")
                records.append(TraceRecord.from_json(d))
            elif kind == "summary":
                summary = d
            else:
                raise TraceError(f"unknown record kind {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, TraceError):
                raise TraceError(f"line {k + 1}: {exc}") from None
            raise TraceError(f"line {k + 1}: malformed record ({exc!r})") from exc
    if header is None:
        raise TraceError("empty trace")
    return Trace(header, records, summary)


def read_trace(path: str | Path) -> Trace:
    with open(path, encoding="utf-8") as fh:
        return parse_trace(fh)
