"""Trace corruptions with a known verdict, for exercising the verifier.

Each fault takes the lines of a genuine trace file and returns corrupted
lines; it raises ``ValueError`` when the trace has nothing it can corrupt.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Sequence
from pathlib import Path

from omega_rea.codec import PartialFunction
from omega_rea.trace import pf_from_json, pf_to_json


def _decode(lines: Sequence[str]) -> list[dict]:
    return [json.loads(line) for line in lines if line.strip()]


def _encode(records: list[dict]) -> list[str]:
    return [json.dumps(r, sort_keys=True, separators=(",", ":")) for r in records]


def _stages(records: list[dict]) -> list[int]:
    return [k for k, r in enumerate(records) if r.get("kind") == "stage"]


def strip_delta_condition(lines: Sequence[str]) -> list[str]:
    """Drop the restraint part from the first axiom whose node has a restraint below its level."""
    recs = _decode(lines)
    deltas: dict[tuple, PartialFunction] = {}
    for k in _stages(recs):
        rec = recs[k]
        node = tuple(rec["node"])
        # the root's guesses arrive in the same record as its first run
        for g in rec["guesses"]:
            if tuple(g["node"]) == node:
                deltas[node] = pf_from_json(g["delta"])
        delta = deltas.get(node, PartialFunction())
        for ax in rec["axioms"]:
            below = delta.restrict_columns("below", ax["level"])
            if below:
                cond = pf_from_json(ax["cond"])
                ax["cond"] = pf_to_json(PartialFunction({z: b for z, b in cond.items() if z not in below}))
                return _encode(recs)
        for g in rec["guesses"]:
            deltas[tuple(g["node"])] = pf_from_json(g["delta"])
    raise ValueError("no axiom in the trace depends on a restraint")


def reorder_records(lines: Sequence[str]) -> list[str]:
    """Swap two adjacent stage records in the middle of the trace."""
    recs = _decode(lines)
    idx = _stages(recs)
    if len(idx) < 2:
        raise ValueError("need two stage records to reorder")
    k = len(idx) // 2 - 1
    a, b = idx[k], idx[k + 1]
    recs[a], recs[b] = recs[b], recs[a]
    return _encode(recs)


def forge_outcome(lines: Sequence[str]) -> list[str]:
    """Bump the reported outcome of the last root execution."""
    recs = _decode(lines)
    roots = [k for k in _stages(recs) if recs[k]["node"] == []]
    if not roots:
        raise ValueError("the root never runs")
    recs[roots[-1]]["w"] += 1
    return _encode(recs)


def duplicate_axiom(lines: Sequence[str]) -> list[str]:
    """Repeat the first recorded axiom with its level moved by one."""
    recs = _decode(lines)
    for k in _stages(recs):
        axioms = recs[k]["axioms"]
        if axioms:
            dup = dict(axioms[0])
            dup["level"] = dup["level"] - 1 if dup["level"] > 0 else dup["level"] + 1
            axioms.append(dup)
            return _encode(recs)
    raise ValueError("no axioms recorded")


def rewrite_guess(lines: Sequence[str]) -> list[str]:
    """Redefine the first non-root guess one stage later with one restraint bit flipped."""
    recs = _decode(lines)
    idx = _stages(recs)
    for pos, k in enumerate(idx[:-1]):
        for g in recs[k]["guesses"]:
            if g["node"]:
                delta = pf_from_json(g["delta"])
                forged = dict(delta.items())
                z = min(forged) if forged else 0
                forged[z] = 1 - forged.get(z, 0)
                new = dict(g, delta=pf_to_json(PartialFunction(forged)))
                recs[idx[pos + 1]]["guesses"].append(new)
                return _encode(recs)
    raise ValueError("no guess to rewrite")


FAULTS: dict[str, Callable[[Sequence[str]], list[str]]] = {
    "strip-delta": strip_delta_condition,
    "reorder": reorder_records,
    "forge-outcome": forge_outcome,
    "duplicate-axiom": duplicate_axiom,
    "rewrite-guess": rewrite_guess,
}


def inject(lines: Sequence[str], fault: str) -> list[str]:
    try:
        fn = FAULTS[fault]
    except KeyError:
        raise ValueError(f"unknown fault {fault!r}; choose from {', '.join(FAULTS)}") from None
    return fn(lines)


def inject_file(src: str | Path, dst: str | Path, fault: str) -> None:
    lines = Path(src).read_text(encoding="utf-8").splitlines()
    Path(dst).write_text("\n".join(inject(lines, fault)) + "\n", encoding="utf-8")
