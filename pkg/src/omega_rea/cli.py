"""Command line: ``run``, ``verify``, ``oracle`` and ``inspect``."""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from omega_rea.axioms import Axiom, AxiomStore, brute_force_yields, yields, yields_over
from omega_rea.codec import PartialFunction, SetDescription, unpair
from omega_rea.construction import RunConfig, run_construction
from omega_rea.errors import OmegaReaError
from omega_rea.oracles import load_fixtures
from omega_rea.trace import read_trace, set_from_json
from omega_rea.verify import CHECKS, verify_trace


def _describe(S: SetDescription, horizon: int, column: int | None = None) -> list[str]:
    cols = [column] if column is not None else S.described_columns()
    out = []
    for n in cols:
        d = S.column(n)
        if d.default:
            out.append(f"column {n}: cofinite, missing rows {sorted(d.exceptions)}")
        else:
            rows = sorted(d.exceptions)
            out.append(f"column {n}: rows {rows}")
    if not out:
        out.append(f"empty below {horizon}")
    return out


def cmd_run(args: argparse.Namespace) -> int:
    config = RunConfig(fixtures=args.fixtures, stages=args.stages, horizon=args.horizon, seed=args.seed, out=args.out)
    res = run_construction(config)
    print(f"ran {config.stages} stages, {len(res.store)} axioms, horizon {res.horizon}")
    for line in _describe(res.final_set, res.horizon):
        print("  " + line)
    print(f"trace written to {args.out}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.list_checks:
        print("\n".join(CHECKS))
        return 0
    if args.trace is None:
        raise SystemExit("verify: --trace is required")
    trace = read_trace(args.trace)
    fixtures = load_fixtures(args.fixtures) if args.fixtures else None
    report = verify_trace(trace, fixtures, args.check or None)
    print(report.format())
    print("OK" if report.ok else f"FAILED: {', '.join(report.failed())}")
    return 0 if report.ok else 1


def _load_axioms(path: str) -> tuple[list[Axiom], SetDescription, PartialFunction, int]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, list):
        data = {"axioms": data}
    axioms = [Axiom(a["level"], PartialFunction((p, b) for p, b in a.get("cond", [])), a["target"]) for a in data["axioms"]]
    C = set_from_json(data.get("C", []))
    delta = PartialFunction((p, b) for p, b in data.get("delta", []))
    return axioms, C, delta, data.get("l", 0)


def cmd_oracle(args: argparse.Namespace) -> int:
    axioms, C, delta, l = _load_axioms(args.axioms)
    for a in axioms:
        if a.problems():
            raise OmegaReaError(f"axiom {a}: {'; '.join(a.problems())}")
    H = args.horizon
    fast = yields_over(axioms, None, C, delta, l, horizon=H)
    slow = brute_force_yields(axioms, None, C, delta, l, H)
    a, b = set(fast.members_below(H)), set(slow.members_below(H))
    print(f"{'pos':>6} {'col,row':>9} {'engine':>7} {'oracle':>7}")
    for z in sorted(a | b):
        n, x = unpair(z)
        mark = "" if (z in a) == (z in b) else "  <- mismatch"
        print(f"{z:>6} {f'{n},{x}':>9} {int(z in a):>7} {int(z in b):>7}{mark}")
    same = a == b
    print(f"{len(a)} vs {len(b)} members below {H}: {'match' if same else 'MISMATCH'}")
    return 0 if same else 1


def cmd_inspect(args: argparse.Namespace) -> int:
    trace = read_trace(args.trace)
    horizon = trace.header["horizon"]
    store = AxiomStore()
    rec = None
    for r in trace.records:
        if r.t > args.stage:
            break
        for a in r.axioms:
            store.add(a, r.t)
        if r.t == args.stage:
            rec = r
    if rec is None:
        raise OmegaReaError(f"stage {args.stage} is not in the trace")
    print(f"stage {rec.t}: node {list(rec.node)} {rec.requirement} (l={rec.base_column}) outcome {rec.outcome}")
    if rec.events:
        shown = {k: v for k, v in rec.events.items() if k != "activated"}
        if "activated" in rec.events:
            w = rec.witness
            shown["activated"] = f"x={w.x} y={w.y} v0={w.v0} v1={w.v1}"
        print(f"  events {shown}")
    for a in rec.axioms:
        print(f"  axiom level {a.level} target {a.target} condition {dict(a.condition.items())}")
    print(f"yield after stage {rec.t} ({len(store)} axioms, horizon {horizon}):")
    for line in _describe(yields(store, None, horizon), horizon, args.column):
        print("  " + line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="omega-rea", description="Stage-by-stage simulator for an omega-REA construction.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run the construction and write a trace")
    r.add_argument("--fixtures", help="fixture JSON file (omit with --seed to generate fixtures)")
    r.add_argument("--stages", type=int, required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--seed", type=int)
    r.add_argument("--horizon", type=int)
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="replay a trace and run the invariant checks")
    v.add_argument("--trace")
    v.add_argument("--fixtures", help="defaults to the fixtures embedded in the trace")
    v.add_argument("--check", action="append", choices=CHECKS, metavar="NAME")
    v.add_argument("--list-checks", action="store_true")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="compare the engine with the brute-force oracle")
    o.add_argument("--axioms", required=True)
    o.add_argument("--horizon", type=int, required=True)
    o.set_defaults(func=cmd_oracle)

    i = sub.add_parser("inspect", help="show one stage and the set yielded so far")
    i.add_argument("--trace", required=True)
    i.add_argument("--stage", type=int, required=True)
    i.add_argument("--column", type=int)
    i.set_defaults(func=cmd_inspect)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OmegaReaError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"{args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
