"""Finite stand-ins for Turing functionals, Delta^0_2 approximations and c.e. sets.

A :class:`TableFunctional` is a finite table of computations
``(x, sigma, v, steps)``.  Every row mentions only positions below its step
count, so the use convention holds by construction: a computation converging
within ``b`` steps never looks at the oracle at or beyond ``b``.
"""

from __future__ import annotations

import hashlib
import json
import random
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path

from omega_rea.codec import PartialFunction, SetDescription, pair
from omega_rea.errors import FixtureError

Oracle = SetDescription | PartialFunction


@dataclass(frozen=True)
class Row:
    x: int
    sigma: PartialFunction
    v: int
    steps: int


def _satisfies(oracle: Oracle, sigma: PartialFunction) -> bool:
    # for a finite string oracle this is "sigma is a subfunction of the string"
    return oracle.extends(sigma)


@dataclass(frozen=True)
class TableFunctional:
    rows: tuple[Row, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))

    def rows_for(self, x: int) -> list[Row]:
        return [r for r in self.rows if r.x == x]

    def inputs(self) -> list[int]:
        return sorted({r.x for r in self.rows})


def validate_functional(F: TableFunctional) -> list[str]:
    """Every violated invariant, one message per offending row or row pair; empty if valid."""
    problems: list[str] = []
    for k, r in enumerate(F.rows):
        if r.v not in (0, 1):
            problems.append(f"row {k}: output {r.v} is not a bit")
        if r.x < 0 or r.steps < 0:
            problems.append(f"row {k}: negative input or step count")
        bad = [z for z in r.sigma.domain if z >= r.steps]
        if bad:
            problems.append(f"row {k}: condition reads position {max(bad)} >= steps {r.steps}")
    for a in range(len(F.rows)):
        for b in range(a + 1, len(F.rows)):
            ra, rb = F.rows[a], F.rows[b]
            if ra.x == rb.x and ra.v != rb.v and ra.sigma.compatible(rb.sigma):
                problems.append(f"rows {a} and {b}: compatible conditions on input {ra.x} give {ra.v} and {rb.v}")
    return problems


def eval_functional(F: TableFunctional, oracle: Oracle, x: int, budget: int) -> int | None:
    """Value of the computation on ``x`` converging within ``budget`` steps, or ``None``."""
    problems = validate_functional(F)
    if problems:
        raise FixtureError("invalid functional: " + problems[0])
    return _eval_trusted(F, oracle, x, budget)


def _eval_trusted(F: TableFunctional, oracle: Oracle, x: int, budget: int) -> int | None:
    for r in F.rows:
        if r.x == x and r.steps <= budget and _satisfies(oracle, r.sigma):
            return r.v
    return None


@dataclass(frozen=True)
class Delta2Point:
    init: int = 0
    flips: tuple[int, ...] = ()
    period: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "flips", tuple(self.flips))
        if self.init not in (0, 1):
            raise FixtureError(f"initial bit must be 0 or 1, got {self.init!r}")
        if any(b <= a for a, b in zip(self.flips, self.flips[1:])):
            raise FixtureError(f"flip stages must strictly increase: {self.flips}")
        if self.period is not None and self.period <= 0:
            raise FixtureError(f"period must be positive, got {self.period}")

    def flips_through(self, s: int) -> int:
        count = sum(1 for f in self.flips if f <= s)
        if self.period is not None:
            start = self.flips[-1] if self.flips else 0
            if s >= start + self.period:
                count += (s - start) // self.period
        return count

    def value(self, s: int) -> int:
        return self.init ^ (self.flips_through(s) & 1)


@dataclass(frozen=True)
class Delta2Array:
    points: dict[int, dict[int, Delta2Point]] = field(default_factory=dict)

    def value(self, e: int, x: int, s: int) -> int:
        p = self.points.get(e, {}).get(x)
        return 0 if p is None else p.value(s)


def delta2_value(D: Delta2Array, e: int, x: int, s: int) -> int:
    return D.value(e, x, s)


@dataclass(frozen=True)
class CeSchedule:
    schedule: dict[int, tuple[tuple[int, int], ...]] = field(default_factory=dict)

    def members(self, e: int, s: int) -> frozenset[int]:
        return frozenset(elem for elem, stage in self.schedule.get(e, ()) if stage <= s)


def ce_members(S: CeSchedule, e: int, s: int) -> frozenset[int]:
    return S.members(e, s)


@dataclass(frozen=True)
class Fixtures:
    functionals: dict[int, TableFunctional] = field(default_factory=dict)
    delta2: Delta2Array = field(default_factory=Delta2Array)
    ce: CeSchedule = field(default_factory=CeSchedule)

    def functional(self, i: int) -> TableFunctional:
        return self.functionals.get(i) or TableFunctional()

    def largest_number(self) -> int:
        nums = [0]
        for F in self.functionals.values():
            for r in F.rows:
                nums += [r.x, r.steps, r.sigma.lh]
        for pts in self.delta2.points.values():
            for x, p in pts.items():
                nums += [x, *p.flips, p.period or 0]
        for sched in self.ce.schedule.values():
            for elem, stage in sched:
                nums += [elem, stage]
        return max(nums)

    def to_json(self) -> dict:
        return {
            "functionals": [
                {
                    "index": i,
                    "rows": [
                        {"x": r.x, "sigma": [list(it) for it in r.sigma.items()], "v": r.v, "steps": r.steps}
                        for r in F.rows
                    ],
                }
                for i, F in sorted(self.functionals.items())
            ],
            "delta2": [
                {
                    "index": e,
                    "points": [
                        {"x": x, "init": p.init, "flips": list(p.flips), **({"period": p.period} if p.period else {})}
                        for x, p in sorted(pts.items())
                    ],
                }
                for e, pts in sorted(self.delta2.points.items())
            ],
            "ce": [
                {"index": e, "schedule": [list(it) for it in sched]}
                for e, sched in sorted(self.ce.schedule.items())
            ],
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _nat(obj: object, what: str) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool) or obj < 0:
        raise FixtureError(f"{what} must be a natural number, got {obj!r}")
    return obj


def fixtures_from_json(data: dict) -> Fixtures:
    if not isinstance(data, dict):
        raise FixtureError("fixture file must hold a JSON object")
    unknown = set(data) - {"functionals", "delta2", "ce"}
    if unknown:
        raise FixtureError(f"unknown fixture fields {sorted(unknown)}")
    try:
        functionals: dict[int, TableFunctional] = {}
        for entry in data.get("functionals", []):
            i = _nat(entry["index"], "functional index")
            rows = tuple(
                Row(
                    _nat(r["x"], "row input"),
                    PartialFunction((_nat(p, "position"), b) for p, b in r.get("sigma", [])),
                    r["v"],
                    _nat(r["steps"], "row steps"),
                )
                for r in entry.get("rows", [])
            )
            if i in functionals:
                raise FixtureError(f"functional {i} listed twice")
            F = TableFunctional(rows)
            problems = validate_functional(F)
            if problems:
                raise FixtureError(f"functional {i}: " + "; ".join(problems))
            functionals[i] = F
        points: dict[int, dict[int, Delta2Point]] = {}
        for entry in data.get("delta2", []):
            e = _nat(entry["index"], "delta2 index")
            pts = points.setdefault(e, {})
            for p in entry.get("points", []):
                pts[_nat(p["x"], "delta2 x")] = Delta2Point(p.get("init", 0), tuple(p.get("flips", ())), p.get("period"))
        schedule: dict[int, tuple[tuple[int, int], ...]] = {}
        for entry in data.get("ce", []):
            e = _nat(entry["index"], "ce index")
            schedule[e] = tuple((_nat(a, "ce element"), _nat(b, "ce stage")) for a, b in entry.get("schedule", []))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FixtureError):
            raise
        raise FixtureError(f"malformed fixture: {exc!r}") from exc
    return Fixtures(functionals, Delta2Array(points), CeSchedule(schedule))


def load_fixtures(path: str | Path) -> Fixtures:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FixtureError(f"{path}: not valid JSON ({exc})") from exc
    return fixtures_from_json(data)


def write_fixtures(fixtures: Fixtures, path: str | Path) -> None:
    Path(path).write_text(json.dumps(fixtures.to_json(), indent=1, sort_keys=True) + "\n", encoding="utf-8")


def random_functional(
    rng: random.Random, inputs: Iterable[int], max_pos: int = 12, probes: list[int] | None = None
) -> TableFunctional:
    """A valid functional: per input, up to two rows split on one probe position.

    ``probes`` biases the probe towards the given positions, which is how the
    generated fixtures make functionals read what N strategies enumerate.
    """
    rows: list[Row] = []
    for x in inputs:
        probe = rng.choice(probes) if probes and rng.random() < 0.7 else rng.randrange(max_pos)
        v = rng.randrange(2)
        for bit in (0, 1):
            if rng.random() < 0.8:
                entries = {rng.randrange(max_pos): rng.randrange(2) for _ in range(rng.randrange(2))}
                entries[probe] = bit
                sigma = PartialFunction(entries)
                rows.append(Row(x, sigma, v ^ bit, sigma.lh + rng.randrange(4)))
    return TableFunctional(tuple(rows))


def random_fixtures(seed: int, n_functionals: int = 3, n_requirements: int = 3) -> Fixtures:
    """Deterministic pseudo-random fixtures with eventually-constant Delta^0_2 points."""
    rng = random.Random(seed)
    probes = [pair(3 * e + 2, r) for e in range(n_requirements) for r in range(3)]
    functionals = {
        i: random_functional(rng, range(rng.randrange(1, 3)), probes=probes) for i in range(n_functionals)
    }
    points: dict[int, dict[int, Delta2Point]] = {}
    for e in range(n_requirements):
        pts = {}
        for x in range(2):
            flips = sorted(rng.sample(range(1, 200), rng.randrange(4)))
            pts[x] = Delta2Point(rng.randrange(2), tuple(flips))
        points[e] = pts
    schedule = {}
    for e in range(n_requirements):
        col = 3 * e + 2
        elems = [(pair(col, rng.randrange(40)), rng.randrange(300)) for _ in range(rng.randrange(6))]
        if rng.random() < 0.6:
            elems.append((pair(col, rng.randrange(3)), rng.randrange(20)))
        schedule[e] = tuple(sorted(elems, key=lambda t: t[1]))
    return Fixtures(functionals, Delta2Array(points), CeSchedule(schedule))
