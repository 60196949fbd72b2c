"""Trace verification by replay.

:func:`verify_trace` never re-runs the strategies.  It walks the records in
order, rebuilding the axiom store and the node guesses from what the records
say, and checks every record against the rules a strategy must obey given its
replayed state and the fixtures.  Each named check reports the stages at
which it failed.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from collections.abc import Iterable
from dataclasses import dataclass, field

from omega_rea.axioms import Axiom, AxiomStore, brute_force_yields, check_guesses, make_dependent, yields, yields_over
from omega_rea.codec import EMPTY, ColumnDescription, PartialFunction, SetDescription, column_of, pair, unpair
from omega_rea.errors import OmegaReaError
from omega_rea.oracles import Fixtures, eval_functional, fixtures_from_json
from omega_rea.strategies import Witness, permitted_targets, verify_activation
from omega_rea.trace import Trace, TraceRecord, set_to_json, store_digest
from omega_rea.tree import ROOT, Node, SchedulerState, assign_requirement, liminf_path, record_outcome, scheduler_next

CHECKS = (
    "header",
    "monotone-stages",
    "schedule",
    "requirements",
    "outcomes",
    "guesses",
    "write-once",
    "constraint-I",
    "constraint-II",
    "column-discipline",
    "axiom-shape",
    "freshness",
    "markers",
    "flag-disagreement",
    "activation",
    "cancel",
    "diagonalization",
    "n-acts-once",
    "store-consistency",
    "oracle-spot",
    "liminf",
)
INFORMATIONAL = frozenset({"liminf"})


@dataclass
class CheckResult:
    name: str
    failures: list[tuple[int | None, str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    informational: bool = False

    @property
    def passed(self) -> bool:
        return self.informational or not self.failures

    @property
    def stages(self) -> list[int]:
        return sorted({t for t, _ in self.failures if t is not None})


@dataclass
class Report:
    results: dict[str, CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results.values())

    def __getitem__(self, name: str) -> CheckResult:
        return self.results[name]

    def failed(self) -> list[str]:
        return [n for n, r in self.results.items() if not r.passed]

    def format(self, max_failures: int = 5) -> str:
        lines = []
        for name, r in self.results.items():
            tag = "INFO" if r.informational else ("PASS" if r.passed else "FAIL")
            lines.append(f"{tag} {name}" + (f"  ({'; '.join(r.notes)})" if r.notes else ""))
            for t, msg in r.failures[:max_failures]:
                lines.append(f"     stage {t}: {msg}" if t is not None else f"     {msg}")
            if len(r.failures) > max_failures:
                lines.append(f"     ... {len(r.failures) - max_failures} more")
        return "\n".join(lines)


@dataclass
class _RReplay:
    activated: bool = False
    activated_at: int | None = None
    witness: Witness | None = None
    q: int | None = None
    k0: int | None = None
    k: int | None = None
    n: int = 0
    last_j: int | None = None
    events: list[tuple[int, int]] = field(default_factory=list)  # (stage, cancelled marker)


@dataclass
class _Guess:
    c_guess: SetDescription
    delta: PartialFunction
    stage: int


class _Replay:
    def __init__(self, trace: Trace, fixtures: Fixtures, selected: set[str], spot_horizon: int, spot_samples: int):
        self.trace = trace
        self.fx = fixtures
        self.selected = selected
        self.spot_horizon = spot_horizon
        self.spot_samples = spot_samples
        self.fail: dict[str, list[tuple[int | None, str]]] = defaultdict(list)
        self.notes: dict[str, list[str]] = defaultdict(list)
        self.store = AxiomStore()
        self.guesses: dict[Node, _Guess] = {}
        self.rstate: dict[Node, _RReplay] = {}
        self.nacted: dict[Node, int] = {}
        self.requested: dict[Node, set[Axiom]] = defaultdict(set)
        self.execs: Counter[Node] = Counter()
        self.exec_stages: dict[Node, list[int]] = defaultdict(list)
        self.bound = 0
        self.horizon = trace.header.get("horizon")

    def flag(self, check: str, t: int | None, msg: str) -> None:
        self.fail[check].append((t, msg))

    def mention(self, *nums: int) -> None:
        if nums:
            self.bound = max(self.bound, max(nums) + 1)

    # -- whole-trace checks -------------------------------------------------

    def check_header(self) -> None:
        h = self.trace.header
        digest = self.fx.digest()
        if h.get("fixtures_digest") != digest:
            self.flag("header", None, "fixtures digest differs from the fixtures supplied")
        emb = h.get("fixtures")
        if emb is not None:
            try:
                if fixtures_from_json(emb).digest() != h.get("fixtures_digest"):
                    self.flag("header", None, "embedded fixtures do not match the recorded digest")
            except OmegaReaError as exc:
                self.flag("header", None, f"embedded fixtures invalid: {exc}")
        if not isinstance(self.horizon, int) or self.horizon < 1:
            self.flag("header", None, f"bad horizon {self.horizon!r}")
            self.horizon = None

    def run(self) -> None:
        self.check_header()
        sched = SchedulerState()
        schedule_ok = True
        prev_t = -1
        for rec in self.trace.records:
            t = rec.t
            if t != prev_t + 1:
                self.flag("monotone-stages", t, f"stage {t} follows stage {prev_t}")
            prev_t = max(prev_t, t)
            if schedule_ok:
                expected = scheduler_next(sched)
                if rec.node != expected or rec.outcome < 0:
                    self.flag("schedule", t, f"ran {list(rec.node)} but the scheduler picks {list(expected)}")
                    schedule_ok = False
                else:
                    record_outcome(sched, expected, rec.outcome)
            self.execs[rec.node] += 1
            self.exec_stages[rec.node].append(t)
            if rec.execution != self.execs[rec.node]:
                self.flag("schedule", t, f"execution count {rec.execution}, replay says {self.execs[rec.node]}")
            self.record(rec)
        self.finish()

    # -- per-record replay --------------------------------------------------

    def record(self, rec: TraceRecord) -> None:
        t, alpha = rec.t, rec.node
        req = assign_requirement(alpha)
        l = req.base_column
        if rec.requirement != req.label or rec.base_column != l:
            self.flag("requirements", t, f"node {list(alpha)} recorded as {rec.requirement}/l={rec.base_column}, expected {req.label}/l={l}")
        self.mention(t)
        pending = {g.node: g for g in rec.guesses}
        if t == 0 and ROOT not in self.guesses:
            g = pending.pop(ROOT, None)
            if g is None:
                self.flag("guesses", t, "root guesses missing at stage 0")
            else:
                self.define(t, ROOT, g.c_guess, g.delta)
        node = self.guesses.get(alpha)
        if node is None:
            self.flag("guesses", t, f"node {list(alpha)} runs before its guesses are defined")
            self.add_axioms(rec)
            return

        # fixture reads happen before any allocation at this stage
        if req.kind == "N":
            if alpha not in self.nacted:
                self.mention(*self.fx.ce.members(req.e, t))
        else:
            st = self.rstate.get(alpha)
            if st is None or not st.activated:
                rows = [r for r in self.fx.functional(req.i).rows if r.steps <= t]
                self.mention(*(n for r in rows for n in (r.x, r.steps, r.sigma.lh)))
            elif st.witness is not None:
                self.mention(st.witness.x)
        self.check_fresh(rec)

        bases = self.replay_strategy(rec, node, req)
        self.check_axioms(rec, node, req, bases)
        self.add_axioms(rec)

        child = (*alpha, rec.outcome)
        if child not in self.guesses:
            g = pending.pop(child, None)
            if g is None:
                self.flag("guesses", t, f"first visit of {list(child)} without guesses")
            else:
                self.check_child_guess(rec, node, req, g.c_guess, g.delta)
                self.define(t, child, g.c_guess, g.delta)
        for beta, g in pending.items():
            if beta in self.guesses:
                self.flag("write-once", t, f"guesses of {list(beta)} rewritten (defined at stage {self.guesses[beta].stage})")
            else:
                self.flag("guesses", t, f"guesses for {list(beta)}, which is not on the path at this stage")
        for a in rec.axioms:
            self.mention(a.level, a.target, a.condition.lh)

    def define(self, t: int, beta: Node, C: SetDescription, delta: PartialFunction) -> None:
        try:
            check_guesses(C, delta, assign_requirement(beta).base_column)
        except OmegaReaError as exc:
            self.flag("guesses", t, f"guesses of {list(beta)} are malformed: {exc}")
        self.guesses[beta] = _Guess(C, delta, t)
        if delta:
            self.mention(delta.lh)

    def check_fresh(self, rec: TraceRecord) -> None:
        for a in rec.fresh:
            v = a.get("value")
            if not isinstance(v, int) or v < self.bound:
                self.flag("freshness", rec.t, f"{a.get('purpose')} {v} is not above every number mentioned (bound {self.bound})")
            elif self.horizon is not None and v >= self.horizon:
                self.flag("freshness", rec.t, f"{a.get('purpose')} {v} lies beyond the horizon {self.horizon}")
            if isinstance(v, int):
                self.mention(v)

    def allocs(self, rec: TraceRecord, purpose: str) -> list[dict]:
        return [a for a in rec.fresh if a.get("purpose") == purpose]

    def replay_strategy(self, rec: TraceRecord, node: _Guess, req) -> list[Axiom]:
        """Outcome and event checks; returns the base axioms the rule asks for."""
        t, alpha, l = rec.t, rec.node, req.base_column
        ev = rec.events
        if req.kind == "N":
            acted = self.nacted.get(alpha)
            if acted is not None:
                if rec.outcome != 1 or ev.get("acted") is not False:
                    self.flag("outcomes", t, f"N node {list(alpha)} acted at stage {acted}; expected outcome 1, got {rec.outcome}")
                if ev.get("acted"):
                    self.flag("n-acts-once", t, f"N node {list(alpha)} acts again (first at stage {acted})")
                return []
            W = self.fx.ce.members(req.e, t)
            s = self.execs[alpha]
            cands = sorted(y for y in W if y >= s and column_of(y) == l and y not in node.delta)
            if ev.get("acted"):
                y = ev.get("y")
                if not cands or y != cands[0]:
                    self.flag("outcomes", t, f"N node {list(alpha)} acts on {y}, least candidate is {cands[0] if cands else None}")
                if rec.outcome != 1:
                    self.flag("outcomes", t, f"N node {list(alpha)} acted but reports {rec.outcome}")
                self.nacted[alpha] = t
                return [Axiom(l, EMPTY, y)] if isinstance(y, int) else []
            if cands:
                self.flag("outcomes", t, f"N node {list(alpha)} should act on {cands[0]}")
            if rec.outcome != 0:
                self.flag("outcomes", t, f"N node {list(alpha)} has not acted but reports {rec.outcome}")
            return []

        st = self.rstate.setdefault(alpha, _RReplay())
        if not st.activated:
            w = rec.witness
            if rec.outcome != 0:
                self.flag("outcomes", t, f"unactivated R node {list(alpha)} reports {rec.outcome}")
            if w is None:
                if ev:
                    self.flag("outcomes", t, f"unexpected events {sorted(ev)} before activation")
                return []
            st.activated, st.activated_at, st.witness = True, t, w
            flags, marks = self.allocs(rec, "flag"), self.allocs(rec, "marker")
            if len(flags) != 1 or len(marks) != 1:
                self.flag("markers", t, "activation must allocate exactly one flag and one marker")
            else:
                st.q, mk = flags[0]["value"], marks[0]["value"]
                if column_of(st.q) != l + 1:
                    self.flag("markers", t, f"flag {st.q} not in column {l + 1}")
                if column_of(mk) != l:
                    self.flag("markers", t, f"marker {mk} not in column {l}")
                st.k0 = st.k = unpair(mk)[1]
            if "activation" in self.selected:
                probs = verify_activation(
                    w, self.store.at(t), node.c_guess, node.delta, l, self.fx.functional(req.i), t
                )
                for p in probs:
                    self.flag("activation", t, f"node {list(alpha)}: condition {p}")
                if not probs:
                    self.notes["activation"].append(f"{list(alpha)} at stage {t} (x={w.x}, y={w.y})")
            return []
        if rec.witness is not None:
            self.flag("outcomes", t, f"R node {list(alpha)} activated again (first at stage {st.activated_at})")
        w = st.witness
        V = self.fx.delta2.value(req.e, w.x, t)
        j = 0 if w.v0 != V else 1
        eventful = st.last_j is not None and j != st.last_j
        st.last_j = j
        if (ev.get("eventful"), ev.get("j"), ev.get("V")) != (eventful, j, V):
            self.flag("outcomes", t, f"events {ev} but replay gives eventful={eventful}, j={j}, V={V}")
        if st.k is None:
            return []
        marker = pair(l, st.k)
        if eventful:
            st.k += 1
            st.n += 1
            st.events.append((t, marker))
            expected = 1
            bases = [Axiom(l, EMPTY, marker)]
        else:
            expected = st.n + 2
            sigma = PartialFunction({marker: 0})
            bases = [Axiom(l + 1, sigma, st.q)]
            if V == w.v1:
                bases.append(Axiom(l + 1, sigma, w.y))
        if rec.outcome != expected:
            self.flag("outcomes", t, f"R node {list(alpha)} reports {rec.outcome}, replay gives {expected}")
        return bases

    def check_axioms(self, rec: TraceRecord, node: _Guess, req, bases: list[Axiom]) -> None:
        t, alpha, l = rec.t, rec.node, req.base_column
        targets = permitted_targets(alpha)
        c2 = {a["value"]: a for a in self.allocs(rec, "constraint-II")}
        unactivated = [
            alpha[:d]
            for d in range(len(alpha))
            if assign_requirement(d).kind == "R" and not (self.rstate.get(alpha[:d]) or _RReplay()).activated
        ]
        for a in rec.axioms:
            probs = a.problems()
            if probs:
                self.flag("column-discipline", t, f"malformed axiom {a}: {'; '.join(probs)}")
            if a.target_column not in targets or a.level < l:
                self.flag("column-discipline", t, f"{list(alpha)} enumerates into column {a.target_column} at level {a.level} (l={l})")
            if not a.condition.extends(node.delta.restrict_columns("below", a.level)):
                self.flag("constraint-I", t, f"axiom targeting {a.target} is not conditioned on delta of {list(alpha)}")
            for beta in unactivated:
                lb = assign_requirement(beta).base_column + 1
                ok = any(
                    column_of(z) == lb and a.condition.get(z) == 0 and c2[z].get("for") == list(beta) for z in c2
                )
                if not ok:
                    self.flag("constraint-II", t, f"axiom targeting {a.target} lacks a fresh column-{lb} absence for {list(beta)}")
        for z, a in c2.items():
            beta = tuple(a.get("for", ()))
            if column_of(z) != assign_requirement(beta).base_column + 1:
                self.flag("markers", t, f"constraint-II position {z} not in column {assign_requirement(beta).base_column + 1}")

        # the recorded axioms must be exactly the rule's, minus ones this node already asked for
        expected = []
        for b in bases:
            try:
                key = make_dependent(b.level, b.condition, b.target, node.delta)
            except OmegaReaError as exc:
                self.flag("axiom-shape", t, f"rule axiom cannot be made dependent: {exc}")
                continue
            if key not in self.requested[alpha]:
                self.requested[alpha].add(key)
                expected.append(key)
        got = []
        for a in rec.axioms:
            cond = a.condition
            extra = [z for z in c2 if z in cond]
            if extra:
                kept = {z: b for z, b in cond.items() if z not in c2}
                cond = PartialFunction(kept)
            got.append(Axiom(a.level, cond, a.target))
        if got != expected:
            self.flag("axiom-shape", t, f"{list(alpha)} enumerated {len(got)} axiom(s) not matching the rule's {len(expected)}")

    def add_axioms(self, rec: TraceRecord) -> None:
        for a in rec.axioms:
            try:
                if not self.store.add(a, rec.t):
                    self.flag("store-consistency", rec.t, f"axiom targeting {a.target} recorded twice")
            except (OmegaReaError, ValueError) as exc:
                self.flag("store-consistency", rec.t, f"axiom cannot be replayed: {exc}")

    def check_child_guess(self, rec: TraceRecord, node: _Guess, req, C: SetDescription, delta: PartialFunction) -> None:
        t, l = rec.t, req.base_column
        lc = assign_requirement(len(rec.node) + 1).base_column
        try:
            X = yields_over(self.store.at(t), None, node.c_guess, node.delta, l)
        except OmegaReaError as exc:
            self.flag("guesses", t, f"parent guesses unusable: {exc}")
            return
        w = rec.outcome
        if req.kind == "N":
            ms = self.allocs(rec, "restraint-bound")
            if len(ms) != 1:
                self.flag("guesses", t, "N child guesses need exactly one restraint bound")
                return
            want_d = X.prefix(ms[0]["value"], min_column=l).union(node.delta)
            want_c = node.c_guess.union(X.restrict_columns("at", l))
        else:
            st = self.rstate.get(rec.node)
            if w == 0:
                want_d = node.delta
            else:
                if st is None or st.k is None:
                    self.flag("guesses", t, f"outcome {w} without a marker")
                    return
                # the marker of this stage, before a cancel bumps it
                k = st.k - 1 if st.events and st.events[-1][0] == t else st.k
                want_d = X.prefix(pair(l, k), min_column=l).union(node.delta)
            want_c = node.c_guess.union(SetDescription.from_positions(z for z in want_d.ones if column_of(z) < lc))
            if w == 1 and st is not None and st.k0 is not None:
                want_c = want_c.union(SetDescription([ColumnDescription(l, 1, frozenset(range(st.k0)))]))
                want_c = want_c.union(X.restrict_columns("at", l + 1))
        want_c = want_c.restrict_columns("below", lc)
        if delta != want_d:
            self.flag("guesses", t, f"delta of {list(rec.node) + [w]} differs from the replayed guess")
        if C != want_c:
            self.flag("guesses", t, f"C guess of {list(rec.node) + [w]} differs from the replayed guess")

    # -- checks after the replay --------------------------------------------

    def finish(self) -> None:
        if "flag-disagreement" in self.selected:
            self.flag_disagreement()
        if "cancel" in self.selected:
            self.cancel()
        if "diagonalization" in self.selected:
            self.diagonalization()
        self.n_outcomes()
        self.store_consistency()
        if "oracle-spot" in self.selected:
            self.oracle_spot()
        est = liminf_path(self.trace.history, 6)
        self.notes["liminf"].append(
            f"stable prefix {list(est.path)}" + (f", unstable at depth {est.unstable_at}" if est.unstable_at is not None else "")
        )

    def flag_disagreement(self) -> None:
        for alpha, st in self.rstate.items():
            if st.q is None:
                continue
            q = st.q
            one = self.guesses.get((*alpha, 1))
            others = sorted(b[-1] for b in self.guesses if len(b) == len(alpha) + 1 and b[:-1] == alpha and b[-1] >= 2)
            if one is None or not others:
                self.notes["flag-disagreement"].append(f"{list(alpha)}: q={q}, no defined pair")
                continue
            b1 = one.delta.get(q)
            for m in others:
                bm = self.guesses[(*alpha, m)].delta.get(q)
                if b1 is None or bm is None or b1 == bm:
                    self.flag(
                        "flag-disagreement",
                        max(one.stage, self.guesses[(*alpha, m)].stage),
                        f"{list(alpha)}: delta[1](q={q})={b1} vs delta[{m}](q)={bm}",
                    )
            self.notes["flag-disagreement"].append(f"{list(alpha)}: q={q}, outcome 1 vs {others}")

    def cancel(self) -> None:
        for alpha, st in self.rstate.items():
            g = self.guesses[alpha]
            l = assign_requirement(alpha).base_column
            for t0, m in st.events:
                for s in (s for s in self.exec_stages[alpha] if s >= t0):
                    axioms = self.store.at(s)
                    Y = yields_over(axioms, None, g.c_guess, g.delta, l)
                    if m not in Y:
                        self.flag("cancel", s, f"cancelled marker {m} of {list(alpha)} missing from the yield")
                        continue
                    live = [a for a in axioms if a.condition.get(m) != 0]
                    if yields_over(live, None, g.c_guess, g.delta, l) != Y:
                        self.flag("cancel", s, f"axioms conditioned on marker {m} still contribute")

    def diagonalization(self) -> None:
        for alpha, st in self.rstate.items():
            if st.witness is None:
                continue
            req = assign_requirement(alpha)
            w = st.witness
            p = self.fx.delta2.points.get(req.e, {}).get(w.x)
            if p is not None and p.period is not None:
                self.notes["diagonalization"].append(f"{list(alpha)}: V flips forever, skipped")
                continue
            last = p.flips[-1] if p is not None and p.flips else -1
            g = self.guesses[alpha]
            F = self.fx.functional(req.i)
            cancelled = {t for t, _ in st.events}
            checked = 0
            for rec in self.trace.records:
                if rec.node != alpha or rec.t <= last or rec.t <= st.activated_at or rec.t in cancelled:
                    continue
                V = self.fx.delta2.value(req.e, w.x, rec.t)
                Y = yields_over(self.store.at(rec.t), None, g.c_guess, g.delta, req.base_column)
                v = eval_functional(F, Y, w.x, rec.t)
                checked += 1
                if v is None or v == V:
                    self.flag("diagonalization", rec.t, f"{list(alpha)}: Phi(yield)({w.x}) = {v}, V = {V}")
            self.notes["diagonalization"].append(f"{list(alpha)}: {checked} checks after stage {last}")

    def n_outcomes(self) -> None:
        seq: dict[Node, list[int]] = defaultdict(list)
        for rec in self.trace.records:
            if len(rec.node) % 2 == 1:
                seq[rec.node].append(rec.outcome)
        for alpha, outs in seq.items():
            ups = sum(1 for a, b in zip(outs, outs[1:]) if a != b)
            if any(o not in (0, 1) for o in outs) or ups > 1 or (ups == 1 and outs[0] != 0):
                self.flag("n-acts-once", None, f"N node {list(alpha)} outcome sequence is not 0...01...1")

    def store_consistency(self) -> None:
        summ = self.trace.summary
        if summ is None:
            self.notes["store-consistency"].append("no summary line")
            return
        if summ.get("stages") != len(self.trace.records):
            self.flag("store-consistency", None, f"summary counts {summ.get('stages')} stages, trace has {len(self.trace.records)}")
        if summ.get("axiom_count") != len(self.store):
            self.flag("store-consistency", None, f"summary counts {summ.get('axiom_count')} axioms, replay has {len(self.store)}")
        if summ.get("store_digest") != store_digest(self.store.entries()):
            self.flag("store-consistency", None, "replayed store digest differs from the summary")
        if self.horizon is not None:
            final = yields(self.store, None, self.horizon)
            if summ.get("final_C") != set_to_json(final):
                self.flag("store-consistency", None, "final yielded set differs from the summary")

    def oracle_spot(self) -> None:
        h = self.spot_horizon
        recs = [r for r in self.trace.records if r.axioms and r.node in self.guesses]
        if self.trace.records:
            recs.append(self.trace.records[-1])
        if len(recs) > self.spot_samples:
            rng = random.Random(len(self.trace.records))
            recs = sorted(rng.sample(recs, self.spot_samples), key=lambda r: r.t)
        done = 0
        for rec in recs:
            g = self.guesses.get(rec.node)
            if g is None:
                continue
            l = assign_requirement(rec.node).base_column
            axioms = [a for a in self.store.at(rec.t) if a.target < h and a.condition.lh <= h]
            C = g.c_guess.truncate(h)
            delta = g.delta.restrict_below(h)
            try:
                fast = yields_over(axioms, None, C, delta, l, horizon=h)
                slow = brute_force_yields(axioms, None, C, delta, l, h)
            except OmegaReaError as exc:
                self.flag("oracle-spot", rec.t, f"spot check raised: {exc}")
                continue
            done += 1
            if fast != slow:
                self.flag("oracle-spot", rec.t, f"engine and brute force disagree below {h} for {list(rec.node)}")
        self.notes["oracle-spot"].append(f"{done} instances below {h}")


def verify_trace(
    trace: Trace,
    fixtures: Fixtures | None = None,
    checks: Iterable[str] | None = None,
    spot_horizon: int = 30,
    spot_samples: int = 12,
) -> Report:
    """Replay ``trace`` against ``fixtures`` and report every named check.

    ``fixtures`` defaults to the copy embedded in the trace header.  ``checks``
    limits the report (and skips the expensive checks not listed).
    """
    names = list(CHECKS) if checks is None else list(checks)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
    if fixtures is None:
        fixtures = fixtures_from_json(trace.header.get("fixtures", {}))
    rp = _Replay(trace, fixtures, set(names), spot_horizon, spot_samples)
    rp.run()
    return Report(
        {
            n: CheckResult(n, list(rp.fail.get(n, [])), list(rp.notes.get(n, [])), n in INFORMATIONAL)
            for n in names
        }
    )


@dataclass(frozen=True)
class ColumnOperator:
    """The axioms that can put elements into one column, as ``(condition, element)`` pairs."""

    column: int
    pairs: tuple[tuple[PartialFunction, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)


def extract_column_operator(A: AxiomStore | Iterable[Axiom], n: int, horizon: int | None = None) -> ColumnOperator:
    axioms = A.at() if isinstance(A, AxiomStore) else tuple(A)
    found = {
        (a.condition.restrict_columns("below", n), a.target)
        for a in axioms
        if a.target_column == n and a.level <= n and (horizon is None or a.target < horizon)
    }
    return ColumnOperator(n, tuple(sorted(found, key=lambda p: (p[1], p[0].items()))))


def apply_column_operator(
    op: ColumnOperator, lower: SetDescription, delta: PartialFunction = EMPTY
) -> frozenset[int]:
    """Column ``op.column`` as determined by the columns below it, with ``delta`` overriding its domain."""
    out = {y for sigma, y in op.pairs if y not in delta and lower.extends(sigma)}
    out |= {z for z in delta.ones if column_of(z) == op.column}
    return frozenset(out)
