"""End-to-end construction runner."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from omega_rea.axioms import AxiomStore, yields
from omega_rea.codec import EMPTY, SetDescription
from omega_rea.errors import ConstructionError, OmegaReaError
from omega_rea.oracles import Fixtures, load_fixtures, random_fixtures
from omega_rea.strategies import Context, child_guesses, step
from omega_rea.trace import FORMAT_VERSION, Guess, Trace, TraceRecord, set_to_json, store_digest, write_trace
from omega_rea.tree import ROOT, SchedulerState, record_outcome, scheduler_next


@dataclass
class RunConfig:
    fixtures: str | Path | None = None
    stages: int = 100
    horizon: int | None = None
    seed: int | None = None
    out: str | Path | None = None

    def __post_init__(self) -> None:
        if self.stages < 1:
            raise ValueError(f"need at least one stage, got {self.stages}")
        if self.fixtures is None and self.seed is None:
            raise ValueError("give a fixture file or a seed for generated fixtures")

    def echo(self) -> dict:
        out = {"stages": self.stages, "horizon": self.horizon, "seed": self.seed}
        if self.fixtures is not None:
            out["fixtures"] = str(self.fixtures)
        return out


def default_horizon(stages: int, fixtures: Fixtures) -> int:
    return max(2 * stages, fixtures.largest_number() + 1)


@dataclass
class RunResult:
    trace: Trace
    store: AxiomStore
    final_set: SetDescription
    horizon: int
    context: Context = field(repr=False)


def resolve_fixtures(config: RunConfig) -> Fixtures:
    if config.fixtures is not None:
        return load_fixtures(config.fixtures)
    return random_fixtures(config.seed)


def run_construction(config: RunConfig, fixtures: Fixtures | None = None) -> RunResult:
    """Run ``config.stages`` global stages; optionally write the trace to ``config.out``."""
    if fixtures is None:
        fixtures = resolve_fixtures(config)
    horizon = config.horizon if config.horizon is not None else default_horizon(config.stages, fixtures)
    ctx = Context(fixtures)
    sched = SchedulerState()
    records: list[TraceRecord] = []
    for t in range(config.stages):
        ctx.begin_stage(t)
        try:
            guesses: list[Guess] = []
            if t == 0:
                ctx.define(ROOT, SetDescription(), EMPTY)
                guesses.append(Guess(ROOT, SetDescription(), EMPTY))
            alpha = scheduler_next(sched)
            ctx.executions[alpha] = sched.executions[alpha]
            node = ctx.node(alpha)
            result = step(ctx, alpha)
            record_outcome(sched, alpha, result.outcome)
            child = (*alpha, result.outcome)
            if child not in ctx.nodes:
                c_child, d_child = child_guesses(ctx, alpha, result.outcome, result)
                ctx.define(child, c_child, d_child)
                guesses.append(Guess(child, c_child, d_child))
        except OmegaReaError as exc:
            raise ConstructionError(t, str(exc)) from exc
        records.append(
            TraceRecord(
                t=t,
                node=alpha,
                requirement=node.requirement.label,
                base_column=node.requirement.base_column,
                execution=ctx.executions[alpha],
                outcome=result.outcome,
                axioms=list(ctx.enumerated),
                fresh=list(ctx.allocations),
                guesses=guesses,
                events=dict(result.events),
            )
        )
    final = yields(ctx.store, None, horizon)
    header = {
        "kind": "header",
        "format": FORMAT_VERSION,
        "config": config.echo(),
        "horizon": horizon,
        "fixtures": fixtures.to_json(),
        "fixtures_digest": fixtures.digest(),
    }
    summary = {
        "kind": "summary",
        "stages": config.stages,
        "axiom_count": len(ctx.store),
        "store_digest": store_digest(ctx.store.entries()),
        "final_C": set_to_json(final),
    }
    trace = Trace(header, records, summary)
    if config.out is not None:
        write_trace(trace, config.out)
    return RunResult(trace, ctx.store, final, horizon, ctx)


def simulate(fixtures: Fixtures, stages: int, horizon: int | None = None) -> RunResult:
    """Shorthand for running in-memory fixtures without a file."""
    return run_construction(RunConfig(fixtures="<memory>", stages=stages, horizon=horizon), fixtures)
