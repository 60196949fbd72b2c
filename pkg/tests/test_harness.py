import json

import pytest

from omega_rea.axioms import Axiom, AxiomStore, yields
from omega_rea.codec import EMPTY, PartialFunction, pair
from omega_rea.construction import RunConfig, default_horizon, run_construction, simulate
from omega_rea.errors import TraceError
from omega_rea.faults import FAULTS, inject
from omega_rea.oracles import Fixtures, random_fixtures
from omega_rea.scenarios import n_scenario, r_scenario
from omega_rea.trace import parse_trace, trace_lines
from omega_rea.tree import ROOT
from omega_rea.verify import CHECKS, apply_column_operator, extract_column_operator, verify_trace


@pytest.fixture(scope="module")
def r_lines():
    return trace_lines(simulate(r_scenario(), 600).trace)


def test_single_stage_run():
    run = simulate(Fixtures(), 1)
    assert len(run.trace.records) == 1
    rec = run.trace.records[0]
    assert rec.node == ROOT and rec.requirement == "R(0,0)" and rec.outcome == 0


def test_empty_fixtures_do_nothing():
    run = simulate(Fixtures(), 100)
    assert len(run.store) == 0
    assert not any(r.witness for r in run.trace.records)
    assert run.final_set.described_columns() == []


def test_r_scenario_events(r_lines):
    trace = parse_trace(r_lines)
    root = [r for r in trace.records if r.node == ROOT]
    assert sum(1 for r in root if r.witness is not None) == 1
    assert any(r.events.get("eventful") for r in root)
    y = pair(1, 2)
    with_y = [r.t for r in root if any(a.target == y for a in r.axioms)]
    assert with_y == [28, 78]  # once per stretch where V agrees with the Y1 computation


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(fixtures="x.json", stages=0)
    with pytest.raises(ValueError):
        RunConfig(stages=5)
    assert default_horizon(1000, r_scenario()) == 2000


def test_trace_round_trip_is_exact(r_lines):
    assert trace_lines(parse_trace(r_lines)) == r_lines


def test_parse_trace_rejects_bad_input(r_lines):
    with pytest.raises(TraceError):
        parse_trace(r_lines[1:])
    hdr = json.loads(r_lines[0])
    hdr["format"] = "2"
    with pytest.raises(TraceError):
        parse_trace([json.dumps(hdr)] + r_lines[1:])
    with pytest.raises(TraceError):
        parse_trace(r_lines[:1] + r_lines[-1:] + r_lines[1:2])
    with pytest.raises(TraceError):
        parse_trace(r_lines[:1] + ['{"kind": "stage"}'])
    with pytest.raises(TraceError):
        parse_trace([])


def test_replayed_store_matches_final(r_lines):
    trace = parse_trace(r_lines)
    store = AxiomStore()
    for r in trace.records:
        for a in r.axioms:
            assert store.add(a, r.t)
    final = yields(store, None, trace.header["horizon"])
    assert trace.summary["axiom_count"] == len(store)
    assert run_final_columns(final) == trace.summary["final_C"]


def run_final_columns(S):
    return [[n, S.column(n).default, sorted(S.column(n).exceptions)] for n in S.described_columns()]


def test_final_columns_are_finite_or_cofinite():
    run = simulate(random_fixtures(30), 800)
    for n in run.final_set.described_columns():
        assert run.final_set.column(n).default in (0, 1)
    touched = {a.target_column for a in run.store.at()}
    assert set(run.final_set.described_columns()) <= touched


def test_empty_trace_verifies_vacuously():
    rep = verify_trace(simulate(Fixtures(), 30).trace, Fixtures())
    assert rep.ok
    assert set(rep.results) == set(CHECKS)


def test_verify_reports_flag(r_lines):
    rep = verify_trace(parse_trace(r_lines), r_scenario())
    assert rep.ok, rep.format()
    q = simulate(r_scenario(), 20).context.node(ROOT).strategy.q
    assert any(f"q={q}" in n for n in rep["flag-disagreement"].notes)


def test_verify_rejects_other_fixtures(r_lines):
    rep = verify_trace(parse_trace(r_lines), n_scenario())
    assert "header" in rep.failed()


def test_stripped_delta_names_the_stage(r_lines):
    bad = parse_trace(inject(r_lines, "strip-delta"))
    rep = verify_trace(bad, r_scenario(), ["constraint-I"])
    assert not rep.ok and rep["constraint-I"].stages == [301]


@pytest.mark.parametrize("fault", sorted(FAULTS))
def test_every_fault_is_caught(r_lines, fault):
    try:
        bad = parse_trace(inject(r_lines, fault))
    except TraceError:
        return
    assert not verify_trace(bad, r_scenario()).ok


def test_checks_can_be_selected(r_lines):
    rep = verify_trace(parse_trace(r_lines), r_scenario(), ["outcomes", "schedule"])
    assert list(rep.results) == ["outcomes", "schedule"]
    with pytest.raises(ValueError):
        verify_trace(parse_trace(r_lines), r_scenario(), ["nope"])


def test_column_operator_examples():
    A = [Axiom(0, EMPTY, pair(0, 5))]
    op = extract_column_operator(A, 0, 100)
    assert op.pairs == ((EMPTY, pair(0, 5)),)
    assert len(extract_column_operator(A, 1, 100)) == 0
    sigma = PartialFunction({pair(0, 5): 1})
    B = [Axiom(1, sigma, pair(1, 2))]
    assert extract_column_operator(B, 1, 100).pairs == ((sigma, pair(1, 2)),)
    lower = yields(A + B).restrict_columns("below", 1)
    assert apply_column_operator(extract_column_operator(B, 1), lower) == {pair(1, 2)}


def test_random_traces_verify():
    for seed in (4, 7, 30):
        fx = random_fixtures(seed)
        rep = verify_trace(parse_trace(trace_lines(simulate(fx, 600).trace)), fx)
        assert rep.ok, (seed, rep.format())
