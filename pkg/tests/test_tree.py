import pytest

from omega_rea.tree import (
    ROOT,
    SchedulerState,
    assign_requirement,
    expected_schedule,
    liminf_path,
    parent,
    record_outcome,
    scheduler_next,
)


def test_assignment_examples():
    r = assign_requirement(ROOT)
    assert (r.kind, r.e, r.i, r.base_column) == ("R", 0, 0, 0)
    n = assign_requirement((0,))
    assert (n.kind, n.e, n.base_column) == ("N", 0, 2)
    r2 = assign_requirement(2)
    assert (r2.kind, r2.e, r2.i, r2.base_column) == ("R", 1, 0, 3)
    assert [assign_requirement(d).base_column for d in range(6)] == [0, 2, 3, 5, 6, 8]
    assert assign_requirement(1).label == "N(0)" and r.label == "R(0,0)"


def test_reserved_columns_are_disjoint():
    seen = {}
    for d in range(40):
        req = assign_requirement(d)
        cols = (req.base_column, req.base_column + 1) if req.kind == "R" else (req.base_column,)
        for c in cols:
            assert c not in seen, (d, c, seen.get(c))
            seen[c] = d


def test_scheduler_examples():
    S = SchedulerState()
    assert scheduler_next(S) == ROOT
    record_outcome(S, ROOT, 0)
    assert scheduler_next(S) == ROOT
    record_outcome(S, ROOT, 2)
    assert scheduler_next(S) == (2,)
    record_outcome(S, (2,), 0)
    assert S.phase == 2 and S.depth == 0
    assert scheduler_next(S) == ROOT


def test_root_runs_on_triangular_stages():
    nodes = expected_schedule([0] * 80)
    assert [t for t, a in enumerate(nodes) if a == ROOT] == [0, 1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 66, 78]


def test_record_outcome_guards():
    S = SchedulerState()
    with pytest.raises(RuntimeError):
        record_outcome(S, ROOT, 0)
    scheduler_next(S)
    with pytest.raises(RuntimeError):
        scheduler_next(S)
    with pytest.raises(RuntimeError):
        record_outcome(S, (1,), 0)
    with pytest.raises(ValueError):
        record_outcome(S, ROOT, -1)


def test_execution_counts():
    S = SchedulerState()
    for _ in range(100):
        a = scheduler_next(S)
        record_outcome(S, a, 1)
    assert sum(S.executions.values()) == 100
    assert S.executions[ROOT] == 14
    assert parent((1, 1)) == (1,)
    with pytest.raises(ValueError):
        parent(ROOT)


def _history(outcomes):
    return [(t, ROOT, w) for t, w in enumerate(outcomes)]


def test_liminf_examples():
    assert liminf_path(_history([0] * 12), 1).path == (0,)
    assert liminf_path(_history([0, 0, 2, 1, 3, 1, 4, 1, 5]), 1).path == (1,)
    assert liminf_path([], 3).path == ()


def test_liminf_reports_instability():
    est = liminf_path(_history([3] * 8 + [1] + [5] * 7), 2)
    assert est.unstable_at == 0 and est.path == ()


def test_liminf_follows_children():
    h = [(0, ROOT, 2), (1, (2,), 0), (2, ROOT, 2), (3, (2,), 0), (4, (2, 0), 1)]
    assert liminf_path(h, 3).path == (2, 0, 1)
