import pytest
from hypothesis import given
from hypothesis import strategies as st

from omega_rea.codec import (
    EMPTY,
    ColumnDescription,
    PartialFunction,
    SetDescription,
    column_of,
    compatible,
    pair,
    positions_below,
    restrict_columns,
    set_extends,
    unpair,
)
from omega_rea.errors import IncompatibleError


@pytest.mark.parametrize("n,x,z", [(0, 0, 0), (1, 0, 1), (0, 2, 5), (1, 1, 4), (2, 0, 3)])
def test_pair_values(n, x, z):
    assert pair(n, x) == z
    assert unpair(z) == (n, x)


@given(st.integers(0, 10**6))
def test_unpair_inverts_pair(z):
    assert pair(*unpair(z)) == z


@given(st.integers(0, 2000), st.integers(0, 2000))
def test_pair_inverts_unpair(n, x):
    assert unpair(pair(n, x)) == (n, x)
    assert column_of(pair(n, x)) == n


def test_column_of_examples():
    assert column_of(pair(3, 7)) == 3
    assert column_of(0) == 0
    assert column_of(pair(2, 0)) == 2


def test_pair_rejects_negative():
    with pytest.raises(ValueError):
        pair(-1, 0)


def test_positions_below_matches_filter():
    for lo, hi in [(0, None), (1, 3), (2, 2), (0, 1)]:
        want = [z for z in range(60) if column_of(z) >= lo and (hi is None or column_of(z) < hi)]
        assert list(positions_below(60, lo, hi)) == want


def test_restrict_columns_examples():
    f = PartialFunction({pair(0, 1): 1, pair(2, 3): 0})
    assert restrict_columns(f, "below", 2) == PartialFunction({pair(0, 1): 1})
    assert restrict_columns(f, "below", 0) == EMPTY
    g = PartialFunction({pair(1, 1): 1})
    assert restrict_columns(g, "at-or-above", 1) == g
    assert restrict_columns(f, "at", 2) == PartialFunction({pair(2, 3): 0})
    with pytest.raises(ValueError):
        restrict_columns(f, "sideways", 1)


def test_compatible_examples():
    assert not compatible(PartialFunction({3: 1}), PartialFunction({3: 0}))
    assert compatible(PartialFunction({3: 1}), PartialFunction({4: 0}))
    assert compatible(EMPTY, PartialFunction({9: 1}))


def test_union_and_extends():
    f = PartialFunction({1: 1, 2: 0})
    g = PartialFunction({2: 0, 7: 1})
    u = f.union(g)
    assert u.extends(f) and u.extends(g)
    assert u.lh == 8
    with pytest.raises(IncompatibleError):
        f.union(PartialFunction({1: 0}))


def test_partial_function_rejects_conflicts_and_bad_bits():
    with pytest.raises(IncompatibleError):
        PartialFunction([(3, 1), (3, 0)])
    with pytest.raises(ValueError):
        PartialFunction({3: 2})


def test_set_extends_examples():
    S = SetDescription([ColumnDescription(0, 0, frozenset({1}))])
    assert set_extends(S, PartialFunction({pair(0, 1): 1}))
    assert not set_extends(SetDescription(), PartialFunction({5: 1}))
    cof = SetDescription([ColumnDescription(0, 1, frozenset({0}))])
    assert set_extends(cof, PartialFunction({pair(0, 0): 0}))
    assert not set_extends(cof, PartialFunction({pair(0, 9): 0}))


columns = st.builds(
    ColumnDescription,
    st.integers(0, 3),
    st.integers(0, 1),
    st.frozensets(st.integers(0, 8), max_size=4),
)


@given(st.integers(0, 1), st.frozensets(st.integers(0, 8)), st.integers(0, 1), st.frozensets(st.integers(0, 8)))
def test_column_union_is_pointwise_or(d1, e1, d2, e2):
    a, b = ColumnDescription(0, d1, e1), ColumnDescription(0, d2, e2)
    u = a.union(b)
    for x in range(12):
        assert u.contains_row(x) == (a.contains_row(x) or b.contains_row(x))


@given(st.lists(columns, max_size=4, unique_by=lambda c: c.column), st.dictionaries(st.integers(0, 40), st.integers(0, 1)))
def test_set_extends_is_pointwise(cols, entries):
    S = SetDescription(cols)
    f = PartialFunction(entries)
    assert S.extends(f) == all(S.contains(z) == bool(b) for z, b in entries.items())


@given(st.lists(columns, max_size=4, unique_by=lambda c: c.column), st.integers(0, 40))
def test_prefix_and_truncate_agree_with_membership(cols, bound):
    S = SetDescription(cols)
    p = S.prefix(bound)
    assert p.domain == frozenset(range(bound))
    assert all(p[z] == int(S.contains(z)) for z in range(bound))
    assert S.truncate(bound).finite_members() == frozenset(S.members_below(bound))


def test_set_description_drops_trivial_columns_and_compares():
    a = SetDescription([ColumnDescription(0), ColumnDescription(2, 0, frozenset({1}))])
    assert a.described_columns() == [2]
    assert a == SetDescription.from_positions([pair(2, 1)])
    assert hash(a) == hash(SetDescription.from_positions([pair(2, 1)]))
    with pytest.raises(ValueError):
        SetDescription([ColumnDescription(1), ColumnDescription(1, 1)])
