"""Hand-built fixtures with known behaviour."""

from __future__ import annotations

from omega_rea.codec import PartialFunction, pair
from omega_rea.oracles import CeSchedule, Delta2Array, Delta2Point, Fixtures, Row, TableFunctional


def r_scenario(flips: tuple[int, ...] = (20, 40, 60), late_element: bool = True) -> Fixtures:
    """Root R(0,0) against a functional that reads one column-2 position.

    W_0 puts ``pair(2, 0)`` in early, so N(0) below the root enumerates it
    under the root's constraint-II absence; the absence position is then the
    ``y`` that flips the computation on input 0.  ``V_0(0)`` flips at the
    given stages.  ``late_element`` adds a second W_0 element late in the
    run that a deep N(0) node enumerates under a non-empty restraint.
    """
    probe = pair(2, 0)
    phi = TableFunctional(
        (
            Row(0, PartialFunction({probe: 0}), 0, probe + 1),
            Row(0, PartialFunction({probe: 1}), 1, probe + 1),
        )
    )
    schedule = [(probe, 3)]
    if late_element:
        schedule.append((pair(2, 40), 300))
    return Fixtures(
        {0: phi},
        Delta2Array({0: {0: Delta2Point(0, tuple(flips))}}),
        CeSchedule({0: tuple(schedule)}),
    )


def n_scenario(count: int = 10, start: int = 5, gap: int = 40) -> Fixtures:
    """W_0 enumerates ``count`` column-2 elements, one every ``gap`` stages; no functionals."""
    elems = tuple((pair(2, r), start + gap * r) for r in range(count))
    return Fixtures({}, Delta2Array({}), CeSchedule({0: elems}))
