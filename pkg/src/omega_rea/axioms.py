"""Axioms, stage-stamped axiom stores and the sets they yield.

An axiom ``(l, sigma, y)`` commits ``y`` to the constructed set whenever
``sigma`` holds of it.  ``sigma`` only mentions columns below ``l`` and ``y``
lives in column ``l`` or later, so the set an axiom store yields can be built
one column at a time.
"""

from __future__ import annotations

import bisect
import sys
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from omega_rea.codec import EMPTY, PartialFunction, SetDescription, column_of
from omega_rea.errors import AxiomError, GuessError, IncompatibleError, OracleError


@dataclass(frozen=True)
class Axiom:
    level: int
    condition: PartialFunction
    target: int

    @property
    def target_column(self) -> int:
        return column_of(self.target)

    def problems(self) -> list[str]:
        out = []
        if self.level < 0:
            out.append(f"negative level {self.level}")
        bad = [z for z in self.condition.domain if column_of(z) >= self.level]
        if bad:
            out.append(f"condition mentions column >= {self.level} at {sorted(bad)[:5]}")
        if self.target_column < self.level:
            out.append(f"target {self.target} lies in column {self.target_column} < level {self.level}")
        return out


def validate_axiom(a: Axiom) -> bool:
    return not a.problems()


def make_dependent(l: int, sigma: PartialFunction, y: int, delta: PartialFunction) -> Axiom:
    """The axiom ``(l, sigma u delta^[<l], y)``."""
    try:
        cond = sigma.union(delta.restrict_columns("below", l))
    except IncompatibleError as exc:
        raise AxiomError(f"condition clashes with the restraint: {exc}") from exc
    a = Axiom(l, cond, y)
    probs = a.problems()
    if probs:
        raise AxiomError("; ".join(probs))
    return a


class AxiomStore:
    """Append-only sequence of ``(axiom, stage)`` with non-decreasing stages.

    Set semantics: re-adding a triple that is already present is a no-op.
    """

    def __init__(self, entries: Iterable[tuple[Axiom, int]] = ()) -> None:
        self._axioms: list[Axiom] = []
        self._stages: list[int] = []
        self._seen: set[Axiom] = set()
        for a, s in entries:
            self.add(a, s)

    def add(self, axiom: Axiom, stage: int) -> bool:
        probs = axiom.problems()
        if probs:
            raise AxiomError("; ".join(probs))
        if self._stages and stage < self._stages[-1]:
            raise ValueError(f"stage {stage} precedes last stage {self._stages[-1]}")
        if axiom in self._seen:
            return False
        self._seen.add(axiom)
        self._axioms.append(axiom)
        self._stages.append(stage)
        return True

    def __contains__(self, axiom: object) -> bool:
        return axiom in self._seen

    def at(self, stage: int | None = None) -> tuple[Axiom, ...]:
        """The axioms enumerated at stages ``<= stage`` (all of them for ``None``)."""
        if stage is None:
            return tuple(self._axioms)
        return tuple(self._axioms[: bisect.bisect_right(self._stages, stage)])

    def entries(self) -> list[tuple[Axiom, int]]:
        return list(zip(self._axioms, self._stages))

    def copy(self) -> AxiomStore:
        new = AxiomStore()
        new._axioms = list(self._axioms)
        new._stages = list(self._stages)
        new._seen = set(self._seen)
        return new

    def __len__(self) -> int:
        return len(self._axioms)

    def __iter__(self) -> Iterator[tuple[Axiom, int]]:
        return iter(self.entries())


def _axioms_of(A: AxiomStore | Iterable[Axiom], stage: int | None) -> tuple[Axiom, ...]:
    if isinstance(A, AxiomStore):
        return A.at(stage)
    return tuple(A)


def check_guesses(c_guess: SetDescription, delta: PartialFunction, l_bound: int) -> None:
    high = [n for n in c_guess.described_columns() if n >= l_bound]
    if high:
        raise GuessError(f"C guess has columns {high} at or above l_bound {l_bound}")
    if not c_guess.extends(delta.restrict_columns("below", l_bound)):
        raise GuessError("delta below l_bound disagrees with the C guess")


def _holds(cond: PartialFunction, c_guess: SetDescription, l_bound: int, high: set[int]) -> bool:
    """Does ``cond`` hold of the set that is ``c_guess`` below ``l_bound`` and ``high`` above?"""
    for z in cond.ones:
        if column_of(z) < l_bound:
            if not c_guess.contains(z):
                return False
        elif z not in high:
            return False
    zeros = cond.zeros
    if not zeros:
        return True
    if l_bound == 0:
        return zeros.isdisjoint(high)
    for n, zs in cond.zeros_by_column().items():
        if n < l_bound:
            if not c_guess.extends(PartialFunction.from_sets((), zs)):
                return False
        elif not zs.isdisjoint(high):
            return False
    return True


def yields_over(
    A: AxiomStore | Iterable[Axiom],
    stage: int | None,
    c_guess: SetDescription,
    delta: PartialFunction,
    l_bound: int,
    horizon: int | None = None,
    extra: Iterable[Axiom] = (),
) -> SetDescription:
    """The set ``A_stage`` (plus ``extra``) yields over the guesses ``c_guess, delta``.

    Columns below ``l_bound`` are copied from ``c_guess``; positions in
    ``dom delta`` follow ``delta``; everything else is in the set iff some axiom
    targeting it has its condition satisfied.  The result is exact on all of
    omega; ``horizon`` only truncates it to positions ``< horizon``.
    """
    check_guesses(c_guess, delta, l_bound)
    high: set[int] = {z for z in delta.ones if column_of(z) >= l_bound}
    by_column: dict[int, list[Axiom]] = {}
    for a in (*_axioms_of(A, stage), *extra):
        n = a.target_column
        if n < l_bound or a.target in delta:
            continue
        by_column.setdefault(n, []).append(a)
    for n in sorted(by_column):
        # every condition targeting column n mentions only finished columns < n
        found = [
            a.target
            for a in by_column[n]
            if a.target not in high and _holds(a.condition, c_guess, l_bound, high)
        ]
        high.update(found)
    out = c_guess.union(SetDescription.from_positions(high))
    return out if horizon is None else out.truncate(horizon)


def yields(A: AxiomStore | Iterable[Axiom], stage: int | None = None, horizon: int | None = None) -> SetDescription:
    """The set ``y in C iff some (l, sigma, y) in A_stage has sigma a subset of C``."""
    return yields_over(A, stage, SetDescription(), EMPTY, 0, horizon)


def brute_force_yields(
    A: AxiomStore | Iterable[Axiom],
    stage: int | None,
    c_guess: SetDescription,
    delta: PartialFunction,
    l_bound: int,
    horizon: int,
    extra: Iterable[Axiom] = (),
) -> SetDescription:
    """Independent oracle for :func:`yields_over` on small instances.

    Enumerates membership assignments to the positions ``< horizon`` by
    backtracking in position order and keeps those satisfying the defining
    biconditional at every position.  Raises :class:`OracleError` unless
    exactly one assignment survives.  All positions mentioned by the axioms and
    by ``delta`` must lie below ``horizon``.
    """
    axioms = (*_axioms_of(A, stage), *extra)
    H = horizon
    mentioned = [a.target for a in axioms] + [z for a in axioms for z in a.condition.domain] + list(delta.domain)
    if any(z >= H for z in mentioned):
        raise OracleError(f"horizon {H} is too small: instance mentions {max(mentioned)}")

    cols = [column_of(z) for z in range(H)]
    fixed: dict[int, bool] = {}
    conditions: dict[int, list[list[tuple[int, int]]]] = {}
    for z in range(H):
        if cols[z] < l_bound:
            fixed[z] = c_guess.contains(z)
        elif z in delta:
            fixed[z] = delta[z] == 1
        else:
            conditions[z] = [a.condition.items() for a in axioms if a.target == z and a.level <= cols[z]]
    check_at: list[list[int]] = [[] for _ in range(H)]
    for z in range(H):
        deps = [p for cond in conditions.get(z, ()) for p, _ in cond]
        check_at[max([z, *deps])].append(z)

    assign: list[int] = [0] * H
    solutions: list[list[int]] = []

    def rhs(z: int) -> bool:
        if z in fixed:
            return fixed[z]
        return any(all(assign[p] == b for p, b in cond) for cond in conditions[z])

    def search(k: int) -> None:
        if k == H:
            solutions.append([z for z in range(H) if assign[z]])
            if len(solutions) > 1:
                raise OracleError("more than one set satisfies the biconditional")
            return
        for b in (0, 1):
            assign[k] = b
            if all((assign[z] == 1) == rhs(z) for z in check_at[k]):
                search(k + 1)
        assign[k] = 0

    limit = sys.getrecursionlimit()
    if H + 50 > limit:
        sys.setrecursionlimit(H + 50)
    try:
        search(0)
    finally:
        sys.setrecursionlimit(limit)
    if not solutions:
        raise OracleError("no set satisfies the biconditional")
    return SetDescription.from_positions(solutions[0])
