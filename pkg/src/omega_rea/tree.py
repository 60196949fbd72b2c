"""Requirement assignment on omega^<omega, the stage scheduler and per-node state.

Nodes are tuples of naturals.  At every global stage exactly one node runs.
Phase ``L`` sweeps depths ``0..L`` along the path the nodes report during the
sweep, then phase ``L + 1`` starts over at the root.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Literal

from omega_rea.codec import EMPTY, PartialFunction, SetDescription, pair, unpair

Node = tuple[int, ...]
ROOT: Node = ()


def parent(alpha: Node) -> Node:
    if not alpha:
        raise ValueError("the root has no parent")
    return alpha[:-1]


@dataclass(frozen=True)
class Requirement:
    kind: Literal["R", "N"]
    e: int
    i: int | None
    base_column: int

    @property
    def label(self) -> str:
        return f"R({self.e},{self.i})" if self.kind == "R" else f"N({self.e})"


def assign_requirement(alpha: Node | int) -> Requirement:
    """R(e,i) at depth ``2*pair(e,i)`` with columns ``3*pair(e,i)``, ``+1``; N(e) at depth ``2e+1`` with column ``3e+2``."""
    depth = alpha if isinstance(alpha, int) else len(alpha)
    if depth % 2 == 0:
        k = depth // 2
        e, i = unpair(k)
        return Requirement("R", e, i, 3 * pair(e, i))
    e = (depth - 1) // 2
    return Requirement("N", e, None, 3 * e + 2)


def base_column(alpha: Node | int) -> int:
    return assign_requirement(alpha).base_column


@dataclass
class SchedulerState:
    stage: int = 0
    phase: int = 0
    depth: int = 0
    path: list[int] = field(default_factory=list)
    executions: dict[Node, int] = field(default_factory=dict)
    current: Node | None = None
    history: list[tuple[int, Node, int]] = field(default_factory=list)

    @property
    def f(self) -> Node:
        """The current approximation ``f_t`` (outcomes reported so far this sweep)."""
        return tuple(self.path)


def scheduler_next(S: SchedulerState) -> Node:
    """The node to run at stage ``S.stage``; bumps its execution counter."""
    if S.current is not None:
        raise RuntimeError(f"node {S.current} has not reported its outcome yet")
    alpha = tuple(S.path[: S.depth])
    S.current = alpha
    S.executions[alpha] = S.executions.get(alpha, 0) + 1
    return alpha


def record_outcome(S: SchedulerState, alpha: Node, w: int) -> None:
    if S.current is None or alpha != S.current:
        raise RuntimeError(f"outcome reported for {alpha}, but the current node is {S.current}")
    if w < 0:
        raise ValueError(f"outcome must be a natural, got {w}")
    del S.path[S.depth :]
    S.path.append(w)
    S.history.append((S.stage, alpha, w))
    S.current = None
    S.stage += 1
    S.depth += 1
    if S.depth > S.phase:
        S.phase += 1
        S.depth = 0
        S.path = []


def expected_schedule(outcomes: Iterable[int]) -> list[Node]:
    """Replay the scheduler on a sequence of reported outcomes; the node run at each stage."""
    S = SchedulerState()
    nodes = []
    for w in outcomes:
        alpha = scheduler_next(S)
        nodes.append(alpha)
        record_outcome(S, alpha, w)
    return nodes


@dataclass
class NodeState:
    """Guesses fixed when the node first appears on ``f_t``, plus strategy-specific state."""

    address: Node
    requirement: Requirement
    c_guess: SetDescription = field(default_factory=SetDescription)
    delta: PartialFunction = EMPTY
    defined_at: int | None = None
    strategy: object = None

    @property
    def defined(self) -> bool:
        return self.defined_at is not None


@dataclass(frozen=True)
class PathEstimate:
    """Approximation of ``liminf f_s`` from a finite trace.

    ``path`` is the stable prefix; ``unstable_at`` is the first depth whose
    running minimum still moves in the last quarter of its executions.
    """

    path: tuple[int, ...]
    unstable_at: int | None = None


def liminf_path(history: Iterable[tuple[int, Node, int]], depth: int) -> PathEstimate:
    by_node: dict[Node, list[int]] = {}
    for _t, alpha, w in history:
        by_node.setdefault(tuple(alpha), []).append(w)
    prefix: Node = ()
    for d in range(depth):
        outs = by_node.get(prefix)
        if not outs:
            break
        n = len(outs)
        est = min(outs[n // 2 :])
        if min(outs[(3 * n) // 4 :]) != est:
            return PathEstimate(prefix, d)
        prefix = (*prefix, est)
    return PathEstimate(prefix, None)
