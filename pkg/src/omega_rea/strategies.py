"""The R(e,i) and N(e) strategy modules and the two global constraints.

Constraint I: every axiom a node enumerates is made dependent on the node's
restraint ``delta``.  Constraint II: while some R ancestor is unactivated, the
axiom is also made dependent on a fresh position of that ancestor's second
column being absent, so the ancestor can later roll the axiom back by
enumerating that position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from omega_rea.axioms import Axiom, AxiomStore, check_guesses, make_dependent, yields_over
from omega_rea.codec import (
    EMPTY,
    ColumnDescription,
    PartialFunction,
    SetDescription,
    column_of,
    pair,
    unpair,
)
from omega_rea.errors import AxiomError, GuessError
from omega_rea.oracles import Fixtures, Row, TableFunctional, _eval_trusted
from omega_rea.tree import Node, NodeState, assign_requirement, base_column


class FreshNumbers:
    """Tracks a bound above every number mentioned so far in the construction."""

    def __init__(self, bound: int = 0) -> None:
        self.bound = bound

    def note(self, *numbers: int) -> None:
        if numbers:
            self.bound = max(self.bound, max(numbers) + 1)

    def number(self) -> int:
        m = self.bound
        self.bound += 1
        return m

    def position(self, column: int) -> int:
        """The least position of ``column`` exceeding everything mentioned; marks it mentioned."""
        r = max(0, math.isqrt(2 * self.bound) - column - 2)
        while pair(column, r) < self.bound:
            r += 1
        z = pair(column, r)
        self.bound = z + 1
        return z


@dataclass(frozen=True)
class Witness:
    """Strings ``Y0, Y1``, input ``x`` and position ``y`` found by the activation search."""

    y0: PartialFunction
    y1: PartialFunction
    x: int
    y: int
    v0: int
    v1: int


@dataclass
class RState:
    activated: bool = False
    activated_at: int | None = None
    witness: Witness | None = None
    q: int | None = None
    k0: int | None = None
    k: int | None = None
    eventful_count: int = 0
    last_j: int | None = None


@dataclass
class NState:
    acted: bool = False
    acted_at: int | None = None
    y: int | None = None


@dataclass
class StepResult:
    outcome: int
    events: dict = field(default_factory=dict)
    marker: int | None = None


@dataclass
class Context:
    """Mutable construction state shared by the strategies during a run."""

    fixtures: Fixtures
    store: AxiomStore = field(default_factory=AxiomStore)
    fresh: FreshNumbers = field(default_factory=FreshNumbers)
    nodes: dict[Node, NodeState] = field(default_factory=dict)
    executions: dict[Node, int] = field(default_factory=dict)
    t: int = 0
    enumerated: list[Axiom] = field(default_factory=list)
    allocations: list[dict] = field(default_factory=list)
    requested: dict[Node, set[Axiom]] = field(default_factory=dict)

    def begin_stage(self, t: int) -> None:
        self.t = t
        self.enumerated = []
        self.allocations = []
        self.fresh.note(t)

    def node(self, alpha: Node) -> NodeState:
        try:
            return self.nodes[alpha]
        except KeyError:
            raise GuessError(f"node {alpha} has no guesses yet") from None

    def define(self, alpha: Node, c_guess: SetDescription, delta: PartialFunction) -> NodeState:
        if alpha in self.nodes:
            raise GuessError(f"guesses for {alpha} are already defined")
        req = assign_requirement(alpha)
        check_guesses(c_guess, delta, req.base_column)
        strategy = RState() if req.kind == "R" else NState()
        st = NodeState(alpha, req, c_guess, delta, self.t, strategy)
        self.nodes[alpha] = st
        if delta:
            self.fresh.note(delta.lh)
        return st

    def add_axiom(self, axiom: Axiom) -> bool:
        if not self.store.add(axiom, self.t):
            return False
        self.enumerated.append(axiom)
        self.fresh.note(axiom.level, axiom.target, axiom.condition.lh)
        return True

    def allocate_position(self, column: int, purpose: str, owner: Node | None = None) -> int:
        z = self.fresh.position(column)
        rec: dict = {"purpose": purpose, "value": z}
        if owner is not None:
            rec["for"] = list(owner)
        self.allocations.append(rec)
        return z

    def allocate_number(self, purpose: str) -> int:
        m = self.fresh.number()
        self.allocations.append({"purpose": purpose, "value": m})
        return m


def permitted_targets(alpha: Node) -> tuple[int, ...]:
    """Columns a node may enumerate into: ``l, l+1`` for R, ``l`` for N."""
    req = assign_requirement(alpha)
    l = req.base_column
    return (l, l + 1) if req.kind == "R" else (l,)


def apply_constraints(ctx: Context, alpha: Node, base: Axiom) -> Axiom:
    """``base`` made dependent on ``delta_alpha`` and on fresh absences for unactivated R ancestors."""
    if base.target_column not in permitted_targets(alpha):
        raise AxiomError(f"node {alpha} may not target column {base.target_column}")
    node = ctx.node(alpha)
    ax = make_dependent(base.level, base.condition, base.target, node.delta)
    for d in range(len(alpha)):
        beta = alpha[:d]
        anc = ctx.node(beta)
        if anc.requirement.kind == "R" and not anc.strategy.activated:
            z = ctx.allocate_position(anc.requirement.base_column + 1, "constraint-II", beta)
            ax = make_dependent(ax.level, ax.condition, ax.target, PartialFunction({z: 0}))
    return ax


def enumerate_axiom(ctx: Context, alpha: Node, base: Axiom) -> Axiom | None:
    """Enumerate ``base`` for ``alpha`` through both constraints unless it was already requested."""
    key = make_dependent(base.level, base.condition, base.target, ctx.node(alpha).delta)
    seen = ctx.requested.setdefault(alpha, set())
    if key in seen:
        return None
    seen.add(key)
    ax = apply_constraints(ctx, alpha, base)
    ctx.add_axiom(ax)
    return ax


def _shortest(rows: list[Row], oracle: SetDescription, min_len: int, budget: int) -> tuple[int, int] | None:
    """(value, length) of the shortest initial segment of ``oracle`` of length >= ``min_len``
    on which some row converges within ``budget``."""
    best: tuple[int, int] | None = None
    for r in rows:
        if r.steps <= budget and oracle.extends(r.sigma):
            n = max(min_len, r.sigma.lh)
            if best is None or n < best[1]:
                best = (r.v, n)
    return best


def check_activation(ctx: Context, alpha: Node) -> Witness | None:
    """Bounded search for ``Y0, Y1, x, y`` meeting the six activation conditions.

    Computations count only if they converge within ``t`` steps (``t`` the
    global stage).  Candidate ``y`` run over the positions of column ``l + 1``
    that some axiom conditions on being absent: any other ``y`` adds only
    itself to the yield, which ``Y0`` cannot see because ``|Y0| < y``.
    """
    node = ctx.node(alpha)
    req = node.requirement
    l = req.base_column
    t = ctx.t
    F = ctx.fixtures.functional(req.i)
    rows = [r for r in F.rows if r.steps <= t]
    if not rows:
        return None
    ctx.fresh.note(*(n for r in rows for n in (r.x, r.steps, r.sigma.lh)))
    axioms = ctx.store.at(t)
    C, delta = node.c_guess, node.delta
    X = yields_over(axioms, None, C, delta, l)
    candidates = sorted(
        {z for a in axioms for z in a.condition.zeros_by_column().get(l + 1, ()) if not X.contains(z)}
    )
    inputs = sorted({r.x for r in rows})
    for y in candidates:
        Xy = yields_over(axioms, None, C, delta, l, extra=[Axiom(l + 1, EMPTY, y)])
        for x in inputs:
            xrows = [r for r in rows if r.x == x]
            c1 = _shortest(xrows, X, delta.lh, t)
            c0 = _shortest(xrows, Xy, delta.lh, min(y, t))
            if c0 is None or c1 is None or c0[0] == c1[0] or c0[1] >= y:
                continue
            y0, y1 = Xy.prefix(c0[1]), X.prefix(c1[1])
            if not y0.restrict_columns("below", l + 1).compatible(y1.restrict_columns("below", l + 1)):
                continue
            return Witness(y0, y1, x, y, c0[0], c1[0])
    return None


def verify_activation(
    w: Witness,
    axioms: tuple[Axiom, ...],
    c_guess: SetDescription,
    delta: PartialFunction,
    l: int,
    F: TableFunctional,
    t: int,
) -> list[str]:
    """Re-check the six activation conditions for a recorded witness; the failed ones."""
    failed = []
    if not w.y0.restrict_columns("below", l + 1).compatible(w.y1.restrict_columns("below", l + 1)):
        failed.append("1: Y0 and Y1 differ on columns <= l")
    if not (w.y0.extends(delta) and w.y1.extends(delta)):
        failed.append("1: delta is not below both Y0 and Y1")
    v0 = _eval_trusted(F, w.y0, w.x, min(w.y, t))
    v1 = _eval_trusted(F, w.y1, w.x, t)
    if v0 is None or v1 is None or v0 == v1:
        failed.append(f"2: computations are not incompatible (got {v0}, {v1})")
    elif (v0, v1) != (w.v0, w.v1):
        failed.append(f"2: recorded values {(w.v0, w.v1)} but computed {(v0, v1)}")
    if not w.y0.lh < w.y:
        failed.append(f"3: |Y0| = {w.y0.lh} is not below y = {w.y}")
    if column_of(w.y) != l + 1:
        failed.append(f"4: y = {w.y} is not in column {l + 1}")
    if not yields_over(axioms, None, c_guess, delta, l).extends(w.y1):
        failed.append("5: the axioms do not yield an extension of Y1")
    if not yields_over(axioms, None, c_guess, delta, l, extra=[Axiom(l + 1, EMPTY, w.y)]).extends(w.y0):
        failed.append("6: the axioms plus (l+1, {}, y) do not yield an extension of Y0")
    return failed


def r_step(ctx: Context, alpha: Node) -> StepResult:
    node = ctx.node(alpha)
    st: RState = node.strategy
    req = node.requirement
    l = req.base_column
    if not st.activated:
        w = check_activation(ctx, alpha)
        if w is None:
            return StepResult(0)
        st.activated, st.activated_at, st.witness = True, ctx.t, w
        st.q = ctx.allocate_position(l + 1, "flag", alpha)
        st.k0 = st.k = unpair(ctx.allocate_position(l, "marker", alpha))[1]
        return StepResult(0, {"activated": w})
    w = st.witness
    ctx.fresh.note(w.x)
    V = ctx.fixtures.delta2.value(req.e, w.x, ctx.t)
    # the two computations are distinct bits, so exactly one disagrees with V
    j = 0 if w.v0 != V else 1
    eventful = st.last_j is not None and j != st.last_j
    st.last_j = j
    marker = pair(l, st.k)
    events = {"eventful": eventful, "j": j, "V": V}
    if eventful:
        enumerate_axiom(ctx, alpha, Axiom(l, EMPTY, marker))
        st.k += 1
        st.eventful_count += 1
        return StepResult(1, events, marker)
    sigma = PartialFunction({marker: 0})
    enumerate_axiom(ctx, alpha, Axiom(l + 1, sigma, st.q))
    if V == w.v1:
        enumerate_axiom(ctx, alpha, Axiom(l + 1, sigma, w.y))
    return StepResult(st.eventful_count + 2, events, marker)


def n_step(ctx: Context, alpha: Node) -> StepResult:
    node = ctx.node(alpha)
    st: NState = node.strategy
    if st.acted:
        return StepResult(1, {"acted": False})
    req = node.requirement
    l = req.base_column
    s = ctx.executions.get(alpha, 0)
    W = ctx.fixtures.ce.members(req.e, ctx.t)
    if W:
        ctx.fresh.note(*W)
    candidates = sorted(y for y in W if y >= s and column_of(y) == l and y not in node.delta)
    if not candidates:
        return StepResult(0, {"acted": False})
    y = candidates[0]
    enumerate_axiom(ctx, alpha, Axiom(l, EMPTY, y))
    st.acted, st.acted_at, st.y = True, ctx.t, y
    return StepResult(1, {"acted": True, "y": y})


def step(ctx: Context, alpha: Node) -> StepResult:
    if ctx.node(alpha).requirement.kind == "R":
        return r_step(ctx, alpha)
    return n_step(ctx, alpha)


def child_guesses(ctx: Context, alpha: Node, w: int, result: StepResult) -> tuple[SetDescription, PartialFunction]:
    """``(C, delta)`` for ``alpha + (w,)`` at the first stage it lies on ``f_t``."""
    node = ctx.node(alpha)
    req = node.requirement
    l = req.base_column
    lc = base_column(len(alpha) + 1)
    C, delta = node.c_guess, node.delta
    X = yields_over(ctx.store.at(ctx.t), None, C, delta, l)
    if req.kind == "N":
        m = ctx.allocate_number("restraint-bound")
        d_child = X.prefix(m, min_column=l).union(delta)
        c_child = C.union(X.restrict_columns("at", l))
    else:
        if w == 0:
            d_child = delta
        else:
            if result.marker is None:
                raise GuessError(f"outcome {w} of {alpha} without a marker")
            d_child = X.prefix(result.marker, min_column=l).union(delta)
        c_child = C.union(SetDescription.from_positions(z for z in d_child.ones if column_of(z) < lc))
        if w == 1:
            st: RState = node.strategy
            # every marker from k0 on is presumed enumerated
            c_child = c_child.union(SetDescription([ColumnDescription(l, 1, frozenset(range(st.k0)))]))
            c_child = c_child.union(X.restrict_columns("at", l + 1))
    return c_child.restrict_columns("below", lc), d_child
