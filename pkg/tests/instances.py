"""Random small yields-over instances shared by the engine tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

from omega_rea.axioms import Axiom
from omega_rea.codec import ColumnDescription, PartialFunction, SetDescription, column_of, positions_below

BOUND = 50
COLUMNS = 5


@dataclass
class Instance:
    axioms: list[Axiom]
    c_guess: SetDescription
    delta: PartialFunction
    l_bound: int


def _positions(min_column: int = 0, stop_column: int = COLUMNS) -> list[int]:
    return list(positions_below(BOUND, min_column, stop_column))


def random_axiom(rng: random.Random) -> Axiom:
    level = rng.randrange(COLUMNS)
    target = rng.choice(_positions(level))
    cond: dict[int, int] = {}
    if level > 0:
        low = _positions(0, level)
        for _ in range(rng.randrange(4)):
            cond[rng.choice(low)] = rng.randrange(2)
    return Axiom(level, PartialFunction(cond), target)


def random_instance(rng: random.Random, max_axioms: int = 20) -> Instance:
    l_bound = rng.randrange(4)
    cols = []
    for n in range(l_bound):
        rows = frozenset(rng.sample(range(9), rng.randrange(4)))
        cols.append(ColumnDescription(n, int(rng.random() < 0.2), rows))
    C = SetDescription(cols)
    delta: dict[int, int] = {}
    for _ in range(rng.randrange(6)):
        z = rng.randrange(BOUND)
        n = column_of(z)
        if n >= COLUMNS:
            continue
        delta[z] = int(C.contains(z)) if n < l_bound else rng.randrange(2)
    axioms = [random_axiom(rng) for _ in range(rng.randrange(max_axioms + 1))]
    return Instance(axioms, C, PartialFunction(delta), l_bound)
