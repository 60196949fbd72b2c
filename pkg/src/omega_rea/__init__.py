"""Finite-stage simulator of a tree-of-strategies construction of an omega-REA set.

The package is organised bottom-up:

* :mod:`omega_rea.codec` -- pairing, columns, finite partial functions, set descriptions
* :mod:`omega_rea.axioms` -- axioms, axiom stores, the yields operators and a brute-force oracle
* :mod:`omega_rea.oracles` -- table functionals, Delta^0_2 arrays, c.e. schedules, fixtures
* :mod:`omega_rea.tree` -- requirement assignment, the stage scheduler, node state
* :mod:`omega_rea.strategies` -- the R and N modules and the global constraints
* :mod:`omega_rea.construction` / :mod:`omega_rea.trace` / :mod:`omega_rea.verify` -- runner, trace files, checks
"""

from omega_rea.axioms import Axiom, AxiomStore, brute_force_yields, yields, yields_over
from omega_rea.codec import (
    ColumnDescription,
    PartialFunction,
    SetDescription,
    column_of,
    compatible,
    pair,
    restrict_columns,
    set_extends,
    unpair,
)
from omega_rea.construction import RunConfig, RunResult, run_construction
from omega_rea.oracles import Fixtures, load_fixtures

__all__ = [
    "Axiom",
    "AxiomStore",
    "ColumnDescription",
    "Fixtures",
    "PartialFunction",
    "RunConfig",
    "RunResult",
    "SetDescription",
    "brute_force_yields",
    "column_of",
    "compatible",
    "load_fixtures",
    "pair",
    "restrict_columns",
    "run_construction",
    "set_extends",
    "unpair",
    "yields",
    "yields_over",
]

__version__ = "0.1.0"
