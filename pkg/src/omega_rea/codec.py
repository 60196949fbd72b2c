"""Pairing and column arithmetic, finite partial functions and set descriptions.

Positions of omega are coded as Cantor pairs ``pair(n, x)``; ``n`` is the column
and ``x`` the row.  A :class:`PartialFunction` is a finite map from positions to
bits, and a :class:`SetDescription` describes a subset of omega whose every
column is finite or cofinite.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import Literal

from omega_rea.errors import IncompatibleError

Mode = Literal["below", "at-or-above", "at"]
MODES: tuple[str, ...] = ("below", "at-or-above", "at")


def pair(n: int, x: int) -> int:
    """Cantor code of ``(n, x)``: ``(n + x)(n + x + 1)/2 + x``."""
    if n < 0 or x < 0:
        raise ValueError(f"pair() needs naturals, got ({n}, {x})")
    d = n + x
    return d * (d + 1) // 2 + x


def unpair(z: int) -> tuple[int, int]:
    """Inverse of :func:`pair`."""
    if z < 0:
        raise ValueError(f"unpair() needs a natural, got {z}")
    d = (math.isqrt(8 * z + 1) - 1) // 2
    x = z - d * (d + 1) // 2
    return d - x, x


def column_of(z: int) -> int:
    return unpair(z)[0]


def _column_ok(column: int, mode: str, l: int) -> bool:
    if mode == "below":
        return column < l
    if mode == "at-or-above":
        return column >= l
    if mode == "at":
        return column == l
    raise ValueError(f"unknown restriction mode {mode!r}; expected one of {MODES}")


def positions_below(bound: int, min_column: int = 0, max_column: int | None = None) -> Iterator[int]:
    """Yield, in increasing order, every position ``< bound`` whose column lies in
    ``[min_column, max_column)`` (``max_column=None`` means unbounded)."""
    d = 0
    while True:
        start = d * (d + 1) // 2
        if start >= bound:
            return
        # on diagonal d, row x sits in column d - x
        lo_x = 0 if max_column is None else max(0, d - max_column + 1)
        hi_x = d - min_column
        for x in range(lo_x, hi_x + 1):
            z = start + x
            if z >= bound:
                return
            yield z
        d += 1


class PartialFunction:
    """A finite partial function from omega to {0, 1}.

    Stored as two disjoint frozensets (positions sent to 1 and to 0) so that
    large, mostly-zero restraints can be checked against sparse sets quickly.
    Instances are immutable and hashable.
    """

    __slots__ = ("_ones", "_zeros", "_hash", "_zero_cols")

    def __init__(self, entries: Mapping[int, int] | Iterable[tuple[int, int]] | None = None) -> None:
        ones: set[int] = set()
        zeros: set[int] = set()
        if entries is not None:
            items = entries.items() if isinstance(entries, Mapping) else entries
            for z, b in items:
                if z < 0:
                    raise ValueError(f"negative position {z}")
                if b not in (0, 1):
                    raise ValueError(f"value at {z} must be 0 or 1, got {b!r}")
                target, other = (ones, zeros) if b == 1 else (zeros, ones)
                if z in other:
                    raise IncompatibleError(f"position {z} given both values")
                target.add(z)
        self._ones = frozenset(ones)
        self._zeros = frozenset(zeros)
        self._hash: int | None = None
        self._zero_cols: dict[int, frozenset[int]] | None = None

    @classmethod
    def from_sets(cls, ones: Iterable[int] = (), zeros: Iterable[int] = ()) -> PartialFunction:
        self = cls.__new__(cls)
        self._ones = frozenset(ones)
        self._zeros = frozenset(zeros)
        if not self._ones.isdisjoint(self._zeros):
            raise IncompatibleError(f"positions given both values: {sorted(self._ones & self._zeros)[:5]}")
        self._hash = None
        self._zero_cols = None
        return self

    @property
    def ones(self) -> frozenset[int]:
        return self._ones

    @property
    def zeros(self) -> frozenset[int]:
        return self._zeros

    @property
    def domain(self) -> frozenset[int]:
        return self._ones | self._zeros

    @property
    def lh(self) -> int:
        """``1 + max(domain)``, or 0 for the empty function."""
        if not self:
            return 0
        return 1 + max(max(self._ones, default=-1), max(self._zeros, default=-1))

    def get(self, z: int, default: int | None = None) -> int | None:
        if z in self._ones:
            return 1
        if z in self._zeros:
            return 0
        return default

    def __getitem__(self, z: int) -> int:
        v = self.get(z)
        if v is None:
            raise KeyError(z)
        return v

    def __contains__(self, z: object) -> bool:
        return z in self._ones or z in self._zeros

    def __len__(self) -> int:
        return len(self._ones) + len(self._zeros)

    def __bool__(self) -> bool:
        return bool(self._ones) or bool(self._zeros)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.domain))

    def items(self) -> list[tuple[int, int]]:
        return sorted([(z, 1) for z in self._ones] + [(z, 0) for z in self._zeros])

    def zeros_by_column(self) -> dict[int, frozenset[int]]:
        if self._zero_cols is None:
            cols: dict[int, set[int]] = {}
            for z in self._zeros:
                cols.setdefault(column_of(z), set()).add(z)
            self._zero_cols = {c: frozenset(zs) for c, zs in cols.items()}
        return self._zero_cols

    def restrict_columns(self, mode: Mode, l: int) -> PartialFunction:
        return PartialFunction.from_sets(
            (z for z in self._ones if _column_ok(column_of(z), mode, l)),
            (z for z in self._zeros if _column_ok(column_of(z), mode, l)),
        )

    def restrict_below(self, bound: int) -> PartialFunction:
        """Restriction to positions ``< bound``."""
        return PartialFunction.from_sets(
            (z for z in self._ones if z < bound), (z for z in self._zeros if z < bound)
        )

    def compatible(self, other: PartialFunction) -> bool:
        return self._ones.isdisjoint(other._zeros) and self._zeros.isdisjoint(other._ones)

    def union(self, other: PartialFunction) -> PartialFunction:
        if not self.compatible(other):
            bad = sorted((self._ones & other._zeros) | (self._zeros & other._ones))
            raise IncompatibleError(f"partial functions disagree at {bad[:5]}")
        if not other:
            return self
        if not self:
            return other
        return PartialFunction.from_sets(self._ones | other._ones, self._zeros | other._zeros)

    def extends(self, other: PartialFunction) -> bool:
        """True iff ``other`` is a subfunction of ``self``."""
        return other._ones <= self._ones and other._zeros <= self._zeros

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialFunction):
            return NotImplemented
        return self._ones == other._ones and self._zeros == other._zeros

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._ones, self._zeros))
        return self._hash

    def __repr__(self) -> str:
        items = self.items()
        body = ", ".join(f"{z}:{b}" for z, b in items[:8])
        if len(items) > 8:
            body += f", ... ({len(items)} entries)"
        return f"PartialFunction({{{body}}})"


EMPTY = PartialFunction()


def restrict_columns(f: PartialFunction, mode: Mode, l: int) -> PartialFunction:
    return f.restrict_columns(mode, l)


def compatible(f: PartialFunction, g: PartialFunction) -> bool:
    return f.compatible(g)


@dataclass(frozen=True)
class ColumnDescription:
    """One column as ``default`` bit plus the finite set of rows that differ from it."""

    column: int
    default: int = 0
    exceptions: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.default not in (0, 1):
            raise ValueError(f"default must be 0 or 1, got {self.default!r}")
        if not isinstance(self.exceptions, frozenset):
            object.__setattr__(self, "exceptions", frozenset(self.exceptions))

    def contains_row(self, x: int) -> bool:
        return bool(self.default) != (x in self.exceptions)

    @property
    def trivial(self) -> bool:
        return self.default == 0 and not self.exceptions

    @property
    def finite(self) -> bool:
        return self.default == 0

    def union(self, other: ColumnDescription) -> ColumnDescription:
        if self.column != other.column:
            raise ValueError("cannot union different columns")
        a, b = self, other
        if a.default == 0 and b.default == 0:
            return ColumnDescription(a.column, 0, a.exceptions | b.exceptions)
        if a.default == 1 and b.default == 1:
            return ColumnDescription(a.column, 1, a.exceptions & b.exceptions)
        if a.default == 0:
            a, b = b, a
        # a cofinite, b finite: missing from a and absent from b
        return ColumnDescription(a.column, 1, a.exceptions - b.exceptions)

    def rows_below(self, bound: int) -> list[int]:
        """Member rows ``< bound``."""
        if self.default == 0:
            return sorted(x for x in self.exceptions if x < bound)
        return [x for x in range(bound) if x not in self.exceptions]


class SetDescription:
    """A subset of omega given column by column; unlisted columns are empty."""

    __slots__ = ("_cols", "_hash")

    def __init__(self, columns: Mapping[int, ColumnDescription] | Iterable[ColumnDescription] = ()) -> None:
        descs = columns.values() if isinstance(columns, Mapping) else columns
        cols: dict[int, ColumnDescription] = {}
        seen: set[int] = set()
        for d in descs:
            if d.column in seen:
                raise ValueError(f"column {d.column} described twice")
            seen.add(d.column)
            if not d.trivial:
                cols[d.column] = d
        self._cols = cols
        self._hash: int | None = None

    @classmethod
    def from_positions(cls, positions: Iterable[int]) -> SetDescription:
        rows: dict[int, set[int]] = {}
        for z in positions:
            n, x = unpair(z)
            rows.setdefault(n, set()).add(x)
        return cls(ColumnDescription(n, 0, frozenset(xs)) for n, xs in rows.items())

    @classmethod
    def empty(cls) -> SetDescription:
        return cls()

    def column(self, n: int) -> ColumnDescription:
        return self._cols.get(n) or ColumnDescription(n)

    @property
    def columns(self) -> dict[int, ColumnDescription]:
        return dict(self._cols)

    def described_columns(self) -> list[int]:
        return sorted(self._cols)

    def contains(self, z: int) -> bool:
        n, x = unpair(z)
        d = self._cols.get(n)
        return d is not None and d.contains_row(x)

    def __contains__(self, z: object) -> bool:
        return isinstance(z, int) and self.contains(z)

    @property
    def is_finite(self) -> bool:
        return all(d.finite for d in self._cols.values())

    def finite_members(self) -> frozenset[int]:
        """All members; only for sets whose columns are all finite."""
        if not self.is_finite:
            raise ValueError("set has a cofinite column")
        return frozenset(pair(n, x) for n, d in self._cols.items() for x in d.exceptions)

    def members_below(self, bound: int) -> list[int]:
        out: list[int] = []
        for n, d in self._cols.items():
            if d.finite:
                out.extend(p for p in (pair(n, x) for x in d.exceptions) if p < bound)
            else:
                x = 0
                while (p := pair(n, x)) < bound:
                    if d.contains_row(x):
                        out.append(p)
                    x += 1
        return sorted(out)

    def truncate(self, bound: int) -> SetDescription:
        """Finite description of the members ``< bound``."""
        return SetDescription.from_positions(self.members_below(bound))

    def restrict_columns(self, mode: Mode, l: int) -> SetDescription:
        return SetDescription(d for n, d in self._cols.items() if _column_ok(n, mode, l))

    def union(self, other: SetDescription) -> SetDescription:
        cols = dict(self._cols)
        for n, d in other._cols.items():
            cols[n] = cols[n].union(d) if n in cols else d
        return SetDescription(cols)

    def with_column(self, desc: ColumnDescription) -> SetDescription:
        cols = dict(self._cols)
        cols[desc.column] = desc
        return SetDescription(cols)

    def prefix(self, bound: int, min_column: int = 0, max_column: int | None = None) -> PartialFunction:
        """Characteristic function on the positions ``< bound`` in the given column range."""
        ones: list[int] = []
        zeros: list[int] = []
        for z in positions_below(bound, min_column, max_column):
            (ones if self.contains(z) else zeros).append(z)
        return PartialFunction.from_sets(ones, zeros)

    def extends(self, f: PartialFunction) -> bool:
        """True iff membership agrees with ``f`` on all of ``dom f``."""
        for z in f.ones:
            if not self.contains(z):
                return False
        for n, zs in f.zeros_by_column().items():
            d = self._cols.get(n)
            if d is None:
                continue
            if d.default == 0:
                if len(d.exceptions) < len(zs):
                    if any(pair(n, x) in zs for x in d.exceptions):
                        return False
                elif any(unpair(z)[1] in d.exceptions for z in zs):
                    return False
            elif any(unpair(z)[1] not in d.exceptions for z in zs):
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetDescription):
            return NotImplemented
        return self._cols == other._cols

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._cols.items()))
        return self._hash

    def __repr__(self) -> str:
        parts = []
        for n in sorted(self._cols):
            d = self._cols[n]
            rows = sorted(d.exceptions)
            parts.append(f"{n}:{'co' if d.default else ''}{rows}")
        return f"SetDescription({', '.join(parts)})"


def set_extends(S: SetDescription, f: PartialFunction) -> bool:
    return S.extends(f)
