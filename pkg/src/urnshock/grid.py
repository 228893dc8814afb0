"""State grids and observed failure records."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UnknownStateError


@dataclass(frozen=True)
class StateGrid:
    """Strictly increasing, finite sequence of state labels ``v_0 < ... < v_R``."""

    values: tuple

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError("a state grid needs at least one state")
        if any(not math.isfinite(v) for v in values):
            raise ValueError("grid values must be finite")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError(f"grid values must be strictly increasing, got {values}")
        object.__setattr__(self, "values", values)

    @classmethod
    def range(cls, n: int) -> "StateGrid":
        """Grid ``0, 1, ..., n-1`` (states as time instants)."""
        return cls(tuple(range(n)))

    @property
    def R(self) -> int:
        return len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def check_index(self, i) -> int:
        if isinstance(i, bool) or int(i) != i or not 0 <= i <= self.R:
            raise UnknownStateError(f"state index {i!r} is not on a grid with R={self.R}")
        return int(i)

    def index_of(self, value) -> int:
        try:
            return self.values.index(float(value))
        except ValueError:
            raise UnknownStateError(f"state {value!r} is not a grid value") from None


@dataclass(frozen=True)
class FailureRecord:
    """Observed failure states ``xi_1, ..., xi_m``, stored as grid indices."""

    grid: StateGrid
    indices: tuple = ()

    def __post_init__(self):
        idx = tuple(self.grid.check_index(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)

    @classmethod
    def from_values(cls, grid: StateGrid, values: Iterable) -> "FailureRecord":
        return cls(grid, tuple(grid.index_of(v) for v in values))

    @property
    def m(self) -> int:
        return len(self.indices)

    @property
    def values(self) -> tuple:
        return tuple(self.grid[i] for i in self.indices)

    def __len__(self):
        return len(self.indices)

    def append(self, index: int) -> "FailureRecord":
        return FailureRecord(self.grid, self.indices + (index,))

    def extend(self, other: "FailureRecord | Sequence[int]") -> "FailureRecord":
        if isinstance(other, FailureRecord):
            if other.grid != self.grid:
                raise ValueError("records live on different grids")
            other = other.indices
        return FailureRecord(self.grid, self.indices + tuple(other))
