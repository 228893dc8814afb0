"""Reinforced urn process on a finite chain of states.

Each state ``v_i`` owns a two-color Polya urn. Starting at ``v_0`` the
process samples the urn of its current state: white advances to
``v_{i+1}``, black resets to ``v_0``. The excursion between two resets is a
0-block and its last state is one system's failure state. Urns keep their
reinforcements across blocks, which is how earlier systems inform later
ones.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import GridExhaustedError, MalformedPathError
from .grid import FailureRecord, StateGrid
from .urns import Color, UrnComposition, polya_draw


@dataclass(frozen=True)
class RupConfig:
    """State grid, one prior urn per state, and reinforcement magnitude ``s``."""

    grid: StateGrid
    priors: tuple
    s: float = 1.0

    def __post_init__(self):
        priors = tuple(
            p if isinstance(p, UrnComposition) else UrnComposition.two_color(*p) for p in self.priors
        )
        if len(priors) != len(self.grid):
            raise ValueError(f"need one prior urn per state: {len(priors)} urns for {len(self.grid)} states")
        for i, p in enumerate(priors):
            if set(p.colors) != {Color.WHITE, Color.BLACK}:
                raise ValueError(f"prior at state {i} is not a white/black urn")
            if p.total <= 0:
                raise ValueError(f"prior at state {i} is empty")
        if not self.s > 0:
            raise ValueError("s must be positive")
        object.__setattr__(self, "priors", priors)
        object.__setattr__(self, "s", float(self.s))

    @classmethod
    def uniform(cls, grid, white=1.0, black=1.0, s=1.0) -> "RupConfig":
        """Same prior urn at every state."""
        if not isinstance(grid, StateGrid):
            grid = StateGrid(grid)
        return cls(grid, tuple((white, black) for _ in grid), s)

    @property
    def white(self) -> np.ndarray:
        return np.array([p.white for p in self.priors])

    @property
    def black(self) -> np.ndarray:
        return np.array([p.black for p in self.priors])

    def with_priors(self, white, black) -> "RupConfig":
        return RupConfig(self.grid, tuple(zip(white, black)), self.s)


@dataclass
class RupState:
    """Mutable state of one running process.

    ``visits[i]`` counts draws from the urn at state ``i``; with
    ``keep_history=False`` the path is not retained (visit counts and block
    endpoints are all inference needs).
    """

    config: RupConfig
    urns: list = None
    position: int = 0
    history: list | None = field(default_factory=lambda: [0])
    draws_made: int = 0
    visits: list = None

    def __post_init__(self):
        if self.urns is None:
            self.urns = list(self.config.priors)
        if self.visits is None:
            self.visits = [0] * len(self.config.grid)

    @classmethod
    def fresh(cls, config: RupConfig, keep_history: bool = True) -> "RupState":
        return cls(config, history=[0] if keep_history else None)

    @property
    def current_state(self) -> float:
        return self.config.grid[self.position]


@dataclass(frozen=True)
class ZeroBlock:
    """One excursion from ``v_0``: visited state indices, endpoint and reset index."""

    states: tuple
    tau: int

    @property
    def xi(self) -> int:
        return self.states[-1]


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple
    stopping_times: tuple
    remainder: tuple

    @property
    def endpoints(self) -> tuple:
        return tuple(b.xi for b in self.blocks)


def step(state: RupState, rng) -> tuple[RupState, Color]:
    """Sample the urn at the current position and move.

    The state is updated in place and returned together with the drawn
    color. A white draw at the last grid state raises
    :class:`GridExhaustedError` and leaves the state untouched.
    """
    i = state.position
    color, urn = polya_draw(state.urns[i], state.config.s, rng)
    if color == Color.WHITE:
        if i == state.config.grid.R:
            raise GridExhaustedError(f"white drawn at the last state v_{i}; no higher state on the grid")
        nxt = i + 1
    else:
        nxt = 0
    state.urns[i] = urn
    state.visits[i] += 1
    state.draws_made += 1
    state.position = nxt
    if state.history is not None:
        state.history.append(nxt)
    return state, color


def run_block(state: RupState, rng) -> tuple[ZeroBlock, RupState]:
    """Step from ``v_0`` until a black draw; returns the completed block."""
    if state.position != 0:
        raise ValueError(f"a block must start at v_0, process is at index {state.position}")
    states = [0]
    while True:
        _, color = step(state, rng)
        if color == Color.BLACK:
            return ZeroBlock(tuple(states), state.draws_made), state
        states.append(state.position)


def run_systems(config: RupConfig, k: int, rng, keep_history: bool = True) -> tuple[FailureRecord, RupState]:
    """Observe ``k`` successive systems on one evolving process."""
    if k < 1:
        raise ValueError("k must be at least 1")
    state = RupState.fresh(config, keep_history)
    xi = []
    for _ in range(k):
        block, state = run_block(state, rng)
        xi.append(block.xi)
    return FailureRecord(config.grid, tuple(xi)), state


def zero_blocks(path: Sequence[int]) -> BlockDecomposition:
    """Split a path of state indices into completed 0-blocks.

    The path must start at index 0 and move by +1 or reset to 0. A block
    ends where the next element is 0; the trailing part that has not yet
    reset is returned as ``remainder``. Stopping times are the path
    positions of the resets.

    >>> zero_blocks([0, 1, 2, 0, 1, 0]).endpoints
    (2, 1)
    """
    path = [int(x) for x in path]
    if not path or path[0] != 0:
        raise MalformedPathError("path must start at v_0")
    for n in range(1, len(path)):
        if path[n] != 0 and path[n] != path[n - 1] + 1:
            raise MalformedPathError(f"step {path[n - 1]} -> {path[n]} at position {n} is neither advance nor reset")
    blocks, taus = [], []
    start = 0
    for n in range(1, len(path)):
        if path[n] == 0:
            blocks.append(ZeroBlock(tuple(path[start:n]), n))
            taus.append(n)
            start = n
    return BlockDecomposition(tuple(blocks), tuple(taus), tuple(path[start:]))


@dataclass(frozen=True)
class RecurrenceReport:
    horizon: int
    tol: float
    black_product: float
    white_product: float
    black_decay_rate: float
    white_decay_rate: float

    @property
    def black_verdict(self) -> str:
        return _verdict(self.black_product, self.tol)

    @property
    def white_verdict(self) -> str:
        return _verdict(self.white_product, self.tol)

    @property
    def recurrent(self) -> bool:
        """Operative criterion: the probability of never resetting vanishes."""
        return self.white_product <= self.tol

    @property
    def discrepancy(self) -> bool:
        """True when the black-fraction and white-fraction products disagree."""
        return self.black_verdict != self.white_verdict


def _verdict(value, tol):
    return "vanishing" if value <= tol else "bounded-away"


def check_recurrence(priors, horizon: int, tol: float = 1e-8) -> RecurrenceReport:
    """Partial products of black and white fractions over states ``1..horizon``.

    ``priors`` is a sequence of two-color compositions (indexed from
    ``v_0``) or a callable mapping an integer array of state indices to
    ``(white, black)`` arrays. Both products are accumulated in log space.
    The decay rate is the mean per-state log decrement over the second half
    of the horizon (``log 2`` for symmetric urns, about 0 for a convergent
    product).
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    idx = np.arange(1, horizon + 1)
    if callable(priors):
        w, b = priors(idx)
        w = np.broadcast_to(np.asarray(w, dtype=float), idx.shape)
        b = np.broadcast_to(np.asarray(b, dtype=float), idx.shape)
    else:
        priors = list(priors)
        if len(priors) < horizon + 1:
            raise ValueError(f"horizon {horizon} needs {horizon + 1} prior urns, got {len(priors)}")
        w = np.array([p.white for p in priors[1 : horizon + 1]])
        b = np.array([p.black for p in priors[1 : horizon + 1]])
    with np.errstate(divide="ignore", invalid="ignore"):
        log_black = -np.log1p(w / b)
        log_white = -np.log1p(b / w)
    # 0/0 cannot occur for nonempty urns; inf ratios give log fractions of -inf
    cum_black = np.cumsum(log_black)
    cum_white = np.cumsum(log_white)
    half = horizon // 2

    def rate(cum):
        if horizon - half == 0:
            return float(-cum[-1])
        lo = cum[half - 1] if half > 0 else 0.0
        with np.errstate(invalid="ignore"):
            return float(-(cum[-1] - lo) / (horizon - half))

    return RecurrenceReport(
        horizon=horizon,
        tol=tol,
        black_product=float(np.exp(cum_black[-1])),
        white_product=float(np.exp(cum_white[-1])),
        black_decay_rate=rate(cum_black),
        white_decay_rate=rate(cum_white),
    )
