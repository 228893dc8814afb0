"""Extreme shock model simulators and the three-color shock urn.

A system receives shocks ``(Z_n, U_n)``: magnitude and waiting time since
the previous shock. In the classical model it fails at the first shock with
``Z_n > t``. In the generalized model shocks at or above a damage boundary
``beta`` lower the fatal threshold along a schedule ``alpha(0) = t >=
alpha(1) >= ...``, and the system fails at the first ``Z_n >= alpha(L)``
where ``L`` is the number of damaging shocks received so far.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import BelowGridError, NoFailureWithinCapError, OffGridError
from .grid import FailureRecord, StateGrid
from .rng import as_generator
from .urns import THREE_COLORS, Color, ReinforcementMatrix, UrnComposition, matrix_draw

DEFAULT_MAX_SHOCKS = 1_000_000


class _Exhausted(Exception):
    pass


@dataclass(frozen=True)
class PointMass:
    """Deterministic values: a constant, or a finite sequence consumed in order."""

    values: object

    def draws(self, gen) -> Iterator[float]:
        if np.ndim(self.values) == 0:
            v = float(self.values)
            while True:
                yield v
        for v in self.values:
            yield float(v)
        raise _Exhausted


@dataclass(frozen=True)
class Uniform:
    lo: float
    hi: float

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError("need 0 <= lo <= hi")

    def draws(self, gen) -> Iterator[float]:
        while True:
            yield float(gen.uniform(self.lo, self.hi))


@dataclass(frozen=True)
class Exponential:
    rate: float

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError("rate must be positive")

    def draws(self, gen) -> Iterator[float]:
        scale = 1.0 / self.rate
        while True:
            yield float(gen.exponential(scale))


def law_from_dict(d: dict):
    """Build a law from ``{"law": "exponential", "rate": 1}`` style mappings."""
    kind = d.get("law")
    if kind == "point":
        return PointMass(d["values"])
    if kind == "uniform":
        return Uniform(float(d["lo"]), float(d["hi"]))
    if kind == "exponential":
        return Exponential(float(d["rate"]))
    raise ValueError(f"unknown law {kind!r}")


@dataclass(frozen=True)
class ShockStream:
    """i.i.d. shock pairs: magnitude law for ``Z``, waiting-time law for ``U``.

    Per shock the magnitude is drawn before the waiting time, so two
    simulators fed the same seed see the same shocks.
    """

    magnitude: object
    interarrival: object = PointMass(1.0)

    def pairs(self, rng) -> Iterator[tuple[float, float]]:
        """Yield ``(Z_n, U_n)``; ``rng`` may be None when both laws are deterministic."""
        if rng is None:
            if not (isinstance(self.magnitude, PointMass) and isinstance(self.interarrival, PointMass)):
                raise ValueError("a random stream is required for random shock laws")
            gen = None
        else:
            gen = as_generator(rng)
        z_it = self.magnitude.draws(gen)
        u_it = self.interarrival.draws(gen)
        while True:
            try:
                z = next(z_it)
                u = next(u_it)
            except _Exhausted:
                return
            if z < 0 or u < 0:
                raise ValueError("shock magnitudes and waiting times must be nonnegative")
            yield z, u


@dataclass(frozen=True)
class ThresholdSchedule:
    """Fatal level ``t``, damage boundary ``beta < t`` and thresholds ``alpha``.

    ``alpha[k]`` is the fatal threshold after ``k`` damaging shocks and
    ``alpha[0]`` must equal ``t``. Past the end of ``alpha`` the last value
    stays in force.
    """

    t: float
    beta: float
    alpha: tuple = ()

    def __post_init__(self):
        t, beta = float(self.t), float(self.beta)
        alpha = tuple(float(a) for a in self.alpha) or (t,)
        if not beta < t:
            raise ValueError("need beta < t")
        if alpha[0] != t:
            raise ValueError("alpha[0] must equal t")
        if any(b > a for a, b in zip(alpha, alpha[1:])):
            raise ValueError("alpha must be nonincreasing")
        if any(not beta <= a <= t for a in alpha):
            raise ValueError("alpha values must lie in [beta, t]")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "alpha", alpha)

    def threshold(self, damage: int) -> float:
        return self.alpha[min(damage, len(self.alpha) - 1)]


@dataclass(frozen=True)
class ShockRecord:
    z: float
    u: float
    damage_before: int
    threshold: float


@dataclass(frozen=True)
class ShockOutcome:
    tau: int
    T_tau: float
    damage_count: int
    trajectory: tuple = field(default=(), repr=False)


def simulate_classical(
    stream: ShockStream, t: float, rng, max_shocks: int = DEFAULT_MAX_SHOCKS, record: bool = False
) -> ShockOutcome:
    """First shock with ``Z_n > t``."""
    T = 0.0
    log = []
    for n, (z, u) in enumerate(stream.pairs(rng), start=1):
        if n > max_shocks:
            break
        T += u
        if record:
            log.append(ShockRecord(z, u, 0, t))
        if z > t:
            return ShockOutcome(n, T, 0, tuple(log))
    raise NoFailureWithinCapError(f"no shock above {t} within {max_shocks} shocks")


def simulate_generalized(
    stream: ShockStream,
    schedule: ThresholdSchedule,
    rng,
    max_shocks: int = DEFAULT_MAX_SHOCKS,
    record: bool = False,
) -> ShockOutcome:
    """First shock with ``Z_n >= alpha(L_{n-1})``; shocks ``>= beta`` add damage."""
    T = 0.0
    damage = 0
    log = []
    for n, (z, u) in enumerate(stream.pairs(rng), start=1):
        if n > max_shocks:
            break
        T += u
        level = schedule.threshold(damage)
        if record:
            log.append(ShockRecord(z, u, damage, level))
        if z >= level:
            return ShockOutcome(n, T, damage, tuple(log))
        if z >= schedule.beta:
            damage += 1
    raise NoFailureWithinCapError(f"no fatal shock within {max_shocks} shocks")


def discretize(failures: Sequence[float], grid: StateGrid) -> FailureRecord:
    """Map failure loads or times to the largest grid state not above them."""
    idx = []
    for x in failures:
        x = float(x)
        if x < grid[0]:
            raise BelowGridError(f"value {x} is below v_0 = {grid[0]}")
        if x > grid[grid.R]:
            raise OffGridError(f"value {x} is above v_R = {grid[grid.R]}")
        idx.append(bisect.bisect_right(grid.values, x) - 1)
    return FailureRecord(grid, tuple(idx))


@dataclass(frozen=True)
class GeneralizedRupSpec:
    """Chain of three-color urns reproducing the triangular shock urn.

    Colors: white = safe, red = risky, black = default. ``C(0) = initial``
    and ``C(v)`` is ``C(v-1)`` after its draw has been reinforced by the
    balanced matrix with parameters ``s`` and ``p`` (``r = s - p``). Safe and
    risky draws move to ``v + 1``; a default draw ends the system.
    """

    initial: UrnComposition
    s: float
    p: float

    def __post_init__(self):
        init = self.initial
        if not isinstance(init, UrnComposition):
            init = UrnComposition.three_color(*init)
        if tuple(init.colors) != THREE_COLORS:
            raise ValueError("initial urn must be over (white, red, black)")
        object.__setattr__(self, "initial", init)
        # validates s and p
        ReinforcementMatrix.ubgesm(self.s, self.p)

    @property
    def r(self) -> float:
        return self.s - self.p

    @property
    def matrix(self) -> ReinforcementMatrix:
        return ReinforcementMatrix.ubgesm(self.s, self.p)


@dataclass(frozen=True)
class UbgesmOutcome:
    lifetime: int
    trace: tuple
    compositions: tuple = field(default=(), repr=False)


def ubgesm_chain(spec: GeneralizedRupSpec, rng, max_steps: int = DEFAULT_MAX_SHOCKS) -> UbgesmOutcome:
    """Walk states 0, 1, 2, ... building ``C(v)`` from ``C(v-1)`` and its drawn color.

    Returns the step at which default was drawn (1-based) and the colors
    drawn along the way.
    """
    M = spec.matrix
    comps = [spec.initial]
    trace = []
    v = 0
    while len(trace) < max_steps:
        color, reinforced = matrix_draw(comps[v], M, rng)
        trace.append(color)
        if color == Color.BLACK:
            return UbgesmOutcome(len(trace), tuple(trace), tuple(comps))
        comps.append(reinforced)
        v += 1
    raise NoFailureWithinCapError(f"no default within {max_steps} steps")


def ubgesm_single_urn(
    initial: UrnComposition, matrix: ReinforcementMatrix, rng, max_steps: int = DEFAULT_MAX_SHOCKS
) -> int:
    """Lifetime of one system under a single urn sampled until a default ball."""
    urn = initial
    for n in range(1, max_steps + 1):
        color, urn = matrix_draw(urn, matrix, rng)
        if color == Color.BLACK:
            return n
    raise NoFailureWithinCapError(f"no default within {max_steps} steps")


def ubgesm_lifetimes(spec: GeneralizedRupSpec, n: int, rng, horizon: int, method: str = "chain") -> np.ndarray:
    """Lifetimes of ``n`` independent systems, censored at ``horizon``.

    Systems still alive after ``horizon`` steps are reported as
    ``horizon + 1``.
    """
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        try:
            if method == "chain":
                out[i] = ubgesm_chain(spec, rng, max_steps=horizon).lifetime
            elif method == "single":
                out[i] = ubgesm_single_urn(spec.initial, spec.matrix, rng, max_steps=horizon)
            else:
                raise ValueError(f"unknown method {method!r}")
        except NoFailureWithinCapError:
            out[i] = horizon + 1
    return out
