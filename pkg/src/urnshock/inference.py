"""Predictive failure distributions and beta-Stacy posteriors.

After ``m`` observed systems the urn at ``v_l`` has been reinforced with
``s * f_l`` white balls (systems that survived past ``v_l``) and
``s * d_l`` black balls (systems that failed at ``v_l``). Every predictive
and posterior quantity is a function of these counts only.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnknownStateError
from .grid import FailureRecord, StateGrid
from .rng import as_generator
from .rup import RupConfig

LOG_SPACE_THRESHOLD = 64


@dataclass(frozen=True, eq=False)
class SufficientCounts:
    f: np.ndarray  # systems surviving past v_l
    d: np.ndarray  # systems failing at v_l

    @property
    def m(self) -> int:
        return int(self.d.sum())

    def __eq__(self, other):
        return (
            isinstance(other, SufficientCounts)
            and np.array_equal(self.f, other.f)
            and np.array_equal(self.d, other.d)
        )


def sufficient_counts(record: FailureRecord, grid: StateGrid | None = None) -> SufficientCounts:
    grid = record.grid if grid is None else grid
    if grid != record.grid:
        for i in record.indices:
            grid.check_index(i)
    d = np.bincount(np.asarray(record.indices, dtype=np.int64), minlength=len(grid)).astype(np.int64)
    # f_l = m - (failures at or before l)
    f = record.m - np.cumsum(d)
    f.setflags(write=False)
    d.setflags(write=False)
    return SufficientCounts(f, d)


def _updated_counts(config: RupConfig, record: FailureRecord):
    if record.grid != config.grid:
        raise UnknownStateError("record and config use different grids")
    c = sufficient_counts(record)
    white = config.white + config.s * c.f
    black = config.black + config.s * c.d
    return white, black


def _hazard_and_survival(white, black):
    total = white + black
    hazard = black / total
    if len(white) > LOG_SPACE_THRESHOLD:
        with np.errstate(divide="ignore"):
            survival = np.exp(np.cumsum(np.log(white) - np.log(total)))
    else:
        survival = np.cumprod(white / total)
    return hazard, survival


@dataclass(frozen=True, eq=False)
class PredictiveDistribution:
    """Law of the next failure state on the grid, with the mass beyond ``v_R`` kept apart."""

    grid: StateGrid
    pmf: np.ndarray
    survival: np.ndarray
    tail: float

    @property
    def mean_on_grid(self) -> float:
        """``sum_r v_r * pmf_r``; restricted to the grid, the tail is not imputed."""
        return float(np.dot(self.grid.values, self.pmf))

    @property
    def cdf(self) -> np.ndarray:
        return 1.0 - self.survival

    tail_mass_note = "mean_on_grid excludes the tail mass P(xi > v_R)"


def predictive_distribution(config: RupConfig, record: FailureRecord | None = None) -> PredictiveDistribution:
    record = FailureRecord(config.grid) if record is None else record
    white, black = _updated_counts(config, record)
    hazard, survival = _hazard_and_survival(white, black)
    prev = np.concatenate(([1.0], survival[:-1]))
    pmf = hazard * prev
    return PredictiveDistribution(config.grid, pmf, survival, float(survival[-1]))


def predictive_pmf(config: RupConfig, record: FailureRecord, r: int) -> float:
    """Probability that the next system fails exactly at ``v_r``."""
    r = config.grid.check_index(r)
    return float(predictive_distribution(config, record).pmf[r])


def predictive_survival(config: RupConfig, record: FailureRecord, r: int) -> float:
    """Probability that the next system survives past ``v_r``."""
    r = config.grid.check_index(r)
    return float(predictive_distribution(config, record).survival[r])


def predictive_mean(config: RupConfig, record: FailureRecord) -> tuple[float, float]:
    """Returns ``(mean_on_grid, tail_mass)``."""
    dist = predictive_distribution(config, record)
    return dist.mean_on_grid, dist.tail


def first_system_pmf(config: RupConfig) -> np.ndarray:
    """Failure law of the first system, straight from the prior urns.

    ``P(xi_1 = v_r) = b_r / (w_r + b_r) * prod_{j<r} w_j / (w_j + b_j)``.
    """
    out = np.empty(len(config.grid))
    passed = 1.0
    for r, urn in enumerate(config.priors):
        total = urn.white + urn.black
        out[r] = urn.black / total * passed
        passed *= urn.white / total
    return out


@dataclass(frozen=True, eq=False)
class BetaStacySpec:
    """Independent hazards ``Y_j ~ Beta(failure_j, survival_j)``, one per state.

    The random distribution function is ``F(v_k) = 1 - prod_{j<=k} (1 - Y_j)``.
    A zero shape is a point mass: ``failure_j = 0`` means ``Y_j = 0``,
    ``survival_j = 0`` means ``Y_j = 1``. ``grid`` may be None for an
    unlabeled (possibly empty) spec.
    """

    grid: StateGrid | None
    failure: np.ndarray
    survival: np.ndarray

    def __post_init__(self):
        a = np.array(self.failure, dtype=float)
        b = np.array(self.survival, dtype=float)
        if a.shape != b.shape or a.ndim != 1:
            raise ValueError("failure and survival shapes must be 1-d and equal length")
        if self.grid is not None and len(a) != len(self.grid):
            raise ValueError("one shape pair per grid state")
        if np.any(a < 0) or np.any(b < 0) or np.any(a + b <= 0):
            raise ValueError("shapes must be nonnegative and not both zero")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "failure", a)
        object.__setattr__(self, "survival", b)

    @property
    def hazard_mean(self) -> np.ndarray:
        return self.failure / (self.failure + self.survival)

    def __eq__(self, other):
        return (
            isinstance(other, BetaStacySpec)
            and self.grid == other.grid
            and np.array_equal(self.failure, other.failure)
            and np.array_equal(self.survival, other.survival)
        )


def beta_stacy_prior(config: RupConfig) -> BetaStacySpec:
    s = config.s
    return BetaStacySpec(config.grid, config.black / s, config.white / s)


def beta_stacy_posterior(spec: BetaStacySpec, record: FailureRecord, s: float) -> BetaStacySpec:
    """Conjugate update: failure shape gains ``d_j``, survival shape gains ``f_j``.

    Equivalent to shapes ``((b_j + s d_j) / s, (w_j + s f_j) / s)`` in urn
    counts. ``s`` is accepted for signature symmetry with the urn view; in
    shape units the update does not depend on it.
    """
    if s <= 0:
        raise ValueError("s must be positive")
    if spec.grid is not None and record.grid != spec.grid:
        raise UnknownStateError("record and spec use different grids")
    c = sufficient_counts(record)
    if len(c.d) != len(spec.failure):
        raise UnknownStateError("record grid does not match spec size")
    return BetaStacySpec(spec.grid, spec.failure + c.d, spec.survival + c.f)


def mean_cdf(spec: BetaStacySpec) -> np.ndarray:
    """``E F(v_k) = 1 - prod_{j<=k} survival_j / (failure_j + survival_j)``."""
    a, b = spec.failure, spec.survival
    if len(a) == 0:
        return np.empty(0)
    return 1.0 - np.cumprod(b / (a + b))


def sample_hazards(spec: BetaStacySpec, n: int, rng) -> np.ndarray:
    """``n`` independent hazard vectors, shape ``(n, states)``."""
    gen = as_generator(rng)
    a, b = spec.failure, spec.survival
    y = np.empty((n, len(a)))
    proper = (a > 0) & (b > 0)
    y[:, a == 0] = 0.0
    y[:, (b == 0) & (a > 0)] = 1.0
    if proper.any():
        y[:, proper] = gen.beta(a[proper], b[proper], size=(n, int(proper.sum())))
    return y


def sample_cdfs(spec: BetaStacySpec, n: int, rng) -> np.ndarray:
    """``n`` draws of the random CDF on the grid, shape ``(n, states)``."""
    y = sample_hazards(spec, n, rng)
    return 1.0 - np.cumprod(1.0 - y, axis=1)


def sample_cdf(spec: BetaStacySpec, rng) -> np.ndarray:
    """One draw of the random CDF on the grid; nondecreasing, within [0, 1]."""
    return sample_cdfs(spec, 1, rng)[0]
