"""Extreme shock models as reinforced urn processes.

Simulation of shock-driven failures, exact predictive failure laws from
observed histories, and conjugate beta-Stacy posteriors.
"""
from .errors import (
    BelowGridError,
    EmptyUrnError,
    GridExhaustedError,
    InvalidMatrixError,
    MalformedPathError,
    NoFailureWithinCapError,
    OffGridError,
    ParseError,
    UnknownStateError,
    UrnShockError,
)
from .grid import FailureRecord, StateGrid
from .inference import (
    BetaStacySpec,
    PredictiveDistribution,
    SufficientCounts,
    beta_stacy_posterior,
    beta_stacy_prior,
    first_system_pmf,
    mean_cdf,
    predictive_distribution,
    predictive_mean,
    predictive_pmf,
    predictive_survival,
    sample_cdf,
    sample_cdfs,
    sufficient_counts,
)
from .montecarlo import McReport, estimate_predictive, replay_priors, simulate_records
from .rng import RngStream
from .rup import (
    RupConfig,
    RupState,
    ZeroBlock,
    check_recurrence,
    run_block,
    run_systems,
    step,
    zero_blocks,
)
from .shocks import (
    Exponential,
    GeneralizedRupSpec,
    PointMass,
    ShockOutcome,
    ShockStream,
    ThresholdSchedule,
    Uniform,
    discretize,
    simulate_classical,
    simulate_generalized,
    ubgesm_chain,
    ubgesm_lifetimes,
    ubgesm_single_urn,
)
from .urns import (
    Color,
    ReinforcementMatrix,
    UrnComposition,
    draw_probability,
    limit_distribution_parameters,
    matrix_draw,
    polya_black_fractions,
    polya_draw,
)

__version__ = "0.1.0"
