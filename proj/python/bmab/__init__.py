"""Budgeted multi-armed bandits.

Budgeted Thompson Sampling, four baselines (epsilon-first, PD-BwK, UCB-BV1,
a KUBE variant), regret evaluation, bound constants and a seeded,
multi-threaded experiment harness. The heavy lifting is in the compiled
``_core`` extension.
"""

from ._core import (
    AggregateRow,
    ArmGaps,
    BanditInstance,
    ConfigError,
    DegenerateDenominator,
    Distribution,
    DistributionKind,
    ExperimentConfig,
    GapReport,
    LnBCoefficient,
    Mode,
    OptimalValue,
    PolicyKind,
    RegretReport,
    ResultRow,
    RngStream,
    RunawayError,
    TailRegime,
    Trajectory,
    aggregate,
    aggregate_to_csv,
    bernoulli_trial,
    beta_binomial_cdf,
    bts_lnB_constant,
    derive_seed,
    gaps,
    generate_instance,
    load_config,
    optimal_value,
    parse_config,
    pseudo_regret,
    ratio_gap_identity_residual,
    rows_to_csv,
    run_checkpointed,
    run_experiment,
    run_trajectory,
    sample_beta,
    ucbbv1_lnB_constant,
)

__version__ = "0.1.0"
