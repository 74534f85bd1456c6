"""Solver and verification toolkit for adaptive two-style match play.

A match is a fixed number of games between a player who may switch between an
offensive and a defensive style and an opponent whose behavior is folded into
the per-style win/draw/loss distributions. The match objective is the expected
sign of the final score (wins minus losses). The package computes optimal
switching rules by backward induction, evaluates benchmark policies exactly,
derives long-match limits, and cross-checks everything against brute-force
enumeration and Monte Carlo simulation.
"""

from .core import (
    EQ_TOL,
    Action,
    Classification,
    MatchSpec,
    MatchState,
    StyleDistribution,
    classify,
    dominates,
    make_distribution,
)
from .errors import (
    HorizonTooLarge,
    InvalidHorizon,
    InvalidMatchSpec,
    InvalidOracleInput,
    InvalidProbability,
    InvalidSampleCount,
    MatchPlayError,
    OracleHorizonTooLarge,
    RegimeNotCovered,
)
from .analytic import (
    AsymptoticVerdict,
    Regime,
    cat_limit,
    fixed_style_draw_prob,
    fixed_style_gain,
    fixed_style_gain_curve,
    fixed_style_positive_prob,
    hitting_probability,
    optimal_limit,
    score_distribution,
    sign_expectation,
)
from .dp import (
    GainCurve,
    HorizonResult,
    PolicyTable,
    SolveResult,
    ValueTable,
    find_optimal_horizon,
    gain_curve,
    solve,
)
from .policies import (
    AugmentedDistribution,
    CatPlusPolicy,
    CatPolicy,
    FixedPolicy,
    IdentityReport,
    Policy,
    TablePolicy,
    as_policy,
    brute_force_optimal,
    cat_gain_curve,
    cat_plus_gain_curve,
    cat_plus_identity_check,
    cat_plus_policy,
    cat_policy,
    exact_policy_gain,
    fixed_policy,
    lead_policy_curves,
    propagate_policy,
    table_policy,
)
from .sim import SimEstimate, estimate_gain, simulate_match

__version__ = "0.1.0"

__all__ = [
    "Action",
    "AsymptoticVerdict",
    "AugmentedDistribution",
    "CatPlusPolicy",
    "CatPolicy",
    "Classification",
    "EQ_TOL",
    "FixedPolicy",
    "GainCurve",
    "HorizonResult",
    "HorizonTooLarge",
    "IdentityReport",
    "InvalidHorizon",
    "InvalidMatchSpec",
    "InvalidOracleInput",
    "InvalidProbability",
    "InvalidSampleCount",
    "MatchPlayError",
    "MatchSpec",
    "MatchState",
    "OracleHorizonTooLarge",
    "Policy",
    "PolicyTable",
    "Regime",
    "RegimeNotCovered",
    "SimEstimate",
    "SolveResult",
    "StyleDistribution",
    "TablePolicy",
    "ValueTable",
    "as_policy",
    "brute_force_optimal",
    "cat_gain_curve",
    "cat_limit",
    "cat_plus_gain_curve",
    "cat_plus_identity_check",
    "cat_plus_policy",
    "cat_policy",
    "classify",
    "dominates",
    "estimate_gain",
    "exact_policy_gain",
    "find_optimal_horizon",
    "fixed_policy",
    "fixed_style_draw_prob",
    "fixed_style_gain",
    "fixed_style_gain_curve",
    "fixed_style_positive_prob",
    "gain_curve",
    "hitting_probability",
    "lead_policy_curves",
    "make_distribution",
    "optimal_limit",
    "propagate_policy",
    "score_distribution",
    "sign_expectation",
    "simulate_match",
    "solve",
    "table_policy",
]
