"""greenfix: equilibrium engine for the collusion-exemption inspection game.

A regulator decides whether to let firms collude to fund a costly green
transition, an inspector decides whether to investigate high-price
collusion, and firms decide whether to exploit the exemption.  The
package computes the closed-form thresholds and equilibria, compares
commitment and discretionary investigation policies, and verifies every
closed form against a brute-force game-tree oracle, finite differences
and Monte-Carlo simulation.
"""

from .equilibrium import (
    EquilibriumDiagnostics,
    EquilibriumOutcome,
    InspectorBehavior,
    Regime,
    anticipated_violation_probability,
    classify_equilibrium,
    collusion_threshold,
    degenerate_high_price,
    expected_welfare_collusion,
    expected_welfare_no_collusion,
    incentive_ratio,
    inspection_benefit,
    inspector_mixing_probability,
    mixed_collusion_threshold,
    mixed_violation_probability,
    threshold_extremes,
)
from .model import (
    Belief,
    EnforcementParams,
    FirmPayoffs,
    Scenario,
    ScenarioFormatError,
    ScenarioValidationError,
    SocialWeights,
    WelfareProfile,
    load_scenario,
    save_scenario,
    scenario_errors,
    scenario_from_dict,
    scenario_to_dict,
    validate_scenario,
    with_parameter,
)
from .oracle import (
    DeviationReport,
    EquilibriumSearchResult,
    MonteCarloReport,
    PayoffVector,
    StrategyProfile,
    VerificationReport,
    best_response_check,
    closed_form_profile,
    default_epsilon,
    game_tree_payoffs,
    grid_equilibrium_search,
    monte_carlo_estimate,
    payoff_scale,
    verify_against_closed_form,
)
from .policy import (
    Policy,
    PolicyComparison,
    PolicyRegime,
    Preference,
    commitment_collusion_threshold,
    compare_policies,
    corrected_small_rho_threshold,
    expected_social_welfare,
    preference_from_threshold,
    printed_small_rho_threshold,
    social_objective,
)
from .statics import (
    SIGN_CLAIMS,
    StaticsReport,
    finite_difference,
    run_claims,
    second_difference,
)

__version__ = "0.1.0"

__all__ = [
    "Belief",
    "DeviationReport",
    "EnforcementParams",
    "EquilibriumDiagnostics",
    "EquilibriumOutcome",
    "EquilibriumSearchResult",
    "FirmPayoffs",
    "InspectorBehavior",
    "MonteCarloReport",
    "PayoffVector",
    "Policy",
    "PolicyComparison",
    "PolicyRegime",
    "Preference",
    "Regime",
    "Scenario",
    "ScenarioFormatError",
    "ScenarioValidationError",
    "SIGN_CLAIMS",
    "SocialWeights",
    "StaticsReport",
    "StrategyProfile",
    "VerificationReport",
    "WelfareProfile",
    "anticipated_violation_probability",
    "best_response_check",
    "classify_equilibrium",
    "closed_form_profile",
    "collusion_threshold",
    "commitment_collusion_threshold",
    "compare_policies",
    "corrected_small_rho_threshold",
    "default_epsilon",
    "degenerate_high_price",
    "expected_social_welfare",
    "expected_welfare_collusion",
    "expected_welfare_no_collusion",
    "finite_difference",
    "game_tree_payoffs",
    "grid_equilibrium_search",
    "incentive_ratio",
    "inspection_benefit",
    "inspector_mixing_probability",
    "load_scenario",
    "mixed_collusion_threshold",
    "mixed_violation_probability",
    "monte_carlo_estimate",
    "payoff_scale",
    "preference_from_threshold",
    "printed_small_rho_threshold",
    "run_claims",
    "save_scenario",
    "scenario_errors",
    "scenario_from_dict",
    "scenario_to_dict",
    "second_difference",
    "social_objective",
    "threshold_extremes",
    "validate_scenario",
    "verify_against_closed_form",
    "with_parameter",
]
