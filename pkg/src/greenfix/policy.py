"""Social-planner comparison of commitment vs. discretionary investigation.

Under *commitment* the inspector pre-announces that every high-price
collusion will be investigated; this deters violation entirely (firms
never set the high price when the cost is low) but the investigation cost
is paid whenever the high price legitimately occurs.  Under *discretion*
the inspector decides after the fact, which yields one of the equilibria
in :mod:`greenfix.equilibrium`.

The planner's objective is ``delta1 * w + delta2 * h * (g*k - d)`` where
``w`` is the realized regulator welfare, ``h`` indicates an investigation
and ``k`` a proven violation.  Expected values per regime:

* commitment, collusion allowed (``rho > rho_L``):
  ``delta1 * (rho*w_H + (1-rho)*w_L) - delta2 * rho * d``
  (the high price occurs on-path only when the cost is high);
* commitment, collusion blocked, and discretion without collusion:
  ``delta1 * (rho*w_D + (1-rho)*w_G)`` (nothing to inspect);
* discretion with collusion: ``delta1`` times the collusion welfare at
  the equilibrium violation probability — the inspector's expected payoff
  is exactly zero in both discretionary regimes (never investigates, or
  is indifferent at zero).

Note on the low-belief threshold: a commonly quoted closed form for the
critical cost in the regime where discretion blocks collusion reads
``delta1*[rho*(w_H-w_D) + (1-rho)*(w_G-w_L)] / (delta2*rho)``, but
rearranging the defining welfare comparison gives a *minus* sign on the
``(w_G - w_L)`` term.  This module treats the direct comparison of
expected social welfare as ground truth and reports the corrected
threshold; :data:`printed_small_rho_threshold` keeps the uncorrected form
available for demonstrating the discrepancy.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .equilibrium import (
    Regime,
    classify_equilibrium,
    expected_welfare_collusion,
    expected_welfare_no_collusion,
    threshold_extremes,
)
from .model import Scenario, SocialWeights, WelfareProfile

PREFERENCE_TIE_TOL = 1e-12


class Policy(enum.Enum):
    COMMITMENT = "Commitment"
    DISCRETION = "Discretion"


class Preference(enum.Enum):
    COMMITMENT = "Commitment"
    DISCRETION = "Discretion"
    INDIFFERENT = "Indifferent"


class PolicyRegime(enum.Enum):
    """Belief regime of the comparison, named for the discretion-side
    equilibrium: always-violate (high belief), mixed violation
    (intermediate), collusion blocked under discretion only (small belief
    above ``rho_L``), or collusion blocked under both (trivial)."""

    HIGH_RHO = "HighRho"
    INTERMEDIATE_RHO = "IntermediateRho"
    SMALL_RHO = "SmallRho"
    TRIVIAL_NO_COLLUSION = "TrivialNoCollusion"


@dataclass(frozen=True)
class PolicyComparison:
    regime: PolicyRegime
    e_pi_commitment: float
    e_pi_discretion: float
    preferred: Preference
    d_threshold: float | None  # critical investigation cost; None if not defined
    margin: float  # e_pi_commitment - e_pi_discretion (positive favours commitment)


def social_objective(
    w_realized: float, h: int, k: int, weights: SocialWeights, g: float, d: float
) -> float:
    """Planner's realized objective ``delta1*w + delta2*h*(g*k - d)``.

    ``h`` is 1 iff an investigation took place, ``k`` is 1 iff a violation
    was established.
    """
    if h not in (0, 1) or k not in (0, 1):
        raise ValueError(f"h and k must be 0/1 indicators (h={h!r}, k={k!r})")
    return weights.delta1 * w_realized + weights.delta2 * h * (g * k - d)


def commitment_collusion_threshold(w: WelfareProfile) -> float:
    """Belief above which collusion is allowed under commitment.

    With violation deterred the relevant threshold is the never-violate
    one, ``rho_L`` — identical to ``collusion_threshold(0, w)``.
    """
    return threshold_extremes(w)[0]


def expected_social_welfare(s: Scenario, policy: Policy) -> float:
    """Expected planner objective under the given investigation policy."""
    w, e, ws, rho = s.welfare, s.enforcement, s.weights, s.rho
    no_collusion = ws.delta1 * expected_welfare_no_collusion(rho, w)

    if policy is Policy.COMMITMENT:
        if rho > commitment_collusion_threshold(w):
            return (
                ws.delta1 * expected_welfare_collusion(rho, 0.0, w)
                - ws.delta2 * rho * e.d
            )
        return no_collusion

    out = classify_equilibrium(s)
    if not out.collusion_allowed:
        return no_collusion
    # Inspector's expected payoff is 0 in every discretionary regime:
    # never investigates (pure), indifferent at zero (mixed and d = 0).
    return ws.delta1 * expected_welfare_collusion(rho, out.eta, w)


def corrected_small_rho_threshold(s: Scenario) -> float | None:
    """Critical ``d`` when discretion blocks collusion but commitment
    does not: ``delta1*[rho*(w_H-w_D) - (1-rho)*(w_G-w_L)] / (delta2*rho)``,
    commitment preferred below it."""
    w, ws, rho = s.welfare, s.weights, s.rho
    if ws.delta2 == 0.0 or rho == 0.0:
        return None
    num = ws.delta1 * (rho * (w.w_H - w.w_D) - (1.0 - rho) * (w.w_G - w.w_L))
    return num / (ws.delta2 * rho)


def printed_small_rho_threshold(s: Scenario) -> float | None:
    """The uncorrected small-belief threshold (plus sign on the
    ``(w_G - w_L)`` term).  Kept only so the discrepancy against the
    direct welfare comparison can be demonstrated; not used anywhere."""
    w, ws, rho = s.welfare, s.weights, s.rho
    if ws.delta2 == 0.0 or rho == 0.0:
        return None
    num = ws.delta1 * (rho * (w.w_H - w.w_D) + (1.0 - rho) * (w.w_G - w.w_L))
    return num / (ws.delta2 * rho)


def _critical_cost(s: Scenario, regime: PolicyRegime) -> float | None:
    w, e, ws, rho = s.welfare, s.enforcement, s.weights, s.rho
    if regime is PolicyRegime.HIGH_RHO:
        if ws.delta2 == 0.0 or rho == 0.0:
            return None
        return ws.delta1 * (1.0 - rho) * (w.w_L - w.w_H_prime) / (ws.delta2 * rho)
    if regime is PolicyRegime.INTERMEDIATE_RHO:
        if ws.delta2 == 0.0:
            return None
        return e.g - ws.delta1 * (w.w_L - w.w_H_prime) / ws.delta2
    if regime is PolicyRegime.SMALL_RHO:
        return corrected_small_rho_threshold(s)
    return None


def preference_from_threshold(
    regime: PolicyRegime, d: float, d_threshold: float | None
) -> Preference:
    """Verdict implied by the regime's critical-cost test alone.

    Commitment wins below the threshold in the high- and small-belief
    regimes and *above* it in the intermediate regime (a costlier
    investigation raises violation under discretion faster than it raises
    the commitment bill).  Used to cross-check the direct comparison.
    """
    if regime is PolicyRegime.TRIVIAL_NO_COLLUSION:
        return Preference.INDIFFERENT
    if d_threshold is None:
        raise ValueError(f"no critical cost defined for {regime} with these weights")
    if regime is PolicyRegime.INTERMEDIATE_RHO:
        return Preference.COMMITMENT if d > d_threshold else Preference.DISCRETION
    return Preference.COMMITMENT if d < d_threshold else Preference.DISCRETION


def compare_policies(s: Scenario) -> PolicyComparison:
    """Compare expected social welfare under the two policies.

    The preference always comes from the direct comparison (ties within
    ``PREFERENCE_TIE_TOL`` report Indifferent); the regime's critical
    investigation cost is reported alongside for interpretation.
    """
    rho_l = commitment_collusion_threshold(s.welfare)
    out = classify_equilibrium(s)

    if s.rho <= rho_l:
        # Collusion blocked under both policies: identical play, no margin.
        e_pi = expected_social_welfare(s, Policy.COMMITMENT)
        return PolicyComparison(
            PolicyRegime.TRIVIAL_NO_COLLUSION, e_pi, e_pi, Preference.INDIFFERENT, None, 0.0
        )

    if out.regime is Regime.PURE_ALWAYS_VIOLATE:
        regime = PolicyRegime.HIGH_RHO
    elif out.regime in (Regime.MIXED_VIOLATION, Regime.NO_VIOLATION_DETERRED):
        regime = PolicyRegime.INTERMEDIATE_RHO
    else:
        regime = PolicyRegime.SMALL_RHO

    e_commit = expected_social_welfare(s, Policy.COMMITMENT)
    e_disc = expected_social_welfare(s, Policy.DISCRETION)
    margin = e_commit - e_disc
    if abs(margin) <= PREFERENCE_TIE_TOL:
        preferred = Preference.INDIFFERENT
    elif margin > 0.0:
        preferred = Preference.COMMITMENT
    else:
        preferred = Preference.DISCRETION
    return PolicyComparison(regime, e_commit, e_disc, preferred, _critical_cost(s, regime), margin)
