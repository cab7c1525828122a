"""Closed-form equilibrium analysis of the inspection game.

Timing of the game: the regulator first decides whether to allow
collusion, nature then draws the transition cost (high with probability
``rho``), firms choose whether to violate (collude on the high price when
the cost is low) with probability ``eta``, and an inspector who observes a
high price decides whether to investigate at cost ``d``, collecting the
total fine ``g`` if a violation is proven.

Everything in this module is a pure function of the scenario parameters.
The regime classifier resolves the game by backward induction:

* ``rho`` above ``(g - d) / g``: investigating cannot pay even against
  sure violation, so firms always violate and the inspector never
  investigates; collusion is allowed when the incentive ratio is at least
  one or the belief clears the always-violate threshold ``rho_H``.
* ``rho`` below ``(g - d) / g``: no pure firm strategy survives; the only
  candidate is the mixed profile where firms violate with the probability
  that leaves the inspector exactly indifferent, and collusion is allowed
  when the incentive ratio exceeds one and the belief clears the mixed
  threshold ``rho_star_mixed``.
* ``d = 0``: a costless investigation threat deters violation entirely;
  collusion is allowed above ``rho_L`` with no violation on path.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .model import Scenario, WelfareProfile

IDENTITY_TOL = 1e-12


class Regime(enum.Enum):
    """Equilibrium regime of the game under discretionary investigation."""

    NO_COLLUSION = "NoCollusion"
    PURE_ALWAYS_VIOLATE = "PureAlwaysViolate"
    MIXED_VIOLATION = "MixedViolation"
    # d = 0 limit: the costless investigation threat deters violation.
    NO_VIOLATION_DETERRED = "NoViolationDeterred"


class InspectorBehavior(enum.Enum):
    NEVER_INVESTIGATE = "NeverInvestigate"
    INDIFFERENT = "Indifferent"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class EquilibriumDiagnostics:
    """Threshold values backing a classification.

    ``boundary_tie`` is set when ``rho`` sits exactly on a regime
    boundary; the classification is still deterministic (ties at a
    collusion threshold resolve to no collusion, a tie at the
    investigation bound resolves to the always-violate branch) but
    callers that care can treat ties specially.
    """

    rho_L: float
    rho_H: float
    rho_star_mixed: float
    incentive_ratio: float
    investigate_bound: float
    boundary_tie: bool = False


@dataclass(frozen=True)
class EquilibriumOutcome:
    regime: Regime
    collusion_allowed: bool
    eta: float | None
    inspector: InspectorBehavior
    diagnostics: EquilibriumDiagnostics


# ---------------------------------------------------------------------------
# Expected welfare and thresholds
# ---------------------------------------------------------------------------

def expected_welfare_collusion(rho: float, eta: float, w: WelfareProfile) -> float:
    """Regulator's expected welfare when collusion is allowed.

    ``rho * w_H + (1 - rho) * (eta * w_H_prime + (1 - eta) * w_L)``:
    with probability ``rho`` the cost is high and collusion yields
    ``w_H``; otherwise firms violate with probability ``eta``.
    """
    return rho * w.w_H + (1.0 - rho) * (eta * w.w_H_prime + (1.0 - eta) * w.w_L)


def expected_welfare_no_collusion(rho: float, w: WelfareProfile) -> float:
    """Regulator's expected welfare when collusion is prohibited:
    ``rho * w_D + (1 - rho) * w_G``."""
    return rho * w.w_D + (1.0 - rho) * w.w_G


def collusion_threshold(eta: float, w: WelfareProfile) -> float:
    """Belief level at which allowing collusion becomes worthwhile.

    Equates the two expected welfares at violation probability ``eta``
    and solves for ``rho``; the welfare chain guarantees a value in
    (0, 1).  Increasing and concave in ``eta``.
    """
    num = w.w_G - (eta * w.w_H_prime + (1.0 - eta) * w.w_L)
    return num / (num + (w.w_H - w.w_D))


def threshold_extremes(w: WelfareProfile) -> tuple[float, float]:
    """``(rho_L, rho_H)``: collusion thresholds when firms never violate
    and when they always violate.  ``rho_L < rho_H`` for every valid
    profile since ``w_L > w_H_prime``."""
    return collusion_threshold(0.0, w), collusion_threshold(1.0, w)


def degenerate_high_price(rho: float, eta: float) -> bool:
    """True when a high price is never observed (``rho = 0`` and
    ``eta = 0``), i.e. the conditioning in :func:`inspection_benefit`
    is degenerate and its value is 0 by convention."""
    return rho == 0.0 and eta == 0.0


def inspection_benefit(rho: float, eta: float, g: float) -> float:
    """Expected fine revenue from investigating, given a high price.

    ``g * (1 - rho) * eta / ((1 - rho) * eta + rho)`` — the fine times
    the posterior probability that the high price is a violation.  In the
    degenerate case where a high price cannot occur (``rho = eta = 0``)
    the value is 0 by convention; see :func:`degenerate_high_price`.
    """
    mass = (1.0 - rho) * eta + rho
    if mass == 0.0:
        return 0.0
    return g * (1.0 - rho) * eta / mass


def mixed_violation_probability(rho: float, g: float, d: float) -> float:
    """Violation probability that makes the inspector indifferent.

    ``eta = rho * d / ((1 - rho) * (g - d))``; plugged back into
    :func:`inspection_benefit` this returns exactly ``d``.  Only defined
    for ``d > 0`` and ``rho < (g - d) / g``, the range where an interior
    mixed strategy exists.
    """
    if d <= 0.0:
        raise ValueError("no interior mixed strategy: requires d > 0")
    if rho >= (g - d) / g:
        raise ValueError(
            f"no interior mixed strategy: rho={rho:g} >= (g-d)/g={(g - d) / g:g}"
        )
    return rho * d / ((1.0 - rho) * (g - d))


def mixed_collusion_threshold(w: WelfareProfile, g: float, d: float) -> float:
    """Collusion threshold in the mixed-violation regime.

    Substitutes the indifference violation probability into
    :func:`collusion_threshold`:

    ``(g-d)(w_G-w_L) / [(g-d)(w_G-w_L) + (g-d)(w_H-w_D) - d(w_L-w_H_prime)]``

    Sits strictly between ``rho_L`` and ``rho_H`` whenever the incentive
    ratio exceeds one; outside that range the value is still computed but
    carries no equilibrium meaning (the classifier ignores it).  As
    ``d -> 0`` it reduces to ``rho_L``.
    """
    a = (g - d) * (w.w_G - w.w_L)
    den = a + (g - d) * (w.w_H - w.w_D) - d * (w.w_L - w.w_H_prime)
    if den == 0.0:
        return math.inf
    return a / den


def incentive_ratio(w: WelfareProfile, g: float, d: float) -> float:
    """``((g - d) / d) * ((w_H - w_D) / (w_G - w_H_prime))``.

    Measures the inspector's investigation incentive scaled by the social
    dominance of collusion over competition; which collusion threshold
    binds depends on whether this exceeds one.  ``d = 0`` returns
    ``math.inf`` (check with ``math.isinf``); the classifier treats that
    as a ratio above one.
    """
    if d == 0.0:
        return math.inf
    return ((g - d) / d) * ((w.w_H - w.w_D) / (w.w_G - w.w_H_prime))


def inspector_mixing_probability(firms, f: float) -> float:
    """Investigation probability that leaves firms indifferent.

    Not pinned down by the inspector's own indifference; completing the
    mixed profile requires the firms to be indifferent too, which gives
    ``mu = (v_H_prime - v_L) / f``.  In (0, 1) whenever the per-firm fine
    exceeds the violation gain (a validity requirement).
    """
    gain = firms.v_H_prime - firms.v_L
    if not 0.0 < gain < f:
        raise ValueError(
            f"requires f > v_H_prime - v_L > 0 (f={f:g}, gain={gain:g})"
        )
    return gain / f


def anticipated_violation_probability(s: Scenario) -> float:
    """Violation probability the regulator anticipates when deciding on
    collusion: 1 in the never-investigate range, the indifference value in
    the mixed range, 0 when investigation is costless."""
    e = s.enforcement
    if e.d == 0.0:
        return 0.0
    if s.rho >= e.investigate_bound:
        return 1.0
    return mixed_violation_probability(s.rho, e.g, e.d)


# ---------------------------------------------------------------------------
# Regime classification
# ---------------------------------------------------------------------------

def classify_equilibrium(s: Scenario) -> EquilibriumOutcome:
    """Resolve the game for a validated scenario.

    Tie handling (exact floating-point equality, no fuzzing): ``rho``
    equal to a collusion threshold resolves to no collusion; ``rho``
    equal to the investigation bound ``(g - d) / g`` is classified with
    the always-violate branch.  Both set ``diagnostics.boundary_tie``.
    """
    w, e, rho = s.welfare, s.enforcement, s.rho
    rho_l, rho_h = threshold_extremes(w)
    ratio = incentive_ratio(w, e.g, e.d)
    rho_star = mixed_collusion_threshold(w, e.g, e.d)
    bound = e.investigate_bound

    def outcome(regime, allowed, eta, inspector, tie):
        diag = EquilibriumDiagnostics(
            rho_L=rho_l,
            rho_H=rho_h,
            rho_star_mixed=rho_star,
            incentive_ratio=ratio,
            investigate_bound=bound,
            boundary_tie=tie,
        )
        return EquilibriumOutcome(regime, allowed, eta, inspector, diag)

    if e.d == 0.0:
        # Costless investigation deters any violation; collusion is then
        # worthwhile above rho_L, with the inspector weakly willing to
        # investigate (zero benefit, zero cost at eta = 0).
        tie = rho == rho_l
        if rho > rho_l:
            return outcome(
                Regime.NO_VIOLATION_DETERRED, True, 0.0, InspectorBehavior.INDIFFERENT, tie
            )
        return outcome(Regime.NO_COLLUSION, False, None, InspectorBehavior.NOT_APPLICABLE, tie)

    if rho >= bound:
        # Never-investigate / always-violate branch.
        tie = rho == bound
        allowed = ratio >= 1.0 or rho > rho_h
        if not allowed:
            tie = tie or rho == rho_h
            return outcome(
                Regime.NO_COLLUSION, False, None, InspectorBehavior.NOT_APPLICABLE, tie
            )
        return outcome(
            Regime.PURE_ALWAYS_VIOLATE, True, 1.0, InspectorBehavior.NEVER_INVESTIGATE, tie
        )

    # Mixed branch: rho < (g - d) / g, d > 0.
    if ratio > 1.0 and rho > rho_star:
        eta = mixed_violation_probability(rho, e.g, e.d)
        return outcome(Regime.MIXED_VIOLATION, True, eta, InspectorBehavior.INDIFFERENT, False)
    tie = ratio > 1.0 and rho == rho_star
    return outcome(Regime.NO_COLLUSION, False, None, InspectorBehavior.NOT_APPLICABLE, tie)
