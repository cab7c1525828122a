"""Shared fixtures and randomized scenario generators.

Scenario generators come in two strengths:

* ``random_scenario`` / ``scenario_in_regime`` draw broadly, constrained
  only by validity (plus belief placement for the regime variants); they
  feed the closed-form identity, statics and policy tests.

* ``scenario_for_grid`` additionally enforces *resolution margins* so
  that the brute-force grid oracle at ``grid_n = 200`` can decide the
  sharp claims: the default tolerance ``epsilon = 4 * scale / grid_n``
  admits honest epsilon-equilibrium clusters, so a scenario whose
  deviation slopes fall below epsilon cannot demonstrate exclusions like
  "no pure-firm-strategy equilibrium below the investigation bound".
  The margins restrict the test distribution only, never the engine.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from greenfix import (
    Belief,
    EnforcementParams,
    FirmPayoffs,
    Scenario,
    SocialWeights,
    WelfareProfile,
    classify_equilibrium,
    compare_policies,
    default_epsilon,
    expected_welfare_collusion,
    expected_welfare_no_collusion,
    incentive_ratio,
    mixed_collusion_threshold,
    mixed_violation_probability,
    threshold_extremes,
    validate_scenario,
)
from greenfix.equilibrium import Regime
from greenfix.policy import PolicyRegime

DATA_DIR = Path(__file__).parent / "data"

# Safety multiplier on the tolerance used inside the margin checks, so a
# scenario is only accepted when the exclusions hold with room to spare.
_SLACK = 1.3


def make_s1(rho: float = 0.5, d: float = 2.0, g: float = 10.0) -> Scenario:
    """The worked reference scenario: welfare chain (0, 2, 3, 4, 5),
    g=10, d=2, n=2 (f=5), firm payoffs with violation gain 2."""
    return validate_scenario(
        Scenario(
            welfare=WelfareProfile(0.0, 2.0, 3.0, 4.0, 5.0),
            enforcement=EnforcementParams(g=g, d=d, n=2),
            firms=FirmPayoffs(v_D=1.0, v_G=2.0, v_H=4.0, v_L=3.0, v_H_prime=5.0),
            belief=Belief(rho=rho),
            weights=SocialWeights(0.5, 0.5),
        )
    )


def make_s2(rho: float = 0.6) -> Scenario:
    """Small-fine variant: same welfare chain, g=0.5, d=0.4 (incentive
    ratio 0.25), firm payoffs scaled so the per-firm fine 0.25 still
    exceeds the violation gain 0.2."""
    return validate_scenario(
        Scenario(
            welfare=WelfareProfile(0.0, 2.0, 3.0, 4.0, 5.0),
            enforcement=EnforcementParams(g=0.5, d=0.4, n=2),
            firms=FirmPayoffs(v_D=1.0, v_G=2.0, v_H=2.5, v_L=3.0, v_H_prime=3.2),
            belief=Belief(rho=rho),
            weights=SocialWeights(0.5, 0.5),
        )
    )


@pytest.fixture
def s1() -> Scenario:
    return make_s1()


@pytest.fixture
def s2() -> Scenario:
    return make_s2()


@pytest.fixture
def s1_path() -> Path:
    return DATA_DIR / "s1.json"


@pytest.fixture
def s2_path() -> Path:
    return DATA_DIR / "s2.json"


# ---------------------------------------------------------------------------
# Broad random scenarios
# ---------------------------------------------------------------------------

def random_welfare(rng: np.random.Generator) -> WelfareProfile:
    base = rng.uniform(0.0, 2.0)
    gaps = rng.uniform(0.4, 2.2, size=4)
    w = base + np.concatenate(([0.0], np.cumsum(gaps)))
    return WelfareProfile(*map(float, w))


def random_weights(rng: np.random.Generator) -> SocialWeights:
    d1 = float(rng.uniform(0.15, 0.85))
    return SocialWeights(d1, 1.0 - d1)


def random_scenario(rng: np.random.Generator, rho: float | None = None) -> Scenario:
    """A broadly random valid scenario (any regime)."""
    g = float(rng.uniform(6.0, 14.0))
    d = float(rng.uniform(0.4, 0.6 * g))
    f = g / 2
    v_l = float(rng.uniform(2.0, 4.0))
    gain = float(rng.uniform(0.3, 0.85)) * f
    s = Scenario(
        welfare=random_welfare(rng),
        enforcement=EnforcementParams(g=g, d=d, n=2),
        firms=FirmPayoffs(
            v_D=float(rng.uniform(0.5, 5.0)),
            v_G=float(rng.uniform(0.5, 5.0)),
            v_H=float(rng.uniform(0.5, 5.0)),
            v_L=v_l,
            v_H_prime=v_l + gain,
        ),
        belief=Belief(float(rng.uniform(0.02, 0.98)) if rho is None else rho),
        weights=random_weights(rng),
    )
    return validate_scenario(s)


def reseat_rho(s: Scenario, rho: float) -> Scenario:
    return validate_scenario(
        Scenario(s.welfare, s.enforcement, s.firms, Belief(rho), s.weights)
    )


def random_mixed_feasible(rng: np.random.Generator) -> Scenario:
    """Random scenario with d > 0 and rho strictly below (g-d)/g, the
    domain of the inspector-indifference formula."""
    while True:
        s = random_scenario(rng)
        bound = s.enforcement.investigate_bound
        if bound <= 0.04:
            continue
        return reseat_rho(s, float(rng.uniform(0.01, 0.97)) * bound)


def scenario_in_regime(rng: np.random.Generator, regime: Regime) -> Scenario:
    """Rejection-sample a scenario classified into ``regime`` with a
    little padding away from the governing thresholds (for closed-form
    tests; no grid-resolution margins)."""
    pad = 0.02
    while True:
        s = random_scenario(rng)
        w, e = s.welfare, s.enforcement
        bound = e.investigate_bound
        _, rho_h = threshold_extremes(w)
        ratio = incentive_ratio(w, e.g, e.d)
        rho_star = mixed_collusion_threshold(w, e.g, e.d)

        if regime is Regime.PURE_ALWAYS_VIOLATE:
            lo = bound + pad
            if ratio < 1.0:
                lo = max(lo, rho_h + pad)
            if lo >= 0.97:
                continue
            rho = float(rng.uniform(lo, 0.97))
        elif regime is Regime.MIXED_VIOLATION:
            if not ratio > 1.0:
                continue
            lo, hi = rho_star + pad, bound - pad
            if lo >= hi:
                continue
            rho = float(rng.uniform(lo, hi))
        elif regime is Regime.NO_COLLUSION:
            hi = (min(rho_star, bound) if ratio > 1.0 else bound) - pad
            if hi <= 0.01:
                continue
            rho = float(rng.uniform(0.01, hi))
        else:
            raise ValueError(f"no generator for {regime}")

        s = reseat_rho(s, rho)
        if classify_equilibrium(s).regime is regime:
            return s


def policy_scenario(rng: np.random.Generator, regime: PolicyRegime) -> Scenario:
    """Scenario whose policy comparison falls into ``regime``, with the
    two expected social welfares separated by more than 1e-9 so the
    threshold test has a decidable verdict."""
    target = {
        PolicyRegime.HIGH_RHO: Regime.PURE_ALWAYS_VIOLATE,
        PolicyRegime.INTERMEDIATE_RHO: Regime.MIXED_VIOLATION,
        PolicyRegime.SMALL_RHO: Regime.NO_COLLUSION,
    }[regime]
    while True:
        s = scenario_in_regime(rng, target)
        comparison = compare_policies(s)
        if comparison.regime is not regime:
            continue
        if abs(comparison.margin) <= 1e-9:
            continue
        return s


# ---------------------------------------------------------------------------
# Grid-resolution margins (for the brute-force oracle acceptance tests)
# ---------------------------------------------------------------------------

def _regulator_gap(s: Scenario, eta: float) -> float:
    return expected_welfare_collusion(s.rho, eta, s.welfare) - expected_welfare_no_collusion(
        s.rho, s.welfare
    )


def _critical_eta(s: Scenario) -> float:
    """Violation probability at which the regulator is exactly
    indifferent at this belief (may fall outside [0, 1])."""
    w, rho = s.welfare, s.rho
    num = rho * (w.w_H - w.w_D) - (1.0 - rho) * (w.w_G - w.w_L)
    return num / ((1.0 - rho) * (w.w_L - w.w_H_prime))


def _no_continuation_pass_at(s: Scenario, eps: float, eta_at: float) -> bool:
    """True when no investigation probability lets the profile
    ``(eta_at, mu)`` pass both continuation deviation checks with slack.

    Exclusion at ``eta_at`` propagates away from the inspector's
    indifference point (upward when the investigation incentive is
    positive there, downward when negative), so a single evaluation at
    the boundary of the region to be ruled out suffices.
    """
    e, rho = s.enforcement, s.rho
    gain = s.firms.violation_gain
    eps = _SLACK * eps
    b = (1.0 - rho) * eta_at * (e.g - e.d) - rho * e.d
    if b > 0:
        if b <= 2.0 * eps:
            return False
        mu_min = 1.0 - eps / b
        return (1.0 - rho) * eta_at * (mu_min * e.f - gain) > eps
    if eta_at >= 1.0:
        return False  # b <= 0 at eta = 1 means never-investigate is credible
    mu_cap = min(1.0, eps / abs(b)) if b != 0.0 else 1.0
    mu_need = (gain - eps / ((1.0 - rho) * (1.0 - eta_at))) / e.f
    return mu_need > mu_cap


def _eta0_excluded(s: Scenario, eps: float) -> bool:
    return _no_continuation_pass_at(s, eps, 0.0)


def _eta1_excluded(s: Scenario, eps: float) -> bool:
    e, rho = s.enforcement, s.rho
    gain = s.firms.violation_gain
    eps = _SLACK * eps
    b1 = (1.0 - rho) * (e.g - e.d) - rho * e.d
    if b1 <= 2.0 * eps:
        return False
    mu_min = 1.0 - eps / b1
    return (1.0 - rho) * (mu_min * e.f - gain) > eps


def scenario_for_grid(
    rng: np.random.Generator, regime: Regime, grid_n: int = 200
) -> Scenario:
    """Scenario in ``regime`` whose deviation slopes clear the default
    grid tolerance, so the oracle's regime exclusions are decidable."""
    h = 1.0 / grid_n
    while True:
        s = random_scenario(rng)
        w, e = s.welfare, s.enforcement
        bound = e.investigate_bound
        _, rho_h = threshold_extremes(w)
        ratio = incentive_ratio(w, e.g, e.d)
        rho_star = mixed_collusion_threshold(w, e.g, e.d)

        if regime is Regime.MIXED_VIOLATION:
            if not ratio > 1.15:
                continue
            lo, hi = rho_star + 0.04, min(0.92 * bound, bound - 0.05)
            if lo >= hi:
                continue
            rho = float(rng.uniform(lo, hi))
        elif regime is Regime.PURE_ALWAYS_VIOLATE:
            lo = bound + 0.04
            if ratio < 1.0:
                lo = max(lo, rho_h + 0.04)
            hi = min(0.93, lo + 0.35)
            if lo >= hi:
                continue
            rho = float(rng.uniform(lo, hi))
        elif regime is Regime.NO_COLLUSION:
            if rng.random() < 0.5:
                # Mixed-flavoured blocking: below the mixed threshold.
                hi = (min(rho_star, bound) if ratio > 1.0 else bound) - 0.04
                if hi <= 0.03:
                    continue
                rho = float(rng.uniform(0.03, hi))
            else:
                # Pure-flavoured blocking: above the bound, below rho_H.
                if ratio >= 0.9 or rho_h - 0.04 <= bound + 0.04:
                    continue
                rho = float(rng.uniform(bound + 0.04, min(rho_h - 0.04, 0.93)))
        else:
            raise ValueError(f"no grid generator for {regime}")

        s = reseat_rho(s, rho)
        if classify_equilibrium(s).regime is not regime:
            continue
        eps = default_epsilon(s, grid_n)
        slope_w = (1.0 - rho) * (w.w_L - w.w_H_prime)
        eta_crit = _critical_eta(s)

        if regime is Regime.MIXED_VIOLATION:
            eta_star = mixed_violation_probability(rho, e.g, e.d)
            if not (_eta0_excluded(s, eps) and _eta1_excluded(s, eps)):
                continue
            # Containment: the grid point just below eta_star must still
            # clear the regulator's comparison.
            if _regulator_gap(s, eta_star) < 3.0 * h * slope_w:
                continue
            # Blocking profiles would need a continuation pass at or above
            # the regulator's indifference point eta_crit (> eta_star here);
            # if eta_crit >= 1 the regulator alone rules them out.
            if eta_crit < 1.0 and not _no_continuation_pass_at(s, eps, eta_crit):
                continue
            return s

        if regime is Regime.PURE_ALWAYS_VIOLATE:
            if not _eta0_excluded(s, eps):
                continue
            # Collusion beats blocking even at sure violation, so every
            # blocking profile fails on the regulator side.
            if _regulator_gap(s, 1.0) < 0.01 * max(1.0, e.g):
                continue
            return s

        # Collusion blocked.
        if rho < bound:
            eta_star = mixed_violation_probability(rho, e.g, e.d)
            if not (_eta0_excluded(s, eps) and _eta1_excluded(s, eps)):
                continue
            # Containment: the blocking profile at the continuation
            # equilibrium must clear the regulator's comparison after the
            # grid snap.
            if -_regulator_gap(s, eta_star) < 3.0 * h * slope_w:
                continue
            # Allow-profiles would need a continuation pass at or below
            # eta_crit (< eta_star here); below zero nothing qualifies.
            if eta_crit > 0.0 and not _no_continuation_pass_at(s, eps, eta_crit):
                continue
        else:
            if not _eta0_excluded(s, eps):
                continue
            if -_regulator_gap(s, 1.0) < 0.01 * max(1.0, e.g):
                continue
            if eta_crit > 0.0 and not _no_continuation_pass_at(
                s, eps, min(eta_crit, 1.0 - h)
            ):
                continue
        return s
