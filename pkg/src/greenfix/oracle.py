"""Independent verification of the closed-form analysis.

Nothing here reuses the threshold formulas: payoffs come from explicit
enumeration of the game-tree leaves, equilibria from a brute-force search
over discretized strategy grids, and expectations are cross-checked by
seeded Monte-Carlo sampling.

Equilibrium concept used by the checker: the regulator moves first, so
firm and inspector deviations are evaluated in the continuation after
collusion is allowed (their strategies are payoff-irrelevant otherwise,
which would let any off-path behaviour pass).  The regulator's own check
is a welfare comparison between allowing and blocking at the profile's
violation probability.  Payoffs are linear in each player's own
probability, so deviations to the endpoints 0 and 1 suffice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .equilibrium import (
    Regime,
    classify_equilibrium,
    inspector_mixing_probability,
    mixed_violation_probability,
)
from .model import Scenario

# Normal 97.5% quantile for two-sided 95% confidence intervals.
Z_95 = 1.959963984540054

# Monte-Carlo disagreement gate for verification runs: wide enough that a
# correct implementation essentially never trips it by chance.
MC_SIGMA_GATE = 6.0

RNG_ALGORITHM = "PCG64"  # numpy default_rng bit generator


@dataclass(frozen=True)
class StrategyProfile:
    """``allow_collusion`` for the regulator, violation probability
    ``eta`` for the firms, investigation probability ``mu`` for the
    inspector.  ``eta`` and ``mu`` describe continuation play and are
    meaningful even when collusion is blocked."""

    allow_collusion: bool
    eta: float
    mu: float


@dataclass(frozen=True)
class PayoffVector:
    regulator: float
    firm: float
    inspector: float


@dataclass(frozen=True)
class DeviationReport:
    """Best unilateral deviation gains at a profile.

    ``firm_gain`` and ``inspector_gain`` are continuation gains (largest
    payoff improvement from switching to a pure strategy); the regulator
    entry records whether the allow/block choice agrees with the welfare
    comparison at the profile's ``eta`` (``collusion_gap`` is the signed
    difference collusion-minus-no-collusion).
    """

    firm_gain: float
    inspector_gain: float
    regulator_consistent: bool
    collusion_gap: float
    epsilon: float

    @property
    def passes(self) -> bool:
        return (
            self.firm_gain <= self.epsilon
            and self.inspector_gain <= self.epsilon
            and self.regulator_consistent
        )


@dataclass(frozen=True)
class EquilibriumSearchResult:
    profiles: list[StrategyProfile]
    grid_n: int
    epsilon: float

    def allowed(self) -> list[StrategyProfile]:
        return [p for p in self.profiles if p.allow_collusion]

    def blocked(self) -> list[StrategyProfile]:
        return [p for p in self.profiles if not p.allow_collusion]

    def to_dict(self) -> dict:
        return {
            "grid_n": self.grid_n,
            "epsilon": self.epsilon,
            "n_profiles": len(self.profiles),
            "profiles": [
                {"allow_collusion": p.allow_collusion, "eta": p.eta, "mu": p.mu}
                for p in self.profiles
            ],
        }


@dataclass(frozen=True)
class MonteCarloReport:
    """Sample means with 95% normal-approximation confidence intervals."""

    mean: PayoffVector
    ci_half_width: PayoffVector
    n_samples: int
    seed: int

    def contains(self, exact: PayoffVector) -> tuple[bool, bool, bool]:
        """Componentwise: does the CI contain the exact payoff?"""
        return tuple(
            abs(getattr(exact, c) - getattr(self.mean, c))
            <= getattr(self.ci_half_width, c)
            for c in ("regulator", "firm", "inspector")
        )

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "seed": self.seed,
            "rng": RNG_ALGORITHM,
            "mean": vars(self.mean),
            "ci_half_width": vars(self.ci_half_width),
        }


# ---------------------------------------------------------------------------
# Game tree
# ---------------------------------------------------------------------------

def _leaves(s: Scenario, p: StrategyProfile) -> list[tuple[float, float, float, float]]:
    """Terminal branches as (probability, regulator, firm, inspector).

    Fine accounting: a proven violation costs each firm the per-firm fine
    ``f`` while the inspector collects the whole ``g`` net of the
    investigation cost; fines never enter regulator welfare.
    """
    w, e, fp, rho = s.welfare, s.enforcement, s.firms, s.rho
    if not p.allow_collusion:
        return [
            (rho, w.w_D, fp.v_D, 0.0),
            (1.0 - rho, w.w_G, fp.v_G, 0.0),
        ]
    eta, mu = p.eta, p.mu
    return [
        # High cost: justified high price; investigation finds nothing.
        (rho * mu, w.w_H, fp.v_H, -e.d),
        (rho * (1.0 - mu), w.w_H, fp.v_H, 0.0),
        # Low cost, violation: high price; investigation proves it.
        ((1.0 - rho) * eta * mu, w.w_H_prime, fp.v_H_prime - e.f, e.g - e.d),
        ((1.0 - rho) * eta * (1.0 - mu), w.w_H_prime, fp.v_H_prime, 0.0),
        # Low cost, no violation: low price, nothing to inspect.
        ((1.0 - rho) * (1.0 - eta), w.w_L, fp.v_L, 0.0),
    ]


def game_tree_payoffs(s: Scenario, p: StrategyProfile) -> PayoffVector:
    """Exact expected payoffs by enumerating the tree's terminal branches."""
    reg = firm = insp = 0.0
    for prob, w_leaf, v_leaf, i_leaf in _leaves(s, p):
        reg += prob * w_leaf
        firm += prob * v_leaf
        insp += prob * i_leaf
    return PayoffVector(reg, firm, insp)


def payoff_scale(s: Scenario) -> float:
    """Largest payoff magnitude in the scenario; sets deviation tolerances."""
    w, e, fp = s.welfare, s.enforcement, s.firms
    return max(
        abs(x)
        for x in (
            w.w_D, w.w_H, w.w_H_prime, w.w_L, w.w_G,
            fp.v_D, fp.v_G, fp.v_H, fp.v_L, fp.v_H_prime,
            e.g, e.d, e.f,
        )
    )


def default_epsilon(s: Scenario, grid_n: int) -> float:
    """Deviation tolerance tied to grid resolution: coarse grids get a
    proportionally larger tolerance so the true equilibrium's nearest grid
    point is never rejected for discretization error alone."""
    return 4.0 * max(1.0, payoff_scale(s)) / grid_n


# ---------------------------------------------------------------------------
# Best responses and equilibrium search
# ---------------------------------------------------------------------------

def best_response_check(
    s: Scenario, p: StrategyProfile, epsilon: float = 0.0
) -> DeviationReport:
    """Deviation audit of one profile; it is an epsilon-equilibrium iff
    the firm and inspector gains are at most ``epsilon`` and the
    regulator's choice matches the welfare comparison (weakly)."""
    if epsilon < 0.0:
        raise ValueError(f"epsilon must be nonnegative (epsilon={epsilon!r})")

    def continuation(eta: float, mu: float) -> PayoffVector:
        return game_tree_payoffs(s, StrategyProfile(True, eta, mu))

    here = continuation(p.eta, p.mu)
    firm_gain = (
        max(continuation(0.0, p.mu).firm, continuation(1.0, p.mu).firm) - here.firm
    )
    inspector_gain = (
        max(continuation(p.eta, 0.0).inspector, continuation(p.eta, 1.0).inspector)
        - here.inspector
    )
    w_collusion = here.regulator
    w_no_collusion = game_tree_payoffs(s, StrategyProfile(False, p.eta, p.mu)).regulator
    gap = w_collusion - w_no_collusion
    consistent = gap >= 0.0 if p.allow_collusion else gap <= 0.0
    return DeviationReport(firm_gain, inspector_gain, consistent, gap, epsilon)


def grid_equilibrium_search(
    s: Scenario, grid_n: int = 200, epsilon: float | None = None
) -> EquilibriumSearchResult:
    """Enumerate allow/eta/mu on uniform grids and keep every profile that
    passes :func:`best_response_check`.

    Vectorized evaluation of the same tree expectations; results are
    byte-identical to checking each profile individually and are ordered
    by (allow, eta index, mu index).
    """
    if grid_n < 2:
        raise ValueError(f"grid_n must be at least 2 (grid_n={grid_n!r})")
    if epsilon is None:
        epsilon = default_epsilon(s, grid_n)

    w, e, fp, rho = s.welfare, s.enforcement, s.firms, s.rho
    eta = np.linspace(0.0, 1.0, grid_n + 1)
    mu = np.linspace(0.0, 1.0, grid_n + 1)

    # Continuation expectations on the grid (tree leaves, broadcast).
    firm = rho * fp.v_H + (1.0 - rho) * (
        eta[:, None] * (fp.v_H_prime - mu[None, :] * e.f)
        + (1.0 - eta)[:, None] * fp.v_L
    )
    firm_eta0 = rho * fp.v_H + (1.0 - rho) * fp.v_L
    firm_eta1 = rho * fp.v_H + (1.0 - rho) * (fp.v_H_prime - mu * e.f)
    firm_gain = np.maximum(firm_eta0, firm_eta1)[None, :] - firm

    mu_slope = (1.0 - rho) * eta * (e.g - e.d) - rho * e.d  # inspector payoff per mu
    inspector_gain = np.maximum(mu_slope, 0.0)[:, None] - mu_slope[:, None] * mu[None, :]

    w_collusion = rho * w.w_H + (1.0 - rho) * (
        eta * w.w_H_prime + (1.0 - eta) * w.w_L
    )
    w_no_collusion = rho * w.w_D + (1.0 - rho) * w.w_G

    continuation_ok = (firm_gain <= epsilon) & (inspector_gain <= epsilon)
    gap = w_collusion - w_no_collusion

    profiles: list[StrategyProfile] = []
    for allow in (False, True):
        reg_ok = gap >= 0.0 if allow else gap <= 0.0
        mask = continuation_ok & reg_ok[:, None]
        for i, j in zip(*np.nonzero(mask)):
            profiles.append(StrategyProfile(allow, float(eta[i]), float(mu[j])))
    return EquilibriumSearchResult(profiles, grid_n, epsilon)


def closed_form_profile(s: Scenario) -> StrategyProfile:
    """Strategy profile predicted by the closed-form analysis, including
    continuation play when collusion is blocked (used to compare the grid
    search against the classifier)."""
    out = classify_equilibrium(s)
    e = s.enforcement
    mu_star = inspector_mixing_probability(s.firms, e.f)
    if out.regime is Regime.PURE_ALWAYS_VIOLATE:
        return StrategyProfile(True, 1.0, 0.0)
    if out.regime is Regime.MIXED_VIOLATION:
        return StrategyProfile(True, out.eta, mu_star)
    if out.regime is Regime.NO_VIOLATION_DETERRED:
        return StrategyProfile(True, 0.0, mu_star)
    # Collusion blocked; continuation play mirrors the branch logic.
    if e.d == 0.0:
        return StrategyProfile(False, 0.0, mu_star)
    if s.rho >= e.investigate_bound:
        return StrategyProfile(False, 1.0, 0.0)
    return StrategyProfile(
        False, mixed_violation_probability(s.rho, e.g, e.d), mu_star
    )


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

def monte_carlo_estimate(
    s: Scenario, p: StrategyProfile, n_samples: int, seed: int
) -> MonteCarloReport:
    """Estimate expected payoffs by simulating the game ``n_samples``
    times with a seeded deterministic generator (numpy ``default_rng``,
    PCG64).  Draw order per report: cost realizations, violation draws,
    investigation draws.  Identical seeds give identical reports.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be positive (n_samples={n_samples!r})")
    w, e, fp = s.welfare, s.enforcement, s.firms
    rng = np.random.default_rng(seed)
    u_cost = rng.random(n_samples)
    u_viol = rng.random(n_samples)
    u_inv = rng.random(n_samples)

    high_cost = u_cost < s.rho
    if p.allow_collusion:
        violate = ~high_cost & (u_viol < p.eta)
        high_price = high_cost | violate
        investigated = high_price & (u_inv < p.mu)
        reg = np.where(high_cost, w.w_H, np.where(violate, w.w_H_prime, w.w_L))
        firm = np.where(
            high_cost,
            fp.v_H,
            np.where(violate, fp.v_H_prime - np.where(investigated, e.f, 0.0), fp.v_L),
        )
        insp = np.where(
            investigated, np.where(violate, e.g - e.d, -e.d), 0.0
        )
    else:
        reg = np.where(high_cost, w.w_D, w.w_G)
        firm = np.where(high_cost, fp.v_D, fp.v_G)
        insp = np.zeros(n_samples)

    def summarize(x: np.ndarray) -> tuple[float, float]:
        mean = float(np.mean(x))
        if n_samples == 1:
            return mean, math.inf
        sd = float(np.std(x, ddof=1))
        return mean, Z_95 * sd / math.sqrt(n_samples)

    (m_r, h_r), (m_f, h_f), (m_i, h_i) = summarize(reg), summarize(firm), summarize(insp)
    return MonteCarloReport(
        PayoffVector(m_r, m_f, m_i), PayoffVector(h_r, h_f, h_i), n_samples, seed
    )


# ---------------------------------------------------------------------------
# Verification against the closed forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    issues: list[str]
    expected: StrategyProfile
    matched: StrategyProfile | None
    search: EquilibriumSearchResult
    mc: MonteCarloReport
    exact: PayoffVector


def profiles_close(a: StrategyProfile, b: StrategyProfile, tol: float) -> bool:
    return (
        a.allow_collusion == b.allow_collusion
        and abs(a.eta - b.eta) <= tol
        and abs(a.mu - b.mu) <= tol
    )


def verify_against_closed_form(
    s: Scenario,
    grid_n: int = 200,
    epsilon: float | None = None,
    n_samples: int = 100_000,
    seed: int = 0,
) -> VerificationReport:
    """Run the brute-force oracle and flag disagreement with the
    closed-form classification.

    Checks (tolerance one grid step per coordinate): the expected profile
    is found; no profile contradicts the allow/block decision; no
    pure-firm-strategy profile passes when the classification is mixed;
    the exact tree payoffs lie within ``MC_SIGMA_GATE`` standard errors
    of the Monte-Carlo means.  Scenarios extremely close to a regime
    boundary may need a finer grid to resolve.
    """
    out = classify_equilibrium(s)
    expected = closed_form_profile(s)
    search = grid_equilibrium_search(s, grid_n, epsilon)
    tol = 1.0 / grid_n
    issues: list[str] = []

    if out.collusion_allowed:
        matched = next(
            (p for p in search.allowed() if profiles_close(p, expected, tol)), None
        )
        if matched is None:
            issues.append(
                f"no grid equilibrium within {tol:g} of the closed-form profile "
                f"(allow={expected.allow_collusion}, eta={expected.eta:.6g}, "
                f"mu={expected.mu:.6g})"
            )
        if search.blocked():
            issues.append(
                f"{len(search.blocked())} grid equilibria block collusion although "
                "the closed form allows it"
            )
        if out.regime is Regime.MIXED_VIOLATION:
            pure = [p for p in search.allowed() if p.eta in (0.0, 1.0)]
            if pure:
                issues.append(
                    f"{len(pure)} pure-firm-strategy grid equilibria in the mixed "
                    "regime (none should exist)"
                )
    else:
        matched = search.blocked()[0] if search.blocked() else None
        if matched is None:
            issues.append("no collusion-blocking grid equilibrium found")
        if search.allowed():
            issues.append(
                f"{len(search.allowed())} grid equilibria allow collusion although "
                "the closed form blocks it"
            )

    exact = game_tree_payoffs(s, expected)
    mc = monte_carlo_estimate(s, expected, n_samples, seed)
    atol = 1e-9 * max(1.0, payoff_scale(s))
    for name in ("regulator", "firm", "inspector"):
        gate = (
            MC_SIGMA_GATE / Z_95 * getattr(mc.ci_half_width, name) + atol
        )
        if abs(getattr(mc.mean, name) - getattr(exact, name)) > gate:
            issues.append(
                f"Monte-Carlo {name} mean {getattr(mc.mean, name):.6g} is more than "
                f"{MC_SIGMA_GATE:g} standard errors from the exact value "
                f"{getattr(exact, name):.6g}"
            )

    return VerificationReport(not issues, issues, expected, matched, search, mc, exact)
