"""Numerical comparative statics via central finite differences.

Every derivative-sign claim about the thresholds and the mixed violation
probability is checked numerically rather than symbolically: perturb one
parameter by ``+/-h`` (revalidating the scenario both times), evaluate the
target, and compare the sign of the central-difference estimate with the
claimed sign.

Claims covered (signs of the partial derivatives):

* ``rho_H``: ``+w_G  +w_D  -w_H  -w_H_prime``
* ``rho_star_mixed``: ``+w_G  +w_D  -w_H  -w_H_prime  -w_L  +d``
  (the ``w_L`` claim only applies when the incentive ratio exceeds one;
  the ``d`` sign is the composite of "decreasing in ``(g-d)/d``" with
  ``g`` held fixed)
* ``eta_mixed``: ``+rho  +d`` (same composite reading for ``d``)
* ``rho_star_of_eta``: ``+eta``, with a negative second difference
  (increasing and concave in the violation probability)
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .equilibrium import (
    collusion_threshold,
    incentive_ratio,
    mixed_collusion_threshold,
    mixed_violation_probability,
    threshold_extremes,
)
from .model import Scenario, ScenarioValidationError, validate_scenario, with_parameter

REL_STEP = 1e-6
MIN_STEP = 1e-9

TARGETS = ("rho_L", "rho_H", "rho_star_mixed", "eta_mixed", "rho_star_of_eta")

# (target, parameter) -> claimed sign; w_L claim gated on incentive_ratio > 1.
SIGN_CLAIMS: dict[tuple[str, str], str] = {
    ("rho_H", "w_G"): "+",
    ("rho_H", "w_D"): "+",
    ("rho_H", "w_H"): "-",
    ("rho_H", "w_H_prime"): "-",
    ("rho_star_mixed", "w_G"): "+",
    ("rho_star_mixed", "w_D"): "+",
    ("rho_star_mixed", "w_H"): "-",
    ("rho_star_mixed", "w_H_prime"): "-",
    ("rho_star_mixed", "w_L"): "-",
    ("rho_star_mixed", "d"): "+",
    ("eta_mixed", "rho"): "+",
    ("eta_mixed", "d"): "+",
    ("rho_star_of_eta", "eta"): "+",
}


@dataclass(frozen=True)
class StaticsReport:
    target: str
    parameter: str
    step: float
    estimate: float
    claimed_sign: str  # "+", "-" or "n/a"
    agrees: bool


def _evaluate(target: str, s: Scenario, eta: float) -> float:
    w, e = s.welfare, s.enforcement
    if target == "rho_L":
        return threshold_extremes(w)[0]
    if target == "rho_H":
        return threshold_extremes(w)[1]
    if target == "rho_star_mixed":
        return mixed_collusion_threshold(w, e.g, e.d)
    if target == "eta_mixed":
        return mixed_violation_probability(s.rho, e.g, e.d)
    if target == "rho_star_of_eta":
        return collusion_threshold(eta, w)
    raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")


def _current_value(s: Scenario, parameter: str, eta: float) -> float:
    if parameter == "eta":
        return eta
    if parameter == "rho":
        return s.rho
    if parameter in ("g", "d"):
        return getattr(s.enforcement, parameter)
    return getattr(s.welfare, parameter)


def default_step(value: float) -> float:
    """Relative step sized to the parameter magnitude, floored so tiny
    parameters still move."""
    return max(abs(value) * REL_STEP, MIN_STEP)


def claimed_sign(target: str, parameter: str, s: Scenario) -> str:
    """Claimed derivative sign, or ``n/a`` when no claim applies (this
    includes the ``w_L`` claim on the mixed threshold whenever the
    incentive ratio is at most one)."""
    sign = SIGN_CLAIMS.get((target, parameter), "n/a")
    if (target, parameter) == ("rho_star_mixed", "w_L"):
        e = s.enforcement
        if not incentive_ratio(s.welfare, e.g, e.d) > 1.0:
            return "n/a"
    return sign


def finite_difference(
    target: str,
    s: Scenario,
    parameter: str,
    step: float | None = None,
    eta: float = 0.5,
) -> StaticsReport:
    """Central-difference estimate of d(target)/d(parameter) at ``s``.

    Both perturbed scenarios are re-validated; if the perturbation breaks
    a constraint the validation error (naming it) propagates.  ``eta`` is
    the evaluation point for the ``rho_star_of_eta`` target.
    """
    x = _current_value(s, parameter, eta)
    h = default_step(x) if step is None else step
    if h <= 0.0:
        raise ValueError(f"step must be positive (step={h!r})")

    if parameter == "eta":
        if target != "rho_star_of_eta":
            raise ValueError("parameter 'eta' only applies to target 'rho_star_of_eta'")
        hi = _evaluate(target, s, eta + h)
        lo = _evaluate(target, s, eta - h)
    else:
        s_hi = validate_scenario(with_parameter(s, parameter, x + h))
        s_lo = validate_scenario(with_parameter(s, parameter, x - h))
        hi = _evaluate(target, s_hi, eta)
        lo = _evaluate(target, s_lo, eta)

    estimate = (hi - lo) / (2.0 * h)
    sign = claimed_sign(target, parameter, s)
    if sign == "n/a":
        agrees = True
    elif sign == "+":
        agrees = estimate > 0.0
    else:
        agrees = estimate < 0.0
    return StaticsReport(target, parameter, h, estimate, sign, agrees)


def second_difference(
    target: str,
    s: Scenario,
    parameter: str,
    step: float | None = None,
    eta: float = 0.5,
) -> float:
    """Central second difference ``(f(x+h) - 2 f(x) + f(x-h)) / h^2``."""
    x = _current_value(s, parameter, eta)
    # Second differences lose more precision; use a larger relative step.
    h = max(abs(x) * 1e-4, 1e-6) if step is None else step
    if parameter == "eta":
        if target != "rho_star_of_eta":
            raise ValueError("parameter 'eta' only applies to target 'rho_star_of_eta'")
        hi = _evaluate(target, s, eta + h)
        mid = _evaluate(target, s, eta)
        lo = _evaluate(target, s, eta - h)
    else:
        hi = _evaluate(target, validate_scenario(with_parameter(s, parameter, x + h)), eta)
        mid = _evaluate(target, s, eta)
        lo = _evaluate(target, validate_scenario(with_parameter(s, parameter, x - h)), eta)
    return (hi - 2.0 * mid + lo) / (h * h)


def run_claims(s: Scenario, eta: float = 0.5) -> list[StaticsReport]:
    """Evaluate every applicable sign claim for ``s``.

    Claims whose target is undefined at the scenario (``eta_mixed``
    outside the mixed range) or whose perturbation would break validity
    are skipped rather than reported.
    """
    reports = []
    for (target, parameter), _ in SIGN_CLAIMS.items():
        if target == "eta_mixed":
            e = s.enforcement
            if e.d == 0.0 or s.rho >= e.investigate_bound:
                continue
        try:
            reports.append(finite_difference(target, s, parameter, eta=eta))
        except (ScenarioValidationError, ValueError):
            continue
    return reports


def reports_to_csv(reports: list[StaticsReport]) -> str:
    """CSV rendering with the canonical column order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["target", "parameter", "step", "estimate", "claimed_sign", "agrees"])
    for r in reports:
        writer.writerow(
            [r.target, r.parameter, f"{r.step:.12g}", f"{r.estimate:.12g}",
             r.claimed_sign, str(r.agrees).lower()]
        )
    return buf.getvalue()
