"""Value types for the collusion-exemption inspection game, plus validation.

A scenario bundles everything the engine needs:

* regulator welfare levels for the five possible outcomes,
* enforcement parameters (total fine, investigation cost, firm count),
* per-firm payoffs for the same outcomes (symmetric firms),
* the regulator's prior belief that the green-transition cost is high,
* social-planner weights for the regulator-vs-inspector trade-off.

Construction never raises; all constraint checking goes through
:func:`validate_scenario`, which accumulates *every* violated constraint
instead of stopping at the first.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

WEIGHT_SUM_TOL = 1e-12


class ScenarioFormatError(ValueError):
    """Raised for malformed scenario documents (bad JSON shape, unknown or
    missing keys, non-numeric values)."""


class ScenarioValidationError(ValueError):
    """Raised when a structurally well-formed scenario violates model
    constraints.  ``errors`` lists every violated constraint."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = list(errors)


@dataclass(frozen=True)
class WelfareProfile:
    """Regulator welfare in each terminal outcome, one common unit.

    ``w_D``  dirty technology kept (no collusion, high transition cost).
    ``w_G``  firms go green on their own (no collusion, low cost).
    ``w_H``  collusion on the high price when the cost really is high.
    ``w_L``  collusion on the low price (low cost, firms behave).
    ``w_H_prime``  collusion on the high price although the cost is low
    (the violation outcome).

    Valid profiles satisfy the strict chain
    ``w_D < w_H < w_H_prime < w_L < w_G``.
    """

    w_D: float
    w_H: float
    w_H_prime: float
    w_L: float
    w_G: float


@dataclass(frozen=True)
class EnforcementParams:
    """Investigation cost and fine structure.

    ``g`` is the total fine levied when a violation is proven, ``d`` the
    cost of one investigation, ``n`` the number of colluding firms.  The
    per-firm fine is always the equal split ``f = g / n`` and is exposed
    as a derived property rather than a free field.
    """

    g: float
    d: float
    n: int

    @property
    def f(self) -> float:
        """Per-firm fine, ``g / n``."""
        return self.g / self.n

    @property
    def investigate_bound(self) -> float:
        """Belief bound ``(g - d) / g`` separating the investigation regimes."""
        return (self.g - self.d) / self.g


@dataclass(frozen=True)
class FirmPayoffs:
    """Per-firm payoffs in each terminal outcome (symmetric firms, one
    representative vector).  Indices mirror :class:`WelfareProfile`.

    ``v_H_prime > v_L`` is required: violating must be tempting absent
    enforcement, otherwise the game poses no inspection problem.
    """

    v_D: float
    v_G: float
    v_H: float
    v_L: float
    v_H_prime: float

    @property
    def violation_gain(self) -> float:
        """Per-firm gain from violating, ``v_H_prime - v_L``."""
        return self.v_H_prime - self.v_L


@dataclass(frozen=True)
class Belief:
    """Prior probability ``rho`` in [0, 1] that the transition cost is high."""

    rho: float


@dataclass(frozen=True)
class SocialWeights:
    """Planner weights on regulator welfare (``delta1``) and inspector
    payoff (``delta2``); they must sum to one."""

    delta1: float
    delta2: float


@dataclass(frozen=True)
class Scenario:
    """A complete, possibly not-yet-validated game instance."""

    welfare: WelfareProfile
    enforcement: EnforcementParams
    firms: FirmPayoffs
    belief: Belief
    weights: SocialWeights

    @property
    def rho(self) -> float:
        return self.belief.rho


def _is_finite_number(x: object) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def scenario_errors(s: Scenario) -> list[str]:
    """Collect every violated model constraint of ``s``.

    Returns an empty list iff the scenario is valid.  Each independent
    constraint contributes at most one message; ordering checks are
    skipped for values already reported as non-finite so a single bad
    number is not double-counted.
    """
    errors: list[str] = []
    w, e, fp = s.welfare, s.enforcement, s.firms

    welfare_fields = [
        ("w_D", w.w_D),
        ("w_H", w.w_H),
        ("w_H_prime", w.w_H_prime),
        ("w_L", w.w_L),
        ("w_G", w.w_G),
    ]
    finite_w = {name for name, v in welfare_fields if _is_finite_number(v)}
    for name, v in welfare_fields:
        if name not in finite_w:
            errors.append(f"welfare {name} is not a finite number ({v!r})")
    for lo, hi in [("w_D", "w_H"), ("w_H", "w_H_prime"), ("w_H_prime", "w_L"), ("w_L", "w_G")]:
        if lo in finite_w and hi in finite_w:
            vlo, vhi = getattr(w, lo), getattr(w, hi)
            if not vlo < vhi:
                errors.append(f"{lo} < {hi} violated ({lo}={vlo:g}, {hi}={vhi:g})")

    g_ok = _is_finite_number(e.g)
    d_ok = _is_finite_number(e.d)
    if not g_ok:
        errors.append(f"enforcement g is not a finite number ({e.g!r})")
    if not d_ok:
        errors.append(f"enforcement d is not a finite number ({e.d!r})")
    if d_ok and e.d < 0:
        errors.append(f"d >= 0 violated (d={e.d:g})")
    if g_ok and d_ok and not e.g > e.d:
        errors.append(f"g > d violated (g={e.g:g}, d={e.d:g})")
    n_ok = isinstance(e.n, int) and not isinstance(e.n, bool) and e.n >= 1
    if not n_ok:
        errors.append(f"n must be a positive integer (n={e.n!r})")

    firm_fields = [
        ("v_D", fp.v_D),
        ("v_G", fp.v_G),
        ("v_H", fp.v_H),
        ("v_L", fp.v_L),
        ("v_H_prime", fp.v_H_prime),
    ]
    finite_v = {name for name, v in firm_fields if _is_finite_number(v)}
    for name, v in firm_fields:
        if name not in finite_v:
            errors.append(f"firm payoff {name} is not a finite number ({v!r})")
    if "v_L" in finite_v and "v_H_prime" in finite_v and not fp.v_H_prime > fp.v_L:
        errors.append(
            f"v_H_prime > v_L violated (v_H_prime={fp.v_H_prime:g}, v_L={fp.v_L:g})"
        )

    rho = s.belief.rho
    if not (_is_finite_number(rho) and 0.0 <= rho <= 1.0):
        errors.append(f"rho must be in [0, 1] (rho={rho!r})")

    ws = s.weights
    d1_ok = _is_finite_number(ws.delta1) and 0.0 <= ws.delta1 <= 1.0
    d2_ok = _is_finite_number(ws.delta2) and 0.0 <= ws.delta2 <= 1.0
    if not d1_ok:
        errors.append(f"delta1 must be in [0, 1] (delta1={ws.delta1!r})")
    if not d2_ok:
        errors.append(f"delta2 must be in [0, 1] (delta2={ws.delta2!r})")
    if d1_ok and d2_ok and abs(ws.delta1 + ws.delta2 - 1.0) > WEIGHT_SUM_TOL:
        errors.append(
            f"delta1 + delta2 = 1 violated (sum={ws.delta1 + ws.delta2!r})"
        )

    # Cross-type fine bound; needs valid g/n and firm payoffs to be meaningful.
    if g_ok and n_ok and "v_L" in finite_v and "v_H_prime" in finite_v:
        f = e.g / e.n
        gain = fp.v_H_prime - fp.v_L
        if not f > gain:
            errors.append(
                f"fine below violation gain (f={f:g}, v_H_prime - v_L={gain:g})"
            )

    return errors


def validate_scenario(s: Scenario) -> Scenario:
    """Return ``s`` unchanged if every constraint holds.

    Raises :class:`ScenarioValidationError` carrying the complete list of
    violations otherwise.  Validation is idempotent: a valid scenario is
    returned as-is, so ``validate_scenario(validate_scenario(s)) is s``.
    """
    errors = scenario_errors(s)
    if errors:
        raise ScenarioValidationError(errors)
    return s


def with_parameter(s: Scenario, parameter: str, value: float) -> Scenario:
    """Copy of ``s`` with one named scalar replaced (``rho``, ``g``, ``d``,
    a welfare field or a firm-payoff field).  No validation is performed;
    run :func:`validate_scenario` on the result."""
    if parameter == "rho":
        return replace(s, belief=replace(s.belief, rho=value))
    if parameter in ("g", "d"):
        return replace(s, enforcement=replace(s.enforcement, **{parameter: value}))
    if hasattr(s.welfare, parameter):
        return replace(s, welfare=replace(s.welfare, **{parameter: value}))
    if hasattr(s.firms, parameter):
        return replace(s, firms=replace(s.firms, **{parameter: value}))
    raise ValueError(f"unknown parameter {parameter!r}")


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------

_SCHEMA: dict[str, tuple[str, ...] | None] = {
    "welfare": ("w_D", "w_H", "w_H_prime", "w_L", "w_G"),
    "enforcement": ("g", "d", "n"),
    "firms": ("v_D", "v_G", "v_H", "v_L", "v_H_prime"),
    "rho": None,  # scalar
    "weights": ("delta1", "delta2"),
}


def _require_mapping(obj: object, where: str) -> dict:
    if not isinstance(obj, dict):
        raise ScenarioFormatError(f"{where} must be a JSON object, got {type(obj).__name__}")
    return obj


def _check_keys(obj: dict, expected: tuple[str, ...], where: str) -> None:
    unknown = sorted(set(obj) - set(expected))
    missing = sorted(set(expected) - set(obj))
    if unknown:
        raise ScenarioFormatError(f"unknown key(s) in {where}: {', '.join(unknown)}")
    if missing:
        raise ScenarioFormatError(f"missing key(s) in {where}: {', '.join(missing)}")


def _number(obj: dict, key: str, where: str) -> float | int:
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ScenarioFormatError(f"{where}.{key} must be a number, got {v!r}")
    return v


def scenario_from_dict(doc: dict) -> Scenario:
    """Build a (not yet validated) :class:`Scenario` from the JSON schema.

    The schema is strict: unknown keys anywhere in the document are an
    error, so typos surface instead of silently falling back to defaults.
    """
    top = _require_mapping(doc, "scenario")
    _check_keys(top, tuple(_SCHEMA), "scenario")
    wd = _require_mapping(top["welfare"], "welfare")
    _check_keys(wd, _SCHEMA["welfare"], "welfare")
    ed = _require_mapping(top["enforcement"], "enforcement")
    _check_keys(ed, _SCHEMA["enforcement"], "enforcement")
    fd = _require_mapping(top["firms"], "firms")
    _check_keys(fd, _SCHEMA["firms"], "firms")
    gd = _require_mapping(top["weights"], "weights")
    _check_keys(gd, _SCHEMA["weights"], "weights")

    welfare = WelfareProfile(*(_number(wd, k, "welfare") for k in _SCHEMA["welfare"]))
    n = _number(ed, "n", "enforcement")
    enforcement = EnforcementParams(
        g=_number(ed, "g", "enforcement"), d=_number(ed, "d", "enforcement"), n=n
    )
    firms = FirmPayoffs(*(_number(fd, k, "firms") for k in _SCHEMA["firms"]))
    belief = Belief(rho=_number(top, "rho", "scenario"))
    weights = SocialWeights(
        delta1=_number(gd, "delta1", "weights"), delta2=_number(gd, "delta2", "weights")
    )
    return Scenario(welfare, enforcement, firms, belief, weights)


def scenario_to_dict(s: Scenario) -> dict:
    """Inverse of :func:`scenario_from_dict` (keys in schema order)."""
    return {
        "welfare": {k: getattr(s.welfare, k) for k in _SCHEMA["welfare"]},
        "enforcement": {k: getattr(s.enforcement, k) for k in _SCHEMA["enforcement"]},
        "firms": {k: getattr(s.firms, k) for k in _SCHEMA["firms"]},
        "rho": s.belief.rho,
        "weights": {k: getattr(s.weights, k) for k in _SCHEMA["weights"]},
    }


def load_scenario(path: str | Path) -> Scenario:
    """Read, schema-check and validate a scenario JSON file."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(f"invalid JSON in {path}: {exc}") from exc
    return validate_scenario(scenario_from_dict(doc))


def save_scenario(s: Scenario, path: str | Path) -> None:
    """Write a scenario back out in the schema used by :func:`load_scenario`."""
    Path(path).write_text(
        json.dumps(scenario_to_dict(s), indent=2) + "\n", encoding="utf-8"
    )
