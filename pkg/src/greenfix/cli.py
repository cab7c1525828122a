"""Command-line interface.

Subcommands: ``solve`` (classify one scenario), ``compare`` (commitment
vs. discretion), ``sweep`` (one-parameter grid, CSV), ``statics``
(finite-difference sign checks, CSV), ``verify`` (brute-force oracle and
Monte Carlo against the closed forms).

Exit codes: 0 success, 2 file/schema problems, 3 validation failures,
4 oracle disagreement in ``verify``.  All numbers are printed with 12
significant digits so outputs are byte-stable across platforms.  The
``GREENFIX_SEED`` environment variable overrides the default Monte-Carlo
seed; an explicit ``--seed`` wins over both.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import equilibrium, oracle, policy, statics
from .model import (
    Scenario,
    ScenarioFormatError,
    ScenarioValidationError,
    load_scenario,
    scenario_errors,
    with_parameter,
)

DEFAULT_SEED = 12345

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_VALIDATION = 3
EXIT_VERIFY = 4

SWEEP_PARAMETERS = ("rho", "d", "g", "w_D", "w_H", "w_H_prime", "w_L", "w_G")


def fmt(x: float) -> str:
    return f"{x:.12g}"


def _round12(obj):
    """Recursively round floats to 12 significant digits for JSON output."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _default_seed() -> int:
    return int(os.environ.get("GREENFIX_SEED", str(DEFAULT_SEED)))


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def _solve_report(s: Scenario) -> dict:
    out = equilibrium.classify_equilibrium(s)
    d = out.diagnostics
    eta_hat = equilibrium.anticipated_violation_probability(s)
    return {
        "regime": out.regime.value,
        "collusion_allowed": out.collusion_allowed,
        "eta": out.eta,
        "inspector": out.inspector.value,
        "boundary_tie": d.boundary_tie,
        "rho": s.rho,
        "rho_L": d.rho_L,
        "rho_H": d.rho_H,
        "rho_star_mixed": d.rho_star_mixed,
        "investigate_bound": d.investigate_bound,
        "incentive_ratio": d.incentive_ratio,
        "mu_star": equilibrium.inspector_mixing_probability(s.firms, s.enforcement.f),
        "e_w_collusion": equilibrium.expected_welfare_collusion(s.rho, eta_hat, s.welfare),
        "e_w_no_collusion": equilibrium.expected_welfare_no_collusion(s.rho, s.welfare),
    }


def _solve_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif value is None:
            text = "n/a"
        elif isinstance(value, float):
            text = fmt(value)
        else:
            text = str(value)
        lines.append(f"{key} = {text}")
    return "\n".join(lines) + "\n"


def _comparison_dict(c: policy.PolicyComparison) -> dict:
    return {
        "regime": c.regime.value,
        "e_pi_commitment": c.e_pi_commitment,
        "e_pi_discretion": c.e_pi_discretion,
        "preferred": c.preferred.value,
        "d_threshold": c.d_threshold,
        "margin": c.margin,
    }


def _sweep_rows(s: Scenario, parameter: str, lo: float, hi: float, steps: int) -> list[dict]:
    rows = []
    for k in range(steps):
        value = lo + k * (hi - lo) / (steps - 1)
        candidate = with_parameter(s, parameter, value)
        errors = scenario_errors(candidate)
        if errors:
            rows.append({"value": value, "skip_reason": "; ".join(errors)})
            continue
        out = equilibrium.classify_equilibrium(candidate)
        eta_hat = equilibrium.anticipated_violation_probability(candidate)
        comparison = policy.compare_policies(candidate)
        rows.append(
            {
                "value": value,
                "regime": out.regime.value,
                "eta": out.eta,
                "e_w_collusion": equilibrium.expected_welfare_collusion(
                    candidate.rho, eta_hat, candidate.welfare
                ),
                "e_w_no_collusion": equilibrium.expected_welfare_no_collusion(
                    candidate.rho, candidate.welfare
                ),
                "preferred_policy": comparison.preferred.value,
                "skip_reason": "",
            }
        )
    return rows


def _sweep_csv(rows: list[dict]) -> str:
    header = [
        "value", "regime", "eta", "e_w_collusion", "e_w_no_collusion",
        "preferred_policy", "skip_reason",
    ]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        record = []
        for key in header:
            v = row.get(key, "")
            record.append(fmt(v) if isinstance(v, float) else ("" if v is None else v))
        writer.writerow(record)
    return buf.getvalue()


def _verify_text(report: oracle.VerificationReport, seed: int) -> str:
    exp = report.expected
    lines = [
        f"expected profile: allow={'true' if exp.allow_collusion else 'false'} "
        f"eta={fmt(exp.eta)} mu={fmt(exp.mu)}",
        f"grid_n = {report.search.grid_n}",
        f"epsilon = {fmt(report.search.epsilon)}",
        f"equilibria found = {len(report.search.profiles)}",
    ]
    if report.matched is not None:
        m = report.matched
        lines.append(
            f"matched profile: allow={'true' if m.allow_collusion else 'false'} "
            f"eta={fmt(m.eta)} mu={fmt(m.mu)}"
        )
    else:
        lines.append("matched profile: none")
    mc = report.mc
    lines.append(
        f"monte carlo: n={mc.n_samples} seed={seed} rng={oracle.RNG_ALGORITHM}"
    )
    for name in ("regulator", "firm", "inspector"):
        lines.append(
            f"  {name}: exact={fmt(getattr(report.exact, name))} "
            f"mean={fmt(getattr(mc.mean, name))} "
            f"ci_half_width={fmt(getattr(mc.ci_half_width, name))}"
        )
    for issue in report.issues:
        lines.append(f"issue: {issue}")
    lines.append(f"ok = {'true' if report.ok else 'false'}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Subcommand runners
# ---------------------------------------------------------------------------

def run_solve(args: argparse.Namespace) -> int:
    s = load_scenario(args.scenario)
    report = _solve_report(s)
    if args.format == "json":
        _emit(json.dumps(_round12(report), indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit(_solve_text(_round12(report)), args.out)
    return EXIT_OK


def run_compare(args: argparse.Namespace) -> int:
    s = load_scenario(args.scenario)
    c = policy.compare_policies(s)
    doc = _round12(_comparison_dict(c))
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    text += f"preferred = {c.preferred.value} (margin = {fmt(c.margin)})\n"
    _emit(text, args.out)
    return EXIT_OK


def run_sweep(args: argparse.Namespace) -> int:
    s = load_scenario(args.scenario)
    if args.steps < 2:
        raise ScenarioFormatError(f"--steps must be at least 2 (got {args.steps})")
    if not args.from_ < args.to:
        raise ScenarioFormatError("--from must be strictly below --to")
    rows = _sweep_rows(s, args.param, args.from_, args.to, args.steps)
    if args.format == "json":
        _emit(json.dumps(_round12(rows), indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit(_sweep_csv(rows), args.out)
    return EXIT_OK


def run_statics(args: argparse.Namespace) -> int:
    s = load_scenario(args.scenario)
    reports = statics.run_claims(s)
    if args.format == "json":
        doc = [vars(r) for r in reports]
        _emit(json.dumps(_round12(doc), indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit(statics.reports_to_csv(reports), args.out)
    return EXIT_OK


def run_verify(args: argparse.Namespace) -> int:
    s = load_scenario(args.scenario)
    seed = args.seed if args.seed is not None else _default_seed()
    report = oracle.verify_against_closed_form(
        s, grid_n=args.grid_n, epsilon=args.epsilon, n_samples=args.samples, seed=seed
    )
    _emit(_verify_text(report, seed), args.out)
    return EXIT_OK if report.ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greenfix",
        description="Equilibrium engine for the collusion-exemption inspection game",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--scenario", required=True, help="scenario JSON file")
        p.add_argument("--out", help="write the report here instead of stdout")

    p_solve = sub.add_parser("solve", help="classify the equilibrium of one scenario")
    add_common(p_solve)
    p_solve.add_argument("--format", choices=("text", "json"), default="text")
    p_solve.set_defaults(func=run_solve)

    p_compare = sub.add_parser("compare", help="commitment vs. discretion comparison")
    add_common(p_compare)
    p_compare.set_defaults(func=run_compare)

    p_sweep = sub.add_parser("sweep", help="classify along a one-parameter grid")
    add_common(p_sweep)
    p_sweep.add_argument("--param", required=True, choices=SWEEP_PARAMETERS)
    p_sweep.add_argument("--from", dest="from_", type=float, required=True)
    p_sweep.add_argument("--to", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.set_defaults(func=run_sweep)

    p_statics = sub.add_parser("statics", help="finite-difference sign checks")
    add_common(p_statics)
    p_statics.add_argument("--format", choices=("csv", "json"), default="csv")
    p_statics.set_defaults(func=run_statics)

    p_verify = sub.add_parser("verify", help="brute-force oracle vs. closed forms")
    add_common(p_verify)
    p_verify.add_argument("--grid-n", type=int, default=200)
    p_verify.add_argument("--epsilon", type=float, default=None)
    p_verify.add_argument("--samples", type=int, default=100_000)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.set_defaults(func=run_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except ScenarioValidationError as exc:
        print("validation failed:", file=sys.stderr)
        for err in exc.errors:
            print(f"  - {err}", file=sys.stderr)
        return EXIT_VALIDATION


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
