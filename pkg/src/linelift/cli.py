"""Batch experiment runner.

Configs are flat "key = value" text files (# comments allowed).  Reports are
canonical JSON documents (sorted keys, no timing) so a fixed seed reproduces
byte-identical output; suite runs add a CSV summary with wall times.

Command verbs: check, solve, classify, lift, hamiltonian, rationalize, suite.
Exit codes: 0 pass, 1 verdict failure, 2 usage/config error, 3 numerical
accuracy failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .bundle import apply_gauge, get_bundle, shift_connection
from .cartan import EquivariantTwoForm, check_integrality, check_moment_equation
from .errors import AccuracyError, CertificateError, ConfigError, IntegralityError
from .families import (
    ScenarioSample,
    random_closed_one_form,
    random_gauge,
    random_lattice_vector,
    random_point,
    random_valid_pair,
    standard_pair,
)
from .geometry.calculus import (
    doubling_residual_line,
    doubling_residual_surface,
    integrate_one_form,
)
from .geometry.paths import orbit_loop, sphere_latitude_loop
from .geometry.scenarios import CATALOG, ManifoldScenario, get_scenario, sphere_area_form
from .lifting import (
    LiftedAction,
    TotalPoint,
    classify_lifts,
    exponentiate_lift,
    hamiltonian_power_lift,
    orbit_class_map,
    rationalize_class,
    solve_lifting_shift,
)
from .reports import CheckResult, render_json
from .transport import MomentMapData, monodromy_formula, monodromy_ode
from .validation import (
    check_analytic_derivative,
    check_cocycle,
    check_connection_compatibility,
    check_gauge_consistency,
    scenario_invariant_checks,
)

PIPELINES = ("check", "solve", "classify", "lift", "hamiltonian", "rationalize")

DEFAULT_CHECKS = (
    "invariants",
    "moment",
    "integrality",
    "oracle",
    "gauge",
    "shift",
    "additivity",
    "constancy",
    "homologous",
    "hygiene",
)

EXIT_PASS = 0
EXIT_VERDICT = 1
EXIT_CONFIG = 2
EXIT_ACCURACY = 3


# ---------------------------------------------------------------------------
# Config
# ---------------------------------------------------------------------------

@dataclass
class ExperimentConfig:
    pipeline: str
    scenario: str
    degree: int = 0
    flat_a: float = 0.0
    flat_b: float = 0.0
    mu_offsets: tuple[float, ...] = ()
    seed: int = 0
    tol: float = 1e-6
    tol_phase: float = 1e-8
    samples: int = 12
    base_points: int = 20
    d: int = 1
    epsilon: float = 1e-2
    omega_scale: float = 1.0
    line_steps: int = 256
    ode_steps: int = 2048
    surface_grid: int = 128
    average_grid: int = 32
    checks: tuple[str, ...] = DEFAULT_CHECKS
    name: str = "experiment"

    @staticmethod
    def from_mapping(raw: dict, name: str = "experiment") -> "ExperimentConfig":
        known = {
            "pipeline": str,
            "scenario": str,
            "degree": int,
            "flat_a": float,
            "flat_b": float,
            "mu_offsets": "floats",
            "seed": int,
            "tol": float,
            "tol_phase": float,
            "samples": int,
            "base_points": int,
            "d": int,
            "epsilon": float,
            "omega_scale": "scale",
            "line_steps": int,
            "ode_steps": int,
            "surface_grid": int,
            "average_grid": int,
            "checks": "strs",
        }
        values: dict = {"name": name}
        for key, val in raw.items():
            if key not in known:
                raise ConfigError(f"unknown config key {key!r}")
            kind = known[key]
            try:
                if kind == "floats":
                    values[key] = tuple(float(v) for v in str(val).split(",") if str(v).strip())
                elif kind == "strs":
                    values[key] = tuple(v.strip() for v in str(val).split(",") if v.strip())
                elif kind == "scale":
                    values[key] = float(np.sqrt(2.0)) if str(val).strip() == "sqrt2" else float(val)
                else:
                    values[key] = kind(val)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad value for {key!r}: {val!r} ({exc})") from exc
        if "pipeline" not in values or "scenario" not in values:
            raise ConfigError("config requires at least 'pipeline' and 'scenario'")
        cfg = ExperimentConfig(**values)
        if cfg.pipeline not in PIPELINES:
            raise ConfigError(f"unknown pipeline {cfg.pipeline!r}; options: {', '.join(PIPELINES)}")
        if cfg.scenario not in CATALOG:
            raise ConfigError(f"unknown scenario {cfg.scenario!r}; catalog: {', '.join(CATALOG)}")
        for tolname in ("tol", "tol_phase", "epsilon"):
            if getattr(cfg, tolname) <= 0:
                raise ConfigError(f"{tolname} must be positive")
        for check in cfg.checks:
            if check not in DEFAULT_CHECKS:
                raise ConfigError(f"unknown check {check!r}")
        return cfg

    def to_dict(self) -> dict:
        return {
            "pipeline": self.pipeline,
            "scenario": self.scenario,
            "degree": self.degree,
            "flat_a": self.flat_a,
            "flat_b": self.flat_b,
            "mu_offsets": list(self.mu_offsets),
            "seed": self.seed,
            "tol": self.tol,
            "tol_phase": self.tol_phase,
            "samples": self.samples,
            "base_points": self.base_points,
            "d": self.d,
            "epsilon": self.epsilon,
            "omega_scale": self.omega_scale,
            "line_steps": self.line_steps,
            "ode_steps": self.ode_steps,
            "surface_grid": self.surface_grid,
            "average_grid": self.average_grid,
            "checks": list(self.checks),
            "name": self.name,
        }


def parse_config_file(path: Path) -> dict:
    raw: dict = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, val = stripped.split("=", 1)
        raw[key.strip()] = val.strip()
    return raw


def load_config(path: Path, overrides: Optional[dict] = None) -> ExperimentConfig:
    raw = parse_config_file(path)
    if overrides:
        raw.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig.from_mapping(raw, name=path.stem)


def _scenario(cfg: ExperimentConfig) -> ManifoldScenario:
    return get_scenario(
        cfg.scenario,
        {
            "line_steps": cfg.line_steps,
            "ode_steps": cfg.ode_steps,
            "surface_grid": cfg.surface_grid,
            "average_grid": cfg.average_grid,
        },
    )


def _configured_pair(cfg: ExperimentConfig, scenario: ManifoldScenario) -> ScenarioSample:
    return standard_pair(
        scenario,
        degree=cfg.degree,
        flat=(cfg.flat_a, cfg.flat_b),
        mu_offsets=cfg.mu_offsets,
    )


# ---------------------------------------------------------------------------
# Check pipeline
# ---------------------------------------------------------------------------

def _phase_table(results) -> list[dict]:
    return [
        {
            "gamma": list(r.gamma),
            "x": list(r.x),
            "method": r.method,
            "phase": {"re": r.phase.real, "im": r.phase.imag},
        }
        for r in results
    ]


def run_check(cfg: ExperimentConfig) -> dict:
    scenario = _scenario(cfg)
    rng = np.random.default_rng(cfg.seed)
    pair = _configured_pair(cfg, scenario)
    checks: list[CheckResult] = []
    table: list = []

    if "invariants" in cfg.checks:
        checks.extend(scenario_invariant_checks(scenario))
        checks.append(check_cocycle(pair.conn.bundle))
        checks.append(check_connection_compatibility(pair.conn))
        checks.append(check_gauge_consistency(scenario, random_gauge(scenario, rng)))
    eq2 = EquivariantTwoForm.from_connection(pair.conn, pair.mu)
    if "moment" in cfg.checks:
        checks.append(check_moment_equation(eq2, tol=cfg.tol))
        checks.append(
            CheckResult.from_residual(
                "mu-orbit-invariance", pair.mu.invariance_residual(scenario), 1e-7
            )
        )
    if "integrality" in cfg.checks:
        integ = check_integrality(eq2, pair.conn.bundle, tol=cfg.tol)
        checks.append(
            CheckResult.from_residual(
                "integrality-certificate",
                max(integ.period_residual, integ.mu_residual),
                cfg.tol,
                offenders=list(integ.offenders),
                note=integ.note,
            )
        )
    if "oracle" in cfg.checks:
        worst = 0.0
        for _ in range(cfg.samples):
            sample = random_valid_pair(scenario, rng)
            x = random_point(scenario, rng)
            gamma = random_lattice_vector(scenario, rng)
            f = monodromy_formula(sample.conn, sample.mu, scenario.action, gamma, x)
            o = monodromy_ode(sample.conn, sample.mu, scenario.action, gamma, x)
            table.extend([f, o])
            worst = max(worst, abs(f.phase - o.phase))
        checks.append(CheckResult.from_residual("monodromy-oracle-agreement", worst, cfg.tol))
    if "gauge" in cfg.checks:
        worst = 0.0
        x = random_point(scenario, rng)
        gamma = random_lattice_vector(scenario, rng, max_coeff=1)
        base = monodromy_formula(pair.conn, pair.mu, scenario.action, gamma, x)
        for _ in range(cfg.samples):
            g = random_gauge(scenario, rng)
            gauged = monodromy_formula(apply_gauge(pair.conn, g), pair.mu, scenario.action, gamma, x)
            worst = max(worst, abs(gauged.phase - base.phase))
        checks.append(CheckResult.from_residual("gauge-invariance", worst, cfg.tol_phase))
    if "shift" in cfg.checks:
        worst = 0.0
        x = random_point(scenario, rng)
        gamma = random_lattice_vector(scenario, rng, max_coeff=1)
        loop = orbit_loop(scenario.atlas, scenario.action, gamma, x)
        base = monodromy_formula(pair.conn, pair.mu, scenario.action, gamma, x)
        for _ in range(cfg.samples):
            eta = random_closed_one_form(scenario, rng)
            shifted = monodromy_formula(
                shift_connection(pair.conn, eta), pair.mu, scenario.action, gamma, x
            )
            predicted = base.phase * np.exp(-integrate_one_form(eta, loop, scenario.line_steps))
            worst = max(worst, abs(shifted.phase - predicted))
        checks.append(CheckResult.from_residual("shift-law", worst, cfg.tol_phase))
    if "additivity" in cfg.checks:
        worst = 0.0
        for _ in range(max(4, cfg.samples // 2)):
            sample = random_valid_pair(scenario, rng)
            x = random_point(scenario, rng)
            g1 = random_lattice_vector(scenario, rng)
            g2 = random_lattice_vector(scenario, rng)
            m1 = monodromy_formula(sample.conn, sample.mu, scenario.action, g1, x)
            m2 = monodromy_formula(sample.conn, sample.mu, scenario.action, g2, x)
            m12 = monodromy_formula(sample.conn, sample.mu, scenario.action, g1 + g2, x)
            worst = max(worst, abs(m12.phase - m1.phase * m2.phase))
        checks.append(CheckResult.from_residual("monodromy-additivity", worst, 1e-7))
    if "constancy" in cfg.checks:
        phases = []
        gamma = np.ones(scenario.action.rank)
        for _ in range(cfg.base_points):
            x = random_point(scenario, rng)
            phases.append(monodromy_formula(pair.conn, pair.mu, scenario.action, gamma, x).phase)
        worst = max(
            (abs(p - q) for i, p in enumerate(phases) for q in phases[i + 1:]), default=0.0
        )
        checks.append(CheckResult.from_residual("monodromy-constancy", worst, cfg.tol))
    if "homologous" in cfg.checks and not scenario.is_torus():
        integral_pair = standard_pair(scenario, degree=cfg.degree, mu_offsets=(float(round(cfg.mu_offsets[0])) if cfg.mu_offsets else 0.0,))
        worst = 0.0
        for theta in np.linspace(0.2, np.pi - 0.2, cfg.base_points):
            x = np.array([np.sin(theta), 0.0, np.cos(theta)])
            m = monodromy_formula(integral_pair.conn, integral_pair.mu, scenario.action, np.array([1.0]), x)
            worst = max(worst, abs(m.phase - 1.0))
        checks.append(CheckResult.from_residual("homologous-to-zero", worst, cfg.tol))
    if "hygiene" in cfg.checks:
        checks.append(check_analytic_derivative(scenario, pair.conn.a))
        for beta in scenario.h1_basis:
            checks.append(check_analytic_derivative(scenario, beta))
        x = random_point(scenario, rng)
        gamma = np.ones(scenario.action.rank)
        loop = orbit_loop(scenario.atlas, scenario.action, gamma, x)
        line_resid = doubling_residual_line(pair.conn.a, loop, scenario.line_steps)
        checks.append(CheckResult.from_residual("line-quadrature-doubling", line_resid, 1e-7))
        surf_resid = doubling_residual_surface(eq2.alpha, scenario.fundamental_cycle, scenario.surface_grid)
        checks.append(CheckResult.from_residual("surface-quadrature-doubling", surf_resid, 1e-7))

    verdict = all(c.passed for c in checks)
    return {
        "config": cfg.to_dict(),
        "pipeline": "check",
        "checks": [c.to_dict() for c in checks],
        "monodromy_table": _phase_table(table),
        "verdict": "pass" if verdict else "fail",
    }


# ---------------------------------------------------------------------------
# Other pipelines
# ---------------------------------------------------------------------------

def run_solve(cfg: ExperimentConfig) -> dict:
    scenario = _scenario(cfg)
    pair = _configured_pair(cfg, scenario)
    doc: dict = {"config": cfg.to_dict(), "pipeline": "solve"}
    try:
        torus = solve_lifting_shift(pair.conn, pair.mu, tol=cfg.tol)
    except (IntegralityError, CertificateError) as exc:
        doc["error"] = str(exc)
        doc["verdict"] = "fail"
        return doc
    doc["solution"] = torus.to_dict()
    doc["checks"] = [
        CheckResult.from_residual("solved-monodromy", torus.residuals["solved_generators"], cfg.tol).to_dict(),
        CheckResult.from_residual("kernel-monodromy", torus.residuals["kernel_generators"], cfg.tol).to_dict(),
    ]
    doc["verdict"] = "pass"
    return doc


def run_classify(cfg: ExperimentConfig) -> dict:
    scenario = _scenario(cfg)
    pair = _configured_pair(cfg, scenario)
    eq2 = EquivariantTwoForm.from_connection(pair.conn, pair.mu)
    report = classify_lifts(scenario, pair.conn.bundle, eq2, conn=pair.conn, tol=cfg.tol)
    return {
        "config": cfg.to_dict(),
        "pipeline": "classify",
        "classification": report.to_dict(),
        "verdict": "pass" if report.exists else "fail",
    }


def run_lift(cfg: ExperimentConfig) -> dict:
    scenario = _scenario(cfg)
    rng = np.random.default_rng(cfg.seed)
    pair = _configured_pair(cfg, scenario)
    eq2 = EquivariantTwoForm.from_connection(pair.conn, pair.mu)
    integ = check_integrality(eq2, pair.conn.bundle, tol=cfg.tol)
    checks = []
    if integ.passed:
        torus = solve_lifting_shift(pair.conn, pair.mu, tol=cfg.tol)
        conn = torus.member()
        worst = 0.0
        for j in range(scenario.action.rank):
            y = TotalPoint(random_point(scenario, rng), 1.0 + 0.0j)
            out = exponentiate_lift(conn, pair.mu, np.eye(scenario.action.rank)[j], y)
            worst = max(worst, abs(out.fiber - y.fiber))
        checks.append(CheckResult.from_residual("lattice-periodicity", worst, cfg.tol))
    else:
        conn = pair.conn
        worst = 0.0
        for j in range(scenario.action.rank):
            y = TotalPoint(random_point(scenario, rng), 1.0 + 0.0j)
            out = exponentiate_lift(conn, pair.mu, np.eye(scenario.action.rank)[j], y)
            predicted = monodromy_formula(
                conn, pair.mu, scenario.action, np.eye(scenario.action.rank)[j], y.point
            ).phase
            worst = max(worst, abs(out.fiber - predicted))
        checks.append(
            CheckResult.from_residual(
                "predicted-periodicity-failure", worst, cfg.tol, note="non-integral input"
            )
        )
    worst = 0.0
    for _ in range(cfg.samples):
        y = TotalPoint(random_point(scenario, rng), 1.0 + 0.0j)
        s1 = rng.uniform(-1.2, 1.2, size=scenario.action.rank)
        s2 = rng.uniform(-1.2, 1.2, size=scenario.action.rank)
        one = exponentiate_lift(conn, pair.mu, s2, exponentiate_lift(conn, pair.mu, s1, y))
        two = exponentiate_lift(conn, pair.mu, s1 + s2, y)
        worst = max(worst, abs(one.fiber - two.fiber) + float(np.max(np.abs(one.point - two.point))))
    checks.append(CheckResult.from_residual("group-law", worst, cfg.tol))
    verdict = all(c.passed for c in checks)
    return {
        "config": cfg.to_dict(),
        "pipeline": "lift",
        "checks": [c.to_dict() for c in checks],
        "integrality": integ.to_dict(),
        "verdict": "pass" if verdict else "fail",
    }


def run_hamiltonian(cfg: ExperimentConfig) -> dict:
    scenario = _scenario(cfg)
    bundle = get_bundle(scenario, cfg.degree)
    pair = _configured_pair(cfg, scenario)
    report = hamiltonian_power_lift(scenario, bundle, pair.conn, cfg.d, n_grid=cfg.average_grid)
    expected = abs(cfg.d * cfg.degree)
    checks = [
        CheckResult.from_residual(
            "pole-weight-difference", abs(report.weight_difference - expected), cfg.tol,
            expected=expected,
        ),
        CheckResult.from_residual("averaging-idempotent", report.averaging_residual, cfg.tol),
        CheckResult.from_residual("connection-invariance", report.invariance_residual, cfg.tol),
        CheckResult.from_residual("orbit-rank-zero", float(report.rank), 0.5),
    ]
    verdict = all(c.passed for c in checks)
    return {
        "config": cfg.to_dict(),
        "pipeline": "hamiltonian",
        "hamiltonian": report.to_dict(),
        "checks": [c.to_dict() for c in checks],
        "verdict": "pass" if verdict else "fail",
    }


def run_rationalize(cfg: ExperimentConfig) -> dict:
    scenario = _scenario(cfg)
    if scenario.is_torus():
        base = None
        from .geometry.forms import TwoForm

        base = TwoForm(lambda chart, c: np.ones(np.shape(c[0]), dtype=complex), "real")
    else:
        base = sphere_area_form()
    omega = float(cfg.omega_scale) * base

    def mu_comp(pts):
        return float(cfg.omega_scale) * 2.0 * np.pi * pts[-1]

    mu = MomentMapData(scenario.action, (mu_comp,) * scenario.action.rank, {"kind": "classical"})
    result = rationalize_class(scenario, omega, mu, cfg.epsilon)
    checks = [
        CheckResult.from_residual(
            "c0-distance", result.sup_change, cfg.epsilon, note="relative to catalog area form"
        ),
    ]
    if result.ok:
        from .geometry.calculus import integrate_two_form

        measured = integrate_two_form(result.omega, scenario.fundamental_cycle).real / (2.0 * np.pi)
        resid = abs(measured * result.k - round(measured * result.k))
        exact = result.k * result.period_over_2pi
        checks.append(
            CheckResult.from_residual(
                "k-period-integral", resid, 1e-9,
                exact_value=[exact.numerator, exact.denominator],
                exact_integral=exact.denominator == 1,
            )
        )
    else:
        checks.append(CheckResult.from_residual("k-period-integral", 1.0, 1e-9, note="rationalization failed"))
    verdict = all(c.passed for c in checks) and result.ok
    return {
        "config": cfg.to_dict(),
        "pipeline": "rationalize",
        "rationalize": result.to_dict(),
        "checks": [c.to_dict() for c in checks],
        "verdict": "pass" if verdict else "fail",
    }


RUNNERS = {
    "check": run_check,
    "solve": run_solve,
    "classify": run_classify,
    "lift": run_lift,
    "hamiltonian": run_hamiltonian,
    "rationalize": run_rationalize,
}


def run_experiment(cfg: ExperimentConfig) -> tuple[dict, int]:
    try:
        doc = RUNNERS[cfg.pipeline](cfg)
    except AccuracyError as exc:
        return (
            {"config": cfg.to_dict(), "pipeline": cfg.pipeline, "error": str(exc), "verdict": "accuracy-failure"},
            EXIT_ACCURACY,
        )
    except IntegralityError as exc:
        return (
            {"config": cfg.to_dict(), "pipeline": cfg.pipeline, "error": str(exc), "verdict": "fail"},
            EXIT_VERDICT,
        )
    return doc, EXIT_PASS if doc.get("verdict") == "pass" else EXIT_VERDICT


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------

def _write_report(doc: dict, out_dir: Optional[Path], name: str) -> None:
    text = render_json(doc)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / f"{name}.json").write_text(text)
    else:
        sys.stdout.write(text)


def _single_command(args: argparse.Namespace, pipeline: str) -> int:
    overrides = {"pipeline": pipeline}
    if args.seed is not None:
        overrides["seed"] = str(args.seed)
    if args.tol is not None:
        overrides["tol"] = str(args.tol)
    if args.steps is not None:
        overrides["ode_steps"] = str(args.steps)
    try:
        cfg = load_config(Path(args.config), overrides)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    doc, code = run_experiment(cfg)
    _write_report(doc, Path(args.out) if args.out else None, cfg.name)
    return code


def run_suite(directory: Path, out_dir: Path) -> int:
    """Run every *.cfg in the directory (sorted); continue past failures."""
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    worst_code = EXIT_PASS
    for path in sorted(directory.glob("*.cfg")):
        started = time.perf_counter()
        try:
            cfg = load_config(path)
            doc, code = run_experiment(cfg)
            _write_report(doc, out_dir, cfg.name)
            residuals = [c["residual"] for c in doc.get("checks", [])]
            rows.append(
                {
                    "name": cfg.name,
                    "pipeline": cfg.pipeline,
                    "scenario": cfg.scenario,
                    "verdict": doc.get("verdict", "error"),
                    "max_residual": max(residuals) if residuals else "",
                    "wall_time_s": f"{time.perf_counter() - started:.3f}",
                }
            )
        except (ConfigError, OSError) as exc:
            code = EXIT_CONFIG
            rows.append(
                {
                    "name": path.stem,
                    "pipeline": "",
                    "scenario": "",
                    "verdict": f"error: {exc}",
                    "max_residual": "",
                    "wall_time_s": f"{time.perf_counter() - started:.3f}",
                }
            )
        worst_code = max(worst_code, code)
    summary = out_dir / "summary.csv"
    with summary.open("w", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["name", "pipeline", "scenario", "verdict", "max_residual", "wall_time_s"]
        )
        writer.writeheader()
        writer.writerows(rows)
    for row in rows:
        print(f"{row['name']:32s} {row['pipeline']:12s} {row['verdict']}")
    return worst_code


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="linelift", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for verb in PIPELINES:
        p = sub.add_parser(verb, help=f"run the {verb} pipeline from a config file")
        p.add_argument("--config", required=True, help="path to a key = value config file")
        p.add_argument("--out", default=None, help="directory for the JSON report (default: stdout)")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--tol", type=float, default=None, help="override the main tolerance")
        p.add_argument("--steps", type=int, default=None, help="override the integrator step count")
    p = sub.add_parser("suite", help="run every *.cfg in a directory")
    p.add_argument("directory", help="directory of config files")
    p.add_argument("--out", default="out", help="output directory (reports + summary.csv)")
    args = parser.parse_args(argv)
    if args.command == "suite":
        try:
            return run_suite(Path(args.directory), Path(args.out))
        except OSError as exc:
            print(f"suite error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    return _single_command(args, args.command)


if __name__ == "__main__":
    sys.exit(main())
