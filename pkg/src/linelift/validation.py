"""Sample-based invariant checks for scenarios, bundles, connections, gauges,
and forms.  Each check returns a CheckResult whose residual/tolerance pair is
what reports print; the pytest suite asserts on the same objects the CLI
serializes.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .bundle import ConnectionData, GaugeTransform, LineBundleData
from .geometry.calculus import integrate_one_form, pair_h1
from .geometry.charts import Chart, project_to_chart, push_to_ambient
from .geometry.forms import OneForm, exterior_derivative_fd
from .geometry.scenarios import ManifoldScenario
from .reports import CheckResult

Array = np.ndarray

FD_STEP = 1e-6


def _overlap_samples(scenario: ManifoldScenario, charts: Iterable[Chart], min_margin: float = 0.05):
    pts = scenario.sample_points
    mask = np.ones(pts.shape[-1], dtype=bool)
    for c in charts:
        mask &= np.asarray(c.margin(pts) > min_margin)
    return pts[:, mask]


def _global_distance(scenario: ManifoldScenario, a: Array, b: Array) -> Array:
    d = np.abs(a - b)
    if scenario.is_torus():
        d = np.minimum(d, 1.0 - d)
    return d


# ---------------------------------------------------------------------------
# Scenario invariants
# ---------------------------------------------------------------------------

def check_transitions_inverse(scenario: ManifoldScenario, tol: float = 1e-10) -> CheckResult:
    """to_j(from_i(.)) followed by to_i(from_j(.)) returns the input coordinates."""
    worst = 0.0
    charts = scenario.atlas.charts
    for i, ci in enumerate(charts):
        for cj in charts[i + 1:]:
            pts = _overlap_samples(scenario, (ci, cj))
            if pts.size == 0:
                continue
            coords_i = ci.to_coords(pts)
            roundtrip = ci.to_coords(cj.from_coords(cj.to_coords(ci.from_coords(coords_i))))
            worst = max(worst, float(np.max(np.abs(roundtrip - coords_i))))
    return CheckResult.from_residual("transitions-mutually-inverse", worst, tol)


def check_h1_closed(scenario: ManifoldScenario, tol: float = 1e-6) -> CheckResult:
    worst = 0.0
    for beta in scenario.h1_basis:
        for chart in scenario.atlas:
            pts = _overlap_samples(scenario, (chart,))
            if pts.size == 0:
                continue
            coords = chart.to_coords(pts)
            worst = max(worst, float(np.max(np.abs(exterior_derivative_fd(beta, chart.name, coords)))))
    return CheckResult.from_residual("h1-basis-closed", worst, tol)


def check_h1_pairing(scenario: ManifoldScenario, tol: float = 1e-8) -> CheckResult:
    b1 = scenario.betti1
    if b1 == 0:
        return CheckResult.from_residual("h1-pairing-identity", 0.0, tol, note="b1 = 0")
    mat = np.array([pair_h1(scenario, loop) for loop in scenario.h1_dual_cycles])
    worst = float(np.max(np.abs(mat - np.eye(b1))))
    return CheckResult.from_residual("h1-pairing-identity", worst, tol, matrix=mat.tolist())


def check_action_periodicity(scenario: ManifoldScenario, tol: float = 1e-8) -> CheckResult:
    """Time-1 flow of every integer lattice generator is the identity."""
    action = scenario.action
    pts = scenario.sample_points
    worst = 0.0
    for j in range(action.rank):
        moved = action.flow(np.eye(action.rank)[j], 1.0, pts)
        worst = max(worst, float(np.max(_global_distance(scenario, moved, pts))))
    return CheckResult.from_residual("lattice-period-one", worst, tol)


def check_action_commutes(scenario: ManifoldScenario, tol: float = 1e-8) -> CheckResult:
    action = scenario.action
    if action.rank < 2:
        return CheckResult.from_residual("flows-commute", 0.0, tol, note="rank 1")
    pts = scenario.sample_points
    worst = 0.0
    for i in range(action.rank):
        for j in range(i + 1, action.rank):
            si, sj = np.eye(action.rank)[i], np.eye(action.rank)[j]
            for t1, t2 in ((0.3, 0.6), (0.45, 0.2)):
                a = action.flow(si, t1, action.flow(sj, t2, pts))
                b = action.flow(sj, t2, action.flow(si, t1, pts))
                worst = max(worst, float(np.max(_global_distance(scenario, a, b))))
    return CheckResult.from_residual("flows-commute", worst, tol)


def check_flow_consistency(scenario: ManifoldScenario, tol: float = 1e-8) -> CheckResult:
    action = scenario.action
    pts = scenario.sample_points
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(4):
        s = rng.uniform(-1.2, 1.2, size=action.rank)
        t1, t2 = rng.uniform(0.05, 0.9, size=2)
        a = action.flow(s, t1 + t2, pts)
        b = action.flow(s, t1, action.flow(s, t2, pts))
        worst = max(worst, float(np.max(_global_distance(scenario, a, b))))
    return CheckResult.from_residual("flow-consistency", worst, tol)


def check_generating_field_linearity(scenario: ManifoldScenario, tol: float = 1e-8) -> CheckResult:
    action = scenario.action
    pts = scenario.sample_points
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(4):
        s1 = rng.uniform(-1.0, 1.0, size=action.rank)
        s2 = rng.uniform(-1.0, 1.0, size=action.rank)
        a, b = rng.uniform(-2.0, 2.0, size=2)
        combo = action.ambient_field(a * s1 + b * s2, pts)
        parts = a * action.ambient_field(s1, pts) + b * action.ambient_field(s2, pts)
        worst = max(worst, float(np.max(np.abs(combo - parts))))
    return CheckResult.from_residual("generating-field-linear", worst, tol)


def check_fixed_points(scenario: ManifoldScenario, tol: float = 1e-12) -> CheckResult:
    """The generating field vanishes at declared fixed points; for actions with
    isolated fixed points it is bounded away from zero at the sample points."""
    action = scenario.action
    worst = 0.0
    for p in action.fixed_point_arrays():
        for j in range(action.rank):
            v = action.ambient_field(np.eye(action.rank)[j], p)
            worst = max(worst, float(np.max(np.abs(v))))
    detail = {}
    if action.isolated_fixed and action.fixed_points:
        pts = scenario.sample_points
        mags = []
        for j in range(action.rank):
            mags.append(np.linalg.norm(action.ambient_field(np.eye(action.rank)[j], pts), axis=0))
        min_away = float(np.min(np.max(np.array(mags), axis=0)))
        detail["min_field_away_from_fixed"] = min_away
        if min_away < 1e-3:
            worst = max(worst, 1.0)  # a declared-isolated action vanished elsewhere
    return CheckResult.from_residual("fixed-point-field", worst, tol, **detail)


def check_exact_loop_integrals(scenario: ManifoldScenario, tol: float = 1e-7) -> CheckResult:
    """Closed-loop integrals of an exact analytic one-form vanish."""
    if scenario.is_torus():
        def coeff(chart, c):
            f = 2.0 * np.pi * np.cos(2.0 * np.pi * c[0]) * np.cos(2.0 * np.pi * c[1])
            g = -2.0 * np.pi * np.sin(2.0 * np.pi * c[0]) * np.sin(2.0 * np.pi * c[1])
            return np.stack([f + 0j, g + 0j], axis=0)

        loops = list(scenario.h1_dual_cycles)
    else:
        def coeff(chart, c):
            # d(p_z) in each chart
            if chart in ("north", "south"):
                sign = 1.0 if chart == "north" else -1.0
                x, y = c[0], c[1]
                d = (1.0 + x ** 2 + y ** 2) ** 2
                return np.stack([sign * -4.0 * x / d + 0j, sign * -4.0 * y / d + 0j], axis=0)
            return np.stack([-np.sin(c[0]) + 0j, np.zeros(np.shape(c[0]), complex)], axis=0)

        from .geometry.paths import sphere_latitude_loop, sphere_meridian_loop

        loops = [
            sphere_latitude_loop(scenario.atlas, 1.1),
            sphere_meridian_loop(scenario.atlas, 0.7),
        ]
    form = OneForm(coeff, None, "real")
    worst = max(abs(integrate_one_form(form, loop)) for loop in loops)
    return CheckResult.from_residual("exact-form-loop-integral", float(worst), tol)


def scenario_invariant_checks(scenario: ManifoldScenario) -> list[CheckResult]:
    return [
        check_transitions_inverse(scenario),
        check_h1_closed(scenario),
        check_h1_pairing(scenario),
        check_action_periodicity(scenario),
        check_action_commutes(scenario),
        check_flow_consistency(scenario),
        check_generating_field_linearity(scenario),
        check_fixed_points(scenario),
        check_exact_loop_integrals(scenario),
    ]


# ---------------------------------------------------------------------------
# Bundle / connection / gauge invariants
# ---------------------------------------------------------------------------

def check_cocycle(bundle: LineBundleData, tol: float = 1e-10) -> CheckResult:
    """g_ij g_jk g_ki = 1 on triple overlaps and |g| = 1 everywhere sampled."""
    scenario = bundle.scenario
    charts = scenario.atlas.charts
    worst = 0.0
    for i, ci in enumerate(charts):
        for j, cj in enumerate(charts):
            if j <= i:
                continue
            pts = _overlap_samples(scenario, (ci, cj))
            if pts.size:
                g = bundle.transition(ci.name, cj.name, pts)
                worst = max(worst, float(np.max(np.abs(np.abs(g) - 1.0))))
            for ck in charts[j + 1:]:
                pts3 = _overlap_samples(scenario, (ci, cj, ck))
                if pts3.size == 0:
                    continue
                prod = (
                    bundle.transition(ci.name, cj.name, pts3)
                    * bundle.transition(cj.name, ck.name, pts3)
                    * bundle.transition(ck.name, ci.name, pts3)
                )
                worst = max(worst, float(np.max(np.abs(prod - 1.0))))
    return CheckResult.from_residual("cocycle-identity", worst, tol)


def check_connection_compatibility(conn: ConnectionData, tol: float = 1e-8) -> CheckResult:
    """A_j - A_i = T^{-1} dT on overlaps, with T the fiber transition into chart i.

    Both sides are evaluated on the chart-i coordinate basis; dT is a central
    difference of the transition values (branch-free since T is evaluated, not
    its angle).
    """
    scenario = conn.scenario
    bundle = conn.bundle
    charts = scenario.atlas.charts
    worst = 0.0
    for i, ci in enumerate(charts):
        for cj in charts[i + 1:]:
            pts = _overlap_samples(scenario, (ci, cj))
            if pts.size == 0:
                continue
            coords_i = ci.to_coords(pts)
            coords_j = cj.to_coords(pts)
            a_i = conn.a(ci.name, coords_i)
            a_j = conn.a(cj.name, coords_j)
            for axis in range(2):
                up = coords_i.copy()
                dn = coords_i.copy()
                up[axis] += FD_STEP
                dn[axis] -= FD_STEP
                # chart-i basis direction pushed into chart j components
                v_amb = (
                    push_to_ambient(ci, coords_i, np.eye(2)[:, axis, None] * np.ones_like(coords_i))
                )
                v_j = project_to_chart(cj, coords_j, v_amb)
                lhs = np.sum(a_j * v_j, axis=0) - a_i[axis]
                t_up = bundle.transition(cj.name, ci.name, ci.from_coords(up))
                t_dn = bundle.transition(cj.name, ci.name, ci.from_coords(dn))
                t_mid = bundle.transition(cj.name, ci.name, pts)
                # T carries lambda_j -> lambda_i and A_j = A_i + T^{-1} dT
                dt = (t_up - t_dn) / (2.0 * FD_STEP)
                rhs = np.conj(t_mid) * dt
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return CheckResult.from_residual("connection-compatibility", worst, tol)


def check_one_form_overlap(scenario: ManifoldScenario, form: OneForm, tol: float = 1e-8) -> CheckResult:
    """Chart coefficients agree under pullback on overlaps."""
    charts = scenario.atlas.charts
    worst = 0.0
    for i, ci in enumerate(charts):
        for cj in charts[i + 1:]:
            pts = _overlap_samples(scenario, (ci, cj))
            if pts.size == 0:
                continue
            coords_i = ci.to_coords(pts)
            coords_j = cj.to_coords(pts)
            w_i = form(ci.name, coords_i)
            w_j = form(cj.name, coords_j)
            for axis in range(2):
                v_amb = push_to_ambient(ci, coords_i, np.eye(2)[:, axis, None] * np.ones_like(coords_i))
                v_j = project_to_chart(cj, coords_j, v_amb)
                worst = max(worst, float(np.max(np.abs(np.sum(w_j * v_j, axis=0) - w_i[axis]))))
    return CheckResult.from_residual("one-form-overlap", worst, tol)


def check_analytic_derivative(scenario: ManifoldScenario, form: OneForm, tol: float = 1e-5) -> CheckResult:
    """Analytic exterior derivative against central finite differences."""
    if form.d_coeff is None:
        return CheckResult.from_residual("analytic-vs-fd-derivative", 0.0, tol, note="no analytic d")
    worst = 0.0
    for chart in scenario.atlas:
        pts = _overlap_samples(scenario, (chart,))
        if pts.size == 0:
            continue
        coords = chart.to_coords(pts)
        fd = exterior_derivative_fd(form, chart.name, coords)
        an = np.asarray(form.d_coeff(chart.name, coords), dtype=complex)
        worst = max(worst, float(np.max(np.abs(fd - an))))
    return CheckResult.from_residual("analytic-vs-fd-derivative", worst, tol)


def check_gauge_consistency(scenario: ManifoldScenario, gauge: GaugeTransform, tol: float = 1e-10) -> CheckResult:
    """|g| = 1 and the declared log-derivative matches differences of values."""
    pts = scenario.sample_points
    vals = gauge.value(pts)
    worst = float(np.max(np.abs(np.abs(vals) - 1.0)))
    fd_worst = 0.0
    for chart in scenario.atlas:
        mask = chart.margin(pts) > 0.05
        if not np.any(mask):
            continue
        sub = pts[:, mask]
        coords = chart.to_coords(sub)
        ld = gauge.log_derivative(chart.name, coords)
        for axis in range(2):
            up = coords.copy()
            dn = coords.copy()
            up[axis] += FD_STEP
            dn[axis] -= FD_STEP
            dg = (gauge.value(chart.from_coords(up)) - gauge.value(chart.from_coords(dn))) / (2.0 * FD_STEP)
            fd_worst = max(
                fd_worst, float(np.max(np.abs(np.conj(gauge.value(sub)) * dg - ld[axis])))
            )
    return CheckResult.from_residual(
        "gauge-consistency", worst, tol, log_derivative_fd_residual=fd_worst
    )
