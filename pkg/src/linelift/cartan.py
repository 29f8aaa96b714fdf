"""Degree-2 equivariant-complex checks: the moment equation, restriction to
ordinary cohomology, and the integrality certificate.

A degree-2 equivariant pair is an invariant imaginary two-form alpha together
with real moment components mu_j (one per lattice direction).  Closedness of
the pair is the moment equation

    d(mu_j) = (i / 2*pi) * iota_{V_j} alpha,

where V_j generates the period-1 flow of lattice direction j.  In this scale
the fixed-point values of mu_j are exactly the candidate integer weights, and
(i/2pi)-periods of alpha are the candidate Chern pairings.

The integrality certificate (periods integral AND mu integral at every
declared fixed point) is sufficient for the catalog scenarios, where orbits
either bound or the curvature class vanishes; reports flag it as a
certificate, not a characterization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .bundle import ConnectionData, LineBundleData, curvature
from .geometry.calculus import integrate_two_form
from .geometry.charts import project_to_chart
from .geometry.forms import OneForm, TwoForm, exterior_derivative, one_form_on_ambient
from .geometry.scenarios import ManifoldScenario
from .reports import CheckResult
from .transport import MomentMapData

Array = np.ndarray

FD_STEP = 1e-5


@dataclass(frozen=True)
class EquivariantTwoForm:
    scenario: ManifoldScenario
    alpha: TwoForm
    mu: MomentMapData
    descriptor: dict

    @staticmethod
    def from_connection(conn: ConnectionData, mu: MomentMapData) -> "EquivariantTwoForm":
        return EquivariantTwoForm(
            scenario=conn.scenario,
            alpha=curvature(conn),
            mu=mu,
            descriptor={"alpha": dict(conn.descriptor), "mu": dict(mu.descriptor)},
        )


def _chart_samples(scenario: ManifoldScenario, min_margin: float = 0.05):
    """Sample points grouped by chart, as (chart, coords (2,n), points (d,n))."""
    pts = scenario.sample_points
    for chart in scenario.atlas:
        mask = chart.margin(pts) > min_margin
        if np.any(mask):
            sub = pts[:, mask]
            yield chart, chart.to_coords(sub), sub


def check_moment_equation(eq2: EquivariantTwoForm, tol: float = 1e-6) -> CheckResult:
    """Residual of d(mu_j)(v) = (i/2pi) alpha(V_j, v) over a chart-basis frame.

    The mu side is differentiated by central finite differences, independent
    of however the catalog produced mu.
    """
    scenario = eq2.scenario
    action = scenario.action
    worst = 0.0
    worst_at = None
    for chart, coords, pts in _chart_samples(scenario):
        alpha_coeff = eq2.alpha(chart.name, coords)
        for j in range(action.rank):
            e_j = np.eye(action.rank)[j]
            v_chart = project_to_chart(chart, coords, action.ambient_field(e_j, pts))
            comp = eq2.mu.components[j]
            for axis in range(2):
                up = coords.copy()
                dn = coords.copy()
                up[axis] += FD_STEP
                dn[axis] -= FD_STEP
                dmu = (np.real(comp(chart.from_coords(up))) - np.real(comp(chart.from_coords(dn)))) / (
                    2.0 * FD_STEP
                )
                # alpha(V, e_axis) with e_axis the chart basis vector
                contraction = alpha_coeff * (v_chart[0] if axis == 1 else -v_chart[1])
                rhs = np.real(1j / (2.0 * np.pi) * contraction)
                resid = np.abs(dmu - rhs)
                m = float(np.max(resid))
                if m > worst:
                    worst = m
                    worst_at = {
                        "chart": chart.name,
                        "direction": j,
                        "axis": axis,
                        "point": pts[:, int(np.argmax(resid))].tolist(),
                    }
    return CheckResult.from_residual("moment-equation", worst, tol, worst_sample=worst_at)


def check_alpha_invariance(
    scenario: ManifoldScenario, alpha: TwoForm, n_group: int = 8, tol: float = 1e-7
) -> CheckResult:
    """Pullback of a two-form under sampled group elements vs the form itself."""
    action = scenario.action
    atlas = scenario.atlas
    worst = 0.0
    from .geometry.forms import two_form_on_ambient

    params = (np.arange(n_group) + 0.5) / n_group
    for chart, coords, pts in _chart_samples(scenario):
        jac = chart.jacobian(coords)
        base = alpha(chart.name, coords)
        e1, e2 = jac[:, 0, :], jac[:, 1, :]
        for j in range(action.rank):
            for t in params:
                s = np.eye(action.rank)[j]
                moved = action.flow(s, float(t), pts)
                pushed1 = action.differential(s, float(t), pts, e1)
                pushed2 = action.differential(s, float(t), pts, e2)
                pulled = two_form_on_ambient(alpha, atlas, moved, pushed1, pushed2)
                worst = max(worst, float(np.max(np.abs(pulled - base))))
    return CheckResult.from_residual("alpha-invariance", worst, tol)


def restrict_class(
    eq2: EquivariantTwoForm, grid: Optional[tuple[int, int]] = None
) -> tuple[TwoForm, tuple[float, ...]]:
    """Underlying ordinary two-form and its (i/2pi)-periods over catalog 2-cycles."""
    scenario = eq2.scenario
    periods = []
    for cycle in scenario.two_cycles:
        val = 1j / (2.0 * np.pi) * integrate_two_form(eq2.alpha, cycle, grid or scenario.surface_grid)
        periods.append(float(val.real))
    return eq2.alpha, tuple(periods)


@dataclass(frozen=True)
class IntegralityReport:
    periods: tuple[float, ...]
    period_residual: float
    fixed_point_values: tuple[tuple[float, ...], ...]
    mu_residual: float
    passed: bool
    offenders: tuple[str, ...]
    note: str

    def to_dict(self) -> dict:
        return {
            "periods": list(self.periods),
            "period_residual": self.period_residual,
            "fixed_point_values": [list(v) for v in self.fixed_point_values],
            "mu_residual": self.mu_residual,
            "passed": self.passed,
            "offenders": list(self.offenders),
            "note": self.note,
        }


def check_integrality(
    eq2: EquivariantTwoForm,
    bundle: Optional[LineBundleData] = None,
    tol: float = 1e-6,
) -> IntegralityReport:
    """Certificate: integral curvature periods and integral mu at fixed points.

    When the scenario has no fixed points the mu condition is vacuous (the
    catalog torus scenarios only carry flat classes, for which the orbit
    pairing absorbs any constant).  When a bundle is supplied its declared
    degrees must match the measured periods.
    """
    _, periods = restrict_class(eq2)
    offenders = []
    period_residual = max((abs(p - round(p)) for p in periods), default=0.0)
    if period_residual > tol:
        offenders.append(f"non-integral curvature period(s): {periods}")
    if bundle is not None:
        for measured, declared in zip(periods, bundle.degrees):
            if abs(measured - declared) > max(tol, 1e-6):
                offenders.append(
                    f"declared degree {declared} but measured period {measured:.8f}"
                )
    fixed_values = []
    mu_residual = 0.0
    for p in eq2.scenario.action.fixed_point_arrays():
        vals = tuple(float(np.real(comp(p))) for comp in eq2.mu.components)
        fixed_values.append(vals)
        for j, v in enumerate(vals):
            r = abs(v - round(v))
            mu_residual = max(mu_residual, r)
            if r > tol:
                offenders.append(
                    f"mu_{j} at fixed point {np.round(p, 6).tolist()} = {v:.8f} is not an integer"
                )
    passed = not offenders
    if eq2.scenario.action.fixed_points:
        note = "certificate: curvature periods + fixed-point weights (sufficient for catalog; not a general characterization)"
    else:
        note = "certificate: no fixed points declared; trivial-class branch (curvature periods only)"
    return IntegralityReport(
        periods=tuple(periods),
        period_residual=float(period_residual),
        fixed_point_values=tuple(fixed_values),
        mu_residual=float(mu_residual),
        passed=passed,
        offenders=tuple(offenders),
        note=note,
    )


# ---------------------------------------------------------------------------
# Equivariant-exact shifts
# ---------------------------------------------------------------------------

def cartan_exact_pair(scenario: ManifoldScenario, eta: OneForm) -> EquivariantTwoForm:
    """The degree-2 pair produced by applying the equivariant differential to
    an invariant one-form: alpha = d(eta), mu_j = -(i/2pi) * eta(V_j).

    For invariant eta this pair is closed identically, which is the degree-2
    witness that the equivariant differential squares to zero.
    """
    action = scenario.action
    alpha = exterior_derivative(eta)
    mu = shift_moment_components(scenario, None, eta)
    return EquivariantTwoForm(scenario, alpha, mu, {"kind": "exact-shift"})


def shift_moment_components(
    scenario: ManifoldScenario, mu: Optional[MomentMapData], eta: OneForm
) -> MomentMapData:
    """Moment data for a connection shifted by an invariant one-form eta:
    mu_j -> mu_j - (i/2pi) * eta(V_j)."""
    action = scenario.action
    atlas = scenario.atlas

    def make_comp(j: int):
        base = mu.components[j] if mu is not None else None

        def comp(pts):
            single = pts.ndim == 1
            batch = pts[:, None] if single else pts
            field = action.ambient_field(np.eye(action.rank)[j], batch)
            val = one_form_on_ambient(eta, atlas, batch, field)
            corr = np.real(1j / (2.0 * np.pi) * val) * (-1.0)
            if base is not None:
                corr = corr + np.real(base(batch))
            return corr[0] if single else corr

        return comp

    comps = tuple(make_comp(j) for j in range(action.rank))
    base_desc = dict(mu.descriptor) if mu is not None else None
    return MomentMapData(action, comps, {"kind": "shifted", "base": base_desc})
