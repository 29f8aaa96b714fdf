"""Hermitian line bundles, unitary connections, gauge action, and averaging.

A bundle is a unit-modulus transition cocycle keyed by ordered chart pairs;
the Hermitian metric is implicit (transitions have modulus one, connection
coefficients are purely imaginary).  On the sphere the degree-k bundle is
clutched by exp(i*k*phi) between the north-frame charts (north, bandE, bandW)
and the south chart; on the torus only the topologically trivial bundle is
carried, since the torus scenarios exercise the flat branch of the theory.

Conventions (see CONVENTIONS.md): sections transform as s_i = g_ij s_j,
connections as A_j = A_i + g_ij^{-1} d g_ij, curvature is alpha = dA with
first Chern number (i/2pi) * integral(alpha).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .errors import OverlapError
from .geometry.charts import Atlas
from .geometry.forms import OneForm, TwoForm, exterior_derivative, one_form_on_ambient
from .geometry.scenarios import ManifoldScenario

Array = np.ndarray

# charts sharing the north local frame on the sphere
_NORTH_FRAME = ("north", "bandE", "bandW")


@dataclass(frozen=True)
class LineBundleData:
    scenario: ManifoldScenario
    # frame label per chart; transitions are determined by frame changes
    frames: Mapping[str, str]
    # (src frame, dst frame, global points) -> unit complex g_{dst,src}
    frame_transition: Callable[[str, str, Array], Array]
    # pairing of (i/2pi)*curvature against each catalog 2-cycle
    degrees: tuple[int, ...]
    descriptor: Mapping[str, object]

    def transition(self, src_chart: str, dst_chart: str, points: Array) -> Array:
        """g such that fiber coordinates transform lambda_dst = g * lambda_src."""
        return self.frame_transition(self.frames[src_chart], self.frames[dst_chart], points)


@dataclass(frozen=True)
class ConnectionData:
    bundle: LineBundleData
    # chart-local connection one-form, imaginary-valued, with analytic d
    a: OneForm
    descriptor: Mapping[str, object]

    @property
    def scenario(self) -> ManifoldScenario:
        return self.bundle.scenario


@dataclass(frozen=True)
class GaugeTransform:
    # global point -> unit complex value
    value: Callable[[Array], Array]
    # chart-local logarithmic derivative g^{-1} dg (imaginary one-form)
    log_derivative: OneForm
    descriptor: Mapping[str, object]


def trivial_bundle(scenario: ManifoldScenario) -> LineBundleData:
    frames = {c.name: "global" for c in scenario.atlas}

    def frame_transition(src, dst, points):
        return np.ones(np.shape(points[0]), dtype=complex)

    return LineBundleData(
        scenario=scenario,
        frames=frames,
        frame_transition=frame_transition,
        degrees=tuple(0 for _ in scenario.two_cycles),
        descriptor={"kind": "trivial"},
    )


def clutched_sphere_bundle(scenario: ManifoldScenario, degree: int) -> LineBundleData:
    """Degree-k bundle on the sphere, clutched by exp(i*k*phi) on the equator overlap."""
    if scenario.ambient_dim != 3:
        raise ValueError("clutched bundles exist only on the sphere scenarios")
    frames = {name: ("N" if name in _NORTH_FRAME else "S") for name in (c.name for c in scenario.atlas)}
    k = int(degree)

    def frame_transition(src, dst, points):
        if src == dst:
            return np.ones(np.shape(points[0]), dtype=complex)
        phi = np.arctan2(points[1], points[0])
        # lambda_N = exp(i k phi) lambda_S; g_{N<-S} = exp(i k phi)
        sign = 1.0 if (src, dst) == ("S", "N") else -1.0
        return np.exp(1j * k * sign * phi)

    return LineBundleData(
        scenario=scenario,
        frames=frames,
        frame_transition=frame_transition,
        degrees=(k,),
        descriptor={"kind": "clutched", "degree": k},
    )


def get_bundle(scenario: ManifoldScenario, degree: int) -> LineBundleData:
    """Catalog bundle keyed by (scenario, degree)."""
    if scenario.is_torus():
        if degree != 0:
            raise ValueError("torus scenarios carry only the topologically trivial bundle")
        return trivial_bundle(scenario)
    if degree == 0:
        return trivial_bundle(scenario)
    return clutched_sphere_bundle(scenario, degree)


# ---------------------------------------------------------------------------
# Catalog connections
# ---------------------------------------------------------------------------

def flat_torus_connection(scenario: ManifoldScenario, a: float, b: float) -> ConnectionData:
    """A = 2*pi*i*(a dx + b dy) on the trivial torus bundle; flat."""

    def coeff(chart, c):
        shape = np.shape(c[0])
        return np.stack(
            [np.full(shape, 2j * np.pi * a), np.full(shape, 2j * np.pi * b)], axis=0
        )

    def d_coeff(chart, c):
        return np.zeros(np.shape(c[0]), dtype=complex)

    form = OneForm(coeff, d_coeff, "imaginary")
    return ConnectionData(
        bundle=trivial_bundle(scenario),
        a=form,
        descriptor={"kind": "flat", "a": a, "b": b},
    )


def monopole_connection(scenario: ManifoldScenario, degree: int) -> ConnectionData:
    """Rotation-invariant connection on the degree-k sphere bundle.

    North frame: A = -(i k / 2)(1 - cos theta) dphi; south frame:
    A = (i k / 2)(1 + cos theta) dphi.  Curvature -(i k / 2) sin theta
    dtheta ^ dphi, so (i/2pi) * integral = k.
    """
    k = int(degree)

    def coeff(chart, c):
        if chart in ("north", "south"):
            x, y = c[0], c[1]
            denom = 1.0 + x ** 2 + y ** 2
            fx = 1j * k * y / denom
            fy = -1j * k * x / denom
            return np.stack([fx, fy], axis=0)
        theta = c[0]
        zero = np.zeros(np.shape(theta), dtype=complex)
        return np.stack([zero, -0.5j * k * (1.0 - np.cos(theta)) + zero], axis=0)

    def d_coeff(chart, c):
        if chart in ("north", "south"):
            rho2 = c[0] ** 2 + c[1] ** 2
            return -2j * k / (1.0 + rho2) ** 2 + 0.0j
        return -0.5j * k * np.sin(c[0]) + 0.0j

    form = OneForm(coeff, d_coeff, "imaginary")
    return ConnectionData(
        bundle=get_bundle(scenario, k),
        a=form,
        descriptor={"kind": "monopole", "degree": k},
    )


def shift_connection(conn: ConnectionData, eta: OneForm, note: str = "shift") -> ConnectionData:
    """Connection on the same bundle shifted by a global imaginary one-form."""
    return ConnectionData(
        bundle=conn.bundle,
        a=conn.a + eta,
        descriptor={"kind": note, "base": dict(conn.descriptor)},
    )


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def curvature(conn: ConnectionData, tol: float = 1e-8) -> TwoForm:
    """Global curvature two-form dA; raises if charts disagree on overlaps."""
    alpha = exterior_derivative(conn.a)
    atlas = conn.scenario.atlas
    pts = conn.scenario.sample_points
    for i, ci in enumerate(atlas.charts):
        for cj in atlas.charts[i + 1:]:
            mask = (ci.margin(pts) > 0.05) & (cj.margin(pts) > 0.05)
            if not np.any(mask):
                continue
            sub = pts[:, mask]
            coords_i = ci.to_coords(sub)
            coords_j = cj.to_coords(sub)
            fi = alpha(ci.name, coords_i)
            fj = alpha(cj.name, coords_j)
            # transform chart-j coefficient into chart i via the transition Jacobian
            det = _transition_det(atlas, ci, cj, coords_i)
            resid = np.max(np.abs(fi - fj * det))
            if resid > tol:
                raise OverlapError(
                    f"curvature mismatch on overlap ({ci.name}, {cj.name}): {resid:.3e}"
                )
    return alpha


def _transition_det(atlas: Atlas, chart_i, chart_j, coords_i: Array, step: float = 1e-6) -> Array:
    """det of d(coords_j)/d(coords_i) by central differences of the overlap map."""
    def trans(c):
        return chart_j.to_coords(chart_i.from_coords(c))

    cols = []
    for axis in range(2):
        up = coords_i.copy()
        dn = coords_i.copy()
        up[axis] = up[axis] + step
        dn[axis] = dn[axis] - step
        cols.append((trans(up) - trans(dn)) / (2.0 * step))
    return cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0]


def apply_gauge(conn: ConnectionData, gauge: GaugeTransform) -> ConnectionData:
    """A -> A + g^{-1} dg; the curvature is unchanged."""
    return ConnectionData(
        bundle=conn.bundle,
        a=conn.a + gauge.log_derivative,
        descriptor={"kind": "gauged", "base": dict(conn.descriptor), "gauge": dict(gauge.descriptor)},
    )


def compose_gauges(g: GaugeTransform, h: GaugeTransform) -> GaugeTransform:
    def value(points):
        return g.value(points) * h.value(points)

    return GaugeTransform(
        value=value,
        log_derivative=g.log_derivative + h.log_derivative,
        descriptor={"kind": "product", "left": dict(g.descriptor), "right": dict(h.descriptor)},
    )


def tensor_power(bundle: LineBundleData, conn: ConnectionData, d: int) -> tuple[LineBundleData, ConnectionData]:
    """d-th tensor power: transitions g^d, connection d*A, degrees d*degree."""
    if d < 1:
        raise ValueError("tensor power requires d >= 1")
    if conn.bundle is not bundle and conn.bundle.descriptor != bundle.descriptor:
        raise ValueError("connection does not live on the given bundle")
    if d == 1:
        return bundle, conn
    base_transition = bundle.frame_transition

    def frame_transition(src, dst, points):
        return base_transition(src, dst, points) ** d

    new_bundle = LineBundleData(
        scenario=bundle.scenario,
        frames=bundle.frames,
        frame_transition=frame_transition,
        degrees=tuple(d * k for k in bundle.degrees),
        descriptor={"kind": "tensor-power", "d": d, "base": dict(bundle.descriptor)},
    )
    new_conn = ConnectionData(
        bundle=new_bundle,
        a=float(d) * conn.a,
        descriptor={"kind": "tensor-power", "d": d, "base": dict(conn.descriptor)},
    )
    return new_bundle, new_conn


def one_form_difference(conn_a: ConnectionData, conn_b: ConnectionData) -> OneForm:
    """Global one-form conn_a - conn_b; only valid for connections on one bundle."""
    return conn_a.a - conn_b.a


def average_one_form(form: OneForm, scenario: ManifoldScenario, n_grid: int | None = None) -> OneForm:
    """Group average of a one-form over the torus action.

    The average at a point x on a tangent vector v is the mean over group
    parameters s of the pulled-back value form(d(flow_s) v) at flow_s(x),
    computed on a uniform grid (spectrally accurate for periodic smooth data).
    The result is evaluated lazily; its exterior derivative falls back to
    finite differences.
    """
    action = scenario.action
    atlas = scenario.atlas
    n = n_grid or scenario.average_grid
    grids = np.meshgrid(*[(np.arange(n) + 0.5) / n for _ in range(action.rank)], indexing="ij")
    group_params = np.stack([g.ravel() for g in grids], axis=0)

    def coeff(chart_name, coords):
        chart = atlas.chart(chart_name)
        coords = np.asarray(coords, dtype=float)
        single = coords.ndim == 1
        c = coords[:, None] if single else coords
        base_pts = chart.from_coords(c)
        jac = chart.jacobian(c)
        total = np.zeros((2,) + np.shape(c[0]), dtype=complex)
        for idx in range(group_params.shape[1]):
            s = group_params[:, idx]
            moved = action.flow(s, 1.0, base_pts)
            for axis in range(2):
                basis = jac[:, axis, :]
                pushed = action.differential(s, 1.0, base_pts, basis)
                total[axis] += one_form_on_ambient(form, atlas, moved, pushed)
        total /= group_params.shape[1]
        return total[:, 0] if single else total

    return OneForm(coeff, None, form.value_type)
