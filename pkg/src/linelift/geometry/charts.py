"""Chart atlases for the catalog surfaces.

A point is a plain numpy array in a global representation: a pair in [0,1)^2
for the flat torus, a unit vector in R^3 for the round sphere.  A Chart maps
between that representation and local coordinates in an open planar domain,
and carries the analytic Jacobian of its parametrization (chart coords ->
ambient), which is all later modules need to move tangent vectors around.

Evaluators broadcast over a trailing batch axis: a single point has shape
(d,), a batch has shape (d, n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..errors import DomainError

Array = np.ndarray


@dataclass(frozen=True)
class Chart:
    name: str
    # global point -> chart coordinates, shape (2,) / (2, n)
    to_coords: Callable[[Array], Array]
    # chart coordinates -> global point
    from_coords: Callable[[Array], Array]
    # chart coordinates -> Jacobian of from_coords, shape (ambient_dim, 2) or (ambient_dim, 2, n)
    jacobian: Callable[[Array], Array]
    # global point -> margin score; positive inside the domain, larger = deeper
    margin: Callable[[Array], Array]

    def contains(self, point: Array) -> bool:
        return bool(np.all(self.margin(point) > 0.0))


def project_to_chart(chart: Chart, coords: Array, ambient_vec: Array) -> Array:
    """Components of an ambient tangent vector in the chart coordinate basis.

    Solves the 2x2 normal equations J^T J x = J^T v; exact for vectors tangent
    to the surface since J has full rank on the chart domain.
    """
    jac = chart.jacobian(coords)
    if jac.ndim == 2:
        gram = jac.T @ jac
        rhs = jac.T @ ambient_vec
        return np.linalg.solve(gram, rhs)
    gram = np.einsum("ian,ibn->abn", jac, jac)
    rhs = np.einsum("ian,in->an", jac, ambient_vec)
    det = gram[0, 0] * gram[1, 1] - gram[0, 1] * gram[1, 0]
    return np.stack(
        [
            (gram[1, 1] * rhs[0] - gram[0, 1] * rhs[1]) / det,
            (gram[0, 0] * rhs[1] - gram[1, 0] * rhs[0]) / det,
        ],
        axis=0,
    )


def push_to_ambient(chart: Chart, coords: Array, chart_vec: Array) -> Array:
    """Ambient representative of a tangent vector given in chart components."""
    jac = chart.jacobian(coords)
    if jac.ndim == 2:
        return jac @ chart_vec
    return np.einsum("ian,an->in", jac, chart_vec)


class Atlas:
    """Ordered chart collection with deterministic preferred-chart selection."""

    def __init__(self, charts: Sequence[Chart]):
        self.charts = tuple(charts)
        self._by_name = {c.name: c for c in self.charts}

    def __iter__(self):
        return iter(self.charts)

    def chart(self, name: str) -> Chart:
        return self._by_name[name]

    def preferred_chart(self, point: Array) -> Chart:
        best = None
        best_margin = 0.0
        for chart in self.charts:
            m = float(np.min(chart.margin(point)))
            if m > best_margin:
                best, best_margin = chart, m
        if best is None:
            raise DomainError(f"point {point!r} lies outside every chart domain")
        return best

    def preferred_names(self, points: Array) -> list[str]:
        """Vectorized preferred-chart names for a (d, n) batch; ties keep the
        earliest chart, matching `preferred_chart`."""
        if points.ndim == 1:
            return [self.preferred_chart(points).name]
        margins = np.stack([np.asarray(c.margin(points), dtype=float) for c in self.charts], axis=0)
        best = np.argmax(margins, axis=0)
        if np.any(margins[best, np.arange(points.shape[-1])] <= 0.0):
            raise DomainError("a batch point lies outside every chart domain")
        return [self.charts[i].name for i in best]

    def charts_containing(self, point: Array) -> list[Chart]:
        return [c for c in self.charts if c.contains(point)]

    def transition(self, src: str, dst: str, coords: Array) -> Array:
        """Overlap map: coordinates in chart `src` -> coordinates in chart `dst`."""
        return self._by_name[dst].to_coords(self._by_name[src].from_coords(coords))


# ---------------------------------------------------------------------------
# Flat torus R^2 / Z^2
# ---------------------------------------------------------------------------

def wrap_torus(point: Array) -> Array:
    return np.mod(point, 1.0)


def _torus_chart(offset_x: float, offset_y: float) -> Chart:
    off = np.array([offset_x, offset_y])

    def to_coords(p):
        rel = np.mod((p.T - off).T, 1.0)
        return (rel.T + off).T

    def from_coords(c):
        return np.mod(c, 1.0)

    def jacobian(c):
        eye = np.eye(2)
        if c.ndim == 2:
            return np.repeat(eye[:, :, None], c.shape[-1], axis=-1)
        return eye

    def margin(p):
        rel = np.mod((p.T - off).T, 1.0)
        return np.min(np.minimum(rel, 1.0 - rel), axis=0)

    return Chart(
        name=f"box{offset_x:g}_{offset_y:g}",
        to_coords=to_coords,
        from_coords=from_coords,
        jacobian=jacobian,
        margin=margin,
    )


def torus_atlas() -> Atlas:
    """Four unit-square charts offset by half periods; every point has margin >= 1/4."""
    return Atlas([
        _torus_chart(0.0, 0.0),
        _torus_chart(0.5, 0.0),
        _torus_chart(0.0, 0.5),
        _torus_chart(0.5, 0.5),
    ])


# ---------------------------------------------------------------------------
# Round sphere S^2 in R^3
# ---------------------------------------------------------------------------
#
# Chart conventions (see CONVENTIONS.md):
#   north:  z = (p_x + i p_y) / (1 + p_z)   covers p_z > -0.92 roughly (rho < RHO_MAX)
#   south:  z = (p_x - i p_y) / (1 - p_z)   transition z_S = 1 / z_N (holomorphic)
#   bandE:  (theta, phi), phi in (-pi, pi)
#   bandW:  (theta, phi), phi in (0, 2*pi)
# Band charts use colatitude theta in (THETA_MIN, pi - THETA_MIN).

RHO_MAX = 2.5
THETA_MIN = 0.35


def _stereo_chart(name: str, sign: float) -> Chart:
    # sign = +1: projection with the pole p_z = +1 at the origin (north chart)
    # sign = -1: south chart
    def to_coords(p):
        denom = 1.0 + sign * p[2]
        return np.stack([p[0] / denom, sign * p[1] / denom], axis=0)

    def from_coords(c):
        rho2 = c[0] ** 2 + c[1] ** 2
        denom = 1.0 + rho2
        return np.stack(
            [2.0 * c[0] / denom, sign * 2.0 * c[1] / denom, sign * (1.0 - rho2) / denom],
            axis=0,
        )

    def jacobian(c):
        x, y = c[0], c[1]
        rho2 = x ** 2 + y ** 2
        d = (1.0 + rho2) ** 2
        row_x = np.stack([2.0 * (1.0 + y ** 2 - x ** 2) / d, -4.0 * x * y / d], axis=0)
        row_y = np.stack([-4.0 * x * y / d, 2.0 * (1.0 + x ** 2 - y ** 2) / d], axis=0) * sign
        row_z = np.stack([-4.0 * x / d, -4.0 * y / d], axis=0) * sign
        return np.stack([row_x, row_y, row_z], axis=0)

    def margin(p):
        denom = 1.0 + sign * p[2]
        with np.errstate(divide="ignore", invalid="ignore"):
            rho = np.where(denom > 1e-12, np.hypot(p[0], p[1]) / np.maximum(denom, 1e-12), np.inf)
        return (RHO_MAX - rho) / RHO_MAX

    return Chart(name, to_coords, from_coords, jacobian, margin)


def _band_chart(name: str, phi_lo: float) -> Chart:
    # coordinates (theta, phi) with phi taken in (phi_lo, phi_lo + 2*pi)
    phi_hi = phi_lo + 2.0 * np.pi
    half_span = np.pi / 2.0 - THETA_MIN

    def to_coords(p):
        theta = np.arccos(np.clip(p[2], -1.0, 1.0))
        phi = np.mod(np.arctan2(p[1], p[0]) - phi_lo, 2.0 * np.pi) + phi_lo
        return np.stack([theta, phi], axis=0)

    def from_coords(c):
        theta, phi = c[0], c[1]
        st = np.sin(theta)
        return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=0)

    def jacobian(c):
        theta, phi = c[0], c[1]
        st, ct = np.sin(theta), np.cos(theta)
        sp, cp = np.sin(phi), np.cos(phi)
        d_theta = np.stack([ct * cp, ct * sp, -st], axis=0)
        d_phi = np.stack([-st * sp, st * cp, np.zeros_like(theta)], axis=0)
        return np.stack([d_theta, d_phi], axis=1)

    def margin(p):
        theta = np.arccos(np.clip(p[2], -1.0, 1.0))
        phi = np.mod(np.arctan2(p[1], p[0]) - phi_lo, 2.0 * np.pi) + phi_lo
        m_theta = np.minimum(theta - THETA_MIN, np.pi - THETA_MIN - theta) / half_span
        m_phi = np.minimum(phi - phi_lo, phi_hi - phi) / (np.pi / 2.0)
        return np.minimum(m_theta, m_phi)

    return Chart(name, to_coords, from_coords, jacobian, margin)


def sphere_atlas() -> Atlas:
    return Atlas([
        _band_chart("bandE", -np.pi),
        _band_chart("bandW", 0.0),
        _stereo_chart("north", +1.0),
        _stereo_chart("south", -1.0),
    ])


def sphere_angles(point: Array) -> tuple[Array, Array]:
    """(colatitude, azimuth in (-pi, pi]) of a global sphere point."""
    theta = np.arccos(np.clip(point[2], -1.0, 1.0))
    phi = np.arctan2(point[1], point[0])
    return theta, phi
