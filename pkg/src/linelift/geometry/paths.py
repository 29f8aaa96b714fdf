"""Piecewise-smooth paths and quadrature-ready 2-cycles.

A path is a list of segments, each confined to a single chart with analytic
position and velocity evaluators over its parameter interval.  Builders below
split a globally-parametrized curve at fixed parameter values and assign each
piece the preferred chart of its midpoint, so the chart bookkeeping is
deterministic (and its irrelevance for closed-loop quantities is testable).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from ..errors import DomainError
from .actions import TorusAction
from .charts import Atlas, Chart, project_to_chart

Array = np.ndarray


@dataclass(frozen=True)
class PathSegment:
    chart: str
    t0: float
    t1: float
    # t (n,) -> chart coords (2, n)
    position: Callable[[Array], Array]
    # t (n,) -> chart-coordinate velocity (2, n)
    velocity: Callable[[Array], Array]


@dataclass(frozen=True)
class PathSpec:
    segments: tuple[PathSegment, ...]
    closed: bool
    # integer homology coordinates in the dual-cycle basis, when known
    homology: Optional[tuple[int, ...]] = None

    @property
    def t_start(self) -> float:
        return self.segments[0].t0

    @property
    def t_end(self) -> float:
        return self.segments[-1].t1


@dataclass(frozen=True)
class CyclePatch:
    chart: str
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    # (u (m,), v (n,)) meshgrid-style -> chart coords (2, m, n)
    position: Callable[[Array, Array], Array]
    # -> (d_du (2, m, n), d_dv (2, m, n))
    tangents: Callable[[Array, Array], tuple[Array, Array]]
    # quadrature rule along u: "gauss" or "uniform" (periodic)
    u_rule: str = "gauss"
    v_rule: str = "uniform"


@dataclass(frozen=True)
class CycleSpec:
    name: str
    patches: tuple[CyclePatch, ...]
    grid: tuple[int, int] = (128, 128)


def segment_endpoint_global(atlas: Atlas, seg: PathSegment, t: float) -> Array:
    chart = atlas.chart(seg.chart)
    return chart.from_coords(seg.position(np.array([t]))[:, 0])


def validate_path(atlas: Atlas, path: PathSpec, tol: float = 1e-10) -> float:
    """Max mismatch of segment endpoints in global coordinates."""
    worst = 0.0
    segs = path.segments
    pairs = list(zip(segs[:-1], segs[1:]))
    if path.closed:
        pairs.append((segs[-1], segs[0]))
    for a, b in pairs:
        pa = segment_endpoint_global(atlas, a, a.t1)
        pb = segment_endpoint_global(atlas, b, b.t0)
        worst = max(worst, float(np.max(np.abs(pa - pb))))
    if worst > tol:
        raise DomainError(f"path segments disagree at a chart switch by {worst:.3e}")
    return worst


def path_from_global(
    atlas: Atlas,
    position_global: Callable[[Array], Array],
    velocity_ambient: Callable[[Array], Array],
    t_breaks: Sequence[float],
    closed: bool,
    homology: Optional[tuple[int, ...]] = None,
) -> PathSpec:
    """Split a globally-parametrized curve into chart-confined segments.

    Chart choice per piece: preferred chart of the midpoint.  Raises if a
    piece endpoint falls outside its assigned chart, which signals that the
    break spacing is too coarse for the curve's speed.
    """
    segments = []
    for t0, t1 in zip(t_breaks[:-1], t_breaks[1:]):
        mid = position_global(np.array([(t0 + t1) / 2.0]))[:, 0]
        chart = atlas.preferred_chart(mid)
        for t_end in (t0, t1):
            p = position_global(np.array([t_end]))[:, 0]
            if not chart.contains(p):
                raise DomainError(
                    f"segment [{t0}, {t1}] leaves chart {chart.name}; use more breaks"
                )
        segments.append(_make_segment(chart, float(t0), float(t1), position_global, velocity_ambient))
    return PathSpec(tuple(segments), closed=closed, homology=homology)


def _make_segment(chart: Chart, t0, t1, position_global, velocity_ambient) -> PathSegment:
    def position(t):
        return chart.to_coords(position_global(t))

    def velocity(t):
        p = position_global(t)
        return project_to_chart(chart, chart.to_coords(p), velocity_ambient(t))

    return PathSegment(chart.name, t0, t1, position, velocity)


def orbit_loop(atlas: Atlas, action: TorusAction, gamma: Array, x: Array, pieces: int = 0) -> PathSpec:
    """Closed orbit of a lattice vector through x, parametrized over [0, 1]."""
    gamma = np.asarray(gamma, dtype=float)

    def position_global(t):
        return action.flow(gamma, t, x)

    def velocity_ambient(t):
        return action.ambient_field(gamma, position_global(t))

    if pieces <= 0:
        pieces = 8 * max(1, int(np.ceil(np.max(np.abs(gamma)))) if gamma.size else 1)
    breaks = np.linspace(0.0, 1.0, pieces + 1)
    return path_from_global(atlas, position_global, velocity_ambient, breaks, closed=True)


def reparametrized(path: PathSpec, warp: Callable[[Array], Array], d_warp: Callable[[Array], Array]) -> PathSpec:
    """Precompose a path defined over [0,1] with a monotone warp of [0,1].

    Used to test parametrization invariance of line integrals.  Segment
    boundaries are pulled back through the warp by bisection.
    """
    def warp_inv(y: float) -> float:
        lo, hi = 0.0, 1.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if float(warp(np.array([mid]))[0]) < y:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    segments = []
    for seg in path.segments:
        s0 = warp_inv(seg.t0) if seg.t0 > 0 else 0.0
        s1 = warp_inv(seg.t1) if seg.t1 < 1 else 1.0
        segments.append(_warped_segment(seg, s0, s1, warp, d_warp))
    return PathSpec(tuple(segments), closed=path.closed, homology=path.homology)


def _warped_segment(seg, s0, s1, warp, d_warp) -> PathSegment:
    def position(s):
        return seg.position(warp(s))

    def velocity(s):
        return seg.velocity(warp(s)) * d_warp(s)

    return PathSegment(seg.chart, float(s0), float(s1), position, velocity)


def mapped_path(
    atlas: Atlas,
    path: PathSpec,
    point_map: Callable[[Array], Array],
    tangent_map: Callable[[Array, Array], Array],
) -> PathSpec:
    """Image of a path under a diffeomorphism given by global point and
    ambient tangent maps (e.g. a group element's flow)."""
    from .charts import push_to_ambient

    segments = []
    for seg in path.segments:
        src_chart = atlas.chart(seg.chart)

        def position_global(t, seg=seg, src_chart=src_chart):
            return point_map(src_chart.from_coords(seg.position(t)))

        def velocity_ambient(t, seg=seg, src_chart=src_chart):
            coords = seg.position(t)
            pts = src_chart.from_coords(coords)
            amb = push_to_ambient(src_chart, coords, seg.velocity(t))
            return tangent_map(pts, amb)

        pieces = 2
        breaks = np.linspace(seg.t0, seg.t1, pieces + 1)
        sub = path_from_global(atlas, position_global, velocity_ambient, breaks, closed=False)
        segments.extend(sub.segments)
    return PathSpec(tuple(segments), closed=path.closed, homology=path.homology)


def path_start_point(atlas: Atlas, path: PathSpec) -> Array:
    seg = path.segments[0]
    return atlas.chart(seg.chart).from_coords(seg.position(np.array([seg.t0]))[:, 0])


def path_end_point(atlas: Atlas, path: PathSpec) -> Array:
    seg = path.segments[-1]
    return atlas.chart(seg.chart).from_coords(seg.position(np.array([seg.t1]))[:, 0])


# ---------------------------------------------------------------------------
# Catalog path builders
# ---------------------------------------------------------------------------

def torus_line_loop(atlas: Atlas, start: Array, direction: Array) -> PathSpec:
    """Straight closed loop on the torus: t -> start + t * direction, integer direction."""
    start = np.asarray(start, dtype=float)
    direction = np.asarray(direction, dtype=float)

    def position_global(t):
        return np.mod(start[:, None] + direction[:, None] * t[None, :], 1.0)

    def velocity_ambient(t):
        return np.repeat(direction[:, None], t.shape[0], axis=-1)

    pieces = 8 * max(1, int(np.max(np.abs(direction))))
    breaks = np.linspace(0.0, 1.0, pieces + 1)
    hom = tuple(int(round(d)) for d in direction)
    return path_from_global(atlas, position_global, velocity_ambient, breaks, closed=True, homology=hom)


def torus_small_circle(atlas: Atlas, center: Array, radius: float = 0.1) -> PathSpec:
    """Contractible loop inside a single chart."""
    center = np.asarray(center, dtype=float)

    def position_global(t):
        ang = 2.0 * np.pi * t
        return np.mod(
            np.stack([center[0] + radius * np.cos(ang), center[1] + radius * np.sin(ang)], axis=0), 1.0
        )

    def velocity_ambient(t):
        ang = 2.0 * np.pi * t
        w = 2.0 * np.pi * radius
        return np.stack([-w * np.sin(ang), w * np.cos(ang)], axis=0)

    breaks = np.linspace(0.0, 1.0, 9)
    return path_from_global(atlas, position_global, velocity_ambient, breaks, closed=True, homology=(0, 0))


def sphere_latitude_loop(atlas: Atlas, theta: float, phi0: float = 0.0) -> PathSpec:
    """Latitude circle at colatitude theta, one turn in the +phi direction."""

    def position_global(t):
        phi = phi0 + 2.0 * np.pi * t
        st = np.sin(theta)
        return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta) * np.ones_like(phi)], axis=0)

    def velocity_ambient(t):
        phi = phi0 + 2.0 * np.pi * t
        w = 2.0 * np.pi * np.sin(theta)
        return np.stack([-w * np.sin(phi), w * np.cos(phi), np.zeros_like(phi)], axis=0)

    breaks = np.linspace(0.0, 1.0, 9)
    return path_from_global(atlas, position_global, velocity_ambient, breaks, closed=True)


def torus_open_segment(atlas: Atlas, start: Array, delta: Array) -> PathSpec:
    """Open straight path t -> start + t*delta on the torus."""
    start = np.asarray(start, dtype=float)
    delta = np.asarray(delta, dtype=float)

    def position_global(t):
        return np.mod(start[:, None] + delta[:, None] * t[None, :], 1.0)

    def velocity_ambient(t):
        return np.repeat(delta[:, None], t.shape[0], axis=-1)

    pieces = max(4, int(np.ceil(8 * np.max(np.abs(delta)))))
    breaks = np.linspace(0.0, 1.0, pieces + 1)
    return path_from_global(atlas, position_global, velocity_ambient, breaks, closed=False)


def sphere_open_arc(
    atlas: Atlas, theta_range: tuple[float, float], phi_range: tuple[float, float]
) -> PathSpec:
    """Open arc with colatitude and azimuth both linear in the parameter."""
    th0, th1 = theta_range
    ph0, ph1 = phi_range

    def position_global(t):
        theta = th0 + (th1 - th0) * t
        phi = ph0 + (ph1 - ph0) * t
        st = np.sin(theta)
        return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=0)

    def velocity_ambient(t):
        theta = th0 + (th1 - th0) * t
        phi = ph0 + (ph1 - ph0) * t
        dth = th1 - th0
        dph = ph1 - ph0
        st, ct = np.sin(theta), np.cos(theta)
        sp, cp = np.sin(phi), np.cos(phi)
        return np.stack(
            [dth * ct * cp - dph * st * sp, dth * ct * sp + dph * st * cp, -dth * st],
            axis=0,
        )

    pieces = max(6, int(np.ceil(4 * (abs(ph1 - ph0) + abs(th1 - th0)))))
    breaks = np.linspace(0.0, 1.0, pieces + 1)
    return path_from_global(atlas, position_global, velocity_ambient, breaks, closed=False)


def sphere_meridian_loop(atlas: Atlas, phi0: float = 0.0) -> PathSpec:
    """Great circle through both poles: down at azimuth phi0, back at phi0 + pi.

    Exercises the north/south frame transition of clutched bundles.
    """

    def position_global(t):
        # theta sweeps 0 -> pi over t in [0, 1/2], then back at azimuth phi0 + pi
        t = np.asarray(t, dtype=float)
        theta = np.where(t <= 0.5, 2.0 * np.pi * t, 2.0 * np.pi * (1.0 - t))
        phi = np.where(t <= 0.5, phi0, phi0 + np.pi)
        st = np.sin(theta)
        return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=0)

    def velocity_ambient(t):
        t = np.asarray(t, dtype=float)
        theta = np.where(t <= 0.5, 2.0 * np.pi * t, 2.0 * np.pi * (1.0 - t))
        phi = np.where(t <= 0.5, phi0, phi0 + np.pi)
        rate = np.where(t <= 0.5, 2.0 * np.pi, -2.0 * np.pi)
        ct = np.cos(theta)
        return np.stack([rate * ct * np.cos(phi), rate * ct * np.sin(phi), -rate * np.sin(theta)], axis=0)

    breaks = np.concatenate([np.linspace(0.0, 0.5, 7), np.linspace(0.5, 1.0, 7)[1:]])
    return path_from_global(atlas, position_global, velocity_ambient, breaks, closed=True)
