"""Parallel transport, orbit holonomy, and the monodromy map.

Transport convention: along a path c in a single chart the fiber phase
satisfies d(lambda)/dt = -A(c'(t)) lambda, so the transport factor is
exp(-int A); at a chart switch the fiber coordinate picks up the bundle
transition g_{dst<-src}.  For a closed loop the result is independent of the
segmentation.

The monodromy of a lattice direction gamma at x combines the orbit holonomy
with the moment factor exp(2*pi*i*<mu(x), gamma>).  It is computed two
independent ways: `monodromy_formula` (holonomy quadrature times one moment
evaluation) and `monodromy_ode` (fixed-step integration of the lifted-flow
phase equation along the orbit), which serves as the oracle for the first.

Phases are tracked as real log-angles throughout, so results have unit
modulus exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .bundle import ConnectionData
from .errors import AccuracyError
from .geometry.actions import TorusAction
from .geometry.paths import PathSpec, orbit_loop, validate_path
from .geometry.scenarios import ManifoldScenario

Array = np.ndarray


@dataclass(frozen=True)
class MomentMapData:
    action: TorusAction
    # per lattice direction: global point (d,) or (d, n) -> real value(s)
    components: tuple[Callable[[Array], Array], ...]
    descriptor: dict

    def pair(self, gamma: Array, points: Array) -> Array:
        """<mu(x), gamma> = sum_j gamma_j mu_j(x), real."""
        gamma = np.asarray(gamma, dtype=float)
        shape = np.shape(points[0]) if points.ndim > 1 else ()
        total = np.zeros(shape)
        for g, comp in zip(gamma, self.components):
            if g != 0.0:
                total = total + g * np.real(comp(points))
        return total

    def invariance_residual(self, scenario: ManifoldScenario, n_times: int = 5) -> float:
        """Max drift of each component along sampled orbit times."""
        worst = 0.0
        pts = scenario.sample_points
        for j in range(self.action.rank):
            e_j = np.eye(self.action.rank)[j]
            base = np.array([np.real(c) for c in [comp(pts) for comp in self.components]])
            for t in np.linspace(0.1, 0.9, n_times):
                moved = self.action.flow(e_j, float(t), pts)
                vals = np.array([np.real(comp(moved)) for comp in self.components])
                worst = max(worst, float(np.max(np.abs(vals - base))))
        return worst


def _field_shape(pts: Array) -> tuple:
    return np.shape(pts[0]) if pts.ndim > 1 else ()


def constant_moment_map(action: TorusAction, values: tuple[float, ...]) -> MomentMapData:
    comps = tuple(
        (lambda v: (lambda pts: np.full(_field_shape(pts), v)))(float(v)) for v in values
    )
    return MomentMapData(action, comps, {"kind": "constant", "values": tuple(float(v) for v in values)})


def sphere_height_moment(action: TorusAction, degree: int, offset: float = 0.0) -> MomentMapData:
    """Standard moment component for the degree-k monopole pair: k*(1+z)/2 + offset.

    Solves the moment equation for the monopole curvature; takes the integer
    values (k + offset, offset) at the poles when offset is an integer.
    """
    k = float(degree)

    def comp(pts):
        return 0.5 * k * (1.0 + pts[2]) + offset

    return MomentMapData(action, (comp,), {"kind": "sphere-height", "degree": degree, "offset": offset})


@dataclass(frozen=True)
class MonodromyResult:
    phase: complex
    gamma: tuple[float, ...]
    x: tuple[float, ...]
    method: str
    holonomy_part: Optional[complex] = None
    moment_part: Optional[complex] = None
    n_steps: int = 0


# ---------------------------------------------------------------------------
# Parallel transport
# ---------------------------------------------------------------------------

def _segment_log_phase(conn: ConnectionData, seg, n: int) -> float:
    """Im(-int_seg A) by composite Simpson with n (even) intervals."""
    t = np.linspace(seg.t0, seg.t1, n + 1)
    coords = seg.position(t)
    vel = seg.velocity(t)
    a_vals = conn.a(seg.chart, coords)
    integrand = np.sum(a_vals * vel, axis=0)
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    h = (seg.t1 - seg.t0) / n
    val = complex(np.dot(w, integrand) * h / 3.0)
    return float(-val.imag)


def _switch_log_phase(conn: ConnectionData, src_chart: str, dst_chart: str, point: Array) -> float:
    g = conn.bundle.transition(src_chart, dst_chart, point)
    return float(np.angle(complex(g)))


def parallel_transport(conn: ConnectionData, path: PathSpec, n_steps: Optional[int] = None) -> complex:
    """Transport phase along a path; for closed loops, the holonomy in the
    starting chart's frame."""
    scenario = conn.scenario
    validate_path(scenario.atlas, path)
    n_total = n_steps or scenario.line_steps
    spans = [seg.t1 - seg.t0 for seg in path.segments]
    total_span = sum(spans)
    psi = 0.0
    segs = path.segments
    for i, seg in enumerate(segs):
        n = max(16, int(round(n_total * spans[i] / total_span)))
        n += n % 2
        psi += _segment_log_phase(conn, seg, n)
        nxt = None
        if i + 1 < len(segs):
            nxt = segs[i + 1]
        elif path.closed:
            nxt = segs[0]
        if nxt is not None and nxt.chart != seg.chart:
            p = scenario.atlas.chart(seg.chart).from_coords(seg.position(np.array([seg.t1]))[:, 0])
            psi += _switch_log_phase(conn, seg.chart, nxt.chart, p)
    return complex(np.exp(1j * psi))


def orbit_holonomy(
    conn: ConnectionData,
    action: TorusAction,
    gamma: Array,
    x: Array,
    n_steps: Optional[int] = None,
    pieces: int = 0,
) -> complex:
    """Holonomy of the closed orbit of a lattice vector through x."""
    loop = orbit_loop(conn.scenario.atlas, action, gamma, x, pieces=pieces)
    return parallel_transport(conn, loop, n_steps)


# ---------------------------------------------------------------------------
# Monodromy, two ways
# ---------------------------------------------------------------------------

def monodromy_formula(
    conn: ConnectionData,
    mu: MomentMapData,
    action: TorusAction,
    gamma: Array,
    x: Array,
    n_steps: Optional[int] = None,
) -> MonodromyResult:
    """Closed formula: orbit holonomy times exp(2*pi*i*<mu(x), gamma>)."""
    gamma = np.asarray(gamma, dtype=float)
    hol = orbit_holonomy(conn, action, gamma, x, n_steps)
    mom = complex(np.exp(2j * np.pi * float(mu.pair(gamma, x))))
    return MonodromyResult(
        phase=hol * mom,
        gamma=tuple(gamma.tolist()),
        x=tuple(np.asarray(x, dtype=float).tolist()),
        method="formula",
        holonomy_part=hol,
        moment_part=mom,
        n_steps=n_steps or conn.scenario.line_steps,
    )


def _ode_log_phase(conn: ConnectionData, mu: MomentMapData, loop: PathSpec, gamma: Array, n_steps: int) -> float:
    """Accumulate the lifted-flow phase along the orbit with fixed-step RK4.

    The right-hand side Im(-A(orbit velocity) + 2*pi*i*<mu, gamma>) depends on
    t only, so each RK4 step reduces to a Simpson step; chart-switch factors
    are inserted at segment boundaries.
    """
    scenario = conn.scenario
    spans = [seg.t1 - seg.t0 for seg in loop.segments]
    total_span = sum(spans)
    psi = 0.0
    segs = loop.segments
    for i, seg in enumerate(segs):
        n = max(1, int(round(n_steps * spans[i] / total_span)))
        t = np.linspace(seg.t0, seg.t1, 2 * n + 1)
        coords = seg.position(t)
        vel = seg.velocity(t)
        a_vals = conn.a(seg.chart, coords)
        points = scenario.atlas.chart(seg.chart).from_coords(coords)
        q = np.imag(-np.sum(a_vals * vel, axis=0)) + 2.0 * np.pi * mu.pair(gamma, points)
        h = (seg.t1 - seg.t0) / n
        psi += float((h / 6.0) * np.sum(q[0:-1:2] + 4.0 * q[1::2] + q[2::2]))
        nxt = segs[i + 1] if i + 1 < len(segs) else (segs[0] if loop.closed else None)
        if nxt is not None and nxt.chart != seg.chart:
            p = points[:, -1]
            psi += _switch_log_phase(conn, seg.chart, nxt.chart, p)
    return psi


def monodromy_ode(
    conn: ConnectionData,
    mu: MomentMapData,
    action: TorusAction,
    gamma: Array,
    x: Array,
    n_steps: Optional[int] = None,
    doubling_tol: float = 1e-6,
) -> MonodromyResult:
    """Oracle computation: integrate the lifted flow's fiber phase over one period."""
    gamma = np.asarray(gamma, dtype=float)
    scenario = conn.scenario
    n = n_steps or scenario.ode_steps
    loop = orbit_loop(scenario.atlas, action, gamma, x)
    psi_coarse = _ode_log_phase(conn, mu, loop, gamma, n)
    psi_fine = _ode_log_phase(conn, mu, loop, gamma, 2 * n)
    drift = abs(complex(np.exp(1j * psi_fine)) - complex(np.exp(1j * psi_coarse)))
    if drift > doubling_tol:
        raise AccuracyError(
            f"monodromy integration not converged: doubling changed the phase by {drift:.3e}"
        )
    return MonodromyResult(
        phase=complex(np.exp(1j * psi_fine)),
        gamma=tuple(gamma.tolist()),
        x=tuple(np.asarray(x, dtype=float).tolist()),
        method="ode",
        n_steps=2 * n,
    )
