"""Seeded random families of valid (connection, moment-map) pairs, gauge
transformations, and closed shifts for every catalog scenario.

The families stay inside the theory's hypotheses by construction: torus
scenarios get flat connections plus exact wobbles with constant moment
components; sphere rotations get monopole connections plus exact wobbles and
an invariant latitude-profile term whose moment correction is added in closed
form.  Everything carries analytic coefficient evaluators (chart Jacobians
contracted with ambient gradients), so the hygiene checks apply to family
members as well as catalog data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .bundle import ConnectionData, GaugeTransform, monopole_connection, shift_connection, flat_torus_connection
from .geometry.forms import OneForm
from .geometry.scenarios import ManifoldScenario
from .transport import MomentMapData, constant_moment_map, sphere_height_moment

Array = np.ndarray


# ---------------------------------------------------------------------------
# Smooth scalar fields with exact chart gradients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalarField:
    """Global function with an ambient gradient, for exact d(f) in any chart."""

    value: Callable[[Array], Array]
    gradient: Callable[[Array], Array]


def torus_trig_field(rng: np.random.Generator, n_terms: int = 3, scale: float = 0.4) -> ScalarField:
    terms = []
    for _ in range(n_terms):
        m, n = int(rng.integers(-2, 3)), int(rng.integers(-2, 3))
        if m == 0 and n == 0:
            m = 1
        c = float(rng.uniform(-scale, scale))
        ph = float(rng.uniform(0.0, 2.0 * np.pi))
        terms.append((m, n, c, ph))

    def value(p):
        out = np.zeros(np.shape(p[0]))
        for m, n, c, ph in terms:
            out = out + c * np.sin(2.0 * np.pi * (m * p[0] + n * p[1]) + ph)
        return out

    def gradient(p):
        gx = np.zeros(np.shape(p[0]))
        gy = np.zeros(np.shape(p[0]))
        for m, n, c, ph in terms:
            w = 2.0 * np.pi * c * np.cos(2.0 * np.pi * (m * p[0] + n * p[1]) + ph)
            gx = gx + w * m
            gy = gy + w * n
        return np.stack([gx, gy], axis=0)

    return ScalarField(value, gradient)


def sphere_poly_field(rng: np.random.Generator, scale: float = 0.4) -> ScalarField:
    """Restriction of a random quadratic polynomial on R^3 to the sphere."""
    lin = rng.uniform(-scale, scale, size=3)
    quad = rng.uniform(-scale, scale, size=(3, 3))
    quad = 0.5 * (quad + quad.T)

    def value(p):
        flat = p if p.ndim == 2 else p[:, None]
        out = lin @ flat + np.einsum("in,ij,jn->n", flat, quad, flat)
        return out if p.ndim == 2 else out[0]

    def gradient(p):
        flat = p if p.ndim == 2 else p[:, None]
        g = lin[:, None] + 2.0 * (quad @ flat)
        return g if p.ndim == 2 else g[:, 0]

    return ScalarField(value, gradient)


def exact_one_form(scenario: ManifoldScenario, field: ScalarField, factor: complex = 1j) -> OneForm:
    """factor * d(field) with exact chart coefficients via the chart Jacobians."""
    atlas = scenario.atlas

    def coeff(chart_name, c):
        chart = atlas.chart(chart_name)
        c = np.asarray(c, dtype=float)
        single = c.ndim == 1
        cc = c[:, None] if single else c
        pts = chart.from_coords(cc)
        grad = field.gradient(pts)
        jac = chart.jacobian(cc)
        out = np.stack(
            [factor * np.sum(grad * jac[:, 0, :], axis=0), factor * np.sum(grad * jac[:, 1, :], axis=0)],
            axis=0,
        )
        return out[:, 0] if single else out

    def d_coeff(chart_name, c):
        return np.zeros(np.shape(np.asarray(c)[0]), dtype=complex)

    value_type = "imaginary" if factor == 1j else ("real" if factor == 1.0 else "complex")
    return OneForm(coeff, d_coeff, value_type)


def latitude_profile_form(scenario: ManifoldScenario, amplitude: float) -> OneForm:
    """Rotation-invariant imaginary form i * amplitude * sin(theta)^2 dphi.

    Smooth at the poles; its exterior derivative and moment correction are in
    closed form (the moment shift is +amplitude * sin(theta)^2).
    """
    a = float(amplitude)

    def coeff(chart, c):
        if chart in ("north", "south"):
            x, y = c[0], c[1]
            denom = (1.0 + x ** 2 + y ** 2) ** 2
            sign = 1.0 if chart == "north" else -1.0
            return np.stack(
                [-4j * a * sign * y / denom, 4j * a * sign * x / denom], axis=0
            )
        th = c[0]
        zero = np.zeros(np.shape(th), dtype=complex)
        return np.stack([zero, 1j * a * np.sin(th) ** 2 + zero], axis=0)

    def d_coeff(chart, c):
        if chart in ("north", "south"):
            sign = 1.0 if chart == "north" else -1.0
            rho2 = c[0] ** 2 + c[1] ** 2
            return 8j * a * sign * (1.0 - rho2) / (1.0 + rho2) ** 3 + 0.0j
        th = c[0]
        return 2j * a * np.sin(th) * np.cos(th) + 0.0j

    return OneForm(coeff, d_coeff, "imaginary")


# ---------------------------------------------------------------------------
# Valid pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScenarioSample:
    scenario: ManifoldScenario
    conn: ConnectionData
    mu: MomentMapData
    descriptor: dict


def random_valid_pair(
    scenario: ManifoldScenario, rng: np.random.Generator, integral: bool = False
) -> ScenarioSample:
    """A connection with invariant curvature and a moment map satisfying the
    moment equation; `integral` forces the integrality certificate to hold."""
    name = scenario.name
    if scenario.is_torus():
        a, b = rng.uniform(-1.5, 1.5, size=2)
        conn = flat_torus_connection(scenario, float(a), float(b))
        wobble = exact_one_form(scenario, torus_trig_field(rng))
        conn = shift_connection(conn, wobble, "flat+wobble")
        if integral:
            values = tuple(float(v) for v in rng.integers(-2, 3, size=scenario.action.rank))
        else:
            values = tuple(float(v) for v in rng.uniform(-1.0, 1.0, size=scenario.action.rank))
        mu = constant_moment_map(scenario.action, values)
        desc = {"scenario": name, "flat": [float(a), float(b)], "mu": list(values)}
        return ScenarioSample(scenario, conn, mu, desc)

    degree = int(rng.integers(-2, 3))
    if name == "sphere2-trivial":
        base = monopole_connection(scenario, degree)
        wobble = exact_one_form(scenario, sphere_poly_field(rng))
        conn = shift_connection(base, wobble, "monopole+wobble")
        offset = float(rng.integers(-2, 3)) if integral else float(rng.uniform(-1.0, 1.0))
        mu = constant_moment_map(scenario.action, (offset,))
        return ScenarioSample(scenario, conn, mu, {"scenario": name, "degree": degree, "mu": offset})

    base = monopole_connection(scenario, degree)
    amp = float(rng.uniform(-0.5, 0.5))
    invariant_part = latitude_profile_form(scenario, amp)
    wobble = exact_one_form(scenario, sphere_poly_field(rng))
    conn = shift_connection(shift_connection(base, invariant_part, "monopole+profile"), wobble, "wobble")
    offset = float(rng.integers(-2, 3)) if integral else float(rng.uniform(-1.0, 1.0))

    def comp(pts, k=degree, off=offset, a=amp):
        sin2 = pts[0] ** 2 + pts[1] ** 2
        return 0.5 * k * (1.0 + pts[2]) + off + a * sin2

    mu = MomentMapData(
        scenario.action,
        (comp,),
        {"kind": "monopole+profile", "degree": degree, "offset": offset, "amplitude": amp},
    )
    return ScenarioSample(
        scenario, conn, mu, {"scenario": name, "degree": degree, "offset": offset, "amplitude": amp}
    )


def standard_pair(
    scenario: ManifoldScenario,
    degree: int = 0,
    flat: tuple[float, float] = (0.0, 0.0),
    mu_offsets: tuple[float, ...] = (),
) -> ScenarioSample:
    """Deterministic catalog pair from plain parameters (CLI entry point)."""
    if scenario.is_torus():
        conn = flat_torus_connection(scenario, *flat)
        values = mu_offsets or tuple(0.0 for _ in range(scenario.action.rank))
        mu = constant_moment_map(scenario.action, tuple(values))
        return ScenarioSample(
            scenario, conn, mu, {"scenario": scenario.name, "flat": list(flat), "mu": list(values)}
        )
    conn = monopole_connection(scenario, degree)
    offset = mu_offsets[0] if mu_offsets else 0.0
    if scenario.name == "sphere2-trivial":
        mu = constant_moment_map(scenario.action, (float(offset),))
    else:
        mu = sphere_height_moment(scenario.action, degree, float(offset))
    return ScenarioSample(
        scenario, conn, mu, {"scenario": scenario.name, "degree": degree, "mu_offset": float(offset)}
    )


# ---------------------------------------------------------------------------
# Random gauges, shifts, points, directions
# ---------------------------------------------------------------------------

def random_gauge(scenario: ManifoldScenario, rng: np.random.Generator) -> GaugeTransform:
    if scenario.is_torus():
        n, m = int(rng.integers(-1, 2)), int(rng.integers(-1, 2))
        field = torus_trig_field(rng, n_terms=2, scale=0.3)

        def value(p):
            return np.exp(2j * np.pi * (n * p[0] + m * p[1]) + 1j * field.value(p))

        winding = OneForm(
            lambda chart, c: np.stack(
                [
                    np.full(np.shape(c[0]), 2j * np.pi * n),
                    np.full(np.shape(c[0]), 2j * np.pi * m),
                ],
                axis=0,
            ),
            lambda chart, c: np.zeros(np.shape(c[0]), dtype=complex),
            "imaginary",
        )
        log_derivative = winding + exact_one_form(scenario, field)
        return GaugeTransform(value, log_derivative, {"kind": "torus", "winding": [n, m]})
    field = sphere_poly_field(rng, scale=0.5)

    def value(p):
        return np.exp(1j * field.value(p))

    return GaugeTransform(value, exact_one_form(scenario, field), {"kind": "sphere"})


def random_closed_one_form(scenario: ManifoldScenario, rng: np.random.Generator) -> OneForm:
    """Random closed imaginary one-form: harmonic part plus an exact part."""
    if scenario.is_torus():
        c = rng.uniform(-0.9, 0.9, size=2)
        harmonic = OneForm(
            lambda chart, cc: np.stack(
                [
                    np.full(np.shape(cc[0]), 2j * np.pi * c[0]),
                    np.full(np.shape(cc[0]), 2j * np.pi * c[1]),
                ],
                axis=0,
            ),
            lambda chart, cc: np.zeros(np.shape(cc[0]), dtype=complex),
            "imaginary",
        )
        return harmonic + exact_one_form(scenario, torus_trig_field(rng))
    return exact_one_form(scenario, sphere_poly_field(rng))


def random_point(scenario: ManifoldScenario, rng: np.random.Generator) -> Array:
    if scenario.is_torus():
        return rng.uniform(0.0, 1.0, size=2)
    z = rng.uniform(-0.9, 0.9)
    phi = rng.uniform(-np.pi, np.pi)
    r = np.sqrt(1.0 - z ** 2)
    return np.array([r * np.cos(phi), r * np.sin(phi), z])


def random_lattice_vector(scenario: ManifoldScenario, rng: np.random.Generator, max_coeff: int = 2) -> Array:
    k = scenario.action.rank
    while True:
        gamma = rng.integers(-max_coeff, max_coeff + 1, size=k)
        if np.any(gamma):
            return gamma.astype(float)
