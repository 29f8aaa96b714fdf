"""The four catalog scenarios: flat-torus translations and sphere rotations.

Each scenario bundles a chart atlas, a torus action, harmonic representatives
of H^1 with dual integer cycles, and quadrature-ready 2-cycles.  All sign and
scale conventions are fixed in CONVENTIONS.md; the invariant checks in
`validation` enforce them numerically.

    torus2-translate   S^1 on R^2/Z^2 by first-coordinate translation (b1=2, r=1)
    torus2-diag        T^2 on R^2/Z^2 by full translation              (b1=2, r=2)
    sphere2-rotate     S^1 on S^2 about the z-axis                     (b1=0, fixed poles)
    sphere2-trivial    trivial S^1 action on S^2 (control case)
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Mapping, Optional

import numpy as np

from ..errors import DomainError
from .actions import TorusAction, rotation_action, translation_action, trivial_action
from .charts import Atlas, sphere_atlas, torus_atlas, project_to_chart
from .forms import OneForm, TwoForm, constant_one_form
from .paths import CyclePatch, CycleSpec, PathSpec, torus_line_loop

Array = np.ndarray


@dataclass(frozen=True)
class ManifoldScenario:
    name: str
    dim: int
    ambient_dim: int
    atlas: Atlas
    action: TorusAction
    h1_basis: tuple[OneForm, ...]
    h1_dual_cycles: tuple[PathSpec, ...]
    two_cycles: tuple[CycleSpec, ...]
    betti1: int
    # deterministic interior sample points for validation, shape (d, n)
    sample_points: Array
    line_steps: int = 256
    surface_grid: tuple[int, int] = (128, 128)
    ode_steps: int = 2048
    average_grid: int = 32

    @property
    def fundamental_cycle(self) -> CycleSpec:
        return self.two_cycles[0]

    def preferred_chart(self, point: Array):
        return self.atlas.preferred_chart(point)

    def is_torus(self) -> bool:
        return self.ambient_dim == 2


def generating_field(
    scenario: ManifoldScenario, s: Array, x: Array, chart: Optional[str] = None
) -> Array:
    """Chart components of the vector field generated by direction s at x."""
    s = np.asarray(s, dtype=float)
    if s.shape != (scenario.action.rank,):
        raise ValueError(f"direction must have shape ({scenario.action.rank},)")
    ch = scenario.atlas.chart(chart) if chart else scenario.preferred_chart(x)
    if not ch.contains(x):
        raise DomainError(f"point outside chart {ch.name}")
    coords = ch.to_coords(x)
    ambient = scenario.action.ambient_field(s, x)
    return project_to_chart(ch, coords, ambient)


# ---------------------------------------------------------------------------
# Torus scenarios
# ---------------------------------------------------------------------------

def _torus_sample_points() -> Array:
    g = (np.arange(5) + 0.5) / 5.0 + 0.013
    xs, ys = np.meshgrid(g, g, indexing="ij")
    return np.mod(np.stack([xs.ravel(), ys.ravel()], axis=0), 1.0)


def _torus_fundamental_cycle() -> CycleSpec:
    def position(u, v):
        uu, vv = np.meshgrid(u, v, indexing="ij")
        return np.stack([uu, vv], axis=0)

    def tangents(u, v):
        shape = (len(u), len(v))
        du = np.stack([np.ones(shape), np.zeros(shape)], axis=0)
        dv = np.stack([np.zeros(shape), np.ones(shape)], axis=0)
        return du, dv

    patch = CyclePatch(
        chart="box0_0",
        u_range=(0.0, 1.0),
        v_range=(0.0, 1.0),
        position=position,
        tangents=tangents,
        u_rule="uniform",
        v_rule="uniform",
    )
    return CycleSpec(name="fundamental", patches=(patch,))


def _build_torus_scenario(name: str, action: TorusAction) -> ManifoldScenario:
    atlas = torus_atlas()
    dx = constant_one_form(1.0, 0.0, "real")
    dy = constant_one_form(0.0, 1.0, "real")
    loop_x = torus_line_loop(atlas, np.array([0.13, 0.37]), np.array([1.0, 0.0]))
    loop_y = torus_line_loop(atlas, np.array([0.13, 0.37]), np.array([0.0, 1.0]))
    return ManifoldScenario(
        name=name,
        dim=2,
        ambient_dim=2,
        atlas=atlas,
        action=action,
        h1_basis=(dx, dy),
        h1_dual_cycles=(loop_x, loop_y),
        two_cycles=(_torus_fundamental_cycle(),),
        betti1=2,
        sample_points=_torus_sample_points(),
    )


# ---------------------------------------------------------------------------
# Sphere scenarios
# ---------------------------------------------------------------------------

_CAP = 0.6  # colatitude where the surface quadrature hands over to polar charts


def _sphere_sample_points() -> Array:
    thetas = np.linspace(0.25, np.pi - 0.25, 7)
    phis = np.linspace(-np.pi + 0.1, np.pi - 0.3, 8)
    pts = []
    for i, th in enumerate(thetas):
        for ph in phis + 0.05 * i:
            pts.append([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])
    return np.array(pts).T


def _sphere_cap_patch(chart: str, theta_range: tuple[float, float]) -> CyclePatch:
    north = chart == "north"

    def position(u, v):
        th, ph = np.meshgrid(u, v, indexing="ij")
        if north:
            r = np.tan(th / 2.0)
            return np.stack([r * np.cos(ph), r * np.sin(ph)], axis=0)
        r = 1.0 / np.tan(th / 2.0)
        return np.stack([r * np.cos(ph), -r * np.sin(ph)], axis=0)

    def tangents(u, v):
        th, ph = np.meshgrid(u, v, indexing="ij")
        if north:
            dr = 0.5 / np.cos(th / 2.0) ** 2
            r = np.tan(th / 2.0)
            d_th = np.stack([dr * np.cos(ph), dr * np.sin(ph)], axis=0)
            d_ph = np.stack([-r * np.sin(ph), r * np.cos(ph)], axis=0)
        else:
            dr = -0.5 / np.sin(th / 2.0) ** 2
            r = 1.0 / np.tan(th / 2.0)
            d_th = np.stack([dr * np.cos(ph), -dr * np.sin(ph)], axis=0)
            d_ph = np.stack([-r * np.sin(ph), -r * np.cos(ph)], axis=0)
        return d_th, d_ph

    return CyclePatch(
        chart=chart,
        u_range=theta_range,
        v_range=(0.0, 2.0 * np.pi),
        position=position,
        tangents=tangents,
        u_rule="gauss",
        v_rule="uniform",
    )


def _sphere_band_patch() -> CyclePatch:
    def position(u, v):
        th, ph = np.meshgrid(u, v, indexing="ij")
        return np.stack([th, ph], axis=0)

    def tangents(u, v):
        shape = (len(u), len(v))
        du = np.stack([np.ones(shape), np.zeros(shape)], axis=0)
        dv = np.stack([np.zeros(shape), np.ones(shape)], axis=0)
        return du, dv

    return CyclePatch(
        chart="bandW",
        u_range=(_CAP, np.pi - _CAP),
        v_range=(0.0, 2.0 * np.pi),
        position=position,
        tangents=tangents,
        u_rule="gauss",
        v_rule="uniform",
    )


def _sphere_cycle() -> CycleSpec:
    return CycleSpec(
        name="sphere",
        patches=(
            _sphere_cap_patch("north", (0.0, _CAP)),
            _sphere_band_patch(),
            _sphere_cap_patch("south", (np.pi - _CAP, np.pi)),
        ),
    )


def sphere_area_form() -> TwoForm:
    """Round area form sin(theta) dtheta ^ dphi; integrates to 4*pi."""

    def coeff(chart, c):
        if chart in ("north", "south"):
            rho2 = c[0] ** 2 + c[1] ** 2
            return 4.0 / (1.0 + rho2) ** 2 + 0.0j
        return np.sin(c[0]) + 0.0j

    return TwoForm(coeff, value_type="real")


def _build_sphere_scenario(name: str, action: TorusAction) -> ManifoldScenario:
    return ManifoldScenario(
        name=name,
        dim=2,
        ambient_dim=3,
        atlas=sphere_atlas(),
        action=action,
        h1_basis=(),
        h1_dual_cycles=(),
        two_cycles=(_sphere_cycle(),),
        betti1=0,
        sample_points=_sphere_sample_points(),
    )


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

_BUILDERS: Mapping[str, Callable[[], ManifoldScenario]] = {
    "torus2-translate": lambda: _build_torus_scenario(
        "torus2-translate", translation_action(np.array([[1.0, 0.0]]), ("shift_x",))
    ),
    "torus2-diag": lambda: _build_torus_scenario(
        "torus2-diag",
        translation_action(np.array([[1.0, 0.0], [0.0, 1.0]]), ("shift_x", "shift_y")),
    ),
    "sphere2-rotate": lambda: _build_sphere_scenario("sphere2-rotate", rotation_action()),
    "sphere2-trivial": lambda: _build_sphere_scenario(
        "sphere2-trivial", trivial_action(3, ((0.0, 0.0, 1.0), (0.0, 0.0, -1.0)))
    ),
}

CATALOG = tuple(_BUILDERS)


def get_scenario(name: str, overrides: Optional[Mapping[str, object]] = None) -> ManifoldScenario:
    """Catalog lookup by identifier, with optional numeric overrides.

    Recognized override keys: line_steps, surface_grid, ode_steps, average_grid.
    """
    if name not in _BUILDERS:
        raise KeyError(f"unknown scenario {name!r}; catalog: {', '.join(CATALOG)}")
    scenario = _BUILDERS[name]()
    if overrides:
        fields = {}
        if "line_steps" in overrides:
            fields["line_steps"] = int(overrides["line_steps"])
        if "surface_grid" in overrides:
            g = overrides["surface_grid"]
            if isinstance(g, (int, float)):
                fields["surface_grid"] = (int(g), int(g))
            else:
                fields["surface_grid"] = (int(g[0]), int(g[1]))
        if "ode_steps" in overrides:
            fields["ode_steps"] = int(overrides["ode_steps"])
        if "average_grid" in overrides:
            fields["average_grid"] = int(overrides["average_grid"])
        if fields:
            scenario = replace(scenario, **fields)
    return scenario
