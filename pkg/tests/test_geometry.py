"""Atlas, action, and path invariants for the catalog scenarios."""

import numpy as np
import pytest

from linelift.errors import DomainError
from linelift.geometry import (
    generating_field,
    get_scenario,
    orbit_loop,
    pair_h1,
    reparametrized,
    torus_small_circle,
    validate_path,
)
from linelift.validation import scenario_invariant_checks

SCENARIOS = ["torus2-translate", "torus2-diag", "sphere2-rotate", "sphere2-trivial"]


@pytest.mark.parametrize("name", SCENARIOS)
def test_scenario_invariants(catalog, name):
    for result in scenario_invariant_checks(catalog[name]):
        assert result.passed, f"{name}: {result.name} residual {result.residual:.3e}"


def test_generating_field_translation(torus_translate):
    v = generating_field(torus_translate, np.array([1.0]), np.array([0.3, 0.7]))
    assert np.allclose(v, [1.0, 0.0])


def test_generating_field_fixed_pole(sphere_rotate):
    v = generating_field(sphere_rotate, np.array([1.0]), np.array([0.0, 0.0, 1.0]), chart="north")
    assert np.allclose(v, [0.0, 0.0], atol=1e-12)


def test_generating_field_equator_band(sphere_rotate):
    # period-1 normalization forces the azimuthal coefficient 2*pi
    v = generating_field(sphere_rotate, np.array([1.0]), np.array([1.0, 0.0, 0.0]), chart="bandE")
    assert np.allclose(v, [0.0, 2.0 * np.pi], atol=1e-12)


def test_generating_field_outside_chart(sphere_rotate):
    with pytest.raises(DomainError):
        generating_field(sphere_rotate, np.array([1.0]), np.array([0.0, 0.0, 1.0]), chart="bandE")


def test_generating_field_bad_direction_shape(sphere_rotate):
    with pytest.raises(ValueError):
        generating_field(sphere_rotate, np.array([1.0, 2.0]), np.array([0.0, 0.0, 1.0]))


def test_pair_h1_orbit_of_translation(torus_translate):
    loop = orbit_loop(torus_translate.atlas, torus_translate.action, np.array([1.0]), np.array([0.2, 0.9]))
    assert np.allclose(pair_h1(torus_translate, loop), [1.0, 0.0], atol=1e-10)


def test_pair_h1_contractible(torus_translate):
    loop = torus_small_circle(torus_translate.atlas, np.array([0.3, 0.4]))
    assert np.allclose(pair_h1(torus_translate, loop), [0.0, 0.0], atol=1e-10)


def test_pair_h1_sphere_empty(sphere_rotate):
    loop = orbit_loop(sphere_rotate.atlas, sphere_rotate.action, np.array([1.0]), np.array([1.0, 0.0, 0.0]))
    assert pair_h1(sphere_rotate, loop).shape == (0,)


def test_pair_h1_requires_closed(torus_translate):
    from linelift.geometry.paths import torus_open_segment

    path = torus_open_segment(torus_translate.atlas, np.array([0.1, 0.1]), np.array([0.4, 0.2]))
    with pytest.raises(ValueError):
        pair_h1(torus_translate, path)


def test_pair_h1_reparametrization_invariant(torus_diag):
    loop = orbit_loop(torus_diag.atlas, torus_diag.action, np.array([1.0, 1.0]), np.array([0.4, 0.15]))
    base = pair_h1(torus_diag, loop)

    def warp(t):
        return t * t * (3.0 - 2.0 * t)

    def d_warp(t):
        return 6.0 * t * (1.0 - t)

    warped = reparametrized(loop, warp, d_warp)
    assert np.max(np.abs(pair_h1(torus_diag, warped) - base)) < 1e-7


def test_orbit_homology_independent_of_base_point(torus_diag, rng):
    rows = []
    for _ in range(4):
        x = rng.uniform(0.0, 1.0, size=2)
        loop = orbit_loop(torus_diag.atlas, torus_diag.action, np.array([1.0, -2.0]), x)
        rows.append(pair_h1(torus_diag, loop))
    assert np.max(np.std(rows, axis=0)) < 1e-9
    assert np.allclose(rows[0], [1.0, -2.0], atol=1e-9)


def test_path_endpoints_validated(sphere_rotate):
    loop = orbit_loop(sphere_rotate.atlas, sphere_rotate.action, np.array([1.0]), np.array([0.6, 0.0, 0.8]))
    assert validate_path(sphere_rotate.atlas, loop) < 1e-12


def test_scenario_overrides_apply():
    sc = get_scenario("torus2-translate", {"line_steps": 64, "surface_grid": 32, "ode_steps": 128})
    assert sc.line_steps == 64
    assert sc.surface_grid == (32, 32)
    assert sc.ode_steps == 128


def test_unknown_scenario_rejected():
    with pytest.raises(KeyError):
        get_scenario("klein-bottle")
