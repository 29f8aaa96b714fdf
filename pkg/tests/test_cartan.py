"""Degree-2 equivariant checks: moment equation, restriction, integrality."""

import numpy as np
import pytest

from linelift.bundle import curvature, flat_torus_connection, monopole_connection, shift_connection
from linelift.cartan import (
    EquivariantTwoForm,
    cartan_exact_pair,
    check_alpha_invariance,
    check_integrality,
    check_moment_equation,
    restrict_class,
    shift_moment_components,
)
from linelift.families import latitude_profile_form, random_valid_pair
from linelift.transport import MomentMapData, constant_moment_map, sphere_height_moment


def _pair(scenario, conn, mu):
    return EquivariantTwoForm.from_connection(conn, mu)


def test_flat_pair_residual_zero(torus_translate):
    conn = flat_torus_connection(torus_translate, 0.0, 0.0)
    mu = constant_moment_map(torus_translate.action, (0.0,))
    assert check_moment_equation(_pair(torus_translate, conn, mu)).residual == 0.0


@pytest.mark.parametrize("k", [1, 2, -1])
def test_monopole_pair_satisfies_moment_equation(sphere_rotate, k):
    conn = monopole_connection(sphere_rotate, k)
    mu = sphere_height_moment(sphere_rotate.action, k, 0.0)
    res = check_moment_equation(_pair(sphere_rotate, conn, mu))
    assert res.passed and res.residual < 1e-6


def test_perturbed_moment_fails_with_predicted_scale(sphere_rotate):
    conn = monopole_connection(sphere_rotate, 1)
    eps = 0.1

    def bad(pts):
        return 0.5 * (1.0 + pts[2]) + eps * pts[2]  # adds eps * cos(theta)

    mu = MomentMapData(sphere_rotate.action, (bad,), {"kind": "perturbed"})
    res = check_moment_equation(_pair(sphere_rotate, conn, mu))
    assert not res.passed
    # residual is max |d(eps * cos theta)| over the sampled frame, order eps
    assert 0.3 * eps < res.residual < 3.0 * eps


def test_alpha_invariance(sphere_rotate):
    conn = monopole_connection(sphere_rotate, 2)
    assert check_alpha_invariance(sphere_rotate, curvature(conn)).passed


def test_restrict_class_flat(torus_translate):
    conn = flat_torus_connection(torus_translate, 0.3, 0.3)
    mu = constant_moment_map(torus_translate.action, (0.0,))
    _, periods = restrict_class(_pair(torus_translate, conn, mu))
    assert periods == pytest.approx((0.0,), abs=1e-9)


@pytest.mark.parametrize("k", [1, 2, -2])
def test_restrict_class_monopole(sphere_rotate, k):
    conn = monopole_connection(sphere_rotate, k)
    mu = sphere_height_moment(sphere_rotate.action, k, 0.0)
    _, periods = restrict_class(_pair(sphere_rotate, conn, mu))
    assert periods[0] == pytest.approx(k, abs=1e-6)


def test_restrict_class_invariant_under_exact_shift(sphere_rotate):
    conn = monopole_connection(sphere_rotate, 1)
    mu = sphere_height_moment(sphere_rotate.action, 1, 0.0)
    base = restrict_class(_pair(sphere_rotate, conn, mu))[1]
    eta = latitude_profile_form(sphere_rotate, 0.4)
    shifted_conn = shift_connection(conn, eta)
    shifted_mu = shift_moment_components(sphere_rotate, mu, eta)
    shifted = restrict_class(_pair(sphere_rotate, shifted_conn, shifted_mu))[1]
    assert abs(base[0] - shifted[0]) < 1e-6


def test_exact_shift_preserves_monodromy(sphere_rotate, rng):
    """The equivariant-exact shift changes (conn, mu) but not the monodromy."""
    from linelift.families import random_point
    from linelift.transport import monodromy_formula

    conn = monopole_connection(sphere_rotate, 1)
    mu = sphere_height_moment(sphere_rotate.action, 1, 0.0)
    eta = latitude_profile_form(sphere_rotate, 0.35)
    conn2 = shift_connection(conn, eta)
    mu2 = shift_moment_components(sphere_rotate, mu, eta)
    for _ in range(4):
        x = random_point(sphere_rotate, rng)
        a = monodromy_formula(conn, mu, sphere_rotate.action, np.array([1.0]), x)
        b = monodromy_formula(conn2, mu2, sphere_rotate.action, np.array([1.0]), x)
        assert abs(a.phase - b.phase) < 1e-9


def test_dg_squared_witness(sphere_rotate, torus_diag, rng):
    """Applying the equivariant differential to an invariant one-form gives a
    pair that is closed identically."""
    pair = cartan_exact_pair(sphere_rotate, latitude_profile_form(sphere_rotate, 0.7))
    assert check_moment_equation(pair).passed
    from linelift.geometry import constant_one_form

    pair2 = cartan_exact_pair(torus_diag, constant_one_form(2j * np.pi * 0.3, 2j * np.pi * 0.8, "imaginary"))
    assert check_moment_equation(pair2).passed


def test_integrality_monopole_pass(sphere_rotate):
    conn = monopole_connection(sphere_rotate, 1)
    mu = sphere_height_moment(sphere_rotate.action, 1, 0.0)
    rep = check_integrality(_pair(sphere_rotate, conn, mu), conn.bundle)
    assert rep.passed
    assert rep.fixed_point_values == ((1.0,), (0.0,))


def test_integrality_half_integer_fails_with_offenders(sphere_rotate):
    conn = monopole_connection(sphere_rotate, 1)
    mu = sphere_height_moment(sphere_rotate.action, 1, 0.5)
    rep = check_integrality(_pair(sphere_rotate, conn, mu), conn.bundle)
    assert not rep.passed
    assert rep.mu_residual == pytest.approx(0.5, abs=1e-9)
    assert any("not an integer" in o for o in rep.offenders)


def test_integrality_trivial_class_certificate(torus_translate):
    conn = flat_torus_connection(torus_translate, 0.4, 0.0)
    mu = constant_moment_map(torus_translate.action, (0.77,))
    rep = check_integrality(_pair(torus_translate, conn, mu))
    assert rep.passed
    assert "no fixed points" in rep.note


def test_integrality_verdict_stable_under_harmonic_shift(torus_translate):
    """Solver shifts keep the curvature, so the certificate cannot change."""
    from linelift.lifting import harmonic_shift_form

    conn = flat_torus_connection(torus_translate, 0.4, 0.0)
    mu = constant_moment_map(torus_translate.action, (0.0,))
    base = check_integrality(_pair(torus_translate, conn, mu)).passed
    shifted = shift_connection(conn, harmonic_shift_form(torus_translate, np.array([0.33, -1.2])))
    after = check_integrality(_pair(torus_translate, shifted, mu)).passed
    assert base == after == True


def test_declared_degree_mismatch_detected(sphere_rotate):
    conn = monopole_connection(sphere_rotate, 2)
    mu = sphere_height_moment(sphere_rotate.action, 2, 0.0)
    from linelift.bundle import get_bundle

    wrong_bundle = get_bundle(sphere_rotate, 1)
    rep = check_integrality(_pair(sphere_rotate, conn, mu), wrong_bundle)
    assert not rep.passed
    assert any("declared degree" in o for o in rep.offenders)


def test_random_pairs_are_valid(catalog, rng):
    for name, sc in catalog.items():
        sample = random_valid_pair(sc, rng)
        eq2 = EquivariantTwoForm.from_connection(sample.conn, sample.mu)
        assert check_moment_equation(eq2).passed, name
        assert check_alpha_invariance(sc, eq2.alpha).passed, name
