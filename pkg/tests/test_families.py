"""Random families stay inside the theory's hypotheses."""

import numpy as np

from linelift.cartan import EquivariantTwoForm, check_moment_equation
from linelift.families import (
    exact_one_form,
    latitude_profile_form,
    random_closed_one_form,
    random_gauge,
    random_valid_pair,
    sphere_poly_field,
    torus_trig_field,
)
from linelift.geometry.forms import exterior_derivative_fd
from linelift.validation import (
    check_analytic_derivative,
    check_gauge_consistency,
    check_one_form_overlap,
)


def test_exact_forms_are_global_and_closed(catalog, rng):
    for name, sc in catalog.items():
        field = torus_trig_field(rng) if sc.is_torus() else sphere_poly_field(rng)
        form = exact_one_form(sc, field)
        assert check_one_form_overlap(sc, form).passed, name
        assert check_analytic_derivative(sc, form).passed, name


def test_latitude_profile_global_with_analytic_d(sphere_rotate):
    form = latitude_profile_form(sphere_rotate, 0.8)
    assert check_one_form_overlap(sphere_rotate, form).passed
    assert check_analytic_derivative(sphere_rotate, form).passed


def test_random_pairs_satisfy_moment_equation(catalog, rng):
    for name, sc in catalog.items():
        for _ in range(2):
            sample = random_valid_pair(sc, rng)
            eq2 = EquivariantTwoForm.from_connection(sample.conn, sample.mu)
            res = check_moment_equation(eq2)
            assert res.passed, f"{name}: residual {res.residual:.3e}"


def test_random_gauges_consistent(catalog, rng):
    for name, sc in catalog.items():
        g = random_gauge(sc, rng)
        res = check_gauge_consistency(sc, g)
        assert res.passed, name
        assert res.detail["log_derivative_fd_residual"] < 1e-5


def test_random_closed_forms_closed(catalog, rng):
    for name, sc in catalog.items():
        eta = random_closed_one_form(sc, rng)
        for chart in sc.atlas:
            pts = sc.sample_points
            mask = chart.margin(pts) > 0.05
            if not np.any(mask):
                continue
            coords = chart.to_coords(pts[:, mask])
            assert np.max(np.abs(exterior_derivative_fd(eta, chart.name, coords))) < 1e-6, name
