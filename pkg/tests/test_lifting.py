"""Solver, classification, exponentiation, Hamiltonian and rationalization
pipelines against the worked catalog cases."""

import numpy as np
import pytest

from linelift.bundle import flat_torus_connection, get_bundle, monopole_connection, shift_connection
from linelift.cartan import EquivariantTwoForm
from linelift.errors import IntegralityError
from linelift.families import random_point, random_valid_pair, standard_pair
from linelift.geometry.scenarios import sphere_area_form
from linelift.lifting import (
    LiftedAction,
    TotalPoint,
    classify_lifts,
    connection_invariance_residual,
    exponentiate_lift,
    hamiltonian_power_lift,
    harmonic_shift_form,
    orbit_class_map,
    rationalize_class,
    solve_lifting_shift,
)
from linelift.transport import (
    MomentMapData,
    constant_moment_map,
    monodromy_formula,
    sphere_height_moment,
)


# ---------------------------------------------------------------------------
# Orbit-class map
# ---------------------------------------------------------------------------

def test_ocm_translate(torus_translate):
    ocm = orbit_class_map(torus_translate)
    assert ocm.matrix.tolist() == [[1, 0]]
    assert ocm.rank == 1


def test_ocm_diag(torus_diag):
    ocm = orbit_class_map(torus_diag)
    assert ocm.matrix.tolist() == [[1, 0], [0, 1]]
    assert ocm.rank == 2


def test_ocm_sphere(sphere_rotate, sphere_trivial):
    for sc in (sphere_rotate, sphere_trivial):
        ocm = orbit_class_map(sc)
        assert ocm.rank == 0
        assert ocm.matrix.shape == (1, 0)
        assert ocm.lambda0_basis.tolist() == [[1]]


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------

def test_solver_translate_worked_example(torus_translate):
    conn = flat_torus_connection(torus_translate, 0.4, 0.0)
    mu = constant_moment_map(torus_translate.action, (0.0,))
    torus = solve_lifting_shift(conn, mu)
    assert torus.dimension == 1
    # dx-component of the solving shift is -0.4 mod 1
    assert abs((torus.particular[0] + 0.4 + 0.5) % 1.0 - 0.5) < 1e-9
    # kernel spanned by the dy direction
    assert abs(abs(torus.kernel_basis[0][1]) - 1.0) < 1e-12
    assert abs(torus.kernel_basis[0][0]) < 1e-12


def test_solver_diag_unique(torus_diag):
    conn = flat_torus_connection(torus_diag, 0.3, -0.45)
    mu = constant_moment_map(torus_diag.action, (0.0, 0.0))
    torus = solve_lifting_shift(conn, mu)
    assert torus.dimension == 0
    expected = np.array([-0.3, 0.45])
    assert np.max(np.abs((torus.particular - expected + 0.5) % 1.0 - 0.5)) < 1e-9


def test_solver_sphere_trivially_solved(sphere_rotate):
    conn = monopole_connection(sphere_rotate, 1)
    mu = sphere_height_moment(sphere_rotate.action, 1, 0.0)
    torus = solve_lifting_shift(conn, mu)
    assert torus.dimension == 0
    assert torus.residuals["kernel_generators"] < 1e-9
    assert torus.particular.shape == (0,)


def test_solver_members_all_trivial_monodromy(torus_translate, rng):
    conn = flat_torus_connection(torus_translate, 0.63, 0.21)
    mu = constant_moment_map(torus_translate.action, (1.0,))
    torus = solve_lifting_shift(conn, mu)
    x = random_point(torus_translate, rng)
    for params in (None, np.array([0.3]), np.array([-1.7])):
        member = torus.member(params)
        m = monodromy_formula(member, mu, torus_translate.action, np.array([1.0]), x)
        assert abs(m.phase - 1.0) < 1e-9


def test_solver_completeness_gap(torus_translate, rng):
    """Connections off the family by phase gap delta have |M - 1| >= delta/2."""
    conn = flat_torus_connection(torus_translate, 0.4, 0.0)
    mu = constant_moment_map(torus_translate.action, (0.0,))
    torus = solve_lifting_shift(conn, mu)
    solved = torus.member()
    x = random_point(torus_translate, rng)
    for delta in (0.1, 0.5, 1.0, 2.0, np.pi):
        off = shift_connection(solved, harmonic_shift_form(torus_translate, np.array([delta / (2 * np.pi), 0.0])))
        m = monodromy_formula(off, mu, torus_translate.action, np.array([1.0]), x)
        assert abs(m.phase - 1.0) >= delta / 2.0 - 1e-9


def test_solver_rejects_nonintegral(sphere_rotate):
    conn = monopole_connection(sphere_rotate, 1)
    mu = sphere_height_moment(sphere_rotate.action, 1, 0.5)
    with pytest.raises(IntegralityError):
        solve_lifting_shift(conn, mu)


def test_solver_dimension_matches_formula(catalog):
    expected = {
        "torus2-translate": 1,
        "torus2-diag": 0,
        "sphere2-rotate": 0,
        "sphere2-trivial": 0,
    }
    for name, sc in catalog.items():
        pair = standard_pair(sc, degree=0 if sc.is_torus() else 1)
        torus = solve_lifting_shift(pair.conn, pair.mu)
        ocm = orbit_class_map(sc)
        assert torus.dimension == sc.betti1 - ocm.rank == expected[name]


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def test_classify_translate(torus_translate):
    pair = standard_pair(torus_translate, flat=(0.4, 0.0))
    eq2 = EquivariantTwoForm.from_connection(pair.conn, pair.mu)
    rep = classify_lifts(torus_translate, pair.conn.bundle, eq2, conn=pair.conn)
    assert rep.exists and rep.dimension == 1 and rep.betti1 == 2 and rep.rank == 1
    assert rep.lifting_torus is not None
    assert "integer offsets Z^1" in rep.mu_shift_note


def test_classify_no_lift_half_integer(sphere_rotate):
    pair = standard_pair(sphere_rotate, degree=1, mu_offsets=(0.5,))
    eq2 = EquivariantTwoForm.from_connection(pair.conn, pair.mu)
    rep = classify_lifts(sphere_rotate, pair.conn.bundle, eq2, conn=pair.conn)
    assert not rep.exists
    assert rep.lifting_torus is None


def test_classify_sphere_integer(sphere_rotate):
    pair = standard_pair(sphere_rotate, degree=1, mu_offsets=(1.0,))
    eq2 = EquivariantTwoForm.from_connection(pair.conn, pair.mu)
    rep = classify_lifts(sphere_rotate, pair.conn.bundle, eq2, conn=pair.conn)
    assert rep.exists and rep.dimension == 0


# ---------------------------------------------------------------------------
# Exponentiation
# ---------------------------------------------------------------------------

def test_exponentiate_trivial_identity(torus_translate):
    pair = standard_pair(torus_translate)
    y = TotalPoint(np.array([0.25, 0.7]), np.exp(0.3j))
    out = exponentiate_lift(pair.conn, pair.mu, np.array([1.0]), y)
    assert np.max(np.abs(out.point - y.point)) < 1e-12
    assert abs(out.fiber - y.fiber) < 1e-10


def test_exponentiate_constant_moment_phase(torus_translate):
    c = 2.0
    pair = standard_pair(torus_translate, mu_offsets=(c,))
    y = TotalPoint(np.array([0.25, 0.7]), 1.0 + 0.0j)
    half = exponentiate_lift(pair.conn, pair.mu, np.array([0.5]), y)
    # half-way along the integer direction the fiber has turned by pi * c... :
    # phase rate is 2*pi*c*s with s = 0.5 over unit time
    assert abs(half.fiber - np.exp(2j * np.pi * c * 0.5)) < 1e-9


def test_exponentiate_covers_base_action(sphere_rotate, rng):
    pair = standard_pair(sphere_rotate, degree=1)
    y = TotalPoint(random_point(sphere_rotate, rng), 1.0 + 0.0j)
    s = np.array([0.37])
    out = exponentiate_lift(pair.conn, pair.mu, s, y)
    assert np.max(np.abs(out.point - sphere_rotate.action.flow(s, 1.0, y.point))) < 1e-12


def test_exponentiate_fiber_linearity(sphere_rotate, rng):
    pair = standard_pair(sphere_rotate, degree=2)
    x = random_point(sphere_rotate, rng)
    s = np.array([0.61])
    one = exponentiate_lift(pair.conn, pair.mu, s, TotalPoint(x, 1.0 + 0.0j))
    other = exponentiate_lift(pair.conn, pair.mu, s, TotalPoint(x, np.exp(1.1j)))
    assert abs(other.fiber / one.fiber - np.exp(1.1j)) < 1e-9


def test_group_law(torus_diag, rng):
    sample = random_valid_pair(torus_diag, rng)
    y = TotalPoint(random_point(torus_diag, rng), 1.0 + 0.0j)
    s1 = rng.uniform(-1.0, 1.0, size=2)
    s2 = rng.uniform(-1.0, 1.0, size=2)
    chained = exponentiate_lift(sample.conn, sample.mu, s2, exponentiate_lift(sample.conn, sample.mu, s1, y))
    direct = exponentiate_lift(sample.conn, sample.mu, s1 + s2, y)
    assert np.max(np.abs(chained.point - direct.point)) < 1e-10
    assert abs(chained.fiber - direct.fiber) < 1e-6


def test_lattice_periodicity_iff_solved(torus_translate, rng):
    mu = constant_moment_map(torus_translate.action, (0.0,))
    conn = flat_torus_connection(torus_translate, 0.4, 0.0)
    y = TotalPoint(random_point(torus_translate, rng), 1.0 + 0.0j)
    # unsolved: fiber misses by exactly the monodromy phase
    out = exponentiate_lift(conn, mu, np.array([1.0]), y)
    predicted = monodromy_formula(conn, mu, torus_translate.action, np.array([1.0]), y.point).phase
    assert abs(out.fiber - predicted) < 1e-9
    assert abs(predicted - 1.0) > 0.9  # exp(-0.8 pi i) is far from 1
    # solved: identity
    torus = solve_lifting_shift(conn, mu)
    out2 = exponentiate_lift(torus.member(), mu, np.array([1.0]), y)
    assert abs(out2.fiber - 1.0) < 1e-9


# ---------------------------------------------------------------------------
# Hamiltonian pipeline
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def sphere_fast():
    from linelift.geometry import get_scenario

    return get_scenario("sphere2-rotate", {"ode_steps": 256, "average_grid": 12})


@pytest.mark.parametrize("k,d,expected", [(1, 1, 1.0), (1, 2, 2.0), (2, 1, 2.0)])
def test_hamiltonian_weights(sphere_fast, k, d, expected):
    bundle = get_bundle(sphere_fast, k)
    conn = monopole_connection(sphere_fast, k)
    rep = hamiltonian_power_lift(sphere_fast, bundle, conn, d, n_grid=12)
    assert rep.weight_difference == pytest.approx(expected, abs=1e-9)
    assert rep.rank == 0
    assert rep.averaging_residual < 1e-6
    assert rep.invariance_residual < 1e-6


def test_hamiltonian_trivial_bundle(sphere_fast):
    bundle = get_bundle(sphere_fast, 0)
    conn = monopole_connection(sphere_fast, 0)
    rep = hamiltonian_power_lift(sphere_fast, bundle, conn, 1, n_grid=12)
    assert rep.weight_difference == pytest.approx(0.0, abs=1e-9)
    assert rep.weights == ((0.0,), (0.0,))


def test_hamiltonian_requires_rotation_scenario(torus_translate):
    bundle = get_bundle(torus_translate, 0)
    conn = flat_torus_connection(torus_translate, 0.1, 0.0)
    with pytest.raises(ValueError):
        hamiltonian_power_lift(torus_translate, bundle, conn, 1)


def test_lifted_action_preserves_connection(sphere_rotate):
    """transport-then-act equals act-then-transport for the standard pair."""
    pair = standard_pair(sphere_rotate, degree=1)
    lift = LiftedAction(conn=pair.conn, mu=pair.mu)
    from linelift.geometry.paths import sphere_open_arc

    arc = sphere_open_arc(sphere_rotate.atlas, (0.8, 2.1), (-0.5, 1.3))
    assert connection_invariance_residual(lift, arc, np.array([0.3])) < 1e-8


# ---------------------------------------------------------------------------
# Rationalization
# ---------------------------------------------------------------------------

def _classical_sphere_moment(scenario, scale):
    def comp(pts):
        return 2.0 * np.pi * scale * pts[2]

    return MomentMapData(scenario.action, (comp,), {"kind": "classical"})


def test_rationalize_integer_period_untouched(sphere_rotate):
    omega = sphere_area_form()  # period 4*pi = 2*pi*2
    mu = _classical_sphere_moment(sphere_rotate, 1.0)
    res = rationalize_class(sphere_rotate, omega, mu, 1e-2)
    assert res.ok and res.k == 1
    assert res.rho == pytest.approx(1.0, abs=1e-12)
    assert res.period_over_2pi.numerator == 2


def test_rationalize_sqrt2(sphere_rotate):
    scale = np.sqrt(2.0)
    omega = scale * sphere_area_form()
    mu = _classical_sphere_moment(sphere_rotate, scale)
    res = rationalize_class(sphere_rotate, omega, mu, 1e-2)
    assert res.ok
    assert res.sup_change < 1e-2
    exact = res.k * res.period_over_2pi
    assert exact.denominator == 1
    from linelift.geometry.calculus import integrate_two_form

    measured = integrate_two_form(res.omega, sphere_rotate.fundamental_cycle).real / (2.0 * np.pi)
    assert abs(measured * res.k - round(measured * res.k)) < 1e-9
    # snapped fixed-point values lie on the 2*pi/k grid
    for p in sphere_rotate.action.fixed_point_arrays():
        v = float(np.real(res.mu.components[0](p)))
        assert abs(v * res.k / (2.0 * np.pi) - round(v * res.k / (2.0 * np.pi))) < 1e-9


def test_rationalize_loose_epsilon_gives_k1(sphere_rotate):
    omega = np.sqrt(2.0) * sphere_area_form()
    mu = _classical_sphere_moment(sphere_rotate, np.sqrt(2.0))
    res = rationalize_class(sphere_rotate, omega, mu, 10.0)
    assert res.ok and res.k == 1


def test_rationalize_reports_achievable_bound(sphere_rotate):
    omega = np.sqrt(2.0) * sphere_area_form()
    mu = _classical_sphere_moment(sphere_rotate, np.sqrt(2.0))
    res = rationalize_class(sphere_rotate, omega, mu, 1e-12, max_denominator=3)
    assert not res.ok
    assert res.k == 0
    assert res.achievable_bound > 1e-12


def test_rationalize_rejects_bad_epsilon(sphere_rotate):
    with pytest.raises(ValueError):
        rationalize_class(sphere_rotate, sphere_area_form(), _classical_sphere_moment(sphere_rotate, 1.0), 0.0)
