"""The constructive core: orbit-class map, the trivial-monodromy connection
solver, lift classification, exponentiation of lifts, and the Hamiltonian and
rationalization pipelines.

The classifying data for a rank-k action on a surface with first Betti number
b1 is the integer orbit-class matrix C (row j = periods of the harmonic basis
over orbits of lattice generator j).  Shifting a connection by the closed form
eta(c) = 2*pi*i * sum_m c_m beta_m multiplies the monodromy of generator j by
exp(-2*pi*i (C c)_j), and integer coefficient vectors are gauge shifts, so
connections with all monodromies trivial form an affine family of dimension
b1 - rank(C) in H^1 coefficients modulo the integer lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .bundle import (
    ConnectionData,
    LineBundleData,
    average_one_form,
    curvature,
    monopole_connection,
    one_form_difference,
    shift_connection,
    tensor_power,
)
from .cartan import (
    EquivariantTwoForm,
    IntegralityReport,
    check_alpha_invariance,
    check_integrality,
    check_moment_equation,
    shift_moment_components,
)
from .errors import AccuracyError, CertificateError, IntegralityError
from .geometry.calculus import integrate_two_form, pair_h1
from .geometry.charts import push_to_ambient
from .geometry.forms import OneForm, TwoForm
from .geometry.paths import (
    PathSpec,
    mapped_path,
    orbit_loop,
    path_from_global,
    path_start_point,
)
from .geometry.scenarios import ManifoldScenario
from .lattice import LatticeSplit, split_lattice
from .reports import CheckResult
from .transport import MomentMapData, MonodromyResult, monodromy_formula, parallel_transport

Array = np.ndarray


# ---------------------------------------------------------------------------
# Orbit-class map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitClassMap:
    matrix_real: Array  # (k, b1) measured periods
    matrix: Array  # integer rounding
    rank: int
    split: LatticeSplit
    base_point: tuple[float, ...]

    @property
    def lambda0_basis(self) -> Array:
        return self.split.kernel_basis

    @property
    def lambda1_basis(self) -> Array:
        return self.split.complement_basis


def orbit_class_map(
    scenario: ManifoldScenario, base_point: Optional[Array] = None, tol: float = 1e-6
) -> OrbitClassMap:
    """Homology classes of generator orbits, split over the integers."""
    action = scenario.action
    if base_point is None:
        base_point = scenario.sample_points[:, 2]
    rows = []
    for j in range(action.rank):
        loop = orbit_loop(scenario.atlas, action, np.eye(action.rank)[j], base_point)
        rows.append(pair_h1(scenario, loop))
    matrix_real = np.array(rows).reshape(action.rank, scenario.betti1)
    matrix = np.round(matrix_real).astype(np.int64)
    drift = float(np.max(np.abs(matrix_real - matrix))) if matrix_real.size else 0.0
    if drift > tol:
        raise IntegralityError(
            f"orbit classes are not integral within {tol:g}: max drift {drift:.3e}"
        )
    split = split_lattice(matrix)
    return OrbitClassMap(
        matrix_real=matrix_real,
        matrix=matrix,
        rank=split.rank,
        split=split,
        base_point=tuple(np.asarray(base_point, dtype=float).tolist()),
    )


# ---------------------------------------------------------------------------
# Harmonic shifts and the lifting torus
# ---------------------------------------------------------------------------

def harmonic_shift_form(scenario: ManifoldScenario, coeffs: Array) -> OneForm:
    """Closed imaginary one-form 2*pi*i * sum_m c_m beta_m.

    Integer coefficient vectors are logarithmic derivatives of global gauge
    transformations, so they act trivially on gauge classes.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    form = None
    for c, beta in zip(coeffs, scenario.h1_basis):
        term = (2j * np.pi * float(c)) * beta
        form = term if form is None else form + term
    if form is None:
        from .geometry.forms import zero_one_form

        form = zero_one_form()
    return form


@dataclass(frozen=True)
class LiftingTorus:
    scenario: ManifoldScenario
    base_conn: ConnectionData
    mu: MomentMapData
    ocm: OrbitClassMap
    particular: Array  # (b1,) harmonic coefficients of the solving shift
    kernel_basis: Array  # (dim, b1) real basis of the continuous family
    dimension: int
    residuals: dict

    def member(self, params: Optional[Array] = None) -> ConnectionData:
        c = self.particular.copy()
        if params is not None and self.dimension:
            c = c + np.asarray(params, dtype=float) @ self.kernel_basis
        eta = harmonic_shift_form(self.scenario, c)
        return shift_connection(self.base_conn, eta, note="lifting-shift")

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "particular": [float(v) for v in self.particular],
            "kernel_basis": [[float(v) for v in row] for row in self.kernel_basis],
            "residuals": {k: float(v) for k, v in self.residuals.items()},
        }


def _real_kernel_basis(matrix: Array) -> Array:
    """Orthonormal basis of {v : C v = 0} via SVD; deterministic for fixed C."""
    k, m = matrix.shape
    if m == 0:
        return np.zeros((0, 0))
    if k == 0 or not np.any(matrix):
        return np.eye(m)
    _, s, vt = np.linalg.svd(matrix.astype(float))
    rank = int(np.sum(s > 1e-9 * max(1.0, s[0])))
    return vt[rank:]


def solve_lifting_shift(
    conn: ConnectionData,
    mu: MomentMapData,
    ocm: Optional[OrbitClassMap] = None,
    tol: float = 1e-6,
    validate: bool = True,
) -> LiftingTorus:
    """Affine family of curvature-preserving shifts with trivial monodromy.

    Requires the moment equation and the integrality certificate; verifies
    that kernel-lattice generators already have trivial monodromy, solves the
    linear system over the complement basis, and re-verifies every standard
    generator of the solved connection.
    """
    scenario = conn.scenario
    action = scenario.action
    if validate:
        eq2 = EquivariantTwoForm.from_connection(conn, mu)
        mres = check_moment_equation(eq2)
        if not mres.passed:
            raise IntegralityError(
                f"moment equation fails (residual {mres.residual:.3e}); cannot solve"
            )
        integ = check_integrality(eq2, conn.bundle)
        if not integ.passed:
            raise IntegralityError(
                "integrality certificate fails: " + "; ".join(integ.offenders)
            )
    if ocm is None:
        ocm = orbit_class_map(scenario)

    base_point = np.array(ocm.base_point)
    residuals: dict = {}

    # kernel-lattice generators must already be trivial (orbits bound)
    worst_kernel = 0.0
    for gamma in ocm.lambda0_basis:
        m = monodromy_formula(conn, mu, action, gamma.astype(float), base_point)
        worst_kernel = max(worst_kernel, abs(m.phase - 1.0))
    residuals["kernel_generators"] = worst_kernel
    if worst_kernel > tol:
        raise CertificateError(
            f"a kernel-lattice generator has monodromy off by {worst_kernel:.3e} "
            "despite the integrality certificate"
        )

    b1 = scenario.betti1
    if ocm.rank == 0:
        particular = np.zeros(b1)
    else:
        rows = []
        rhs = []
        for f in ocm.lambda1_basis:
            m = monodromy_formula(conn, mu, action, f.astype(float), base_point)
            theta = float(np.angle(m.phase))
            rows.append(f.astype(float) @ ocm.matrix.astype(float))
            rhs.append(theta / (2.0 * np.pi))
        R = np.array(rows)
        b = np.array(rhs)
        particular, res, *_ = np.linalg.lstsq(R, b, rcond=None)
        predicted = R @ particular - b
        if float(np.max(np.abs(predicted))) > 1e-9:
            raise IntegralityError(
                "monodromy log-phases are inconsistent with the orbit-class matrix; "
                "the input class cannot be integral"
            )
    kernel = _real_kernel_basis(ocm.matrix.astype(float))
    dimension = kernel.shape[0]
    if dimension != b1 - ocm.rank:
        raise AccuracyError(
            f"kernel dimension {dimension} does not match b1 - r = {b1 - ocm.rank}"
        )

    torus = LiftingTorus(
        scenario=scenario,
        base_conn=conn,
        mu=mu,
        ocm=ocm,
        particular=particular,
        kernel_basis=kernel,
        dimension=dimension,
        residuals=residuals,
    )

    solved = torus.member()
    worst = 0.0
    for j in range(action.rank):
        m = monodromy_formula(solved, mu, action, np.eye(action.rank)[j], base_point)
        worst = max(worst, abs(m.phase - 1.0))
    residuals["solved_generators"] = worst
    if worst > tol:
        raise AccuracyError(
            f"solved connection still has monodromy defect {worst:.3e} > {tol:g}"
        )
    return torus


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationReport:
    scenario: str
    betti1: int
    rank: int
    dimension: int
    exists: bool
    integrality: IntegralityReport
    moment_check: CheckResult
    lifting_torus: Optional[LiftingTorus]
    mu_shift_note: str
    topology_note: str

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "betti1": self.betti1,
            "rank": self.rank,
            "dimension": self.dimension,
            "exists": self.exists,
            "integrality": self.integrality.to_dict(),
            "moment_check": self.moment_check.to_dict(),
            "lifting_torus": self.lifting_torus.to_dict() if self.lifting_torus else None,
            "mu_shift_note": self.mu_shift_note,
            "topology_note": self.topology_note,
        }


def classify_lifts(
    scenario: ManifoldScenario,
    bundle: LineBundleData,
    eq2: EquivariantTwoForm,
    conn: Optional[ConnectionData] = None,
    tol: float = 1e-6,
) -> ClassificationReport:
    """Existence verdict and the size of the lift family.

    The continuous part is a torus of dimension b1 - r; the discrete part is
    the family of integer offsets added to the moment components (listed, not
    claimed to be a canonical product decomposition).  Non-integral input
    yields the verdict "no lift".
    """
    moment_check = check_moment_equation(eq2)
    integrality = check_integrality(eq2, bundle)
    ocm = orbit_class_map(scenario)
    dimension = scenario.betti1 - ocm.rank
    exists = bool(moment_check.passed and integrality.passed)
    torus = None
    if exists and conn is not None:
        torus = solve_lifting_shift(conn, eq2.mu, ocm, tol=tol, validate=False)
    k = scenario.action.rank
    return ClassificationReport(
        scenario=scenario.name,
        betti1=scenario.betti1,
        rank=ocm.rank,
        dimension=dimension,
        exists=exists,
        integrality=integrality,
        moment_check=moment_check,
        lifting_torus=torus,
        mu_shift_note=(
            f"discrete lift family: integer offsets Z^{k} added to the moment components "
            "(each offset changes the fixed-point weights by that integer)"
        ),
        topology_note="orbit-image lattice is torsion-free for every catalog surface, so the torsion-intersection condition holds trivially",
    )


# ---------------------------------------------------------------------------
# Exponentiation of the lift
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TotalPoint:
    """Point of the total space: base point plus unit fiber coordinate in the
    preferred chart's frame."""

    point: Array
    fiber: complex


def _flow_path(scenario: ManifoldScenario, s: Array, x: Array) -> PathSpec:
    action = scenario.action

    def position_global(t):
        return action.flow(s, t, x)

    def velocity_ambient(t):
        return action.ambient_field(s, position_global(t))

    pieces = 8 * max(1, int(np.ceil(np.max(np.abs(s)))) if s.size else 1)
    breaks = np.linspace(0.0, 1.0, pieces + 1)
    return path_from_global(scenario.atlas, position_global, velocity_ambient, breaks, closed=False)


def _lifted_log_phase(
    conn: ConnectionData, mu: MomentMapData, s: Array, path: PathSpec, n_steps: int
) -> float:
    """Fiber log-phase of the lifted flow along a (not necessarily closed)
    flow path, preferred-frame to preferred-frame."""
    scenario = conn.scenario
    atlas = scenario.atlas
    segs = path.segments
    start = path_start_point(atlas, path)
    end = atlas.chart(segs[-1].chart).from_coords(segs[-1].position(np.array([segs[-1].t1]))[:, 0])
    psi = 0.0
    # convert from the preferred frame at the start into the first segment chart
    pref0 = atlas.preferred_chart(start)
    if pref0.name != segs[0].chart:
        g = conn.bundle.transition(pref0.name, segs[0].chart, start)
        psi += float(np.angle(complex(g)))
    spans = [seg.t1 - seg.t0 for seg in segs]
    total_span = sum(spans)
    for i, seg in enumerate(segs):
        n = max(1, int(round(n_steps * spans[i] / total_span)))
        t = np.linspace(seg.t0, seg.t1, 2 * n + 1)
        coords = seg.position(t)
        vel = seg.velocity(t)
        a_vals = conn.a(seg.chart, coords)
        pts = atlas.chart(seg.chart).from_coords(coords)
        q = np.imag(-np.sum(a_vals * vel, axis=0)) + 2.0 * np.pi * mu.pair(s, pts)
        h = (seg.t1 - seg.t0) / n
        psi += float((h / 6.0) * np.sum(q[0:-1:2] + 4.0 * q[1::2] + q[2::2]))
        if i + 1 < len(segs) and segs[i + 1].chart != seg.chart:
            p = pts[:, -1]
            g = conn.bundle.transition(seg.chart, segs[i + 1].chart, p)
            psi += float(np.angle(complex(g)))
    prefN = atlas.preferred_chart(end)
    if prefN.name != segs[-1].chart:
        g = conn.bundle.transition(segs[-1].chart, prefN.name, end)
        psi += float(np.angle(complex(g)))
    return psi


def exponentiate_lift(
    conn: ConnectionData,
    mu: MomentMapData,
    s: Array,
    y: TotalPoint,
    n_steps: Optional[int] = None,
    doubling_tol: float = 1e-6,
) -> TotalPoint:
    """Time-1 lifted flow in direction s: nu(y; s).

    The fiber phase obeys d(psi)/dt = Im(-A(flow velocity)) + 2*pi*<mu, s>
    in local frames, integrated with the same fixed-step scheme as the
    monodromy oracle; the base point moves by the exact flow.
    """
    scenario = conn.scenario
    s = np.asarray(s, dtype=float)
    n = n_steps or scenario.ode_steps
    path = _flow_path(scenario, s, y.point)
    psi = _lifted_log_phase(conn, mu, s, path, n)
    psi_fine = _lifted_log_phase(conn, mu, s, path, 2 * n)
    if abs(np.exp(1j * psi_fine) - np.exp(1j * psi)) > doubling_tol:
        raise AccuracyError("lifted-flow phase integration failed its doubling check")
    endpoint = scenario.action.flow(s, 1.0, y.point)
    return TotalPoint(point=endpoint, fiber=y.fiber * complex(np.exp(1j * psi_fine)))


@dataclass(frozen=True)
class LiftedAction:
    conn: ConnectionData
    mu: MomentMapData

    @property
    def scenario(self) -> ManifoldScenario:
        return self.conn.scenario

    def nu(self, y: TotalPoint, s: Array, n_steps: Optional[int] = None) -> TotalPoint:
        return exponentiate_lift(self.conn, self.mu, s, y, n_steps)

    def fixed_point_weights(self) -> tuple[tuple[float, ...], ...]:
        """Moment values at the declared fixed points: the isotropy weights."""
        out = []
        for p in self.scenario.action.fixed_point_arrays():
            out.append(tuple(float(np.real(c(p))) for c in self.mu.components))
        return tuple(out)


def transport_preferred(conn: ConnectionData, path: PathSpec, n_steps: Optional[int] = None) -> complex:
    """Parallel transport expressed preferred-frame to preferred-frame."""
    atlas = conn.scenario.atlas
    segs = path.segments
    start = path_start_point(atlas, path)
    end = atlas.chart(segs[-1].chart).from_coords(segs[-1].position(np.array([segs[-1].t1]))[:, 0])
    val = parallel_transport(conn, path, n_steps)
    pref0 = atlas.preferred_chart(start)
    if pref0.name != segs[0].chart:
        val *= complex(conn.bundle.transition(pref0.name, segs[0].chart, start))
    if not path.closed:
        prefN = atlas.preferred_chart(end)
        if prefN.name != segs[-1].chart:
            val *= complex(conn.bundle.transition(segs[-1].chart, prefN.name, end))
    return val / abs(val)


def connection_invariance_residual(
    lift: LiftedAction, path: PathSpec, s: Array, n_steps: Optional[int] = None
) -> float:
    """|transport-then-act minus act-then-transport| along a path.

    Zero exactly when the exponentiated action preserves the connection.
    """
    scenario = lift.scenario
    action = scenario.action
    atlas = scenario.atlas
    s = np.asarray(s, dtype=float)
    start = path_start_point(atlas, path)
    seg_end = path.segments[-1]
    end = atlas.chart(seg_end.chart).from_coords(seg_end.position(np.array([seg_end.t1]))[:, 0])

    tau = transport_preferred(lift.conn, path, n_steps)
    moved = mapped_path(
        atlas,
        path,
        point_map=lambda p: action.flow(s, 1.0, p),
        tangent_map=lambda p, v: action.differential(s, 1.0, p, v),
    )
    tau_moved = transport_preferred(lift.conn, moved, n_steps)
    phase_start = lift.nu(TotalPoint(start, 1.0 + 0.0j), s, n_steps).fiber
    phase_end = lift.nu(TotalPoint(end, 1.0 + 0.0j), s, n_steps).fiber
    return abs(tau * phase_end - phase_start * tau_moved)


# ---------------------------------------------------------------------------
# Hamiltonian pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HamiltonianLiftReport:
    lift: LiftedAction
    bundle: LineBundleData
    weights: tuple[tuple[float, ...], ...]
    weight_difference: float
    rank: int
    averaging_residual: float
    invariance_residual: float
    solver_residuals: dict

    def to_dict(self) -> dict:
        return {
            "weights": [list(w) for w in self.weights],
            "weight_difference": self.weight_difference,
            "rank": self.rank,
            "averaging_residual": self.averaging_residual,
            "invariance_residual": self.invariance_residual,
            "solver_residuals": {k: float(v) for k, v in self.solver_residuals.items()},
        }


def hamiltonian_power_lift(
    scenario: ManifoldScenario,
    bundle: LineBundleData,
    conn: ConnectionData,
    d: int,
    n_grid: Optional[int] = None,
) -> HamiltonianLiftReport:
    """Lift of the rotation action to the d-th tensor power with invariant
    connection.

    Builds the power pair, compares it against the catalog reference
    connection of the same degree, averages the difference over the group,
    corrects the reference moment map accordingly, certifies the resulting
    pair, and returns the exponentiated action on the tensor-power connection.
    """
    if scenario.name != "sphere2-rotate":
        raise ValueError("the Hamiltonian pipeline requires the sphere2-rotate scenario")
    if d < 1:
        raise ValueError("tensor power must be >= 1")
    alpha_check = check_alpha_invariance(scenario, curvature(conn), tol=1e-6)
    if not alpha_check.passed:
        raise ValueError(
            f"curvature of the input connection is not invariant (residual {alpha_check.residual:.3e})"
        )
    power_bundle, power_conn = tensor_power(bundle, conn, d)
    degree = power_bundle.degrees[0]
    reference = monopole_connection(scenario, degree)
    from .transport import sphere_height_moment

    mu_ref = sphere_height_moment(scenario.action, degree, 0.0)
    delta = one_form_difference(power_conn, reference)
    eta = average_one_form(delta, scenario, n_grid)
    avg_again = average_one_form(eta, scenario, n_grid)
    averaging_residual = _one_form_distance(scenario, eta, avg_again)
    mu = shift_moment_components(scenario, mu_ref, eta)

    torus = solve_lifting_shift(power_conn, mu)
    lift = LiftedAction(conn=power_conn, mu=mu)
    ocm = orbit_class_map(scenario)

    arc = _invariance_test_path(scenario)
    invariance_residual = connection_invariance_residual(lift, arc, np.array([0.37]))
    weights = lift.fixed_point_weights()
    weight_difference = abs(weights[0][0] - weights[1][0])
    return HamiltonianLiftReport(
        lift=lift,
        bundle=power_bundle,
        weights=weights,
        weight_difference=float(weight_difference),
        rank=ocm.rank,
        averaging_residual=float(averaging_residual),
        invariance_residual=float(invariance_residual),
        solver_residuals=torus.residuals,
    )


def _zero_moment(scenario: ManifoldScenario) -> MomentMapData:
    from .transport import constant_moment_map

    return constant_moment_map(scenario.action, tuple(0.0 for _ in range(scenario.action.rank)))


def _one_form_distance(scenario: ManifoldScenario, a: OneForm, b: OneForm) -> float:
    worst = 0.0
    pts = scenario.sample_points[:, ::4]
    for chart in scenario.atlas:
        mask = chart.margin(pts) > 0.05
        if not np.any(mask):
            continue
        coords = chart.to_coords(pts[:, mask])
        worst = max(worst, float(np.max(np.abs(a(chart.name, coords) - b(chart.name, coords)))))
    return worst


def _invariance_test_path(scenario: ManifoldScenario) -> PathSpec:
    from .geometry.paths import sphere_open_arc, torus_open_segment

    if scenario.is_torus():
        return torus_open_segment(scenario.atlas, np.array([0.15, 0.4]), np.array([0.45, 0.3]))
    return sphere_open_arc(scenario.atlas, (0.7, 2.3), (-0.8, 1.9))


# ---------------------------------------------------------------------------
# Rationalization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalizeResult:
    omega: TwoForm
    mu: MomentMapData
    k: int
    rho: float
    period_over_2pi: Fraction
    sup_change: float
    mu_shifts: tuple[float, ...]
    ok: bool
    achievable_bound: float

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "rho": self.rho,
            "period_over_2pi": [self.period_over_2pi.numerator, self.period_over_2pi.denominator],
            "sup_change": self.sup_change,
            "mu_shifts": list(self.mu_shifts),
            "ok": self.ok,
            "achievable_bound": self.achievable_bound,
        }


def rationalize_class(
    scenario: ManifoldScenario,
    omega: TwoForm,
    mu: MomentMapData,
    epsilon: float,
    max_denominator: int = 10 ** 6,
) -> RationalizeResult:
    """Scale (omega, mu) by a rational ratio so the period lies in 2*pi*Q.

    The C0 distance is measured relative to the catalog area form (sup over
    sample points of the coefficient ratio change).  k is the minimal positive
    integer making k * period / (2*pi) an exact integer, certified in exact
    rational arithmetic (the candidate denominators are walked in increasing
    order); fixed-point moment values are then snapped onto the 2*pi/k grid by
    a constant shift per component (reported).  When even the denominator cap
    cannot meet epsilon, `ok` is False and `achievable_bound` reports the best
    attainable change.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    period = integrate_two_form(omega, scenario.fundamental_cycle)
    period = float(period.real)
    sup_omega = _sup_norm(scenario, omega)
    target = period / (2.0 * np.pi)

    chosen: Optional[Fraction] = None
    achieved = np.inf
    for q in range(1, max_denominator + 1):
        p = round(target * q)
        if p == 0:
            continue
        cand = Fraction(p, q)
        change = abs(float(cand) / target - 1.0) * sup_omega
        achieved = min(achieved, change)
        if change < epsilon:
            chosen = cand
            break
    if chosen is None:
        return RationalizeResult(
            omega=omega,
            mu=mu,
            k=0,
            rho=1.0,
            period_over_2pi=Fraction(0),
            sup_change=float(achieved),
            mu_shifts=(),
            ok=False,
            achievable_bound=float(achieved),
        )

    rho = float(chosen) / target  # scaled period is exactly 2*pi*p/q on the same grid
    k = chosen.denominator
    omega2 = rho * omega
    shifts = []
    comps = []
    for comp in mu.components:
        vals = [rho * float(np.real(comp(p))) for p in scenario.action.fixed_point_arrays()]
        if vals:
            v0 = vals[0]
            snapped = 2.0 * np.pi * round(v0 * k / (2.0 * np.pi)) / k
            delta = snapped - v0
        else:
            delta = 0.0
        shifts.append(float(delta))
        comps.append(_scaled_shifted(comp, rho, delta))
    mu2 = MomentMapData(
        scenario.action, tuple(comps), {"kind": "rationalized", "base": dict(mu.descriptor)}
    )
    return RationalizeResult(
        omega=omega2,
        mu=mu2,
        k=int(k),
        rho=float(rho),
        period_over_2pi=chosen,
        sup_change=float(abs(rho - 1.0) * sup_omega),
        mu_shifts=tuple(shifts),
        ok=True,
        achievable_bound=float(abs(rho - 1.0) * sup_omega),
    )


def _scaled_shifted(comp: Callable[[Array], Array], rho: float, delta: float):
    def out(pts):
        return rho * np.real(comp(pts)) + delta

    return out


def _sup_norm(scenario: ManifoldScenario, omega: TwoForm) -> float:
    """Sup of |omega| relative to the catalog area form over sample points."""
    from .geometry.scenarios import sphere_area_form

    if scenario.is_torus():
        ref = TwoForm(lambda chart, c: np.ones(np.shape(c[0]), dtype=complex), "real")
    else:
        ref = sphere_area_form()
    worst = 0.0
    pts = scenario.sample_points
    for chart in scenario.atlas:
        mask = chart.margin(pts) > 0.05
        if not np.any(mask):
            continue
        coords = chart.to_coords(pts[:, mask])
        ratio = np.abs(omega(chart.name, coords)) / np.abs(ref(chart.name, coords))
        worst = max(worst, float(np.max(ratio)))
    return worst
