"""One- and two-forms given by chart-local coefficient evaluators.

Coefficients are functions of (chart name, chart coordinates).  On a surface a
one-form has two coefficients per chart and a two-form a single coefficient
(of du^1 wedge du^2).  Forms carry an optional closed-form exterior-derivative
evaluator; finite differences are always available as the independent check.

Connections and curvature are imaginary-valued; the harmonic basis and moment
differentials are real-valued.  Arithmetic keeps everything complex and the
`value_type` tag records the intent for the validation layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .charts import Atlas, Chart, project_to_chart

Array = np.ndarray

FD_STEP = 1e-5


@dataclass(frozen=True)
class OneForm:
    # (chart name, coords (2,) or (2,n)) -> coefficients, same shape, complex
    coeff: Callable[[str, Array], Array]
    # optional analytic d: (chart name, coords) -> coefficient of du^1 ^ du^2
    d_coeff: Optional[Callable[[str, Array], Array]] = None
    value_type: str = "complex"

    def __call__(self, chart: str, coords: Array) -> Array:
        return np.asarray(self.coeff(chart, coords), dtype=complex)

    def __add__(self, other: "OneForm") -> "OneForm":
        def coeff(chart, coords):
            return self(chart, coords) + other(chart, coords)

        d_coeff = None
        if self.d_coeff is not None and other.d_coeff is not None:
            mine, theirs = self.d_coeff, other.d_coeff

            def d_coeff(chart, coords):
                return np.asarray(mine(chart, coords), dtype=complex) + np.asarray(
                    theirs(chart, coords), dtype=complex
                )

        return OneForm(coeff, d_coeff, _combine_value_type(self.value_type, other.value_type))

    def __rmul__(self, scalar: complex) -> "OneForm":
        def coeff(chart, coords):
            return scalar * self(chart, coords)

        d_coeff = None
        if self.d_coeff is not None:
            mine = self.d_coeff

            def d_coeff(chart, coords):
                return scalar * np.asarray(mine(chart, coords), dtype=complex)

        return OneForm(coeff, d_coeff, "complex")

    def __neg__(self) -> "OneForm":
        return (-1.0) * self

    def __sub__(self, other: "OneForm") -> "OneForm":
        return self + (-other)


@dataclass(frozen=True)
class TwoForm:
    # (chart name, coords) -> coefficient of du^1 ^ du^2, shape (n,) or scalar
    coeff: Callable[[str, Array], Array]
    value_type: str = "complex"

    def __call__(self, chart: str, coords: Array) -> Array:
        return np.asarray(self.coeff(chart, coords), dtype=complex)

    def __add__(self, other: "TwoForm") -> "TwoForm":
        def coeff(chart, coords):
            return self(chart, coords) + other(chart, coords)

        return TwoForm(coeff, _combine_value_type(self.value_type, other.value_type))

    def __rmul__(self, scalar: complex) -> "TwoForm":
        def coeff(chart, coords):
            return scalar * self(chart, coords)

        return TwoForm(coeff, "complex")

    def __neg__(self) -> "TwoForm":
        return (-1.0) * self

    def __sub__(self, other: "TwoForm") -> "TwoForm":
        return self + (-other)

    def evaluate_on(self, chart: str, coords: Array, u: Array, v: Array) -> Array:
        """Value on a pair of chart-coordinate tangent vectors."""
        f = self(chart, coords)
        return f * (u[0] * v[1] - u[1] * v[0])


def zero_one_form() -> OneForm:
    return OneForm(
        coeff=lambda chart, c: np.zeros_like(np.asarray(c, dtype=complex)),
        d_coeff=lambda chart, c: np.zeros_like(np.asarray(c[0], dtype=complex)),
        value_type="real",
    )


def zero_two_form() -> TwoForm:
    return TwoForm(coeff=lambda chart, c: np.zeros_like(np.asarray(c[0], dtype=complex)), value_type="real")


def constant_one_form(cx: complex, cy: complex, value_type: str = "complex") -> OneForm:
    """Coefficients constant in every chart; correct for torus charts (identity Jacobians)."""

    def coeff(chart, c):
        shape = np.shape(c[0])
        return np.stack([np.full(shape, cx, dtype=complex), np.full(shape, cy, dtype=complex)], axis=0)

    def d_coeff(chart, c):
        return np.zeros(np.shape(c[0]), dtype=complex)

    return OneForm(coeff, d_coeff, value_type)


def exterior_derivative_fd(form: OneForm, chart: str, coords: Array, step: float = FD_STEP) -> Array:
    """Central-difference d(omega) = d1 w2 - d2 w1 in chart coordinates."""
    coords = np.asarray(coords, dtype=float)

    def shifted(axis, sgn):
        out = coords.copy()
        out[axis] = out[axis] + sgn * step
        return out

    w_xp = form(chart, shifted(0, +1))
    w_xm = form(chart, shifted(0, -1))
    w_yp = form(chart, shifted(1, +1))
    w_ym = form(chart, shifted(1, -1))
    d1_w2 = (w_xp[1] - w_xm[1]) / (2.0 * step)
    d2_w1 = (w_yp[0] - w_ym[0]) / (2.0 * step)
    return d1_w2 - d2_w1


def exterior_derivative(form: OneForm) -> TwoForm:
    """Analytic d when available, finite differences otherwise."""
    if form.d_coeff is not None:
        d = form.d_coeff
        return TwoForm(lambda chart, c: np.asarray(d(chart, c), dtype=complex), form.value_type)
    return TwoForm(lambda chart, c: exterior_derivative_fd(form, chart, c), form.value_type)


def one_form_on_ambient(form: OneForm, atlas: Atlas, points: Array, vectors: Array) -> Array:
    """omega(v) at global points, grouping the batch by preferred chart.

    `points` has shape (d,) or (d, n); `vectors` are ambient tangent vectors
    of the same shape.
    """
    if points.ndim == 1:
        chart = atlas.preferred_chart(points)
        coords = chart.to_coords(points)
        comp = project_to_chart(chart, coords, vectors)
        return np.sum(form(chart.name, coords) * comp, axis=0)
    n = points.shape[-1]
    out = np.empty(n, dtype=complex)
    names = np.array(atlas.preferred_names(points))
    for name in np.unique(names):
        idx = np.nonzero(names == name)[0]
        chart = atlas.chart(str(name))
        coords = chart.to_coords(points[:, idx])
        comp = project_to_chart(chart, coords, vectors[:, idx])
        out[idx] = np.sum(form(str(name), coords) * comp, axis=0)
    return out


def two_form_on_ambient(form: TwoForm, atlas: Atlas, points: Array, u: Array, v: Array) -> Array:
    """omega(u, v) at global points with ambient tangent vectors u, v."""
    if points.ndim == 1:
        chart = atlas.preferred_chart(points)
        coords = chart.to_coords(points)
        cu = project_to_chart(chart, coords, u)
        cv = project_to_chart(chart, coords, v)
        return form.evaluate_on(chart.name, coords, cu, cv)
    n = points.shape[-1]
    out = np.empty(n, dtype=complex)
    names = np.array(atlas.preferred_names(points))
    for name in np.unique(names):
        idx = np.nonzero(names == name)[0]
        chart = atlas.chart(str(name))
        coords = chart.to_coords(points[:, idx])
        cu = project_to_chart(chart, coords, u[:, idx])
        cv = project_to_chart(chart, coords, v[:, idx])
        out[idx] = form.evaluate_on(str(name), coords, cu, cv)
    return out


def _combine_value_type(a: str, b: str) -> str:
    return a if a == b else "complex"
