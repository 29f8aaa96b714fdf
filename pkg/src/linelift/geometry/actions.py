"""Torus-group actions on the catalog surfaces.

A rank-k action is the datum of a flow map for real direction vectors
s in R^k, normalized so that every integer lattice vector generates a
period-1 flow: flow(e_j, 1.0, x) == x.  The generating vector field and the
flow differential are supplied in closed form (ambient coordinates) so that
pullbacks and averaging stay at analytic accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

Array = np.ndarray


@dataclass(frozen=True)
class TorusAction:
    rank: int
    lattice_labels: tuple[str, ...]
    # (s (k,), t scalar or (n,), point (d,)) -> (d,) or (d, n)
    flow: Callable[[Array, Array, Array], Array]
    # (s, point (d,) or (d,n)) -> ambient generating vector, same shape as point
    ambient_field: Callable[[Array, Array], Array]
    # pushforward of the time-t flow map: (s, t, point, ambient vec) -> ambient vec
    differential: Callable[[Array, float, Array, Array], Array]
    fixed_points: tuple[tuple[float, ...], ...] = ()
    # True when fixed_points is the complete zero set of the generating field
    isolated_fixed: bool = True

    def fixed_point_arrays(self) -> list[Array]:
        return [np.array(p, dtype=float) for p in self.fixed_points]


def translation_action(direction_matrix: Array, labels: tuple[str, ...]) -> TorusAction:
    """Translations of R^2/Z^2: lattice direction j moves by row j of the matrix."""
    dirs = np.asarray(direction_matrix, dtype=float)
    rank = dirs.shape[0]

    def flow(s, t, x):
        v = dirs.T @ np.asarray(s, dtype=float)
        t = np.asarray(t, dtype=float)
        if x.ndim == 2:
            return np.mod(x + v[:, None] * float(t), 1.0)
        if t.ndim == 0:
            return np.mod(x + v * t, 1.0)
        return np.mod(x[:, None] + v[:, None] * t[None, :], 1.0)

    def ambient_field(s, p):
        v = dirs.T @ np.asarray(s, dtype=float)
        if p.ndim == 1:
            return v.copy()
        return np.repeat(v[:, None], p.shape[-1], axis=-1)

    def differential(s, t, p, vec):
        return vec

    return TorusAction(
        rank=rank,
        lattice_labels=labels,
        flow=flow,
        ambient_field=ambient_field,
        differential=differential,
        fixed_points=(),
        isolated_fixed=True,
    )


def rotation_action() -> TorusAction:
    """Rank-1 rotation of the unit sphere about the z-axis, one turn per unit time."""

    def _rot(angle, p):
        c, s = np.cos(angle), np.sin(angle)
        return np.stack([c * p[0] - s * p[1], s * p[0] + c * p[1], p[2] * np.ones_like(c)], axis=0)

    def flow(s, t, x):
        angle = 2.0 * np.pi * float(s[0]) * np.asarray(t, dtype=float)
        if angle.ndim == 0:
            return _rot(angle, x)
        return _rot(angle, x[:, None])

    def ambient_field(s, p):
        w = 2.0 * np.pi * float(s[0])
        return np.stack([-w * p[1], w * p[0], np.zeros_like(p[2])], axis=0)

    def differential(s, t, p, vec):
        angle = 2.0 * np.pi * float(s[0]) * t
        return _rot(angle, vec)

    return TorusAction(
        rank=1,
        lattice_labels=("rot_z",),
        flow=flow,
        ambient_field=ambient_field,
        differential=differential,
        fixed_points=((0.0, 0.0, 1.0), (0.0, 0.0, -1.0)),
        isolated_fixed=True,
    )


def trivial_action(ambient_dim: int, sample_fixed: tuple[tuple[float, ...], ...]) -> TorusAction:
    """Rank-1 action that does nothing; every point is fixed."""

    def flow(s, t, x):
        t = np.asarray(t, dtype=float)
        if t.ndim == 0:
            return x.copy()
        return np.repeat(x[:, None], t.shape[0], axis=-1)

    def ambient_field(s, p):
        return np.zeros_like(p)

    def differential(s, t, p, vec):
        return vec

    return TorusAction(
        rank=1,
        lattice_labels=("id",),
        flow=flow,
        ambient_field=ambient_field,
        differential=differential,
        fixed_points=sample_fixed,
        isolated_fixed=False,
    )
