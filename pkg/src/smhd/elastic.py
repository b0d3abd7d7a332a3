"""Embedding into 2D compressible isentropic elastodynamics.

Shallow-water MHD coincides with a slice of planar elastodynamics for a
polytropic pressure law p = A rho^gamma with gamma = 2: identify

    rho := h,   F1 := B,   F2 := 0,   A := g/2,

where F1, F2 are the columns of the deformation gradient.  The slice
F2 = 0 is invariant (dF2/dt = (F2 . grad) v vanishes on it), so the
7-variable elastic system restricted to it reproduces the 5-variable
pressure-form system exactly.  This module provides the full 7-variable
fluxes and symmetric matrices as an independent cross-validation route.

Variable ordering: conserved (rho, rho v1, rho v2, rho F11, rho F21,
rho F12, rho F22); quasilinear unknown (p, v1, v2, F11, F21, F12, F22).
Indices 0..4 are the SMHD slice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import PhysParams, State
from .errors import NonPositiveHeight

SMHD_SLICE = np.arange(5)


@dataclass(frozen=True)
class ElasticState:
    """Planar elastic state (rho, v, F1, F2) with pressure p = A rho^gamma."""

    rho: float
    v: np.ndarray
    F1: np.ndarray
    F2: np.ndarray
    eos_A: float
    eos_gamma: float

    def __post_init__(self):
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "v", np.asarray(self.v, dtype=float).reshape(2))
        object.__setattr__(self, "F1", np.asarray(self.F1, dtype=float).reshape(2))
        object.__setattr__(self, "F2", np.asarray(self.F2, dtype=float).reshape(2))
        if not self.rho > 0.0:
            raise NonPositiveHeight(f"density must be positive, got {self.rho}")

    @property
    def pressure(self) -> float:
        return self.eos_A * self.rho**self.eos_gamma

    @property
    def sound_speed_sq(self) -> float:
        """c^2 = p'(rho) = A gamma rho^(gamma - 1)."""
        return self.eos_A * self.eos_gamma * self.rho ** (self.eos_gamma - 1.0)


def embed_elastodynamics(u: State, params: PhysParams) -> ElasticState:
    """Map an SMHD state onto the F2 = 0, gamma = 2, A = g/2 elastic slice."""
    return ElasticState(rho=u.h, v=u.v.copy(), F1=u.B.copy(), F2=np.zeros(2),
                        eos_A=0.5 * params.g, eos_gamma=2.0)


def elastic_fluxes(es: ElasticState) -> tuple[np.ndarray, np.ndarray]:
    """Physical fluxes of the 7-variable conservation-law form.

    Mass and momentum carry rho v x v - rho sum_j Fj x Fj + p I; the
    deformation columns rho Fj transport with the same planar-curl rows
    as the induction equation.
    """
    rho = es.rho
    v1, v2 = es.v
    p = es.pressure
    w1 = rho * (es.F1[0] * v2 - es.F1[1] * v1)
    w2 = rho * (es.F2[0] * v2 - es.F2[1] * v1)
    f11, f21 = es.F1
    f12, f22 = es.F2
    fx = np.array([
        rho * v1,
        rho * v1 * v1 - rho * (f11 * f11 + f12 * f12) + p,
        rho * v1 * v2 - rho * (f11 * f21 + f12 * f22),
        0.0,
        -w1,
        0.0,
        -w2,
    ])
    fy = np.array([
        rho * v2,
        rho * v1 * v2 - rho * (f11 * f21 + f12 * f22),
        rho * v2 * v2 - rho * (f21 * f21 + f22 * f22) + p,
        w1,
        0.0,
        w2,
        0.0,
    ])
    return fx, fy


def elastic_quasilinear_matrices(es: ElasticState) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Symmetric matrices of the quasilinear form in (p, v, F1, F2).

    A0 = blockdiag(1/(rho c^2), rho I6); the direction-i matrix couples
    v to Fj with coefficient -rho Fj_i, mirroring the pressure form of
    the shallow-water system on the F2 = 0 slice.
    """
    rho = es.rho
    v1, v2 = es.v
    c2 = es.sound_speed_sq
    k = 1.0 / (rho * c2)
    a0 = np.diag([k] + [rho] * 6)

    def direction(i: int) -> np.ndarray:
        vi = es.v[i]
        e = np.zeros(2)
        e[i] = 1.0
        m = np.zeros((7, 7))
        m[0, 0] = k * vi
        m[0, 1:3] = e
        m[1:3, 0] = e
        for j, col in enumerate((es.F1, es.F2)):
            s = 3 + 2 * j
            m[1:3, s:s + 2] = -rho * col[i] * np.eye(2)
            m[s:s + 2, 1:3] = -rho * col[i] * np.eye(2)
            m[s:s + 2, s:s + 2] = rho * vi * np.eye(2)
        m[1, 1] = m[2, 2] = rho * vi
        return m

    return a0, direction(0), direction(1)
