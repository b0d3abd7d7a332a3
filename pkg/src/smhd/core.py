"""Shallow-water MHD states, fluxes, and symmetric quasilinear forms.

The model evolves the height h of a thin conducting fluid layer together
with the depth-averaged velocity v = (v1, v2) and magnetic field
B = (B1, B2) under a gravitational acceleration g > 0.  All quantities
are nondimensional; g is a runtime parameter with default 1.

Two symmetric quasilinear forms are provided:

* ``PRIMITIVE_HEIGHT``: unknowns (h, v, B), with
  A0 = blockdiag(g/h, I4).
* ``PRESSURE``: unknowns (p, v, B) with the hydrostatic pressure
  p = (g/2) h^2 and the gravity wave speed c = sqrt(g h), with
  A0 = blockdiag(1/(h c^2), h I4).

Both are symmetric hyperbolic exactly when h > 0.

Conserved variables are q = (h, h v1, h v2, h B1, h B2).  The induction
rows of the flux use the planar curl convention

    a x b = a1 b2 - a2 b1  (scalar),      curl w = (d2 w, -d1 w),

whose componentwise expansion makes the x1-flux of h B1 and the x2-flux
of h B2 vanish identically.  That mirrors the transport structure of the
constraint div(h B) = 0, which is carried by the initial data rather
than enforced by the equations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveHeight

PRIMITIVE_HEIGHT = "primitive-height"
PRESSURE = "pressure"


@dataclass(frozen=True)
class PhysParams:
    """Physical parameters: the gravitational acceleration g > 0."""

    g: float = 1.0

    def __post_init__(self):
        if not (self.g > 0.0 and np.isfinite(self.g)):
            raise ValueError(f"gravitational acceleration must be positive, got {self.g}")


@dataclass(frozen=True)
class State:
    """Pointwise primitive state (h, v, B) with h > 0.

    ``v`` and ``B`` are length-2 arrays.  Construction validates
    positivity and finiteness; analysis code never clips heights.
    """

    h: float
    v: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "h", float(self.h))
        object.__setattr__(self, "v", np.asarray(self.v, dtype=float).reshape(2))
        object.__setattr__(self, "B", np.asarray(self.B, dtype=float).reshape(2))
        if not self.h > 0.0:
            raise NonPositiveHeight(f"h must be positive, got {self.h}")
        if not (np.isfinite(self.h) and np.all(np.isfinite(self.v)) and np.all(np.isfinite(self.B))):
            raise ValueError("state components must be finite")

    def as_vector(self) -> np.ndarray:
        """The 5-vector (h, v1, v2, B1, B2)."""
        return np.concatenate(([self.h], self.v, self.B))


@dataclass(frozen=True)
class FrontGeometry:
    """Local front data: slope d2(phi) and speed dt(phi) at a point.

    The (unnormalized) front normal is N = (1, -slope) with
    |N|^2 = 1 + slope^2 >= 1.
    """

    slope: float = 0.0
    speed: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "slope", float(self.slope))
        object.__setattr__(self, "speed", float(self.speed))
        if not (np.isfinite(self.slope) and np.isfinite(self.speed)):
            raise ValueError("front slope and speed must be finite")

    @property
    def normal(self) -> np.ndarray:
        return np.array([1.0, -self.slope])

    @property
    def norm_sq(self) -> float:
        return 1.0 + self.slope**2


@dataclass(frozen=True)
class MatrixSet:
    """Symmetric quasilinear matrices (A0, A1, A2) with a form tag."""

    A0: np.ndarray
    A1: np.ndarray
    A2: np.ndarray
    form: str = PRIMITIVE_HEIGHT


def conserved_from_primitive(u: State) -> np.ndarray:
    """Conserved vector q = (h, h v1, h v2, h B1, h B2)."""
    return np.concatenate(([u.h], u.h * u.v, u.h * u.B))


def primitive_from_conserved(q: np.ndarray) -> State:
    """Recover (h, v, B) from q; raises NonPositiveHeight if q[0] <= 0."""
    q = np.asarray(q, dtype=float).reshape(5)
    if not q[0] > 0.0:
        raise NonPositiveHeight(f"conserved height must be positive, got {q[0]}")
    return State(h=q[0], v=q[1:3] / q[0], B=q[3:5] / q[0])


def fluxes(u: State, params: PhysParams) -> tuple[np.ndarray, np.ndarray]:
    """Physical fluxes (F1, F2) of the conservation-law form.

    Componentwise, with q = (h, h v, h B) and w = h (B1 v2 - B2 v1):

        F1 = (h v1, h v1^2 - h B1^2 + g h^2/2, h v1 v2 - h B1 B2, 0, -w)
        F2 = (h v2, h v1 v2 - h B1 B2, h v2^2 - h B2^2 + g h^2/2, w, 0)

    The zero entries are the curl structure of the induction rows.
    """
    h = u.h
    v1, v2 = u.v
    b1, b2 = u.B
    g = params.g
    pres = 0.5 * g * h * h
    w = h * (b1 * v2 - b2 * v1)
    f1 = np.array([
        h * v1,
        h * v1 * v1 - h * b1 * b1 + pres,
        h * v1 * v2 - h * b1 * b2,
        0.0,
        -w,
    ])
    f2 = np.array([
        h * v2,
        h * v1 * v2 - h * b1 * b2,
        h * v2 * v2 - h * b2 * b2 + pres,
        w,
        0.0,
    ])
    return f1, f2


def _primitive_height_matrices(u: State, g: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    h = u.h
    v1, v2 = u.v
    b1, b2 = u.B
    a0 = np.diag([g / h, 1.0, 1.0, 1.0, 1.0])
    a1 = np.array([
        [g * v1 / h, g, 0.0, 0.0, 0.0],
        [g, v1, 0.0, -b1, 0.0],
        [0.0, 0.0, v1, 0.0, -b1],
        [0.0, -b1, 0.0, v1, 0.0],
        [0.0, 0.0, -b1, 0.0, v1],
    ])
    a2 = np.array([
        [g * v2 / h, 0.0, g, 0.0, 0.0],
        [0.0, v2, 0.0, -b2, 0.0],
        [g, 0.0, v2, 0.0, -b2],
        [0.0, -b2, 0.0, v2, 0.0],
        [0.0, 0.0, -b2, 0.0, v2],
    ])
    return a0, a1, a2


def _pressure_matrices(u: State, g: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    h = u.h
    v1, v2 = u.v
    b1, b2 = u.B
    c2 = g * h
    k = 1.0 / (h * c2)
    a0 = np.diag([k, h, h, h, h])
    a1 = np.array([
        [k * v1, 1.0, 0.0, 0.0, 0.0],
        [1.0, h * v1, 0.0, -h * b1, 0.0],
        [0.0, 0.0, h * v1, 0.0, -h * b1],
        [0.0, -h * b1, 0.0, h * v1, 0.0],
        [0.0, 0.0, -h * b1, 0.0, h * v1],
    ])
    a2 = np.array([
        [k * v2, 0.0, 1.0, 0.0, 0.0],
        [0.0, h * v2, 0.0, -h * b2, 0.0],
        [1.0, 0.0, h * v2, 0.0, -h * b2],
        [0.0, -h * b2, 0.0, h * v2, 0.0],
        [0.0, 0.0, -h * b2, 0.0, h * v2],
    ])
    return a0, a1, a2


def quasilinear_matrices(u: State, params: PhysParams, form: str = PRIMITIVE_HEIGHT) -> MatrixSet:
    """Symmetric matrices (A0, A1, A2) of the requested quasilinear form.

    ``PRIMITIVE_HEIGHT`` uses unknowns (h, v, B); ``PRESSURE`` uses
    (p, v, B) with p = (g/2) h^2.  Both forms share the characteristic
    speeds; A0 is positive definite iff h > 0.
    """
    if form == PRIMITIVE_HEIGHT:
        a0, a1, a2 = _primitive_height_matrices(u, params.g)
    elif form == PRESSURE:
        a0, a1, a2 = _pressure_matrices(u, params.g)
    else:
        raise ValueError(f"unknown quasilinear form {form!r}")
    return MatrixSet(A0=a0, A1=a1, A2=a2, form=form)


def boundary_matrix(u: State, front: FrontGeometry, params: PhysParams) -> np.ndarray:
    """Boundary matrix A1 - A0 dt(phi) - A2 d2(phi) in primitive-height form.

    Its singularity at the front characterizes characteristic
    discontinuities.
    """
    ms = quasilinear_matrices(u, params, PRIMITIVE_HEIGHT)
    return ms.A1 - front.speed * ms.A0 - front.slope * ms.A2


def gravity_wave_speed(u: State, params: PhysParams) -> float:
    """Gravity wave speed c = sqrt(g h)."""
    return float(np.sqrt(params.g * u.h))


def normal_speeds(u: State, params: PhysParams, normal: np.ndarray) -> np.ndarray:
    """Closed-form characteristic speeds in direction ``normal``.

    For n not necessarily unit, the five speeds are

        v_n - c_g, v_n - |B_n|, v_n, v_n + |B_n|, v_n + c_g

    with v_n = v.n, B_n = B.n and c_g = sqrt(B_n^2 + g h |n|^2).  The
    array is ascending by construction since c_g >= |B_n|.
    """
    n = np.asarray(normal, dtype=float).reshape(2)
    vn = float(u.v @ n)
    bn = float(u.B @ n)
    cg = np.sqrt(bn * bn + params.g * u.h * (n @ n))
    ba = abs(bn)
    return np.array([vn - cg, vn - ba, vn, vn + ba, vn + cg])
