"""The Heisenberg group H1, the six-dimensional group N and their representations.

Coordinates on the Lie algebra of N are ordered (X1, Y1, X2, Y2, T1, T2) with
the only non-zero brackets [X1, Y1] = T1 and [X1, X2] = [Y1, Y2] = T2. Group
elements are written in exponential coordinates (v, z).

The representations act on :class:`~heisosc.grid.GridFunction` samples;
translations are band-limited Fourier shifts, phases are applied pointwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .grid import GridFunction, fourier_shift, spectral_derivative
from .quadform import as_lambda

ZERO_TOL = 1e-12
BASIS = ("X1", "Y1", "X2", "Y2", "T1", "T2")


@dataclass(frozen=True)
class H1Element:
    x: float
    y: float
    t: float

    def __mul__(self, other: "H1Element") -> "H1Element":
        return h1_multiply(self, other)

    def inverse(self) -> "H1Element":
        return H1Element(-self.x, -self.y, -self.t)


def h1_multiply(a: H1Element, b: H1Element) -> H1Element:
    return H1Element(a.x + b.x, a.y + b.y, a.t + b.t + (a.x * b.y - b.x * a.y) / 2)


@dataclass(frozen=True)
class NElement:
    v: tuple[float, float, float, float]
    z: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        v = tuple(float(c) for c in self.v)
        z = tuple(float(c) for c in self.z)
        if len(v) != 4 or len(z) != 2:
            raise ValueError("NElement needs v in R^4 and z in R^2")
        if not all(np.isfinite(v + z)):
            raise ValueError("NElement coordinates must be finite")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "z", z)

    @classmethod
    def identity(cls) -> "NElement":
        return cls((0.0,) * 4, (0.0, 0.0))

    def __mul__(self, other: "NElement") -> "NElement":
        return n_multiply(self, other)

    def inverse(self) -> "NElement":
        return NElement(tuple(-c for c in self.v), tuple(-c for c in self.z))


def n_multiply(a: NElement, b: NElement) -> NElement:
    x1, y1, x2, y2 = a.v
    x1p, y1p, x2p, y2p = b.v
    z1 = a.z[0] + b.z[0] + (x1 * y1p - x1p * y1) / 2
    z2 = a.z[1] + b.z[1] + (x1 * x2p - x2 * x1p) / 2 + (y1 * y2p - y2 * y1p) / 2
    return NElement(tuple(p + q for p, q in zip(a.v, b.v)), (z1, z2))


def basis_vector(name: str) -> np.ndarray:
    e = np.zeros(6)
    e[BASIS.index(name)] = 1.0
    return e


def bracket(a, b) -> np.ndarray:
    """Lie bracket of two algebra elements given as 6-vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.zeros(6)
    out[4] = a[0] * b[1] - a[1] * b[0]
    out[5] = a[0] * b[2] - a[2] * b[0] + a[1] * b[3] - a[3] * b[1]
    return out


def jz_matrix(z) -> np.ndarray:
    """Matrix of j_z in the basis (X1, Y1, X2, Y2), as displayed in the orbit lemma.

    Its determinant is z2^4. Acting on column vectors it sends v to
    -j_z(v) under the pairing <j_z(v), v'> = <z, [v, v']>, which is exactly
    the shift produced by the coadjoint action of exp(v).
    """
    z1, z2 = (float(c) for c in z)
    return np.array([
        [0.0, z1, z2, 0.0],
        [-z1, 0.0, 0.0, z2],
        [-z2, 0.0, 0.0, 0.0],
        [0.0, -z2, 0.0, 0.0],
    ])


@dataclass(frozen=True)
class LinearForm:
    """Element (omega, lambda) of the dual of the Lie algebra of N; lambda2 = 0 allowed."""

    omega: tuple[float, float, float, float]
    lam: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(float(c) for c in self.omega))
        object.__setattr__(self, "lam", tuple(float(c) for c in self.lam))
        if len(self.omega) != 4 or len(self.lam) != 2:
            raise ValueError("LinearForm needs omega in R^4 and lambda in R^2")

    def __call__(self, element) -> float:
        element = np.asarray(element, dtype=float)
        return float(np.dot(self.omega, element[:4]) + np.dot(self.lam, element[4:]))

    def allclose(self, other: "LinearForm", atol: float = 1e-9) -> bool:
        return bool(
            np.allclose(self.omega, other.omega, rtol=0, atol=atol)
            and np.allclose(self.lam, other.lam, rtol=0, atol=atol)
        )


class OrbitKind(str, Enum):
    GENERIC = "generic"
    INTERMEDIATE = "intermediate"
    CHARACTER = "character"


@dataclass(frozen=True)
class OrbitRepresentative:
    kind: OrbitKind
    form: LinearForm


def coadjoint_act(ell: LinearForm, n: NElement) -> LinearForm:
    """ell o Ad(n^{-1}); only the v-part of n acts, shifting omega."""
    shift = jz_matrix(ell.lam) @ np.asarray(n.v)
    return LinearForm(tuple(np.asarray(ell.omega) + shift), ell.lam)


def classify_orbit(ell: LinearForm, tol: float = ZERO_TOL) -> OrbitRepresentative:
    l1, l2 = ell.lam
    l1 = 0.0 if abs(l1) <= tol else l1
    l2 = 0.0 if abs(l2) <= tol else l2
    if l2 != 0.0:
        return OrbitRepresentative(OrbitKind.GENERIC, LinearForm((0.0,) * 4, (l1, l2)))
    if l1 != 0.0:
        w = ell.omega
        return OrbitRepresentative(OrbitKind.INTERMEDIATE, LinearForm((0.0, 0.0, w[2], w[3]), (l1, 0.0)))
    return OrbitRepresentative(OrbitKind.CHARACTER, LinearForm(ell.omega, (0.0, 0.0)))


def _translate(values, spacing, shifts):
    out = values
    for axis, s in enumerate(shifts):
        out = fourier_shift(out, spacing[axis], axis, s)
    return out


def rep_rho(lam, n: NElement, f: GridFunction) -> GridFunction:
    """rho_lambda(n) on L2(R^2) in the (x, y) variables."""
    l1, l2 = as_lambda(lam)
    x1, y1, x2, y2 = n.v
    z1, z2 = n.z
    x, y = f.mesh()
    phase = l1 * (z1 + (x * y1 - x1 * y) / 2) + l2 * (z2 + x * x2 + y * y2 + x1 * x2 / 2 + y1 * y2 / 2)
    return f.with_values(np.exp(1j * phase) * _translate(f.values, f.spacing, (x1, y1)))


def rep_pi(lam, n: NElement, f: GridFunction) -> GridFunction:
    """pi_lambda(n) on L2(R^2) in the (u1, u2) variables."""
    l1, l2 = as_lambda(lam)
    x1, y1, x2, y2 = n.v
    t1, t2 = n.z
    u1, u2 = f.mesh()
    phase = l1 * (t1 + u1 * y1 + x1 * y1 / 2) + l2 * (t2 + u1 * x2 - u2 * y1 + x1 * x2 / 2 - y1 * y2 / 2)
    return f.with_values(np.exp(1j * phase) * _translate(f.values, f.spacing, (x1, y2)))


def rep_pi_intermediate(lambda1: float, omega, n: NElement, f: GridFunction) -> GridFunction:
    """pi_{lambda1, omega}(n) on L2(R); omega pairs with the (x2, y2) coordinates."""
    if lambda1 == 0:
        raise ValueError("lambda1 must be non-zero for the intermediate representations")
    x1, y1, x2, y2 = n.v
    (u,) = f.mesh()
    phase = lambda1 * (n.z[0] + u * y1 + x1 * y1 / 2) + omega[0] * x2 + omega[1] * y2
    return f.with_values(np.exp(1j * phase) * _translate(f.values, f.spacing, (x1,)))


def character(omega, n: NElement) -> complex:
    return complex(np.exp(1j * np.dot(omega, n.v)))


def infinitesimal(lam, basis_element: str, rep: str, f: GridFunction) -> GridFunction:
    """Image of a basis vector under d(rho_lambda) or d(pi_lambda)."""
    l1, l2 = as_lambda(lam)
    a, b = f.mesh()
    v = f.values

    def d(axis):
        return spectral_derivative(v, f.spacing[axis], axis)

    if basis_element == "T1":
        out = 1j * l1 * v
    elif basis_element == "T2":
        out = 1j * l2 * v
    elif rep == "rho":
        out = {
            "X1": lambda: d(0) - 0.5j * l1 * b * v,
            "Y1": lambda: d(1) + 0.5j * l1 * a * v,
            "X2": lambda: 1j * l2 * a * v,
            "Y2": lambda: 1j * l2 * b * v,
        }[basis_element]()
    elif rep == "pi":
        out = {
            "X1": lambda: d(0),
            "Y1": lambda: 1j * (l1 * a - l2 * b) * v,
            "X2": lambda: 1j * l2 * a * v,
            "Y2": lambda: d(1),
        }[basis_element]()
    else:
        raise ValueError(f"unknown representation {rep!r}")
    return f.with_values(out)


def sublaplacian(lam, rep: str, f: GridFunction) -> GridFunction:
    """-(X1^2 + Y1^2 + X2^2 + Y2^2) assembled from :func:`infinitesimal`."""
    total = np.zeros_like(f.values)
    for name in ("X1", "Y1", "X2", "Y2"):
        once = infinitesimal(lam, name, rep, f)
        total -= infinitesimal(lam, name, rep, once).values
    return f.with_values(total)


def sublaplacian_pi(lam, f: GridFunction) -> GridFunction:
    """-d^2/du1^2 - d^2/du2^2 + (l1 u1 - l2 u2)^2 + (l2 u1)^2 with spectral derivatives."""
    l1, l2 = as_lambda(lam)
    u1, u2 = f.mesh()
    v = f.values
    lap = spectral_derivative(v, f.spacing[0], 0, 2) + spectral_derivative(v, f.spacing[1], 1, 2)
    return f.with_values(-lap + ((l1 * u1 - l2 * u2) ** 2 + (l2 * u1) ** 2) * v)


def h1_vector_field(name: str, f: GridFunction) -> GridFunction:
    """Left-invariant fields X = d_x - (y/2) d_t and Y = d_y + (x/2) d_t on an (x, y, t) grid."""
    x, y, _ = f.mesh()
    v = f.values
    dt = spectral_derivative(v, f.spacing[2], 2)
    if name == "X":
        out = spectral_derivative(v, f.spacing[0], 0) - 0.5 * y * dt
    elif name == "Y":
        out = spectral_derivative(v, f.spacing[1], 1) + 0.5 * x * dt
    else:
        raise ValueError(f"unknown vector field {name!r}")
    return f.with_values(out)
