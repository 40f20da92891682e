"""Fourier transform in the central variable and the intertwiner T = T1 T2.

T maps the pi_lambda model onto the rho_lambda model:

    T h(x, y) = sqrt(|l2| / 2 pi) exp(i l1 x y / 2) int exp(-i l2 y z) h(x, z) dz.

On a symmetric grid with N points and spacing dz along the second axis the
integral is a centred DFT onto the output spacing 2 pi / (|l2| N dz), which
makes the discrete T exactly unitary.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError, ResamplingError
from .grid import GridFunction, centred_dft
from .quadform import as_lambda

DECAY_THRESHOLD = 1e-8


def dual_spacing(lambda2: float, n: int, spacing: float) -> float:
    """Output spacing of the lambda2-scaled transform on an n-point axis."""
    return 2 * math.pi / (abs(lambda2) * n * spacing)


def self_dual_spacing(lambda2: float, n: int) -> float:
    """Spacing for which the scaled transform maps an n-point grid onto itself."""
    if n % 2 == 0:
        raise InvalidParameterError("symmetric grids have an odd number of points")
    return math.sqrt(2 * math.pi / (abs(lambda2) * n))


def t1_phase(lam, f: GridFunction, inverse: bool = False) -> GridFunction:
    l1, _ = as_lambda(lam)
    x, y = f.mesh()
    sign = -1 if inverse else 1
    return f.with_values(np.exp(sign * 0.5j * l1 * x * y) * f.values)


def t2_transform(lam, f: GridFunction, inverse: bool = False, target_spacing=None) -> GridFunction:
    """Scaled Fourier transform along the second axis (its inverse with ``inverse=True``)."""
    _, l2 = as_lambda(lam)
    n = f.shape[1]
    dz = f.spacing[1]
    dy = dual_spacing(l2, n, dz)
    if target_spacing is not None and not math.isclose(target_spacing, dy, rel_tol=1e-10):
        raise ResamplingError(
            f"target spacing {target_spacing!r} is not reachable: a {n}-point axis with "
            f"spacing {dz!r} transforms onto spacing {dy!r} for lambda2={l2!r}"
        )
    sign = int(math.copysign(1, l2)) * (1 if inverse else -1)
    out = math.sqrt(abs(l2) / (2 * math.pi)) * dz * centred_dft(f.values, axis=1, sign=sign)
    return GridFunction(out, (f.spacing[0], dy))


def intertwiner_T(lam, h: GridFunction, target_spacing=None, check_decay: bool = True) -> GridFunction:
    """T h on the grid with the same x-axis and the dual y-spacing."""
    if h.dims != 2:
        raise InvalidParameterError("the intertwiner acts on 2D grid functions")
    if check_decay and h.boundary_ratio() > DECAY_THRESHOLD:
        warnings.warn("input does not decay at the grid boundary; T is only approximate", stacklevel=2)
    return t1_phase(lam, t2_transform(lam, h, target_spacing=target_spacing))


def intertwiner_T_inverse(lam, f: GridFunction, target_spacing=None) -> GridFunction:
    if f.dims != 2:
        raise InvalidParameterError("the intertwiner acts on 2D grid functions")
    return t2_transform(lam, t1_phase(lam, f, inverse=True), inverse=True, target_spacing=target_spacing)


@dataclass(frozen=True)
class CentralFourier:
    """The family lambda1 -> F_lambda1 f of 2D slices.

    ``values[j]`` is the transform at ``lambda1[j]``. ``canonical`` marks the
    FFT frequency set, for which the inverse transform is available.
    """

    lambda1: np.ndarray
    values: np.ndarray
    spacing: tuple[float, float]
    t_spacing: float
    canonical: bool
    warnings: list[str] = field(default_factory=list)

    def slice(self, j: int) -> GridFunction:
        return GridFunction(self.values[j], self.spacing)

    @property
    def lambda1_weight(self) -> float:
        """Plancherel weight d(lambda1) / 2 pi of each sample (canonical sets only)."""
        if not self.canonical:
            raise InvalidParameterError("quadrature weights need the canonical frequency set")
        return (self.lambda1[1] - self.lambda1[0]) / (2 * math.pi)


def canonical_lambda1(n_t: int, t_spacing: float) -> np.ndarray:
    m = n_t // 2
    return 2 * math.pi * np.arange(-m, m + 1) / (n_t * t_spacing)


def partial_fourier_central(f: GridFunction, lambda1_samples=None) -> CentralFourier:
    """int exp(-i lambda1 t) f(x, y, t) dt by trapezoidal sums on the t-grid."""
    if f.dims != 3:
        raise InvalidParameterError("the central transform acts on (x, y, t) grids")
    dt = f.spacing[2]
    notes = []
    peak = np.abs(f.values).max()
    edge = max(np.abs(f.values[:, :, 0]).max(), np.abs(f.values[:, :, -1]).max())
    if peak > 0 and edge > DECAY_THRESHOLD * peak:
        notes.append(f"insufficient decay in t: boundary/max = {edge / peak:.3e}")
    if lambda1_samples is None:
        lam1 = canonical_lambda1(f.shape[2], dt)
        out = dt * centred_dft(f.values, axis=2, sign=-1)
        canonical = True
    else:
        lam1 = np.asarray(lambda1_samples, dtype=float)
        (t,) = f.axes()[2:]
        kernel = np.exp(-1j * np.outer(lam1, t))
        out = dt * np.einsum("xyt,lt->xyl", f.values, kernel)
        canonical = False
    return CentralFourier(lam1, np.moveaxis(out, 2, 0), f.spacing[:2], dt, canonical, notes)


def inverse_partial_fourier_central(family: CentralFourier) -> GridFunction:
    """Inverse of :func:`partial_fourier_central` on the canonical frequency set."""
    if not family.canonical:
        raise InvalidParameterError("inversion needs the canonical frequency set")
    slices = np.moveaxis(family.values, 0, 2)
    n_t = slices.shape[2]
    t_vals = centred_dft(slices, axis=2, sign=1) / (n_t * family.t_spacing)
    return GridFunction(t_vals, family.spacing + (family.t_spacing,))
