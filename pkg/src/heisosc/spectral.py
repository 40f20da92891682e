"""Mode coefficients and spectral projections of the Heisenberg oscillator on H1.

For fixed lambda2 a function f on H1 is Fourier transformed in the central
variable; each slice at lambda1 is expanded in the orthonormal basis
T h_{lambda, m}. The coefficient c_{lambda, m}(f) is computed as
<T^{-1} F_{lambda1} f, h_{lambda, m}>, which equals <F_{lambda1} f, T h_{lambda, m}>
because the discrete T is unitary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import eigensystem
from .errors import InvalidParameterError
from .grid import GridFunction
from .group import h1_vector_field
from .quadform import Lambda
from .transforms import (
    CentralFourier,
    intertwiner_T,
    intertwiner_T_inverse,
    inverse_partial_fourier_central,
    partial_fourier_central,
)


def spectrum_bottom(lambda2: float) -> float:
    """Bottom 2|lambda2| of the spectrum, attained at lambda1 = 0, m = (0, 0)."""
    if lambda2 == 0:
        raise InvalidParameterError("lambda2 must be non-zero")
    return 2 * abs(lambda2)


def heisenberg_oscillator(f: GridFunction, lambda2: float) -> GridFunction:
    """(L + lambda2^2 (x^2 + y^2)) f on an (x, y, t) grid, with L = -(X^2 + Y^2)."""
    if f.dims != 3:
        raise InvalidParameterError("the Heisenberg oscillator acts on (x, y, t) grids")
    x, y, _ = f.mesh()
    xx = h1_vector_field("X", h1_vector_field("X", f))
    yy = h1_vector_field("Y", h1_vector_field("Y", f))
    return f.with_values(-(xx.values + yy.values) + lambda2 ** 2 * (x * x + y * y) * f.values)


@dataclass(frozen=True)
class SpectralCoefficients:
    """c[j, m_+, m_-] for lambda1 = lambda1[j]; entries outside ``retained`` are zero."""

    lambda2: float
    lambda1: np.ndarray
    values: np.ndarray
    retained: np.ndarray
    eigenvalues: np.ndarray
    lambda1_weight: float | None
    norm2: float
    warnings: list[str] = field(default_factory=list)

    def __getitem__(self, key) -> complex:
        j, mode = key
        m_p, m_m = eigensystem.as_mode(mode)
        return complex(self.values[j, m_p, m_m])

    def parseval_sum(self) -> float:
        if self.lambda1_weight is None:
            raise InvalidParameterError("Parseval needs the canonical lambda1 samples")
        return float(np.sum(np.abs(self.values) ** 2) * self.lambda1_weight)

    def truncation_bound(self) -> float:
        """||f||^2 minus the captured energy; non-negative up to round-off."""
        return self.norm2 - self.parseval_sum()


def _mode_table(lam, slice_grid: GridFunction, cutoff):
    u1, u2 = slice_grid.mesh()
    mask = eigensystem.resolvable_modes(lam, slice_grid.extents, slice_grid.spacing, *cutoff)
    basis = eigensystem.eigenbasis(lam, cutoff[0], cutoff[1], u1, u2)
    w_p, w_m = eigensystem.frequencies(lam)
    nu = w_p * (2 * np.arange(cutoff[0] + 1)[:, None] + 1) + w_m * (2 * np.arange(cutoff[1] + 1)[None, :] + 1)
    return basis, mask, nu


def _transform(f: GridFunction, lambda1_samples):
    if isinstance(f, CentralFourier):
        return f
    return partial_fourier_central(f, lambda1_samples)


def coefficients(f: GridFunction, lambda2: float, lambda1_samples=None, mode_cutoff=(20, 20)) -> SpectralCoefficients:
    """c_{lambda, m}(f) for every sampled lambda1 and every resolvable mode up to ``mode_cutoff``."""
    if lambda2 == 0:
        raise InvalidParameterError("lambda2 must be non-zero")
    family = _transform(f, lambda1_samples)
    shape = (family.lambda1.size, mode_cutoff[0] + 1, mode_cutoff[1] + 1)
    values = np.zeros(shape, dtype=complex)
    retained = np.zeros(shape, dtype=bool)
    nus = np.zeros(shape)
    for j, l1 in enumerate(family.lambda1):
        lam = Lambda(l1, lambda2)
        g = intertwiner_T_inverse(lam, family.slice(j))
        basis, mask, nu = _mode_table(lam, g, mode_cutoff)
        values[j] = np.einsum("pqij,ij->pq", basis, g.values) * g.cell * mask
        retained[j], nus[j] = mask, nu
    weight = family.lambda1_weight if family.canonical else None
    norm2 = float(np.sum(np.abs(family.values) ** 2) * np.prod(family.spacing) * weight) if weight is not None else math.nan
    return SpectralCoefficients(lambda2, family.lambda1, values, retained, nus, weight, norm2, list(family.warnings))


def apply_operator_coefficients(f: GridFunction, lambda2: float, lambda1_samples=None, mode_cutoff=(20, 20)) -> SpectralCoefficients:
    """Coefficients of (L + lambda2^2 (x^2 + y^2)) f, the operator applied on the grid."""
    return coefficients(heisenberg_oscillator(f, lambda2), lambda2, lambda1_samples, mode_cutoff)


def _normalise_intervals(interval):
    intervals = [interval] if np.ndim(interval[0]) == 0 else list(interval)
    for a, b in intervals:
        if a > b:
            raise InvalidParameterError(f"empty interval [{a}, {b}]")
    return intervals


def indicator(nu: np.ndarray, interval) -> np.ndarray:
    """1 on a closed interval or a finite union of closed intervals."""
    out = np.zeros(nu.shape, dtype=bool)
    for a, b in _normalise_intervals(interval):
        out |= (nu >= a) & (nu <= b)
    return out


def reconstruct(coeffs: SpectralCoefficients, template: GridFunction, weights=None) -> GridFunction:
    """Inverse of :func:`coefficients` on the canonical samples, optionally reweighting modes."""
    if coeffs.lambda1_weight is None:
        raise InvalidParameterError("reconstruction needs the canonical lambda1 samples")
    w = np.ones(coeffs.values.shape) if weights is None else weights
    nx, ny, n_t = template.shape
    hx, hy, ht = template.spacing
    z_template = None
    slices = np.zeros((coeffs.lambda1.size, nx, ny), dtype=complex)
    for j, l1 in enumerate(coeffs.lambda1):
        lam = Lambda(l1, coeffs.lambda2)
        if z_template is None:
            z_template = intertwiner_T_inverse(lam, GridFunction(np.zeros((nx, ny)), (hx, hy)))
        basis, _, _ = _mode_table(lam, z_template, (coeffs.values.shape[1] - 1, coeffs.values.shape[2] - 1))
        g = np.einsum("pq,pqij->ij", coeffs.values[j] * w[j], basis)
        slices[j] = intertwiner_T(lam, z_template.with_values(g), check_decay=False).values
    family = CentralFourier(coeffs.lambda1, slices, (hx, hy), ht, True)
    return inverse_partial_fourier_central(family)


def spectral_projection(f: GridFunction, lambda2: float, interval, mode_cutoff=(20, 20)) -> GridFunction:
    """E(B) f for B a closed interval [a, b] or a finite union of them."""
    coeffs = coefficients(f, lambda2, None, mode_cutoff)
    return reconstruct(coeffs, f, indicator(coeffs.eigenvalues, interval))


def spectrum_samples(lambda2: float, lambda1_grid, mode_cutoff=(20, 20)) -> np.ndarray:
    """Sorted eigenvalues nu_{(lambda1, lambda2), m} over a lambda1 grid and a mode box."""
    vals = []
    for l1 in lambda1_grid:
        w_p, w_m = eigensystem.frequencies(Lambda(l1, lambda2))
        p = 2 * np.arange(mode_cutoff[0] + 1) + 1
        q = 2 * np.arange(mode_cutoff[1] + 1) + 1
        vals.append((w_p * p[:, None] + w_m * q[None, :]).ravel())
    return np.sort(np.concatenate(vals))


def max_gap(lambda2: float, lambda1_grid, upper: float, mode_cutoff=(20, 20)) -> float:
    """Largest gap of the sampled spectrum inside [2|lambda2|, upper]."""
    vals = spectrum_samples(lambda2, lambda1_grid, mode_cutoff)
    vals = np.concatenate([[spectrum_bottom(lambda2)], vals[vals <= upper], [upper]])
    return float(np.diff(np.unique(vals)).max())
