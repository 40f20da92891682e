"""Uniform symmetric grids and the FFT tools that act on them.

A :class:`GridFunction` samples a complex function on the tensor grid
``{-R, -R + h, ..., R - h, R}`` along each axis. Every axis therefore has an
odd number of points and contains the origin, which keeps centred DFTs free of
a Nyquist bin and makes spectral derivatives exact for band-limited data.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, InvalidParameterError


def axis_points(half_width: float, spacing: float) -> np.ndarray:
    """Symmetric 1D grid on [-half_width, half_width] with the given spacing."""
    if spacing <= 0 or half_width <= 0:
        raise InvalidParameterError("half_width and spacing must be positive")
    ratio = half_width / spacing
    m = int(round(ratio))
    if abs(ratio - m) > 1e-9 * max(1.0, ratio):
        raise InvalidParameterError(
            f"spacing {spacing!r} does not divide the half-width {half_width!r}"
        )
    return np.arange(-m, m + 1) * spacing


@dataclass(frozen=True)
class GridFunction:
    values: np.ndarray
    spacing: tuple[float, ...]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        spacing = tuple(float(s) for s in np.atleast_1d(self.spacing))
        if values.ndim not in (1, 2, 3):
            raise InvalidParameterError("grid functions are 1D, 2D or 3D")
        if len(spacing) != values.ndim:
            raise InvalidParameterError("one spacing per axis is required")
        if any(n % 2 == 0 for n in values.shape):
            raise InvalidParameterError("symmetric grids need an odd point count per axis")
        if any(s <= 0 for s in spacing):
            raise InvalidParameterError("spacing must be positive")
        if not np.all(np.isfinite(values)):
            raise InvalidParameterError("grid values must be finite")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "spacing", spacing)

    @classmethod
    def from_callable(
        cls,
        fn: Callable[..., np.ndarray],
        extents: Sequence[float],
        spacing: Sequence[float],
    ) -> "GridFunction":
        axes = [axis_points(r, h) for r, h in zip(extents, spacing)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return cls(np.broadcast_to(fn(*mesh), mesh[0].shape), tuple(spacing))

    @property
    def dims(self) -> int:
        return self.values.ndim

    @property
    def shape(self) -> tuple[int, ...]:
        return self.values.shape

    @property
    def extents(self) -> tuple[float, ...]:
        return tuple((n - 1) // 2 * h for n, h in zip(self.shape, self.spacing))

    @property
    def cell(self) -> float:
        return float(np.prod(self.spacing))

    def axes(self) -> list[np.ndarray]:
        return [np.arange(-(n // 2), n // 2 + 1) * h for n, h in zip(self.shape, self.spacing)]

    def mesh(self) -> list[np.ndarray]:
        return np.meshgrid(*self.axes(), indexing="ij")

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(values, self.spacing)

    def same_grid(self, other: "GridFunction") -> bool:
        return self.shape == other.shape and np.allclose(self.spacing, other.spacing, rtol=1e-12)

    def inner(self, other: "GridFunction") -> complex:
        """Trapezoidal L2 inner product, linear in ``self``."""
        if not self.same_grid(other):
            raise InvalidParameterError("inner product needs identical grids")
        return complex(np.vdot(other.values, self.values) * self.cell)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.cell))

    def boundary_ratio(self) -> float:
        """Largest boundary magnitude relative to the overall maximum."""
        peak = np.abs(self.values).max()
        if peak == 0:
            return 0.0
        edge = 0.0
        for axis in range(self.dims):
            for idx in (0, -1):
                edge = max(edge, np.abs(np.take(self.values, idx, axis=axis)).max())
        return float(edge / peak)

    def __add__(self, other):
        return self.with_values(self.values + _values(other))

    def __sub__(self, other):
        return self.with_values(self.values - _values(other))

    def __mul__(self, scalar):
        return self.with_values(self.values * scalar)

    __rmul__ = __mul__


def _values(obj):
    return obj.values if isinstance(obj, GridFunction) else obj


def wavenumbers(n: int, spacing: float) -> np.ndarray:
    return 2 * np.pi * np.fft.fftfreq(n, d=spacing)


def spectral_derivative(values: np.ndarray, spacing: float, axis: int, order: int = 1) -> np.ndarray:
    """Fourier derivative of periodic samples along ``axis``."""
    n = values.shape[axis]
    k = wavenumbers(n, spacing)
    shape = [1] * values.ndim
    shape[axis] = n
    factor = (1j * k.reshape(shape)) ** order
    return np.fft.ifft(factor * np.fft.fft(values, axis=axis), axis=axis)


def fourier_shift(values: np.ndarray, spacing: float, axis: int, shift: float) -> np.ndarray:
    """Band-limited resampling ``f(x) -> f(x + shift)`` along one axis.

    The samples are zero padded by at least ``|shift|`` on each side so that
    content leaving the window is not wrapped back in.
    """
    if shift == 0:
        return np.asarray(values, dtype=complex)
    n = values.shape[axis]
    half_width = (n // 2) * spacing
    if abs(shift) > half_width:
        raise DomainError(
            f"translation {shift:g} exceeds the grid half-width {half_width:g}"
        )
    pad = int(np.ceil(abs(shift) / spacing)) + 8
    widths = [(0, 0)] * values.ndim
    widths[axis] = (pad, pad)
    padded = np.pad(np.asarray(values, dtype=complex), widths)
    k = wavenumbers(padded.shape[axis], spacing)
    shape = [1] * values.ndim
    shape[axis] = k.size
    moved = np.fft.ifft(
        np.exp(1j * k.reshape(shape) * shift) * np.fft.fft(padded, axis=axis), axis=axis
    )
    return np.take(moved, np.arange(pad, pad + n), axis=axis)


def centred_dft(values: np.ndarray, axis: int, sign: int = -1) -> np.ndarray:
    """``G_j = sum_k exp(sign * 2 pi i j k / N) g_k`` with j, k centred on zero."""
    n = values.shape[axis]
    shifted = np.fft.ifftshift(values, axes=axis)
    if sign < 0:
        out = np.fft.fft(shifted, axis=axis)
    else:
        out = np.fft.ifft(shifted, axis=axis) * n
    return np.fft.fftshift(out, axes=axis)
