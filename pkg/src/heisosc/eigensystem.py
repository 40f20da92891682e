"""Eigenvalues and eigenfunctions of the representation image of the sublaplacian.

In principal-axis coordinates the operator splits into two 1D oscillators
-d^2 + mu_pm s^2, so the eigenpairs are products of dilated Hermite functions
with eigenvalues sqrt(mu_+)(2 m_+ + 1) + sqrt(mu_-)(2 m_- + 1).
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .grid import GridFunction
from .hermite import MAX_DEGREE, hermite_functions
from .quadform import Lambda, as_lambda, diagonalize, to_principal_axes

MAX_COUNT = 10000


@dataclass(frozen=True, order=True)
class ModeIndex:
    m_plus: int
    m_minus: int

    def __post_init__(self):
        for m in (self.m_plus, self.m_minus):
            if int(m) != m or not 0 <= m <= MAX_DEGREE:
                raise InvalidParameterError(f"mode components must lie in [0, {MAX_DEGREE}]")
        object.__setattr__(self, "m_plus", int(self.m_plus))
        object.__setattr__(self, "m_minus", int(self.m_minus))

    def __iter__(self):
        return iter((self.m_plus, self.m_minus))


def as_mode(mode) -> ModeIndex:
    return mode if isinstance(mode, ModeIndex) else ModeIndex(*mode)


@dataclass(frozen=True)
class EigenPair:
    lam: Lambda
    mode: ModeIndex
    eigenvalue: float


def frequencies(lam) -> tuple[float, float]:
    """(sqrt(mu_+), sqrt(mu_-)), the two oscillator frequencies."""
    d = diagonalize(lam)
    return math.sqrt(d.mu_plus), math.sqrt(d.mu_minus)


def eigenvalue(lam, mode) -> float:
    m_p, m_m = as_mode(mode)
    w_p, w_m = frequencies(lam)
    return w_p * (2 * m_p + 1) + w_m * (2 * m_m + 1)


def enumerate_spectrum(lam, count: int) -> list[EigenPair]:
    """The ``count`` smallest eigenvalues in ascending order, with multiplicity.

    Exact ties (up to 1e-12 relative) are ordered lexicographically by mode.
    """
    lam = as_lambda(lam)
    if int(count) != count or not 1 <= count <= MAX_COUNT:
        raise InvalidParameterError(f"count must lie in [1, {MAX_COUNT}]")
    w_p, w_m = frequencies(lam)

    def nu(p, q):
        return w_p * (2 * p + 1) + w_m * (2 * q + 1)

    # best-first walk of the monotone lattice; collect past the cutoff to catch ties
    heap = [(nu(0, 0), 0, 0)]
    seen = {(0, 0)}
    found = []
    cutoff = None
    while heap:
        value, p, q = heapq.heappop(heap)
        if cutoff is not None and value > cutoff * (1 + 1e-12):
            break
        found.append((value, p, q))
        if len(found) == count:
            cutoff = value
        for a, b in ((p + 1, q), (p, q + 1)):
            if a <= MAX_DEGREE and b <= MAX_DEGREE and (a, b) not in seen:
                seen.add((a, b))
                heapq.heappush(heap, (nu(a, b), a, b))
    scale = found[-1][0]
    found.sort(key=lambda r: (round(r[0] / scale, 12), r[1], r[2]))
    return [EigenPair(lam, ModeIndex(p, q), v) for v, p, q in found[:count]]


def _scaled_coordinates(lam, u1, u2):
    d = diagonalize(lam)
    s1, s2 = to_principal_axes(d, u1, u2)
    return d.mu_plus ** 0.25 * s1, d.mu_minus ** 0.25 * s2


def eigenfunction(lam, mode, u1, u2):
    """Unit-norm eigenfunction |l2|^(1/2) hn_{m+}(mu_+^(1/4) u1') hn_{m-}(mu_-^(1/4) u2')."""
    lam = as_lambda(lam)
    m_p, m_m = as_mode(mode)
    a, b = _scaled_coordinates(lam, u1, u2)
    value = math.sqrt(abs(lam.lambda2)) * hermite_functions(m_p, a)[m_p] * hermite_functions(m_m, b)[m_m]
    return value if np.ndim(value) else float(value)


def eigenbasis(lam, max_plus: int, max_minus: int, u1, u2) -> np.ndarray:
    """All eigenfunctions with m_+ <= max_plus, m_- <= max_minus.

    Returns an array of shape (max_plus + 1, max_minus + 1, *u1.shape).
    """
    lam = as_lambda(lam)
    a, b = _scaled_coordinates(lam, u1, u2)
    hp = hermite_functions(max_plus, a)
    hm = hermite_functions(max_minus, b)
    return math.sqrt(abs(lam.lambda2)) * hp[:, None] * hm[None, :]


def eigenfunction_grid(lam, mode, extents, spacing) -> GridFunction:
    return GridFunction.from_callable(lambda u1, u2: eigenfunction(lam, mode, u1, u2), extents, spacing)


def resolvable_modes(lam, extents, spacing, max_plus: int, max_minus: int, margin: float = 4.0) -> np.ndarray:
    """Boolean mask of the modes that a 2D grid samples without visible loss.

    In principal-axis coordinates a product of Hermite functions is negligible
    once either factor is ``margin`` units past its classical turning point,
    so its essential support is a cross made of two rectangles. A mode is kept
    when the bounding box of that rotated cross fits in the window and the
    same shape in frequency space (Hermite functions are their own Fourier
    transforms) fits in the Nyquist band.
    """
    d = diagonalize(lam)
    a, b = d.mu_plus ** 0.25, d.mu_minus ** 0.25
    r = np.abs(d.rotation)
    tp = np.sqrt(2 * np.arange(max_plus + 1) + 1.0)[:, None]
    tq = np.sqrt(2 * np.arange(max_minus + 1) + 1.0)[None, :]
    keep = np.ones((max_plus + 1, max_minus + 1), dtype=bool)
    for axis in range(2):
        for p, q in ((tp + margin, tq), (tp, tq + margin)):
            reach = r[axis, 0] * p / a + r[axis, 1] * q / b
            band = r[axis, 0] * p * a + r[axis, 1] * q * b
            keep &= (reach <= extents[axis]) & (band <= math.pi / spacing[axis])
    return keep
