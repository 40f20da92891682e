"""The quadratic potential of the oscillator and its principal axes.

For lambda = (l1, l2) the potential (l1 u1 - l2 u2)^2 + (l2 u1)^2 equals
u^T M u with

    M = [[l1^2 + l2^2, -l1 l2],
         [-l1 l2,       l2^2 ]].

Its eigenvalues are mu_pm = (l1^2 + 2 l2^2 pm |l1| sqrt(l1^2 + 4 l2^2)) / 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError


@dataclass(frozen=True)
class Lambda:
    """Parameter pair (lambda1, lambda2) with lambda2 != 0."""

    lambda1: float
    lambda2: float

    def __post_init__(self):
        l1, l2 = float(self.lambda1), float(self.lambda2)
        if not (math.isfinite(l1) and math.isfinite(l2)):
            raise InvalidParameterError("lambda components must be finite")
        if l2 == 0:
            raise InvalidParameterError("lambda2 must be non-zero")
        object.__setattr__(self, "lambda1", l1)
        object.__setattr__(self, "lambda2", l2)

    def __iter__(self):
        return iter((self.lambda1, self.lambda2))


def as_lambda(lam) -> Lambda:
    if isinstance(lam, Lambda):
        return lam
    l1, l2 = lam
    return Lambda(l1, l2)


def potential_matrix(lam) -> np.ndarray:
    l1, l2 = as_lambda(lam)
    return np.array([[l1 * l1 + l2 * l2, -l1 * l2], [-l1 * l2, l2 * l2]])


def mu_values(lam) -> tuple[float, float]:
    """(mu_plus, mu_minus); mu_minus uses the rationalised form 2 l2^4 / (a + b)."""
    l1, l2 = as_lambda(lam)
    a = l1 * l1 + 2 * l2 * l2
    b = abs(l1) * math.sqrt(l1 * l1 + 4 * l2 * l2)
    if b == 0:
        return l2 * l2, l2 * l2
    mu_p = 0.5 * (a + b)
    return mu_p, min(2 * l2 ** 4 / (a + b), mu_p)


@dataclass(frozen=True)
class QuadFormDiag:
    m_matrix: np.ndarray
    mu_plus: float
    mu_minus: float
    rotation: np.ndarray

    def to_principal_axes(self, u1, u2):
        return to_principal_axes(self, u1, u2)


def _positive_first(col: np.ndarray) -> np.ndarray:
    nz = col[np.abs(col) > 0]
    return -col if nz.size and nz[0] < 0 else col


def diagonalize(lam) -> QuadFormDiag:
    """Eigen-decomposition of M with columns of ``rotation`` ordered (mu_plus, mu_minus)."""
    lam = as_lambda(lam)
    l1, l2 = lam
    mu_p, mu_m = mu_values(lam)
    if l1 == 0:
        rotation = np.eye(2)
    else:
        s = math.sqrt(l1 * l1 + 4 * l2 * l2)
        sgn = math.copysign(1.0, l1)
        # cancellation-free rescalings of the textbook eigenvectors
        v_plus = np.array([sgn, -2 * l2 / (abs(l1) + s)])
        v_minus = np.array([sgn * l2, 0.5 * (abs(l1) + s)])
        rotation = np.column_stack([
            _positive_first(v_plus / np.linalg.norm(v_plus)),
            _positive_first(v_minus / np.linalg.norm(v_minus)),
        ])
    m = potential_matrix(lam)
    m.flags.writeable = False
    rotation.flags.writeable = False
    return QuadFormDiag(m, mu_p, mu_m, rotation)


def to_principal_axes(diag: QuadFormDiag, u1, u2):
    """Principal-axis coordinates u' = rotation^T u, so u^T M u = mu_+ u1'^2 + mu_- u2'^2."""
    r = diag.rotation
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    return r[0, 0] * u1 + r[1, 0] * u2, r[0, 1] * u1 + r[1, 1] * u2


def entrywise_rotation(lam) -> np.ndarray:
    """The explicit matrix k_lambda in explicit entrywise form, valid for l1 != 0."""
    l1, l2 = as_lambda(lam)
    if l1 == 0:
        raise InvalidParameterError("the entrywise formula is 0/0 at lambda1 = 0")
    s = math.sqrt(l1 * l1 + 4 * l2 * l2)
    cols = []
    for eps in (-1, 1):
        second = (l1 * l1 + eps * abs(l1) * s) / 2
        norm = math.sqrt((l1 * l2) ** 2 + second ** 2)
        cols.append([l1 * l2 / norm, second / norm])
    return np.array(cols).T
