"""Hermite polynomials, Hermite functions and Gauss-Hermite quadrature.

``hermite_functions`` is the workhorse: it runs the three-term recurrence for
the orthonormal functions

    hn_{m+1}(x) = sqrt(2/(m+1)) x hn_m(x) - sqrt(m/(m+1)) hn_{m-1}(x)

on the polynomial part only and carries a per-point log scale, so nothing
overflows or underflows before the Gaussian factor is applied at the end.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError, InvalidParameterError, UnsupportedDegreeError

MAX_DEGREE = 200
MAX_NODES = 200
_RESCALE = 1e150


def _check_degree(m: int) -> int:
    if int(m) != m or m < 0:
        raise InvalidParameterError(f"degree must be a non-negative integer, got {m!r}")
    if m > MAX_DEGREE:
        raise UnsupportedDegreeError(f"degree {m} exceeds the supported cap {MAX_DEGREE}")
    return int(m)


def hermite_polynomial(m: int, x):
    """Physicists' Hermite polynomial H_m(x) by H_{k+1} = 2x H_k - 2k H_{k-1}."""
    m = _check_degree(m)
    x = np.asarray(x, dtype=float)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for k in range(m):
        prev, cur = cur, 2 * x * cur - 2 * k * prev
    return cur if cur.ndim else float(cur)


def _scaled_recurrence(mmax: int, x: np.ndarray, keep_all: bool):
    """Polynomial part of hn_0..hn_mmax with running log scales."""
    prev = np.zeros_like(x)
    cur = np.full_like(x, math.pi ** -0.25)
    log_scale = np.zeros_like(x)
    out = np.empty((mmax + 1,) + x.shape) if keep_all else None
    if keep_all:
        out[0] = cur * np.exp(log_scale - x * x / 2)
    for k in range(mmax):
        prev, cur = cur, math.sqrt(2.0 / (k + 1)) * x * cur - math.sqrt(k / (k + 1)) * prev
        big = np.abs(cur) > _RESCALE
        if np.any(big):
            cur = np.where(big, cur / _RESCALE, cur)
            prev = np.where(big, prev / _RESCALE, prev)
            log_scale = log_scale + big * math.log(_RESCALE)
        if keep_all:
            out[k + 1] = cur * np.exp(log_scale - x * x / 2)
    if keep_all:
        return out
    return cur * np.exp(log_scale - x * x / 2)


def hermite_functions(mmax: int, x) -> np.ndarray:
    """Orthonormal Hermite functions of every order 0..mmax, shape (mmax+1, *x.shape)."""
    mmax = _check_degree(mmax)
    return _scaled_recurrence(mmax, np.asarray(x, dtype=float), keep_all=True)


def hermite_function(m: int, x, normalized: bool = False):
    """Hermite function of order m.

    With ``normalized=False`` this is ``exp(-x^2/2) H_m(x)``; with
    ``normalized=True`` it is the unit-L2-norm function
    ``(2^m m! sqrt(pi))^(-1/2) exp(-x^2/2) H_m(x)``.
    """
    m = _check_degree(m)
    x = np.asarray(x, dtype=float)
    value = _scaled_recurrence(m, x, keep_all=False)
    if not normalized:
        value = value * math.exp(0.5 * (m * math.log(2) + math.lgamma(m + 1) + 0.5 * math.log(math.pi)))
    return value if value.ndim else float(value)


def _orthonormal_poly_pair(n: int, x: np.ndarray):
    """Values of p_n and p_{n-1} (orthonormal w.r.t. exp(-x^2)), up to a common scale."""
    prev = np.zeros_like(x)
    cur = np.full_like(x, math.pi ** -0.25)
    for k in range(n):
        prev, cur = cur, math.sqrt(2.0 / (k + 1)) * x * cur - math.sqrt(k / (k + 1)) * prev
        scale = np.maximum(np.abs(cur), 1.0)
        cur, prev = cur / scale, prev / scale
    return cur, prev


@lru_cache(maxsize=64)
def _gauss_hermite(n: int):
    if n == 1:
        return np.array([0.0]), np.array([math.sqrt(math.pi)])
    off = np.sqrt(np.arange(1, n) / 2.0)
    x = eigh_tridiagonal(np.zeros(n), off, eigvals_only=True)
    # Newton polish on p_n; p_n' = sqrt(2n) p_{n-1}
    for _ in range(50):
        p, q = _orthonormal_poly_pair(n, x)
        dx = p / (math.sqrt(2 * n) * q)
        x = x - dx
        if np.all(np.abs(dx) <= 1e-15 * np.maximum(1.0, np.abs(x))):
            break
    else:
        raise ConvergenceError(
            f"Gauss-Hermite root polish did not converge for n={n}",
            residuals=np.abs(dx),
        )
    x = np.sort(x)
    x = 0.5 * (x - x[::-1])
    h = hermite_functions(n - 1, x)
    w = np.exp(-x * x) / np.sum(h * h, axis=0)
    w = 0.5 * (w + w[::-1])
    return x, w


def gauss_hermite_nodes(n: int) -> list[tuple[float, float]]:
    """Nodes and weights of the n-point rule for the weight exp(-x^2)."""
    if int(n) != n or not 1 <= n <= MAX_NODES:
        raise InvalidParameterError(f"node count must lie in [1, {MAX_NODES}], got {n!r}")
    x, w = _gauss_hermite(int(n))
    return list(zip(x.tolist(), w.tolist()))


def gauss_hermite_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Same rule as :func:`gauss_hermite_nodes`, as read-only arrays."""
    gauss_hermite_nodes(n)
    x, w = _gauss_hermite(int(n))
    x, w = x.copy(), w.copy()
    x.flags.writeable = w.flags.writeable = False
    return x, w
