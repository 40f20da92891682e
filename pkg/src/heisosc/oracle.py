"""Finite-difference eigensolver for the oscillator, used as an independent check.

The operator -d^2/du1^2 - d^2/du2^2 + (l1 u1 - l2 u2)^2 + (l2 u1)^2 is
discretised with the 5-point Laplacian on the interior nodes of [-R, R]^2
(Dirichlet boundary) and its lowest eigenvalues are found by shift-invert
Lanczos (ARPACK).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .eigensystem import enumerate_spectrum, frequencies
from .errors import ConvergenceError, InvalidParameterError
from .quadform import Lambda, as_lambda, diagonalize

ENVELOPE_TOL = 1e-10


@dataclass(frozen=True)
class FdProblem:
    lam: Lambda
    half_width: float
    n_points: int
    n_eigs: int

    def __post_init__(self):
        object.__setattr__(self, "lam", as_lambda(self.lam))
        if self.n_points < 32:
            raise InvalidParameterError("n_points must be at least 32")
        if self.half_width <= 0 or self.n_eigs < 1:
            raise InvalidParameterError("half_width and n_eigs must be positive")

    @property
    def spacing(self) -> float:
        return 2 * self.half_width / (self.n_points + 1)

    def nodes(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(1, self.n_points + 1)


def default_half_width(lam, n_eigs: int) -> float:
    """Half-width at which the envelope of the n_eigs-th mode is below ENVELOPE_TOL.

    Uses the widest principal direction and the largest m_- among the
    requested modes: turning point sqrt(2m+1) plus the Gaussian tail length
    sqrt(2 ln(1/tol)), in units of mu_-^(-1/4).
    """
    pairs = enumerate_spectrum(lam, n_eigs)
    m = max(max(p.mode.m_plus, p.mode.m_minus) for p in pairs)
    mu_min = diagonalize(lam).mu_minus
    tail = math.sqrt(2 * math.log(1 / ENVELOPE_TOL))
    return (math.sqrt(2 * m + 1) + tail) / mu_min ** 0.25


def fd_matrix(problem: FdProblem) -> sp.csr_matrix:
    n, h = problem.n_points, problem.spacing
    l1, l2 = problem.lam
    lap1 = sp.diags([-np.ones(n - 1), 2 * np.ones(n), -np.ones(n - 1)], [-1, 0, 1]) / h ** 2
    eye = sp.identity(n)
    u = problem.nodes()
    u1, u2 = np.meshgrid(u, u, indexing="ij")
    pot = ((l1 * u1 - l2 * u2) ** 2 + (l2 * u1) ** 2).ravel()
    return (sp.kron(lap1, eye) + sp.kron(eye, lap1) + sp.diags(pot)).tocsc()


def fd_eigen(problem: FdProblem, maxiter: int = 5000):
    """Lowest eigenvalues (ascending) and eigenvectors reshaped onto the node grid."""
    a = fd_matrix(problem)
    v0 = np.ones(a.shape[0])
    try:
        vals, vecs = eigsh(a, k=problem.n_eigs, sigma=0.0, which="LM", v0=v0, maxiter=maxiter, tol=1e-12)
    except ArpackNoConvergence as exc:
        res = [float(np.linalg.norm(a @ v - e * v)) for e, v in zip(exc.eigenvalues, exc.eigenvectors.T)]
        raise ConvergenceError("finite-difference eigensolver did not converge", residuals=res) from exc
    order = np.argsort(vals)
    vals = vals[order]
    vecs = vecs[:, order].T.reshape(problem.n_eigs, problem.n_points, problem.n_points)
    return vals, vecs


def fd_eigenvalues(problem: FdProblem) -> list[float]:
    return fd_eigen(problem)[0].tolist()


def boundary_envelope(vecs: np.ndarray) -> float:
    """Largest edge magnitude of the eigenvectors relative to their peaks."""
    worst = 0.0
    for v in vecs:
        edge = max(np.abs(v[0]).max(), np.abs(v[-1]).max(), np.abs(v[:, 0]).max(), np.abs(v[:, -1]).max())
        worst = max(worst, edge / np.abs(v).max())
    return float(worst)


def richardson(values_coarse, values_fine, h_coarse: float, h_fine: float) -> np.ndarray:
    """Eliminate the h^2 term from two second-order approximations."""
    c = np.asarray(values_coarse)
    f = np.asarray(values_fine)
    return (h_coarse ** 2 * f - h_fine ** 2 * c) / (h_coarse ** 2 - h_fine ** 2)


def clusters(values, rtol: float = 1e-8) -> list[list[int]]:
    """Group indices of a sorted list whose values coincide to ``rtol``."""
    groups = [[0]]
    for i in range(1, len(values)):
        if abs(values[i] - values[groups[-1][0]]) <= rtol * max(abs(values[i]), 1.0):
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


@dataclass
class FdReport:
    lam: Lambda
    resolutions: list[int]
    half_width: float
    exact: list[float]
    raw: dict[int, list[float]]
    extrapolated: list[float]
    deviations: list[float]
    cluster_deviations: list[float]
    envelope: float
    notes: list[str] = field(default_factory=list)

    @property
    def max_deviation(self) -> float:
        return max(self.deviations)


def fd_compare(lam, mode_count: int, resolutions=(128, 256), half_width: float | None = None) -> FdReport:
    """FD eigenvalues at each resolution, Richardson-extrapolated from the two finest."""
    lam = as_lambda(lam)
    if len(resolutions) < 2:
        raise InvalidParameterError("Richardson extrapolation needs two resolutions")
    r = default_half_width(lam, mode_count) if half_width is None else half_width
    raw, spacing, envelope = {}, {}, 0.0
    for n in resolutions:
        problem = FdProblem(lam, r, n, mode_count)
        vals, vecs = fd_eigen(problem)
        raw[n] = vals.tolist()
        spacing[n] = problem.spacing
        envelope = max(envelope, boundary_envelope(vecs))
    coarse, fine = sorted(resolutions)[-2:]
    extrap = richardson(raw[coarse], raw[fine], spacing[coarse], spacing[fine])
    exact = [p.eigenvalue for p in enumerate_spectrum(lam, mode_count)]
    deviations = np.abs(extrap - exact).tolist()
    cluster_dev = [
        abs(float(np.mean(extrap[g])) - float(np.mean(np.asarray(exact)[g]))) for g in clusters(exact)
    ]
    notes = []
    if envelope > 1e-6:
        notes.append(f"eigenvectors reach the Dirichlet wall: edge/peak = {envelope:.2e}")
    return FdReport(lam, list(resolutions), r, exact, raw, extrap.tolist(), deviations, cluster_dev, envelope, notes)


def spectral_floor(lam) -> float:
    return sum(frequencies(lam))
