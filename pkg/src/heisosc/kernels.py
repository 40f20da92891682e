"""Mehler-type heat kernels for the oscillator and its conjugate by T.

Two scalings of the 1D kernel are available. ``"dilation"`` is the kernel of
exp(-t(-d^2 + mu x^2)):

    K(x, y) = mu^(1/4) e^{-t sqrt(mu)} Q_{t sqrt(mu)}(mu^(1/4) x, mu^(1/4) y),

and it is the default because its eigen-expansion over dilated Hermite
functions with eigenvalues sqrt(mu)(2m+1) matches to round-off (see
:func:`convention_residuals`). ``"literal"`` is
sqrt(mu) e^{-t mu} Q_{t mu}(sqrt(mu) x, sqrt(mu) y), which is the kernel of
exp(-t(-d^2 + mu^2 x^2)) instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import eigensystem
from .errors import InvalidParameterError, NearDeltaError, TruncationError
from .grid import GridFunction
from .hermite import hermite_functions
from .quadform import as_lambda, diagonalize, to_principal_axes

T_MIN = 1e-8
CONVENTIONS = ("dilation", "literal")
DEFAULT_CONVENTION = "dilation"


@dataclass(frozen=True)
class MehlerParams:
    t: float
    mu: float

    def __post_init__(self):
        if not self.t > 0 or not self.mu > 0:
            raise InvalidParameterError("Mehler parameters need t > 0 and mu > 0")


def _check_time(t):
    if not t > T_MIN:
        raise NearDeltaError(
            f"t={t!r} is below {T_MIN:g}; the closed form degenerates into a delta, "
            "use the eigen-expansion instead"
        )


def mehler_q(t: float, x, y):
    """Kernel of exp(-t(-d^2 + x^2 - 1))."""
    _check_time(t)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    # F_t rewritten as coth(2t)(x - y)^2 / 2 + tanh(t) x y, stable for small t
    f = 0.5 * (x - y) ** 2 / math.tanh(2 * t) + math.tanh(t) * (x * y)
    out = (math.pi * -math.expm1(-4 * t)) ** -0.5 * np.exp(-f)
    return out if out.ndim else float(out)


def _scaling(t: float, mu: float, convention: str):
    """(s, tau) such that K(x, y) = s e^{-tau} Q_tau(s x, s y)."""
    MehlerParams(t, mu)
    if convention == "dilation":
        return mu ** 0.25, t * math.sqrt(mu)
    if convention == "literal":
        return math.sqrt(mu), t * mu
    raise InvalidParameterError(f"unknown convention {convention!r}; pick one of {CONVENTIONS}")


def mehler_k(t: float, mu: float, x, y, convention: str = DEFAULT_CONVENTION):
    """1D kernel of exp(-t(-d^2 + mu x^2)) under the chosen scaling convention."""
    s, tau = _scaling(t, mu, convention)
    _check_time(tau)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = s * math.exp(-tau) * mehler_q(tau, s * x, s * y)
    return out if np.ndim(out) else float(out)


def mehler_k_series(t: float, mu: float, x, y, terms: int = 60):
    """Truncated eigen-series sum_m exp(-t sqrt(mu)(2m+1)) hm(x) hm(y), hm dilated by mu^(1/4)."""
    s = mu ** 0.25
    hx = s ** 0.5 * hermite_functions(terms - 1, s * np.asarray(x, dtype=float))
    hy = s ** 0.5 * hermite_functions(terms - 1, s * np.asarray(y, dtype=float))
    decay = np.exp(-t * math.sqrt(mu) * (2 * np.arange(terms) + 1))
    decay = decay.reshape((-1,) + (1,) * (hx.ndim - 1))
    return np.sum(decay * hx * hy, axis=0)


def convention_residuals(t_values=(0.5, 1.0, 2.0), mu_values=(0.381966, 2.618034, 5.0), terms=80) -> dict:
    """Max relative deviation of each convention from the eigen-series."""
    x = np.linspace(-2.5, 2.5, 11)
    xx, yy = np.meshgrid(x, x, indexing="ij")
    result = {}
    for conv in CONVENTIONS:
        worst = 0.0
        for t in t_values:
            for mu in mu_values:
                ref = mehler_k_series(t, mu, xx, yy, terms)
                got = mehler_k(t, mu, xx, yy, conv)
                worst = max(worst, float(np.abs(got - ref).max() / np.abs(ref).max()))
        result[conv] = worst
    return result


def kernel_kappa(lam, t: float, u, v, convention: str = DEFAULT_CONVENTION):
    """Kernel of exp(-t d pi_lambda(L)) at points u, v given in the original coordinates."""
    d = diagonalize(lam)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    a1, a2 = to_principal_axes(d, u[..., 0], u[..., 1])
    b1, b2 = to_principal_axes(d, v[..., 0], v[..., 1])
    out = mehler_k(t, d.mu_plus, a1, b1, convention) * mehler_k(t, d.mu_minus, a2, b2, convention)
    return out if np.ndim(out) else float(out)


def _kernel_widths(lam, t):
    """Narrowest and widest Gaussian scale of kappa, in original units."""
    d = diagonalize(lam)
    narrow, wide = math.inf, 0.0
    for mu in (d.mu_plus, d.mu_minus):
        tau = t * math.sqrt(mu)
        s = mu ** 0.25
        narrow = min(narrow, math.sqrt(math.tanh(tau)) / s)
        wide = max(wide, 1 / (math.sqrt(math.tanh(tau)) * s))
    return narrow, wide


def _rho_quadrature(lam, t, y_max, points_per_width=4.0, n_widths=9.0):
    l2 = as_lambda(lam).lambda2
    narrow, wide = _kernel_widths(lam, t)
    h = min(narrow / points_per_width, math.pi / (4 * abs(l2) * max(y_max, 1.0)))
    m = int(math.ceil((n_widths * wide + y_max) / h))
    return np.arange(-m, m + 1) * h, h


def kernel_q_rho(lam, t: float, p, q, convention: str = DEFAULT_CONVENTION) -> complex:
    """Kernel of exp(-t d rho_lambda(L)) at p = (x_o, y_o), q = (x, y).

    The (y1, y2) integral of the Gaussian-times-phase integrand is a
    trapezoidal sum; its spacing resolves both the kernel width and the phase.
    """
    lam = as_lambda(lam)
    l1, l2 = lam
    xo, yo = (float(c) for c in p)
    x, y = (float(c) for c in q)
    nodes, h = _rho_quadrature(lam, t, max(abs(yo), abs(y)))
    y1, y2 = np.meshgrid(nodes, nodes, indexing="ij")
    u = np.stack([np.full_like(y1, xo), y1], axis=-1)
    v = np.stack([np.full_like(y2, x), y2], axis=-1)
    integrand = np.exp(1j * l2 * (y2 * y - yo * y1)) * kernel_kappa(lam, t, u, v, convention)
    total = integrand.sum() * h * h
    return complex(abs(l2) / (2 * math.pi) * np.exp(0.5j * l1 * (xo * yo - x * y)) * total)


def kernel_q_rho_grid(lam, t: float, xo: float, x: float, n: int = 257, convention: str = DEFAULT_CONVENTION) -> GridFunction:
    """All values y_o, y -> Q((x_o, y_o), (x, y)) on a self-dual grid, via FFTs in y1 and y2.

    Returns a 2D grid function indexed by (y_o, y).
    """
    from .transforms import self_dual_spacing
    from .grid import centred_dft

    lam = as_lambda(lam)
    l1, l2 = lam
    h = self_dual_spacing(l2, n)
    ys = (np.arange(n) - n // 2) * h
    y1, y2 = np.meshgrid(ys, ys, indexing="ij")
    u = np.stack([np.full_like(y1, xo), y1], axis=-1)
    v = np.stack([np.full_like(y2, x), y2], axis=-1)
    kap = kernel_kappa(lam, t, u, v, convention).astype(complex)
    sgn = int(math.copysign(1, l2))
    # exp(-i l2 y_o y1) over y1, then exp(+i l2 y y2) over y2
    inner = centred_dft(kap, axis=0, sign=-sgn)
    inner = centred_dft(inner, axis=1, sign=sgn)
    yo_m, y_m = np.meshgrid(ys, ys, indexing="ij")
    out = abs(l2) / (2 * math.pi) * h * h * np.exp(0.5j * l1 * (xo * yo_m - x * y_m)) * inner
    return GridFunction(out, (h, h))


# ---------------------------------------------------------------- semigroup

def _grid_points(f: GridFunction) -> np.ndarray:
    u1, u2 = f.mesh()
    return np.stack([u1.ravel(), u2.ravel()], axis=-1)


def _apply_kernel(lam, t, fs, convention, chunk=256):
    """Trapezoidal quadrature of kappa against each input, one block of output rows at a time."""
    grid = fs[0]
    pts = _grid_points(grid)
    d = diagonalize(lam)
    a1, a2 = to_principal_axes(d, pts[:, 0], pts[:, 1])
    stack = np.stack([f.values.ravel() for f in fs], axis=1) * grid.cell
    # both 1D factors share one exponential: log kappa = c0 - sum_k (p_k (a - b)^2 + q_k a b)
    c0, coef = 0.0, []
    for mu, a in ((d.mu_plus, a1), (d.mu_minus, a2)):
        s, tau = _scaling(t, mu, convention)
        _check_time(tau)
        c0 += math.log(s) - tau - 0.5 * math.log(math.pi * -math.expm1(-4 * tau))
        coef.append((a, 0.5 * s * s / math.tanh(2 * tau), s * s * math.tanh(tau)))
    out = np.empty_like(stack)
    for start in range(0, pts.shape[0], chunk):
        rows = slice(start, start + chunk)
        expo = np.full((pts[rows].shape[0], pts.shape[0]), c0)
        for a, p, q in coef:
            diff = np.subtract.outer(a[rows], a)
            np.multiply(diff, diff, out=diff)
            diff *= p
            expo -= diff
            expo -= q * np.multiply.outer(a[rows], a)
        np.exp(expo, out=expo)
        out[rows] = expo @ stack
    return [grid.with_values(out[:, j].reshape(grid.shape)) for j in range(len(fs))]


def _apply_eigen(lam, t, fs, max_mode, tol):
    f0 = fs[0]
    u1, u2 = f0.mesh()
    mask = eigensystem.resolvable_modes(lam, f0.extents, f0.spacing, max_mode, max_mode)
    basis = eigensystem.eigenbasis(lam, max_mode, max_mode, u1, u2)
    w_p, w_m = eigensystem.frequencies(lam)
    nu = w_p * (2 * np.arange(max_mode + 1)[:, None] + 1) + w_m * (2 * np.arange(max_mode + 1)[None, :] + 1)
    # lowest eigenvalue left out: unresolved modes or the first ones past the cutoff
    beyond = min(w_p * (2 * max_mode + 3) + w_m, w_p + w_m * (2 * max_mode + 3))
    nu_excl = min(nu[~mask].min(initial=beyond), beyond)
    out = []
    for f in fs:
        coeff = np.einsum("pqij,ij->pq", basis, f.values) * f.cell * mask
        approx = np.einsum("pq,pqij->ij", coeff, basis)
        remainder = (f - approx).norm()
        bound = math.exp(-t * nu_excl) * remainder
        if bound > tol * max(f.norm(), 1e-300):
            raise TruncationError(
                f"eigen-expansion tail bound {bound:.3e} exceeds tolerance {tol:g} x ||f||",
                bound=bound,
            )
        out.append(f.with_values(np.einsum("pq,pqij->ij", coeff * np.exp(-t * nu), basis)))
    return out


def heat_apply_batch(lam, t: float, fs, method: str = "kernel", max_mode: int = 40, tol: float = 1e-7,
                     convention: str = DEFAULT_CONVENTION) -> list[GridFunction]:
    """exp(-t d pi_lambda(L)) applied to several grid functions sharing one grid."""
    lam = as_lambda(lam)
    fs = list(fs)
    if not fs:
        return []
    if any(not f.same_grid(fs[0]) or f.dims != 2 for f in fs):
        raise InvalidParameterError("batch inputs must share one 2D grid")
    if method == "kernel":
        _check_time(t)
        return _apply_kernel(lam, t, fs, convention)
    if method == "eigen_expansion":
        if t < 0:
            raise InvalidParameterError("t must be non-negative")
        return _apply_eigen(lam, t, fs, max_mode, tol)
    raise InvalidParameterError(f"unknown method {method!r}")


def heat_apply(lam, t: float, f: GridFunction, method: str = "kernel", **kwargs) -> GridFunction:
    """exp(-t d pi_lambda(L)) f by quadrature against kappa or by eigen-expansion."""
    return heat_apply_batch(lam, t, [f], method, **kwargs)[0]
