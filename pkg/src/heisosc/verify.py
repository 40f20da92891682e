"""Self-checks exposed through ``heisosc verify``; each suite returns a list of checks."""
from __future__ import annotations

import math

import numpy as np

from . import eigensystem, group, kernels, oracle, quadform, spectral, transforms
from .grid import GridFunction
from .hermite import gauss_hermite_arrays, hermite_functions
from .report import Check, check_below

SUITES = ("hermite", "quadform", "eigenresidual", "intertwiner", "mehler", "fd", "spectralres")


def fd4_second_derivative(fn, x, h=1e-3):
    return (-fn(x + 2 * h) + 16 * fn(x + h) - 30 * fn(x) + 16 * fn(x - h) - fn(x - 2 * h)) / (12 * h * h)


def hermite_suite(lam=None) -> list[Check]:
    x, w = gauss_hermite_arrays(40)
    h = hermite_functions(30, x) * np.exp(x * x / 2)
    gram = (h * w) @ h.T
    xs = np.linspace(-5, 5, 101)
    ode = 0.0
    for m in range(16):
        fn = lambda s, m=m: hermite_functions(m, s)[m]  # noqa: E731
        res = -fd4_second_derivative(fn, xs) + xs ** 2 * fn(xs) - (2 * m + 1) * fn(xs)
        ode = max(ode, float(np.abs(res).max()))
    x20, w20 = gauss_hermite_arrays(20)
    moment = abs(np.sum(w20 * x20 ** 38) / math.gamma(19.5) - 1)
    hx = hermite_functions(30, xs)
    parity = np.abs(hermite_functions(30, -xs) - ((-1.0) ** np.arange(31))[:, None] * hx).max()
    return [
        check_below("hermite.orthonormality_m<=30", np.abs(gram - np.eye(31)).max(), 1e-10),
        check_below("hermite.ode_residual_m<=15", ode, 1e-6),
        check_below("hermite.gauss_moment_x38_n20", moment, 1e-12),
        check_below("hermite.parity", parity, 1e-14),
    ]


def quadform_suite(lam) -> list[Check]:
    d = quadform.diagonalize(lam)
    l1, l2 = lam
    r = d.rotation
    eig = np.linalg.eigvalsh(d.m_matrix)[::-1]
    return [
        check_below("quadform.orthogonal", np.abs(r.T @ r - np.eye(2)).max(), 1e-14),
        check_below("quadform.diagonalises", np.abs(r.T @ d.m_matrix @ r - np.diag([d.mu_plus, d.mu_minus])).max(), 1e-12),
        check_below("quadform.determinant", abs(d.mu_plus * d.mu_minus - l2 ** 4) / l2 ** 4, 1e-13),
        check_below("quadform.trace", abs(d.mu_plus + d.mu_minus - l1 ** 2 - 2 * l2 ** 2) / (l1 ** 2 + 2 * l2 ** 2), 1e-13),
        check_below("quadform.eigensolver_agreement", np.abs(eig - [d.mu_plus, d.mu_minus]).max() / eig[0], 1e-13),
    ]


def _oscillator_grid(lam, n=129):
    w_p, w_m = eigensystem.frequencies(lam)
    r = 12.0 / math.sqrt(w_m)
    return r, 2 * r / (n - 1)


def eigenresidual_suite(lam) -> list[Check]:
    r, h = _oscillator_grid(lam)
    worst = 0.0
    for p in range(4):
        for q in range(4):
            f = eigensystem.eigenfunction_grid(lam, (p, q), (r, r), (h, h))
            res = group.sublaplacian_pi(lam, f) - f * eigensystem.eigenvalue(lam, (p, q))
            worst = max(worst, res.norm() / f.norm())
    return [check_below("eigenresidual.spectral_m<=3", worst, 1e-6)]


def intertwiner_suite(lam, samples=10, seed=0) -> list[Check]:
    n = 257
    h = transforms.self_dual_spacing(lam[1], n)
    r = (n // 2) * h
    rng = np.random.default_rng(seed)
    base = eigensystem.eigenfunction_grid(lam, (1, 2), (r, r), (h, h))
    th = transforms.intertwiner_T(lam, base)
    unitary = abs(th.norm() - base.norm())
    roundtrip = (transforms.intertwiner_T_inverse(lam, th) - base).norm()
    worst = 0.0
    for _ in range(samples):
        el = group.NElement(rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 2))
        lhs = transforms.intertwiner_T(lam, group.rep_pi(lam, el, base))
        rhs = group.rep_rho(lam, el, th)
        worst = max(worst, (lhs - rhs).norm() / base.norm())
    transport = 0.0
    for p in range(3):
        for q in range(3):
            f = transforms.intertwiner_T(lam, eigensystem.eigenfunction_grid(lam, (p, q), (r, r), (h, h)))
            res = group.sublaplacian(lam, "rho", f) - f * eigensystem.eigenvalue(lam, (p, q))
            transport = max(transport, res.norm() / f.norm())
    return [
        check_below("intertwiner.unitarity", unitary, 1e-10),
        check_below("intertwiner.roundtrip", roundtrip, 1e-10),
        check_below("intertwiner.T_pi_equals_rho_T", worst, 1e-6),
        check_below("intertwiner.eigen_transport_m<=2", transport, 1e-5),
    ]


def mehler_suite(lam) -> list[Check]:
    res = kernels.convention_residuals()
    r, h = 8.0, 0.25
    f = eigensystem.eigenfunction_grid(lam, (0, 0), (r, r), (h, h))
    out = kernels.heat_apply(lam, 1.0, f, "kernel")
    ground = (out - f * math.exp(-eigensystem.eigenvalue(lam, (0, 0)))).norm() / out.norm()
    return [
        check_below("mehler.dilation_vs_series", res["dilation"], 1e-6),
        Check("mehler.literal_rejected", bool(res["literal"] > 1e-2), res["literal"], 1e-2),
        check_below("mehler.kernel_on_ground_state", ground, 1e-6),
    ]


def fd_suite(lam) -> list[Check]:
    report = oracle.fd_compare(lam, 6, (128, 256))
    nu0 = eigensystem.eigenvalue(lam, (0, 0))
    details = {
        "half_width": report.half_width,
        "exact": report.exact,
        "extrapolated": report.extrapolated,
        "raw": {str(n): v for n, v in report.raw.items()},
    }
    return details, [
        check_below("fd.ground_state", abs(report.extrapolated[0] - nu0), 1e-3),
        check_below("fd.first_6_eigenvalues", report.max_deviation, 1e-3),
        check_below("fd.boundary_envelope", report.envelope, 1e-10),
    ]


def _h1_packet(lambda2, n=45):
    h = transforms.self_dual_spacing(lambda2, n)
    r = (n // 2) * h
    ht = 0.5
    rt = (n // 2) * ht
    return GridFunction.from_callable(
        lambda x, y, t: np.exp(-((x - 0.3) ** 2 + (y + 0.2) ** 2) / 2 - (t - 0.1) ** 2 / 8) * (1 + 0.5 * x * y),
        (r, r, rt), (h, h, ht),
    )


def spectralres_suite(lam) -> list[Check]:
    l2 = lam[1]
    f = _h1_packet(l2)
    c = spectral.coefficients(f, l2, mode_cutoff=(12, 12))
    ca = spectral.apply_operator_coefficients(f, l2, mode_cutoff=(12, 12))
    sel = c.retained & (np.abs(c.values) > 1e-6)
    lemma = float(np.max(np.abs(ca.values[sel] / c.values[sel] - c.eigenvalues[sel]) / c.eigenvalues[sel]))
    band = (spectral.spectrum_bottom(l2), spectral.spectrum_bottom(l2) * 3)
    e = spectral.reconstruct(c, f, spectral.indicator(c.eigenvalues, band))
    ee = spectral.spectral_projection(e, l2, band, mode_cutoff=(12, 12))
    below = spectral.spectral_projection(f, l2, (0.0, 0.999 * spectral.spectrum_bottom(l2)), mode_cutoff=(12, 12))
    return [
        check_below("spectralres.lemma_ratio", lemma, 1e-4),
        check_below("spectralres.parseval", abs(c.truncation_bound()) / c.norm2, 1e-4),
        check_below("spectralres.idempotent", (ee - e).norm() / f.norm(), 1e-6),
        check_below("spectralres.below_bottom", below.norm() / f.norm(), 1e-12),
    ]


_SUITES = {
    "hermite": hermite_suite,
    "quadform": quadform_suite,
    "eigenresidual": eigenresidual_suite,
    "intertwiner": intertwiner_suite,
    "mehler": mehler_suite,
    "fd": fd_suite,
    "spectralres": spectralres_suite,
}


def run_suite_detailed(name: str, lam) -> tuple[dict, list[Check]]:
    """Checks of one suite together with the raw numbers behind them."""
    out = _SUITES[name](tuple(quadform.as_lambda(lam)))
    return out if isinstance(out, tuple) else ({}, out)


def run_suite(name: str, lam) -> list[Check]:
    return run_suite_detailed(name, lam)[1]
