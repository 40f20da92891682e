import math

import numpy as np
import pytest

from heisosc.eigensystem import eigenfunction_grid, eigenvalue
from heisosc.errors import InvalidParameterError
from heisosc.grid import GridFunction
from heisosc.quadform import Lambda
from heisosc.spectral import (
    apply_operator_coefficients,
    coefficients,
    heisenberg_oscillator,
    indicator,
    max_gap,
    reconstruct,
    spectral_projection,
    spectrum_bottom,
    spectrum_samples,
)
from heisosc.transforms import (
    CentralFourier,
    canonical_lambda1,
    intertwiner_T,
    inverse_partial_fourier_central,
    self_dual_spacing,
)

N = 45
HT = 0.5
L2 = 1.0


def packet_grid(fn, n=N, ht=HT, lambda2=L2):
    h = self_dual_spacing(lambda2, n)
    return GridFunction.from_callable(fn, ((n // 2) * h, (n // 2) * h, (n // 2) * ht), (h, h, ht))


def gaussian_packet(shift=(0.3, -0.2, 0.1), n=N):
    a, b, c = shift
    return packet_grid(lambda x, y, t: np.exp(-((x - a) ** 2 + (y - b) ** 2) / 2 - (t - c) ** 2 / 8) * (1 + 0.5 * x * y), n)


def random_packet(rng, n=N):
    c = rng.uniform(-0.5, 0.5, (3, 3))
    k = rng.uniform(-0.5, 0.5, (3, 2))

    def fn(x, y, t):
        out = 0
        for i in range(3):
            out = out + np.exp(-((x - c[i, 0]) ** 2 + (y - c[i, 1]) ** 2) / 2 - (t - c[i, 2]) ** 2 / 6 + 1j * (k[i, 0] * x + k[i, 1] * y))
        return out

    return packet_grid(fn, n)


def single_mode(j0, mode, n=N, ht=HT, lambda2=L2):
    """f whose central transform is T h_mode at the j0-th canonical lambda1 and zero elsewhere."""
    lam1 = canonical_lambda1(n, ht)
    h = self_dual_spacing(lambda2, n)
    r = (n // 2) * h
    slices = np.zeros((n, n, n), dtype=complex)
    lam = Lambda(lam1[j0], lambda2)
    slices[j0] = intertwiner_T(lam, eigenfunction_grid(lam, mode, (r, r), (h, h))).values
    return inverse_partial_fourier_central(CentralFourier(lam1, slices, (h, h), ht, True))


def test_spectrum_bottom():
    assert spectrum_bottom(1.0) == 2.0
    assert spectrum_bottom(-3.0) == 6.0
    with pytest.raises(InvalidParameterError):
        spectrum_bottom(0.0)
    lam1 = np.arange(-80, 81) * 0.05
    nus = [eigenvalue((l1, 1.0), (0, 0)) for l1 in lam1]
    assert abs(min(nus) - 2) < 1e-10
    assert lam1[int(np.argmin(nus))] == 0
    # monotone in |lambda1|
    half = np.array(nus[80:])
    assert np.all(np.diff(half) > 0)


def test_single_mode_coefficients_are_kronecker():
    j0, mode = N // 2 + 2, (1, 2)
    f = single_mode(j0, mode)
    c = coefficients(f, L2, mode_cutoff=(6, 6))
    expected = np.zeros(c.values.shape[1:])
    expected[mode] = 1.0
    assert np.abs(c.values[j0] - expected).max() < 1e-8
    others = np.delete(c.values, j0, axis=0)
    assert np.abs(others).max() < 1e-8
    assert c[(j0, mode)] == pytest.approx(1.0, abs=1e-8)


def test_single_mode_operator_scales_by_eigenvalue():
    j0, mode = N // 2 - 1, (2, 0)
    f = single_mode(j0, mode)
    c = apply_operator_coefficients(f, L2, mode_cutoff=(6, 6))
    nu = eigenvalue((c.lambda1[j0], L2), mode)
    assert c[(j0, mode)] == pytest.approx(nu, rel=1e-8)


def test_zero_function():
    f = gaussian_packet() * 0.0
    c = coefficients(f, L2, mode_cutoff=(4, 4))
    assert not np.any(c.values)


def test_parseval_random(rng):
    for _ in range(3):
        f = random_packet(rng)
        c = coefficients(f, L2, mode_cutoff=(20, 20))
        assert c.norm2 == pytest.approx(f.norm() ** 2, rel=1e-12)
        assert -1e-10 <= c.truncation_bound() <= 1e-4 * c.norm2
        assert not c.warnings


def test_lemma_on_gaussian_packet():
    f = gaussian_packet()
    c = coefficients(f, L2, mode_cutoff=(12, 12))
    ca = apply_operator_coefficients(f, L2, mode_cutoff=(12, 12))
    sel = c.retained & (np.abs(c.values) > 1e-6)
    assert sel.sum() > 50
    ratio = ca.values[sel] / c.values[sel]
    assert np.max(np.abs(ratio - c.eigenvalues[sel]) / c.eigenvalues[sel]) < 1e-4


def test_linearity(rng):
    f, g = random_packet(rng), gaussian_packet()
    a, b = 0.7 - 0.2j, -1.3
    lhs = coefficients(f * a + g * b, L2, mode_cutoff=(8, 8)).values
    rhs = a * coefficients(f, L2, mode_cutoff=(8, 8)).values + b * coefficients(g, L2, mode_cutoff=(8, 8)).values
    assert np.abs(lhs - rhs).max() < 1e-12


def test_oscillator_on_grid_validation():
    with pytest.raises(InvalidParameterError):
        heisenberg_oscillator(GridFunction(np.zeros((3, 3)), (1, 1)), 1.0)
    with pytest.raises(InvalidParameterError):
        coefficients(gaussian_packet(), 0.0)


def test_decay_warning_propagates():
    f = packet_grid(lambda x, y, t: np.exp(-(x * x + y * y) / 2) * np.exp(-t * t / 200))
    assert coefficients(f, L2, mode_cutoff=(2, 2)).warnings


def test_user_samples_have_no_plancherel_weight():
    c = coefficients(gaussian_packet(), L2, lambda1_samples=[0.0, 0.5], mode_cutoff=(4, 4))
    assert c.lambda1_weight is None and math.isnan(c.norm2)
    with pytest.raises(InvalidParameterError):
        c.parseval_sum()
    with pytest.raises(InvalidParameterError):
        reconstruct(c, gaussian_packet())


def test_indicator_closed_and_unions():
    nu = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    np.testing.assert_array_equal(indicator(nu, (2.0, 4.0)), [0, 1, 1, 1, 0])
    np.testing.assert_array_equal(indicator(nu, [(1.0, 1.0), (4.5, 9.0)]), [1, 0, 0, 0, 1])
    with pytest.raises(InvalidParameterError):
        indicator(nu, (3.0, 2.0))


# projections

@pytest.fixture(scope="module")
def packet_and_coeffs():
    f = gaussian_packet()
    return f, coefficients(f, L2, mode_cutoff=(20, 20))


def test_projection_on_everything_reconstructs(packet_and_coeffs):
    f, c = packet_and_coeffs
    full = spectral_projection(f, L2, (0.0, 1e6), mode_cutoff=(20, 20))
    captured = math.sqrt(max(c.truncation_bound(), 0.0))
    assert (full - f).norm() <= max(2 * captured, 1e-8) + 1e-6 * f.norm()


def test_projection_below_bottom_is_zero():
    f = gaussian_packet()
    below = spectral_projection(f, L2, (0.0, 2 * abs(L2) - 1e-9), mode_cutoff=(8, 8))
    assert below.norm() == 0.0


def test_projection_idempotent_and_resolution():
    f = gaussian_packet()
    b1, b2 = (2.0, 6.0), (4.0, 9.0)
    e1 = spectral_projection(f, L2, b1, mode_cutoff=(12, 12))
    assert 0 < e1.norm() < f.norm()
    e11 = spectral_projection(e1, L2, b1, mode_cutoff=(12, 12))
    assert (e11 - e1).norm() <= 1e-6 * f.norm()
    e21 = spectral_projection(e1, L2, b2, mode_cutoff=(12, 12))
    both = spectral_projection(f, L2, (4.0, 6.0), mode_cutoff=(12, 12))
    assert (e21 - both).norm() <= 1e-6 * f.norm()
    disjoint = spectral_projection(e1, L2, (7.0, 10.0), mode_cutoff=(12, 12))
    assert disjoint.norm() <= 1e-6 * f.norm()


def test_projection_additive_over_unions():
    f = gaussian_packet()
    union = spectral_projection(f, L2, [(2.0, 4.0), (6.0, 8.0)], mode_cutoff=(10, 10))
    parts = spectral_projection(f, L2, (2.0, 4.0), mode_cutoff=(10, 10)) + spectral_projection(f, L2, (6.0, 8.0), mode_cutoff=(10, 10))
    assert (union - parts).norm() <= 1e-10 * f.norm()


def test_projection_self_adjoint(rng):
    for _ in range(2):
        f, g = random_packet(rng), gaussian_packet(tuple(rng.uniform(-0.4, 0.4, 3)))
        b = (3.0, 7.0)
        lhs = spectral_projection(f, L2, b, mode_cutoff=(10, 10)).inner(g)
        rhs = f.inner(spectral_projection(g, L2, b, mode_cutoff=(10, 10)))
        assert abs(lhs - rhs) <= 1e-6 * f.norm() * g.norm()


def test_spectrum_fills_half_line():
    upper = 8.0
    gaps = [max_gap(1.0, np.linspace(-4, 4, n), upper, (m, m)) for n, m in [(9, 2), (33, 4), (129, 8), (513, 16)]]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 0.02
    samples = spectrum_samples(1.0, [0.0, 1.0], (1, 1))
    assert samples[0] == 2.0 and samples.size == 8
