import math

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from heisosc.errors import UnsupportedDegreeError
from heisosc.hermite import (
    MAX_DEGREE,
    gauss_hermite_arrays,
    gauss_hermite_nodes,
    hermite_function,
    hermite_functions,
    hermite_polynomial,
)
from heisosc.verify import fd4_second_derivative


def rodrigues(m, x0):
    x = sympy.Symbol("x")
    expr = (-1) ** m * sympy.exp(x ** 2) * sympy.diff(sympy.exp(-(x ** 2)), x, m)
    return float(sympy.simplify(expr).subs(x, sympy.Rational(x0)))


def test_low_degree_values():
    assert hermite_polynomial(0, 3.7) == 1.0
    assert hermite_polynomial(1, 1.0) == 2.0
    assert hermite_function(0, 0.0) == 1.0
    assert hermite_function(0, 0.0, normalized=True) == pytest.approx(math.pi ** -0.25, abs=1e-15)


@pytest.mark.parametrize("m", range(9))
@pytest.mark.parametrize("x0", ["1/2", "-3/2", "2"])
def test_polynomial_matches_rodrigues(m, x0):
    expected = rodrigues(m, x0)
    got = hermite_polynomial(m, float(sympy.Rational(x0)))
    assert got == pytest.approx(expected, rel=1e-13, abs=1e-13)


def test_h5_at_half():
    # H_5(x) = 32x^5 - 160x^3 + 120x
    assert hermite_polynomial(5, 0.5) == pytest.approx(41.0, rel=1e-14)
    assert rodrigues(5, "1/2") == pytest.approx(41.0, rel=1e-14)


def test_raw_and_normalized_agree():
    x = np.linspace(-4, 4, 41)
    for m in range(12):
        scale = math.sqrt(2 ** m * math.factorial(m) * math.sqrt(math.pi))
        np.testing.assert_allclose(hermite_function(m, x), scale * hermite_function(m, x, normalized=True), rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(hermite_function(m, x), np.exp(-x * x / 2) * hermite_polynomial(m, x), rtol=1e-11, atol=1e-11)


def test_unit_norm_by_quadrature():
    x, w = gauss_hermite_arrays(60)
    h = hermite_function(10, x, normalized=True) * np.exp(x * x / 2)
    assert abs(np.sum(w * h * h) - 1) < 1e-12
    assert np.isfinite(hermite_function(10, 2.0, normalized=True))


def test_orthonormality_up_to_30():
    x, w = gauss_hermite_arrays(40)
    h = hermite_functions(30, x) * np.exp(x * x / 2)
    gram = (h * w) @ h.T
    assert np.abs(gram - np.eye(31)).max() < 1e-10


@pytest.mark.parametrize("m", range(16))
def test_ode_residual(m):
    xs = np.linspace(-5, 5, 201)
    fn = lambda s: hermite_function(m, s, normalized=True)  # noqa: E731
    res = -fd4_second_derivative(fn, xs) + xs ** 2 * fn(xs) - (2 * m + 1) * fn(xs)
    assert np.abs(res).max() < 1e-6


@given(st.integers(0, MAX_DEGREE), st.floats(-40, 40))
def test_parity_and_finiteness(m, x):
    a = hermite_function(m, x, normalized=True)
    b = hermite_function(m, -x, normalized=True)
    assert np.isfinite(a)
    assert a == pytest.approx((-1) ** m * b, rel=1e-14, abs=1e-300)


def test_high_degree_is_finite_and_bounded():
    x = np.linspace(-40, 40, 2001)
    h = hermite_functions(MAX_DEGREE, x)
    assert np.all(np.isfinite(h))
    # |hn_m(x)| <= pi^{-1/4} for all m and x
    assert np.abs(h).max() <= math.pi ** -0.25 + 1e-12


def test_degree_cap():
    with pytest.raises(UnsupportedDegreeError):
        hermite_polynomial(MAX_DEGREE + 1, 0.0)
    with pytest.raises(UnsupportedDegreeError):
        hermite_function(MAX_DEGREE + 1, 0.0, normalized=True)
    with pytest.raises((UnsupportedDegreeError, ValueError)):
        hermite_function(-1, 0.0)


def test_gauss_hermite_small():
    assert gauss_hermite_nodes(1) == [(0.0, pytest.approx(math.sqrt(math.pi), rel=1e-15))]
    (x0, w0), (x1, w1) = gauss_hermite_nodes(2)
    assert x0 == pytest.approx(-1 / math.sqrt(2), rel=1e-15)
    assert x1 == pytest.approx(1 / math.sqrt(2), rel=1e-15)
    assert w0 == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-15)
    assert w1 == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-15)


def test_gauss_hermite_moment_n20():
    x, w = gauss_hermite_arrays(20)
    assert abs(np.sum(w * x ** 38) / math.gamma(19.5) - 1) < 1e-12


@pytest.mark.parametrize("n", [1, 3, 10, 50, 120, 200])
def test_gauss_hermite_against_numpy_and_exactness(n):
    x, w = gauss_hermite_arrays(n)
    assert np.all(w > 0)
    assert np.all(np.diff(x) > 0)
    if n <= 100:
        xr, wr = np.polynomial.hermite.hermgauss(n)
        np.testing.assert_allclose(x, xr, atol=1e-12)
        np.testing.assert_allclose(w, wr, rtol=1e-9, atol=1e-300)
    # nodes are roots of H_n: the normalized function vanishes there
    assert np.abs(hermite_functions(n, x)[n]).max() < 1e-12
    for k in range(0, min(2 * n - 1, 60) + 1, 2):
        exact = math.gamma((k + 1) / 2)
        assert abs(np.sum(w * x ** k) - exact) <= 1e-11 * exact


def test_gauss_hermite_bounds():
    with pytest.raises(ValueError):
        gauss_hermite_nodes(0)
    with pytest.raises(ValueError):
        gauss_hermite_nodes(201)


def test_arrays_are_read_only():
    x, _ = gauss_hermite_arrays(5)
    with pytest.raises(ValueError):
        x[0] = 1.0
