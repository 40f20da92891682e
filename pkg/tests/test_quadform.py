import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from heisosc.errors import InvalidParameterError
from heisosc.quadform import (
    Lambda,
    diagonalize,
    mu_values,
    entrywise_rotation,
    potential_matrix,
    to_principal_axes,
)

component = st.floats(-10, 10, allow_nan=False).filter(lambda v: abs(v) > 1e-3)
lambdas = st.tuples(st.floats(-10, 10), component)


def test_lambda_rejects_zero_lambda2():
    with pytest.raises(InvalidParameterError):
        Lambda(1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        diagonalize((3.0, 0.0))
    with pytest.raises(InvalidParameterError):
        Lambda(float("nan"), 1.0)


def test_isotropic_case():
    d = diagonalize((0, 1))
    assert d.mu_plus == d.mu_minus == 1.0
    np.testing.assert_array_equal(d.rotation, np.eye(2))
    assert to_principal_axes(d, 0.3, -1.2) == (0.3, -1.2)


def test_golden_ratio_case():
    d = diagonalize((1, 1))
    assert d.mu_plus == pytest.approx((3 + math.sqrt(5)) / 2, rel=1e-15)
    assert d.mu_minus == pytest.approx((3 - math.sqrt(5)) / 2, rel=1e-15)
    ref = np.linalg.eigvalsh([[2.0, -1.0], [-1.0, 1.0]])
    assert abs(d.mu_minus - ref[0]) < 1e-13 and abs(d.mu_plus - ref[1]) < 1e-13
    u1, u2 = to_principal_axes(d, 1.0, 0.0)
    assert d.mu_plus * u1 ** 2 + d.mu_minus * u2 ** 2 == pytest.approx(2.0, rel=1e-14)


def test_determinant_example():
    d = diagonalize((2, -3))
    assert d.mu_plus * d.mu_minus == pytest.approx(81.0, rel=1e-14)


def test_matrix_entries():
    np.testing.assert_array_equal(potential_matrix((2, 3)), [[13.0, -6.0], [-6.0, 9.0]])


@given(lambdas)
def test_invariants(lam):
    d = diagonalize(lam)
    l1, l2 = lam
    r = d.rotation
    assert d.mu_plus >= d.mu_minus > 0
    assert np.abs(r.T @ r - np.eye(2)).max() < 1e-14
    scale = d.mu_plus
    assert np.abs(r.T @ d.m_matrix @ r - np.diag([d.mu_plus, d.mu_minus])).max() < 1e-12 * max(scale, 1)
    assert d.mu_plus * d.mu_minus == pytest.approx(l2 ** 4, rel=1e-12)
    assert d.mu_plus + d.mu_minus == pytest.approx(l1 ** 2 + 2 * l2 ** 2, rel=1e-13)
    for col in r.T:
        first = col[np.flatnonzero(np.abs(col) > 1e-15)[0]]
        assert first > 0


@given(lambdas)
def test_against_generic_eigensolver(lam):
    d = diagonalize(lam)
    lo, hi = np.linalg.eigvalsh(d.m_matrix)
    assert abs(hi - d.mu_plus) <= 1e-13 * hi
    assert abs(lo - d.mu_minus) <= 1e-13 * hi


def test_form_preserved_on_1000_random_points(rng):
    for _ in range(1000):
        lam = (rng.uniform(-5, 5), rng.choice([-1, 1]) * rng.uniform(0.05, 5))
        u = rng.normal(size=2)
        d = diagonalize(lam)
        a, b = to_principal_axes(d, *u)
        lhs = u @ potential_matrix(lam) @ u
        assert abs(d.mu_plus * a * a + d.mu_minus * b * b - lhs) <= 1e-12 * lhs
        assert math.hypot(a, b) == pytest.approx(math.hypot(*u), rel=1e-14)


def test_origin_maps_to_origin():
    assert to_principal_axes(diagonalize((1.5, -0.7)), 0.0, 0.0) == (0.0, 0.0)


@given(lambdas, st.floats(0.1, 10))
def test_homogeneity(lam, s):
    a = mu_values(lam)
    b = mu_values((s * lam[0], s * lam[1]))
    assert b[0] == pytest.approx(s * s * a[0], rel=1e-12)
    assert b[1] == pytest.approx(s * s * a[1], rel=1e-12)


def test_continuity_at_lambda1_zero():
    for eps in (1e-2, 1e-5, 1e-9):
        mp, mm = mu_values((eps, 2.0))
        assert abs(mp - 4) < 3 * eps and abs(mm - 4) < 3 * eps
        d = diagonalize((eps, 2.0))
        a, b = to_principal_axes(d, 0.4, -0.9)
        u = np.array([0.4, -0.9])
        assert d.mu_plus * a * a + d.mu_minus * b * b == pytest.approx(u @ d.m_matrix @ u, rel=1e-12)


@given(lambdas)
def test_explicit_rotation_matches_up_to_sign(lam):
    assume(abs(lam[0]) > 1e-3)
    ours = diagonalize(lam).rotation
    theirs = entrywise_rotation(lam)
    for j in range(2):
        sign = np.sign(ours[:, j] @ theirs[:, j])
        np.testing.assert_allclose(ours[:, j], sign * theirs[:, j], atol=1e-10)


def test_explicit_rotation_undefined_at_zero():
    with pytest.raises(InvalidParameterError):
        entrywise_rotation((0.0, 1.0))


def test_lambda_unpacks():
    l1, l2 = Lambda(1, -2)
    assert (l1, l2) == (1.0, -2.0)
