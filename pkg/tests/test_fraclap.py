from math import gamma, pi, sqrt

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import rgamma

from fracspec import DomainMask2D, NumericalError, ParameterError
from fracspec.extrapolate import richardson
from fracspec.fraclap import (
    FracLapMatrix,
    _far_lattice_sum,
    _near_moment,
    eigen_residual,
    fcd_coefficients,
    fraclap_matrix_1d,
    fraclap_matrix_2d,
    lambda1,
    normalisation_constant,
)
from fracspec.shapes import disk_mask, l_shape_mask, rectangle_mask, square_mask

from pins import LAMBDA1_HALF, LAMBDA1_HALF_UNCERTAINTY, PIN_RTOL

# first eigenvalue of the half-Laplacian on (-1, 1), from the literature
PUBLISHED_INTERVAL_HALF = 1.1577738836977
# ... and on the unit disk
PUBLISHED_DISK_HALF = 2.0061


# -- coefficients and constants ----------------------------------------------


@pytest.mark.parametrize("s", [0.2, 0.5, 0.85])
def test_fcd_coefficients_closed_form(s):
    g = fcd_coefficients(s, 12)
    m = np.arange(13)
    direct = (-1.0) ** m * gamma(2 * s + 1) * rgamma(s - m + 1) * rgamma(s + m + 1)
    np.testing.assert_allclose(g, direct, rtol=1e-13, atol=1e-16)
    assert g[0] == pytest.approx(gamma(2 * s + 1) / gamma(s + 1) ** 2)
    assert g[0] > 0 and np.all(g[1:] < 0)
    assert g[0] + 2 * g[1:].sum() >= 0


@pytest.mark.parametrize("s", [0.3, 0.7])
def test_fcd_symbol(s):
    # sum_m g_m e^{i m theta} = |2 sin(theta/2)|^{2s}
    g = fcd_coefficients(s, 200_000)
    for theta in (0.4, 1.3, 2.9):
        val = g[0] + 2 * np.sum(g[1:] * np.cos(np.arange(1, g.size) * theta))
        assert val == pytest.approx(abs(2 * np.sin(theta / 2)) ** (2 * s), rel=1e-4)


@pytest.mark.parametrize("s", [0.25, 0.5, 0.75])
def test_normalisation_constant(s):
    # equivalent form s 4^s Gamma(N/2 + s) / (pi^{N/2} Gamma(1 - s))
    for N in (1, 2):
        alt = s * 4**s * gamma(N / 2 + s) / (pi ** (N / 2) * gamma(1 - s))
        assert normalisation_constant(N, s) == pytest.approx(alt, rel=1e-14)
    assert normalisation_constant(1, 0.5) == pytest.approx(1 / pi)


@pytest.mark.parametrize("s", [0.3, 0.5, 0.7])
def test_near_moment_polar_oracle(s):
    oracle = 8 / (2 - 2 * s) * quad(lambda th: (1.5 / np.cos(th)) ** (2 - 2 * s), 0, pi / 4)[0]
    assert _near_moment(s) == pytest.approx(oracle, rel=1e-12)


@pytest.mark.parametrize("s", [0.3, 0.7])
def test_lattice_tail_converged(s):
    assert _far_lattice_sum(s, 128) == pytest.approx(_far_lattice_sum(s, 512), rel=1e-4)


# -- 1D -----------------------------------------------------------------------


def test_matrix_1d_structure():
    m = fraclap_matrix_1d(40, 0.4, 3.0)
    A = m.entries
    np.testing.assert_array_equal(A, A.T)
    assert np.all(np.diag(A) > 0)
    assert np.all(A[~np.eye(40, dtype=bool)] < 0)
    assert np.all(A.sum(axis=1) > 0)
    assert m.h == pytest.approx(3.0 / 41)
    assert m.domain.n == 42 and m.domain.a == -1.5


def test_lambda1_1d_pin():
    m = fraclap_matrix_1d(512, 0.5, 2.0)
    lam, phi = lambda1(m)
    assert lam == pytest.approx(LAMBDA1_HALF, rel=PIN_RTOL)
    assert np.all(phi.values[1:-1] > 0)
    assert phi.values[0] == 0 and phi.values[-1] == 0
    assert phi.l2_norm() == pytest.approx(1.0, rel=1e-2)
    # eigenvalue converged to 1e-10 means an eigenvector residual near 1e-5
    assert eigen_residual(m, lam, phi) < 1e-5


def test_pin_agrees_with_published_value():
    assert abs(LAMBDA1_HALF - PUBLISHED_INTERVAL_HALF) < 2 * LAMBDA1_HALF_UNCERTAINTY


def test_lambda1_1d_extrapolation_reproduces_pin():
    vals = [lambda1(fraclap_matrix_1d(n, 0.5, 2.0))[0] for n in (128, 256, 512)]
    ext = richardson(*vals)
    assert ext.value == pytest.approx(LAMBDA1_HALF, rel=2e-3)
    assert ext.order == pytest.approx(1.0, abs=0.2)


@pytest.mark.parametrize("s,r", [(0.3, 2.0), (0.5, 0.25), (0.8, 3.0)])
def test_homogeneity_rescaled(s, r):
    m = fraclap_matrix_1d(64, s, 2.0)
    lam, _ = lambda1(m)
    lam_r, _ = lambda1(m.scaled(r))
    assert lam_r / lam == pytest.approx(r ** (-2 * s), rel=1e-6)


# -- 2D -----------------------------------------------------------------------


@pytest.mark.parametrize("s", [0.3, 0.7])
def test_matrix_2d_sign_pattern(s):
    m = fraclap_matrix_2d(l_shape_mask(10, 0.1), s)
    A = m.entries
    np.testing.assert_array_equal(A, A.T)
    assert np.all(np.diag(A) > 0)
    assert np.all(A[~np.eye(m.size, dtype=bool)] <= 0)
    assert np.all(A.sum(axis=1) >= 0)
    assert not m.low_accuracy


def test_single_cell_flagged():
    m = fraclap_matrix_2d(DomainMask2D(0.1, np.ones((1, 1), dtype=bool)), 0.5)
    assert m.low_accuracy and m.size == 1
    lam, phi = lambda1(m)
    assert lam == pytest.approx(m.entries[0, 0])
    assert phi.values.shape == (1, 1)


def test_disk_against_published_value():
    lams = []
    for h in (1 / 12, 1 / 16, 1 / 24):
        cells = int(round(pi / h**2))
        lams.append(lambda1(fraclap_matrix_2d(disk_mask(cells, h), 0.5))[0])
    assert lams[-1] == pytest.approx(PUBLISHED_DISK_HALF, rel=1.5e-2)
    # monotone approach from below
    assert lams[0] < lams[1] < lams[2] < PUBLISHED_DISK_HALF


def test_phi_positive_and_residual():
    m = fraclap_matrix_2d(l_shape_mask(12, 1 / 12), 0.5)
    lam, phi = lambda1(m)
    inside = phi.values[m.domain.mask]
    assert np.all(inside > 0)
    assert np.all(phi.values[~m.domain.mask] == 0)
    assert phi.l2_norm() == pytest.approx(1.0, rel=1e-12)
    # eigenvalue converged to 1e-10 means an eigenvector residual near 1e-5
    assert eigen_residual(m, lam, phi) < 1e-5


def test_same_mask_half_cell_width():
    mask = disk_mask(200, 1 / 16)
    s = 0.6
    lam, _ = lambda1(fraclap_matrix_2d(mask, s))
    half = DomainMask2D(mask.h / 2, mask.mask)
    lam_half, _ = lambda1(fraclap_matrix_2d(half, s))
    # a disk of half the radius
    assert lam_half / lam == pytest.approx(2 ** (2 * s), rel=1e-10)
    lam_r, _ = lambda1(fraclap_matrix_2d(mask, s).scaled(0.5))
    assert lam_r == pytest.approx(lam_half, rel=1e-10)


def test_refinement_of_fixed_disk():
    s = 0.5
    lam16 = lambda1(fraclap_matrix_2d(disk_mask(804, 1 / 16), s))[0]
    lam32 = lambda1(fraclap_matrix_2d(disk_mask(3217, 1 / 32), s))[0]
    assert lam16 == pytest.approx(lam32, rel=1.5e-2)


def test_domain_monotonicity():
    s = 0.5
    big = square_mask(144, 1 / 12)
    mask = big.mask.copy()
    mask[0, :3] = False
    mask[5, 5] = False
    lam_big = lambda1(fraclap_matrix_2d(big, s))[0]
    lam_small = lambda1(fraclap_matrix_2d(DomainMask2D(big.h, mask), s))[0]
    assert lam_small > lam_big


def test_square_below_two_to_one_rectangle():
    h = 1 / 24
    sq = lambda1(fraclap_matrix_2d(square_mask(576, h), 0.5))[0]
    rect = lambda1(fraclap_matrix_2d(rectangle_mask(576, 2, h), 0.5))[0]
    assert sq < rect


@pytest.mark.parametrize("h", [1 / 16, 1 / 24])
def test_faber_krahn_disk_below_square(h):
    cells = int(round(1 / h**2))
    for s in (0.3, 0.7):
        disk = lambda1(fraclap_matrix_2d(disk_mask(cells, h), s))[0]
        sq = lambda1(fraclap_matrix_2d(square_mask(cells, h), s))[0]
        assert disk <= sq


# -- errors -------------------------------------------------------------------


@pytest.mark.parametrize("s", [0.0, 1.0, -0.2, 1.5])
def test_bad_s(s):
    with pytest.raises(ParameterError):
        fraclap_matrix_1d(16, s)
    with pytest.raises(ParameterError):
        fraclap_matrix_2d(square_mask(9, 0.1), s)


def test_bad_1d_size():
    with pytest.raises(ParameterError):
        fraclap_matrix_1d(4, 0.5)
    with pytest.raises(ParameterError):
        fraclap_matrix_1d(16, 0.5, length=0.0)


def test_not_positive_definite():
    base = fraclap_matrix_1d(10, 0.5)
    broken = FracLapMatrix(0.5, 1, -base.entries, base.h, base.domain)
    with pytest.raises(NumericalError):
        lambda1(broken)


def test_sqrt_helper_sanity():
    # the eigenfunction in 1D is stored per unit length
    m = fraclap_matrix_1d(30, 0.5)
    _, phi = lambda1(m)
    x = phi.values[1:-1] * sqrt(m.h)
    assert np.linalg.norm(x) == pytest.approx(1.0, rel=1e-12)
