import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from conftest import AREA, MU, SIGMA_5NM, random_two_photon
from rotating_photonics import spectra
from rotating_photonics.errors import ValidationError, ZeroNormError
from rotating_photonics.kinematics import sagnac_delay
from rotating_photonics.spectra import (
    Convention,
    CorrelatedSpectrum,
    GaussianSpec,
    JointSpectrum,
    SpectralAmplitude,
)


@pytest.mark.parametrize("points", [3, 5, 101, 1025])
def test_simpson_weights_agree_with_scipy(points):
    x = np.linspace(-1.3, 2.1, points)
    f = np.exp(np.sin(3 * x)) * np.cos(x)
    w = spectra.simpson_weights(points, x[1] - x[0])
    assert w @ f == pytest.approx(integrate.simpson(f, x=x), rel=1e-13)
    np.testing.assert_array_equal(w, w[::-1])


@pytest.mark.parametrize("points", [1, 2, 1024])
def test_simpson_needs_odd_point_counts(points):
    with pytest.raises(ValidationError):
        spectra.simpson_weights(points, 0.1)


def test_unit_conversions():
    # 800 nm carrier with 5 nm and 40 nm bandwidths
    assert spectra.wavelength_to_mu(800e-9) == pytest.approx(2.3546e15, rel=1e-4)
    assert spectra.bandwidth_to_sigma(5e-9, 800e-9) == pytest.approx(1.47e13, rel=2e-3)
    assert spectra.bandwidth_to_sigma(40e-9, 800e-9) == pytest.approx(1.18e14, rel=3e-3)


@pytest.mark.parametrize("convention", list(Convention))
def test_gaussian_is_normalized(convention):
    g = SpectralAmplitude.from_gaussian(GaussianSpec(MU, SIGMA_5NM, convention))
    assert g.norm_sq() == pytest.approx(1.0, abs=1e-12)


def test_conventions():
    mu, sigma = 1.0e15, 1.0e13
    amp = GaussianSpec(mu, sigma, Convention.AMPLITUDE_STD)
    assert amp(mu + sigma) / amp(mu) == pytest.approx(math.exp(-0.5), rel=1e-14)
    intensity = GaussianSpec(mu, sigma, Convention.INTENSITY_STD)
    variance, _ = integrate.quad(lambda w: (w - mu) ** 2 * intensity(w) ** 2, mu - 12 * sigma, mu + 12 * sigma,
                                 epsabs=0, epsrel=1e-12, points=[mu])
    assert math.sqrt(variance) == pytest.approx(sigma, rel=1e-10)


def test_gaussian_spec_validation():
    with pytest.raises(ValidationError):
        GaussianSpec(MU, 0.0)
    with pytest.raises(ValidationError):
        GaussianSpec(-1.0, SIGMA_5NM)
    assert GaussianSpec(MU, SIGMA_5NM, "amplitude").convention is Convention.AMPLITUDE_STD


def test_normalize_is_idempotent_and_removes_scale():
    g = SpectralAmplitude.from_gaussian(GaussianSpec(MU, SIGMA_5NM))
    again = spectra.normalize(g)
    np.testing.assert_allclose(again.values, g.values, rtol=0, atol=1e-12 * np.abs(g.values).max())
    doubled = spectra.normalize(g.scaled(2.0))
    np.testing.assert_allclose(doubled.values, g.values, rtol=0, atol=1e-12 * np.abs(g.values).max())


def test_normalize_rejects_zero():
    g = SpectralAmplitude.from_gaussian(GaussianSpec(MU, SIGMA_5NM))
    with pytest.raises(ZeroNormError):
        spectra.normalize(g.scaled(0.0))


def _loop_weight(nu, mu, sigma, t_s):
    # |g(mu+nu) g(mu-nu) cos((mu+nu) t_s / 2)|^2 up to the Gaussian normalization
    return np.exp(-2 * nu**2 / sigma**2) * np.cos((mu + nu) * t_s / 2) ** 2


@pytest.mark.parametrize("freq", [0.0, 0.21, 0.77, 2.9])
@pytest.mark.parametrize("sigma", [1.47e13, 1.18e14])
def test_loop_norm_matches_closed_form(freq, sigma):
    t_s = sagnac_delay(AREA, freq)
    # independent oracle: adaptive quadrature of the 1-D integrand
    lim = 8 * sigma
    reference, _ = integrate.quad(_loop_weight, -lim, lim, args=(MU, sigma, t_s), epsabs=0, epsrel=1e-12, limit=400)
    total = math.sqrt(math.pi / 2) * sigma
    closed = 0.5 * total * (1 + math.cos(MU * t_s) * math.exp(-(sigma * t_s) ** 2 / 8))
    assert reference == pytest.approx(closed, rel=1e-9)

    spec = GaussianSpec(MU, sigma, Convention.AMPLITUDE_STD)
    pair = spectra.normalize(CorrelatedSpectrum.spdc(spec))
    looped = pair.with_values(pair.values * np.cos(pair.omega1 * t_s / 2))
    assert looped.norm_sq() == pytest.approx(closed / total, rel=1e-9)


def test_swap_overlap_of_symmetric_and_antisymmetric():
    omega = spectra.uniform_axis(MU, 8 * SIGMA_5NM, 257)
    g = GaussianSpec(MU, SIGMA_5NM)(omega)
    sym = spectra.normalize(JointSpectrum(omega, np.outer(g, g).astype(complex)))
    assert spectra.swap_overlap(sym) == pytest.approx(1.0, abs=1e-12)
    anti_values = (omega[:, None] - omega[None, :]) * np.outer(g, g)
    anti = spectra.normalize(JointSpectrum(omega, anti_values.astype(complex)))
    assert spectra.swap_overlap(anti) == pytest.approx(-1.0, abs=1e-12)
    assert spectra.symmetry_split(anti) == pytest.approx((0.0, 1.0), abs=1e-12)


@pytest.mark.parametrize("delta_t", [0.0, 3e-14, -1e-13])
@pytest.mark.parametrize("t_s", [0.0, 1.9e-14])
def test_separable_hom_overlap(delta_t, t_s):
    spec = GaussianSpec(MU, SIGMA_5NM, Convention.INTENSITY_STD)
    g = SpectralAmplitude.from_gaussian(spec)
    w = g.omega
    values = np.outer(g.values * np.exp(-1j * w * delta_t), g.values) * np.exp(
        0.5j * t_s * (w[:, None] - w[None, :])
    )
    overlap = spectra.swap_overlap(spectra.normalize(JointSpectrum(w, values)))
    assert overlap.real == pytest.approx(math.exp(-((SIGMA_5NM * (t_s - delta_t)) ** 2)), abs=1e-12)
    assert abs(overlap.imag) < 1e-10


def test_correlated_pair_at_rest_is_symmetric():
    pair = spectra.normalize(CorrelatedSpectrum.spdc(GaussianSpec(MU, SIGMA_5NM, Convention.AMPLITUDE_STD)))
    assert spectra.symmetry_split(pair) == pytest.approx((1.0, 0.0), abs=1e-12)


def test_half_fringe_loop_spectrum_is_almost_antisymmetric():
    t_s = math.pi / MU  # mu t_s = pi
    sigma = 0.01 / t_s
    pair = spectra.normalize(CorrelatedSpectrum.spdc(GaussianSpec(MU, sigma, Convention.AMPLITUDE_STD)))
    looped = spectra.normalize(
        pair.with_values(pair.values * np.cos(pair.omega1 * t_s / 2) * np.exp(-0.5j * pair.omega2 * t_s))
    )
    sym, anti = spectra.symmetry_split(looped)
    assert anti > 0.999
    assert sym + anti == pytest.approx(1.0, abs=1e-10)


def test_correlated_grid_must_be_symmetric():
    nu = np.linspace(-1.0, 2.0, 11)
    with pytest.raises(ValidationError):
        CorrelatedSpectrum(MU, nu, np.ones(11, dtype=complex))


def test_csv_round_trip(tmp_path):
    g = SpectralAmplitude.from_gaussian(GaussianSpec(MU, SIGMA_5NM), points=65)
    g = g.with_values(g.values * np.exp(1j * np.linspace(0, 3, 65)))
    spectra.write_csv(tmp_path / "g.csv", g)
    assert (tmp_path / "g.csv").read_text().splitlines()[0] == "omega_or_nu,re,im"
    back = spectra.read_amplitude_csv(tmp_path / "g.csv")
    np.testing.assert_array_equal(back.omega, g.omega)
    np.testing.assert_array_equal(back.values, g.values)

    pair = CorrelatedSpectrum.spdc(GaussianSpec(MU, SIGMA_5NM), points=33)
    spectra.write_csv(tmp_path / "pair.csv", pair)
    back = spectra.read_correlated_csv(tmp_path / "pair.csv", MU)
    np.testing.assert_array_equal(back.values, pair.values)


def test_csv_header_is_mandatory(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,2,3\n4,5,6\n")
    with pytest.raises(ValidationError):
        spectra.read_csv(path)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.0, 2 * math.pi))
def test_swap_overlap_ignores_global_phase(seed, theta):
    psi = random_two_photon(np.random.default_rng(seed))
    rotated = psi.scaled(np.exp(1j * theta))
    assert spectra.swap_overlap(rotated) == pytest.approx(spectra.swap_overlap(psi), abs=1e-13)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_symmetry_split_properties(seed):
    psi = random_two_photon(np.random.default_rng(seed), points=513)
    sym, anti = spectra.symmetry_split(psi)
    overlap = spectra.swap_overlap(psi)
    assert 0.0 <= sym <= 1.0 and 0.0 <= anti <= 1.0
    assert abs(sym + anti - 1.0) < 1e-10
    assert abs(sym - anti - overlap.real) < 1e-10
    assert abs(overlap.imag) < 1e-10
    assert abs(overlap) <= 1 + 1e-8


@pytest.mark.parametrize("kind", ["joint", "correlated"])
@pytest.mark.parametrize("freq", [0.3, 2.2])
def test_grid_refinement(kind, freq):
    t_s = sagnac_delay(AREA, freq)
    tau = 0.5 * t_s

    def overlap(points):
        if kind == "joint":
            spec = GaussianSpec(MU, 1.18e14, Convention.INTENSITY_STD)
            g = SpectralAmplitude.from_gaussian(spec, points=points)
            w = g.omega
            values = np.outer(g.values * np.exp(-1j * w * 1e-14), g.values) * np.exp(1j * tau * (w[:, None] - w[None, :]))
            psi = JointSpectrum(w, values)
        else:
            pair = CorrelatedSpectrum.spdc(GaussianSpec(MU, 1.18e14, Convention.AMPLITUDE_STD), points=points)
            psi = pair.with_values(pair.values * np.cos(tau * pair.omega1) * np.exp(-1j * tau * pair.omega2))
        return spectra.swap_overlap(spectra.normalize(psi))

    assert abs(overlap(2049) - overlap(1025)) < 1e-8
