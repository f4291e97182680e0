import numpy as np
import pytest

from rotating_photonics import spectra
from rotating_photonics.kinematics import PlatformConfig
from rotating_photonics.spectra import CorrelatedSpectrum, JointSpectrum, OnePhotonState, SpectralAmplitude

MU = 2.36e15
SIGMA_5NM = 1.47e13
SIGMA_40NM = 1.18e14
AREA = 22.7


@pytest.fixture
def fig3_platform():
    return PlatformConfig.from_area(AREA, 35, 1.45)


def _bumps(rng, x, scale, count):
    """Smooth complex function: a few Gaussian bumps with random chirps."""
    out = np.zeros_like(x, dtype=complex)
    for _ in range(count):
        centre = rng.uniform(-2.0, 2.0) * scale
        width = rng.uniform(0.4, 1.2) * scale
        coeff = rng.normal() + 1j * rng.normal()
        chirp = rng.uniform(-3.0, 3.0) / scale
        out += coeff * np.exp(-((x - centre) ** 2) / (2 * width**2) + 1j * chirp * (x - centre))
    return out


def random_two_photon(rng, points=257, sigma=SIGMA_5NM):
    """Normalized random spectrum, either a full 2-D grid or energy-correlated."""
    if rng.random() < 0.5:
        omega = spectra.uniform_axis(MU, 8 * sigma, points)
        values = sum(
            np.outer(_bumps(rng, omega - MU, sigma, 2), _bumps(rng, omega - MU, sigma, 2)) for _ in range(3)
        )
        return spectra.normalize(JointSpectrum(omega, values))
    nu = spectra.uniform_axis(0.0, 8 * sigma, points)
    return spectra.normalize(CorrelatedSpectrum(MU, nu, _bumps(rng, nu, sigma, 4)))


def random_one_photon(rng, points=257, sigma=SIGMA_5NM):
    omega = spectra.uniform_axis(MU, 8 * sigma, points)
    state = OnePhotonState(
        SpectralAmplitude(omega, _bumps(rng, omega - MU, sigma, 3)),
        SpectralAmplitude(omega, _bumps(rng, omega - MU, sigma, 3)),
    )
    return spectra.normalize(state)
