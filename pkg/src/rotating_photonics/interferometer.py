"""Beam splitter and the three rotating-platform interferometers.

Each builder returns the state that arrives at the final beam splitter; the
detection functionals take it from there. Sources on the rotating platform
emit the same states they would at rest.
"""

from __future__ import annotations

import math

import numpy as np

from . import evolution, spectra
from .kinematics import PlatformConfig, beta as platform_beta
from .spectra import (
    DEFAULT_POINTS,
    DEFAULT_WIDTHS,
    CorrelatedSpectrum,
    GaussianSpec,
    JointSpectrum,
    OnePhotonState,
    SpectralAmplitude,
)

BEAM_SPLITTER = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


def beamsplit_one_photon(state: OnePhotonState) -> OnePhotonState:
    """Map modes (a, b) onto output ports (c, d); the result's psi_a/psi_b hold c/d."""
    a, b = state.psi_a.values, state.psi_b.values
    c = BEAM_SPLITTER[0, 0] * a + BEAM_SPLITTER[0, 1] * b
    d = BEAM_SPLITTER[1, 0] * a + BEAM_SPLITTER[1, 1] * b
    return OnePhotonState(state.psi_a.with_values(c), state.psi_b.with_values(d))


def _loop_params(config: PlatformConfig) -> tuple[float, float]:
    return platform_beta(config), config.propagation_time


def build_quantum_sagnac(
    config: PlatformConfig,
    photon: GaussianSpec,
    widths: float = DEFAULT_WIDTHS,
    points: int = DEFAULT_POINTS,
) -> OnePhotonState:
    """Photon split by the first beam-splitter pass into both senses of the loop."""
    g = SpectralAmplitude.from_gaussian(photon, widths, points)
    half = g.scaled(1.0 / math.sqrt(2.0))
    initial = spectra.normalize(OnePhotonState(half, half))
    return evolution.evolve_one_photon(initial, *_loop_params(config))


def build_rotating_hom(
    config: PlatformConfig,
    photon: GaussianSpec,
    delta_t: float,
    widths: float = DEFAULT_WIDTHS,
    points: int = DEFAULT_POINTS,
) -> JointSpectrum:
    """Two identical counter-propagating photons, mode a delayed by ``delta_t``."""
    g = SpectralAmplitude.from_gaussian(photon, widths, points)
    delayed = g.with_values(g.values * np.exp(-1j * g.omega * delta_t))
    initial = spectra.normalize(JointSpectrum.separable(delayed, g))
    return evolution.evolve_two_photon(initial, *_loop_params(config))


def build_reveal_conceal(
    config: PlatformConfig,
    photon: GaussianSpec,
    widths: float = DEFAULT_WIDTHS,
    points: int = DEFAULT_POINTS,
) -> CorrelatedSpectrum:
    """Energy-correlated SPDC pair; photon a crosses a Sagnac loop, photon b co-rotates.

    Raises :class:`~rotating_photonics.errors.ZeroNormError` when the loop
    (almost) never lets photon a out.
    """
    return build_reveal_conceal_with_survival(config, photon, widths, points).spectrum


def build_reveal_conceal_with_survival(
    config: PlatformConfig,
    photon: GaussianSpec,
    widths: float = DEFAULT_WIDTHS,
    points: int = DEFAULT_POINTS,
) -> evolution.LoopOutput:
    initial = spectra.normalize(CorrelatedSpectrum.spdc(photon, widths, points))
    return evolution.sagnac_loop_amplitude(initial, *_loop_params(config))
