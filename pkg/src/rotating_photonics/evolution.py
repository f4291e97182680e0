"""Time evolution generated by the Born Hamiltonian of the co-rotating observer.

Photons in the counter-rotating mode a see their frequency Doppler-shifted to
(1 + beta) w, those in the co-rotating mode b to (1 - beta) w. Only the
differential phases exp(+-i w beta t_f) are applied; the common propagation
phase exp(-i w t_f) is dropped since every observable depends on phase
differences and w t_f ~ 1e10 rad would swamp them in double precision.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy import integrate

from . import spectra
from .errors import SuperluminalError, ValidationError, ZeroNormError
from .kinematics import C, PlatformConfig, beta as platform_beta, lorentz_factor
from .spectra import CorrelatedSpectrum, JointSpectrum, OnePhotonState

# survival probabilities below this make the post-loop spectrum meaningless
SURVIVAL_FLOOR = 1e-12


class Direction(enum.IntEnum):
    COUNTER_ROTATING = 1
    CO_ROTATING = -1


@dataclass(frozen=True)
class EvolutionParams:
    beta: float
    t_f: float
    direction: Direction = Direction.COUNTER_ROTATING
    index: float = 1.0

    def __post_init__(self):
        if not self.t_f > 0:
            raise ValidationError(f"propagation time must be positive, got {self.t_f!r}")

    @classmethod
    def from_config(cls, config: PlatformConfig, direction=Direction.COUNTER_ROTATING):
        return cls(platform_beta(config), config.propagation_time, Direction(direction), config.index)

    @property
    def gamma(self) -> float:
        # the Lorentz factor uses r Omega / c = n beta
        return lorentz_factor(self.index * self.beta * C)


def mode_frequency(omega, params: EvolutionParams, relativistic: bool = False):
    """Doppler-shifted frequency seen by the co-rotating detector."""
    shifted = (1.0 + int(params.direction) * params.beta) * np.asarray(omega)
    return params.gamma * shifted if relativistic else shifted


def _phase(omega, beta: float, t_f: float, sign: int) -> np.ndarray:
    return np.exp(1j * sign * beta * t_f * omega)


def evolve_one_photon(state: OnePhotonState, beta: float, t_f: float) -> OnePhotonState:
    omega = state.omega
    return OnePhotonState(
        state.psi_a.with_values(state.psi_a.values * _phase(omega, beta, t_f, +1)),
        state.psi_b.with_values(state.psi_b.values * _phase(omega, beta, t_f, -1)),
    )


def _two_photon_factor(spectrum, factor_a: Callable, factor_b: Callable) -> np.ndarray:
    if isinstance(spectrum, JointSpectrum):
        return np.outer(factor_a(spectrum.omega), factor_b(spectrum.omega))
    if isinstance(spectrum, CorrelatedSpectrum):
        return factor_a(spectrum.omega1) * factor_b(spectrum.omega2)
    raise TypeError(f"not a two-photon spectrum: {type(spectrum).__name__}")


def evolve_two_photon(spectrum, beta: float, t_f: float):
    """Photon 1 counter-rotates (mode a), photon 2 co-rotates (mode b)."""
    factor = _two_photon_factor(
        spectrum,
        lambda w: _phase(w, beta, t_f, +1),
        lambda w: _phase(w, beta, t_f, -1),
    )
    return spectrum.with_values(spectrum.values * factor)


class LoopOutput(NamedTuple):
    spectrum: JointSpectrum | CorrelatedSpectrum
    survival: float


def sagnac_loop_amplitude(spectrum, beta: float, t_f: float) -> LoopOutput:
    """Send photon 1 through a Sagnac loop while photon 2 co-rotates.

    The loop recombines both senses of circulation of photon 1, leaving an
    amplitude cos(beta w1 t_f) for it to exit towards the final beam
    splitter. The result is renormalized; ``survival`` is the norm before
    renormalization, i.e. the probability that photon 1 leaves the loop on
    the detection side.
    """
    factor = _two_photon_factor(
        spectrum,
        lambda w: np.cos(beta * t_f * w),
        lambda w: _phase(w, beta, t_f, -1),
    )
    out = spectrum.with_values(spectrum.values * factor)
    survival = out.norm_sq() / spectrum.norm_sq()
    if not survival > SURVIVAL_FLOOR:
        raise ZeroNormError(
            f"Sagnac loop transmits a fraction {survival:.3e} of the pair; renormalization is ill-defined"
        )
    return LoopOutput(spectra.normalize(out), survival)


@dataclass(frozen=True)
class RotationProfile:
    """Angular frequency as a function of platform time over [0, t_f]."""

    omega_of_t: Callable[[float], float]
    min_samples: int = 64
    breakpoints: tuple = ()

    @classmethod
    def uniform(cls, omega: float) -> RotationProfile:
        return cls(lambda t: omega)

    @classmethod
    def linear_ramp(cls, omega_max: float, t_f: float) -> RotationProfile:
        return cls(lambda t: omega_max * t / t_f)

    @classmethod
    def piecewise_linear(cls, times, omegas) -> RotationProfile:
        times = np.asarray(times, dtype=float)
        omegas = np.asarray(omegas, dtype=float)
        if times.ndim != 1 or times.shape != omegas.shape or times.size < 2:
            raise ValidationError("piecewise-linear profile needs matching 1-D (t, Omega) samples")
        if np.any(np.diff(times) <= 0):
            raise ValidationError("profile times must be strictly increasing")
        return cls(
            lambda t: float(np.interp(t, times, omegas)),
            min_samples=max(64, times.size),
            breakpoints=tuple(times),
        )

    @classmethod
    def from_csv(cls, path) -> RotationProfile:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        if data.shape[1] != 2:
            raise ValidationError(f"{path}: expected columns t,Omega")
        return cls.piecewise_linear(data[:, 0], data[:, 1])


def dynamical_phase(
    profile: RotationProfile,
    omega: float,
    direction: Direction,
    radius: float,
    index: float,
    t_f: float,
    rtol: float = 1e-12,
) -> float:
    """Integral of Gamma_t (1 +- beta_t) omega over [0, t_f]."""
    if not t_f > 0:
        raise ValidationError(f"propagation time must be positive, got {t_f!r}")
    sign = int(Direction(direction))
    for t in np.concatenate([np.linspace(0.0, t_f, profile.min_samples), profile.breakpoints]):
        if abs(radius * profile.omega_of_t(t)) >= C:
            raise SuperluminalError(f"rim speed exceeds c at t = {t!r} s")

    def rate(t):
        speed = radius * profile.omega_of_t(t)
        return lorentz_factor(speed) * (1.0 + sign * speed / (index * C))

    # integrate the dimensionless rate over [0, 1] so tolerances are scale-free
    kinks = [t / t_f for t in profile.breakpoints if 0.0 < t < t_f] or None
    value, _ = integrate.quad(
        lambda s: rate(s * t_f), 0.0, 1.0, epsabs=0.0, epsrel=rtol, limit=200, points=kinks
    )
    return omega * t_f * value
