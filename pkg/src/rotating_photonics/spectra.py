"""Sampled one- and two-photon spectral amplitudes.

All amplitudes live on uniform grids in angular frequency (rad/s) and are
integrated with composite Simpson weights, so grids must have an odd number
of points. Two-photon spectra come in two flavours:

* :class:`JointSpectrum` -- a full 2-D grid psi(w1, w2) on a shared axis, so
  exchanging the photons is a matrix transpose.
* :class:`CorrelatedSpectrum` -- an energy-correlated pair with
  w1 = mu + nu, w2 = mu - nu, stored 1-D in the detuning nu on a grid
  symmetric about zero, so exchanging the photons reverses the array.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError, ZeroNormError
from .kinematics import C

DEFAULT_WIDTHS = 8.0
DEFAULT_POINTS = 1025

# below this squared norm a spectrum is treated as annihilated
ZERO_NORM = 1e-300


class Convention(enum.Enum):
    """What ``sigma`` of a Gaussian spectrum measures."""

    AMPLITUDE_STD = "amplitude"  # g ~ exp(-(w - mu)**2 / (2 sigma**2))
    INTENSITY_STD = "intensity"  # |g|**2 is a normal density of std sigma


def bandwidth_to_sigma(bandwidth: float, wavelength: float) -> float:
    """Convert a wavelength bandwidth (m) at ``wavelength`` (m) to rad/s."""
    return 2.0 * math.pi * C * bandwidth / wavelength**2


def wavelength_to_mu(wavelength: float) -> float:
    return 2.0 * math.pi * C / wavelength


@dataclass(frozen=True)
class GaussianSpec:
    mu: float
    sigma: float
    convention: Convention = Convention.INTENSITY_STD

    def __post_init__(self):
        if not (self.mu > 0 and self.sigma > 0):
            raise ValidationError(f"need mu > 0 and sigma > 0, got mu={self.mu!r}, sigma={self.sigma!r}")
        object.__setattr__(self, "convention", Convention(self.convention))

    @classmethod
    def from_wavelength(cls, wavelength: float, bandwidth: float, convention=Convention.INTENSITY_STD):
        return cls(wavelength_to_mu(wavelength), bandwidth_to_sigma(bandwidth, wavelength), convention)

    @property
    def width(self) -> float:
        """The ``s`` in g ~ exp(-(w - mu)**2 / (2 s**2))."""
        if self.convention is Convention.AMPLITUDE_STD:
            return self.sigma
        return math.sqrt(2.0) * self.sigma

    def __call__(self, omega):
        s = self.width
        return (math.pi * s * s) ** -0.25 * np.exp(-((np.asarray(omega) - self.mu) ** 2) / (2.0 * s * s))


def simpson_weights(points: int, step: float) -> np.ndarray:
    """Composite Simpson weights for ``points`` (odd) equally spaced samples."""
    if points < 3 or points % 2 == 0:
        raise ValidationError(f"Simpson integration needs an odd number of points >= 3, got {points}")
    w = np.full(points, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * (step / 3.0)


def uniform_axis(center: float, half_width: float, points: int) -> np.ndarray:
    return center + half_width * np.linspace(-1.0, 1.0, points)


def _weights_for(axis: np.ndarray) -> np.ndarray:
    return simpson_weights(axis.size, (axis[-1] - axis[0]) / (axis.size - 1))


@dataclass(frozen=True, eq=False)
class SpectralAmplitude:
    """Single-photon amplitude sampled on a uniform angular-frequency axis."""

    omega: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.omega.shape != self.values.shape or self.omega.ndim != 1:
            raise ValidationError("omega and values must be 1-D arrays of equal length")

    @classmethod
    def from_gaussian(cls, spec: GaussianSpec, widths: float = DEFAULT_WIDTHS, points: int = DEFAULT_POINTS):
        omega = uniform_axis(spec.mu, widths * spec.sigma, points)
        return cls(omega, spec(omega).astype(complex))

    @property
    def weights(self) -> np.ndarray:
        return _weights_for(self.omega)

    def norm_sq(self) -> float:
        return float(self.weights @ np.abs(self.values) ** 2)

    def scaled(self, factor) -> SpectralAmplitude:
        return SpectralAmplitude(self.omega, self.values * factor)

    def with_values(self, values) -> SpectralAmplitude:
        return SpectralAmplitude(self.omega, np.asarray(values, dtype=complex))


def inner(left: SpectralAmplitude, right: SpectralAmplitude) -> complex:
    """<left|right> = integral of conj(left) * right."""
    if left.omega.shape != right.omega.shape or not np.array_equal(left.omega, right.omega):
        raise ValidationError("amplitudes live on different grids")
    return complex(left.weights @ (np.conj(left.values) * right.values))


@dataclass(frozen=True, eq=False)
class OnePhotonState:
    """One photon shared between the counter-rotating mode a and co-rotating mode b."""

    psi_a: SpectralAmplitude
    psi_b: SpectralAmplitude

    def __post_init__(self):
        if not np.array_equal(self.psi_a.omega, self.psi_b.omega):
            raise ValidationError("both modes must share one frequency grid")

    @property
    def omega(self) -> np.ndarray:
        return self.psi_a.omega

    def norm_sq(self) -> float:
        return self.psi_a.norm_sq() + self.psi_b.norm_sq()

    def scaled(self, factor) -> OnePhotonState:
        return OnePhotonState(self.psi_a.scaled(factor), self.psi_b.scaled(factor))


@dataclass(frozen=True, eq=False)
class JointSpectrum:
    """psi(w1, w2) with w1 on axis 0 (mode a) and w2 on axis 1 (mode b)."""

    omega: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        n = self.omega.size
        if self.omega.ndim != 1 or self.values.shape != (n, n):
            raise ValidationError("values must be square and match the shared axis")

    @classmethod
    def separable(cls, amp_a: SpectralAmplitude, amp_b: SpectralAmplitude) -> JointSpectrum:
        if not np.array_equal(amp_a.omega, amp_b.omega):
            raise ValidationError("both factors must share one frequency grid")
        return cls(amp_a.omega, np.outer(amp_a.values, amp_b.values))

    @property
    def weights(self) -> np.ndarray:
        return _weights_for(self.omega)

    def norm_sq(self) -> float:
        w = self.weights
        return float(w @ (np.abs(self.values) ** 2) @ w)

    def scaled(self, factor) -> JointSpectrum:
        return JointSpectrum(self.omega, self.values * factor)

    def with_values(self, values) -> JointSpectrum:
        return JointSpectrum(self.omega, np.asarray(values, dtype=complex))

    def swapped_values(self) -> np.ndarray:
        return self.values.T

    def _integrate(self, integrand) -> complex:
        w = self.weights
        return complex(w @ integrand @ w)


@dataclass(frozen=True, eq=False)
class CorrelatedSpectrum:
    """Pair constrained to w1 + w2 = 2 mu, stored as an amplitude over detuning nu."""

    mu: float
    nu: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.nu.ndim != 1 or self.nu.shape != self.values.shape:
            raise ValidationError("nu and values must be 1-D arrays of equal length")
        scale = max(abs(self.nu[0]), abs(self.nu[-1]))
        if not np.allclose(self.nu, -self.nu[::-1], rtol=0, atol=1e-12 * scale):
            raise ValidationError("detuning grid must be symmetric about zero")

    @classmethod
    def spdc(cls, spec: GaussianSpec, widths: float = DEFAULT_WIDTHS, points: int = DEFAULT_POINTS):
        """Type-I SPDC pair g(mu + nu) g(mu - nu), left unnormalized."""
        nu = uniform_axis(0.0, widths * spec.sigma, points)
        return cls(spec.mu, nu, (spec(spec.mu + nu) * spec(spec.mu - nu)).astype(complex))

    @property
    def omega1(self) -> np.ndarray:
        return self.mu + self.nu

    @property
    def omega2(self) -> np.ndarray:
        return self.mu - self.nu

    @property
    def weights(self) -> np.ndarray:
        return _weights_for(self.nu)

    def norm_sq(self) -> float:
        return float(self.weights @ np.abs(self.values) ** 2)

    def scaled(self, factor) -> CorrelatedSpectrum:
        return CorrelatedSpectrum(self.mu, self.nu, self.values * factor)

    def with_values(self, values) -> CorrelatedSpectrum:
        return CorrelatedSpectrum(self.mu, self.nu, np.asarray(values, dtype=complex))

    def swapped_values(self) -> np.ndarray:
        return self.values[::-1]

    def _integrate(self, integrand) -> complex:
        return complex(self.weights @ integrand)


TwoPhotonSpectrum = JointSpectrum | CorrelatedSpectrum


def norm(spectrum) -> float:
    return math.sqrt(spectrum.norm_sq())


def normalize(spectrum):
    """Rescale any amplitude, state or two-photon spectrum to unit norm."""
    norm_sq = spectrum.norm_sq()
    if not norm_sq > ZERO_NORM:
        raise ZeroNormError("cannot normalize a spectrum with zero norm")
    return spectrum.scaled(1.0 / math.sqrt(norm_sq))


def swap_overlap(spectrum: TwoPhotonSpectrum) -> complex:
    """<psi|Swap|psi>, the overlap of psi(w1, w2) with psi(w2, w1)."""
    return spectrum._integrate(np.conj(spectrum.values) * spectrum.swapped_values())


def symmetry_split(spectrum: TwoPhotonSpectrum) -> tuple[float, float]:
    """Squared norms of the exchange-symmetric and antisymmetric parts."""
    swapped = spectrum.swapped_values()
    sym = spectrum.with_values(0.5 * (spectrum.values + swapped))
    anti = spectrum.with_values(0.5 * (spectrum.values - swapped))
    return sym.norm_sq(), anti.norm_sq()


def write_csv(path, spectrum: SpectralAmplitude | CorrelatedSpectrum) -> None:
    """Write a 1-D spectrum as ``omega_or_nu,re,im`` rows."""
    axis = spectrum.omega if isinstance(spectrum, SpectralAmplitude) else spectrum.nu
    data = np.column_stack([axis, spectrum.values.real, spectrum.values.imag])
    np.savetxt(path, data, delimiter=",", header="omega_or_nu,re,im", comments="", fmt="%.17g")


def read_csv(path) -> tuple[np.ndarray, np.ndarray]:
    path = Path(path)
    with path.open() as fh:
        header = fh.readline().strip().replace(" ", "")
    if header != "omega_or_nu,re,im":
        raise ValidationError(f"{path}: expected header 'omega_or_nu,re,im', got {header!r}")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 3:
        raise ValidationError(f"{path}: expected 3 columns, got {data.shape[1]}")
    return data[:, 0], data[:, 1] + 1j * data[:, 2]


def read_amplitude_csv(path) -> SpectralAmplitude:
    omega, values = read_csv(path)
    return SpectralAmplitude(omega, values)


def read_correlated_csv(path, mu: float) -> CorrelatedSpectrum:
    nu, values = read_csv(path)
    return CorrelatedSpectrum(mu, nu, values)
