"""Special-relativistic bookkeeping for light guided around a rotating platform.

Everything is SI. A platform is a loop of radius ``radius`` wound
``windings`` times, filled with a co-rotating medium of index ``index`` and
spinning at ``omega`` rad/s. Negative ``omega`` reverses the sense of
rotation, which swaps the roles of the counter- and co-rotating directions.

Exact relativistic expressions are provided next to their first-order
counterparts; the first-order forms are what the rest of the package uses,
the exact ones serve as oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericalGuardError, SuperluminalError, ValidationError

C = 299_792_458.0  # m/s


def lorentz_factor(speed: float) -> float:
    """Lorentz factor for a tangential ``speed`` in m/s."""
    ratio = speed / C
    if abs(ratio) >= 1.0:
        raise SuperluminalError(f"rim speed {speed!r} m/s is not below c")
    return 1.0 / math.sqrt(1.0 - ratio * ratio)


@dataclass(frozen=True)
class PlatformConfig:
    radius: float
    windings: int = 1
    index: float = 1.0
    omega: float = 0.0

    def __post_init__(self):
        if not self.radius > 0:
            raise ValidationError(f"radius must be positive, got {self.radius!r}")
        if int(self.windings) != self.windings or self.windings < 1:
            raise ValidationError(f"winding number must be a positive integer, got {self.windings!r}")
        if not self.index >= 1.0:
            raise ValidationError(f"refractive index must be >= 1, got {self.index!r}")
        if not math.isfinite(self.omega):
            raise ValidationError(f"angular frequency must be finite, got {self.omega!r}")
        if abs(self.radius * self.omega) >= C:
            raise SuperluminalError(
                f"rim speed {abs(self.radius * self.omega)!r} m/s is not below c"
            )

    @classmethod
    def from_area(cls, area: float, windings: int = 1, index: float = 1.0, omega: float = 0.0):
        """Build the platform whose encircled area ``windings * pi * r**2`` equals ``area``."""
        if not area > 0:
            raise ValidationError(f"area must be positive, got {area!r}")
        return cls(math.sqrt(area / (windings * math.pi)), windings, index, omega)

    @classmethod
    def from_frequency(cls, radius: float, windings: int = 1, index: float = 1.0, freq: float = 0.0):
        return cls(radius, windings, index, 2.0 * math.pi * freq)

    @property
    def freq(self) -> float:
        """Rotation frequency in Hz."""
        return self.omega / (2.0 * math.pi)

    @property
    def rim_speed(self) -> float:
        return self.radius * self.omega

    @property
    def path_length(self) -> float:
        return 2.0 * math.pi * self.radius * self.windings

    @property
    def area(self) -> float:
        return self.windings * math.pi * self.radius**2

    @property
    def propagation_time(self) -> float:
        """Time ``L n / c`` spent in the loop, as seen on the platform."""
        return self.path_length * self.index / C

    def with_omega(self, omega: float) -> PlatformConfig:
        return PlatformConfig(self.radius, self.windings, self.index, omega)

    def with_freq(self, freq: float) -> PlatformConfig:
        return self.with_omega(2.0 * math.pi * freq)


def lorentz_gamma(config: PlatformConfig) -> float:
    return lorentz_factor(config.rim_speed)


def beta(config: PlatformConfig) -> float:
    """Doppler parameter r * Omega / (n c)."""
    return config.rim_speed / (config.index * C)


def drag_coefficient(index: float) -> float:
    """Fresnel drag coefficient 1 - 1/n**2."""
    return 1.0 - 1.0 / index**2


def drag_velocities(config: PlatformConfig) -> tuple[float, float]:
    """Lab-frame signed light velocities (u_plus, u_minus) by relativistic addition."""
    n, v = config.index, config.rim_speed
    u_plus = (C / n + v) / (1.0 + v / (n * C))
    u_minus = (-C / n + v) / (1.0 - v / (n * C))
    return u_plus, u_minus


def drag_velocities_first_order(config: PlatformConfig) -> tuple[float, float]:
    n, v = config.index, config.rim_speed
    drag = drag_coefficient(n) * v
    return C / n + drag, -C / n + drag


def initial_times(config: PlatformConfig) -> tuple[float, float]:
    """Time-distances L / |u| ignoring the motion of the detectors."""
    u_plus, u_minus = drag_velocities(config)
    return config.path_length / abs(u_plus), config.path_length / abs(u_minus)


def initial_times_first_order(config: PlatformConfig) -> tuple[float, float]:
    L, n, v = config.path_length, config.index, config.rim_speed
    base = L * n / C
    shift = v * L / C**2 * drag_coefficient(n) * n**2
    return base - shift, base + shift


def arrival_times(config: PlatformConfig) -> tuple[float, float]:
    """Exact times for the two signals to catch up with the moving detectors."""
    u_plus, u_minus = drag_velocities(config)
    v, L = config.rim_speed, config.path_length
    closing_plus = abs(u_plus) - v
    closing_minus = abs(u_minus) + v
    if closing_plus <= 0 or closing_minus <= 0:
        raise NumericalGuardError("signal never reaches the detector (non-positive closing speed)")
    return L / closing_plus, L / closing_minus


def arrival_times_first_order(config: PlatformConfig) -> tuple[float, float]:
    L, n, v = config.path_length, config.index, config.rim_speed
    base = L * n / C
    shift = L * v / C**2
    return base + shift, base - shift


def sagnac_delay(area: float, freq: float) -> float:
    """Classical Sagnac delay 8 pi A f / c**2."""
    if not area > 0:
        raise ValidationError(f"area must be positive, got {area!r}")
    return 8.0 * math.pi * area * freq / C**2


def sagnac_delay_first_order(config: PlatformConfig) -> float:
    """First-order arrival-time difference 2 L v / c**2; carries no dependence on n."""
    return 2.0 * config.path_length * config.rim_speed / C**2


def sagnac_delay_exact(config: PlatformConfig) -> float:
    """Exact arrival-time difference, evaluated without cancellation.

    Substituting the drag velocities gives t_a(+-) = gamma**2 (L n / c +- L v / c**2),
    so the difference is gamma**2 times the first-order delay.
    """
    return lorentz_gamma(config) ** 2 * sagnac_delay_first_order(config)


@dataclass(frozen=True)
class KinematicsReport:
    beta: float
    gamma: float
    path_length: float
    area: float
    u_plus: float
    u_minus: float
    t_a_plus: float
    t_a_minus: float
    t_sagnac: float

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "gamma": self.gamma,
            "path_length_m": self.path_length,
            "area_m2": self.area,
            "u_plus": self.u_plus,
            "u_minus": self.u_minus,
            "t_a_plus": self.t_a_plus,
            "t_a_minus": self.t_a_minus,
            "t_sagnac": self.t_sagnac,
        }


def kinematics_report(config: PlatformConfig) -> KinematicsReport:
    u_plus, u_minus = drag_velocities(config)
    t_plus, t_minus = arrival_times(config)
    return KinematicsReport(
        beta=beta(config),
        gamma=lorentz_gamma(config),
        path_length=config.path_length,
        area=config.area,
        u_plus=u_plus,
        u_minus=u_minus,
        t_a_plus=t_plus,
        t_a_minus=t_minus,
        t_sagnac=sagnac_delay(config.area, config.freq),
    )
