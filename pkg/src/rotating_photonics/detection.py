"""One- and two-photon detection probabilities.

Photodetection integrals over time are reduced to frequency-domain overlaps
(Parseval), so every quadrature here runs on the spectral grids. Closed forms
for the three scenarios sit alongside for comparison.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import interferometer
from .errors import NormalizationError, NumericalGuardError, ValidationError
from .kinematics import sagnac_delay
from .spectra import OnePhotonState, inner, swap_overlap

PROBABILITY_SLACK = 1e-8
NORM_TOLERANCE = 1e-6
DENOMINATOR_FLOOR = 1e-12


class Method(enum.Enum):
    QUADRATURE = "quadrature"
    CLOSED_FORM = "closed"


def _clamp(p: float) -> float:
    if not -PROBABILITY_SLACK <= p <= 1.0 + PROBABILITY_SLACK:
        raise NumericalGuardError(f"probability {p!r} lies outside [0, 1] beyond quadrature noise")
    return min(max(p, 0.0), 1.0)


@dataclass(frozen=True)
class OnePhotonResult:
    p_c: float
    p_d: float
    method: Method
    raw: tuple[float, float]
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CoincidenceResult:
    p2: float
    method: Method
    raw: float
    metadata: dict = field(default_factory=dict)

    @property
    def classification(self) -> Classification:
        return classify(self.p2)


def _check_normalized(norm_sq: float) -> None:
    if abs(norm_sq - 1.0) > NORM_TOLERANCE:
        raise NormalizationError(f"state norm^2 is {norm_sq!r}, expected 1")


def _grid_metadata(omega: np.ndarray) -> dict:
    return {"points": int(omega.size), "lo": float(omega[0]), "hi": float(omega[-1])}


def p1(state: OnePhotonState) -> OnePhotonResult:
    """Port probabilities from the a/b interference term."""
    _check_normalized(state.norm_sq())
    cross = 2.0 * inner(state.psi_a, state.psi_b).real
    raw = (0.5 + 0.5 * cross, 0.5 - 0.5 * cross)
    return OnePhotonResult(_clamp(raw[0]), _clamp(raw[1]), Method.QUADRATURE, raw, _grid_metadata(state.omega))


def p1_beamsplit(state: OnePhotonState) -> OnePhotonResult:
    """Port probabilities by beam-splitting first and integrating |psi_c|^2, |psi_d|^2."""
    _check_normalized(state.norm_sq())
    out = interferometer.beamsplit_one_photon(state)
    raw = (out.psi_a.norm_sq(), out.psi_b.norm_sq())
    return OnePhotonResult(_clamp(raw[0]), _clamp(raw[1]), Method.QUADRATURE, raw, _grid_metadata(state.omega))


def p1_sagnac_closed(mu: float, area: float, freq: float) -> OnePhotonResult:
    """Narrowband Sagnac fringe (1 +- cos(mu t_s)) / 2."""
    t_s = sagnac_delay(area, freq)
    fringe = math.cos(mu * t_s)
    raw = (0.5 * (1.0 + fringe), 0.5 * (1.0 - fringe))
    return OnePhotonResult(raw[0], raw[1], Method.CLOSED_FORM, raw, {"formula": "sagnac-narrowband", "t_s": t_s})


def p2(spectrum) -> CoincidenceResult:
    """Coincidence probability 1/2 - Re<psi|Swap|psi>/2."""
    _check_normalized(spectrum.norm_sq())
    overlap = swap_overlap(spectrum)
    raw = 0.5 - 0.5 * overlap.real
    axis = spectrum.omega if hasattr(spectrum, "omega") else spectrum.nu
    meta = _grid_metadata(axis) | {"overlap_imag": overlap.imag}
    return CoincidenceResult(_clamp(raw), Method.QUADRATURE, raw, meta)


def p2_hom_closed(sigma: float, t_s: float, delta_t: float) -> float:
    if not sigma > 0:
        raise ValidationError(f"sigma must be positive, got {sigma!r}")
    return 0.5 - 0.5 * math.exp(-((sigma * (t_s - delta_t)) ** 2))


def p2_reveal_conceal_closed(mu: float, sigma: float, t_s: float) -> float:
    """Coincidence probability of the rotating reveal/conceal interferometer."""
    fringe = math.cos(mu * t_s) * math.exp(-((sigma * t_s) ** 2) / 8.0)
    denominator = 1.0 + fringe
    if not denominator > DENOMINATOR_FLOOR:
        raise NumericalGuardError(
            f"denominator 1 + cos(mu t_s) exp(-sigma^2 t_s^2 / 8) = {denominator:.3e}: "
            "approaching the perfect anti-coalescence limit"
        )
    numerator = fringe + 0.5 * (1.0 + math.exp(-((sigma * t_s) ** 2) / 2.0))
    return 0.5 - numerator / (2.0 * denominator)


class Classification(enum.Enum):
    COALESCENCE = "coalescence"
    CLASSICAL_RANGE = "classical"
    ANTI_COALESCENCE = "anti-coalescence"

    @property
    def witnesses_entanglement(self) -> bool:
        return self is Classification.ANTI_COALESCENCE


def classify(p2: float) -> Classification:
    """Place a coincidence probability relative to the classical window [1/4, 1/2]."""
    if p2 < 0.25:
        return Classification.COALESCENCE
    if p2 <= 0.5:
        return Classification.CLASSICAL_RANGE
    return Classification.ANTI_COALESCENCE
