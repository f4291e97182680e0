"""Scenario presets, parameter sweeps and the rotation-frequency dataset.

A sweep evaluates one scenario along one control parameter with the
quadrature engine and/or the scenario's closed form, one row per parameter
value. Row failures (numerical guards, invalid parameters) are recorded on
the row instead of aborting the sweep.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import __version__, detection, interferometer
from .errors import NumericalGuardError, ValidationError
from .kinematics import C, PlatformConfig, sagnac_delay
from .spectra import DEFAULT_POINTS, DEFAULT_WIDTHS, Convention, GaussianSpec

# closed-form and quadrature columns further apart than this are flagged
AGREEMENT_TOLERANCE = 1e-4

CSV_HEADER = ("param", "value_closed", "value_quadrature", "classification")

FIG3_AREA = 22.7
FIG3_WINDINGS = 35
FIG3_INDEX = 1.45
FIG3_MU = 2.36e15
FIG3_SIGMAS = {"5nm": 1.47e13, "40nm": 1.18e14}
FIG3_POINTS = 600
FIG3_FREQ_MAX = 3.0


class Scenario(enum.Enum):
    QUANTUM_SAGNAC = "sagnac"
    ROTATING_HOM = "hom"
    REVEAL_CONCEAL = "reveal-conceal"

    @property
    def convention(self) -> Convention:
        """Gaussian convention under which this scenario's closed form is exact."""
        if self is Scenario.REVEAL_CONCEAL:
            return Convention.AMPLITUDE_STD
        return Convention.INTENSITY_STD


class Swept(enum.Enum):
    ROTATION_FREQUENCY = "freq"
    DELAY_TIME = "delay"
    BANDWIDTH = "sigma"


METHODS = frozenset(detection.Method)


@dataclass(frozen=True)
class SweepSpec:
    scenario: Scenario
    swept: Swept
    lo: float
    hi: float
    steps: int
    platform: PlatformConfig
    photon: GaussianSpec
    delta_t: float = 0.0
    methods: frozenset = METHODS
    widths: float = DEFAULT_WIDTHS
    points: int = DEFAULT_POINTS

    def __post_init__(self):
        object.__setattr__(self, "scenario", Scenario(self.scenario))
        object.__setattr__(self, "swept", Swept(self.swept))
        object.__setattr__(self, "methods", frozenset(detection.Method(m) for m in self.methods))
        if self.steps < 2 or int(self.steps) != self.steps:
            raise ValidationError(f"a sweep needs an integer number of steps >= 2, got {self.steps!r}")
        if not self.lo < self.hi:
            raise ValidationError(f"sweep range must satisfy lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if not self.methods:
            raise ValidationError("at least one evaluation method is required")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class Row:
    param: float
    closed: float | None = None
    quadrature: float | None = None
    classification: str = ""
    error: str | None = None

    @property
    def agrees(self) -> bool:
        if self.closed is None or self.quadrature is None:
            return True
        return abs(self.closed - self.quadrature) < AGREEMENT_TOLERANCE

    def to_dict(self) -> dict:
        return {
            "param": self.param,
            "value_closed": self.closed,
            "value_quadrature": self.quadrature,
            "classification": self.classification,
            "agrees": self.agrees,
            "error": self.error,
        }


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: tuple[Row, ...]
    provenance: dict = field(default_factory=dict)

    def column(self, method: detection.Method) -> np.ndarray:
        attr = "closed" if method is detection.Method.CLOSED_FORM else "quadrature"
        return np.array([np.nan if getattr(r, attr) is None else getattr(r, attr) for r in self.rows])

    @property
    def params(self) -> np.ndarray:
        return np.array([r.param for r in self.rows])

    @property
    def disagreements(self) -> list[Row]:
        return [r for r in self.rows if not r.agrees]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            writer.writerow([
                repr(r.param),
                "" if r.closed is None else repr(r.closed),
                "" if r.quadrature is None else repr(r.quadrature),
                "error" if r.error else r.classification,
            ])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {"provenance": self.provenance, "rows": [r.to_dict() for r in self.rows]}
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"

    def write(self, path, fmt: str = "csv") -> Path:
        path = Path(path)
        path.write_text(self.to_csv() if fmt == "csv" else self.to_json())
        return path


def _point_inputs(spec: SweepSpec, value: float) -> tuple[PlatformConfig, GaussianSpec, float]:
    platform, photon, delta_t = spec.platform, spec.photon, spec.delta_t
    if spec.swept is Swept.ROTATION_FREQUENCY:
        platform = platform.with_freq(value)
    elif spec.swept is Swept.DELAY_TIME:
        delta_t = value
    else:
        photon = replace(photon, sigma=value)
    return platform, photon, delta_t


def evaluate_point(
    scenario: Scenario,
    platform: PlatformConfig,
    photon: GaussianSpec,
    delta_t: float = 0.0,
    methods=METHODS,
    widths: float = DEFAULT_WIDTHS,
    points: int = DEFAULT_POINTS,
    param: float = math.nan,
    strict: bool = False,
) -> Row:
    """Evaluate one scenario at one operating point.

    The value is the port-c probability for the quantum Sagnac scenario and
    the coincidence probability otherwise. With ``strict`` set, failures
    propagate instead of being recorded on the row.
    """
    scenario = Scenario(scenario)
    methods = frozenset(detection.Method(m) for m in methods)
    t_s = sagnac_delay(platform.area, platform.freq)
    closed = quadrature = None
    try:
        if detection.Method.CLOSED_FORM in methods:
            if scenario is Scenario.QUANTUM_SAGNAC:
                closed = detection.p1_sagnac_closed(photon.mu, platform.area, platform.freq).p_c
            elif scenario is Scenario.ROTATING_HOM:
                closed = detection.p2_hom_closed(photon.sigma, t_s, delta_t)
            else:
                closed = detection.p2_reveal_conceal_closed(photon.mu, photon.sigma, t_s)
        if detection.Method.QUADRATURE in methods:
            if scenario is Scenario.QUANTUM_SAGNAC:
                state = interferometer.build_quantum_sagnac(platform, photon, widths, points)
                quadrature = detection.p1(state).p_c
            elif scenario is Scenario.ROTATING_HOM:
                spectrum = interferometer.build_rotating_hom(platform, photon, delta_t, widths, points)
                quadrature = detection.p2(spectrum).p2
            else:
                spectrum = interferometer.build_reveal_conceal(platform, photon, widths, points)
                quadrature = detection.p2(spectrum).p2
    except (ValidationError, NumericalGuardError) as exc:
        if strict:
            raise
        return Row(param, closed, quadrature, "", f"{type(exc).__name__}: {exc}")
    label = ""
    if scenario is not Scenario.QUANTUM_SAGNAC:
        label = detection.classify(quadrature if quadrature is not None else closed).value
    return Row(param, closed, quadrature, label)


def describe(spec: SweepSpec) -> dict:
    """Flat record of every input of a sweep, with wavelength-domain equivalents."""
    wavelength = 2.0 * math.pi * C / spec.photon.mu
    return {
        "scenario": spec.scenario.value,
        "swept": spec.swept.value,
        "lo": spec.lo,
        "hi": spec.hi,
        "steps": spec.steps,
        "radius_m": spec.platform.radius,
        "windings": spec.platform.windings,
        "index": spec.platform.index,
        "area_m2": spec.platform.area,
        "freq_hz": spec.platform.freq,
        "mu_rad_s": spec.photon.mu,
        "sigma_rad_s": spec.photon.sigma,
        "wavelength_nm": wavelength * 1e9,
        "bandwidth_nm": spec.photon.sigma * wavelength**2 / (2.0 * math.pi * C) * 1e9,
        "convention": spec.photon.convention.value,
        "delta_t_s": spec.delta_t,
        "methods": sorted(m.value for m in spec.methods),
    }


def run_sweep(spec: SweepSpec, workers: int = 1, echo: dict | None = None) -> SweepResult:
    """Evaluate ``spec`` row by row; output order follows the parameter values."""

    def one(value):
        value = float(value)
        try:
            platform, photon, delta_t = _point_inputs(spec, value)
        except ValidationError as exc:
            return Row(value, error=f"{type(exc).__name__}: {exc}")
        return evaluate_point(
            spec.scenario, platform, photon, delta_t, spec.methods, spec.widths, spec.points, value
        )

    values = spec.values()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(one, values))
    else:
        rows = tuple(one(v) for v in values)
    provenance = {
        "config": echo if echo is not None else describe(spec),
        "inputs": describe(spec),
        "grid": {"widths": spec.widths, "points": spec.points, "rule": "composite-simpson"},
        "agreement_tolerance": AGREEMENT_TOLERANCE,
        "disagreements": sum(not r.agrees for r in rows),
        "errors": sum(r.error is not None for r in rows),
        "version": __version__,
    }
    return SweepResult(spec, rows, provenance)


def fig3_specs(points: int = FIG3_POINTS, freq_max: float = FIG3_FREQ_MAX, **grid) -> dict[str, SweepSpec]:
    """Reveal/conceal sweeps over rotation frequency for the 5 nm and 40 nm photons."""
    platform = PlatformConfig.from_area(FIG3_AREA, FIG3_WINDINGS, FIG3_INDEX)
    return {
        label: SweepSpec(
            Scenario.REVEAL_CONCEAL,
            Swept.ROTATION_FREQUENCY,
            0.0,
            freq_max,
            points,
            platform,
            GaussianSpec(FIG3_MU, sigma, Convention.AMPLITUDE_STD),
            **grid,
        )
        for label, sigma in FIG3_SIGMAS.items()
    }


def fig3_dataset(points: int = FIG3_POINTS, freq_max: float = FIG3_FREQ_MAX, workers: int = 1, **grid):
    """Return the (5 nm, 40 nm) coincidence curves versus rotation frequency."""
    specs = fig3_specs(points, freq_max, **grid)
    return run_sweep(specs["5nm"], workers), run_sweep(specs["40nm"], workers)


def write_fig3(out_dir, points: int = FIG3_POINTS, freq_max: float = FIG3_FREQ_MAX, fmt: str = "csv",
               workers: int = 1) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for label, result in zip(FIG3_SIGMAS, fig3_dataset(points, freq_max, workers)):
        paths.append(result.write(out_dir / f"fig3_{label}.{fmt}", fmt))
    return paths
