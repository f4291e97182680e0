"""Command-line interface.

Every option can also come from a flat ``key = value`` config file passed with
``--config``; flags given on the command line win over the file. Exit status
is 0 on success, 1 on invalid input and 2 when a numerical guard trips.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

from . import __version__, experiments, kinematics
from .detection import Method, classify
from .errors import NumericalGuardError, ValidationError
from .evolution import Direction, RotationProfile, dynamical_phase
from .experiments import Scenario, SweepSpec, Swept
from .kinematics import PlatformConfig
from .spectra import Convention, GaussianSpec, bandwidth_to_sigma, wavelength_to_mu

log = logging.getLogger("rotating_photonics")

OUTPUT_DIR_ENV = "ROTATING_PHOTONICS_OUTPUT_DIR"

DEFAULTS = {
    "area": 22.7,
    "windings": 35,
    "index": 1.45,
    "freq": 0.0,
    "wavelength_nm": 800.0,
    "bandwidth_nm": 5.0,
    "widths": 8.0,
    "points": 1025,
    "delta_t": 0.0,
    "methods": "closed,quadrature",
    "direction": "counter",
    "steps": 21,
    "f_max": experiments.FIG3_FREQ_MAX,
    "format": "json",
    "workers": 1,
}

COMMAND_DEFAULTS = {"fig3": {"steps": experiments.FIG3_POINTS, "format": "csv"}}

# pairs where exactly one member may be set; the second member is the default
EXCLUSIVE = (("radius", "area"), ("mu", "wavelength_nm"), ("sigma", "bandwidth_nm"))

# options that do not change what is computed and stay out of the config echo
NOT_ECHOED = {"config", "out", "format", "workers"}

# name -> (type, help)
OPTIONS = {
    "radius": (float, "loop radius in m (alternative to --area)"),
    "area": (float, "encircled area N pi r^2 in m^2 (default 22.7)"),
    "windings": (int, "winding number N (default 35)"),
    "index": (float, "refractive index of the co-rotating medium (default 1.45)"),
    "freq": (float, "rotation frequency in Hz (default 0)"),
    "wavelength_nm": (float, "carrier wavelength in nm (default 800)"),
    "mu": (float, "carrier angular frequency in rad/s (alternative to --wavelength-nm)"),
    "bandwidth_nm": (float, "bandwidth in nm (default 5)"),
    "sigma": (float, "bandwidth in rad/s (alternative to --bandwidth-nm)"),
    "convention": (str, "what sigma measures: amplitude or intensity std (default: per scenario)"),
    "widths": (float, "grid half-width in units of sigma (default 8)"),
    "points": (int, "grid points per axis, odd (default 1025)"),
    "delta_t": (float, "initial delay of mode a in s (default 0)"),
    "methods": (str, "comma-separated subset of closed,quadrature"),
    "scenario": (str, "sagnac, hom or reveal-conceal"),
    "swept": (str, "freq, delay or sigma"),
    "lo": (float, "sweep start"),
    "hi": (float, "sweep end"),
    "steps": (int, "number of sweep points"),
    "f_max": (float, "upper rotation frequency in Hz (default 3)"),
    "profile": (str, "CSV file with columns t,Omega for a time-dependent rotation"),
    "direction": (str, "counter or co (default counter)"),
    "out": (str, "output file (directory for fig3)"),
    "format": (str, "json or csv"),
    "workers": (int, "threads used for sweeps (default 1)"),
    "config": (str, "flat key = value config file; flags override it"),
}

PLATFORM = ("radius", "area", "windings", "index", "freq")
PHOTON = ("wavelength_nm", "mu", "bandwidth_nm", "sigma", "convention")
GRID = ("widths", "points")
IO = ("out", "format", "config")

SUBCOMMANDS = {
    "kinematics": ("print the platform's relativistic kinematics as JSON", PLATFORM + ("config",)),
    "sagnac": ("one-photon quantum Sagnac fringe", PLATFORM + PHOTON + GRID + ("methods",) + IO),
    "hom": ("Hong-Ou-Mandel dip on the rotating platform", PLATFORM + PHOTON + GRID + ("delta_t", "methods") + IO),
    "reveal-conceal": ("coincidences of the entangled-pair interferometer", PLATFORM + PHOTON + GRID + ("methods",) + IO),
    "sweep": (
        "sweep one scenario along one parameter",
        PLATFORM + PHOTON + GRID + ("delta_t", "methods", "scenario", "swept", "lo", "hi", "steps", "workers") + IO,
    ),
    "fig3": ("coincidence curves for 5 nm and 40 nm photons versus rotation frequency",
             ("steps", "f_max", "widths", "points", "workers") + IO),
    "phase": ("dynamical phase accumulated under a (time-dependent) rotation",
              PLATFORM + ("wavelength_nm", "mu", "profile", "direction", "config")),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rotating-photonics", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (help_text, options) in SUBCOMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        for opt in options:
            kind, opt_help = OPTIONS[opt]
            p.add_argument("--" + opt.replace("_", "-"), dest=opt, type=kind, default=argparse.SUPPRESS, help=opt_help)
    return parser


def _parse_scalar(text: str, kind):
    try:
        return kind(text)
    except ValueError as exc:
        raise ValidationError(f"cannot read {text!r} as {kind.__name__}") from exc


def read_config(path, allowed) -> dict:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in allowed or key == "config":
            raise ValidationError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _parse_scalar(value, OPTIONS[key][0])
    return values


def format_config(echo: dict) -> str:
    """Render a config echo back into the file format accepted by ``--config``."""
    return "".join(f"{key} = {value!r}\n" if isinstance(value, float) else f"{key} = {value}\n"
                   for key, value in echo.items())


def resolve(command: str, cli: dict) -> dict:
    """Merge defaults, config file and flags for one subcommand."""
    allowed = SUBCOMMANDS[command][1]
    from_file = read_config(cli["config"], allowed) if "config" in cli else {}
    merged = {**from_file, **cli}
    for first, second in EXCLUSIVE:
        if first in merged and second in merged:
            if (first in cli) != (second in cli):
                # a flag overrides the other member of the pair coming from the file
                merged.pop(second if first in cli else first)
            else:
                raise ValidationError(f"give only one of --{first.replace('_', '-')} / --{second.replace('_', '-')}")
    for key, value in {**DEFAULTS, **COMMAND_DEFAULTS.get(command, {})}.items():
        if key not in allowed:
            continue
        if any(key in pair and other in merged for pair in EXCLUSIVE for other in pair if other != key):
            continue
        merged.setdefault(key, value)
    return merged


def echo_of(config: dict) -> dict:
    return {k: config[k] for k in sorted(config) if k not in NOT_ECHOED}


def platform_from(config: dict) -> PlatformConfig:
    freq = config.get("freq", 0.0)
    if "radius" in config:
        return PlatformConfig.from_frequency(config["radius"], config["windings"], config["index"], freq)
    platform = PlatformConfig.from_area(config["area"], config["windings"], config["index"])
    return platform.with_freq(freq)


def mu_from(config: dict) -> float:
    if "mu" in config:
        return config["mu"]
    return wavelength_to_mu(config["wavelength_nm"] * 1e-9)


def photon_from(config: dict, scenario: Scenario) -> GaussianSpec:
    mu = mu_from(config)
    if "sigma" in config:
        sigma = config["sigma"]
    else:
        wavelength = 2.0 * math.pi * kinematics.C / mu
        sigma = bandwidth_to_sigma(config["bandwidth_nm"] * 1e-9, wavelength)
    convention = config.get("convention", scenario.convention.value)
    try:
        convention = Convention(convention)
    except ValueError as exc:
        raise ValidationError(f"unknown convention {convention!r}") from exc
    return GaussianSpec(mu, sigma, convention)


def methods_from(config: dict) -> frozenset:
    try:
        return frozenset(Method(m.strip()) for m in config["methods"].split(",") if m.strip())
    except ValueError as exc:
        raise ValidationError(f"unknown method in {config['methods']!r}") from exc


def _enum(kind, value, what):
    try:
        return kind(value)
    except ValueError as exc:
        choices = ", ".join(m.value for m in kind)
        raise ValidationError(f"unknown {what} {value!r} (choose from {choices})") from exc


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def cmd_kinematics(config: dict) -> None:
    report = kinematics.kinematics_report(platform_from(config))
    sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")


def cmd_point(command: str, config: dict) -> None:
    scenario = Scenario(command)
    platform = platform_from(config)
    photon = photon_from(config, scenario)
    row = experiments.evaluate_point(
        scenario,
        platform,
        photon,
        config.get("delta_t", 0.0),
        methods_from(config),
        config["widths"],
        config["points"],
        param=platform.freq,
        strict=True,
    )
    if config["format"] == "csv":
        result = experiments.SweepResult(None, (row,))
        _emit(result.to_csv(), config.get("out"))
        return
    payload = {
        "scenario": scenario.value,
        "t_s": kinematics.sagnac_delay(platform.area, platform.freq),
        "value_closed": row.closed,
        "value_quadrature": row.quadrature,
    }
    if scenario is Scenario.QUANTUM_SAGNAC:
        payload["p_d_closed"] = None if row.closed is None else 1.0 - row.closed
        payload["p_d_quadrature"] = None if row.quadrature is None else 1.0 - row.quadrature
    else:
        value = row.quadrature if row.quadrature is not None else row.closed
        payload["classification"] = row.classification
        payload["witnesses_entanglement"] = classify(value).witnesses_entanglement
    payload["agrees"] = row.agrees
    payload["provenance"] = {"config": echo_of(config), "version": __version__}
    _emit(json.dumps(payload, indent=2) + "\n", config.get("out"))


def sweep_spec_from(config: dict) -> SweepSpec:
    for key in ("scenario", "swept", "lo", "hi"):
        if key not in config:
            raise ValidationError(f"sweep needs --{key}")
    scenario = _enum(Scenario, config["scenario"], "scenario")
    return SweepSpec(
        scenario,
        _enum(Swept, config["swept"], "swept parameter"),
        config["lo"],
        config["hi"],
        config["steps"],
        platform_from(config),
        photon_from(config, scenario),
        config["delta_t"],
        methods_from(config),
        config["widths"],
        config["points"],
    )


def cmd_sweep(config: dict) -> None:
    result = experiments.run_sweep(sweep_spec_from(config), config["workers"], echo=echo_of(config))
    for row in result.disagreements:
        log.warning("closed form and quadrature differ at %r: %r vs %r", row.param, row.closed, row.quadrature)
    text = result.to_csv() if config["format"] == "csv" else result.to_json()
    _emit(text, config.get("out"))


def cmd_fig3(config: dict) -> None:
    out_dir = config.get("out") or os.environ.get(OUTPUT_DIR_ENV, ".")
    for path in experiments.write_fig3(out_dir, config["steps"], config["f_max"], config["format"], config["workers"]):
        sys.stdout.write(f"{path}\n")


def cmd_phase(config: dict) -> None:
    platform = platform_from(config)
    direction = {"counter": Direction.COUNTER_ROTATING, "co": Direction.CO_ROTATING}.get(config["direction"])
    if direction is None:
        raise ValidationError(f"unknown direction {config['direction']!r} (choose counter or co)")
    if "profile" in config:
        profile = RotationProfile.from_csv(config["profile"])
    else:
        profile = RotationProfile.uniform(platform.omega)
    omega = mu_from(config)
    t_f = platform.propagation_time
    phase = dynamical_phase(profile, omega, direction, platform.radius, platform.index, t_f)
    payload = {
        "phase_rad": phase,
        "inertial_phase_rad": omega * t_f,
        "excess_phase_rad": phase - omega * t_f,
        "t_f_s": t_f,
        "direction": config["direction"],
    }
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = vars(parser.parse_args(argv))
        logging.basicConfig(level=logging.INFO if args.pop("verbose") else logging.WARNING,
                            format="%(levelname)s: %(message)s", stream=sys.stderr)
        command = args.pop("command")
        config = resolve(command, args)
        if "format" in config and config["format"] not in ("json", "csv"):
            raise ValidationError(f"unknown format {config['format']!r}")
        if command == "kinematics":
            cmd_kinematics(config)
        elif command == "sweep":
            cmd_sweep(config)
        elif command == "fig3":
            cmd_fig3(config)
        elif command == "phase":
            cmd_phase(config)
        else:
            cmd_point(command, config)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalGuardError as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0
