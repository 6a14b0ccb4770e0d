"""Flat ``key = value [unit]`` run configuration.

Physical quantities must state their unit: ``J`` for energies, ``1/J``
for times, ``Hz`` for laboratory frequencies and ``1/s`` for the optional
time-axis anchor ``run.J_hz``. Lines starting with ``#`` are comments.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .dynamics import DEFAULT_H0, DEFAULT_T_TOTAL
from .pauli_ops import MAX_DENSE_SITES


class ConfigError(ValueError):
    pass


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x)


# attribute -> (key, parser, unit)
_SCHEMA = {
    "experiment": ("run.experiment", str, None),
    "seed": ("run.seed", int, None),
    "out": ("run.out", str, None),
    "samples": ("run.samples", int, None),
    "J_hz": ("run.J_hz", float, "1/s"),
    "N": ("model.N", int, None),
    "N_list": ("model.N_list", _int_list, None),
    "J": ("model.J", float, "J"),
    "ratio_error": ("model.ratio_error", float, None),
    "nnn_fraction": ("model.nnn_fraction", float, None),
    "include_nnn": ("model.include_nnn", _bool, None),
    "delta_hz": ("noise.delta_hz", float, "J"),
    "random_sign": ("noise.random_sign", _bool, None),
    "T_total": ("schedule.T_total", float, "1/J"),
    "shape": ("schedule.shape", str, None),
    "h0": ("schedule.h0", float, "J"),
    "dt": ("schedule.dt", float, "1/J"),
    "variant": ("schedule.variant", str, None),
    "t_max": ("survival.t_max", float, "1/J"),
    "survival_samples": ("survival.samples", int, None),
    "K": ("interface.K", int, None),
    "input_state": ("interface.input", str, None),
    "noisy_interface": ("interface.noisy", _bool, None),
    "amplitude": ("estimate.amplitude", float, "Hz"),
    "omega0": ("estimate.omega0", float, "Hz"),
}
_BY_KEY = {key: (attr, parse, unit) for attr, (key, parse, unit) in _SCHEMA.items()}


@dataclass
class RunConfig:
    experiment: str = ""
    seed: int = 0
    out: str = ""
    samples: int = 201
    J_hz: float | None = None
    N: int = 3
    N_list: tuple[int, ...] = (2, 3, 4, 5, 6, 7, 8)
    J: float = 1.0
    ratio_error: float = 0.01
    nnn_fraction: float = 0.125
    include_nnn: bool | None = None
    delta_hz: float = 1e-3
    random_sign: bool = False
    T_total: float = DEFAULT_T_TOTAL
    shape: str = "linear"
    h0: float = DEFAULT_H0
    dt: float | None = None
    variant: str = "both"
    t_max: float = 2000.0
    survival_samples: int = 2001
    K: int = 2
    input_state: str = "bell"
    noisy_interface: bool = False
    amplitude: float = 6.0
    omega0: float = 4.11e14

    def validate(self) -> "RunConfig":
        for n in (self.N, *self.N_list):
            if not 2 <= n <= MAX_DENSE_SITES:
                raise ConfigError(f"chain length {n} outside the dense budget 2..{MAX_DENSE_SITES}")
        if self.K < 1 or self.K * self.N > MAX_DENSE_SITES:
            raise ConfigError(f"K * N = {self.K * self.N} exceeds {MAX_DENSE_SITES} sites")
        if self.shape not in ("linear", "smoothstep"):
            raise ConfigError(f"unknown schedule shape {self.shape!r}")
        if self.variant not in ("both", "ideal", "perturbed"):
            raise ConfigError(f"unknown sweep variant {self.variant!r}")
        if self.T_total < 0 or self.t_max < 0 or self.J <= 0:
            raise ConfigError("durations must be non-negative and J positive")
        if self.samples < 2 or self.survival_samples < 2:
            raise ConfigError("need at least two samples")
        if self.J_hz is not None and self.J_hz <= 0:
            raise ConfigError("run.J_hz must be positive")
        return self

    def echo(self) -> list[str]:
        """``key = value unit`` lines that parse back to this configuration.

        The output path is left out so a report does not depend on where it was written.
        """
        lines = []
        for attr, (key, _, unit) in _SCHEMA.items():
            value = getattr(self, attr)
            if value is None or attr == "out":
                continue
            if isinstance(value, bool):
                text = "true" if value else "false"
            elif isinstance(value, tuple):
                text = ",".join(str(v) for v in value)
            elif isinstance(value, float):
                text = repr(value)
            else:
                text = str(value)
            lines.append(f"{key} = {text}" + (f" {unit}" if unit else ""))
        return lines


def _parse_value(key: str, raw: str):
    attr, parse, unit = _BY_KEY[key]
    raw = raw.strip()
    if unit is not None:
        value, _, given = raw.rpartition(" ")
        if not value:
            raise ConfigError(f"{key}: missing unit, expected {unit!r}")
        if given != unit:
            raise ConfigError(f"{key}: unit {given!r} does not match expected {unit!r}")
        raw = value.strip()
    try:
        return attr, parse(raw)
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from None


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    cfg = base or RunConfig()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, raw = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        if key not in _BY_KEY:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        attr, value = _parse_value(key, raw)
        setattr(cfg, attr, value)
    return cfg


def load_config(path: str | Path | None) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    return parse_config(text)


def config_from_echo(lines: list[str]) -> RunConfig:
    """Rebuild a RunConfig from ``# config:`` metadata lines of a CSV report."""
    prefix = "# config: "
    body = [ln[len(prefix):] for ln in lines if ln.startswith(prefix)]
    return parse_config("\n".join(body))
