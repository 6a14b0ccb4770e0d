"""Command-line front end.

Exit codes: 0 success, 1 failed scientific check, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import io
import sys
from dataclasses import replace
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from . import kernels
from .checks import FAULTS, run_checks
from .config import ConfigError, RunConfig, load_config
from .dynamics import (
    Schedule,
    all_down_state,
    effective_error_frequency,
    evolve_scheduled,
    ground_target,
    offresonant_excitation,
    survival_experiment,
)
from .mfqubit import memory_transfer
from .model import SpinParams, perturbed_chain
from .spectral import splitting_scan

EXIT_OK, EXIT_CHECK, EXIT_CONFIG = 0, 1, 2

PROTECTION_TABLE = {
    # axis: (topological gap, ion internal transition)
    "X": (False, True),
    "Y": (True, True),
    "Z": (True, False),
}


def _version() -> str:
    try:
        return version("majorana-ions")
    except PackageNotFoundError:
        return "unknown"


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.16e}"


def write_csv(cfg: RunConfig, header: list[str], rows, out: str | None) -> None:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    for line in cfg.echo():
        buf.write(f"# config: {line}\n")
    buf.write(f"# seed: {cfg.seed}\n")
    buf.write(f"# version: majorana-ions {_version()} ({kernels.BACKEND} kernel)\n")
    if out:
        Path(out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _time_axis(cfg: RunConfig, t):
    if cfg.J_hz is None:
        return "t [1/J]", np.asarray(t)
    return "t [s]", np.asarray(t) / cfg.J_hz


def _schedule(cfg: RunConfig) -> Schedule:
    return Schedule(cfg.T_total, cfg.shape, (0.0, -cfg.h0 * cfg.J), (cfg.J, 0.0))


def _perturbed(cfg: RunConfig, N: int, include_nnn: bool) -> SpinParams:
    # couplings at unit scale; the schedule supplies J(t)
    return perturbed_chain(
        N, 1.0, cfg.delta_hz, cfg.ratio_error,
        cfg.nnn_fraction if include_nnn else None, cfg.random_sign, cfg.seed,
    )


def cmd_sweep(cfg: RunConfig) -> int:
    include = True if cfg.include_nnn is None else cfg.include_nnn
    runs = {
        "ideal": SpinParams.ideal(cfg.N, 1.0),
        "perturbed": _perturbed(cfg, cfg.N, include),
    }
    names = list(runs) if cfg.variant == "both" else [cfg.variant]
    psi = all_down_state(cfg.N)
    schedule = _schedule(cfg)
    trajs = [
        evolve_scheduled(runs[n], schedule, psi, dt=cfg.dt, target=ground_target(psi), samples=cfg.samples)
        for n in names
    ]
    tname, t = _time_axis(cfg, trajs[0].times)
    header = [tname]
    cols = [t]
    for name, tr in zip(names, trajs):
        suffix = f"_{name}" if len(names) > 1 else ""
        header += [f"one_minus_F{suffix}", f"parity{suffix}", f"norm{suffix}"]
        cols += [tr.infidelity, tr.parity, tr.norm]
    write_csv(cfg, header, zip(*cols), cfg.out)
    return EXIT_OK


def cmd_splitting(cfg: RunConfig) -> int:
    include = False if cfg.include_nnn is None else cfg.include_nnn
    scale = cfg.J

    def make(N):
        p = _perturbed(cfg, N, include)
        return replace(
            p,
            J_bonds=tuple(scale * b for b in p.J_bonds),
            J_nnn={k: scale * v for k, v in p.J_nnn.items()},
        )

    rows = splitting_scan(N_range=cfg.N_list, make=make)
    write_csv(
        cfg,
        ["N", "gamma [J]", "gap [J]", "reliable_flag", "oracle_gamma [J]"],
        [(r.N, r.gamma / scale, r.gap / scale, r.reliable, r.oracle_gamma / scale) for r in rows],
        cfg.out,
    )
    return EXIT_OK


def cmd_survival(cfg: RunConfig) -> int:
    kw = dict(N=cfg.N, delta_hz=cfg.delta_hz * cfg.J, t_max=cfg.t_max / cfg.J,
              samples=cfg.survival_samples, J=cfg.J, random_signs=cfg.random_sign, seed=cfg.seed)
    with_h = survival_experiment(with_topological=True, **kw)
    without = survival_experiment(with_topological=False, **kw)
    tname, t = _time_axis(cfg, with_h.times * cfg.J)
    write_csv(cfg, [tname, "F_with", "F_without"], zip(t, with_h.fidelity, without.fidelity), cfg.out)
    return EXIT_OK


def interface_coefficients(spec: str, K: int) -> np.ndarray:
    """``bell``/``ghz`` (equal weight on all-0 and all-1), ``product`` (all-0)
    or an explicit comma-separated real amplitude list of length 2^K."""
    c = np.zeros(2**K, dtype=complex)
    if spec in ("bell", "ghz"):
        c[0] = c[-1] = 1 / np.sqrt(2)
    elif spec == "product":
        c[0] = 1.0
    else:
        try:
            vals = [complex(x) for x in spec.split(",")]
        except ValueError:
            raise ConfigError(f"interface.input: cannot parse {spec!r}") from None
        if len(vals) != 2**K:
            raise ConfigError(f"interface.input needs {2**K} amplitudes")
        c = np.array(vals)
        if abs(np.linalg.norm(c) - 1) > 1e-10:
            raise ConfigError("interface.input amplitudes must be normalized")
    return c


def cmd_interface(cfg: RunConfig) -> int:
    c = interface_coefficients(cfg.input_state, cfg.K)
    noise = _perturbed(cfg, cfg.N, cfg.include_nnn is not False) if cfg.noisy_interface else None
    reg = memory_transfer(c, cfg.K, cfg.N, _schedule(cfg), noise, dt=cfg.dt)
    write_csv(cfg, ["K", "raw_fidelity", "phase_opt_fidelity"],
              [(cfg.K, reg.raw_fidelity, reg.phase_opt_fidelity)], cfg.out)
    return EXIT_OK


def estimate_report(cfg: RunConfig) -> str:
    p = offresonant_excitation(cfg.amplitude, cfg.omega0)
    rate = effective_error_frequency(cfg.delta_hz * cfg.J, cfg.J)
    ratio = rate / (cfg.delta_hz * cfg.J) if cfg.delta_hz else 0.0
    lines = [
        f"off-resonant X excitation probability: {p:.3e}  (amplitude {cfg.amplitude:g} Hz, omega0 {cfg.omega0:g} Hz)",
        f"effective Z-error frequency: {rate:.3e} J = {ratio:.3e} * delta_hz  (gap 2J, delta_hz {cfg.delta_hz:g} J)",
        "",
        "noise axis | topological gap | ion internal transition",
    ]
    for axis, (gap, ion) in PROTECTION_TABLE.items():
        lines.append(f"{axis:>10} | {'yes' if gap else '-':>15} | {'yes' if ion else '-':>23}")
    return "\n".join(lines) + "\n"


def cmd_estimate(cfg: RunConfig) -> int:
    text = estimate_report(cfg)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check(cfg: RunConfig, fault: str | None = None) -> int:
    results = run_checks(fault=fault, seed=cfg.seed)
    for name, failure in results.items():
        print(f"{'FAIL' if failure else 'PASS'} {name}" + (f": {failure}" if failure else ""))
    return EXIT_CHECK if any(results.values()) else EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "sweep": cmd_sweep,
    "splitting": cmd_splitting,
    "survival": cmd_survival,
    "interface": cmd_interface,
    "estimate": cmd_estimate,
}


def _bool_arg(text: str) -> bool:
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="majorana-ions", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--seed", type=int, help="RNG seed (unsigned 64-bit)")
        p.add_argument("--out", help="output path (stdout when omitted)")
        p.add_argument("--include-nnn", type=_bool_arg, metavar="BOOL")
        p.add_argument("--random-sign-noise", type=_bool_arg, metavar="BOOL")
        if name == "check":
            p.add_argument("--inject-fault", choices=sorted(FAULTS), help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            if not 0 <= args.seed < 2**64:
                raise ConfigError("seed must be an unsigned 64-bit integer")
            cfg.seed = args.seed
        if args.out is not None:
            cfg.out = args.out
        if args.include_nnn is not None:
            cfg.include_nnn = args.include_nnn
        if args.random_sign_noise is not None:
            cfg.random_sign = args.random_sign_noise
        cfg.experiment = args.command
        cfg.validate()
        if args.command == "check":
            return cmd_check(cfg, args.inject_fault)
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
