"""Command line entry point.

    canonical-packets run --config cfg.json --out results/
    canonical-packets sweep --config cfg.json --axis truncation
    canonical-packets selftest

Exit codes: 0 success, 2 configuration error, 3 runtime/convergence error.
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from .errors import ConfigError, WavepacketError
from .experiment import SWEEP_AXES, ExperimentConfig, run, sweep, write_outputs
from .trials import CanonicalPoint, Family, canonicity_check

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 2, 3

log = logging.getLogger("canonical_packets")


def _load_config(path: str | None) -> ExperimentConfig:
    return ExperimentConfig.from_json(path) if path else ExperimentConfig()


def _cmd_run(args) -> int:
    config = _load_config(args.config)
    out = args.out or config.out_dir
    if out is None:
        raise ConfigError("no output directory: pass --out or set out_dir in the config")
    result = run(config, jobs=args.jobs)
    csv_path, json_path = write_outputs(result, out)
    for fam, w in result.W_bar.items():
        print(f"W_bar[{fam}] = {w:.4f}")
    print(f"wrote {csv_path} and {json_path}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = _load_config(args.config)
    print(sweep(config, args.axis, jobs=args.jobs).table())
    return EXIT_OK


def selftest(n_points: int = 5, seed: int = 7) -> bool:
    """Canonicity relations at random points plus the harmonic-oscillator oracle."""

    rng = np.random.default_rng(seed)
    ok = True
    for fam in Family:
        worst = 0.0
        for _ in range(n_points):
            J = rng.uniform(0.05, 0.4, fam.dof)
            if fam.n_superposed:
                J[2:] *= 0.5
            pt = CanonicalPoint(J, rng.uniform(-np.pi, np.pi, fam.dof))
            worst = max(worst, canonicity_check(fam, pt).max_residual)
        passed = worst < 1e-6
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'} canonicity {fam.value}: max residual {worst:.2e}")

    res = run(ExperimentConfig(a=1.0, lam=0.0, families=("G",), t_end=20.0))
    w_err = float(np.max(np.abs(res.series.W["G"] - 1.0)))
    x_err = float(np.max(np.abs(res.series.x_mean["G"] - np.cos(res.series.times))))
    passed = w_err < 1e-6 and x_err < 1e-6
    ok &= passed
    print(f"{'PASS' if passed else 'FAIL'} harmonic oracle: max|W-1| {w_err:.2e}, max|<x>-cos t| {x_err:.2e}")
    return ok


def _cmd_selftest(args) -> int:
    return EXIT_OK if selftest() else EXIT_RUNTIME


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="canonical-packets", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run the benchmark and write CSV/JSON results")
    p.add_argument("--config", help="JSON config (defaults reproduce a = -1)")
    p.add_argument("--out", help="output directory")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the families")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="convergence check along one axis")
    p.add_argument("--config")
    p.add_argument("--axis", required=True, choices=SWEEP_AXES)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("selftest", help="canonicity and harmonic-oracle checks")
    p.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except WavepacketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
