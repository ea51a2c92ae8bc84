"""Command-line entry point: ``parity-radar <subcommand> [options]``."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

from .config import ConfigError, load_config
from .io import OutputError
from .scans import run_angle_scan, run_fringe_scan, run_resolution_sweep, run_track_files

log = logging.getLogger("parity_radar")


def _with_seed(scenario, seed):
    return scenario if seed is None else dataclasses.replace(scenario, seed=seed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parity-radar",
                                     description="Coherent-state parity radar simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("fringe-scan", "parity and classical fringes versus working phase"),
        ("angle-scan", "dark-port parity and angle estimates versus arrival angle"),
        ("resolution-sweep", "parity FWHM versus return photon number"),
        ("track", "closed-loop tracking of a moving target"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--out", default=".", help="output directory (default: .)")
        p.add_argument("--seed", type=int, help="override the configured master seed")
        p.add_argument("--noiseless", action="store_true", help="use expectation values")
        p.add_argument("--svg", action="store_true", help="also render an SVG figure")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    try:
        scenario, scan = load_config(args.config)
        scenario = _with_seed(scenario, args.seed)
        if args.seed is not None and args.seed < 0:
            raise ConfigError("seed must be non-negative")
        if args.command == "track":
            result = run_track_files(scenario, args.out, args.noiseless, args.svg)
        else:
            runner = {"fringe-scan": run_fringe_scan, "angle-scan": run_angle_scan,
                      "resolution-sweep": run_resolution_sweep}[args.command]
            result = runner(scenario, scan, args.out, args.noiseless, args.svg)
    except (ConfigError, ValueError) as exc:
        log.error("error: %s", exc)
        return 2
    except OutputError as exc:
        log.error("error: %s", exc)
        return 1
    for path in result["files"]:
        log.info("wrote %s", path)
    for key, value in result["summary"].items():
        log.info("%s: %s", key, value)
    return 0


if __name__ == "__main__":
    sys.exit(main())
