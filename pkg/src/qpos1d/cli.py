"""Batch command line: `qpos1d run <config>` and `qpos1d list`.

Exit codes: 0 success, 2 configuration error, 3 numerical guard trip.
The QPOS1D_OUT environment variable overrides the configured output
directory.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from .config import SCENARIOS, _COMMON_KEYS, _SCENARIO_KEYS, parse_config_file
from .errors import ConfigError, NumericalGuardError
from .scenarios import RUNNERS, SCENARIO_HELP, write_manifest

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_GUARD = 3


def cmd_run(config_path: str) -> int:
    try:
        cfg = parse_config_file(config_path)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out_dir = Path(os.environ.get("QPOS1D_OUT", cfg[("run", "out_dir")]))
    out_dir.mkdir(parents=True, exist_ok=True)

    start = time.perf_counter()
    try:
        metrics = RUNNERS[cfg.scenario](cfg, out_dir)
    except NumericalGuardError as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    wall = time.perf_counter() - start

    write_manifest(out_dir / "manifest.txt", cfg, metrics, wall)
    print(f"{cfg.scenario}: wrote {out_dir}/manifest.txt "
          f"({len(metrics)} metrics, {wall:.2f} s)")
    return EXIT_OK


def cmd_list() -> int:
    for name in SCENARIOS:
        print(f"{name:8s} {SCENARIO_HELP[name]}")
        schema = dict(_COMMON_KEYS)
        schema.update(_SCENARIO_KEYS[name])
        for (section, key), (_, default) in sorted(schema.items()):
            if (section, key) == ("run", "scenario"):
                continue
            if isinstance(default, list):
                default = ",".join(str(v) for v in default)
            print(f"         [{section}] {key} = {default}")
        print()
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qpos1d",
        description="Spectral simulator for 1D scalar-boson spatial densities "
                    "under the Newton-Wigner and field-operator yardsticks.")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run a scenario from a config file")
    p_run.add_argument("config", help="path to a key = value config file")
    sub.add_parser("list", help="list scenarios and their default parameters")

    args = parser.parse_args(argv)
    if args.command == "run":
        return cmd_run(args.config)
    return cmd_list()


if __name__ == "__main__":
    sys.exit(main())
