"""Command line front end: run, sweep, verify.

Exit codes: 0 success, 1 run/verification failure, 2 configuration error.
Progress goes to stderr; machine-readable artifacts only to output_dir.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import ConfigError, DivergenceError
from .harness import (
    SWEEP_AXES,
    apply_overrides,
    floor_estimate,
    parse_config,
    run,
    sweep,
    verify,
)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load_raw(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}")
    with open(p, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {p} is not valid JSON: {exc}") from exc


def _config_from_args(args) -> "RunConfig":
    if not args.config:
        raise ConfigError("--config PATH is required for this subcommand")
    raw = _load_raw(args.config)
    raw = apply_overrides(raw, args.set or [])
    return parse_config(raw)


def _parse_values(axis: str, text: str) -> list:
    items = [s for s in text.split(",") if s]
    if not items:
        raise ConfigError("--values must list at least one value")
    if axis == "algo":
        return items
    if axis in ("M", "tau", "K"):
        return [int(s) for s in items]
    return [float(s) for s in items]


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="fedvarp-sim",
        description="Deterministic federated-optimization simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("run", "sweep"):
        p = sub.add_parser(name)
        p.add_argument("--config", help="path to a JSON run configuration")
        p.add_argument(
            "--set",
            action="append",
            metavar="KEY=VALUE",
            help="override a config key by dotted path, e.g. hyper.M=5",
        )
    sweep_p = sub.choices["sweep"]
    sweep_p.add_argument("--axis", required=True, choices=SWEEP_AXES)
    sweep_p.add_argument("--values", required=True, help="comma-separated axis values")
    sub.add_parser("verify")

    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            checks = verify()
            failed = [c for c in checks if not c.passed]
            for c in checks:
                _say(f"[{'PASS' if c.passed else 'FAIL'}] {c.name} ({c.detail})")
            _say(f"verify: {len(checks) - len(failed)}/{len(checks)} checks passed")
            return 1 if failed else 0

        if args.command == "run":
            cfg = _config_from_args(args)
            _say(f"run: algo={cfg.algo.name} N={cfg.federation.N} T={cfg.hyper.T} -> {cfg.output_dir}")
            result = run(cfg)
            _say(
                f"run: done, {len(result.records)} metric rows, "
                f"floor {floor_estimate(result.records):.6g}"
            )
            return 0

        cfg = _config_from_args(args)
        values = _parse_values(args.axis, args.values)
        _say(f"sweep: axis={args.axis} over {values} -> {cfg.output_dir}")
        result = sweep(cfg, args.axis, values)
        _say(f"sweep: done, summary at {result.summary_path}")
        return 0
    except ConfigError as exc:
        _say(f"configuration error: {exc}")
        return 2
    except DivergenceError as exc:
        _say(f"run aborted: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
