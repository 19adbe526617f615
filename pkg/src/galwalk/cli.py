"""Command-line interface.

Verbs:
  scenarios   list the built-in scenarios
  run         convergence experiment (one CSV/JSON row per k and coset)
  finfield    finite-field census densities
  oracle      exact word enumeration for the counterexample scenario
  catalog     predicted-group cycle-type distributions

Data goes to the --out file; diagnostics go to stderr.  A flat key=value
JSON config file may replace flags; explicit flags win.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .experiment import (
    ExperimentConfig,
    catalog_rows,
    run_convergence,
    run_finite_field,
    run_oracle,
)
from .finfield import GroupTooLargeError
from .output import emit
from .scenarios import builtin_scenarios

_CONFIG_KEYS = {
    "scenario": str,
    "k": str,
    "samples": int,
    "primes_min": int,
    "primes_max": int,
    "budget": int,
    "seed": int,
    "tv_max": str,
    "coverage_min": str,
    "bound": int,
    "out": str,
    "format": str,
}


def _add_common(sub, finfield_defaults: bool = False):
    sub.add_argument("--scenario", help="scenario name (see `scenarios`)")
    sub.add_argument("--k", help="comma-separated walk lengths", default=None)
    sub.add_argument("--samples", type=int, default=None)
    sub.add_argument("--primes-min", type=int, default=None, dest="primes_min")
    sub.add_argument("--primes-max", type=int, default=None, dest="primes_max")
    sub.add_argument("--budget", type=int, default=None)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--tv-max", default=None, dest="tv_max")
    sub.add_argument("--coverage-min", default=None, dest="coverage_min")
    sub.add_argument("--bound", type=int, default=None)
    sub.add_argument("--out", default=None, help="output file path")
    sub.add_argument("--format", default=None, choices=("csv", "json"))
    sub.add_argument("--config", default=None, help="flat JSON config file")


def _merged_settings(args) -> dict:
    settings: dict = {}
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValueError("config file must hold a flat JSON object")
        for key, value in raw.items():
            if key not in _CONFIG_KEYS:
                raise ValueError(f"unknown config key {key!r}")
            settings[key] = value
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            settings[key] = flag
    return settings


def _build_config(settings: dict, verb: str) -> ExperimentConfig:
    if "scenario" not in settings:
        raise ValueError("--scenario is required")
    if verb == "finfield":
        prime_min = int(settings.get("primes_min", 5))
        prime_max = int(settings.get("primes_max", 17))
    else:
        prime_min = int(settings.get("primes_min", 1_000))
        prime_max = int(settings.get("primes_max", 100_000))
    if verb == "oracle":
        default_k = "1,2,3,4,5,6,7,8,9,10"
    else:
        default_k = "10,20,30"
    k_values = tuple(
        int(x) for x in str(settings.get("k", default_k)).split(",") if x != ""
    )
    return ExperimentConfig(
        scenario=str(settings["scenario"]),
        k_values=k_values,
        samples=int(settings.get("samples", 100)),
        prime_min=prime_min,
        prime_max=prime_max,
        budget=int(settings.get("budget", 300)),
        tv_max=Fraction(str(settings.get("tv_max", "1/10"))),
        coverage_min=Fraction(str(settings.get("coverage_min", "1"))),
        seed=int(settings.get("seed", 1)),
        bound=int(settings.get("bound", 2_000_000)),
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="galwalk", description=__doc__)
    subs = parser.add_subparsers(dest="verb", required=True)
    subs.add_parser("scenarios", help="list built-in scenarios")
    for verb in ("run", "finfield", "oracle", "catalog"):
        sub = subs.add_parser(verb)
        if verb != "catalog":
            _add_common(sub)
        else:
            sub.add_argument("--out", default=None)
            sub.add_argument("--format", default=None, choices=("csv", "json"))

    args = parser.parse_args(argv)

    if args.verb == "scenarios":
        for name, scenario in builtin_scenarios().items():
            cosets = ", ".join(
                f"{c.label}:{c.name}"
                + (f" -> {c.predicted.name}" if c.predicted else " (no prediction)")
                for c in scenario.cosets
            )
            print(f"{name}  dim={scenario.dimension}  cosets[{cosets}]")
            print(f"    {scenario.description}")
        return 0

    try:
        if args.verb == "catalog":
            rows, fields, metadata = catalog_rows()
        else:
            settings = _merged_settings(args)
            config = _build_config(settings, args.verb)
            if config.scenario not in builtin_scenarios():
                raise ValueError(f"unknown scenario {config.scenario!r}")
            if args.verb == "run":
                rows, fields, metadata = run_convergence(config)
            elif args.verb == "finfield":
                rows, fields, metadata = run_finite_field(config)
            else:
                rows, fields, metadata = run_oracle(config)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GroupTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    out = getattr(args, "out", None)
    fmt = getattr(args, "format", None) or "csv"
    if out is None:
        print("error: --out is required (data goes to files)", file=sys.stderr)
        return 2
    try:
        emit(rows, fields, metadata, out, fmt)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(rows)} rows to {out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
