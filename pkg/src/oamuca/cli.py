"""Command line entry point: ``oamuca {solve,sweep,check}``.

Exit codes: 0 success, 1 invalid configuration, 2 oracle/invariant failure, 3 I/O error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path

from . import harness
from .harness import ConfigError, SweepError

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ORACLE = 2
EXIT_IO = 3

_SOLVERS = {"alg1": "algorithm1", "enum": "enumeration"}


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _add_common(p):
    p.add_argument("--config", help="JSON experiment configuration")
    p.add_argument("--preset", choices=harness.PRESET_NAMES, help="figure preset")
    p.add_argument("--out", help="output path")
    p.add_argument("--solver", choices=sorted(_SOLVERS), help="threshold search (default enum)")
    p.add_argument("--refine", action="store_true", default=None, help="alternate radius and selection")
    p.add_argument("--seed", type=int)
    p.add_argument("--n-elements", type=int, dest="n_elements")
    p.add_argument("--distance", type=float)
    p.add_argument("--snr-db", type=float, dest="snr_db")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oamuca", description="Optimal receive-UCA design for OAM backhaul links.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="optimise one configuration and write a JSON report")
    _add_common(solve)

    sweep = sub.add_parser("sweep", help="optimise across a parameter sweep and write CSV")
    _add_common(sweep)
    sweep.add_argument("--sweep", choices=harness.SWEEP_VARIABLES, dest="sweep_variable")
    sweep.add_argument("--values", type=_float_list, help="comma-separated sweep values")

    check = sub.add_parser("check", help="run the oracle cross-check suites")
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--trials", type=int, default=50)
    check.add_argument("--out", help="optional JSON report path")
    check.add_argument("--corrupt-gain", action="store_true", help=argparse.SUPPRESS)
    return parser


def _base_config(args, **preset_kw):
    if args.config and args.preset:
        raise ConfigError("--config and --preset are mutually exclusive")
    if args.config:
        cfg = harness.load_config(args.config)
    elif args.preset:
        cfg = harness.preset(args.preset, **preset_kw)
    else:
        cfg = harness.ExperimentConfig()
    over = {}
    if args.solver:
        over["solver"] = _SOLVERS[args.solver]
    if args.refine:
        over["refine"] = True
    if args.seed is not None:
        over["seed"] = args.seed
    if args.n_elements is not None:
        over["n_elements"] = args.n_elements
    if args.distance is not None:
        over["d"] = args.distance
    if args.snr_db is not None:
        over["snr_db"] = args.snr_db
    return dataclasses.replace(cfg, **over) if over else cfg


def _cmd_solve(args):
    cfg = _base_config(args)
    out = args.out or cfg.output_path
    sol, report = harness.run_single(cfg, out)
    s = report["solution"]
    print(
        f"r_r={sol.r_r_opt:.6g} m  case={sol.kkt_case}  modes={s['selected_orders']}  "
        f"capacity={sol.capacity_bps:.6g} bit/s  baseline={report['baseline_capacity_bps']:.6g} bit/s"
    )
    if out:
        print(f"report written to {out}")
    return EXIT_OK


def _sweep_targets(args):
    if args.preset and args.n_elements is None and not args.config:
        counts = harness.PRESET_ELEMENT_COUNTS
    else:
        counts = (None,)
    cfgs = []
    for n in counts:
        cfg = _base_config(args, n_elements=n) if n is not None else _base_config(args)
        if args.sweep_variable or args.values:
            var = args.sweep_variable or cfg.sweep_variable
            vals = args.values if args.values is not None else (cfg.sweep_values if var == cfg.sweep_variable else ())
            cfg = dataclasses.replace(cfg, sweep_variable=var, sweep_values=tuple(vals))
        if cfg.sweep_variable is None:
            raise ConfigError("sweep: no sweep given (use --sweep/--values, a preset or a config with 'sweep')")
        cfgs.append((n, cfg))
    out = Path(args.out or cfgs[0][1].output_path or f"{args.preset or 'sweep'}.csv")
    if len(cfgs) == 1:
        return [(cfgs[0][1], out)]
    return [(cfg, out.with_name(f"{out.stem}_N{n}{out.suffix or '.csv'}")) for n, cfg in cfgs]


def _cmd_sweep(args):
    for cfg, path in _sweep_targets(args):
        rows = harness.run_sweep(cfg, path)
        meta = {"config": cfg.to_dict(), "csv": path.name, "rows": len(rows)}
        harness.write_text(path.with_suffix(".meta.json"), json.dumps(meta, indent=2, sort_keys=True) + "\n")
        print(f"{path}: {len(rows)} rows (N={cfg.n_elements}, {cfg.sweep_variable})")
    return EXIT_OK


def _cmd_check(args):
    report = harness.run_crosschecks(args.seed, args.trials, corrupt_gain=args.corrupt_gain)
    for line in report.lines():
        print(line)
    if args.out:
        data = {"seed": report.seed, "trials": report.trials, "suites": [dataclasses.asdict(s) for s in report.suites]}
        harness.write_text(args.out, json.dumps(data, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if report.passed else EXIT_ORACLE


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    handler = {"solve": _cmd_solve, "sweep": _cmd_sweep, "check": _cmd_check}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SweepError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
