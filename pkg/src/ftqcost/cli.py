"""Command-line front end.

Subcommands:
    estimate <config>   one scheme, full report (with sensitivity band)
    compare  <config>   several schemes side by side with ratios
    sweep    <config>   cartesian grid over comma-separated config values
    table1   --logical Q --gates G [--p P]   minimal-footprint quick estimate

Exit codes: 0 success, 2 validation error, 3 infeasible budget or starved
magic-state supply.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import report as reporting
from .config import (
    OUTPUT_FORMATS,
    RunConfig,
    build_config,
    expand_sweep,
    read_sections,
)
from .errors import BudgetInfeasibleError, ConfigError, MagicStarvedError
from .estimator import simple_estimate
from .fermi_hubbard import SCHEMES
from .qec import PhysicalAssumptions

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftqcost",
        description="Fault-tolerant quantum computing resource estimator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("config", help="path to an INI run configuration")
        p.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="SECTION.KEY=VALUE",
            help="override a config field (repeatable)",
        )
        p.add_argument("--format", choices=OUTPUT_FORMATS, default=None)
        p.add_argument("--output", default=None, help="write to file instead of stdout")

    est = sub.add_parser("estimate", help="estimate one scheme from a config")
    add_common(est)
    est.add_argument(
        "--no-sensitivity", action="store_true", help="skip the +/-5%% band"
    )

    cmp_ = sub.add_parser("compare", help="compare several schemes")
    add_common(cmp_)
    cmp_.add_argument(
        "--schemes",
        default=",".join(SCHEMES),
        help="comma-separated scheme list (default: all)",
    )

    swp = sub.add_parser("sweep", help="grid sweep over ranged config fields")
    add_common(swp)

    t1 = sub.add_parser("table1", help="minimal-footprint quick estimate")
    t1.add_argument("--logical", type=int, required=True, help="logical qubit count Q")
    t1.add_argument("--gates", type=float, required=True, help="T/Toffoli gate count G")
    t1.add_argument("--p", type=float, default=1e-3, help="physical error rate")
    t1.add_argument("--e", type=float, default=0.05, help="failure budget E")
    t1.add_argument("--t-se", type=float, default=1e-6, help="SE round time, seconds")
    t1.add_argument("--format", choices=("table", "json"), default="table")
    t1.add_argument("--output", default=None)
    return parser


def _apply_overrides(sections: dict, overrides: list[str]) -> dict:
    out = {s: dict(f) for s, f in sections.items()}
    problems = []
    for item in overrides:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            problems.append(f"--set {item!r}: expected SECTION.KEY=VALUE")
            continue
        path, value = item.split("=", 1)
        section, key = path.split(".", 1)
        out.setdefault(section, {})[key.strip().lower()] = value.strip()
    if problems:
        raise ConfigError(problems)
    return out


def _load(args: argparse.Namespace) -> tuple[RunConfig, dict]:
    sections = _apply_overrides(read_sections(args.config), args.overrides)
    return build_config(sections), sections


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(report: dict, fmt: str, config: RunConfig) -> str:
    if fmt == "json":
        return reporting.render_json(report)
    if fmt == "csv":
        rows = [reporting.csv_row(config, est) for est in report["estimates"]]
        return reporting.render_csv(rows)
    return reporting.render_table(report)


def _cmd_estimate(args: argparse.Namespace) -> int:
    config, _ = _load(args)
    report = reporting.build_report(config, with_sensitivity=not args.no_sensitivity)
    fmt = args.format or config.output_format
    _emit(_render(report, fmt, config), args.output or config.output_path)
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    config, _ = _load(args)
    schemes = [s.strip() for s in args.schemes.split(",") if s.strip()]
    unknown = sorted(set(schemes) - set(SCHEMES))
    if unknown:
        raise ConfigError([f"--schemes: unknown scheme {s!r}" for s in unknown])
    report = reporting.build_comparison(config, schemes)
    fmt = args.format or config.output_format
    _emit(_render(report, fmt, config), args.output or config.output_path)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    base = _apply_overrides(read_sections(args.config), args.overrides)
    rows = []
    configs = []
    for point in expand_sweep(base):
        config = build_config(point)
        report = reporting.build_report(config, with_sensitivity=False)
        rows.append(reporting.csv_row(config, report["estimates"][0]))
        configs.append((config, report))
    fmt = args.format or "csv"
    if fmt == "csv":
        text = reporting.render_csv(rows)
    elif fmt == "json":
        text = json.dumps(
            [report for _, report in configs], sort_keys=True, indent=2
        ) + "\n"
    else:
        text = "".join(
            reporting.render_table(report) for _, report in configs
        )
    _emit(text, args.output)
    return EXIT_OK


def _cmd_table1(args: argparse.Namespace) -> int:
    try:
        assume = PhysicalAssumptions(p=args.p, t_se=args.t_se)
        est = simple_estimate(args.logical, args.gates, assume, e_qec=args.e)
    except ValueError as exc:
        raise ConfigError([str(exc)]) from exc
    payload = reporting.estimate_payload(est)
    if args.format == "json":
        text = reporting.render_json(
            {"schema_version": reporting.SCHEMA_VERSION, "estimates": [payload]}
        )
    else:
        text = (
            f"logical qubits: {args.logical}\n"
            f"gates: {args.gates:g}\n"
            f"code distance: {est.d}\n"
            f"physical qubits: {est.physical_qubits_total:.3g}\n"
            f"wall time: {est.wall_time_seconds:.3g} s\n"
        )
    _emit(text, args.output)
    return EXIT_OK


_COMMANDS = {
    "estimate": _cmd_estimate,
    "compare": _cmd_compare,
    "sweep": _cmd_sweep,
    "table1": _cmd_table1,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_VALIDATION
    except (BudgetInfeasibleError, MagicStarvedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
