"""Command line entry point: ``ifpconflict {validate,analyze,resolve,sensitivity}``.

Exit codes: 0 success, 1 domain / validation / usage error, 2 I/O error,
3 resolution stopped at the iteration cap.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .errors import IFPSError, NoProgress, ParseError, ValidationError
from .ifps import ConflictSituation, bundled_path, load_situation, save_situation
from .report import (
    LEVELS,
    build_report,
    figure_files,
    render_csv,
    render_json,
    render_sensitivity,
    render_table,
    render_trace_table,
    report_to_dict,
    sensitivity_series,
    sigma_grid,
    trace_to_dict,
)
from .resolution import ResolutionTrace, SAParams, resolve
from .trisection import ThresholdPair

EXIT_OK, EXIT_DOMAIN, EXIT_IO, EXIT_NO_PROGRESS = 0, 1, 2, 3


class UsageError(IFPSError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: usage error: {message}\n")


def _id_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _threshold_pair(text: str) -> ThresholdPair:
    try:
        lower, upper = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LOWER,UPPER, got {text!r}") from None
    try:
        return ThresholdPair(lower, upper)
    except IFPSError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sigma(text: str) -> float:
    value = float(text)
    if not 0 < value < 0.5:
        raise argparse.ArgumentTypeError(f"sigma must lie in (0, 0.5), got {value}")
    return value


def _situation_path(raw: str) -> Path:
    """Bare names of bundled datasets resolve to the packaged copy when absent locally."""
    path = Path(raw)
    if not path.exists() and path.parent == Path(".") and bundled_path(path.name).exists():
        return bundled_path(path.name)
    return path


def _load(raw: str) -> ConflictSituation:
    return load_situation(_situation_path(raw))


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    situation = _load(args.path)
    print(f"ok: {situation.n} agents, {situation.m} issues")
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.thresholds is None and args.sigma is None:
        raise UsageError("analyze needs --sigma or --thresholds")
    situation = _load(args.path)
    report = build_report(situation, sigma=args.sigma, thresholds=args.thresholds,
                          issues=args.issues, agents=args.agents, precision=args.precision)
    levels = LEVELS if args.level == "all" else (args.level,)
    if args.format == "json":
        text = render_json(report_to_dict(report, levels))
    elif args.format == "csv":
        text = render_csv(report, levels)
    else:
        text = render_table(report, levels)
    _emit(text, args.output)
    return EXIT_OK


def _write_resolution(trace: ResolutionTrace, stem: str, out_dir: Path,
                      figure_thresholds: ThresholdPair | None) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    target = out_dir / f"{stem}.resolved.json"
    save_situation(trace.final, target)
    written.append(target)
    target = out_dir / f"{stem}.trace.json"
    target.write_text(render_json(trace_to_dict(trace)), encoding="utf-8")
    written.append(target)
    for suffix, text in figure_files(trace, figure_thresholds).items():
        target = out_dir / f"{stem}.{suffix}"
        target.write_text(text, encoding="utf-8")
        written.append(target)
    return written


def cmd_resolve(args) -> int:
    path = _situation_path(args.path)
    situation = load_situation(path)
    params = SAParams(
        initial_temperature=args.initial_temperature,
        cooling_rate=args.cooling_rate,
        steps_per_run=args.steps,
        value_step=args.value_step,
        swap_probability=args.swap_probability,
    )
    stem = path.name[:-5] if path.name.endswith(".json") else path.name
    out_dir = Path(args.out_dir)
    status = EXIT_OK
    try:
        trace = resolve(situation, args.kappa, args.k, args.S, args.sigma, params,
                        seed=args.seed, max_iterations=args.max_iterations)
    except NoProgress as exc:
        trace = exc.trace
        print(f"error: {exc}", file=sys.stderr)
        status = EXIT_NO_PROGRESS
    sys.stdout.write(render_trace_table(trace))
    for p in _write_resolution(trace, stem, out_dir, args.figure_thresholds):
        print(f"wrote {p}")
    return status


def cmd_sensitivity(args) -> int:
    situation = _load(args.path)
    rows = sensitivity_series(situation, sigma_grid(args.sigma_min, args.sigma_max, args.steps),
                              issues=args.issues)
    _emit(render_sensitivity(rows), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ifpconflict",
                     description="Three-way conflict analysis over intuitionistic fuzzy preferences.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a situation file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="conflict measures, thresholds and trisections")
    p.add_argument("path")
    p.add_argument("--sigma", type=_sigma, help="derive thresholds with this sigma in (0, 0.5)")
    p.add_argument("--thresholds", type=_threshold_pair, metavar="LOWER,UPPER",
                   help="explicit thresholds for every trisection (overrides --sigma)")
    p.add_argument("--issues", type=_id_list, metavar="I1,I2,...", help="issue bundle J (default: all)")
    p.add_argument("--agents", type=_id_list, metavar="A1,A2,...",
                   help="agent group B for issue measures (default: all)")
    p.add_argument("--level", choices=("all",) + LEVELS, default="all")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--precision", type=int, default=None,
                   help="round measures to this many decimals before classifying")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("resolve", help="iteratively adjust preferences until CM(A,I) <= kappa")
    p.add_argument("path")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--k", type=int, required=True, help="issue pairs adjusted per iteration")
    p.add_argument("--S", type=int, default=10, help="annealing runs per iteration")
    p.add_argument("--sigma", type=_sigma, default=0.44)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iterations", type=int, default=50)
    defaults = SAParams()
    p.add_argument("--initial-temperature", type=float, default=defaults.initial_temperature)
    p.add_argument("--cooling-rate", type=float, default=defaults.cooling_rate)
    p.add_argument("--steps", type=int, default=defaults.steps_per_run, help="annealing steps per run")
    p.add_argument("--value-step", type=float, default=defaults.value_step)
    p.add_argument("--swap-probability", type=float, default=defaults.swap_probability)
    p.add_argument("--out-dir", default=".", help="directory for the resolved situation, trace and CSVs")
    p.add_argument("--figure-thresholds", type=_threshold_pair, metavar="LOWER,UPPER",
                   help="thresholds for the cardinality CSVs (default: last iteration's)")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("sensitivity", help="thresholds as a function of sigma (CSV)")
    p.add_argument("path")
    p.add_argument("--sigma-min", type=float, default=0.05)
    p.add_argument("--sigma-max", type=float, default=0.45)
    p.add_argument("--steps", type=int, default=41)
    p.add_argument("--issues", type=_id_list, metavar="I1,I2,...")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_sensitivity)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError) as exc:
        print(f"invalid situation: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except IFPSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
