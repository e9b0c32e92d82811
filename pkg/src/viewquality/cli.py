"""Command-line interface.

Exit codes: 0 on success, 1 when the input fails validation, 2 on internal
errors.  All report output is deterministic: the same input file produces the
same bytes on stdout, independent of worker count.
"""

from __future__ import annotations

import argparse
import re
import sys

from .clarity import ShadeMaterial, view_clarity_index
from .errors import ConfigurationRequiredError, DomainError, ProjectValidationError
from .project import parse_project
from .report import evaluate, f6, grid_csv, render_text, series_csv, write_outputs


class _Parser(argparse.ArgumentParser):
    # bad usage is an input problem, not an internal one
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _ratio_arg(text: str) -> float:
    t = text.strip()
    if t.endswith("%"):
        value = float(t[:-1]) / 100.0
    else:
        value = float(t)
    return value


def _build_parser() -> _Parser:
    parser = _Parser(prog="viewquality", description="Window view quality assessment")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, workers=True):
        p.add_argument("project", help="project JSON file")
        p.add_argument("--csv", metavar="DIR", help="write machine-readable CSV outputs into DIR")
        p.add_argument("--quiet", action="store_true", help="suppress stdout (useful with --csv)")
        if workers:
            p.add_argument("--workers", type=int, default=1, help="worker threads for grid evaluation")

    p_eval = sub.add_parser("evaluate", help="full report for a project file")
    add_common(p_eval)

    p_grid = sub.add_parser("grid", help="per-cell spatial assessment as CSV")
    add_common(p_grid)

    p_vci = sub.add_parser("vci", help="view clarity of a shade fabric")
    p_vci.add_argument("--of", required=True, type=_ratio_arg, help="openness factor (0..1 or 'N%%')")
    p_vci.add_argument("--tv", required=True, type=_ratio_arg, help="visible transmittance (0..1 or 'N%%')")

    p_comply = sub.add_parser("comply", help="compliance rows for one standard")
    add_common(p_comply)
    p_comply.add_argument("--standard", required=True, help="standard to filter on, e.g. BREEAM or LEED")

    p_sched = sub.add_parser("schedule", help="temporal clarity for the project's schedules")
    add_common(p_sched, workers=False)
    return parser


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            return parse_project(fh.read())
    except OSError as e:
        raise ProjectValidationError([f"{path}: {e.strerror or e}"]) from None


def _norm(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "", name.lower())


def _cmd_evaluate(args) -> int:
    project = _load(args.project)
    report = evaluate(project, workers=args.workers)
    if args.csv:
        write_outputs(report, args.csv)
    if not args.quiet:
        sys.stdout.write(render_text(report))
    return 0


def _cmd_grid(args) -> int:
    project = _load(args.project)
    report = evaluate(project, workers=args.workers)
    source = report.spatial_qualified if report.spatial_qualified is not None else report.spatial
    if source is None:
        raise DomainError("the project has no floor plan to assess")
    if args.csv:
        write_outputs(report, args.csv)
    if not args.quiet:
        sys.stdout.write(grid_csv(source))
    return 0


def _cmd_vci(args) -> int:
    material = ShadeMaterial(openness_factor=args.of, visible_transmittance=args.tv)
    sys.stdout.write(f6(view_clarity_index(material)) + "\n")
    return 0


def _cmd_comply(args) -> int:
    project = _load(args.project)
    report = evaluate(project, workers=args.workers)
    want = _norm(args.standard)
    if not want:
        raise DomainError(f"empty standard filter {args.standard!r}")
    rows = []
    for pair in report.pairs:
        for row in pair.compliance:
            if want in _norm(row.standard):
                rows.append(row)
    for row in report.credits:
        if want in _norm(row.standard):
            rows.append(row)
    if not rows:
        raise DomainError(f"no compliance rows match standard {args.standard!r}")
    if args.csv:
        write_outputs(report, args.csv)
    if not args.quiet:
        from .report import compliance_csv

        sys.stdout.write(compliance_csv(rows))
    return 0


def _cmd_schedule(args) -> int:
    project = _load(args.project)
    report = evaluate(project, workers=1)
    if not report.schedules:
        raise DomainError("the project declares no schedules")
    if args.csv:
        write_outputs(report, args.csv)
    if not args.quiet:
        for row in report.schedules:
            m = row.metrics
            sys.stdout.write(
                f"{row.name}: occupied steps {m.occupied_steps}, "
                f"fraction at or above the clarity floor {f6(m.fraction_above_min)}, "
                f"mean clarity score {f6(m.mean_v_clarity)}\n"
            )
            sys.stdout.write(series_csv(m))
    return 0


_COMMANDS = {
    "evaluate": _cmd_evaluate,
    "grid": _cmd_grid,
    "vci": _cmd_vci,
    "comply": _cmd_comply,
    "schedule": _cmd_schedule,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ProjectValidationError as e:
        for problem in e.problems:
            sys.stderr.write(f"invalid project: {problem}\n")
        return 1
    except (DomainError, ConfigurationRequiredError) as e:
        sys.stderr.write(f"invalid input: {e}\n")
        return 1
    except Exception as e:  # pragma: no cover - safety net
        sys.stderr.write(f"internal error: {type(e).__name__}: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
