"""Command-line front end.

Exit status: 0 success, 1 validation failure, 2 usage or parse error,
3 budget exceeded.  Diagnostics go to stderr, data to stdout or --out.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import compose, geometry, paths, patterns, render
from .compose import BudgetError, ManifestError
from .patterns import PatternError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default already exits 2; keep explicit
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="labfrac",
                     description="Mixed labyrinth fractal toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, *, manifest=False, pattern=False, level=False,
            kind=False, side=False, fmt=False, out=True, budget=True):
        p = sub.add_parser(name, help=help_)
        if manifest:
            p.add_argument("--manifest", required=True, help="sequence manifest path")
        if pattern:
            p.add_argument("--pattern", required=True, help="pattern file path")
        if level:
            p.add_argument("--level", type=int, required=True)
        if kind:
            p.add_argument("--kind", choices=list(paths.KINDS), required=True)
        if side:
            p.add_argument("--side", choices=list(geometry.EXIT_SIDES),
                           required=True)
        if fmt:
            p.add_argument("--format", choices=["text", "csv"], default="text")
        if out:
            p.add_argument("--out", help="output file (default stdout)")
        if budget:
            p.add_argument("--budget-cells", type=int,
                           default=compose.DEFAULT_CELL_BUDGET)
        return p

    add("validate", "check the labyrinth / wild / blocked properties",
        pattern=True, budget=False)
    add("compose", "emit the level-n set as a pattern file",
        manifest=True, level=True)
    add("matrix", "emit the level-n path matrix",
        manifest=True, level=True, fmt=True, budget=False)
    add("lengths", "emit the six level-n path lengths",
        manifest=True, level=True, fmt=True, budget=False)
    add("exits", "emit exit coordinates (partial sums and limit)",
        manifest=True, level=True, budget=False)
    add("exit-counts", "per-level counts of white squares containing an exit",
        manifest=True, level=True, side=True, budget=False)
    add("arc", "level-n arc approximation of an exit path",
        manifest=True, level=True, kind=True, fmt=True)
    p = add("dimension", "box-counting dimension diagnostics",
            manifest=True, level=True, kind=True, fmt=True, budget=False)
    p.add_argument("--window", type=int, default=None)
    add("probe-connect", "connectedness of each level",
        manifest=True, level=True, fmt=True)
    add("probe-disconnect", "component statistics of a complementary carpet",
        manifest=True, level=True, fmt=True)
    add("wild-probe", "level-1 vs level-2 shortest-path containment",
        pattern=True)
    p = add("render", "render a level set to SVG or PGM",
            manifest=True, level=True)
    p.add_argument("--cell-pixels", type=int, default=10)
    p.add_argument("--overlay-kind", choices=list(paths.KINDS), default=None)
    p.add_argument("--coarse-grid-every", type=int, default=None)
    add("complement", "emit the complementary pattern", pattern=True,
        budget=False)
    return parser


def _emit(text: str, out: str | None, binary: bool = False) -> None:
    if out:
        if binary:
            Path(out).write_bytes(text)
        else:
            Path(out).write_text(text)
    else:
        if binary:
            sys.stdout.buffer.write(text)
        else:
            sys.stdout.write(text)


def _load_pattern(path: str) -> patterns.Pattern:
    return patterns.parse_pattern(Path(path).read_text())


def _fraction(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def _report_text(report: patterns.ValidationReport) -> str:
    lines = [
        f"labyrinth: {'yes' if report.is_labyrinth else 'no'}",
        f"wild labyrinth: {'yes' if report.is_wild_labyrinth else 'no'}",
        f"property1 (tree): {'yes' if report.property1 else 'no'}",
        f"property2 (unique exit pairs): {'yes' if report.property2 else 'no'}",
        f"property3 (corners): {'yes' if report.property3 else 'no'}",
        f"blocked: {'yes' if report.horizontally_blocked else 'no'}"
        f"/{'yes' if report.vertically_blocked else 'no'} (horizontal/vertical)",
    ]
    for w in report.witnesses:
        lines.append(f"witness: {w}")
    return "\n".join(lines) + "\n"


def _run(args) -> int:
    cmd = args.command
    if cmd == "validate":
        report = patterns.validate(_load_pattern(args.pattern))
        _emit(_report_text(report), args.out)
        return EXIT_OK if report.is_labyrinth else EXIT_INVALID

    if cmd == "complement":
        comp = patterns.complement(_load_pattern(args.pattern))
        _emit(patterns.format_pattern(comp), args.out)
        return EXIT_OK

    if cmd == "wild-probe":
        result = paths.wild_containment_probe(_load_pattern(args.pattern))
        lines = [f"contained: {'yes' if result.contained else 'no'}",
                 "level1: " + " ".join(str(c) for c in result.level1_path),
                 "level2: " + " ".join(str(c) for c in result.level2_path)]
        if result.offending:
            lines.append("offending: " + " ".join(str(c) for c in result.offending))
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK

    seq = compose.load_manifest(args.manifest)

    if cmd == "compose":
        lvl = compose.build_level(seq, args.level, budget=args.budget_cells)
        _emit(patterns.format_pattern(lvl), args.out)
        return EXIT_OK

    if cmd == "matrix":
        matrix = paths.matrix_product(seq, args.level)
        if args.format == "csv":
            rows = ["path_kind,square_kind,count"]
            rows += [f"{x},{y},{c}" for x, y, c in matrix.to_records()]
            _emit("\n".join(rows) + "\n", args.out)
        else:
            _emit(matrix.to_text(), args.out)
        return EXIT_OK

    if cmd == "lengths":
        lengths = paths.path_lengths(paths.matrix_product(seq, args.level))
        if args.format == "csv":
            rows = ["kind,length"] + [f"{k},{v}" for k, v in zip(paths.KINDS, lengths)]
            _emit("\n".join(rows) + "\n", args.out)
        else:
            _emit(" ".join(str(v) for v in lengths) + "\n", args.out)
        return EXIT_OK

    if cmd == "exits":
        partial = geometry.exit_coordinates(seq, args.level)
        lines = [
            f"partial level {args.level}:",
            f"  top ({_fraction(partial.top[0])}, 1)  "
            f"bottom ({_fraction(partial.bottom[0])}, 0)",
            f"  left (0, {_fraction(partial.left[1])})  "
            f"right (1, {_fraction(partial.right[1])})",
            f"  tail bound {_fraction(partial.tail_bound)}",
        ]
        if seq.tail is not compose.TailRule.FINITE:
            limit = geometry.exit_coordinates_limit(seq)
            lines += [
                "limit:",
                f"  top ({_fraction(limit.top[0])}, 1)  "
                f"bottom ({_fraction(limit.bottom[0])}, 0)",
                f"  left (0, {_fraction(limit.left[1])})  "
                f"right (1, {_fraction(limit.right[1])})",
            ]
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK

    if cmd == "exit-counts":
        counts = geometry.exit_membership_counts(seq, args.side, args.level)
        _emit(" ".join(str(c) for c in counts) + "\n", args.out)
        return EXIT_OK

    if cmd == "arc":
        arc = geometry.arc_approximation(seq, args.level, args.kind,
                                         budget=args.budget_cells)
        if args.format == "csv":
            rows = ["x,y"] + [f"{float(x)},{float(y)}" for x, y in arc.polyline]
            _emit("\n".join(rows) + "\n", args.out)
        else:
            _emit(
                f"cells {len(arc.cells)}\n"
                f"euclidean_length {float(arc.euclidean_length)}\n"
                f"lower_bound {_fraction(arc.lower_bound)}\n",
                args.out,
            )
        return EXIT_OK

    if cmd == "dimension":
        est = geometry.dimension_estimate(seq, args.level, args.kind,
                                          window=args.window)
        if args.format == "csv":
            rows = ["n,m_n,s_n,A,B,C,D,E,F,ratio"]
            for r in est.per_level:
                rows.append(
                    f"{r.n},{r.m_n},{r.s_n}," +
                    ",".join(str(v) for v in r.lengths) + f",{r.ratio!r}"
                )
            _emit("\n".join(rows) + "\n", args.out)
        else:
            lines = [
                f"n={r.n} m(n)={r.m_n} lengths={r.lengths} ratio={r.ratio:.6f}"
                for r in est.per_level
            ]
            lines.append(
                f"window {est.window}: liminf~{est.liminf_estimate:.6f} "
                f"limsup~{est.limsup_estimate:.6f}"
            )
            _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK

    if cmd == "probe-connect":
        records = geometry.connectivity_probe(seq, args.level,
                                              budget=args.budget_cells)
        if args.format == "csv":
            rows = ["n,connected,components"]
            rows += [f"{r.n},{int(r.connected)},{r.component_count}" for r in records]
            _emit("\n".join(rows) + "\n", args.out)
        else:
            _emit("".join(
                f"n={r.n} connected={'yes' if r.connected else 'no'} "
                f"components={r.component_count}\n" for r in records), args.out)
        return EXIT_OK if all(r.connected for r in records) else EXIT_INVALID

    if cmd == "probe-disconnect":
        stats = geometry.disconnectedness_probe(seq, args.level,
                                                budget=args.budget_cells)
        if args.format == "csv":
            rows = ["n,components,max_diameter_normalized"]
            rows += [f"{r.n},{r.component_count},{_fraction(r.max_diameter_normalized)}"
                     for r in stats]
            _emit("\n".join(rows) + "\n", args.out)
        else:
            _emit("".join(
                f"n={r.n} components={r.component_count} "
                f"max_diameter={_fraction(r.max_diameter_normalized)}\n"
                for r in stats), args.out)
        return EXIT_OK

    if cmd == "render":
        lvl = compose.build_level(seq, args.level, budget=args.budget_cells)
        overlay = None
        if args.overlay_kind:
            overlay = paths.substituted_path(seq, args.level, args.overlay_kind,
                                             budget=args.budget_cells).cells
        spec = render.RenderSpec(
            cell_pixels=args.cell_pixels,
            overlay=overlay,
            coarse_grid_every=args.coarse_grid_every,
        )
        out = args.out or ""
        if out.endswith(".pgm"):
            _emit(render.render_pgm(lvl, spec), args.out, binary=True)
        else:
            _emit(render.render_svg(lvl, spec), args.out)
        return EXIT_OK

    raise AssertionError(f"unhandled command {cmd}")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except BudgetError as exc:
        print(f"labfrac: budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ManifestError, patterns.PatternFormatError, OSError) as exc:
        print(f"labfrac: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PatternError, paths.PathError, geometry.GeometryError,
            render.RenderError, ValueError, IndexError) as exc:
        print(f"labfrac: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
