"""cartan-strat: command line front end.

Exit codes: 0 success, 1 verification mismatch, 2 the algebra could not be
built, 3 bad arguments or an invalid order.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .golden import run_golden
from .lattice import MatrixShapeError, cokernel, group_exponent, group_order, is_diagonal, smith_normal_form
from .presentation import AlgebraPresentation, InvalidOrder, PresentationError, parse_presentation
from .quiver import (
    LinearOrder,
    NotAPosetError,
    ProperCycleError,
    QuiverError,
    linear_refinements,
    synthesize_weak_triangular_order,
)
from .rewriting import AlgebraConstructionError, build_algebra
from .stratification import (
    SS_FOR_EVERY_REFINEMENT,
    NotRadicalSquareZero,
    analyze,
    classify_rad_square_zero,
    radical_square_zero_algebra,
)

EXIT_OK, EXIT_MISMATCH, EXIT_BUILD, EXIT_ARGS = 0, 1, 2, 3


class UsageError(Exception):
    pass


class BuildError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    if isinstance(x, float):
        return "infinite"
    return str(x)


def _matrix_lines(m, indent="  ") -> list[str]:
    return [indent + "[" + ", ".join(str(x) for x in row) + "]" for row in m] or [indent + "[]"]


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _read_presentation(args) -> AlgebraPresentation:
    if (args.file is None) == (args.text is None):
        raise UsageError("give exactly one of FILE or --text")
    if args.text is not None:
        source = args.text
    elif args.file == "-":
        source = sys.stdin.read()
    else:
        path = Path(args.file)
        if not path.is_file():
            raise UsageError(f"no such file: {args.file}")
        source = path.read_text(encoding="utf-8")
    try:
        return parse_presentation(source)
    except InvalidOrder as exc:
        raise UsageError(str(exc)) from None
    except PresentationError as exc:
        raise BuildError(str(exc)) from None


def _parse_order(text: str, p: AlgebraPresentation) -> LinearOrder:
    try:
        order = LinearOrder.parse(text)
        order.check_covers(p.quiver)
    except QuiverError as exc:
        raise UsageError(f"invalid order: {exc}") from None
    return order


def _build(p: AlgebraPresentation, cap: int):
    try:
        return build_algebra(p, cap)
    except AlgebraConstructionError as exc:
        raise BuildError(str(exc)) from None


def _report_lines(r) -> list[str]:
    d = r.to_dict()
    lines = [f"order: {r.order}"]
    cert = d["certificate"]
    lines.append(
        f"total dimension: {d['total_dimension']}  "
        f"(max normal-form length {cert['max_normal_length']}, overlaps checked to degree {cert['processed_degree']})"
    )
    lines.append("cartan matrix (rows and columns by rank):")
    lines += _matrix_lines(r.cartan)
    lines.append("delta-cartan matrix:")
    lines += _matrix_lines(r.delta_cartan)
    lines.append("standard module dimension vectors:")
    for v, dims in d["standard_dims"].items():
        lines.append(f"  Delta({v}) = ({', '.join(str(x) for x in dims)})")
    lines.append(
        f"cartan group: {r.cartan_group}  (order {_fmt(d['cartan_group_order'])}, "
        f"exponent {_fmt(d['cartan_group_exponent'])})"
    )
    lines.append("end dimensions: " + ", ".join(f"{v}:{x}" for v, x in r.end_dims.items()))
    lines.append("flags:")
    for k, v in r.flags.items():
        lines.append(f"  {k}: {'yes' if v else 'no'}")
    lines.append("identity checks:")
    for c in r.identity_checks:
        lines.append(f"  [{'ok' if c.holds else 'FAIL'}] {c.name}: {_fmt(c.lhs)} vs {_fmt(c.rhs)}")
    if r.simple_pd:
        lines.append("projective dimension of simples: " + ", ".join(f"S({v}):{x}" for v, x in r.simple_pd.items()))
    for c in r.caveats:
        lines.append(f"note: {c}")
    return lines


def cmd_analyze(args) -> int:
    p = _read_presentation(args)
    b = _build(p, args.degree_cap)
    if args.all_refinements:
        if args.order:
            raise UsageError("--order and --all-refinements are exclusive")
        try:
            refs = linear_refinements(p.quiver, args.limit)
        except NotAPosetError as exc:
            raise UsageError(str(exc)) from None
        reports = [analyze(b, o, args.pd_cap) for o in refs]
        payload = {"truncated": refs.truncated, "count": len(reports), "reports": [r.to_dict() for r in reports]}
        lines = [f"{len(reports)} refinement(s){' (truncated)' if refs.truncated else ''}"]
        for r in reports:
            lines += [""] + _report_lines(r)
        _emit(args, payload, lines)
        return EXIT_OK
    if args.order:
        order, source = _parse_order(args.order, p), "argument"
    elif p.order is not None:
        order, source = p.order, "file"
    else:
        try:
            order, source = synthesize_weak_triangular_order(p.quiver), "synthesized"
        except ProperCycleError as exc:
            raise UsageError(f"no order given and none can be synthesized: {exc}") from None
    r = analyze(b, order, args.pd_cap)
    payload = {"order_source": source, **r.to_dict()}
    _emit(args, payload, [f"order source: {source}"] + _report_lines(r))
    return EXIT_OK


def _parse_matrix(text: str) -> list[list[int]]:
    path = Path(text)
    if not text.lstrip().startswith("[") and path.is_file():
        text = path.read_text(encoding="utf-8")
    try:
        m = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed matrix: {exc}") from None
    if not isinstance(m, list) or not m or not all(isinstance(r, list) for r in m):
        raise UsageError("matrix must be a nonempty JSON array of rows")
    return m


def cmd_snf(args) -> int:
    a = _parse_matrix(args.matrix)
    try:
        dec = smith_normal_form(a)
        g = cokernel(a)
    except MatrixShapeError as exc:
        raise UsageError(f"malformed matrix: {exc}") from None
    payload = {
        **dec.to_dict(),
        "diagonal": dec.diagonal,
        "group": g.to_dict(),
        "order": "infinite" if group_order(g) == float("inf") else group_order(g),
        "exponent": "infinite" if group_exponent(g) == float("inf") else group_exponent(g),
    }
    lines = ["U ="] + _matrix_lines(dec.U) + ["D ="] + _matrix_lines(dec.D) + ["V ="] + _matrix_lines(dec.V)
    lines.append(f"invariant factors: {list(g.invariant_factors)}  free rank: {g.free_rank}")
    lines.append(f"cokernel: {g}  order: {_fmt(group_order(g))}  exponent: {_fmt(group_exponent(g))}")
    _emit(args, payload, lines)
    return EXIT_OK


def _verify_rad2(p, cls, limit) -> list[str]:
    """Compare the graph verdict with direct analysis of every refinement."""
    problems = []
    if not cls.no_proper_cycles:
        return problems
    b = radical_square_zero_algebra(p)
    for o in linear_refinements(p.quiver, limit):
        r = analyze(b, o)
        ss = r.flags["standardly_stratified"]
        if ss != (cls.verdict == SS_FOR_EVERY_REFINEMENT):
            problems.append(f"order {o}: direct standardly stratified = {ss}, verdict {cls.verdict}")
        elif ss:
            by_rank = [cls.predicted_delta_diagonal[p.quiver.index(v)] for v in o]
            if not is_diagonal(r.delta_cartan) or [r.delta_cartan[k][k] for k in range(len(o))] != by_rank:
                problems.append(f"order {o}: delta-cartan {r.delta_cartan} differs from predicted {by_rank}")
            if r.cartan_group != cls.predicted_group:
                problems.append(f"order {o}: group {r.cartan_group} differs from predicted {cls.predicted_group}")
    return problems


def cmd_classify_rad2(args) -> int:
    p = _read_presentation(args)
    order = _parse_order(args.order, p) if args.order else None
    try:
        cls = classify_rad_square_zero(p, order, args.degree_cap)
    except NotRadicalSquareZero as exc:
        raise BuildError(str(exc)) from None
    payload = cls.to_dict()
    lines = [
        f"no proper oriented cycles: {'yes' if cls.no_proper_cycles else 'no'}",
        f"loops only at quasi-sources: {'yes' if cls.loops_only_at_quasi_sources else 'no'}",
        f"verdict: {cls.verdict}",
        "loops: " + ", ".join(f"{v}:{n}" for v, n in cls.loops.items()),
    ]
    if cls.predicted_delta_diagonal is not None:
        lines.append(f"predicted delta-cartan diagonal: {cls.predicted_delta_diagonal}")
        lines.append(f"predicted cartan group: {cls.predicted_group}")
    if cls.order is not None:
        lines.append(f"order {cls.order}: standardly stratified = {cls.order_standardly_stratified}")
        if cls.predicted_group_order is not None:
            lines.append(f"predicted group order (sink-free): {cls.predicted_group_order}")
    lines += [f"warning: {w}" for w in cls.warnings]
    status = EXIT_OK
    if args.verify:
        problems = _verify_rad2(p, cls, args.limit)
        payload["verification"] = {"ok": not problems, "problems": problems}
        lines.append("verification: " + ("ok" if not problems else "MISMATCH"))
        lines += [f"  {x}" for x in problems]
        status = EXIT_OK if not problems else EXIT_MISMATCH
    _emit(args, payload, lines)
    return status


def cmd_refinements(args) -> int:
    p = _read_presentation(args)
    try:
        refs = linear_refinements(p.quiver, args.limit)
    except NotAPosetError as exc:
        raise UsageError(str(exc)) from None
    payload = {"orders": [list(o.vertices) for o in refs], "truncated": refs.truncated}
    lines = [str(o) for o in refs]
    if refs.truncated:
        lines.append(f"(truncated at {args.limit})")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_examples(args) -> int:
    rows = run_golden()
    ok = all(r.passed for r in rows)
    payload = {"all_passed": ok, "rows": [r.to_dict() for r in rows]}
    lines = [f"{'result':6}  {'example':10} {'order':9} {'quantity':40} expected / computed"]
    for r in rows:
        lines.append(
            f"{'pass' if r.passed else 'FAIL':6}  {r.example:10} {r.order or '':9} {r.quantity:40} "
            f"{json.dumps(r.expected)} / {json.dumps(r.computed)}"
        )
    lines.append(f"{sum(r.passed for r in rows)}/{len(rows)} passed")
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cartan-strat", description="Cartan groups and stratifications of quotient path algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(sp):
        sp.add_argument("file", nargs="?", help="presentation file, or - for stdin")
        sp.add_argument("--text", help="presentation given inline")
        sp.add_argument("--json", action="store_true", help="emit JSON")

    sp = sub.add_parser("analyze", help="full stratification report")
    add_input(sp)
    sp.add_argument("--order", help='linear order such as "1<2<3"')
    sp.add_argument("--all-refinements", action="store_true", help="analyze every refinement of the reachability order")
    sp.add_argument("--limit", type=int, default=1000, help="refinement limit (default 1000)")
    sp.add_argument("--degree-cap", type=int, default=64, help="completion degree cap (default 64)")
    sp.add_argument("--pd-cap", type=int, default=None, help="also bound projective dimensions of simples")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("snf", help="Smith normal form and cokernel of an integer matrix")
    sp.add_argument("matrix", help='JSON rows such as "[[2,1],[2,2]]" or a file holding them')
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_snf)

    sp = sub.add_parser("classify-rad2", help="graph classification of a radical square zero algebra")
    add_input(sp)
    sp.add_argument("--order", help="also test this order directly")
    sp.add_argument("--verify", action="store_true", help="cross-check against direct analysis of refinements")
    sp.add_argument("--limit", type=int, default=1000)
    sp.add_argument("--degree-cap", type=int, default=64)
    sp.set_defaults(func=cmd_classify_rad2)

    sp = sub.add_parser("refinements", help="linear refinements of the reachability order")
    add_input(sp)
    sp.add_argument("--limit", type=int, default=1000)
    sp.set_defaults(func=cmd_refinements)

    sp = sub.add_parser("paper-examples", help="replay the bundled examples against expected values")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_examples)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for flag in ("limit", "degree_cap", "pd_cap"):
        value = getattr(args, flag, None)
        if value is not None and value < (2 if flag == "degree_cap" else 1):
            print(f"cartan-strat: error: --{flag.replace('_', '-')} is too small", file=sys.stderr)
            return EXIT_ARGS
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cartan-strat: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except BuildError as exc:
        print(f"cartan-strat: cannot build algebra: {exc}", file=sys.stderr)
        return EXIT_BUILD


if __name__ == "__main__":
    sys.exit(main())
