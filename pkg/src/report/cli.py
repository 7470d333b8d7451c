"""
Command line front end.

Exit codes: 0 success, 2 parse/usage/hypothesis error, 3 conditional result
(printed anyway), 4 size guard or stabilization budget exceeded.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional

from ..core.bounds import (
    BoundReport,
    ProductFamily,
    bound_convenient,
    bound_general,
    bound_product,
    eta_theta_convert,
    power_exponent,
    refine_bound,
)
from ..core.config import TOOL_VERSION, Settings, load_settings
from ..core.curves import CurveProber, load_curve, sweep_grid_side, sweep_monomial_curves, witness_search
from ..core.dual_diagram import build_dual_diagram
from ..core.errors import GuardExceededError, LojaError, StabilizationError
from ..core.milnor import milnor_number
from ..core.newton import check_guards, is_convenient
from ..core.polynomial import Polynomial, load_polynomial, parse_rational
from ..core.tameness import certify_diagram
from .analysis import analyze, emit_diagram, report_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONDITIONAL = 3
EXIT_GUARD = 4


def _weight_text(weight) -> str:
    return "(" + ",".join(str(w) for w in weight) + ")"


def _status_code(*reports: BoundReport) -> int:
    return EXIT_CONDITIONAL if any(r.status == "conditional" for r in reports) else EXIT_OK


def _print_notes(report: BoundReport):
    for note in report.assumptions:
        print(f"note: {note}", file=sys.stderr)


def _load(path: Path, settings: Settings) -> Polynomial:
    f = load_polynomial(path)
    check_guards(f, settings.max_variables, settings.max_support)
    return f


def _cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    f = _load(args.file, settings)
    curves = [(str(path.name), load_curve(path)) for path in args.probe or []]
    report = analyze(
        f,
        settings,
        assume_nondegenerate=args.assume_nondegenerate,
        assume_inv_tame=args.assume_inv_tame,
        curves=curves,
        search_witness=args.witness,
    )
    if args.json is not None:
        args.json.parent.mkdir(parents=True, exist_ok=True)
        args.json.write_text(report_json(report), encoding="utf-8")

    print(f"f = {report.input.polynomial}")
    print(f"n = {report.n}, convenience level {report.convenience_level}, B = {report.axis.B}")
    print(f"dual diagram: {report.diagram.cells} cells, by dimension {report.diagram.by_dim}")
    for kind in ("general", "refined", "convenient"):
        if kind in report.bounds:
            bound = report.bounds[kind]
            print(f"{bound.label} bound: {bound.bound} ({bound.status})")
    for probe_result in report.probes:
        print(f"probe {probe_result.name}: theta = {probe_result.theta}")
    if report.witness is not None:
        print(f"witness weight {_weight_text(report.witness.weight)}: theta = {report.witness.theta}")
    for note in report.assumptions:
        print(f"note: {note}", file=sys.stderr)
    return EXIT_CONDITIONAL if report.status == "conditional" else EXIT_OK


def _cmd_bound(args: argparse.Namespace, settings: Settings) -> int:
    f = _load(args.file, settings)
    diagram = build_dual_diagram(f, settings.max_variables, settings.max_support)
    certificates = certify_diagram(diagram, args.assume_nondegenerate, args.assume_inv_tame)
    general = bound_general(f, diagram=diagram, certificates=certificates)
    reports = [general]

    if args.refine:
        refined = refine_bound(f, diagram=diagram, certificates=certificates)
        found = witness_search(f, settings.sweep_samples, settings.sweep_seed, diagram, settings.truncation)
        if found is None:
            print(f"theta0 <= {general.bound} (no witness curve found)")
        else:
            print(f"theta0 in [{found.result.theta}, {general.bound}] (witness weight {_weight_text(found.weight)})")
        print(f"refined estimate {refined.bound} (heuristic, not certified)")
    print(f"theta0 <= {general.bound} (general; {general.status})")

    if is_convenient(f):
        convenient = bound_convenient(f, diagram=diagram, certificates=certificates)
        reports.append(convenient)
        exact = " (equality)" if convenient.equality_certificate is not None else ""
        print(f"theta0 <= {convenient.bound} (convenient; B = {convenient.B}){exact}")
    _print_notes(general)
    return _status_code(*reports)


def _cmd_probe(args: argparse.Namespace, settings: Settings) -> int:
    f = _load(args.file, settings)
    curve = load_curve(args.curve)
    prober = CurveProber(f, settings.truncation, settings.tolerance, settings.precision_bits, settings.truncation_factor)
    result = prober.probe(curve)
    mode = "exact" if result.exactness == "exact" else f"numeric, tol {result.tolerance:g}"
    print(f"ord_f = {result.ord_f}, ord_grad = {result.ord_grad}, theta = {result.theta} ({mode}; T = {result.truncation_used})")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace, settings: Settings) -> int:
    f = _load(args.file, settings)
    budget = args.budget or settings.sweep_budget
    side = sweep_grid_side(f.n, budget)
    if side < budget:
        print(f"note: weight grid capped at side {side} (budget {budget}); cell weights up to {budget}", file=sys.stderr)
    found = sweep_monomial_curves(
        f,
        exponent_budget=budget,
        coefficient_samples=args.samples or settings.sweep_samples,
        seed=settings.sweep_seed,
        truncation=settings.truncation,
    )
    if found is None:
        print("no curve off V(f) found")
        return EXIT_OK
    print(
        f"theta >= {found.result.theta} (weight {_weight_text(found.weight)}; "
        f"ord_f = {found.result.ord_f}, ord_grad = {found.result.ord_grad}; {found.curves_probed} curves)"
    )
    return EXIT_OK


def _cmd_product(args: argparse.Namespace, settings: Settings) -> int:
    members = tuple(_load(path, settings) for path in args.files)
    multiplicities = tuple(int(m) for m in args.mult.split(",")) if args.mult else ()
    report = bound_product(ProductFamily(members, multiplicities), args.assume_nondegenerate)
    exact = " (equality)" if report.equality_certificate is not None else ""
    print(f"theta0 <= {report.bound} (product; B~ = {report.B}; {report.status}){exact}")
    _print_notes(report)
    return _status_code(report)


def _cmd_power(args: argparse.Namespace, settings: Settings) -> int:
    f = _load(args.file, settings)
    if is_convenient(f):
        base = bound_convenient(f, assume_nondegenerate=args.assume_nondegenerate)
        if base.equality_certificate is None:
            general = bound_general(f, assume_nondegenerate=args.assume_nondegenerate)
            base = min(base, general, key=lambda report: report.bound)
    else:
        base = bound_general(f, assume_nondegenerate=args.assume_nondegenerate)
    value = power_exponent(base.bound, args.m)
    relation = "=" if base.equality_certificate is not None else "<="
    print(f"theta0(f^{args.m}) {relation} {value} (from {base.label} value {base.bound})")
    return _status_code(base)


def _cmd_convert(args: argparse.Namespace, settings: Settings) -> int:
    if args.eta is not None:
        print(f"theta0 = {eta_theta_convert(parse_rational(args.eta), 'eta_to_theta')}")
    else:
        print(f"eta0 = {eta_theta_convert(parse_rational(args.theta), 'theta_to_eta')}")
    return EXIT_OK


def _cmd_milnor(args: argparse.Namespace, settings: Settings) -> int:
    print(milnor_number(_load(args.file, settings)))
    return EXIT_OK


def _cmd_diagram(args: argparse.Namespace, settings: Settings) -> int:
    text = emit_diagram(_load(args.file, settings), args.format, settings)
    args.output.parent.mkdir(parents=True, exist_ok=True)
    args.output.write_text(text, encoding="utf-8")
    return EXIT_OK


def _add_assumption_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--assume-nondegenerate", action="store_true", help="Treat undecided non-degeneracy as given")
    parser.add_argument("--assume-inv-tame", action="store_true", help="Treat undecided inv-tameness as given")


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="loja",
        description="Lojasiewicz exponent bounds from Newton polyhedra.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {TOOL_VERSION}")
    parser.add_argument("--config", type=Path, help="key=value settings file (default $LOJA_CONFIG)")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--max-variables", type=int)
    parser.add_argument("--max-support", type=int)
    commands = parser.add_subparsers(dest="command", required=True)

    analyze_parser = commands.add_parser("analyze", help="Full report for one polynomial")
    analyze_parser.add_argument("file", type=Path)
    analyze_parser.add_argument("--json", type=Path, help="Write the JSON report here")
    analyze_parser.add_argument("--probe", type=Path, action="append", help="Curve file to probe (repeatable)")
    analyze_parser.add_argument("--witness", action="store_true", help="Search monomial curves for a lower bound")
    analyze_parser.add_argument("--truncation", type=int)
    _add_assumption_flags(analyze_parser)
    analyze_parser.set_defaults(handler=_cmd_analyze)

    bound_parser = commands.add_parser("bound", help="Upper bounds for theta0")
    bound_parser.add_argument("file", type=Path)
    bound_parser.add_argument("--refine", action="store_true", help="Monomial-partial refinement plus witness search")
    _add_assumption_flags(bound_parser)
    bound_parser.set_defaults(handler=_cmd_bound)

    probe_parser = commands.add_parser("probe", help="Orders of f and grad f along a curve")
    probe_parser.add_argument("file", type=Path)
    probe_parser.add_argument("--curve", type=Path, required=True)
    probe_parser.add_argument("--truncation", type=int)
    probe_parser.set_defaults(handler=_cmd_probe)

    sweep_parser = commands.add_parser("sweep", help="Search monomial curves for the largest ratio")
    sweep_parser.add_argument("file", type=Path)
    sweep_parser.add_argument("--budget", type=int)
    sweep_parser.add_argument("--samples", type=int)
    sweep_parser.add_argument("--truncation", type=int)
    sweep_parser.set_defaults(handler=_cmd_sweep)

    product_parser = commands.add_parser("product", help="Bound for f1^m1 * ... * fk^mk")
    product_parser.add_argument("files", type=Path, nargs="+")
    product_parser.add_argument("--mult", help="Comma-separated multiplicities m1,m2,...")
    product_parser.add_argument("--assume-nondegenerate", action="store_true")
    product_parser.set_defaults(handler=_cmd_product)

    power_parser = commands.add_parser("power", help="theta0 of f^m")
    power_parser.add_argument("file", type=Path)
    power_parser.add_argument("-m", type=int, required=True)
    power_parser.add_argument("--assume-nondegenerate", action="store_true")
    power_parser.set_defaults(handler=_cmd_power)

    convert_parser = commands.add_parser("convert", help="Convert between eta0 and theta0")
    direction = convert_parser.add_mutually_exclusive_group(required=True)
    direction.add_argument("--eta")
    direction.add_argument("--theta")
    convert_parser.set_defaults(handler=_cmd_convert)

    milnor_parser = commands.add_parser("milnor", help="Milnor number via the Newton number (n <= 3)")
    milnor_parser.add_argument("file", type=Path)
    milnor_parser.set_defaults(handler=_cmd_milnor)

    diagram_parser = commands.add_parser("diagram", help="Dual diagram as SVG (n = 3) or JSON")
    diagram_parser.add_argument("file", type=Path)
    diagram_parser.add_argument("--format", choices=("svg", "json"), default="svg")
    diagram_parser.add_argument("-o", "--output", type=Path, required=True)
    diagram_parser.set_defaults(handler=_cmd_diagram)

    return parser.parse_args(argv)


def _configure_logging(verbosity: int):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger().setLevel(level)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch to a subcommand and map errors to exit codes."""
    try:
        args = _parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.verbose)

    handler: Callable[[argparse.Namespace, Settings], int] = args.handler
    try:
        settings = load_settings(
            args.config,
            max_variables=args.max_variables,
            max_support=args.max_support,
            truncation=getattr(args, "truncation", None),
        )
        return handler(args, settings)
    except (GuardExceededError, StabilizationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (LojaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())
