"""
Assembly of the analysis report and the diagram document.

`analyze` runs every module on one polynomial and returns an AnalysisReport
whose content hash covers everything but the hash itself.
"""

import hashlib
import json
import logging
from dataclasses import replace
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core.bounds import BoundReport, bound_convenient, bound_general, refine_bound
from ..core.config import TOOL_VERSION, Settings
from ..core.curves import Curve, CurveProber, ProbeResult, SweepResult, curve_to_json, witness_search
from ..core.dual_diagram import (
    DualDiagram,
    SimplexPlan,
    build_dual_diagram,
    export_simplex_projection,
    normalize,
    safe_theta_prime,
)
from ..core.errors import HypothesisError
from ..core.newton import axis_data, check_guards, convenience_level, is_convenient
from ..core.polynomial import Polynomial, format_polynomial, format_rational
from ..core.tameness import Certificate, certify_diagram
from .models import (
    AnalysisReport,
    AxisModel,
    BoundModel,
    CellModel,
    CertificateModel,
    ContributionModel,
    DiagramDocument,
    DiagramSummaryModel,
    EqualityCertificateModel,
    FacetVertexModel,
    InputModel,
    PlanPointModel,
    PlanRegionModel,
    PlanSegmentModel,
    ProbeModel,
    RegionModel,
    SimplexPlanModel,
    WitnessModel,
)
from .svg import render_svg

logger = logging.getLogger(__name__)


def canonical_json(payload: Any) -> str:
    """Sorted keys, no whitespace."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def sha256_canonical_json(payload: Any) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def _optional(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else format_rational(value)


def _rationals(values: Sequence[Fraction]) -> List[str]:
    return [format_rational(value) for value in values]


def certificate_model(certificate: Certificate) -> CertificateModel:
    return CertificateModel(
        kind=certificate.kind,
        status=certificate.status,
        reason=certificate.reason,
        criterion=certificate.criterion,
        partial=certificate.partial,
        witness=None if certificate.witness is None else _rationals(certificate.witness),
    )


def bound_model(report: BoundReport) -> BoundModel:
    certificate = report.equality_certificate
    return BoundModel(
        kind=report.kind,
        label=report.label,
        bound=format_rational(report.bound),
        status=report.status,
        B=report.B,
        theta_tilde=_optional(report.theta_tilde),
        L=_optional(report.L),
        attained_by=report.attained_by,
        equality_certificate=None
        if certificate is None
        else EqualityCertificateModel(j=certificate.j, B=certificate.B, curve_weights=list(certificate.curve_weights)),
        lower=_optional(report.lower),
        per_cell=[
            ContributionModel(
                cell_id=c.cell_id,
                label=c.label,
                value=format_rational(c.value),
                certificate_status=c.certificate_status,
                monomial_partials=list(c.monomial_partials),
            )
            for c in report.per_cell
        ],
        assumptions=list(report.assumptions),
    )


def probe_model(name: str, curve: Curve, result: ProbeResult) -> ProbeModel:
    return ProbeModel(
        name=name,
        curve=curve_to_json(curve),
        ord_f=format_rational(result.ord_f),
        ord_grad=format_rational(result.ord_grad),
        theta=format_rational(result.theta),
        truncation_used=format_rational(result.truncation_used),
        exactness=result.exactness,
        tolerance=result.tolerance,
        partial_orders=[_optional(order) for order in result.partial_orders],
    )


def witness_model(found: SweepResult) -> WitnessModel:
    return WitnessModel(
        weight=list(found.weight),
        curve=curve_to_json(found.curve),
        theta=format_rational(found.result.theta),
        ord_f=format_rational(found.result.ord_f),
        ord_grad=format_rational(found.result.ord_grad),
        curves_probed=found.curves_probed,
    )


def _facet_vertices(diagram: DualDiagram, certificates: Dict[str, List[Certificate]]) -> List[FacetVertexModel]:
    f = diagram.f
    vertices = []
    for cell in diagram.vertex_cells():
        normalized = None if cell.d == 0 else _rationals(normalize(cell.rep, f).entries)
        theta = None if cell.cell_class == "nonvanishing" else safe_theta_prime(cell, f)
        vertices.append(
            FacetVertexModel(
                cell_id=cell.id,
                label=cell.label,
                normal=list(cell.rep.as_integers()),
                d=format_rational(cell.d),
                cell_class=cell.cell_class,
                normalized=normalized,
                theta_prime=_optional(theta),
                var=sorted(cell.var),
                itilde=sorted(cell.itilde),
                var_inv=sorted(cell.var_inv),
                certificates=[certificate_model(c) for c in certificates.get(cell.id, [])],
            )
        )
    return vertices


def _regions(diagram: DualDiagram) -> List[RegionModel]:
    regions = []
    for cell in diagram.full_cells():
        (nu,) = tuple(cell.face.on_points)
        degree = sum(nu)
        if degree == 0:
            continue
        regions.append(
            RegionModel(
                cell_id=cell.id,
                monomial=format_polynomial(Polynomial.monomial(nu)),
                exponent=list(nu),
                degree=degree,
                value=format_rational(1 - Fraction(1, degree)),
            )
        )
    return regions


def analyze(
    f: Polynomial,
    settings: Optional[Settings] = None,
    assume_nondegenerate: bool = False,
    assume_inv_tame: bool = False,
    curves: Sequence[Tuple[str, Curve]] = (),
    search_witness: bool = False,
) -> AnalysisReport:
    """
    Run every module on f.

    Args:
        f: Polynomial with f(0) = 0
        settings: Guards and numeric knobs (defaults when omitted)
        assume_nondegenerate: Turn Undecided non-degeneracy into Assumed
        assume_inv_tame: Turn Undecided inv-tameness into Assumed
        curves: Named curves to probe
        search_witness: Also run the witness search for a lower bound

    Returns:
        AnalysisReport with its content hash filled in
    """
    settings = settings or Settings()
    check_guards(f, settings.max_variables, settings.max_support)
    diagram = build_dual_diagram(f, settings.max_variables, settings.max_support)
    certificates = certify_diagram(diagram, assume_nondegenerate, assume_inv_tame)

    notes: List[str] = []
    bounds: Dict[str, BoundReport] = {}
    try:
        bounds["general"] = bound_general(f, diagram=diagram, certificates=certificates)
        bounds["refined"] = refine_bound(f, diagram=diagram, certificates=certificates)
    except HypothesisError as exc:
        notes.append(f"diagram bounds unavailable: {exc}")
    if is_convenient(f):
        try:
            bounds["convenient"] = bound_convenient(f, diagram=diagram, certificates=certificates)
        except HypothesisError as exc:
            notes.append(f"convenient bound unavailable: {exc}")

    prober = CurveProber(f, settings.truncation, settings.tolerance, settings.precision_bits, settings.truncation_factor)
    probes = [probe_model(name, curve, prober.probe(curve)) for name, curve in curves]

    witness = None
    if search_witness:
        found = witness_search(f, settings.sweep_samples, settings.sweep_seed, diagram, settings.truncation)
        if found is not None:
            witness = witness_model(found)
            if "refined" in bounds:
                refined = bounds["refined"]
                bounds["refined"] = replace(refined, lower=found.result.theta)

    for report in bounds.values():
        notes.extend(note for note in report.assumptions if note not in notes)
    # the refined estimate is always conditional and does not decide the status
    complete = "general" in bounds and all(
        report.status == "certified" for kind, report in bounds.items() if kind != "refined"
    )
    status = "certified" if complete else "conditional"

    axis = axis_data(f)
    report = AnalysisReport(
        tool_version=TOOL_VERSION,
        input=InputModel(
            polynomial=format_polynomial(f),
            flags={
                "assume_nondegenerate": assume_nondegenerate,
                "assume_inv_tame": assume_inv_tame,
                "truncation": settings.truncation,
            },
        ),
        n=f.n,
        support=[list(nu) for nu in f.support],
        convenience_level=convenience_level(f),
        axis=AxisModel(b=list(axis.b), B=axis.B, I_B=sorted(axis.I_B)),
        diagram=DiagramSummaryModel(cells=len(diagram.cells), **diagram.counts()),
        facet_vertices=_facet_vertices(diagram, certificates),
        regions=_regions(diagram),
        bounds={kind: bound_model(b) for kind, b in bounds.items()},
        probes=probes,
        witness=witness,
        assumptions=notes,
        status=status,
    )
    return with_content_hash(report)


def with_content_hash(report: AnalysisReport) -> AnalysisReport:
    """Fill in the SHA-256 of the canonical JSON taken with an empty hash."""
    payload = report.model_copy(update={"content_hash": ""}).model_dump(mode="json")
    return report.model_copy(update={"content_hash": sha256_canonical_json(payload)})


def report_json(document) -> str:
    """Deterministic, human-readable JSON text of a report model."""
    return json.dumps(document.model_dump(mode="json"), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _plan_model(plan: SimplexPlan) -> SimplexPlanModel:
    return SimplexPlanModel(
        points=[
            PlanPointModel(
                bary=_rationals(point.bary),
                label=point.label,
                cell_class=point.cell_class,
                cell_id=point.cell_id,
                theta_prime=_optional(point.theta_prime),
            )
            for point in plan.points
        ],
        segments=[
            PlanSegmentModel(
                ends=[_rationals(end) for end in segment.ends],
                cell_class=segment.cell_class,
                cell_id=segment.cell_id,
                theta_prime=_optional(segment.theta_prime),
            )
            for segment in plan.segments
        ],
        regions=[
            PlanRegionModel(
                vertices=[_rationals(vertex) for vertex in region.vertices],
                cell_class=region.cell_class,
                cell_id=region.cell_id,
                monomial=region.monomial,
                value=_optional(region.value),
            )
            for region in plan.regions
        ],
    )


def diagram_document(diagram: DualDiagram) -> DiagramDocument:
    """Every cell with its sets and incidence; the simplex section for n = 3."""
    f = diagram.f
    cells = [
        CellModel(
            id=cell.id,
            cell_dim=cell.cell_dim,
            rep=list(cell.rep.as_integers()),
            cell_class=cell.cell_class,
            d=format_rational(cell.d),
            face_points=[list(nu) for nu in cell.face.sorted_points()],
            recession=sorted(cell.face.recession),
            I=sorted(cell.I),
            itilde=sorted(cell.itilde),
            var_inv=sorted(cell.var_inv),
            theta_prime=_optional(None if cell.cell_class == "nonvanishing" else safe_theta_prime(cell, f)),
            extreme_rays=[list(ray.as_integers()) for ray in cell.extreme_rays],
            above=sorted(diagram.incidence[cell.id], key=lambda cell_id: int(cell_id[1:])),
        )
        for cell in diagram.cells
    ]
    plan = _plan_model(export_simplex_projection(diagram)) if f.n == 3 else None
    return DiagramDocument(polynomial=format_polynomial(f), n=f.n, cells=cells, plan=plan)


def emit_diagram(f: Polynomial, output_format: str = "svg", settings: Optional[Settings] = None) -> str:
    """
    Text of the diagram output: the SVG picture or the JSON document.

    Raises:
        DimensionMismatchError: svg requested for n != 3
        ValueError: unknown format
    """
    settings = settings or Settings()
    check_guards(f, settings.max_variables, settings.max_support)
    diagram = build_dual_diagram(f, settings.max_variables, settings.max_support)
    if output_format == "svg":
        return render_svg(export_simplex_projection(diagram), title=format_polynomial(f))
    if output_format == "json":
        return report_json(diagram_document(diagram))
    raise ValueError(f"unknown diagram format {output_format!r}")
