"""
Pydantic models of every document the command line writes.

All rationals are strings "p/q"; no float ever enters a report except the
coefficients of numeric witness curves.
"""

from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict

from ..core.config import REPORT_SCHEMA

Rational = str

DIAGRAM_SCHEMA = "loja-diagram/1"


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CertificateModel(_Document):
    kind: Literal["nondegenerate", "inv_tame"]
    status: Literal["Certified", "Refuted", "Undecided", "Assumed"]
    reason: str
    criterion: Optional[str] = None
    partial: Optional[int] = None
    witness: Optional[List[Rational]] = None


class AxisModel(_Document):
    b: List[Optional[int]]
    B: Optional[int]
    I_B: List[int]


class DiagramSummaryModel(_Document):
    cells: int
    by_dim: Dict[str, int]
    by_class: Dict[str, int]


class FacetVertexModel(_Document):
    """A ray of the dual diagram, i.e. the cell of a facet."""

    cell_id: str
    label: str
    normal: List[int]
    d: Rational
    cell_class: Literal["positive", "vanishing", "nonvanishing"]
    normalized: Optional[List[Rational]] = None
    theta_prime: Optional[Rational] = None
    var: List[int]
    itilde: List[int]
    var_inv: List[int]
    certificates: List[CertificateModel] = []


class RegionModel(_Document):
    cell_id: str
    monomial: str
    exponent: List[int]
    degree: int
    value: Rational


class ContributionModel(_Document):
    cell_id: str
    label: str
    value: Rational
    certificate_status: str
    monomial_partials: List[int] = []


class EqualityCertificateModel(_Document):
    j: int
    B: int
    curve_weights: List[int]


class BoundModel(_Document):
    kind: Literal["convenient", "general", "refined", "product"]
    label: str
    bound: Rational
    status: Literal["certified", "conditional"]
    B: Optional[int] = None
    theta_tilde: Optional[Rational] = None
    L: Optional[Rational] = None
    attained_by: Optional[str] = None
    equality_certificate: Optional[EqualityCertificateModel] = None
    lower: Optional[Rational] = None
    per_cell: List[ContributionModel] = []
    assumptions: List[str] = []


class ProbeModel(_Document):
    name: str
    curve: dict
    ord_f: Rational
    ord_grad: Rational
    theta: Rational
    truncation_used: Rational
    exactness: Literal["exact", "numeric"]
    tolerance: Optional[float] = None
    partial_orders: List[Optional[Rational]]


class WitnessModel(_Document):
    """Best curve of a witness search or sweep."""

    weight: List[int]
    curve: dict
    theta: Rational
    ord_f: Rational
    ord_grad: Rational
    curves_probed: int


class InputModel(_Document):
    polynomial: str
    flags: Dict[str, Union[bool, int, str, None]]


class AnalysisReport(_Document):
    """Everything `analyze` knows about one polynomial."""

    schema_version: Literal["loja-report/1"] = REPORT_SCHEMA
    tool_version: str
    input: InputModel
    n: int
    support: List[List[int]]
    convenience_level: int
    axis: AxisModel
    diagram: DiagramSummaryModel
    facet_vertices: List[FacetVertexModel]
    regions: List[RegionModel]
    bounds: Dict[str, BoundModel]
    probes: List[ProbeModel] = []
    witness: Optional[WitnessModel] = None
    assumptions: List[str] = []
    status: Literal["certified", "conditional"]
    content_hash: str = ""


class CellModel(_Document):
    id: str
    cell_dim: int
    rep: List[int]
    cell_class: Literal["positive", "vanishing", "nonvanishing"]
    d: Rational
    face_points: List[List[int]]
    recession: List[int]
    I: List[int]
    itilde: List[int]
    var_inv: List[int]
    theta_prime: Optional[Rational] = None
    extreme_rays: List[List[int]]
    above: List[str]


class PlanPointModel(_Document):
    bary: List[Rational]
    label: str
    cell_class: Literal["positive", "vanishing", "nonvanishing"]
    cell_id: str
    theta_prime: Optional[Rational] = None


class PlanSegmentModel(_Document):
    ends: List[List[Rational]]
    cell_class: Literal["positive", "vanishing", "nonvanishing"]
    cell_id: str
    theta_prime: Optional[Rational] = None


class PlanRegionModel(_Document):
    vertices: List[List[Rational]]
    cell_class: Literal["positive", "vanishing", "nonvanishing"]
    cell_id: str
    monomial: str
    value: Optional[Rational] = None


class SimplexPlanModel(_Document):
    points: List[PlanPointModel]
    segments: List[PlanSegmentModel]
    regions: List[PlanRegionModel]


class DiagramDocument(_Document):
    """Cells of the dual diagram, plus the simplex section when n = 3."""

    schema_version: Literal["loja-diagram/1"] = DIAGRAM_SCHEMA
    polynomial: str
    n: int
    cells: List[CellModel]
    plan: Optional[SimplexPlanModel] = None
