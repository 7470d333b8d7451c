"""
Dual Newton diagram.

The non-negative weight cone is subdivided into cells [P] of weights sharing
the face Delta(P). Cells correspond one-to-one to the proper faces of
Gamma_+(f); each one is built from the facets containing its face, whose
normals are the cell's extreme rays.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Literal, Optional, Tuple, Union

import numpy as np

from .config import MAX_SUPPORT, MAX_VARIABLES
from .errors import DimensionMismatchError, HypothesisError, NormalizationError
from .newton import (
    Face,
    Facet,
    WeightVector,
    d_and_face,
    face_dimension,
    facets,
    primitive_vector,
)
from .polynomial import Polynomial, face_polynomial, format_polynomial, variables_of

logger = logging.getLogger(__name__)

CellClass = Literal["positive", "vanishing", "nonvanishing"]


@dataclass(frozen=True)
class DualCell:
    """Equivalence class [P] of weights with a common face."""

    id: str
    face: Face
    cell_dim: int
    rep: WeightVector
    cell_class: CellClass
    d: Fraction
    I: frozenset
    var: frozenset
    itilde: frozenset
    var_inv: frozenset
    extreme_rays: Tuple[WeightVector, ...]

    @property
    def is_vertex(self) -> bool:
        """Ray of the diagram, i.e. the cell of a facet."""
        return self.cell_dim == 1

    @property
    def label(self) -> str:
        entries = self.rep.entries
        if self.is_vertex and sum(entries) == 1:
            return f"E{entries.index(Fraction(1)) + 1}"
        return str(self.rep)


@dataclass(frozen=True)
class DualDiagram:
    """All cells of the dual diagram plus the strict face-containment relation."""

    f: Polynomial
    facets: Tuple[Facet, ...]
    cells: Tuple[DualCell, ...]
    incidence: Dict[str, frozenset] = field(default_factory=dict)

    def cell(self, cell_id: str) -> DualCell:
        for cell in self.cells:
            if cell.id == cell_id:
                return cell
        raise KeyError(cell_id)

    def cell_of_face(self, face: Face) -> DualCell:
        for cell in self.cells:
            if cell.face.key() == face.key():
                return cell
        raise KeyError(face.key())

    def cell_of_weight(self, P: Union[WeightVector, Tuple]) -> DualCell:
        """Cell containing a weight vector."""
        _, face = d_and_face(P, self.f)
        return self.cell_of_face(face)

    def vertex_cells(self) -> List[DualCell]:
        return [cell for cell in self.cells if cell.is_vertex]

    def full_cells(self) -> List[DualCell]:
        return [cell for cell in self.cells if cell.cell_dim == self.f.n]

    def above(self, cell: DualCell) -> List[DualCell]:
        """Cells Q with Delta(Q) strictly containing Delta(cell)."""
        return [self.cell(cell_id) for cell_id in sorted(self.incidence[cell.id])]

    def counts(self) -> Dict[str, Dict[str, int]]:
        """Cell counts by dimension and by class."""
        by_dim: Dict[str, int] = {}
        by_class: Dict[str, int] = {}
        for cell in self.cells:
            by_dim[str(cell.cell_dim)] = by_dim.get(str(cell.cell_dim), 0) + 1
            by_class[cell.cell_class] = by_class.get(cell.cell_class, 0) + 1
        return {"by_dim": by_dim, "by_class": by_class}


def classify_weight(P: Union[WeightVector, Tuple], f: Polynomial) -> CellClass:
    """Positive if all entries > 0, else vanishing (d > 0) or nonvanishing (d = 0)."""
    weight = P if isinstance(P, WeightVector) else WeightVector(tuple(P))
    if weight.is_positive():
        return "positive"
    d, _ = d_and_face(weight, f)
    return "vanishing" if d > 0 else "nonvanishing"


def normalize(P: Union[WeightVector, Tuple], f: Polynomial) -> WeightVector:
    """P / d(P, f), so that d of the result is exactly 1."""
    weight = P if isinstance(P, WeightVector) else WeightVector(tuple(P))
    d, _ = d_and_face(weight, f)
    if d == 0:
        raise NormalizationError(f"weight {weight} has d(P)=0 and no normalized form")
    return WeightVector(tuple(p / d for p in weight.entries), is_normalized=True)


def _all_faces(facet_list: List[Facet], n: int) -> Dict[Tuple, Face]:
    faces = {facet.face.key(): facet.face for facet in facet_list}
    frontier = list(faces.values())
    while frontier:
        discovered = []
        for face in frontier:
            for facet in facet_list:
                on_points = face.on_points & facet.face.on_points
                if not on_points:
                    continue
                recession = face.recession & facet.face.recession
                candidate = Face(on_points, recession, face_dimension(on_points, recession, n))
                if candidate.key() not in faces:
                    faces[candidate.key()] = candidate
                    discovered.append(candidate)
        frontier = discovered
    return faces


def build_dual_diagram(
    f: Polynomial,
    max_variables: int = MAX_VARIABLES,
    max_support: int = MAX_SUPPORT,
) -> DualDiagram:
    """
    Build every cell of the dual Newton diagram of f.

    Args:
        f: Non-zero polynomial
        max_variables: Guard on n
        max_support: Guard on the number of terms

    Returns:
        DualDiagram with cells ordered by (cell_dim, face)
    """
    n = f.n
    facet_list = facets(f, max_variables=max_variables, max_support=max_support)
    faces = _all_faces(facet_list, n)

    drafts = []
    for face in faces.values():
        rays = [facet for facet in facet_list if facet.face.contains(face)]
        summed = [sum(column, Fraction(0)) for column in zip(*(ray.normal.entries for ray in rays))]
        rep = WeightVector(tuple(Fraction(p) for p in primitive_vector(summed)))
        d, rep_face = d_and_face(rep, f)
        if rep_face.key() != face.key():
            raise RuntimeError(f"representative {rep} does not reach face {face.key()}")
        drafts.append((n - face.dim, face, rep, d, tuple(ray.normal for ray in rays)))
    drafts.sort(key=lambda draft: (draft[0], draft[1].key()))

    classes = []
    for _, _, rep, d, _ in drafts:
        if rep.is_positive():
            classes.append("positive")
        else:
            classes.append("vanishing" if d > 0 else "nonvanishing")

    incidence: Dict[str, frozenset] = {}
    cells = []
    for index, (cell_dim, face, rep, d, rays) in enumerate(drafts):
        above = [
            other
            for other, draft in enumerate(drafts)
            if draft[1].contains(face) and draft[1].key() != face.key()
        ]
        incidence[f"C{index}"] = frozenset(f"C{other}" for other in above)
        closure = [index] + above
        itilde = frozenset().union(
            *(drafts[q][2].zero_indices() for q in closure if classes[q] == "vanishing")
        )
        var = variables_of(face_polynomial(f, face.on_points))
        cells.append(
            DualCell(
                id=f"C{index}",
                face=face,
                cell_dim=cell_dim,
                rep=rep,
                cell_class=classes[index],
                d=d,
                I=rep.zero_indices(),
                var=var,
                itilde=itilde,
                var_inv=var - itilde,
                extreme_rays=rays,
            )
        )

    diagram = DualDiagram(f, tuple(facet_list), tuple(cells), incidence)
    logger.info("dual diagram: %d cells %s", len(cells), diagram.counts()["by_dim"])
    return diagram


def variable_sets(cell: DualCell, f: Polynomial) -> Tuple[frozenset, frozenset, frozenset, frozenset]:
    """(Var, I, I~, Var~) of a cell in W+ or W_v."""
    if cell.cell_class == "nonvanishing":
        raise HypothesisError(f"variable sets are undefined for nonvanishing cell {cell.id}")
    var = variables_of(face_polynomial(f, cell.face.on_points))
    return var, cell.I, cell.itilde, var - cell.itilde


def theta_prime(cell: DualCell, f: Polynomial) -> Fraction:
    """
    Ratio value theta(P)' of a cell in W+ or W_v.

    Vertex faces give 1 - 1/|nu|; higher faces give 1 - min of the normalized
    representative over the invulnerable variables.
    """
    if cell.cell_class == "nonvanishing":
        raise HypothesisError(f"theta' is undefined for nonvanishing cell {cell.id}")
    if cell.face.dim == 0:
        (nu,) = tuple(cell.face.on_points)
        if sum(nu) == 0:
            raise HypothesisError("constant term: f does not vanish at the origin")
        return 1 - Fraction(1, sum(nu))
    if not cell.var_inv:
        raise HypothesisError(f"cell {cell.id} has no invulnerable variables")
    normalized = normalize(cell.rep, f)
    return 1 - min(normalized.entries[j - 1] for j in cell.var_inv)


def safe_theta_prime(cell: DualCell, f: Polynomial) -> Optional[Fraction]:
    """theta' or None where it is undefined."""
    try:
        return theta_prime(cell, f)
    except HypothesisError:
        return None


# ---------------------------------------------------------------------------
# Simplex projection (n = 3 pictures)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanPoint:
    bary: Tuple[Fraction, Fraction, Fraction]
    label: str
    cell_class: CellClass
    cell_id: str
    theta_prime: Optional[Fraction]


@dataclass(frozen=True)
class PlanSegment:
    ends: Tuple[Tuple[Fraction, Fraction, Fraction], Tuple[Fraction, Fraction, Fraction]]
    cell_class: CellClass
    cell_id: str
    theta_prime: Optional[Fraction]


@dataclass(frozen=True)
class PlanRegion:
    vertices: Tuple[Tuple[Fraction, Fraction, Fraction], ...]
    cell_class: CellClass
    cell_id: str
    monomial: str
    value: Optional[Fraction]


@dataclass(frozen=True)
class SimplexPlan:
    """Points, segments and regions of the diagram cut by p1 + p2 + p3 = 1."""

    points: Tuple[PlanPoint, ...]
    segments: Tuple[PlanSegment, ...]
    regions: Tuple[PlanRegion, ...]


# screen corners of E1, E2, E3 in a unit equilateral triangle
SIMPLEX_CORNERS = np.array([[1.0, 0.0], [0.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]])


def barycentric(P: WeightVector) -> Tuple[Fraction, Fraction, Fraction]:
    total = sum(P.entries, Fraction(0))
    return tuple(p / total for p in P.entries)


def to_unit_triangle(bary: Tuple[Fraction, ...]) -> np.ndarray:
    """Float position of a barycentric point inside the unit triangle."""
    return np.array([float(b) for b in bary]) @ SIMPLEX_CORNERS


def _cyclic_order(points: List[Tuple[Fraction, Fraction, Fraction]]) -> List[Tuple[Fraction, Fraction, Fraction]]:
    coords = np.array([to_unit_triangle(point) for point in points])
    centre = coords.mean(axis=0)
    angles = np.arctan2(coords[:, 1] - centre[1], coords[:, 0] - centre[0])
    return [points[i] for i in np.argsort(angles, kind="stable")]


def export_simplex_projection(diagram: DualDiagram) -> SimplexPlan:
    """Cut the diagram by the plane p1 + p2 + p3 = 1 (n = 3 only)."""
    f = diagram.f
    if f.n != 3:
        raise DimensionMismatchError(f"simplex projection needs n=3, got n={f.n}")

    points, segments, regions = [], [], []
    for cell in diagram.cells:
        value = None if cell.cell_class == "nonvanishing" else safe_theta_prime(cell, f)
        ends = [barycentric(ray) for ray in cell.extreme_rays]
        if cell.cell_dim == 1:
            points.append(PlanPoint(barycentric(cell.rep), cell.label, cell.cell_class, cell.id, value))
        elif cell.cell_dim == 2:
            segments.append(PlanSegment((ends[0], ends[1]), cell.cell_class, cell.id, value))
        else:
            (nu,) = tuple(cell.face.on_points)
            regions.append(
                PlanRegion(
                    tuple(_cyclic_order(ends)),
                    cell.cell_class,
                    cell.id,
                    format_polynomial(Polynomial.monomial(nu)),
                    value,
                )
            )
    return SimplexPlan(tuple(points), tuple(segments), tuple(regions))
