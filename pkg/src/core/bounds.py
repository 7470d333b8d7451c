"""
Upper bounds for the Lojasiewicz gradient exponent theta0(f).

Four bound kinds are produced from the dual Newton diagram and the axis data:
the convenient bound 1 - 1/B, the general bound max{L, theta~}, its refinement
through monomial partial derivatives, and the product bound 1 - 1/B~ for
f1^m1 * ... * fk^mk. Helpers convert between theta0 and eta0 and pull theta0
back along z -> z^m.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from .config import MAX_SUPPORT, MAX_VARIABLES
from .dual_diagram import DualCell, DualDiagram, build_dual_diagram, normalize, theta_prime
from .errors import DimensionMismatchError, HypothesisError
from .newton import axis_data, is_convenient, polyhedron_vertices
from .polynomial import ExponentVector, Polynomial, face_polynomial, power, product
from .tameness import Certificate, certify_diagram, monomial_partials

logger = logging.getLogger(__name__)

BoundKind = Literal["convenient", "general", "refined", "product"]
BoundStatus = Literal["certified", "conditional"]
MonomialTag = Literal["lojasiewicz_nonexceptional", "lojasiewicz_exceptional", "plain"]

# worst certificate status wins when summarizing a cell
_STATUS_RANK = {"Certified": 0, "Assumed": 1, "Undecided": 2, "Refuted": 3}

REFINED_NOTE = "monomial-partial refinement is heuristic; the general bound is the certified figure"


@dataclass(frozen=True)
class AxisMonomial:
    """Axis monomial z_j^b_j with its Lojasiewicz tag."""

    j: int
    b: int
    tag: MonomialTag
    witness: Optional[ExponentVector] = None


@dataclass(frozen=True)
class EqualityCertificate:
    """Non-exceptional monomial z_j^B and the curve z_j = t, z_k = t^N attaining 1 - 1/B."""

    j: int
    B: int
    curve_weights: Tuple[int, ...]


@dataclass(frozen=True)
class CellContribution:
    """One cell's share of a diagram bound."""

    cell_id: str
    label: str
    value: Fraction
    certificate_status: str
    monomial_partials: Tuple[int, ...] = ()


@dataclass(frozen=True)
class BoundReport:
    """
    Result of one bound computation.

    `bound` is certified only when every certificate it consumed holds; a
    conditional bound is still the value the formula gives.
    """

    kind: BoundKind
    bound: Fraction
    status: BoundStatus
    B: Optional[int] = None
    theta_tilde: Optional[Fraction] = None
    L: Optional[Fraction] = None
    attained_by: Optional[str] = None
    equality_certificate: Optional[EqualityCertificate] = None
    per_cell: Tuple[CellContribution, ...] = ()
    assumptions: Tuple[str, ...] = ()
    lower: Optional[Fraction] = None

    @property
    def label(self) -> str:
        if self.kind == "refined":
            return "refined (monomial-partial technique)"
        return self.kind

    def interval(self) -> Tuple[Optional[Fraction], Fraction]:
        """[lower, bound]; the lower end is an exact value only with an equality certificate."""
        if self.equality_certificate is not None:
            return self.bound, self.bound
        return self.lower, self.bound


@dataclass(frozen=True)
class ProductFamily:
    """Members f1..fk and multiplicities m1..mk of g = f1^m1 * ... * fk^mk."""

    members: Tuple[Polynomial, ...]
    multiplicities: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        members = tuple(self.members)
        multiplicities = tuple(self.multiplicities) or (1,) * len(members)
        if not members:
            raise ValueError("a product family needs at least one member")
        if len(multiplicities) != len(members):
            raise ValueError(f"{len(members)} members but {len(multiplicities)} multiplicities")
        if any(int(m) < 1 for m in multiplicities):
            raise ValueError(f"multiplicities must be positive, got {multiplicities}")
        if len({f.n for f in members}) != 1:
            raise DimensionMismatchError("product family members live in different dimensions")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "multiplicities", tuple(int(m) for m in multiplicities))

    @property
    def n(self) -> int:
        return self.members[0].n

    def expand(self) -> Polynomial:
        """The product polynomial g."""
        return product([power(f, m) for f, m in zip(self.members, self.multiplicities)])


def _require_singular_point(f: Polynomial):
    if f.is_zero():
        raise HypothesisError("the zero polynomial has no Lojasiewicz exponent")
    if any(sum(nu) == 0 for nu in f.support):
        raise HypothesisError("f(0) != 0: the constant term must vanish")


def _summarize(
    certificates: Dict[str, List[Certificate]],
    kinds: Sequence[str] = ("nondegenerate", "inv_tame"),
) -> Tuple[BoundStatus, Tuple[str, ...]]:
    status: BoundStatus = "certified"
    notes = []
    for cell_id in sorted(certificates, key=lambda key: int(key[1:])):
        for certificate in certificates[cell_id]:
            if certificate.kind not in kinds:
                continue
            name = certificate.kind.replace("_", "-")
            if certificate.status == "Assumed":
                notes.append(f"{name} assumed on {cell_id}")
            elif certificate.status == "Undecided":
                status = "conditional"
                notes.append(f"{name} undecided on {cell_id}")
            elif certificate.status == "Refuted":
                status = "conditional"
                notes.append(f"{name} violated on {cell_id}")
    return status, tuple(notes)


def _cell_status(certificates: Dict[str, List[Certificate]], cell: DualCell) -> str:
    held = certificates.get(cell.id, [])
    if not held:
        return "none"
    return max((c.status for c in held), key=lambda status: _STATUS_RANK[status])


def _prepare(
    f: Polynomial,
    diagram: Optional[DualDiagram],
    certificates: Optional[Dict[str, List[Certificate]]],
    assume_nondegenerate: bool,
    assume_inv_tame: bool,
    max_variables: int,
    max_support: int,
) -> Tuple[DualDiagram, Dict[str, List[Certificate]]]:
    _require_singular_point(f)
    if diagram is None:
        diagram = build_dual_diagram(f, max_variables=max_variables, max_support=max_support)
    if certificates is None:
        certificates = certify_diagram(diagram, assume_nondegenerate, assume_inv_tame)
    return diagram, certificates


def exceptional_monomials(f: Polynomial) -> List[AxisMonomial]:
    """
    Tag every axis monomial of f.

    z_j^B is exceptional when f contains some z_j^B' * z_k with k != j and
    1 <= B' < B - 1; the first such exponent is kept as witness.

    Returns:
        Axis monomials sorted by variable index
    """
    axis = axis_data(f)
    if axis.B is None:
        raise HypothesisError("f has no axis monomial")
    result = []
    for j, b in enumerate(axis.b, start=1):
        if b is None:
            continue
        if b != axis.B:
            result.append(AxisMonomial(j, b, "plain"))
            continue
        witness = None
        for nu in f.support:
            others = [k for k, e in enumerate(nu, start=1) if k != j and e > 0]
            if len(others) == 1 and nu[others[0] - 1] == 1 and 1 <= nu[j - 1] < axis.B - 1:
                witness = nu
                break
        tag: MonomialTag = "lojasiewicz_exceptional" if witness else "lojasiewicz_nonexceptional"
        result.append(AxisMonomial(j, b, tag, witness))
    return result


def _equality_certificate(f: Polynomial, B: int) -> Optional[EqualityCertificate]:
    for monomial in exceptional_monomials(f):
        if monomial.tag == "lojasiewicz_nonexceptional":
            weights = tuple(1 if k == monomial.j else B + 1 for k in range(1, f.n + 1))
            return EqualityCertificate(monomial.j, B, weights)
    return None


def bound_convenient(
    f: Polynomial,
    diagram: Optional[DualDiagram] = None,
    certificates: Optional[Dict[str, List[Certificate]]] = None,
    assume_nondegenerate: bool = False,
    max_variables: int = MAX_VARIABLES,
    max_support: int = MAX_SUPPORT,
) -> BoundReport:
    """
    theta0(f) <= 1 - 1/B for a convenient non-degenerate f.

    Equality is certified when a non-exceptional Lojasiewicz monomial exists.
    """
    _require_singular_point(f)
    if not is_convenient(f):
        raise HypothesisError("bound_convenient needs a convenient polynomial")
    diagram, certificates = _prepare(
        f, diagram, certificates, assume_nondegenerate, False, max_variables, max_support
    )
    status, notes = _summarize(certificates, kinds=("nondegenerate",))
    B = axis_data(f).B
    bound = 1 - Fraction(1, B)
    report = BoundReport(
        kind="convenient",
        bound=bound,
        status=status,
        B=B,
        attained_by=f"z{axis_data(f).b.index(B) + 1}^{B}",
        equality_certificate=_equality_certificate(f, B),
        assumptions=notes,
    )
    logger.info("convenient bound %s (B=%d, %s)", bound, B, status)
    return report


def _vertex_cells(diagram: DualDiagram) -> List[DualCell]:
    return [cell for cell in diagram.vertex_cells() if cell.cell_class != "nonvanishing"]


def bound_general(
    f: Polynomial,
    diagram: Optional[DualDiagram] = None,
    certificates: Optional[Dict[str, List[Certificate]]] = None,
    assume_nondegenerate: bool = False,
    assume_inv_tame: bool = False,
    max_variables: int = MAX_VARIABLES,
    max_support: int = MAX_SUPPORT,
) -> BoundReport:
    """
    theta0(f) <= max{L, theta~} for non-degenerate strongly inv-tame f.

    theta~ is the largest theta' over facet-vertex cells in W+ or W_v; L is the
    largest 1 - 1/|nu| over vertices of the Newton polyhedron.

    Raises:
        HypothesisError: f(0) != 0, or a facet vertex has no invulnerable variable
    """
    diagram, certificates = _prepare(
        f, diagram, certificates, assume_nondegenerate, assume_inv_tame, max_variables, max_support
    )
    contributions = [
        CellContribution(cell.id, cell.label, theta_prime(cell, f), _cell_status(certificates, cell))
        for cell in _vertex_cells(diagram)
    ]
    regions = [(1 - Fraction(1, size), nu) for nu, size in polyhedron_vertices(f, list(diagram.facets))]
    L = max((value for value, _ in regions), default=None)
    theta_tilde = max((c.value for c in contributions), default=None)

    candidates = [(c.value, c.label) for c in contributions]
    candidates += [(value, f"region {nu}") for value, nu in regions]
    bound, attained_by = max(candidates, key=lambda item: item[0])
    status, notes = _summarize(certificates)
    logger.info("general bound %s (theta~=%s, L=%s, %s)", bound, theta_tilde, L, status)
    return BoundReport(
        kind="general",
        bound=bound,
        status=status,
        theta_tilde=theta_tilde,
        L=L,
        attained_by=attained_by,
        per_cell=tuple(contributions),
        assumptions=notes,
    )


def _partial_drop(ray: DualCell, f: Polynomial, partials: Sequence[int]) -> Fraction:
    normalized = normalize(ray.rep, f)
    return 1 - max(normalized.entries[j - 1] for j in partials)


def _vertex_contribution(cell: DualCell, f: Polynomial) -> Tuple[Fraction, Tuple[int, ...]]:
    partials = tuple(monomial_partials(face_polynomial(f, cell.face.on_points), cell.var_inv))
    if partials:
        return _partial_drop(cell, f, partials), partials
    return theta_prime(cell, f), ()


def refine_bound(
    f: Polynomial,
    diagram: Optional[DualDiagram] = None,
    certificates: Optional[Dict[str, List[Certificate]]] = None,
    assume_nondegenerate: bool = False,
    assume_inv_tame: bool = False,
    max_variables: int = MAX_VARIABLES,
    max_support: int = MAX_SUPPORT,
) -> BoundReport:
    """
    Heuristic tightening of the general bound from single-monomial partials.

    A partial dz_j of the face function that is one monomial never vanishes on
    the torus, which suggests theta <= 1 - p^_j along curves of weight P. Curves
    whose leading terms cancel in f escape this estimate, so the result is
    always conditional and the general bound remains the certified figure. Facet vertices use
    their own face; higher cells use theirs and take the maximum over their
    W+/W_v extreme rays; full cells contribute their region value.
    """
    diagram, certificates = _prepare(
        f, diagram, certificates, assume_nondegenerate, assume_inv_tame, max_variables, max_support
    )
    general = bound_general(f, diagram=diagram, certificates=certificates)

    vertex_values: Dict[str, Fraction] = {}
    contributions = []
    for cell in _vertex_cells(diagram):
        value, partials = _vertex_contribution(cell, f)
        vertex_values[cell.id] = value
        contributions.append(CellContribution(cell.id, cell.label, value, _cell_status(certificates, cell), partials))

    rays_by_normal = {cell.rep.entries: cell for cell in _vertex_cells(diagram)}
    for cell in diagram.cells:
        if cell.is_vertex or cell.cell_class == "nonvanishing":
            continue
        if cell.face.dim == 0:
            (nu,) = tuple(cell.face.on_points)
            value, partials = 1 - Fraction(1, sum(nu)), ()
        else:
            rays = [
                rays_by_normal[ray.entries]
                for ray in cell.extreme_rays
                if ray.entries in rays_by_normal
            ]
            partials = tuple(monomial_partials(face_polynomial(f, cell.face.on_points), cell.var_inv))
            if partials:
                value = max(_partial_drop(ray, f, partials) for ray in rays)
            else:
                value = max(vertex_values[ray.id] for ray in rays)
        contributions.append(CellContribution(cell.id, cell.label, value, _cell_status(certificates, cell), partials))

    best = max(contributions, key=lambda c: c.value)
    bound = min(best.value, general.bound)
    logger.info("refined bound %s from %s (general %s)", bound, best.cell_id, general.bound)
    return BoundReport(
        kind="refined",
        bound=bound,
        status="conditional",
        theta_tilde=general.theta_tilde,
        L=general.L,
        attained_by=best.label,
        per_cell=tuple(contributions),
        assumptions=general.assumptions + (REFINED_NOTE,),
    )


def bound_product(family: ProductFamily, assume_nondegenerate: bool = False) -> BoundReport:
    """
    theta0(g) <= 1 - 1/B~ for g = f1^m1 * ... * fk^mk.

    B~ = max_j sum_a m_a * b_{a,j} comes from the member axis data; the product
    is expanded only to scan for a non-exceptional monomial.
    """
    sums = [0] * family.n
    for index, (f, m) in enumerate(zip(family.members, family.multiplicities), start=1):
        _require_singular_point(f)
        if not is_convenient(f):
            raise HypothesisError(f"product member {index} is not convenient")
        for j, b in enumerate(axis_data(f).b):
            sums[j] += m * b
    B_tilde = max(sums)
    g = family.expand()

    if assume_nondegenerate:
        status: BoundStatus = "certified"
        notes: Tuple[str, ...] = ("complete-intersection non-degeneracy assumed",)
    else:
        status, notes = "conditional", ("complete-intersection non-degeneracy not certified",)
    bound = 1 - Fraction(1, B_tilde)
    logger.info("product bound %s (B~=%d from %s)", bound, B_tilde, sums)
    return BoundReport(
        kind="product",
        bound=bound,
        status=status,
        B=B_tilde,
        attained_by=f"z{sums.index(B_tilde) + 1}",
        equality_certificate=_equality_certificate(g, B_tilde),
        assumptions=notes,
    )


def power_exponent(theta0: Fraction, m: int) -> Fraction:
    """theta0 of f^m given theta0 of f: (m - 1)/m + theta0/m."""
    theta0 = Fraction(theta0)
    if not 0 <= theta0 < 1:
        raise ValueError(f"theta0 must lie in [0, 1), got {theta0}")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return Fraction(m - 1, m) + theta0 / m


def eta_theta_convert(value: Fraction, direction: Literal["eta_to_theta", "theta_to_eta"]) -> Fraction:
    """theta = eta / (1 + eta) and its inverse eta = theta / (1 - theta)."""
    value = Fraction(value)
    if direction == "eta_to_theta":
        if value < 0:
            raise ValueError(f"eta must be non-negative, got {value}")
        return value / (1 + value)
    if direction == "theta_to_eta":
        if not 0 <= value < 1:
            raise ValueError(f"theta must lie in [0, 1), got {value}")
        return value / (1 - value)
    raise ValueError(f"unknown direction {direction!r}")
