"""
Certificates for the non-degeneracy and strong inv-tameness hypotheses.

Both hypotheses ask that a face polynomial has no critical point on the torus
(in all variables, or in the invulnerable ones). Only sound sufficient
criteria certify; refutations carry an exact rational torus point.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product as cartesian
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

import sympy

from .config import REFUTATION_GRID
from .dual_diagram import DualCell, DualDiagram
from .errors import HypothesisError
from .polynomial import Polynomial, evaluate, face_polynomial, partial_derivative, variables_of

logger = logging.getLogger(__name__)

CertificateStatus = Literal["Certified", "Refuted", "Undecided", "Assumed"]
CertificateKind = Literal["nondegenerate", "inv_tame"]


@dataclass(frozen=True)
class Certificate:
    """Outcome of a hypothesis check on one cell, with its evidence."""

    kind: CertificateKind
    status: CertificateStatus
    reason: str
    cell_id: str
    criterion: Optional[str] = None
    partial: Optional[int] = None
    witness: Optional[Tuple[Fraction, ...]] = None

    @property
    def holds(self) -> bool:
        """True when a bound may rely on the hypothesis."""
        return self.status in ("Certified", "Assumed")


def monomial_partials(face_poly: Polynomial, indices: Iterable[int]) -> List[int]:
    """Indices j whose partial derivative of the face polynomial is a single monomial."""
    return [j for j in sorted(indices) if len(partial_derivative(face_poly, j).terms) == 1]


def exponents_independent(face_poly: Polynomial, coordinates: Iterable[int]) -> bool:
    """Face exponents, restricted to `coordinates`, are linearly independent over Q."""
    columns = sorted(coordinates)
    rows = [[nu[j - 1] for j in columns] for nu in face_poly.support]
    if not rows or not columns or len(rows) > len(columns):
        return False
    return int(sympy.Matrix(rows).rank()) == len(rows)


def find_torus_critical_point(
    face_poly: Polynomial,
    partial_indices: Iterable[int],
    grid: Sequence[Fraction] = REFUTATION_GRID,
    witnesses: Iterable[Sequence[Fraction]] = (),
) -> Optional[Tuple[Fraction, ...]]:
    """
    Search for a torus point where the chosen partials all vanish.

    User witnesses are tried first, then the grid over the variables that
    occur in the face polynomial (the others are set to 1).

    Returns:
        The exact point, or None
    """
    n = face_poly.n
    partials = [partial_derivative(face_poly, j) for j in sorted(partial_indices)]
    candidates: List[Tuple[Fraction, ...]] = [tuple(Fraction(x) for x in w) for w in witnesses]
    active = sorted(variables_of(face_poly))
    for values in cartesian(grid, repeat=len(active)):
        point = [Fraction(1)] * n
        for j, value in zip(active, values):
            point[j - 1] = value
        candidates.append(tuple(point))

    for point in candidates:
        if len(point) != n or any(x == 0 for x in point):
            continue
        if all(evaluate(partial, point) == 0 for partial in partials):
            return point
    return None


def inv_tame_certificate(
    f: Polynomial,
    cell: DualCell,
    grid: Sequence[Fraction] = REFUTATION_GRID,
    witnesses: Iterable[Sequence[Fraction]] = (),
) -> Certificate:
    """Strong inv-tameness of f for a cell with a face of dimension >= 1."""
    if cell.cell_class == "nonvanishing" or cell.face.dim < 1:
        raise HypothesisError(f"inv-tameness is only checked on W+ and W_v cells with dim >= 1 faces, not {cell.id}")
    if not cell.var_inv:
        return Certificate("inv_tame", "Refuted", "invulnerable variable set empty", cell.id, "empty")

    face_poly = face_polynomial(f, cell.face.on_points)
    monomial = monomial_partials(face_poly, cell.var_inv)
    if monomial:
        j = monomial[0]
        return Certificate("inv_tame", "Certified", f"monomial partial d/dz{j}", cell.id, "monomial_partial", partial=j)
    if exponents_independent(face_poly, cell.var_inv):
        return Certificate(
            "inv_tame", "Certified", "face exponents independent on invulnerable variables", cell.id, "independent_exponents"
        )
    point = find_torus_critical_point(face_poly, cell.var_inv, grid, witnesses)
    if point is not None:
        return Certificate("inv_tame", "Refuted", "exact torus witness point", cell.id, "torus_witness", witness=point)
    return Certificate("inv_tame", "Undecided", "no criterion applied", cell.id)


def nondegeneracy_certificate(
    f: Polynomial,
    cell: DualCell,
    grid: Sequence[Fraction] = REFUTATION_GRID,
    witnesses: Iterable[Sequence[Fraction]] = (),
) -> Certificate:
    """Newton non-degeneracy of f on a strictly positive cell."""
    if cell.cell_class != "positive":
        raise HypothesisError(f"non-degeneracy is checked on positive cells only, not {cell.id}")

    face_poly = face_polynomial(f, cell.face.on_points)
    if len(face_poly.terms) == 1:
        return Certificate("nondegenerate", "Certified", "face is a single monomial", cell.id, "monomial_face")
    if exponents_independent(face_poly, range(1, f.n + 1)):
        return Certificate("nondegenerate", "Certified", "face exponents linearly independent", cell.id, "independent_exponents")
    point = find_torus_critical_point(face_poly, range(1, f.n + 1), grid, witnesses)
    if point is not None:
        return Certificate("nondegenerate", "Refuted", "exact torus critical point", cell.id, "torus_witness", witness=point)
    return Certificate("nondegenerate", "Undecided", "no criterion applied", cell.id)


def verify_certificate(f: Polynomial, cell: DualCell, certificate: Certificate) -> bool:
    """Re-check the evidence of a Certified or Refuted certificate independently."""
    face_poly = face_polynomial(f, cell.face.on_points)
    if certificate.criterion == "monomial_face":
        return len(face_poly.terms) == 1
    if certificate.criterion == "monomial_partial":
        derivative = partial_derivative(face_poly, certificate.partial)
        return certificate.partial in cell.var_inv and len(derivative.terms) == 1
    if certificate.criterion == "independent_exponents":
        columns = sorted(cell.var_inv) if certificate.kind == "inv_tame" else list(range(1, f.n + 1))
        matrix = sympy.Matrix([[nu[j - 1] for j in columns] for nu in face_poly.support])
        return matrix.rank() == len(face_poly.terms)
    if certificate.criterion == "torus_witness":
        indices = cell.var_inv if certificate.kind == "inv_tame" else range(1, f.n + 1)
        point = certificate.witness
        return all(x != 0 for x in point) and all(
            evaluate(partial_derivative(face_poly, j), point) == 0 for j in indices
        )
    if certificate.criterion == "empty":
        return not cell.var_inv
    return False


def certify_diagram(
    diagram: DualDiagram,
    assume_nondegenerate: bool = False,
    assume_inv_tame: bool = False,
    grid: Sequence[Fraction] = REFUTATION_GRID,
    witnesses: Iterable[Sequence[Fraction]] = (),
) -> Dict[str, List[Certificate]]:
    """
    Every certificate the bounds consume, keyed by cell id.

    Positive cells get a non-degeneracy certificate; cells in W+ or W_v with a
    face of dimension >= 1 get an inv-tameness certificate. Undecided results
    become Assumed when the matching flag is set.
    """
    f = diagram.f
    witnesses = list(witnesses)
    result: Dict[str, List[Certificate]] = {}
    for cell in diagram.cells:
        certificates = []
        if cell.cell_class == "positive":
            certificates.append(nondegeneracy_certificate(f, cell, grid, witnesses))
        if cell.cell_class != "nonvanishing" and cell.face.dim >= 1:
            certificates.append(inv_tame_certificate(f, cell, grid, witnesses))
        for position, certificate in enumerate(certificates):
            flag = assume_nondegenerate if certificate.kind == "nondegenerate" else assume_inv_tame
            if certificate.status == "Undecided" and flag:
                option = "--assume-nondegenerate" if certificate.kind == "nondegenerate" else "--assume-inv-tame"
                certificates[position] = replace(certificate, status="Assumed", reason=f"user flag {option}")
        if certificates:
            result[cell.id] = certificates
    refuted = sum(1 for certs in result.values() for c in certs if c.status == "Refuted")
    undecided = sum(1 for certs in result.values() for c in certs if c.status == "Undecided")
    logger.info("certificates: %d cells, %d refuted, %d undecided", len(result), refuted, undecided)
    return result
