"""
Newton polyhedron of a polynomial.

Gamma_+(f) = conv(support) + R_+^n. Everything here is exact: weight vectors
are tuples of Fractions, facet normals are primitive integer vectors, and the
linear algebra runs through sympy matrices over the rationals.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import sympy

from .config import MAX_SUPPORT, MAX_VARIABLES
from .errors import GuardExceededError, ZeroPolynomialError
from .polynomial import ExponentVector, Polynomial, restrict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightVector:
    """Non-negative rational weight P = (p1, ..., pn)."""

    entries: Tuple[Fraction, ...]
    is_normalized: bool = False

    def __post_init__(self):
        entries = tuple(Fraction(p) for p in self.entries)
        if any(p < 0 for p in entries):
            raise ValueError(f"weight entries must be non-negative: {entries}")
        if not any(p > 0 for p in entries):
            raise ValueError("weight vector must have a positive entry")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *values) -> "WeightVector":
        return cls(tuple(Fraction(v) for v in values))

    @property
    def n(self) -> int:
        return len(self.entries)

    def pairing(self, exponent: Sequence[int]) -> Fraction:
        """<P, nu>."""
        return sum((p * e for p, e in zip(self.entries, exponent)), Fraction(0))

    def zero_indices(self) -> frozenset:
        """I(P) = {j : p_j = 0}, 1-based."""
        return frozenset(j for j, p in enumerate(self.entries, start=1) if p == 0)

    def is_positive(self) -> bool:
        return all(p > 0 for p in self.entries)

    def as_integers(self) -> Tuple[int, ...]:
        """Entries of an integral weight vector as ints."""
        if any(p.denominator != 1 for p in self.entries):
            raise ValueError(f"weight {self} is not integral")
        return tuple(int(p) for p in self.entries)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.entries) + ")"


@dataclass(frozen=True)
class Face:
    """Face Delta(P) of Gamma_+: support points on it plus recession directions."""

    on_points: frozenset
    recession: frozenset
    dim: int

    def contains(self, other: "Face") -> bool:
        """Face inclusion (faces are conv(on_points) + cone(e_j, j in recession))."""
        return self.on_points >= other.on_points and self.recession >= other.recession

    def sorted_points(self) -> List[ExponentVector]:
        return sorted(self.on_points)

    def key(self) -> Tuple:
        return (tuple(sorted(self.on_points)), tuple(sorted(self.recession)))


@dataclass(frozen=True)
class Facet:
    """Facet of Gamma_+ with primitive non-negative normal and offset d."""

    normal: WeightVector
    offset: int
    face: Face


@dataclass(frozen=True)
class AxisData:
    """Axis intersections b_j of the Newton polyhedron."""

    b: Tuple[Optional[int], ...]
    B: Optional[int]
    I_B: frozenset


def _as_weight(P: Union[WeightVector, Sequence]) -> WeightVector:
    return P if isinstance(P, WeightVector) else WeightVector(tuple(P))


def check_guards(f: Polynomial, max_variables: int = MAX_VARIABLES, max_support: int = MAX_SUPPORT):
    """Raise GuardExceededError when f is beyond the configured size."""
    if f.n > max_variables:
        raise GuardExceededError(f"n={f.n} exceeds the variable guard {max_variables}")
    if len(f.terms) > max_support:
        raise GuardExceededError(f"{len(f.terms)} terms exceed the support guard {max_support}")


def primitive_vector(values: Iterable) -> Tuple[int, ...]:
    """Scale a non-zero rational vector to coprime integers (sign kept)."""
    fractions = [Fraction(v) for v in values]
    scale = math.lcm(*(v.denominator for v in fractions))
    integers = [int(v * scale) for v in fractions]
    divisor = math.gcd(*integers)
    if divisor == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(v // divisor for v in integers)


def _unit(n: int, j: int) -> List[int]:
    row = [0] * n
    row[j] = 1
    return row


def face_dimension(points: Iterable[ExponentVector], recession: Iterable[int], n: int) -> int:
    """Affine dimension of conv(points) + cone(e_j : j in recession)."""
    points = sorted(points)
    rows = [[a - b for a, b in zip(p, points[0])] for p in points[1:]]
    rows += [_unit(n, j - 1) for j in sorted(recession)]
    if not rows:
        return 0
    return int(sympy.Matrix(rows).rank())


def d_and_face(P: Union[WeightVector, Sequence], f: Polynomial) -> Tuple[Fraction, Face]:
    """
    Minimum of <P, nu> over the support and the face where it is attained.

    Args:
        P: Non-negative, non-zero weight vector
        f: Non-zero polynomial

    Returns:
        (d(P, f), Delta(P, f))
    """
    if f.is_zero():
        raise ZeroPolynomialError("d(P) of the zero polynomial")
    weight = _as_weight(P)
    values = [(weight.pairing(nu), nu) for nu in f.support]
    d = min(value for value, _ in values)
    on_points = frozenset(nu for value, nu in values if value == d)
    recession = weight.zero_indices()
    return d, Face(on_points, recession, face_dimension(on_points, recession, f.n))


def _hyperplane_normal(rows: List[List[int]]) -> Optional[Tuple[int, ...]]:
    basis = sympy.Matrix(rows).nullspace()
    if len(basis) != 1:
        return None
    vector = [Fraction(int(x.p), int(x.q)) for x in basis[0]]
    if all(v <= 0 for v in vector):
        vector = [-v for v in vector]
    elif not all(v >= 0 for v in vector):
        return None
    return primitive_vector(vector)


def _facet_from_normal(normal: Tuple[int, ...], f: Polynomial) -> Facet:
    weight = WeightVector(tuple(Fraction(p) for p in normal))
    d, face = d_and_face(weight, f)
    return Facet(weight, int(d), face)


def facets(
    f: Polynomial,
    max_variables: int = MAX_VARIABLES,
    max_support: int = MAX_SUPPORT,
) -> List[Facet]:
    """
    All facets of Gamma_+(f), including coordinate facets with d = 0.

    Candidate hyperplanes are spanned by t support points and n - t recession
    directions; a candidate is kept when its normal is unique up to scale,
    non-negative and supporting.

    Returns:
        Facets sorted by primitive normal
    """
    if f.is_zero():
        raise ZeroPolynomialError("Newton polyhedron of the zero polynomial")
    check_guards(f, max_variables, max_support)
    n = f.n
    support = list(f.support)

    if n == 1:
        normals = {(1,)}
    elif len(support) == 1:
        normals = {tuple(_unit(n, j)) for j in range(n)}
    else:
        normals = set()
        for t in range(1, n + 1):
            for points in combinations(support, t):
                base = points[0]
                point_rows = [[a - b for a, b in zip(p, base)] for p in points[1:]]
                for directions in combinations(range(n), n - t):
                    rows = point_rows + [_unit(n, j) for j in directions]
                    normal = _hyperplane_normal(rows)
                    if normal is None or normal in normals:
                        continue
                    offset = sum(p * b for p, b in zip(normal, base))
                    if all(sum(p * e for p, e in zip(normal, nu)) >= offset for nu in support):
                        normals.add(normal)

    result = []
    for normal in sorted(normals):
        facet = _facet_from_normal(normal, f)
        if facet.face.dim != n - 1:
            logger.debug("discarding lower-dimensional supporting face with normal %s", normal)
            continue
        result.append(facet)
    logger.debug("found %d facets for %d support points in n=%d", len(result), len(support), n)
    return result


def vertex_witness(f: Polynomial, vertex: ExponentVector, facet_list: Optional[List[Facet]] = None) -> Optional[WeightVector]:
    """
    Strictly positive weight whose unique minimizer is `vertex`, if it is a vertex.

    The witness is the sum of the normals of the facets through the point.
    """
    facet_list = facets(f) if facet_list is None else facet_list
    through = [facet.normal.entries for facet in facet_list if vertex in facet.face.on_points]
    if not through:
        return None
    summed = WeightVector(tuple(sum(column, Fraction(0)) for column in zip(*through)))
    _, face = d_and_face(summed, f)
    if face.on_points == frozenset([vertex]) and not face.recession:
        return summed
    return None


def polyhedron_vertices(f: Polynomial, facet_list: Optional[List[Facet]] = None) -> List[Tuple[ExponentVector, int]]:
    """Vertices of Gamma_+(f) with their total degrees |nu|."""
    facet_list = facets(f) if facet_list is None else facet_list
    return [
        (nu, sum(nu))
        for nu in sorted(f.support)
        if vertex_witness(f, nu, facet_list) is not None
    ]


def is_k_convenient(f: Polynomial, k: int) -> bool:
    """True iff f^I is non-zero for every coordinate subspace with |I| >= n - k."""
    if not 0 <= k <= f.n - 1:
        raise ValueError(f"k must lie in 0..{f.n - 1}, got {k}")
    size = f.n - k
    return all(
        not restrict(f, indices).is_zero()
        for indices in combinations(range(1, f.n + 1), size)
    )


def is_convenient(f: Polynomial) -> bool:
    return is_k_convenient(f, f.n - 1)


def convenience_level(f: Polynomial) -> int:
    """Largest k with f k-convenient, or -1 when f vanishes on C^n itself."""
    if f.is_zero():
        return -1
    level = 0
    for k in range(f.n):
        if is_k_convenient(f, k):
            level = k
        else:
            break
    return level


def axis_data(f: Polynomial) -> AxisData:
    """Lowest pure power b_j on each axis, their maximum B and argmax I_B."""
    if f.is_zero():
        raise ZeroPolynomialError("axis data of the zero polynomial")
    b: List[Optional[int]] = []
    for j in range(f.n):
        powers = [nu[j] for nu in f.support if nu[j] > 0 and sum(nu) == nu[j]]
        b.append(min(powers) if powers else None)
    present = [value for value in b if value is not None]
    B = max(present) if present else None
    I_B = frozenset(j for j, value in enumerate(b, start=1) if B is not None and value == B)
    return AxisData(tuple(b), B, I_B)
