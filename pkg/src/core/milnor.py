"""
Milnor number of a non-degenerate germ through its Newton number.

nu(f) = sum_k (-1)^(n-k) sum_{|I|=k} k! V_k(Gamma_-(f^I)) + (-1)^n, where
k! V_k is the normalized lattice volume under the compact Newton boundary of
the restriction f^I. Volumes come from fan triangulations of the compact
facets, so every quantity is an exact integer.
"""

import logging
from itertools import combinations
from typing import List, Sequence

import sympy
from sympy import Point2D, Polygon

from .config import MILNOR_BUDGET, MILNOR_MAX_VARIABLES, MILNOR_STEP
from .errors import GuardExceededError, HypothesisError, StabilizationError, ZeroPolynomialError
from .newton import axis_data, facets, is_convenient
from .polynomial import ExponentVector, Polynomial, restrict

logger = logging.getLogger(__name__)


def _project(f: Polynomial, indices: Sequence[int]) -> Polynomial:
    """f^I as a polynomial in the |I| variables z_i, i in I."""
    restricted = restrict(f, indices)
    return Polynomial.from_terms(
        len(indices),
        [(tuple(nu[i - 1] for i in indices), coefficient) for nu, coefficient in restricted.terms],
    )


def _determinant(rows: Sequence[Sequence[int]]) -> int:
    return abs(int(sympy.Matrix(rows).det()))


def _polygon_vertices(points: List[ExponentVector], normal: Sequence[int]) -> List[ExponentVector]:
    """Vertices of a planar lattice polygon in R^3, in cyclic order."""
    drop = next(index for index, p in enumerate(normal) if p != 0)
    keep = [index for index in range(3) if index != drop]
    lifted = {(point[keep[0]], point[keep[1]]): point for point in points}
    hull = sympy.convex_hull(*(Point2D(x, y) for x, y in lifted))
    if not isinstance(hull, Polygon):
        raise RuntimeError(f"compact facet {points} is not two-dimensional")
    return [lifted[(int(vertex.x), int(vertex.y))] for vertex in hull.vertices]


def normalized_volume(f: Polynomial) -> int:
    """k! times the volume of the cone from the origin over the compact Newton boundary of f."""
    k = f.n
    if k == 1:
        return min(nu[0] for nu in f.support)
    total = 0
    for facet in facets(f, max_variables=MILNOR_MAX_VARIABLES):
        if not facet.normal.is_positive():
            continue
        points = facet.face.sorted_points()
        if k == 2:
            total += _determinant([points[0], points[-1]])
            continue
        vertices = _polygon_vertices(points, facet.normal.as_integers())
        for left, right in zip(vertices[1:], vertices[2:]):
            total += _determinant([vertices[0], left, right])
    return total


def newton_number(f: Polynomial) -> int:
    """Kouchnirenko's Newton number of a convenient polynomial with f(0) = 0."""
    n = f.n
    if not is_convenient(f):
        raise HypothesisError("the Newton number needs a convenient polynomial")
    value = (-1) ** n
    for k in range(1, n + 1):
        volumes = sum(normalized_volume(_project(f, indices)) for indices in combinations(range(1, n + 1), k))
        value += (-1) ** (n - k) * volumes
    return value


def _stabilized(f: Polynomial, N: int) -> Polynomial:
    missing = [j for j, b in enumerate(axis_data(f).b) if b is None]
    padding = Polynomial.from_terms(f.n, [(tuple(N if i == j else 0 for i in range(f.n)), 1) for j in missing])
    return f + padding if missing else f


def milnor_number(
    f: Polynomial,
    budget: Sequence[int] = MILNOR_BUDGET,
    step: int = MILNOR_STEP,
) -> int:
    """
    Milnor number of a non-degenerate f via the Newton number.

    A non-convenient f is completed with z_j^N on every missing axis; the value
    is accepted once N and N + step give the same Newton number.

    Raises:
        GuardExceededError: n > 3
        StabilizationError: no N in the budget stabilizes
    """
    if f.is_zero():
        raise ZeroPolynomialError("Milnor number of the zero polynomial")
    if f.n > MILNOR_MAX_VARIABLES:
        raise GuardExceededError(f"Milnor numbers are computed for n <= {MILNOR_MAX_VARIABLES}, got n={f.n}")
    if any(sum(nu) == 0 for nu in f.support):
        raise HypothesisError("f(0) != 0: the constant term must vanish")
    if is_convenient(f):
        return newton_number(f)

    for N in budget:
        first = newton_number(_stabilized(f, N))
        second = newton_number(_stabilized(f, N + step))
        logger.debug("stabilization N=%d: %d, N=%d: %d", N, first, N + step, second)
        if first == second:
            return first
    raise StabilizationError(f"Newton number did not stabilize for N in {tuple(budget)}")
