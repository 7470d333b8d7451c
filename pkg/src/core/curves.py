"""
Orders of vanishing along curves z(t) and the theta(z(t)) ratio.

A curve gives each coordinate as a finite sum of terms c * t^e with rational
e > 0. Substituting it into f and into every partial derivative and grouping
by exact t-exponent yields ord f and ord grad f; their ratio is a lower bound
witness for theta0(f).

Exact coefficients (rationals, Gaussian rationals) are handled exactly.
Float and root-literal coefficients switch the probe to mpmath arithmetic,
where a group counts as zero when its sum is tiny against its largest term.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict, ValidationError
from sympy.polys.polyerrors import PolynomialError

from .config import (
    CRITICAL_SYSTEM_MAX_DEGREE,
    FLOAT_TOLERANCE,
    NUMERIC_PRECISION_BITS,
    SWEEP_BUDGET,
    SWEEP_FULL_GRID_LIMIT,
    SWEEP_GRID_CAP,
    SWEEP_SAMPLES,
    SWEEP_SEED,
    TRUNCATION_FACTOR,
)
from .dual_diagram import DualDiagram, build_dual_diagram
from .errors import ProbeError
from .newton import WeightVector, d_and_face, facets
from .polynomial import (
    ComplexDocument,
    GaussianRational,
    Polynomial,
    face_polynomial,
    format_rational,
    make_coefficient,
    parse_rational,
    partial_derivative,
    restrict,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootLiteral:
    """The number base^(1/index) * exp(2*pi*i*phase_turns), base > 0."""

    base: Fraction
    index: int
    phase_turns: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "base", Fraction(self.base))
        object.__setattr__(self, "phase_turns", Fraction(self.phase_turns))
        if self.base <= 0:
            raise ValueError(f"root base must be positive, got {self.base}")
        if self.index < 1:
            raise ValueError(f"root index must be positive, got {self.index}")

    def to_mpc(self) -> mpmath.mpc:
        modulus = mpmath.root(mpmath.mpf(self.base.numerator) / self.base.denominator, self.index)
        turns = mpmath.mpf(self.phase_turns.numerator) / self.phase_turns.denominator
        return modulus * mpmath.expjpi(2 * turns)

    def __str__(self):
        return f"({self.base})^(1/{self.index})*e(2pi i*{self.phase_turns})"


CurveCoefficient = Union[Fraction, GaussianRational, RootLiteral, complex]


def _is_exact(value: CurveCoefficient) -> bool:
    return isinstance(value, (Fraction, GaussianRational))


@dataclass(frozen=True)
class CurveTerm:
    coefficient: CurveCoefficient
    exponent: Fraction


@dataclass(frozen=True)
class Curve:
    """
    Curve z(t) in C^n given coordinatewise as sums of c * t^e.

    An empty coordinate is identically zero (a curve on a coordinate subspace).
    """

    coords: Tuple[Tuple[CurveTerm, ...], ...]

    def __post_init__(self):
        coords = []
        for j, terms in enumerate(self.coords, start=1):
            terms = tuple(CurveTerm(term.coefficient, Fraction(term.exponent)) for term in terms)
            exponents = [term.exponent for term in terms]
            if any(e <= 0 for e in exponents):
                raise ProbeError(f"coordinate z{j} has a non-positive exponent; z(0) must be 0")
            if any(a >= b for a, b in zip(exponents, exponents[1:])):
                raise ProbeError(f"exponents of z{j} must be strictly increasing")
            for term in terms:
                if not isinstance(term.coefficient, (Fraction, GaussianRational, RootLiteral, complex)):
                    raise ProbeError(f"unsupported coefficient {term.coefficient!r} in z{j}")
                if isinstance(term.coefficient, (Fraction, GaussianRational, complex)) and term.coefficient == 0:
                    raise ProbeError(f"zero coefficient in z{j}")
            coords.append(terms)
        if not coords:
            raise ProbeError("a curve needs at least one coordinate")
        object.__setattr__(self, "coords", tuple(coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_exact(self) -> bool:
        return all(_is_exact(term.coefficient) for terms in self.coords for term in terms)

    def support_indices(self) -> frozenset:
        """1-based indices of the coordinates that are not identically zero."""
        return frozenset(j for j, terms in enumerate(self.coords, start=1) if terms)

    def leading_exponents(self) -> Tuple[Optional[Fraction], ...]:
        return tuple(terms[0].exponent if terms else None for terms in self.coords)

    def leading_coefficients(self) -> Tuple[Optional[CurveCoefficient], ...]:
        return tuple(terms[0].coefficient if terms else None for terms in self.coords)

    def weight(self) -> Optional[WeightVector]:
        """Leading-exponent weight vector, when every coordinate is present."""
        exponents = self.leading_exponents()
        if any(e is None for e in exponents):
            return None
        return WeightVector(exponents)


@dataclass(frozen=True)
class ProbeResult:
    """Orders of f and of its gradient along one curve."""

    ord_f: Fraction
    ord_grad: Fraction
    theta: Fraction
    truncation_used: Fraction
    exactness: Literal["exact", "numeric"]
    partial_orders: Tuple[Optional[Fraction], ...] = ()
    tolerance: Optional[float] = None


def monomial_curve(
    weights: Sequence[Union[int, Fraction]],
    coefficients: Optional[Sequence[CurveCoefficient]] = None,
) -> Curve:
    """Curve z_j = a_j * t^{w_j} (a_j = 1 by default)."""
    coefficients = [Fraction(1)] * len(weights) if coefficients is None else list(coefficients)
    if len(coefficients) != len(weights):
        raise ProbeError(f"{len(weights)} weights but {len(coefficients)} coefficients")
    return Curve(tuple((CurveTerm(a, Fraction(w)),) for w, a in zip(weights, coefficients)))


# ---------------------------------------------------------------------------
# Truncated series arithmetic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Approx:
    """mpmath value with the magnitude of the largest term that fed into it."""

    value: mpmath.mpc
    scale: mpmath.mpf

    def __add__(self, other: "_Approx") -> "_Approx":
        return _Approx(self.value + other.value, max(self.scale, other.scale))

    def __mul__(self, other: "_Approx") -> "_Approx":
        return _Approx(self.value * other.value, self.scale * other.scale)


def _to_mpc(value) -> mpmath.mpc:
    if isinstance(value, Fraction):
        return mpmath.mpc(mpmath.mpf(value.numerator) / value.denominator)
    if isinstance(value, GaussianRational):
        return mpmath.mpc(_to_mpc(value.re).real, _to_mpc(value.im).real)
    if isinstance(value, RootLiteral):
        return value.to_mpc()
    return mpmath.mpc(value.real, value.imag)


def _approx(value) -> _Approx:
    number = _to_mpc(value)
    return _Approx(number, abs(number))


Series = Dict[Fraction, object]


def _power(coords: List[Series], j: int, e: int, truncation: Fraction, exact: bool, powers) -> Series:
    """coords[j] ** e, memoized in `powers`."""
    k = e
    while k > 1 and (j, k) not in powers:
        k -= 1
    if k == 1:
        powers[(j, 1)] = coords[j]
    while k < e:
        powers[(j, k + 1)] = _multiply(powers[(j, k)], coords[j], truncation, exact)
        k += 1
    return powers[(j, e)]


def _multiply(left: Series, right: Series, truncation: Fraction, exact: bool) -> Series:
    out: Series = {}
    for e_left, c_left in left.items():
        for e_right, c_right in right.items():
            e = e_left + e_right
            if e > truncation:
                continue
            out[e] = out[e] + c_left * c_right if e in out else c_left * c_right
    if exact:
        out = {e: c for e, c in out.items() if c}
    return out


class CurveProber:
    """Probes one polynomial along many curves, reusing its partials and facet data."""

    def __init__(
        self,
        f: Polynomial,
        truncation: Optional[Union[int, Fraction]] = None,
        tolerance: float = FLOAT_TOLERANCE,
        precision_bits: int = NUMERIC_PRECISION_BITS,
        truncation_factor: int = TRUNCATION_FACTOR,
    ):
        if f.is_zero():
            raise ProbeError("cannot probe the zero polynomial")
        self.f = f
        self.partials = [partial_derivative(f, j) for j in range(1, f.n + 1)]
        self.truncation = None if truncation is None else Fraction(truncation)
        self.tolerance = tolerance
        self.precision_bits = precision_bits
        self.truncation_factor = truncation_factor
        self._max_facet_d: Optional[int] = None

    @property
    def max_facet_d(self) -> int:
        if self._max_facet_d is None:
            self._max_facet_d = max((facet.offset for facet in facets(self.f)), default=0)
        return self._max_facet_d

    def default_truncation(self, curve: Curve) -> Fraction:
        """T = factor * max(max facet d, least order of a surviving monomial)."""
        lead = curve.leading_exponents()
        orders = [
            sum((lead[j] * e for j, e in enumerate(nu) if e), Fraction(0))
            for nu in self.f.support
            if all(lead[j] is not None for j, e in enumerate(nu) if e)
        ]
        if not orders:
            raise ProbeError("curve lies in V(f): every monomial vanishes on it")
        return self.truncation_factor * max(Fraction(self.max_facet_d), min(orders))

    def _is_zero(self, value, exact: bool) -> bool:
        if exact:
            return not value
        return abs(value.value) <= self.tolerance * value.scale

    def _order(self, series: Series, exact: bool) -> Optional[Fraction]:
        for e in sorted(series):
            if not self._is_zero(series[e], exact):
                return e
        return None

    def _substitute(self, g: Polynomial, curve: Curve, truncation: Fraction, exact: bool, powers) -> Series:
        lift = (lambda c: c) if exact else _approx
        coords = [{term.exponent: lift(term.coefficient) for term in terms} for terms in curve.coords]
        lead = curve.leading_exponents()
        total: Series = {}
        for nu, coefficient in g.terms:
            if any(e and lead[j] is None for j, e in enumerate(nu)):
                continue
            if sum((lead[j] * e for j, e in enumerate(nu) if e), Fraction(0)) > truncation:
                continue
            series: Series = {Fraction(0): lift(coefficient)}
            for j, e in enumerate(nu):
                if e:
                    series = _multiply(series, _power(coords, j, e, truncation, exact, powers), truncation, exact)
            for exponent, value in series.items():
                total[exponent] = total[exponent] + value if exponent in total else value
        return total

    def probe(self, curve: Curve) -> ProbeResult:
        if curve.n != self.f.n:
            raise ProbeError(f"curve has {curve.n} coordinates, f has n={self.f.n}")
        truncation = self.truncation if self.truncation is not None else self.default_truncation(curve)
        exact = curve.is_exact()
        with mpmath.workprec(self.precision_bits):
            powers: Dict[Tuple[int, int], Series] = {}
            ord_f = self._order(self._substitute(self.f, curve, truncation, exact, powers), exact)
            if ord_f is None:
                raise ProbeError(f"ord f exceeds truncation bound T={truncation} (curve may lie in V(f))")
            partial_orders = tuple(
                self._order(self._substitute(g, curve, truncation, exact, powers), exact) for g in self.partials
            )
        finite = [order for order in partial_orders if order is not None]
        if not finite:
            raise ProbeError(f"ord grad f exceeds truncation bound T={truncation}")
        ord_grad = min(finite)
        return ProbeResult(
            ord_f=ord_f,
            ord_grad=ord_grad,
            theta=ord_grad / ord_f,
            truncation_used=truncation,
            exactness="exact" if exact else "numeric",
            partial_orders=partial_orders,
            tolerance=None if exact else self.tolerance,
        )


def probe(
    f: Polynomial,
    curve: Curve,
    truncation: Optional[Union[int, Fraction]] = None,
    tolerance: float = FLOAT_TOLERANCE,
    precision_bits: int = NUMERIC_PRECISION_BITS,
) -> ProbeResult:
    """
    ord_t f(z(t)), ord_t grad f(z(t)) and their ratio.

    A partial derivative that cancels up to the truncation order counts as
    infinite; it is an error only when f or every partial does.

    Args:
        f: Polynomial with f(0) = 0
        curve: Curve in C^n
        truncation: Largest t-exponent examined (default 4 * max(facet d, curve d))
        tolerance: Relative zero test for numeric coefficients
        precision_bits: mpmath working precision

    Returns:
        ProbeResult
    """
    return CurveProber(f, truncation, tolerance, precision_bits).probe(curve)


def lift_subspace_curve(
    f: Polynomial,
    curve: Curve,
    N: Optional[int] = None,
    truncation: Optional[Union[int, Fraction]] = None,
) -> Curve:
    """
    Pad the zero coordinates of a curve on C^I with t^N.

    With N omitted, N is one more than the truncation window the probe uses
    for the curve, so no padded monomial can reach an examined order.
    """
    if curve.n != f.n:
        raise ProbeError(f"curve has {curve.n} coordinates, f has n={f.n}")
    indices = curve.support_indices()
    if len(indices) == f.n:
        return curve
    if restrict(f, indices).is_zero():
        raise ProbeError(f"C^I with I={sorted(indices)} is a vanishing coordinate subspace")
    if N is None:
        window = Fraction(truncation) if truncation is not None else CurveProber(f).default_truncation(curve)
        N = math.floor(window) + 1
    if N < 1:
        raise ProbeError(f"lift power must be positive, got {N}")
    padding = (CurveTerm(Fraction(1), Fraction(N)),)
    return Curve(tuple(terms if terms else padding for terms in curve.coords))


# ---------------------------------------------------------------------------
# Curve documents
# ---------------------------------------------------------------------------


class RootBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    base: Union[int, str]
    index: int
    phase_turns: Union[int, str] = 0


class RootDocument(BaseModel):
    """Coefficient written as {"root": {"base": "p/q", "index": k, "phase_turns": "a/b"}}."""

    model_config = ConfigDict(extra="forbid")

    root: RootBody


class CurveTermDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    coeff: Union[int, float, str, ComplexDocument, RootDocument]
    exp: Union[int, str]


class CurveDocument(BaseModel):
    """JSON form {"coords": [[{"coeff": ..., "exp": "p/q"}, ...], ...]}."""

    model_config = ConfigDict(extra="forbid")

    coords: List[List[CurveTermDocument]]


def _coefficient(value) -> CurveCoefficient:
    if isinstance(value, RootDocument):
        body = value.root
        return RootLiteral(parse_rational(body.base), body.index, parse_rational(body.phase_turns))
    if isinstance(value, ComplexDocument):
        if isinstance(value.re, float) or isinstance(value.im, float):
            return complex(float(_real(value.re)), float(_real(value.im)))
        return make_coefficient(parse_rational(value.re), parse_rational(value.im))
    if isinstance(value, float):
        return complex(value)
    return parse_rational(value)


def _real(value: Union[int, float, str]) -> Union[float, Fraction]:
    return value if isinstance(value, float) else parse_rational(value)


def curve_from_json(data: Union[str, dict]) -> Curve:
    """Build a Curve from its JSON document (text or decoded mapping)."""
    try:
        document = CurveDocument.model_validate_json(data) if isinstance(data, str) else CurveDocument.model_validate(data)
        coords = tuple(
            tuple(CurveTerm(_coefficient(term.coeff), parse_rational(term.exp)) for term in terms)
            for terms in document.coords
        )
    except ValidationError as exc:
        raise ProbeError(f"invalid curve document: {exc.errors()[0]['msg']}") from exc
    except ValueError as exc:
        raise ProbeError(f"invalid curve document: {exc}") from exc
    return Curve(coords)


def load_curve(path: Union[str, Path]) -> Curve:
    """Read a curve JSON file."""
    return curve_from_json(Path(path).read_text(encoding="utf-8"))


def _coefficient_to_json(value: CurveCoefficient):
    if isinstance(value, RootLiteral):
        return {
            "root": {
                "base": format_rational(value.base),
                "index": value.index,
                "phase_turns": format_rational(value.phase_turns),
            }
        }
    if isinstance(value, GaussianRational):
        return {"re": format_rational(value.re), "im": format_rational(value.im)}
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return format_rational(value)


def curve_to_json(curve: Curve) -> dict:
    return {
        "coords": [
            [{"coeff": _coefficient_to_json(term.coefficient), "exp": format_rational(term.exponent)} for term in terms]
            for terms in curve.coords
        ]
    }


# ---------------------------------------------------------------------------
# Witness search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    """Best curve found by a search, with its probe."""

    weight: Tuple[int, ...]
    curve: Curve
    result: ProbeResult
    curves_probed: int


def _random_coefficients(rng: np.random.Generator, n: int) -> List[CurveCoefficient]:
    coefficients = []
    while len(coefficients) < n:
        re, im = rng.integers(-4, 5, size=2)
        denominator = int(rng.integers(1, 4))
        if re == 0 and im == 0:
            continue
        coefficients.append(make_coefficient(Fraction(int(re), denominator), Fraction(int(im), denominator)))
    return coefficients


def _strip_monomial_content(g: Polynomial) -> Polynomial:
    content = tuple(min(column) for column in zip(*g.support))
    return Polynomial.from_terms(g.n, [(tuple(e - c for e, c in zip(nu, content)), a) for nu, a in g.terms])


def _to_sympy(g: Polynomial, symbols: Dict[int, sympy.Symbol]) -> sympy.Expr:
    expression = sympy.Integer(0)
    for nu, coefficient in g.terms:
        if isinstance(coefficient, GaussianRational):
            value = sympy.Rational(coefficient.re) + sympy.I * sympy.Rational(coefficient.im)
        else:
            value = sympy.Rational(coefficient)
        term = value
        for j, e in enumerate(nu, start=1):
            if e:
                term *= (symbols[j] if j in symbols else sympy.Integer(1)) ** e
        expression += term
    return sympy.expand(expression)


def critical_coefficients(
    f: Polynomial,
    weight: Sequence[int],
    cache: Optional[Dict[Tuple, List[List[CurveCoefficient]]]] = None,
) -> List[List[CurveCoefficient]]:
    """
    Leading coefficients that kill the partials of the face function with the largest weights.

    The partials dz_j with p_j above the smallest weight are solved as a
    polynomial system in those variables, the others fixed to 1. Only torus
    solutions are returned. Systems are memoized in `cache` by face and
    variable set.
    """
    weight = tuple(int(p) for p in weight)
    _, face = d_and_face(weight, f)
    if face.dim == 0:
        return []
    lowest = min(weight)
    indices = [j for j, p in enumerate(weight, start=1) if p > lowest]
    if not 1 <= len(indices) <= 2:
        return []
    key = (face.key(), tuple(indices))
    if cache is not None and key in cache:
        return cache[key]
    result = _solve_critical_system(f, face, indices)
    if cache is not None:
        cache[key] = result
    return result


def _solve_critical_system(f: Polynomial, face, indices: List[int]) -> List[List[CurveCoefficient]]:
    face_poly = face_polynomial(f, face.on_points)
    symbols = {j: sympy.Symbol(f"z{j}") for j in indices}
    equations = []
    for j in indices:
        derivative = partial_derivative(face_poly, j)
        if len(derivative.terms) <= 1:
            return []
        equation = _to_sympy(_strip_monomial_content(derivative), symbols)
        if equation.is_number:
            return []
        equations.append(equation)
    degrees = [sympy.Poly(eq, *symbols.values()).total_degree() for eq in equations]
    if math.prod(degrees) > CRITICAL_SYSTEM_MAX_DEGREE:
        logger.debug("skipping critical system in z%s: degrees %s", indices, degrees)
        return []

    try:
        solutions = sympy.solve_poly_system(equations, *symbols.values()) or []
    except (NotImplementedError, PolynomialError, ValueError) as exc:
        logger.debug("critical system in z%s not solved: %s", indices, exc)
        return []

    result = []
    for solution in solutions:
        values = [complex(sympy.N(value, 30)) for value in solution]
        if any(abs(value) < 1e-12 for value in values):
            continue
        coefficients: List[CurveCoefficient] = [Fraction(1)] * f.n
        for j, value in zip(indices, values):
            coefficients[j - 1] = value
        result.append(coefficients)
    return result


def sweep_grid_side(n: int, budget: int) -> int:
    """Largest entry of the enumerated weight grid for an exponent budget."""
    if budget**n <= SWEEP_FULL_GRID_LIMIT:
        return budget
    return min(budget, SWEEP_GRID_CAP)


def _weight_grid(n: int, budget: int, extra: Sequence[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    side = sweep_grid_side(n, budget)
    if side < budget:
        logger.info("exponent budget %d gives %d^%d weights; grid side capped at %d", budget, budget, n, side)
    weights = {w for w in cartesian(range(1, side + 1), repeat=n) if math.gcd(*w) == 1}
    weights.update(w for w in extra if max(w) <= budget)
    return sorted(weights)


def _positive_cell_weights(diagram: DualDiagram) -> List[Tuple[int, ...]]:
    return sorted({cell.rep.as_integers() for cell in diagram.cells if cell.cell_class == "positive"})


def _search(
    f: Polynomial,
    weights: Sequence[Tuple[int, ...]],
    samples: int,
    seed: int,
    prober: CurveProber,
) -> Optional[SweepResult]:
    rng = np.random.default_rng(seed)
    systems: Dict[Tuple, List[List[CurveCoefficient]]] = {}
    best: Optional[SweepResult] = None
    probed = 0
    for weight in weights:
        candidates = [_random_coefficients(rng, f.n) for _ in range(samples)]
        candidates += critical_coefficients(f, weight, systems)
        for coefficients in candidates:
            curve = monomial_curve(weight, coefficients)
            try:
                result = prober.probe(curve)
            except ProbeError:
                continue
            probed += 1
            if best is None or result.theta > best.result.theta:
                best = SweepResult(weight, curve, result, probed)
    if best is not None:
        best = SweepResult(best.weight, best.curve, best.result, probed)
        logger.info("best curve weight %s: theta=%s over %d curves", best.weight, best.result.theta, probed)
    return best


def witness_search(
    f: Polynomial,
    samples: int = SWEEP_SAMPLES,
    seed: int = SWEEP_SEED,
    diagram: Optional[DualDiagram] = None,
    truncation: Optional[Union[int, Fraction]] = None,
) -> Optional[SweepResult]:
    """Probe every strictly positive cell representative; the best ratio is a lower bound."""
    diagram = build_dual_diagram(f) if diagram is None else diagram
    return _search(f, _positive_cell_weights(diagram), samples, seed, CurveProber(f, truncation))


def sweep_monomial_curves(
    f: Polynomial,
    exponent_budget: int = SWEEP_BUDGET,
    coefficient_samples: int = SWEEP_SAMPLES,
    seed: int = SWEEP_SEED,
    diagram: Optional[DualDiagram] = None,
    truncation: Optional[Union[int, Fraction]] = None,
) -> Optional[SweepResult]:
    """
    Search monomial curves z_j = a_j t^{w_j} for the largest theta.

    Weights are the primitive tuples with entries <= budget (capped when the
    grid is too large) plus every positive cell representative within the
    budget. Ties keep the lexicographically smallest weight.

    Returns:
        Best SweepResult, or None when every curve lies in V(f)
    """
    if exponent_budget < 1 or coefficient_samples < 1:
        raise ValueError("sweep budgets must be >= 1")
    diagram = build_dual_diagram(f) if diagram is None else diagram
    weights = _weight_grid(f.n, exponent_budget, _positive_cell_weights(diagram))
    logger.info("sweeping %d weights with %d samples each", len(weights), coefficient_samples)
    return _search(f, weights, coefficient_samples, seed, CurveProber(f, truncation))
