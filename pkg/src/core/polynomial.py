"""
Sparse polynomials with exact coefficients.

A Polynomial is an immutable map from exponent vectors to nonzero exact
coefficients (rationals or Gaussian rationals) in a fixed number of variables
z1..zn. Terms are kept in graded lexicographic order so that printing, hashing
and JSON output are deterministic.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from .errors import (
    DimensionMismatchError,
    NegativeExponentError,
    PolynomialSyntaxError,
    VariableIndexError,
)

logger = logging.getLogger(__name__)

ExponentVector = Tuple[int, ...]


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number re + im*i with rational parts."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        return make_coefficient(self.re + parts[0], self.im + parts[1])

    __radd__ = __add__

    def __neg__(self):
        return make_coefficient(-self.re, -self.im)

    def __sub__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        return make_coefficient(self.re - parts[0], self.im - parts[1])

    def __rsub__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        return make_coefficient(parts[0] - self.re, parts[1] - self.im)

    def __mul__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        re, im = parts
        return make_coefficient(self.re * re - self.im * im, self.re * im + self.im * re)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result: "Coefficient" = Fraction(1)
        base: "Coefficient" = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        return (self.re, self.im) == parts

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __abs__(self) -> float:
        return abs(complex(float(self.re), float(self.im)))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self):
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


Coefficient = Union[Fraction, GaussianRational]


def _parts(value) -> Optional[Tuple[Fraction, Fraction]]:
    if isinstance(value, GaussianRational):
        return value.re, value.im
    if isinstance(value, (int, Fraction)):
        return Fraction(value), Fraction(0)
    return None


def make_coefficient(re, im=0) -> Coefficient:
    """Build a coefficient; a zero imaginary part collapses to a Fraction."""
    im = Fraction(im)
    if im == 0:
        return Fraction(re)
    return GaussianRational(Fraction(re), im)


def _degree_key(exponent: ExponentVector) -> Tuple:
    # graded lex: lower total degree first, then z1-heavy before z2-heavy
    return (sum(exponent), tuple(-e for e in exponent))


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial in n variables with exact nonzero coefficients."""

    n: int
    terms: Tuple[Tuple[ExponentVector, Coefficient], ...] = ()

    def __post_init__(self):
        """Check the stored terms are canonical."""
        if self.n < 1:
            raise DimensionMismatchError(f"variable count must be >= 1, got {self.n}")
        for exponent, coefficient in self.terms:
            if len(exponent) != self.n:
                raise DimensionMismatchError(
                    f"exponent {exponent} has length {len(exponent)}, expected {self.n}"
                )
            if any(e < 0 for e in exponent):
                raise ValueError(f"negative exponent in {exponent}")
            if not coefficient:
                raise ValueError(f"stored zero coefficient for {exponent}")

    @classmethod
    def from_terms(
        cls,
        n: int,
        terms: Union[Mapping[ExponentVector, Coefficient], Iterable[Tuple[ExponentVector, Coefficient]]],
    ) -> "Polynomial":
        """Combine like terms, drop zeros and sort into canonical order."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        combined: Dict[ExponentVector, Coefficient] = {}
        for exponent, coefficient in items:
            key = tuple(int(e) for e in exponent)
            combined[key] = combined.get(key, Fraction(0)) + coefficient
        ordered = sorted(
            ((exp, coeff) for exp, coeff in combined.items() if coeff),
            key=lambda item: _degree_key(item[0]),
        )
        return cls(n, tuple(ordered))

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        """The zero polynomial in n variables."""
        return cls(n, ())

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient: Coefficient = Fraction(1)) -> "Polynomial":
        """Single term c*z^exponent."""
        return cls.from_terms(len(exponent), {tuple(exponent): coefficient})

    @cached_property
    def coefficients(self) -> Dict[ExponentVector, Coefficient]:
        """Term map view."""
        return dict(self.terms)

    @property
    def support(self) -> Tuple[ExponentVector, ...]:
        """Exponent vectors of the nonzero terms, canonical order."""
        return tuple(exponent for exponent, _ in self.terms)

    def coefficient(self, exponent: Sequence[int]) -> Coefficient:
        """Coefficient of z^exponent (zero when absent)."""
        return self.coefficients.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def is_exact_rational(self) -> bool:
        """True when every coefficient is a rational number."""
        return all(isinstance(c, Fraction) for _, c in self.terms)

    def _check_same_n(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatchError(f"cannot combine n={self.n} with n={other.n}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_n(other)
        return Polynomial.from_terms(self.n, list(self.terms) + list(other.terms))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, tuple((exp, -coeff) for exp, coeff in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_n(other)
        accumulated: Dict[ExponentVector, Coefficient] = {}
        for left_exp, left_coeff in self.terms:
            for right_exp, right_coeff in other.terms:
                key = tuple(a + b for a, b in zip(left_exp, right_exp))
                accumulated[key] = accumulated.get(key, Fraction(0)) + left_coeff * right_coeff
        return Polynomial.from_terms(self.n, accumulated)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial(n={self.n}, '{format_polynomial(self)}')"


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------

_SIGNS = {"+": 1, "-": -1, "−": -1}


class _PolynomialParser:
    """Recursive-descent reader for the polynomial grammar."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str, pos: Optional[int] = None, error=PolynomialSyntaxError):
        where = self.pos if pos is None else pos
        raise error(message, len(self.text[:where].encode("utf-8")))

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str):
        if self.peek() != char:
            self.fail(f"expected '{char}'")
        self.pos += 1

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected integer")
        return int(self.text[start:self.pos])

    def rational(self) -> Fraction:
        start = self.pos
        numerator = self.integer()
        if self.peek() == "/":
            self.pos += 1
            denominator = self.integer()
            if denominator == 0:
                self.fail("zero denominator", start)
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def gaussian(self) -> Coefficient:
        self.expect("(")
        sign = 1
        if self.peek() in _SIGNS:
            sign = _SIGNS[self.text[self.pos]]
            self.pos += 1
        re = sign * self.rational()
        if self.peek() not in _SIGNS:
            self.fail("expected '+' or '-' inside complex coefficient")
        im_sign = _SIGNS[self.text[self.pos]]
        self.pos += 1
        im = Fraction(1) if self.peek() == "i" else self.rational()
        self.expect("i")
        self.expect(")")
        return make_coefficient(re, im_sign * im)

    def variable(self) -> Tuple[int, int]:
        self.expect("z")
        index_pos = self.pos
        index = self.integer()
        if index == 0:
            self.fail("variable index 0", index_pos, VariableIndexError)
        exponent = 1
        if self.peek() == "^":
            self.pos += 1
            if self.peek() in ("-", "−"):
                self.fail("negative exponent", error=NegativeExponentError)
            exponent = self.integer()
        return index, exponent

    def term(self, sign: int) -> Tuple[Dict[int, int], Coefficient]:
        self.peek()
        start = self.pos
        coefficient: Coefficient = Fraction(sign)
        have_item = False
        char = self.peek()
        if char.isdigit():
            coefficient = sign * self.rational()
            have_item = True
        elif char == "(":
            coefficient = sign * self.gaussian()
            have_item = True

        powers: Dict[int, int] = {}
        while True:
            char = self.peek()
            if char == "*":
                if not have_item:
                    self.fail("unexpected '*'")
                self.pos += 1
                if self.peek() != "z":
                    self.fail("expected variable after '*'")
                continue
            if char == "z":
                index, exponent = self.variable()
                powers[index] = powers.get(index, 0) + exponent
                have_item = True
                continue
            break

        if not have_item:
            self.fail("expected term", start)
        return powers, coefficient

    def parse(self) -> List[Tuple[Dict[int, int], Coefficient]]:
        sign = 1
        if self.peek() in _SIGNS:
            sign = _SIGNS[self.text[self.pos]]
            self.pos += 1
        terms = [self.term(sign)]
        while True:
            char = self.peek()
            if char == "":
                return terms
            if char not in _SIGNS:
                self.fail(f"unexpected character '{char}'")
            sign = _SIGNS[char]
            self.pos += 1
            terms.append(self.term(sign))


def parse_polynomial(text: str, n: Optional[int] = None) -> Polynomial:
    """
    Parse the polynomial grammar into canonical sparse form.

    Args:
        text: Polynomial text such as "z1^5*z2^2 + 3/2*z3"
        n: Variable count; inferred from the highest variable index if omitted

    Returns:
        Polynomial with like terms combined and zero terms dropped
    """
    parser = _PolynomialParser(text)
    raw_terms = parser.parse()
    highest = max((index for powers, _ in raw_terms for index in powers), default=1)
    if n is None:
        n = highest
    elif highest > n:
        raise VariableIndexError(f"variable z{highest} exceeds n={n}", len(text.encode("utf-8")))

    terms = []
    for powers, coefficient in raw_terms:
        exponent = [0] * n
        for index, power in powers.items():
            exponent[index - 1] = power
        terms.append((tuple(exponent), coefficient))
    return Polynomial.from_terms(n, terms)


def _format_monomial(exponent: ExponentVector) -> str:
    factors = []
    for index, power in enumerate(exponent, start=1):
        if power == 1:
            factors.append(f"z{index}")
        elif power > 1:
            factors.append(f"z{index}^{power}")
    return "*".join(factors)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text form; parse_polynomial reads it back unchanged."""
    if f.is_zero():
        return "0"
    pieces = []
    for position, (exponent, coefficient) in enumerate(f.terms):
        negative = isinstance(coefficient, Fraction) and coefficient < 0
        magnitude = -coefficient if negative else coefficient
        monomial = _format_monomial(exponent)
        if magnitude == 1 and monomial:
            body = monomial
        else:
            body = str(magnitude) + (f"*{monomial}" if monomial else "")
        if position == 0:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


# ---------------------------------------------------------------------------
# JSON form
# ---------------------------------------------------------------------------


class ComplexDocument(BaseModel):
    """Complex number given by real and imaginary parts."""

    model_config = ConfigDict(extra="forbid")

    re: Union[int, float, str]
    im: Union[int, float, str]


class TermDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    exp: List[int]
    coeff: Union[int, str, ComplexDocument]


class PolynomialDocument(BaseModel):
    """JSON form {"n": int, "terms": [{"exp": [...], "coeff": ...}]}."""

    model_config = ConfigDict(extra="forbid")

    n: int
    terms: List[TermDocument]


def parse_rational(value: Union[int, str]) -> Fraction:
    """Read an exact rational from an int or a "p/q" string."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"expected exact rational, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational {value!r}") from exc


def format_rational(value: Fraction) -> str:
    """Render a rational as "p/q" (integers as "p/1")."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _coefficient_from_document(value: Union[int, str, ComplexDocument]) -> Coefficient:
    if isinstance(value, ComplexDocument):
        return make_coefficient(parse_rational(value.re), parse_rational(value.im))
    return parse_rational(value)


def polynomial_from_json(data: Union[str, Mapping]) -> Polynomial:
    """Build a Polynomial from its JSON document (text or decoded mapping)."""
    try:
        document = (
            PolynomialDocument.model_validate_json(data)
            if isinstance(data, str)
            else PolynomialDocument.model_validate(data)
        )
        terms = []
        for term in document.terms:
            if any(e < 0 for e in term.exp):
                raise NegativeExponentError(f"negative exponent {term.exp}", 0)
            terms.append((tuple(term.exp), _coefficient_from_document(term.coeff)))
        return Polynomial.from_terms(document.n, terms)
    except PolynomialSyntaxError:
        raise
    except ValidationError as exc:
        raise PolynomialSyntaxError(f"invalid polynomial document: {exc.errors()[0]['msg']}", 0) from exc
    except ValueError as exc:
        raise PolynomialSyntaxError(f"invalid polynomial document: {exc}", 0) from exc


def polynomial_to_json(f: Polynomial) -> dict:
    """JSON-ready mapping of a polynomial; rationals as "p/q" strings."""
    terms = []
    for exponent, coefficient in f.terms:
        if isinstance(coefficient, GaussianRational):
            rendered = {"re": format_rational(coefficient.re), "im": format_rational(coefficient.im)}
        else:
            rendered = format_rational(coefficient)
        terms.append({"exp": list(exponent), "coeff": rendered})
    return {"n": f.n, "terms": terms}


def load_polynomial(path: Union[str, Path], n: Optional[int] = None) -> Polynomial:
    """Read a polynomial file in text or JSON form."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        f = polynomial_from_json(text)
    else:
        lines = [line.split("#", 1)[0] for line in text.splitlines()]
        f = parse_polynomial(" ".join(lines), n)
    logger.debug("loaded %s: n=%d, %d terms", path, f.n, len(f.terms))
    return f


# ---------------------------------------------------------------------------
# Algebra
# ---------------------------------------------------------------------------


def _check_indices(f: Polynomial, indices: Iterable[int]) -> frozenset:
    index_set = frozenset(indices)
    for j in index_set:
        if not 1 <= j <= f.n:
            raise DimensionMismatchError(f"index {j} outside 1..{f.n}")
    return index_set


def restrict(f: Polynomial, indices: Iterable[int]) -> Polynomial:
    """Restriction f^I to the coordinate subspace C^I (1-based indices)."""
    index_set = _check_indices(f, indices)
    kept = tuple(
        (exponent, coefficient)
        for exponent, coefficient in f.terms
        if all(e == 0 for j, e in enumerate(exponent, start=1) if j not in index_set)
    )
    return Polynomial(f.n, kept)


def partial_derivative(f: Polynomial, j: int) -> Polynomial:
    """Formal derivative with respect to z_j (1-based)."""
    _check_indices(f, [j])
    terms = []
    for exponent, coefficient in f.terms:
        power = exponent[j - 1]
        if power == 0:
            continue
        lowered = exponent[: j - 1] + (power - 1,) + exponent[j:]
        terms.append((lowered, power * coefficient))
    return Polynomial.from_terms(f.n, terms)


def gradient(f: Polynomial) -> List[Polynomial]:
    """All n partial derivatives, in variable order."""
    return [partial_derivative(f, j) for j in range(1, f.n + 1)]


def power_pullback(f: Polynomial, m: Sequence[int]) -> Polynomial:
    """Substitute z_i = w_i^{m_i}; exponents are scaled componentwise."""
    if len(m) != f.n:
        raise DimensionMismatchError(f"pullback needs {f.n} powers, got {len(m)}")
    if any(int(mi) < 1 for mi in m):
        raise ValueError(f"pullback powers must be positive, got {tuple(m)}")
    return Polynomial.from_terms(
        f.n,
        [(tuple(e * int(mi) for e, mi in zip(exponent, m)), coefficient) for exponent, coefficient in f.terms],
    )


def product(fs: Sequence[Polynomial]) -> Polynomial:
    """Expanded product of a non-empty list of polynomials."""
    if not fs:
        raise ValueError("product of an empty list")
    result = fs[0]
    for factor in fs[1:]:
        result = result * factor
    return result


def power(f: Polynomial, m: int) -> Polynomial:
    """f raised to a positive integer power."""
    if m < 1:
        raise ValueError(f"power must be positive, got {m}")
    return product([f] * m)


def face_polynomial(f: Polynomial, points: Iterable[ExponentVector]) -> Polynomial:
    """Sum of the terms of f whose exponents lie in `points`."""
    wanted = set(points)
    return Polynomial(f.n, tuple(term for term in f.terms if term[0] in wanted))


def evaluate(f: Polynomial, point: Sequence[Coefficient]) -> Coefficient:
    """Exact value of f at a point with rational or Gaussian coordinates."""
    if len(point) != f.n:
        raise DimensionMismatchError(f"point has {len(point)} coordinates, expected {f.n}")
    total: Coefficient = Fraction(0)
    for exponent, coefficient in f.terms:
        value: Coefficient = coefficient
        for x, e in zip(point, exponent):
            if e:
                value = value * x**e
        total = total + value
    return total


def variables_of(f: Polynomial) -> frozenset:
    """1-based indices of the variables that occur in f."""
    return frozenset(j for exponent, _ in f.terms for j, e in enumerate(exponent, start=1) if e > 0)
