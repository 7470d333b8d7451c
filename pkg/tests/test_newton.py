"""
Pytest tests for Newton polyhedron geometry.

Run with: pytest tests/test_newton.py -v
"""

from fractions import Fraction

import pytest

from src.core.errors import GuardExceededError, ZeroPolynomialError
from src.core.newton import (
    WeightVector,
    axis_data,
    check_guards,
    convenience_level,
    d_and_face,
    facets,
    is_convenient,
    is_k_convenient,
    polyhedron_vertices,
    primitive_vector,
    vertex_witness,
)
from src.core.polynomial import Polynomial, parse_polynomial


class TestWeightVector:
    """Test suite for weight vectors."""

    def test_pairing_and_zero_indices(self):
        """Test <P, nu> and I(P)."""
        P = WeightVector.of(0, 1, 2)
        assert P.pairing((5, 2, 0)) == 2
        assert P.zero_indices() == frozenset({1})
        assert not P.is_positive()
        assert str(P) == "(0,1,2)"

    def test_rejects_bad_entries(self):
        """Test negative and all-zero weights are rejected."""
        with pytest.raises(ValueError):
            WeightVector.of(1, -1)
        with pytest.raises(ValueError):
            WeightVector.of(0, 0)

    def test_primitive_vector(self):
        """Test scaling to coprime integers."""
        assert primitive_vector([Fraction(1, 2), Fraction(3, 4)]) == (2, 3)
        assert primitive_vector([4, 6, 10]) == (2, 3, 5)
        with pytest.raises(ValueError):
            primitive_vector([0, 0])


class TestFacets:
    """Test suite for facet enumeration."""

    def test_f1_facets(self, f1):
        """Test the eight facets of f1 with their offsets."""
        found = {facet.normal.as_integers(): facet.offset for facet in facets(f1)}
        assert found == {
            (0, 0, 1): 0,
            (0, 1, 0): 0,
            (0, 1, 2): 2,
            (1, 0, 0): 0,
            (2, 0, 5): 10,
            (2, 1, 0): 6,
            (8, 7, 6): 54,
            (10, 9, 6): 66,
        }

    def test_facets_are_codimension_one(self, f3):
        """Test every facet face has dimension n - 1."""
        assert all(facet.face.dim == 2 for facet in facets(f3))

    def test_one_variable(self):
        """Test n = 1 gives the single facet at the lowest exponent."""
        (facet,) = facets(parse_polynomial("z1^3 + z1^5"))
        assert facet.normal.as_integers() == (1,)
        assert facet.offset == 3

    def test_single_monomial(self):
        """Test a single monomial has the coordinate facets only."""
        found = {facet.normal.as_integers(): facet.offset for facet in facets(parse_polynomial("z1^2*z2^3"))}
        assert found == {(1, 0): 2, (0, 1): 3}

    def test_zero_polynomial(self):
        """Test the zero polynomial has no Newton polyhedron."""
        with pytest.raises(ZeroPolynomialError):
            facets(Polynomial.zero(2))

    def test_guards(self, f1):
        """Test the size guards."""
        check_guards(f1)
        with pytest.raises(GuardExceededError):
            facets(f1, max_variables=2)
        with pytest.raises(GuardExceededError):
            check_guards(f1, max_support=3)


class TestFaces:
    """Test suite for faces, vertices and axis data."""

    def test_d_and_face_of_facet_normal(self, f1):
        """Test the face of a facet normal."""
        d, face = d_and_face((10, 9, 6), f1)
        assert d == 66
        assert face.on_points == frozenset({(6, 0, 1), (0, 6, 2), (3, 0, 6)})
        assert face.dim == 2

    def test_d_and_face_with_recession(self, f1):
        """Test zero weight entries become recession directions."""
        d, face = d_and_face((0, 1, 2), f1)
        assert d == 2
        assert face.recession == frozenset({1})
        assert face.on_points == frozenset({(5, 2, 0), (6, 0, 1)})

    def test_polyhedron_vertices(self, f1, f3):
        """Test vertices and their degrees."""
        assert sorted(size for _, size in polyhedron_vertices(f1)) == [7, 7, 8, 9]
        assert dict(polyhedron_vertices(f3)) == {(0, 4, 2): 6, (1, 1, 1): 3, (2, 0, 4): 6, (4, 2, 0): 6}

    def test_vertex_witness(self, f3):
        """Test the witness weight picks out exactly the vertex."""
        witness = vertex_witness(f3, (1, 1, 1))
        assert witness is not None and witness.is_positive()
        _, face = d_and_face(witness, f3)
        assert face.on_points == frozenset({(1, 1, 1)})
        assert vertex_witness(parse_polynomial("z1^2 + z1*z2 + z2^2"), (1, 1)) is None

    def test_convenience(self, f1, ex21):
        """Test k-convenience levels."""
        assert is_convenient(ex21)
        assert convenience_level(ex21) == 2
        assert not is_convenient(f1)
        assert is_k_convenient(f1, 1)
        assert convenience_level(f1) == 1
        with pytest.raises(ValueError):
            is_k_convenient(f1, 3)

    def test_axis_data(self, f1, ex21):
        """Test axis intersections and B."""
        axis = axis_data(ex21)
        assert axis.b == (5, 4, 4)
        assert axis.B == 5
        assert axis.I_B == frozenset({1})

        assert axis_data(f1).B is None
        assert axis_data(f1).b == (None, None, None)
