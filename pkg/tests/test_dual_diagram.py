"""
Pytest tests for the dual Newton diagram.

Run with: pytest tests/test_dual_diagram.py -v
"""

from fractions import Fraction

import pytest

from src.core.dual_diagram import (
    build_dual_diagram,
    classify_weight,
    export_simplex_projection,
    normalize,
    theta_prime,
    variable_sets,
)
from src.core.errors import DimensionMismatchError, HypothesisError, NormalizationError
from src.core.newton import WeightVector
from src.core.polynomial import parse_polynomial


class TestDualDiagram:
    """Test suite for cell construction."""

    def test_f1_cell_counts(self, f1):
        """Test f1 has 8 vertex cells, 11 edge cells and 4 full cells."""
        counts = build_dual_diagram(f1).counts()
        assert counts["by_dim"] == {"1": 8, "2": 11, "3": 4}

    def test_cell_ids_are_stable(self, f1):
        """Test two builds give identical ids and faces."""
        first = build_dual_diagram(f1)
        second = build_dual_diagram(f1)
        assert [(c.id, c.face.key()) for c in first.cells] == [(c.id, c.face.key()) for c in second.cells]
        assert [c.id for c in first.cells] == [f"C{i}" for i in range(len(first.cells))]

    def test_vertex_classes_and_labels(self, f1):
        """Test coordinate rays are nonvanishing and labeled E1..E3."""
        diagram = build_dual_diagram(f1)
        labels = {cell.label: cell.cell_class for cell in diagram.vertex_cells()}
        assert labels["E1"] == labels["E2"] == labels["E3"] == "nonvanishing"
        assert labels["(10,9,6)"] == labels["(8,7,6)"] == "positive"
        assert labels["(0,1,2)"] == labels["(2,0,5)"] == labels["(2,1,0)"] == "vanishing"

    def test_cell_of_weight(self, f1):
        """Test weights land in the cell of their face."""
        diagram = build_dual_diagram(f1)
        cell = diagram.cell_of_weight((20, 18, 12))
        assert cell.rep.as_integers() == (10, 9, 6)
        assert cell.is_vertex

    def test_incidence(self, f1):
        """Test a full cell lies below the vertex cells through its point."""
        diagram = build_dual_diagram(f1)
        region = diagram.cell_of_weight((10, 8, 13))
        assert region.cell_dim == 3
        assert region.face.on_points == frozenset({(5, 2, 0)})
        above = diagram.above(region)
        assert all(other.face.contains(region.face) for other in above)
        assert any(other.rep.as_integers() == (8, 7, 6) for other in above)

    def test_itilde_contains_i(self, f1):
        """Test I is contained in I~ for every vanishing cell."""
        diagram = build_dual_diagram(f1)
        for cell in diagram.cells:
            if cell.cell_class == "vanishing":
                assert cell.I <= cell.itilde


class TestWeights:
    """Test suite for classification and normalization."""

    def test_classify_weight(self, f1):
        """Test the three weight classes."""
        assert classify_weight((1, 1, 1), f1) == "positive"
        assert classify_weight((0, 1, 2), f1) == "vanishing"
        assert classify_weight((1, 0, 0), f1) == "nonvanishing"

    def test_normalized_facet_vertices(self, f1):
        """Test exact normalized weights of the five non-coordinate rays."""
        expected = {
            (10, 9, 6): (Fraction(5, 33), Fraction(3, 22), Fraction(1, 11)),
            (8, 7, 6): (Fraction(4, 27), Fraction(7, 54), Fraction(1, 9)),
            (0, 1, 2): (Fraction(0), Fraction(1, 2), Fraction(1)),
            (2, 0, 5): (Fraction(1, 5), Fraction(0), Fraction(1, 2)),
            (2, 1, 0): (Fraction(1, 3), Fraction(1, 6), Fraction(0)),
        }
        for weight, normalized in expected.items():
            result = normalize(weight, f1)
            assert result.entries == normalized
            assert result.is_normalized

    def test_normalize_rejects_d_zero(self, f1):
        """Test d(P) = 0 has no normalized form."""
        with pytest.raises(NormalizationError):
            normalize((1, 0, 0), f1)


class TestThetaPrime:
    """Test suite for the per-cell ratio values."""

    def test_f1_vertex_values(self, f1):
        """Test theta' of the f1 facet vertices."""
        diagram = build_dual_diagram(f1)
        values = {
            cell.label: theta_prime(cell, f1)
            for cell in diagram.vertex_cells()
            if cell.cell_class != "nonvanishing"
        }
        assert values == {
            "(10,9,6)": Fraction(10, 11),
            "(8,7,6)": Fraction(8, 9),
            "(0,1,2)": Fraction(1, 2),
            "(2,0,5)": Fraction(4, 5),
            "(2,1,0)": Fraction(5, 6),
        }

    def test_f1_region_values(self, f1):
        """Test full cells give 1 - 1/|nu|."""
        diagram = build_dual_diagram(f1)
        values = sorted(theta_prime(cell, f1) for cell in diagram.full_cells())
        assert values == [Fraction(6, 7), Fraction(6, 7), Fraction(7, 8), Fraction(8, 9)]

    def test_f3_vanishing_vertices(self, f3):
        """Test the f3 vanishing rays split into 1/2 and 3/4."""
        diagram = build_dual_diagram(f3)
        values = sorted(
            theta_prime(cell, f3) for cell in diagram.vertex_cells() if cell.cell_class == "vanishing"
        )
        assert values.count(Fraction(1, 2)) == 3
        assert values.count(Fraction(3, 4)) == 3
        assert max(values) == Fraction(3, 4)

    def test_variable_sets(self, f1):
        """Test Var, I, I~ and the invulnerable set of a vanishing ray."""
        diagram = build_dual_diagram(f1)
        cell = diagram.cell_of_weight((0, 1, 2))
        var, I, itilde, var_inv = variable_sets(cell, f1)
        assert var == frozenset({1, 2, 3})
        assert I == itilde == frozenset({1})
        assert var_inv == frozenset({2, 3})

    def test_nonvanishing_is_undefined(self, f1):
        """Test theta' and the variable sets reject nonvanishing cells."""
        diagram = build_dual_diagram(f1)
        cell = diagram.cell_of_weight((1, 0, 0))
        with pytest.raises(HypothesisError):
            theta_prime(cell, f1)
        with pytest.raises(HypothesisError):
            variable_sets(cell, f1)


class TestSimplexProjection:
    """Test suite for the n = 3 plane section."""

    def test_f1_plan(self, f1):
        """Test one point per ray, one segment per edge and one region per vertex."""
        plan = export_simplex_projection(build_dual_diagram(f1))
        assert len(plan.points) == 8
        assert len(plan.segments) == 11
        assert len(plan.regions) == 4
        for point in plan.points:
            assert sum(point.bary) == 1
        monomials = {region.monomial: region.value for region in plan.regions}
        assert monomials["z1^3*z3^6"] == Fraction(8, 9)

    def test_requires_three_variables(self):
        """Test other dimensions are rejected."""
        diagram = build_dual_diagram(parse_polynomial("z1^2 + z2^3"))
        with pytest.raises(DimensionMismatchError):
            export_simplex_projection(diagram)

    def test_weight_vector_helper(self):
        """Test WeightVector.of builds exact entries."""
        assert WeightVector.of(1, 2).entries == (Fraction(1), Fraction(2))
