"""
Pytest tests for non-degeneracy and inv-tameness certificates.

Run with: pytest tests/test_tameness.py -v
"""

from fractions import Fraction

import pytest

from src.core.dual_diagram import build_dual_diagram
from src.core.errors import HypothesisError
from src.core.polynomial import parse_polynomial
from src.core.tameness import (
    certify_diagram,
    exponents_independent,
    find_torus_critical_point,
    inv_tame_certificate,
    monomial_partials,
    nondegeneracy_certificate,
    verify_certificate,
)


class TestCriteria:
    """Test suite for the sufficient criteria."""

    def test_monomial_partials(self):
        """Test partials that are single monomials are found."""
        face = parse_polynomial("z1^5*z2^2 + z1^6*z3")
        assert monomial_partials(face, [1, 2, 3]) == [2, 3]

    def test_exponents_independent(self):
        """Test the rank criterion on chosen coordinates."""
        face = parse_polynomial("z1^6*z3 + z2^6*z3^2 + z1^3*z3^6")
        assert exponents_independent(face, [1, 2, 3])
        assert not exponents_independent(face, [1, 2])

    def test_torus_critical_point(self):
        """Test the grid finds an exact critical point of a square."""
        face = parse_polynomial("z1^2 - 2*z1*z2 + z2^2")
        point = find_torus_critical_point(face, [1, 2])
        assert point is not None
        assert point[0] == point[1] != 0

    def test_user_witness_tried_first(self):
        """Test a supplied witness is returned before the grid."""
        face = parse_polynomial("z1^2 - 2*z1*z2 + z2^2")
        point = find_torus_critical_point(face, [1, 2], witnesses=[(Fraction(3), Fraction(3))])
        assert point == (Fraction(3), Fraction(3))


class TestCertificates:
    """Test suite for per-cell certificates."""

    def test_f1_positive_facet_certified(self, f1):
        """Test the (10,9,6) facet is non-degenerate by independent exponents."""
        diagram = build_dual_diagram(f1)
        cell = diagram.cell_of_weight((10, 9, 6))
        certificate = nondegeneracy_certificate(f1, cell)
        assert certificate.status == "Certified"
        assert certificate.criterion == "independent_exponents"
        assert verify_certificate(f1, cell, certificate)

    def test_f1_vanishing_ray_inv_tame(self, f1):
        """Test the (0,1,2) ray is inv-tame through the monomial partial in z2."""
        diagram = build_dual_diagram(f1)
        cell = diagram.cell_of_weight((0, 1, 2))
        certificate = inv_tame_certificate(f1, cell)
        assert certificate.status == "Certified"
        assert certificate.criterion == "monomial_partial"
        assert certificate.partial == 2
        assert verify_certificate(f1, cell, certificate)

    def test_degenerate_face_refuted(self):
        """Test a square face is refuted with an exact witness."""
        f = parse_polynomial("z1^2 - 2*z1*z2 + z2^2")
        diagram = build_dual_diagram(f)
        cell = diagram.cell_of_weight((1, 1))
        certificate = nondegeneracy_certificate(f, cell)
        assert certificate.status == "Refuted"
        assert certificate.witness is not None
        assert verify_certificate(f, cell, certificate)
        assert not certificate.holds

    def test_undecided_becomes_assumed(self):
        """Test the user flag turns Undecided into Assumed."""
        f = parse_polynomial("z1^2 + z1*z2 + z2^2")
        diagram = build_dual_diagram(f)
        cell = diagram.cell_of_weight((1, 1))
        assert nondegeneracy_certificate(f, cell).status == "Undecided"

        plain = certify_diagram(diagram)
        assumed = certify_diagram(diagram, assume_nondegenerate=True)
        assert plain[cell.id][0].status == "Undecided"
        assert assumed[cell.id][0].status == "Assumed"
        assert assumed[cell.id][0].reason == "user flag --assume-nondegenerate"
        assert assumed[cell.id][0].holds

    def test_wrong_cell_class(self, f1):
        """Test certificates reject cells outside their domain."""
        diagram = build_dual_diagram(f1)
        coordinate = diagram.cell_of_weight((1, 0, 0))
        with pytest.raises(HypothesisError):
            inv_tame_certificate(f1, coordinate)
        with pytest.raises(HypothesisError):
            nondegeneracy_certificate(f1, diagram.cell_of_weight((0, 1, 2)))

    def test_certify_f1(self, f1):
        """Test every f1 certificate holds without flags."""
        certificates = certify_diagram(build_dual_diagram(f1))
        statuses = {c.status for certs in certificates.values() for c in certs}
        assert statuses == {"Certified"}
