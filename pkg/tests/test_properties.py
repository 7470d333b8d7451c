"""
Seeded property tests across modules.

Run with: pytest tests/test_properties.py -v
"""

from fractions import Fraction

import numpy as np
import pytest
import sympy

from src.core.bounds import ProductFamily, bound_convenient, bound_general, bound_product, power_exponent
from src.core.curves import Curve, CurveTerm, lift_subspace_curve, monomial_curve, probe
from src.core.dual_diagram import build_dual_diagram, normalize
from src.core.errors import ProbeError
from src.core.newton import d_and_face, facets
from src.core.polynomial import Polynomial, gradient, partial_derivative, product, restrict
from src.core.tameness import certify_diagram, verify_certificate

SEED = 7
CORPUS = ["f1", "f2", "f3", "ex21", "g4", "f4", "f1_pullback", "g_moduli"]


def _random_polynomial(rng: np.random.Generator, n: int, terms: int, max_degree: int) -> Polynomial:
    raw = []
    for _ in range(terms):
        exponent = tuple(int(e) for e in rng.integers(0, max_degree + 1, size=n))
        if sum(exponent) == 0:
            exponent = (1,) + exponent[1:]
        raw.append((exponent, Fraction(int(rng.integers(1, 5)) * int(rng.choice([-1, 1])))))
    return Polynomial.from_terms(n, raw)


def _random_rational(rng: np.random.Generator) -> Fraction:
    numerator = int(rng.integers(1, 5)) * int(rng.choice([-1, 1]))
    return Fraction(numerator, int(rng.integers(1, 4)))


def _brute_force_order(f: Polynomial, curve: Curve):
    t = sympy.Symbol("t")
    coords = [
        sum((sympy.Rational(term.coefficient.numerator, term.coefficient.denominator) * t ** int(term.exponent) for term in terms), sympy.Integer(0))
        for terms in curve.coords
    ]
    expression = sympy.Integer(0)
    for nu, coefficient in f.terms:
        monomial = sympy.Rational(coefficient.numerator, coefficient.denominator)
        for z, e in zip(coords, nu):
            monomial *= z**e
        expression += monomial
    expanded = sympy.Poly(sympy.expand(expression), t)
    if expanded.is_zero:
        return None
    return min(monom[0] for monom in expanded.monoms())


class TestProductPowerCoherence:
    """Test suite for products of one member against the power formula."""

    def test_random_members(self):
        """Test bound_product({f}, (m)) equals power_exponent of the convenient bound."""
        rng = np.random.default_rng(SEED)
        for _ in range(50):
            a, b = (int(v) for v in rng.integers(2, 9, size=2))
            i, j = (int(v) for v in rng.integers(2, 5, size=2))
            f = Polynomial.from_terms(2, [((a, 0), Fraction(1)), ((0, b), Fraction(1)), ((i, j), Fraction(3))])
            base = bound_convenient(f).bound
            for m in (1, 2, 3):
                assert bound_product(ProductFamily((f,), (m,))).bound == power_exponent(base, m)


class TestGeometry:
    """Test suite for facet and weight properties."""

    def test_faces_lie_in_facets(self):
        """Test every sampled face sits inside a reported facet."""
        rng = np.random.default_rng(SEED)
        for _ in range(20):
            n = int(rng.integers(2, 4))
            f = _random_polynomial(rng, n, int(rng.integers(2, 9)), 6)
            if f.is_zero():
                continue
            facet_faces = [facet.face.on_points for facet in facets(f)]
            for _ in range(10):
                P = tuple(Fraction(int(p)) for p in rng.integers(1, 20, size=n))
                _, face = d_and_face(P, f)
                assert any(face.on_points <= on_points for on_points in facet_faces)

    def test_convex_combination_above_componentwise_min(self, f1):
        """Test combinations of adjacent normalized rays dominate their componentwise minimum."""
        rng = np.random.default_rng(SEED)
        diagram = build_dual_diagram(f1)
        rays = [cell for cell in diagram.vertex_cells() if cell.d > 0]
        pairs = [
            (normalize(left.rep, f1), normalize(right.rep, f1))
            for left in rays
            for right in rays
            if left.id < right.id and left.face.on_points & right.face.on_points
        ]
        assert pairs
        for _ in range(200):
            P, Q = pairs[int(rng.integers(len(pairs)))]
            s = Fraction(int(rng.integers(0, 101)), 100)
            for p, q in zip(P.entries, Q.entries):
                assert (1 - s) * p + s * q >= min(p, q)


class TestCurveProperties:
    """Test suite for curve soundness, lift stability and the expansion oracle."""

    @pytest.mark.parametrize("name", CORPUS)
    def test_random_curves_below_general_bound(self, name, request):
        """Test random monomial curves never beat the general bound."""
        f = request.getfixturevalue(name)
        bound = bound_general(f).bound
        rng = np.random.default_rng(SEED)
        checked = 0
        for _ in range(100):
            weights = [int(w) for w in rng.integers(1, 13, size=3)]
            curve = monomial_curve(weights, [_random_rational(rng) for _ in range(3)])
            try:
                result = probe(f, curve)
            except ProbeError:
                continue
            checked += 1
            assert result.theta <= bound
        assert checked > 50

    def test_lift_stability(self, f3):
        """Test the lifted curve gives the same probe for increasing padding powers."""
        rng = np.random.default_rng(SEED)
        for _ in range(20):
            p, q = (int(v) for v in rng.integers(1, 6, size=2))
            curve = Curve(
                (
                    (CurveTerm(_random_rational(rng), Fraction(p)),),
                    (CurveTerm(_random_rational(rng), Fraction(q)),),
                    (),
                )
            )
            base = lift_subspace_curve(f3, curve)
            N = int(base.coords[2][0].exponent)
            results = [probe(f3, lift_subspace_curve(f3, curve, N=N + step)) for step in (0, 5, 10)]
            assert len({(r.ord_f, r.ord_grad) for r in results}) == 1

    def test_expansion_oracle(self):
        """Test grouped orders against a full symbolic expansion."""
        rng = np.random.default_rng(SEED)
        compared = 0
        for _ in range(100):
            f = _random_polynomial(rng, 2, 3, 4)
            curve = Curve(
                tuple(
                    tuple(
                        CurveTerm(_random_rational(rng), Fraction(e))
                        for e in sorted({int(v) for v in rng.integers(1, 4, size=int(rng.integers(1, 3)))})
                    )
                    for _ in range(2)
                )
            )
            expected = _brute_force_order(f, curve)
            if expected is None:
                with pytest.raises(ProbeError):
                    probe(f, curve, truncation=60)
                continue
            partial_orders = [None if g.is_zero() else _brute_force_order(g, curve) for g in gradient(f)]
            if all(order is None for order in partial_orders):
                continue
            result = probe(f, curve, truncation=60)
            assert result.ord_f == expected
            assert result.ord_grad == min(order for order in partial_orders if order is not None)
            compared += 1
        assert compared > 50


class TestAlgebraProperties:
    """Test suite for restriction, derivatives and products on random inputs."""

    def test_restrict_composes(self):
        """Test restricting twice equals restricting to the intersection."""
        rng = np.random.default_rng(SEED)
        for _ in range(50):
            f = _random_polynomial(rng, 3, int(rng.integers(1, 8)), 4)
            first = {j for j in (1, 2, 3) if rng.random() < 0.6}
            second = {j for j in (1, 2, 3) if rng.random() < 0.6}
            assert restrict(restrict(f, first), second) == restrict(f, first & second)

    def test_partial_commutes_with_restrict(self):
        """Test d/dz_j commutes with restriction when j is kept."""
        rng = np.random.default_rng(SEED)
        for _ in range(50):
            f = _random_polynomial(rng, 3, int(rng.integers(1, 8)), 4)
            kept = {j for j in (1, 2, 3) if rng.random() < 0.6} | {int(rng.integers(1, 4))}
            for j in kept:
                assert partial_derivative(restrict(f, kept), j) == restrict(partial_derivative(f, j), kept)

    def test_product_support_is_minkowski_sum(self):
        """Test positive coefficients keep every sum of exponents in the product."""
        rng = np.random.default_rng(SEED)
        for _ in range(50):
            left, right = (
                Polynomial.from_terms(
                    2,
                    [
                        (tuple(int(e) for e in rng.integers(0, 5, size=2)), Fraction(int(rng.integers(1, 6))))
                        for _ in range(int(rng.integers(1, 5)))
                    ],
                )
                for _ in range(2)
            )
            expected = {tuple(a + b for a, b in zip(p, q)) for p in left.support for q in right.support}
            assert set(product([left, right]).support) == expected


class TestWeightProperties:
    """Test suite for d(P) and Delta(P) under scaling."""

    @pytest.mark.parametrize("name", ["f1", "f3", "f4"])
    def test_scaling(self, name, request):
        """Test d(lambda P) = lambda d(P) and Delta(lambda P) = Delta(P)."""
        f = request.getfixturevalue(name)
        rng = np.random.default_rng(SEED)
        for _ in range(50):
            P = tuple(Fraction(int(p)) for p in rng.integers(0, 15, size=f.n))
            if not any(P):
                continue
            scale = Fraction(int(rng.integers(1, 20)), int(rng.integers(1, 20)))
            d, face = d_and_face(P, f)
            scaled_d, scaled_face = d_and_face(tuple(scale * p for p in P), f)
            assert scaled_d == scale * d
            assert scaled_face.key() == face.key()


class TestDiagramProperties:
    """Test suite for incidence and the vulnerable-variable sets."""

    @pytest.mark.parametrize("name", CORPUS)
    def test_incidence_matches_faces(self, name, request):
        """Test Q is above P exactly when the recomputed face of Q strictly contains that of P."""
        f = request.getfixturevalue(name)
        diagram = build_dual_diagram(f)
        faces = {cell.id: d_and_face(cell.rep, f)[1] for cell in diagram.cells}
        for cell in diagram.cells:
            expected = {
                other.id
                for other in diagram.cells
                if faces[other.id].contains(faces[cell.id]) and faces[other.id].key() != faces[cell.id].key()
            }
            assert diagram.incidence[cell.id] == frozenset(expected)

    @pytest.mark.parametrize("name", CORPUS)
    def test_itilde_shrinks_upward(self, name, request):
        """Test I~(P) contains I~(Q) for every Q above P."""
        diagram = build_dual_diagram(request.getfixturevalue(name))
        for cell in diagram.cells:
            for other in diagram.above(cell):
                assert cell.itilde >= other.itilde

    @pytest.mark.parametrize("name", CORPUS)
    def test_facet_vertex_itilde_is_i(self, name, request):
        """Test facet vertices outside the nonvanishing class have I~ = I."""
        diagram = build_dual_diagram(request.getfixturevalue(name))
        vertices = [cell for cell in diagram.vertex_cells() if cell.cell_class != "nonvanishing"]
        assert vertices
        for cell in vertices:
            assert cell.itilde == cell.I
            if cell.cell_class == "positive":
                assert not cell.I


class TestCertificateProperties:
    """Test suite for certificate soundness and determinism."""

    @pytest.mark.parametrize("name", CORPUS)
    def test_decided_certificates_verify(self, name, request):
        """Test every Certified or Refuted certificate re-checks from its evidence."""
        f = request.getfixturevalue(name)
        diagram = build_dual_diagram(f)
        certificates = certify_diagram(diagram)
        for cell_id, cell_certificates in certificates.items():
            cell = diagram.cell(cell_id)
            for certificate in cell_certificates:
                if certificate.status in ("Certified", "Refuted"):
                    assert verify_certificate(f, cell, certificate), (cell_id, certificate)

    @pytest.mark.parametrize("name", ["f1", "f2", "f3", "ex21"])
    def test_certify_is_deterministic(self, name, request):
        """Test repeated runs give identical certificates."""
        f = request.getfixturevalue(name)
        first = certify_diagram(build_dual_diagram(f))
        second = certify_diagram(build_dual_diagram(f))
        assert first == second
        for cell_certificates in first.values():
            statuses = {(c.kind, c.status) for c in cell_certificates}
            for kind in ("nondegenerate", "inv_tame"):
                assert not {(kind, "Certified"), (kind, "Refuted")} <= statuses
