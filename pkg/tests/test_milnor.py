"""
Pytest tests for Newton and Milnor numbers.

Run with: pytest tests/test_milnor.py -v
"""

import pytest

from src.core.errors import GuardExceededError, HypothesisError, StabilizationError, ZeroPolynomialError
from src.core.milnor import milnor_number, newton_number, normalized_volume
from src.core.polynomial import Polynomial, parse_polynomial


class TestNewtonNumber:
    """Test suite for the Newton number of convenient polynomials."""

    def test_normalized_volumes(self):
        """Test k! V in one, two and three variables."""
        assert normalized_volume(parse_polynomial("z1^4 + z1^7")) == 4
        assert normalized_volume(parse_polynomial("z1^2 + z2^3")) == 6
        assert normalized_volume(parse_polynomial("z1^3 + z2^3 + z3^3")) == 27

    def test_fermat_cubic(self, fermat):
        """Test z1^3 + z2^3 + z3^3 has Milnor number 8."""
        assert newton_number(fermat) == 8
        assert milnor_number(fermat) == 8

    def test_plane_curves(self):
        """Test A_k and Brieskorn curve values."""
        assert milnor_number(parse_polynomial("z1^2 + z2^2")) == 1
        assert milnor_number(parse_polynomial("z1^2 + z2^5")) == 4
        assert milnor_number(parse_polynomial("z1^3 + z2^4")) == 6

    def test_requires_convenient(self, f1):
        """Test the Newton number itself needs a convenient polynomial."""
        with pytest.raises(HypothesisError):
            newton_number(f1)


class TestMilnorNumber:
    """Test suite for stabilized Milnor numbers."""

    def test_g4(self, g4):
        """Test the non-convenient loop polynomial g4."""
        assert milnor_number(g4) == 990

    def test_f4(self, f4):
        """Test f4 = g4 + z1^2*z2^2*z3^2."""
        assert milnor_number(f4) == 543

    def test_plane_loop(self):
        """Test a two-variable loop stabilizes to the product of exponents."""
        assert milnor_number(parse_polynomial("z1^3*z2 + z2^4*z1")) == milnor_number(
            parse_polynomial("z1^3*z2 + z2^4*z1 + z1^40 + z2^40")
        )

    def test_errors(self, fermat):
        """Test the guards and hypotheses."""
        with pytest.raises(GuardExceededError):
            milnor_number(parse_polynomial("z1^2 + z2^2 + z3^2 + z4^2"))
        with pytest.raises(HypothesisError):
            milnor_number(parse_polynomial("1 + z1^2 + z2^2"))
        with pytest.raises(ZeroPolynomialError):
            milnor_number(Polynomial.zero(2))

    def test_budget_exhausted(self):
        """Test a non-isolated singularity never stabilizes."""
        with pytest.raises(StabilizationError):
            milnor_number(parse_polynomial("z1^2*z2^2"), budget=(25, 32))
