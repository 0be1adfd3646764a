import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonclassicality import (
    CenteredMoments,
    SingleModeMoments,
    SqueezedCoherentParams,
    UnphysicalMomentsError,
    center,
    squeezed_coherent_moments,
    validate_physical,
)

alphas = st.builds(
    complex,
    st.floats(-5.0, 5.0, allow_nan=False),
    st.floats(-5.0, 5.0, allow_nan=False),
)
strengths = st.floats(0.0, 5.0, allow_nan=False)
angles = st.floats(0.0, 2.0 * math.pi, allow_nan=False, exclude_max=True)


class TestSqueezedCoherentMoments:
    def test_vacuum_is_exact_fixed_point(self):
        m = squeezed_coherent_moments(SqueezedCoherentParams(0.0, 0.0, 0.0))
        assert m.mean_a == 0.0
        assert m.a_squared == 0.0
        assert m.photon_number == 0.0

    def test_coherent_state(self):
        m = squeezed_coherent_moments(SqueezedCoherentParams(1.0, 0.0, 0.0))
        assert m.mean_a == 1.0
        assert m.a_squared == 1.0
        assert m.photon_number == 1.0

    @pytest.mark.parametrize("r", [0.3, 1.0, 2.0])
    @pytest.mark.parametrize("theta", [0.0, 1.2, 4.5])
    def test_squeezed_vacuum(self, r, theta):
        m = squeezed_coherent_moments(SqueezedCoherentParams(0.0, r, theta))
        c, s = math.cosh(r), math.sinh(r)
        assert m.mean_a == 0.0
        assert cmath.isclose(m.a_squared, -c * s * cmath.exp(1j * theta), rel_tol=1e-14)
        assert math.isclose(m.photon_number, s * s, rel_tol=1e-14)

    def test_negative_strength_rejected(self):
        with pytest.raises(ValueError):
            SqueezedCoherentParams(0.0, -0.1, 0.0)


class TestCenter:
    def test_coherent_state_centers_to_vacuum(self):
        c = center(SingleModeMoments(1.0, 1.0, 1.0))
        assert c.v == 0.0 and c.theta == 0.0 and c.n == 0.0

    @pytest.mark.parametrize("r", [0.25, 0.8, 1.7])
    def test_squeezed_vacuum_centered(self, r):
        # Direct evaluation: centered <a^2> = -cosh(r) sinh(r), phase pi.
        c = center(squeezed_coherent_moments(SqueezedCoherentParams(0.0, r, 0.0)))
        assert math.isclose(c.v, math.cosh(r) * math.sinh(r), rel_tol=1e-13)
        assert math.isclose(c.theta, math.pi, rel_tol=1e-13)
        assert math.isclose(c.n, math.sinh(r) ** 2, rel_tol=1e-13)

    @given(alpha=alphas, r=strengths, theta=angles)
    def test_displacement_invariance(self, alpha, r, theta):
        displaced = center(squeezed_coherent_moments(SqueezedCoherentParams(alpha, r, theta)))
        undisplaced = center(squeezed_coherent_moments(SqueezedCoherentParams(0.0, r, theta)))
        assert cmath.isclose(
            displaced.a_squared(), undisplaced.a_squared(), rel_tol=1e-12, abs_tol=1e-12
        )
        assert math.isclose(displaced.n, undisplaced.n, rel_tol=1e-12, abs_tol=1e-12)

    @given(alpha=alphas, r=strengths, theta=angles)
    def test_squeezed_coherent_family_is_physical(self, alpha, r, theta):
        c = center(squeezed_coherent_moments(SqueezedCoherentParams(alpha, r, theta)))
        assert validate_physical(c)

    def test_unphysical_input_reported(self):
        with pytest.raises(UnphysicalMomentsError):
            SingleModeMoments(0.0, 2.0, 1.0)
        with pytest.raises(UnphysicalMomentsError):
            SingleModeMoments(0.0, 0.0, -0.5)


class TestValidatePhysical:
    def test_vacuum(self):
        assert validate_physical(CenteredMoments(0.0, 0.0, 0.0))

    def test_boundary_equality_case(self):
        assert validate_physical(CenteredMoments(math.sqrt(2.0), 0.0, 1.0))

    def test_violation(self):
        assert not validate_physical(CenteredMoments(2.0, 0.0, 1.0))

    def test_negative_occupation(self):
        assert not validate_physical(CenteredMoments(0.0, 0.0, -1.0))


class TestCenteredMoments:
    def test_phase_normalized_into_period(self):
        c = CenteredMoments(1.0, -1.0, 2.0)
        assert 0.0 <= c.theta < 2.0 * math.pi
        assert math.isclose(c.theta, 2.0 * math.pi - 1.0)

    def test_zero_magnitude_gets_zero_phase(self):
        assert CenteredMoments(0.0, 1.234, 2.0).theta == 0.0

    def test_negative_magnitude_rejected(self):
        with pytest.raises(ValueError):
            CenteredMoments(-0.1, 0.0, 1.0)
