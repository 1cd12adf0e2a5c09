from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from scipy import special

from stieltjes_pade import (Atom, MomentSequence, QuadratureHint, SpectralMeasure,
                            checkerboard_density, hankel, moment, moments, table_density,
                            value_count_class)
from stieltjes_pade.errors import QuadratureError
from stieltjes_pade.measure import ContinuousDensity, VolumeFractionWarning, integrate_density

from conftest import atomic_measures


def catalan_moments(count):
    # coefficient of s**-(m+1) in 1 - sqrt(1 - 1/s)
    m = np.arange(count)
    return special.comb(2 * m, m) / (m + 1) / (2.0 * 4.0 ** m)


class TestAtom:
    def test_valid(self):
        a = Atom(0.25, 0.3)
        assert (a.position, a.weight) == (0.25, 0.3)

    @pytest.mark.parametrize("z, w", [(-0.1, 0.2), (1.1, 0.2), (0.5, 0.0), (0.5, -1.0)])
    def test_rejects_out_of_range(self, z, w):
        with pytest.raises(ValueError):
            Atom(z, w)


class TestSpectralMeasure:
    def test_atoms_sorted(self):
        m = SpectralMeasure.from_atoms([0.75, 0.25], [0.2, 0.3])
        np.testing.assert_array_equal(m.positions, [0.25, 0.75])
        np.testing.assert_array_equal(m.weights, [0.3, 0.2])

    def test_rejects_close_atoms(self):
        with pytest.raises(ValueError):
            SpectralMeasure.from_atoms([0.5, 0.5 + 1e-13], [0.1, 0.1])

    def test_mass_warning(self):
        with pytest.warns(VolumeFractionWarning):
            SpectralMeasure.from_atoms([0.2, 0.4], [0.6, 0.6])

    def test_zero_measure(self):
        assert SpectralMeasure().is_zero
        assert SpectralMeasure().mass == 0.0

    def test_checkerboard_mass(self, checkerboard):
        assert checkerboard.mass == pytest.approx(0.5, abs=1e-12)


class TestMoment:
    def test_zero_measure(self):
        assert moment(SpectralMeasure(), 0) == 0.0

    def test_two_atoms_first_moment(self, two_atoms):
        assert moment(two_atoms, 1) == pytest.approx(0.3 * 0.25 + 0.2 * 0.75, rel=1e-15)

    def test_checkerboard_first_moment(self, checkerboard):
        assert moment(checkerboard, 1) == pytest.approx(0.125, abs=1e-12)

    def test_negative_order(self, two_atoms):
        with pytest.raises(ValueError):
            moment(two_atoms, -1)

    def test_checkerboard_against_mpmath(self, checkerboard):
        # independent oracle: with z = sin(t)**2 the moment is
        # (2/pi) * integral over [0, pi/2] of sin(t)**(2m) cos(t)**2
        for m in range(8):
            ref = 2 / mpmath.pi * mpmath.quad(lambda t: mpmath.sin(t) ** (2 * m) * mpmath.cos(t) ** 2,
                                              [0, mpmath.pi / 2])
            assert moment(checkerboard, m) == pytest.approx(float(ref), abs=1e-12)


class TestMoments:
    def test_two_atoms(self, two_atoms):
        np.testing.assert_allclose(moments(two_atoms, 3).values, [0.5, 0.225, 0.13125],
                                   rtol=1e-15)

    def test_atom_at_zero(self):
        np.testing.assert_array_equal(moments(SpectralMeasure.from_atoms([0.0], [0.4]), 5).values,
                                      [0.4, 0, 0, 0, 0])

    def test_checkerboard(self, checkerboard):
        np.testing.assert_allclose(moments(checkerboard, 4).values, [1 / 2, 1 / 8, 1 / 16, 5 / 128],
                                   atol=1e-13)
        np.testing.assert_allclose(moments(checkerboard, 20).values, catalan_moments(20),
                                   atol=1e-12)

    def test_count_must_be_positive(self, two_atoms):
        with pytest.raises(ValueError):
            moments(two_atoms, 0)

    def test_table_density(self):
        m = SpectralMeasure(density=table_density([0.0, 1.0], [0.4, 0.4]))
        np.testing.assert_allclose(moments(m, 4).values, 0.4 / np.arange(1, 5), atol=1e-12)

    def test_quadrature_failure_carries_estimate(self):
        bad = ContinuousDensity(lambda z: np.abs(z - 0.5) ** -0.999, QuadratureHint.SMOOTH)
        with pytest.raises(QuadratureError) as info, np.errstate(divide="ignore"):
            integrate_density(bad, lambda z: np.ones_like(z))
        assert info.value.error_estimate > 0


class TestValueCount:
    def test_classes(self, two_atoms, checkerboard):
        assert value_count_class(SpectralMeasure()).kind == "zero"
        three = SpectralMeasure.from_atoms([0.1, 0.2, 0.3], [0.1, 0.1, 0.1])
        assert value_count_class(three) == ("finite", 3)
        assert value_count_class(checkerboard).kind == "infinite"


class TestMomentSequence:
    def test_read_only(self):
        mu = MomentSequence([0.5, 0.2])
        with pytest.raises(ValueError):
            np.asarray(mu)[0] = 1.0

    def test_get_negative_index(self):
        assert MomentSequence([0.5, 0.2]).get(-3) == 0.0

    @pytest.mark.parametrize("values", [[-0.1, 0.0], [0.2, 0.3]])
    def test_rejects_invalid(self, values):
        with pytest.raises(ValueError):
            MomentSequence(values)

    def test_consistency(self, two_atoms):
        assert moments(two_atoms, 8).is_consistent()
        # non-increasing, but the 2x2 Hankel determinant 0.5*0.1 - 0.4**2 is negative
        assert not MomentSequence([0.5, 0.4, 0.1]).is_consistent()


@given(atomic_measures())
def test_moments_nonnegative_nonincreasing(m):
    mu = moments(m, 12).values
    assert np.all(mu >= 0)
    assert np.all(np.diff(mu) <= 1e-15)


@given(atomic_measures())
def test_atomic_moments_match_exact_arithmetic(m):
    atoms = [(Fraction(a.position), Fraction(a.weight)) for a in m.atoms]
    exact = [float(sum(w * z ** k for z, w in atoms)) for k in range(10)]
    np.testing.assert_allclose(moments(m, 10).values, exact, rtol=1e-14, atol=1e-300)


@given(atomic_measures(max_atoms=6))
def test_hankel_positive_definite(m):
    n = len(m.atoms)
    mu = moments(m, 2 * n)
    H = hankel(mu.values, n)
    assert np.all(np.linalg.eigvalsh(H) > -1e-15)
    x = np.random.default_rng(n).standard_normal(n)
    assert x @ H @ x > 0


def test_hankel_positive_definite_checkerboard(checkerboard):
    H = hankel(moments(checkerboard, 12).values, 6)
    assert np.all(np.linalg.eigvalsh(H) > 0)


def test_checkerboard_density_is_nonnegative():
    d = checkerboard_density()
    z = np.linspace(1e-6, 1, 101)
    assert np.all(d.density(z) >= 0)
