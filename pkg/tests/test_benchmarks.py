import numpy as np
import pytest

from stieltjes_pade import SpectralMeasure, moments
from stieltjes_pade.benchmarks import (SUITES, constructed_pairs, gauss_rule,
                                       random_atomic_measure, run_suite)


def test_random_measure_separation():
    rng = np.random.default_rng(0)
    for n in range(1, 7):
        m = random_atomic_measure(rng, n, zero_atom=n > 1)
        assert len(m.atoms) == n and 0.3 <= m.mass < 0.9 + 1e-12
        assert np.all(np.diff(m.positions[1:]) >= 0.08 - 1e-12)
        assert (m.positions[0] == 0.0) == (n > 1)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_gauss_rule_matches_2k_moments(k):
    base = random_atomic_measure(np.random.default_rng(k), 6)
    rule = gauss_rule(base, k)
    a, b = moments(base, 2 * k + 1).values, moments(rule, 2 * k + 1).values
    np.testing.assert_allclose(b[:2 * k], a[:2 * k], rtol=1e-12)
    assert abs(b[2 * k] - a[2 * k]) > 1e-10


@pytest.mark.parametrize("k", [1, 2, 3])
def test_radau_rule(k):
    base = random_atomic_measure(np.random.default_rng(10 + k), 6)
    rule = gauss_rule(base, k, radau_at_zero=True)
    assert rule.positions[0] == 0.0
    a, b = moments(base, 2 * k).values, moments(rule, 2 * k).values
    np.testing.assert_allclose(b[:2 * k - 1], a[:2 * k - 1], rtol=1e-12)
    assert abs(b[2 * k - 1] - a[2 * k - 1]) > 1e-10


def test_checkerboard_gauss_jacobi():
    cb = SpectralMeasure.checkerboard()
    rule = gauss_rule(cb, 3)
    np.testing.assert_allclose(moments(rule, 6).values, moments(cb, 6).values, atol=1e-13)


def test_constructed_pairs():
    pairs = constructed_pairs()
    assert len(pairs) == 20
    for p in pairs:
        a, b = moments(p.a, 8).values, moments(p.b, 8).values
        if p.matched is None:
            np.testing.assert_allclose(a, b, rtol=1e-12)
        else:
            same = np.abs(a - b) <= 1e-12 * np.maximum(np.abs(a), np.abs(b))
            assert np.all(same[:p.matched]) and not same[p.matched], p.label


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass(name):
    rows = run_suite(name, seed=3)
    assert rows and all(r.passed for r in rows), [(r.name, r.detail) for r in rows]
