import numpy as np
import pytest

from stieltjes_pade import (CompositeModel, ConfigurationError, DegenerateContrastError,
                            DomainError, FrequencyDataset, ReconstructionConfig, SchemaError,
                            SpectralMeasure, eval_F, model_select, moments, reconstruct,
                            s_from_permittivities, spectral_measure_of)
from stieltjes_pade.benchmarks import (benchmark_dataset, noise_table, random_atomic_measure,
                                       two_atom_measure)
from stieltjes_pade.inverse import project_simplex


def dataset_from(measure, s):
    return FrequencyDataset(np.asarray(s), np.asarray(eval_F(measure, s)))


class TestSFromPermittivities:
    def test_examples(self):
        assert s_from_permittivities(1.0, -1.0) == pytest.approx(0.5)
        assert s_from_permittivities(1.0, 2.0) == pytest.approx(-1.0)
        assert s_from_permittivities(2.0, 1.0 + 1.0j) == pytest.approx(1 + 1j)

    def test_homogeneous(self):
        with pytest.raises(DegenerateContrastError):
            s_from_permittivities(1.5 + 0.1j, 1.5 + 0.1j)

    def test_zero_eps1(self):
        with pytest.raises(ValueError):
            s_from_permittivities(0.0, 1.0)


class TestFrequencyDataset:
    def test_inconsistent_s(self):
        with pytest.raises(SchemaError):
            FrequencyDataset(np.array([2.0 + 1j]), np.array([0.1]), np.array([1.0]),
                             np.array([1.0]), np.array([3.0]))

    def test_cut(self):
        with pytest.raises(DomainError):
            FrequencyDataset(np.array([0.5, 2.0]), np.array([0.1, 0.1]))

    def test_length_mismatch(self):
        with pytest.raises(SchemaError):
            FrequencyDataset(np.array([2.0, 3.0]), np.array([0.1]))

    def test_negative_omega(self):
        with pytest.raises(SchemaError):
            FrequencyDataset(np.array([2.0]), np.array([0.1]), omega=np.array([-1.0]))

    def test_empty(self):
        with pytest.raises(SchemaError):
            FrequencyDataset(np.array([]), np.array([]))


class TestConfig:
    def test_M_positive(self):
        with pytest.raises(ConfigurationError):
            ReconstructionConfig(0)

    def test_too_many_poles(self):
        data = benchmark_dataset(two_atom_measure())
        with pytest.raises(ConfigurationError, match=r"p\+q\+1 ≤ N"):
            reconstruct(data, ReconstructionConfig(7))

    def test_defaults(self):
        c = ReconstructionConfig(2)
        assert (c.max_iterations, c.tolerance, c.multistart_count) == (500, 1e-10, 8)


class TestReconstruct:
    def test_single_atom_on_line(self):
        s = np.linspace(-1, 2, 8) + 0.5j
        res = reconstruct(dataset_from(SpectralMeasure.from_atoms([0.5], [0.25]), s),
                          ReconstructionConfig(1))
        assert res.form.poles[0] == pytest.approx(0.5, abs=1e-6)
        assert res.form.residues[0] == pytest.approx(0.25, abs=1e-6)
        assert res.residual < 1e-10 and res.converged

    def test_two_atom_benchmark(self):
        truth = two_atom_measure()
        res = reconstruct(benchmark_dataset(truth), ReconstructionConfig(2))
        np.testing.assert_allclose(res.form.poles, truth.positions, atol=1e-5)
        np.testing.assert_allclose(res.form.residues, truth.weights, atol=1e-5)
        np.testing.assert_allclose(res.moments.values[:5], moments(truth, 5).values, rtol=1e-5)
        assert res.converged and res.certificate.passed

    def test_zero_data(self):
        s = np.linspace(-1, 2, 6) + 0.5j
        res = reconstruct(FrequencyDataset(s, np.zeros(6, dtype=complex)), ReconstructionConfig(2))
        assert any(d.startswith("NoContrast") for d in res.diagnostics)
        assert res.mass == 0.0

    def test_best_effort(self):
        res = reconstruct(benchmark_dataset(CompositeModel("checkerboard_5050")),
                          ReconstructionConfig(3, max_iterations=1))
        assert not res.converged
        assert any(d.startswith("BestEffort") for d in res.diagnostics)
        assert res.certificate.passed

    def test_deterministic(self):
        data = benchmark_dataset(CompositeModel("checkerboard_5050"), noise=0.01, seed=3)
        a = reconstruct(data, ReconstructionConfig(3, seed=4))
        b = reconstruct(data, ReconstructionConfig(3, seed=4))
        np.testing.assert_array_equal(a.form.poles, b.form.poles)
        np.testing.assert_array_equal(a.form.residues, b.form.residues)

    def test_warm_start(self):
        truth = two_atom_measure()
        res = reconstruct(benchmark_dataset(truth), ReconstructionConfig(2, multistart_count=1),
                          initial=[0.2, 0.7, 0.25, 0.25])
        np.testing.assert_allclose(res.form.poles, truth.positions, atol=1e-8)
        assert len(res.start_residuals) == 2

    def test_point_residuals(self):
        data = benchmark_dataset(CompositeModel("checkerboard_5050"))
        res = reconstruct(data, ReconstructionConfig(2))
        assert res.point_residuals.shape == data.s.shape
        assert res.residual == pytest.approx(np.sqrt(np.mean(np.abs(res.point_residuals) ** 2)))


def test_identifiability():
    rng = np.random.default_rng(11)
    for n in range(1, 5):
        for _ in range(3):
            m = random_atomic_measure(rng, n)
            N = max(4 * n, 2 * n)
            s = rng.uniform(-1, 2, N) + 1j * rng.uniform(0.2, 1.5, N)
            res = reconstruct(dataset_from(m, s), ReconstructionConfig(n))
            assert res.residual < 1e-8
            np.testing.assert_allclose(res.form.poles, m.positions, atol=1e-5)
            np.testing.assert_allclose(res.form.residues, m.weights, atol=1e-5)


@pytest.mark.parametrize("case", ["noisy", "overfit", "truncated", "checkerboard"])
def test_constraint_feasibility(case):
    model = CompositeModel("checkerboard_5050")
    data = benchmark_dataset(model, noise=0.05 if case == "noisy" else 0.0, seed=2)
    M = {"noisy": 3, "overfit": 6, "truncated": 4, "checkerboard": 5}[case]
    cfg = ReconstructionConfig(M, max_iterations=3 if case == "truncated" else 500)
    res = reconstruct(data, cfg)
    assert res.certificate.passed, res.certificate.failures
    assert np.all((res.form.poles >= 0) & (res.form.poles < 1))
    assert np.all((res.form.residues >= 0) & (res.form.residues < 1))
    assert 0 < res.mass < 1


@pytest.mark.parametrize("model, M", [(CompositeModel("laminate_parallel", 0.3), 1),
                                      (CompositeModel("hashin_shtrikman_2d", 0.6), 1),
                                      (CompositeModel("checkerboard_5050"), 4)],
                         ids=["parallel", "hs", "checkerboard"])
def test_volume_fraction_consistency(model, M):
    res = reconstruct(benchmark_dataset(model), ReconstructionConfig(M))
    assert res.mass == pytest.approx(spectral_measure_of(model).mass, abs=1e-4)


def test_noise_robustness_and_monotone_error():
    med = noise_table(seeds=20, noise=0.01)
    assert med[0] <= 0.05 and med[1] <= 0.05
    assert np.all(np.diff(med) >= 0)


class TestModelSelect:
    def test_two_atoms_elbow(self):
        sel = model_select(benchmark_dataset(two_atom_measure()), 4)
        rel = [r.relative_residual for r in sel]
        assert rel[1] < 1e-8 * rel[0]
        assert sel.elbow == 2
        assert all(r < 1e-8 for r in rel[1:])

    def test_checkerboard_monotone(self):
        sel = model_select(benchmark_dataset(CompositeModel("checkerboard_5050")), 5)
        rel = [r.relative_residual for r in sel]
        assert np.all(np.diff(rel) < 0)
        assert [row[0] for row in sel.table()] == [1, 2, 3, 4, 5]

    def test_truncation_warning(self):
        data = benchmark_dataset(two_atom_measure(), n=6)
        with pytest.warns(UserWarning, match="truncated"):
            sel = model_select(data, 5)
        assert len(sel) == 3

    def test_M_max_positive(self):
        with pytest.raises(ConfigurationError):
            model_select(benchmark_dataset(two_atom_measure()), 0)


def test_project_simplex():
    A = project_simplex(np.array([0.7, 0.6, 0.1]), 1.0)
    assert A.sum() == pytest.approx(1.0) and np.all(A >= 0)
    np.testing.assert_array_equal(project_simplex(np.array([0.2, 0.3]), 1.0), [0.2, 0.3])
