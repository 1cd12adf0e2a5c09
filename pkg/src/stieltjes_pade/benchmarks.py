"""Seeded synthetic measures, moment-matched pairs and benchmark suites.

The suites back the ``benchmark`` CLI subcommand; the generators are shared
with the test suite so the randomized cases are reproducible.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from scipy import special

from .inverse import FrequencyDataset, ReconstructionConfig, reconstruct
from .materials import CompositeModel, PermittivityModel, generate_dataset, spectral_measure_of
from .measure import SpectralMeasure, moments
from .pade import solve_standard_pade, verify_accuracy_through_order
from .spectral import to_nonstandard, to_pole_residue
from .stieltjes import eval_F, eval_f

TWO_ATOMS = ((0.25, 0.3), (0.75, 0.2))


def random_atomic_measure(rng, n: int, zero_atom: bool = False, lo: float = 0.1,
                          hi: float = 0.95, min_gap: float = 0.08) -> SpectralMeasure:
    """n atoms with positions in [lo, hi] at least ``min_gap`` apart.

    With ``zero_atom`` the first atom sits at z = 0.  The total mass is drawn
    uniformly from (0.3, 0.9) so the measure is a valid volume fraction.
    """
    m = n - 1 if zero_atom else n
    span = hi - lo - min_gap * (m - 1)
    if span <= 0:
        raise ValueError(f"cannot fit {m} atoms with gap {min_gap} in [{lo}, {hi}]")
    z = lo + np.sort(rng.uniform(0.0, span, m)) + min_gap * np.arange(m)
    if zero_atom:
        z = np.concatenate(([0.0], z))
    w = rng.uniform(0.2, 1.0, n)
    w *= rng.uniform(0.3, 0.9) / w.sum()
    return SpectralMeasure.from_atoms(z, w)


def two_atom_measure() -> SpectralMeasure:
    z, w = zip(*TWO_ATOMS)
    return SpectralMeasure.from_atoms(z, w)


def _lanczos(z, w, k):
    """Jacobi recurrence (alpha_0..k-1, beta_1..k-1) of a discrete measure."""
    q = np.sqrt(w / w.sum())
    q_prev = np.zeros_like(q)
    alpha, beta = [], []
    b = 0.0
    for j in range(k):
        v = z * q
        a = q @ v
        alpha.append(a)
        v = v - a * q - b * q_prev
        b = np.linalg.norm(v)
        if j < k - 1:
            beta.append(b)
            q_prev, q = q, v / b
    return np.array(alpha), np.array(beta)


def _rule_from_jacobi(alpha, beta, mass):
    T = np.diag(alpha) + np.diag(beta, 1) + np.diag(beta, -1)
    nodes, vecs = np.linalg.eigh(T)
    return nodes, mass * vecs[0] ** 2


def gauss_rule(measure: SpectralMeasure, k: int, radau_at_zero: bool = False) -> SpectralMeasure:
    """k-atom measure sharing the first 2k (Gauss) or 2k-1 (Radau at 0) moments.

    Atomic measures use Lanczos on the atoms; the checkerboard uses the
    Gauss-Jacobi rule of its weight ``z**-1/2 (1-z)**1/2``.
    """
    mass = measure.mass
    if measure.density is not None:
        if measure.density.kind != "checkerboard" or measure.atoms or radau_at_zero:
            raise ValueError("continuous measures: only the plain checkerboard Gauss rule")
        x, wx = special.roots_jacobi(k, 0.5, -0.5)
        return SpectralMeasure.from_atoms((1.0 + x) / 2.0, mass * wx / wx.sum())
    z, w = measure.positions, measure.weights
    if k > len(z):
        raise ValueError("rule has more nodes than the measure has atoms")
    if radau_at_zero and k == 1:
        return SpectralMeasure.from_atoms([0.0], [mass])
    alpha, beta = _lanczos(z, w, k)
    if radau_at_zero:
        # Golub: modify the last recurrence coefficient so that 0 is a node
        Jm = np.diag(alpha[:-1]) + np.diag(beta[:-1], 1) + np.diag(beta[:-1], -1)
        rhs = np.zeros(k - 1)
        rhs[-1] = beta[-1] ** 2
        alpha = alpha.copy()
        alpha[-1] = np.linalg.solve(Jm, rhs)[-1]
    nodes, weights = _rule_from_jacobi(alpha, beta, mass)
    if radau_at_zero:
        nodes[np.argmin(np.abs(nodes))] = 0.0
    nodes = np.clip(nodes, 0.0, 1.0)
    return SpectralMeasure.from_atoms(nodes, weights)


@dataclass
class MeasurePair:
    a: SpectralMeasure
    b: SpectralMeasure
    matched: int | None
    label: str


def constructed_pairs(seed: int = 0) -> list[MeasurePair]:
    """20 measure pairs with a known number of matching leading moments.

    ``matched`` is None for identical measures (all moments match).
    """
    rng = np.random.default_rng(seed)
    pairs = []
    cb = SpectralMeasure.checkerboard()
    pairs.append(MeasurePair(cb, SpectralMeasure.checkerboard(), None, "checkerboard twice"))
    m = random_atomic_measure(rng, 4)
    pairs.append(MeasurePair(m, SpectralMeasure(m.atoms), None, "identical atomic"))
    pairs.append(MeasurePair(SpectralMeasure(), random_atomic_measure(rng, 2), 0, "zero vs atomic"))
    lam = spectral_measure_of(CompositeModel("laminate_parallel", 0.3))
    pairs.append(MeasurePair(SpectralMeasure(), lam, 0, "zero vs laminate"))
    pairs.append(MeasurePair(SpectralMeasure.from_atoms([0.5], [0.5]),
                             SpectralMeasure.from_atoms([0.25, 0.75], [0.25, 0.25]), 2,
                             "one atom vs symmetric pair"))
    for k in (1, 2, 3):
        pairs.append(MeasurePair(cb, gauss_rule(cb, k), 2 * k, f"checkerboard vs Gauss-{k}"))
    for k in (1, 2, 3):
        base = random_atomic_measure(rng, 5)
        pairs.append(MeasurePair(base, gauss_rule(base, k), 2 * k, f"atomic vs Gauss-{k}"))
    for k in (1, 2, 3):
        base = random_atomic_measure(rng, 5)
        pairs.append(MeasurePair(base, gauss_rule(base, k, radau_at_zero=True), 2 * k - 1,
                                 f"atomic vs Radau-{k}"))
    for k in (1, 2, 3):
        base = random_atomic_measure(rng, 6)
        other = gauss_rule(base, k + 1)
        pairs.append(MeasurePair(gauss_rule(base, k), other, 2 * k, f"Gauss-{k} vs Gauss-{k + 1}"))
    hs = spectral_measure_of(CompositeModel("hashin_shtrikman_2d", 0.4))
    pairs.append(MeasurePair(hs, lam, 0, "HS vs laminate"))
    perp = spectral_measure_of(CompositeModel("laminate_perpendicular", 0.5))
    pairs.append(MeasurePair(perp, SpectralMeasure.from_atoms([0.5], [0.5]), None,
                             "perpendicular laminate vs its atom"))
    pairs.append(MeasurePair(cb, SpectralMeasure.from_atoms([0.0, 0.5], [0.25, 0.25]), 3,
                             "checkerboard vs two atoms"))
    return pairs


def benchmark_omegas(n: int = 12) -> np.ndarray:
    return np.linspace(0.5, 2.5, n)


def benchmark_dataset(model_or_measure, n: int = 12, noise: float = 0.0, seed: int = 0
                      ) -> FrequencyDataset:
    """Lossy Drude sweep: eps1 = 1, eps2 = 1 - 1/(w**2 + i w), so s = w**2 + i w."""
    pm1 = PermittivityModel.constant(1.0)
    pm2 = PermittivityModel.drude(1.0, 1.0, 1.0)
    omegas = benchmark_omegas(n)
    if isinstance(model_or_measure, CompositeModel):
        return generate_dataset(model_or_measure, pm1, pm2, omegas, noise, seed)
    base = generate_dataset(CompositeModel("laminate_parallel", 0.5), pm1, pm2, omegas)
    d = np.asarray(eval_F(model_or_measure, base.s))
    if noise:
        rng = np.random.default_rng(seed)
        eta = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)
        d = d * (1.0 + noise * eta)
    return FrequencyDataset(base.s, d, base.omega, base.eps1, base.eps2, noise)


# suites --------------------------------------------------------------------

@dataclass
class BenchmarkRow:
    name: str
    passed: bool
    detail: str
    seconds: float


def _timed(name, fn):
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # reported in the table, never raised
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return BenchmarkRow(name, bool(passed), detail, time.perf_counter() - t0)


def _roundtrip_pade(seed):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 5))
        m = random_atomic_measure(rng, n)
        s_form, _ = to_nonstandard(to_pole_residue(solve_standard_pade(moments(m, 2 * n), n - 1, n)))
        worst = max(worst, np.max(np.abs(s_form.poles - m.positions)),
                    np.max(np.abs(s_form.residues - m.weights)))
    return worst <= 1e-8, f"max atom error {worst:.2e}"


def _exact_recovery(seed):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 5))
        m = random_atomic_measure(rng, n)
        approx = solve_standard_pade(moments(m, 2 * n), n - 1, n)
        xi = rng.uniform(-3, 3, 20) + 1j * rng.uniform(0.1, 3, 20) * rng.choice([-1, 1], 20)
        exact = eval_f(m, xi)
        worst = max(worst, np.max(np.abs(approx(xi) - exact) / np.abs(exact)))
    return worst <= 1e-9, f"max relative error {worst:.2e}"


def _two_atom_reconstruction(seed):
    truth = two_atom_measure()
    res = reconstruct(benchmark_dataset(truth), ReconstructionConfig(2, seed=seed))
    mu = moments(truth, 5).values
    err = np.max(np.abs(res.moments.values[:5] - mu) / mu)
    return err <= 1e-5 and res.converged, f"first 5 moments rel. error {err:.2e}"


def _checkerboard_reconstruction(seed):
    model = CompositeModel("checkerboard_5050")
    res = reconstruct(benchmark_dataset(model), ReconstructionConfig(4, seed=seed))
    mu = moments(spectral_measure_of(model), 5).values
    err = np.max(np.abs(res.moments.values[:5] - mu) / mu)
    return err <= 1e-2, f"first 5 moments rel. error {err:.2e}"


def _checkerboard_pade(seed):
    mu = moments(SpectralMeasure.checkerboard(), 16)
    worst = 0.0
    for M in range(1, 8):
        approx = solve_standard_pade(mu, M - 1, M)
        report = verify_accuracy_through_order(approx, mu)
        s_form, _ = to_nonstandard(to_pole_residue(approx))
        worst = max(worst, abs(s_form.residues.sum() - mu[0]))
        if not (report.passed and s_form.certificate.passed):
            return False, f"M={M} failed"
    return worst <= 1e-9, f"max |sum A - mu0| {worst:.2e}"


def noise_table(seeds: int = 20, noise: float = 0.01, base_seed: int = 0):
    """Median relative errors of recovered mu_0..mu_4 (two-atom benchmark)."""
    truth = two_atom_measure()
    mu = moments(truth, 5).values
    errs = []
    for k in range(seeds):
        data = benchmark_dataset(truth, noise=noise, seed=base_seed + k)
        res = reconstruct(data, ReconstructionConfig(2, seed=base_seed + k))
        errs.append(np.abs(res.moments.values[:5] - mu) / mu)
    return np.median(np.array(errs), axis=0)


def _noise(seed):
    med = noise_table(base_seed=seed)
    ok = med[0] <= 0.05 and med[1] <= 0.05
    return ok, "median rel. errors " + ", ".join(f"mu{m}={e:.2e}" for m, e in enumerate(med))


SUITES = {
    "roundtrip": [("pade round trip (atomic)", _roundtrip_pade),
                  ("exact rational recovery", _exact_recovery),
                  ("checkerboard nonstandard form", _checkerboard_pade),
                  ("two-atom reconstruction", _two_atom_reconstruction)],
    "reconstruction": [("two-atom reconstruction", _two_atom_reconstruction),
                       ("checkerboard reconstruction M=4", _checkerboard_reconstruction)],
    "noise": [("1% noise, two atoms, 20 seeds", _noise)],
}


def run_suite(name: str, seed: int = 0) -> list[BenchmarkRow]:
    if name not in SUITES:
        raise KeyError(name)
    return [_timed(label, lambda fn=fn: fn(seed)) for label, fn in SUITES[name]]
