"""Reconstruction of poles, residues and moments from effective-property data.

Given records ``(s_k, d_k)`` with ``d_k = F(s_k)``, fit::

    F(s) ~ sum_{n=1}^M A_n / (s - s_n),   0 <= s_n < 1, 0 <= A_n < 1, 0 < sum A_n < 1

by bounded nonlinear least squares in the pole/residue parameters, with
multistart.  The moments then follow as ``c_m = sum_n A_n s_n**m``.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares, nnls

from .errors import ConfigurationError, DegenerateContrastError, DomainError, SchemaError
from .measure import MomentSequence
from .spectral import Certificate, PoleResidueForm, moments_from_poles, s_form_certificate
from .stieltjes import on_s_cut

log = logging.getLogger(__name__)

EDGE = 1e-9
MIN_POLE_GAP = 1e-6


def s_from_permittivities(eps1, eps2) -> complex:
    """Contrast variable ``s = 1 / (1 - eps2/eps1)``."""
    eps1, eps2 = complex(eps1), complex(eps2)
    if eps1 == 0:
        raise ValueError("eps1 must be nonzero")
    h = eps2 / eps1
    if h == 1:
        raise DegenerateContrastError("eps2 == eps1: homogeneous medium, s is infinite")
    return 1.0 / (1.0 - h)


class DegenerateDatasetWarning(UserWarning):
    """All records share one s value."""


@dataclass
class FrequencyDataset:
    """Records ``(omega, eps1, eps2, s, d)``; ``d`` holds values of F(s).

    ``omega``, ``eps1`` and ``eps2`` are optional; when permittivities are
    given ``s`` is checked against them to ``1e-12`` relative.
    """

    s: np.ndarray
    d: np.ndarray
    omega: np.ndarray | None = None
    eps1: np.ndarray | None = None
    eps2: np.ndarray | None = None
    noise_level: float = 0.0

    def __post_init__(self):
        self.s = np.atleast_1d(np.asarray(self.s, dtype=complex))
        self.d = np.atleast_1d(np.asarray(self.d, dtype=complex))
        n = len(self.s)
        if n == 0:
            raise SchemaError("dataset has no records")
        if self.d.shape != (n,):
            raise SchemaError("s and d must be 1-d arrays of equal length")
        for name in ("omega", "eps1", "eps2"):
            v = getattr(self, name)
            if v is not None:
                v = np.atleast_1d(np.asarray(v, dtype=float if name == "omega" else complex))
                if v.shape != (n,):
                    raise SchemaError(f"{name} length does not match s")
                setattr(self, name, v)
        if self.omega is not None and np.any(self.omega < 0):
            raise SchemaError("omega must be non-negative")
        if (self.eps1 is None) != (self.eps2 is None):
            raise SchemaError("eps1 and eps2 must be given together")
        if self.eps1 is not None:
            expected = np.array([s_from_permittivities(a, b) for a, b in zip(self.eps1, self.eps2)])
            if np.any(np.abs(expected - self.s) > 1e-12 * np.maximum(1.0, np.abs(expected))):
                raise SchemaError("s inconsistent with 1/(1 - eps2/eps1)")
        for k, sk in enumerate(self.s):
            if on_s_cut(sk):
                raise DomainError(f"record {k}: s = {sk} lies on the cut [0, 1]")
        if n > 1 and self.degenerate:
            warnings.warn("all records share the same s value", DegenerateDatasetWarning, stacklevel=2)

    def __len__(self):
        return len(self.s)

    @property
    def degenerate(self) -> bool:
        return bool(np.all(np.abs(self.s - self.s[0]) <= 1e-14 * max(1.0, abs(self.s[0]))))


@dataclass
class ReconstructionConfig:
    M: int
    max_iterations: int = 500
    tolerance: float = 1e-10
    multistart_count: int = 8
    seed: int = 0
    moment_count: int = 10

    def __post_init__(self):
        if int(self.M) < 1:
            raise ConfigurationError("M must be >= 1")
        if self.multistart_count < 1 or self.max_iterations < 1:
            raise ConfigurationError("multistart_count and max_iterations must be >= 1")
        if not self.tolerance > 0:
            raise ConfigurationError("tolerance must be positive")

    def check_against(self, n_records: int):
        # p + q + 1 with p = M - 1, q = M
        if 2 * self.M > n_records:
            raise ConfigurationError(
                f"M = {self.M} violates p+q+1 ≤ N: p+q+1 = {2 * self.M} but N = {n_records} data points")


@dataclass
class ReconstructionResult:
    form: PoleResidueForm
    moments: MomentSequence
    residual: float
    relative_residual: float
    converged: bool
    certificate: Certificate
    point_residuals: np.ndarray = field(repr=False)
    start_residuals: list = field(default_factory=list, repr=False)
    diagnostics: list = field(default_factory=list)

    @property
    def M(self) -> int:
        return len(self.form)

    @property
    def mass(self) -> float:
        return float(np.sum(self.form.residues))


def project_simplex(A, cap: float) -> np.ndarray:
    """Euclidean projection onto ``{A >= 0, sum(A) <= cap}``."""
    A = np.maximum(np.asarray(A, dtype=float), 0.0)
    if A.sum() <= cap:
        return A
    u = np.sort(A)[::-1]
    css = np.cumsum(u) - cap
    k = np.nonzero(u - css / np.arange(1, len(u) + 1) > 0)[0][-1]
    theta = css[k] / (k + 1)
    return np.maximum(A - theta, 0.0)


SOLVER_TOL = 1e-15


def _model(s, poles, A):
    return (A[None, :] / (s[:, None] - poles[None, :])).sum(axis=1)


class _Objective:
    """Residual vector and Jacobian in ``x = [s_1..s_M, A_1..A_M]``."""

    def __init__(self, s, d, M):
        self.s, self.d, self.M = s, d, M
        self.weight = 1e3 * max(np.max(np.abs(d)), 1e-300)

    def _penalties(self, x):
        M = self.M
        poles, A = x[:M], x[M:]
        rows, jac = [], []
        excess = A.sum() - (1.0 - EDGE)
        row = np.zeros(2 * M)
        if excess > 0:
            row[M:] = self.weight
        rows.append(self.weight * max(excess, 0.0))
        jac.append(row)
        order = np.argsort(poles)
        for i, j in zip(order[:-1], order[1:]):
            gap = poles[j] - poles[i]
            row = np.zeros(2 * M)
            if gap < MIN_POLE_GAP:
                row[i], row[j] = self.weight, -self.weight
            rows.append(self.weight * max(MIN_POLE_GAP - gap, 0.0))
            jac.append(row)
        return np.array(rows), np.array(jac)

    def residuals(self, x):
        M = self.M
        r = _model(self.s, x[:M], x[M:]) - self.d
        pen, _ = self._penalties(x)
        return np.concatenate([r.real, r.imag, pen])

    def jacobian(self, x):
        M = self.M
        poles, A = x[:M], x[M:]
        inv = 1.0 / (self.s[:, None] - poles[None, :])
        J = np.hstack([A[None, :] * inv ** 2, inv])
        _, pj = self._penalties(x)
        return np.vstack([J.real, J.imag, pj])


def estimate_mass(data: FrequencyDataset) -> float:
    """``mu_0 ~ Re(d s)`` at the record with the largest ``|s|``."""
    k = int(np.argmax(np.abs(data.s)))
    return float(np.clip((data.d[k] * data.s[k]).real, 1e-3, 1.0 - 1e-3))


def _linearized_start(s, d, M):
    """Poles from the linear fit ``a(s) - d b(s) = d s**M`` (b monic), residues by NNLS."""
    V = np.vander(s, M, increasing=True)
    K = np.hstack([V, -d[:, None] * V])
    rhs = d * s ** M
    coef = np.linalg.lstsq(np.vstack([K.real, K.imag]), np.concatenate([rhs.real, rhs.imag]),
                           rcond=None)[0]
    b = np.concatenate([coef[M:], [1.0]])
    poles = np.sort(np.clip(np.roots(b[::-1]).real, 0.0, 1.0 - EDGE))
    for k in range(1, M):
        poles[k] = max(poles[k], poles[k - 1] + 10 * MIN_POLE_GAP)
    poles = np.clip(poles, 0.0, 1.0 - EDGE)
    C = 1.0 / (s[:, None] - poles[None, :])
    A = nnls(np.vstack([C.real, C.imag]), np.concatenate([d.real, d.imag]))[0]
    return np.concatenate([poles, project_simplex(A, 1.0 - EDGE)])


def _starts(M, mu0, count, rng, initial=None, data=None):
    """``count`` starts: linearized fit, Chebyshev nodes, then seeded random draws.

    A caller-supplied ``initial`` is prepended and does not count.
    """
    starts = []
    if data is not None:
        try:
            starts.append(_linearized_start(data.s, data.d, M))
        except (np.linalg.LinAlgError, ValueError, RuntimeError):
            log.debug("linearized start failed")
    k = np.arange(1, M + 1)
    cheb = 0.5 * (1.0 - np.cos((2 * k - 1) * np.pi / (2 * M)))
    starts.append(np.concatenate([cheb, np.full(M, mu0 / M)]))
    while len(starts) < count:
        poles = np.sort(rng.uniform(0.01, 0.99, M))
        A = mu0 / M * rng.uniform(0.5, 1.5, M)
        starts.append(np.concatenate([poles, A]))
    starts = starts[:count]
    if initial is not None:
        starts.insert(0, np.asarray(initial, dtype=float))
    return starts


def _finalize(x, M):
    poles = np.clip(x[:M], 0.0, 1.0 - EDGE)
    A = np.clip(x[M:], 0.0, 1.0 - EDGE)
    A = project_simplex(A, 1.0 - EDGE)
    order = np.argsort(poles)
    return poles[order], A[order]


def reconstruct(data: FrequencyDataset, config: ReconstructionConfig, initial=None
                ) -> ReconstructionResult:
    """Fit the M-pole nonstandard form to ``data``; best of the multistart runs.

    ``initial`` optionally adds a warm start ``[s_1..s_M, A_1..A_M]``.
    """
    config.check_against(len(data))
    M = config.M
    s, d = data.s, data.d
    rng = np.random.default_rng(config.seed)
    scale = float(np.sqrt(np.mean(np.abs(d) ** 2)))
    diagnostics = []

    if scale == 0.0:
        k = np.arange(1, M + 1)
        poles = 0.5 * (1.0 - np.cos((2 * k - 1) * np.pi / (2 * M)))
        form = PoleResidueForm(poles, np.zeros(M), "s")
        cert = s_form_certificate(form)
        return ReconstructionResult(form, moments_from_poles(form, config.moment_count), 0.0, 0.0,
                                    False, cert, np.zeros(len(s), dtype=complex), [],
                                    ["NoContrast: data are identically zero"])

    obj = _Objective(s, d, M)
    lb = np.zeros(2 * M)
    ub = np.full(2 * M, 1.0 - EDGE)
    best = None
    start_residuals = []
    # inner tolerances sit near machine precision: the Cauchy-type fit is
    # ill-conditioned and a loose ftol stops well short of the minimum
    tol = SOLVER_TOL
    for x0 in _starts(M, estimate_mass(data), config.multistart_count, rng, initial, data):
        x0 = np.clip(x0, lb, ub)
        sol = least_squares(obj.residuals, x0, jac=obj.jacobian, bounds=(lb, ub), method="trf",
                            ftol=tol, xtol=tol, gtol=tol, max_nfev=config.max_iterations,
                            x_scale="jac")
        poles, A = _finalize(sol.x, M)
        r = _model(s, poles, A) - d
        rms = float(np.sqrt(np.mean(np.abs(r) ** 2)))
        start_residuals.append(rms)
        converged = sol.status > 0 or rms <= config.tolerance * scale
        if best is None or rms < best[0]:
            best = (rms, poles, A, r, converged)
        log.debug("start %d: status %d, rms %.3e", len(start_residuals), sol.status, rms)

    rms, poles, A, r, converged = best
    if not converged:
        diagnostics.append("BestEffort: no start met the stopping tolerance")
    form = PoleResidueForm(poles, A, "s")
    cert = s_form_certificate(form)
    if A.sum() <= 1e-12:
        diagnostics.append("NoContrast: sum of residues vanished")
    return ReconstructionResult(form, moments_from_poles(form, config.moment_count), rms,
                                rms / scale, converged, cert, r, start_residuals, diagnostics)


@dataclass
class ModelSelection:
    """Reconstructions for M = 1..M_max with the residual elbow."""

    results: list
    elbow: int | None
    threshold: float

    def __iter__(self):
        return iter(self.results)

    def __len__(self):
        return len(self.results)

    def __getitem__(self, i):
        return self.results[i]

    def table(self):
        """Rows ``(M, relative_residual, converged, is_elbow)``."""
        return [(r.M, r.relative_residual, r.converged, r.M == self.elbow) for r in self.results]


def model_select(data: FrequencyDataset, M_max: int, config: ReconstructionConfig | None = None,
                 floor: float = 1e-9) -> ModelSelection:
    """Run :func:`reconstruct` for M = 1..M_max.

    Each order is warm-started from the previous solution plus one new pole,
    so the residual does not grow with M beyond round-off.  The elbow is the
    first M whose relative residual improves by less than
    ``10 * max(noise_level, floor)`` when going to M + 1.
    """
    if M_max < 1:
        raise ConfigurationError("M_max must be >= 1")
    limit = len(data) // 2
    if M_max > limit:
        warnings.warn(f"M_max = {M_max} truncated to {limit}: need 2M <= N = {len(data)}",
                      stacklevel=2)
        M_max = limit
    base = config or ReconstructionConfig(M=1)
    results = []
    prev = None
    for M in range(1, M_max + 1):
        cfg = ReconstructionConfig(M, base.max_iterations, base.tolerance, base.multistart_count,
                                   base.seed, base.moment_count)
        initial = None
        if prev is not None:
            poles = prev.form.poles
            grid = np.concatenate(([0.0], np.sort(poles), [1.0]))
            gap = int(np.argmax(np.diff(grid)))
            new = 0.5 * (grid[gap] + grid[gap + 1])
            initial = np.concatenate([poles, [new], prev.form.residues, [1e-6]])
        results.append(reconstruct(data, cfg, initial))
        prev = results[-1]
    threshold = 10.0 * max(data.noise_level, floor)
    elbow = None
    for a, b in zip(results, results[1:]):
        if a.relative_residual - b.relative_residual < threshold:
            elbow = a.M
            break
    return ModelSelection(results, elbow, threshold)
