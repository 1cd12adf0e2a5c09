"""Standard [L/M] Padé approximants of the auxiliary function f and of G.

Approximants of ``f(xi) = sum_n mu_n (-xi)**n`` are written in powers of
``t = -xi``::

    [L/M](t) = (a_0 + a_1 t + ... + a_L t**L) / (1 + b_1 t + ... + b_M t**M)

The denominator solves the Hankel system ``H [b_M, ..., b_1] = -[mu_{L+1}, ...,
mu_{L+M}]`` with ``H[i, j] = mu_{L-M+1+i+j}``; the numerator then follows from
``a_k = sum_{j <= min(k, M)} b_j mu_{k-j}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import ConfigurationError, NonExistenceError
from .measure import MomentSequence, SpectralMeasure

EPS = np.finfo(float).eps
MAX_ORDER = 16
ACCURACY_RTOL = 1e-9

XI_STANDARD = "xi_standard"
S_NONSTANDARD = "s_nonstandard"


@dataclass(frozen=True)
class PadeApproximant:
    """Rational function stored as ascending coefficient vectors.

    ``variable == "xi_standard"``: polynomials in ``-xi`` with ``b_0 = 1``;
    ``target`` says whether it approximates ``f`` or ``G``.
    ``variable == "s_nonstandard"``: polynomials in ``s`` approximating F,
    numerator degree ``M - 1`` and ``b_1 = 1``.
    """

    numerator: np.ndarray
    denominator: np.ndarray
    L: int
    M: int
    variable: str = XI_STANDARD
    target: str = "f"

    def __post_init__(self):
        a = np.array(self.numerator, dtype=float).ravel()
        b = np.array(self.denominator, dtype=float).ravel()
        if len(a) != self.L + 1 or len(b) != self.M + 1:
            raise ValueError(f"coefficient lengths {len(a)}, {len(b)} do not match "
                             f"L={self.L}, M={self.M}")
        if self.variable == XI_STANDARD:
            if b[0] != 1.0:
                raise ValueError("standard approximant requires b_0 == 1")
        elif self.variable == S_NONSTANDARD:
            if self.M < 1 or self.L != self.M - 1:
                raise ValueError("nonstandard approximant has degrees (M-1, M), M >= 1")
            if b[1] != 1.0:
                raise ValueError("nonstandard approximant requires b_1 == 1")
        else:
            raise ValueError(f"unknown variable tag {self.variable!r}")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "numerator", a)
        object.__setattr__(self, "denominator", b)

    def _arg(self, x):
        x = np.asarray(x)
        return -x if self.variable == XI_STANDARD else x

    def __call__(self, x):
        """Evaluate at ``xi`` (standard form) or at ``s`` (nonstandard form)."""
        t = self._arg(x)
        return P.polyval(t, self.numerator) / P.polyval(t, self.denominator)

    def numerator_at(self, x):
        return P.polyval(self._arg(x), self.numerator)

    def denominator_at(self, x):
        return P.polyval(self._arg(x), self.denominator)

    def series(self, order: int) -> np.ndarray:
        """Power series coefficients up to ``order`` (inclusive).

        Standard form: coefficients of ``(-xi)**k``.  Nonstandard form:
        coefficients ``c_m`` of ``s**-(m+1)`` in the expansion at infinity.
        """
        if self.variable == XI_STANDARD:
            return series_from_rational(self.numerator, self.denominator, order)
        # a(s)/b(s) = t * a~(t)/b~(t) with t = 1/s and reversed coefficients
        M = self.M
        a_rev = self.numerator[::-1]
        b_rev = self.denominator[::-1]
        if b_rev[0] == 0.0:
            raise ZeroDivisionError("leading denominator coefficient vanishes")
        return series_from_rational(a_rev, b_rev, order) if M >= 1 else np.zeros(order + 1)


def series_from_rational(a, b, order: int) -> np.ndarray:
    """Taylor coefficients of ``a(t)/b(t)`` through ``t**order``.

    Uses ``c_k = (a_k - sum_{j=1}^{min(k, M)} b_j c_{k-j}) / b_0``.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if b[0] == 0:
        raise ZeroDivisionError("denominator constant term is zero")
    c = np.zeros(order + 1, dtype=np.result_type(a, b, float))
    M = len(b) - 1
    for k in range(order + 1):
        acc = a[k] if k < len(a) else 0.0
        for j in range(1, min(k, M) + 1):
            acc -= b[j] * c[k - j]
        c[k] = acc / b[0]
    return c


@dataclass(frozen=True)
class HankelSystem:
    """Padé linear system for the denominator; unknowns ordered ``b_M, ..., b_1``."""

    matrix: np.ndarray
    rhs: np.ndarray
    J: int


@dataclass
class AccuracyReport:
    passed: bool
    max_deviation: float
    tolerance: float
    order: int
    coefficients: np.ndarray = field(repr=False)
    reason: str = ""


def _mu(moments) -> np.ndarray:
    return np.asarray(moments, dtype=float)


def _require(mu, needed: int, what: str):
    if len(mu) < needed:
        raise ValueError(f"{what} needs {needed} moments (L+M+1), got {len(mu)}")


def _get(mu, j):
    return mu[j] if j >= 0 else 0.0


def _check_orders(L: int, M: int):
    if M < 0 or L - M + 1 < 0 or L < 0:
        raise ValueError(f"[{L}/{M}] requires L >= 0, M >= 0 and L - M + 1 >= 0")
    if M > MAX_ORDER:
        raise ConfigurationError(f"M = {M} exceeds the supported maximum {MAX_ORDER}")


def build_hankel_system(moments, L: int, M: int) -> HankelSystem:
    mu = _mu(moments)
    if M < 1 or L - M + 1 < 0:
        raise ValueError("Hankel system needs M >= 1 and L - M + 1 >= 0")
    _require(mu, L + M + 1, "[L/M] Hankel system")
    H = np.array([[_get(mu, L - M + 1 + i + j) for j in range(M)] for i in range(M)])
    rhs = -np.array([mu[L + 1 + i] for i in range(M)])
    return HankelSystem(H, rhs, L - M)


def hankel_singular_values(moments, L: int, M: int) -> np.ndarray:
    return np.linalg.svd(build_hankel_system(moments, L, M).matrix, compute_uv=False)


def is_singular(sv: np.ndarray) -> bool:
    """Numerical singularity test ``sigma_min < eps * ||H||_2 * M``."""
    return sv[0] == 0.0 or sv[-1] < EPS * sv[0] * len(sv)


def _numerator(mu, b, L):
    M = len(b) - 1
    return np.array([sum(b[j] * _get(mu, k - j) for j in range(min(k, M) + 1))
                     for k in range(L + 1)])


def _direct_solve(mu, L, M):
    """Solve the Hankel system by SVD; returns (a, b) or None if singular."""
    system = build_hankel_system(mu, L, M)
    U, sv, Vt = np.linalg.svd(system.matrix)
    if is_singular(sv):
        return None, sv
    x = Vt.T @ ((U.T @ system.rhs) / sv)
    b = np.concatenate(([1.0], x[::-1]))
    return (_numerator(mu, b, L), b), sv


def taylor_approximant(moments, L: int) -> PadeApproximant:
    mu = _mu(moments)
    _require(mu, L + 1, "[L/0] approximant")
    return PadeApproximant(mu[:L + 1].copy(), [1.0], L, 0)


def zero_approximant(L: int, M: int, target: str = "f") -> PadeApproximant:
    b = np.zeros(M + 1)
    b[0] = 1.0
    return PadeApproximant(np.zeros(L + 1), b, L, M, XI_STANDARD, target)


def _pad(c, n):
    out = np.zeros(n)
    out[:len(c)] = c
    return out


def solve_standard_pade(moments, L: int, M: int) -> PadeApproximant:
    """Standard [L/M] approximant of f with ``b_0 = 1``.

    When the Hankel matrix is numerically singular the approximant may still
    exist (f rational of lower type).  Lower-order candidates
    ``[L-k/M-k]`` with the same ``J = L - M`` are then tried and accepted if
    they satisfy accuracy-through-order to order ``L + M``; otherwise
    :class:`NonExistenceError` is raised.
    """
    _check_orders(L, M)
    mu = _mu(moments)
    _require(mu, L + M + 1, f"[{L}/{M}] approximant")
    if M == 0:
        return taylor_approximant(mu, L)
    if not np.any(mu[:L + M + 1]):
        return zero_approximant(L, M)

    solved, sv = _direct_solve(mu, L, M)
    if solved is not None:
        approx = PadeApproximant(*solved, L, M)
        report = verify_accuracy_through_order(approx, mu)
        if report.passed:
            return approx
        raise NonExistenceError(f"[{L}/{M}] solve lost accuracy-through-order "
                                f"(deviation {report.max_deviation:.2e})", sv[-1])

    for k in range(1, M + 1):
        Lk, Mk = L - k, M - k
        if Lk < 0:
            break
        if Mk == 0:
            a, b = mu[:Lk + 1].copy(), np.ones(1)
        else:
            cand, _ = _direct_solve(mu, Lk, Mk)
            if cand is None:
                continue
            a, b = cand
        approx = PadeApproximant(_pad(a, L + 1), _pad(b, M + 1), L, M)
        if verify_accuracy_through_order(approx, mu).passed:
            return approx
    raise NonExistenceError(f"[{L}/{M}] Hankel matrix is singular and no reduced "
                            f"approximant is accurate through order {L + M}", sv[-1])


def verify_accuracy_through_order(approx: PadeApproximant, moments) -> AccuracyReport:
    """Re-expand ``approx`` as a power series and compare with the moments.

    Passes iff the largest coefficient deviation through order ``L + M`` is
    at most ``1e-9 * max(1, mu_0)``.
    """
    mu = _mu(moments)
    L, M = approx.L, approx.M
    order = L + M
    tol = ACCURACY_RTOL * max(1.0, abs(mu[0]) if len(mu) else 1.0)
    if approx.variable == XI_STANDARD:
        if approx.target == "G":
            _require(mu, order, "G accuracy check")
            expected = np.concatenate(([0.0], mu[:order]))
        else:
            _require(mu, order + 1, "accuracy check")
            expected = mu[:order + 1]
        if approx.denominator[0] == 0.0:
            return AccuracyReport(False, np.inf, tol, order, np.array([]),
                                  "denominator constant term is zero")
    else:
        _require(mu, order + 1, "accuracy check")
        expected = mu[:order + 1]
        if approx.denominator[-1] == 0.0:
            return AccuracyReport(False, np.inf, tol, order, np.array([]),
                                  "leading denominator coefficient is zero")
    coeffs = approx.series(order)
    dev = float(np.max(np.abs(coeffs - expected)))
    return AccuracyReport(dev <= tol, dev, tol, order, coeffs,
                          "" if dev <= tol else "series deviates from moments")


def pade_determinant_oracle(moments, L: int, M: int, xi):
    """Evaluate the determinant forms ``P^[L/M](-xi)`` and ``Q^[L/M](-xi)``.

    Independent of :func:`solve_standard_pade`; ``P/Q`` equals the approximant
    whenever ``Q(0)`` (the Hankel determinant) is nonzero.
    """
    _check_orders(L, M)
    mu = _mu(moments)
    _require(mu, L + M + 1, "determinant oracle")
    t = -complex(xi)
    if M == 0:
        return complex(np.sum(mu[:L + 1] * t ** np.arange(L + 1))), 1.0 + 0j
    top = np.array([[_get(mu, L - M + 1 + i + j) for j in range(M + 1)] for i in range(M)],
                   dtype=complex)
    p_row = np.array([sum(mu[i] * t ** (M - j + i) for i in range(L - M + j + 1))
                      for j in range(M + 1)], dtype=complex)
    q_row = np.array([t ** (M - j) for j in range(M + 1)], dtype=complex)
    Pv = np.linalg.det(np.vstack([top, p_row]))
    Qv = np.linalg.det(np.vstack([top, q_row]))
    return complex(Pv), complex(Qv)


def delta_MJ(moments, M: int, J: int, x: float) -> float:
    """Determinant of ``[mu_{i+j+1+J} + x mu_{i+j+2+J}]`` (M x M); 1 for M = 0."""
    if J < -1 or M < 0:
        raise ValueError("need J >= -1 and M >= 0")
    if M == 0:
        return 1.0
    mu = _mu(moments)
    if len(mu) < 2 * M + J + 1:
        raise ValueError(f"Delta_M^(J) needs moments up to mu_{2 * M + J}")
    idx = np.arange(M)[:, None] + np.arange(M)[None, :] + 1 + J
    return float(np.linalg.det(mu[idx] + x * mu[idx + 1]))


def delta_sign(moments, M: int, J: int, x: float) -> int:
    """Sign of ``Delta_M^(J)(x)`` via LU (robust against over/underflow)."""
    if M == 0:
        return 1
    mu = _mu(moments)
    if len(mu) < 2 * M + J + 1:
        raise ValueError(f"Delta_M^(J) needs moments up to mu_{2 * M + J}")
    idx = np.arange(M)[:, None] + np.arange(M)[None, :] + 1 + J
    sign, _ = np.linalg.slogdet(mu[idx] + x * mu[idx + 1])
    return int(sign)


def pade_for_G(moments, L: int, M: int) -> PadeApproximant:
    """[L/M] approximant of ``G(xi) = -xi f(xi)`` as ``(-xi) [L-1/M]_f``."""
    if L < M or M < 0:
        raise ValueError("G approximants need L >= M >= 0")
    if L == 0:
        return zero_approximant(0, 0, target="G")
    f_approx = solve_standard_pade(moments, L - 1, M)
    a = np.concatenate(([0.0], f_approx.numerator))
    return PadeApproximant(a, f_approx.denominator, L, M, XI_STANDARD, "G")


# exact rational arithmetic -------------------------------------------------

def exact_moments(measure: SpectralMeasure, count: int) -> list[Fraction]:
    """Moments of an atomic measure in exact rational arithmetic."""
    if measure.density is not None:
        raise ValueError("exact moments only for purely atomic measures")
    atoms = [(Fraction(a.position), Fraction(a.weight)) for a in measure.atoms]
    return [sum((w * z ** m for z, w in atoms), Fraction(0)) for m in range(count)]


def _solve_fraction(A, y):
    n = len(A)
    A = [row[:] + [y[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise NonExistenceError(f"exact Hankel matrix is singular at column {col}", 0.0)
        A[col], A[piv] = A[piv], A[col]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col] / A[col][col]
                A[r] = [x - f * p for x, p in zip(A[r], A[col])]
    return [A[i][n] / A[i][i] for i in range(n)]


def solve_standard_pade_exact(moments: Sequence[Fraction], L: int, M: int):
    """Exact ``(a, b)`` coefficient lists for [L/M] from rational moments.

    Only the nonsingular case is handled; a singular Hankel matrix raises
    :class:`NonExistenceError`.
    """
    _check_orders(L, M)
    mu = [Fraction(m) for m in moments]
    if len(mu) < L + M + 1:
        raise ValueError(f"need {L + M + 1} moments")

    def get(j):
        return mu[j] if j >= 0 else Fraction(0)

    if M == 0:
        return mu[:L + 1], [Fraction(1)]
    H = [[get(L - M + 1 + i + j) for j in range(M)] for i in range(M)]
    x = _solve_fraction(H, [-mu[L + 1 + i] for i in range(M)])
    b = [Fraction(1)] + x[::-1]
    a = [sum((b[j] * get(k - j) for j in range(min(k, M) + 1)), Fraction(0)) for k in range(L + 1)]
    return a, b
