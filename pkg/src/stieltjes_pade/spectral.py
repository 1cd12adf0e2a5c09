"""Pole/residue forms, the xi -> s transformation and S_N equivalence.

An [M-1/M] approximant of f has simple real poles ``p_i < -1`` with positive
residues ``lam_i``.  Substituting ``xi = -1/s`` turns ``-xi * lam/(xi - p)``
into ``A/(s - s_n)`` with ``s_n = -1/p`` and ``A = -lam/p``, which is the
nonstandard form of F with denominator normalized to ``b_1 = 1``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import MultiplePoleError, NonExistenceError, StructureViolationError
from .measure import MomentSequence
from .pade import S_NONSTANDARD, XI_STANDARD, PadeApproximant, pade_for_G, solve_standard_pade

TRIM_RTOL = 1e-9  # below the accuracy-through-order tolerance a coefficient is zero
IMAG_RTOL = 1e-8
SIMPLE_RTOL = 1e-10
CUT_BAND = 1e-10


class InterlacingWarning(UserWarning):
    """Poles of consecutive approximants fail to interlace strictly."""


@dataclass
class Certificate:
    """Pass/fail record of structural checks; ``failures`` lists what broke."""

    passed: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


@dataclass
class PoleResidueForm:
    """Partial fractions ``constant + sum_i residue_i / (x - pole_i)``.

    ``variable`` is ``"xi"`` or ``"s"``.  A nonzero ``constant`` in the xi
    variable is a pole of f at infinity, i.e. an s-pole at 0.
    """

    poles: np.ndarray
    residues: np.ndarray
    variable: str
    constant: float = 0.0
    certificate: Certificate | None = None

    def __post_init__(self):
        self.poles = np.atleast_1d(np.asarray(self.poles, dtype=float))
        self.residues = np.atleast_1d(np.asarray(self.residues, dtype=float))
        if self.poles.shape != self.residues.shape:
            raise ValueError("poles and residues differ in length")
        if self.variable not in ("xi", "s"):
            raise ValueError(f"unknown variable {self.variable!r}")

    @property
    def pairs(self):
        return list(zip(self.poles.tolist(), self.residues.tolist()))

    def __len__(self):
        return len(self.poles)

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        val = np.full(x.shape, complex(self.constant))
        for p, r in zip(self.poles, self.residues):
            val = val + r / (x - p)
        return val if val.ndim else complex(val)


def _trim(c, rtol=TRIM_RTOL):
    c = np.asarray(c, dtype=float)
    scale = np.max(np.abs(c)) if c.size else 0.0
    n = len(c)
    while n > 1 and abs(c[n - 1]) <= rtol * scale:
        n -= 1
    return c[:n]


def _polished_roots(q):
    roots = P.polyroots(q) if len(q) > 1 else np.array([])
    dq = P.polyder(q)
    out = []
    for r in roots:
        d = P.polyval(r, dq)
        out.append(r - P.polyval(r, q) / d if d != 0 else r)
    return np.array(out, dtype=complex)


def _real_simple(roots):
    bad = np.abs(roots.imag) > IMAG_RTOL * np.abs(roots.real)
    if np.any(bad):
        raise StructureViolationError(f"complex denominator roots {roots[bad]}")
    r = np.sort(roots.real)
    gaps = np.diff(r)
    scale = np.maximum(np.abs(r[1:]), np.abs(r[:-1]))
    if np.any(gaps <= SIMPLE_RTOL * scale):
        raise MultiplePoleError(f"repeated denominator roots near {r[1:][gaps <= SIMPLE_RTOL * scale]}")
    return r


def to_pole_residue(approx: PadeApproximant, margin: float = CUT_BAND) -> PoleResidueForm:
    """Partial-fraction form of an f-approximant (xi) or an s-form approximant.

    Poles are companion-matrix eigenvalues polished by one Newton step;
    residues are ``P(p)/Q'(p)``.  The attached certificate checks that
    xi-poles lie below ``-1 - margin`` with positive residues (or, for the
    s-form, poles in [0, 1) with ``0 <= A_n < 1`` and ``0 < sum A_n < 1``).
    """
    if approx.variable == XI_STANDARD:
        if approx.target != "f":
            raise ValueError("pole/residue conversion expects an approximant of f")
        sign = (-1.0) ** np.arange(max(approx.L, approx.M) + 1)
        p = _trim(approx.numerator * sign[:approx.L + 1])
        q = _trim(approx.denominator * sign[:approx.M + 1])
        variable = "xi"
    else:
        p = _trim(approx.numerator)
        q = _trim(approx.denominator)
        variable = "s"

    constant = 0.0
    if len(p) > len(q):
        raise StructureViolationError("numerator degree exceeds denominator degree")
    if len(p) == len(q):
        constant = float(p[-1] / q[-1])
        p = P.polysub(p, constant * q)[:len(q) - 1] if len(q) > 1 else np.zeros(1)

    poles = _real_simple(_polished_roots(q))
    dq = P.polyder(q)
    residues = np.array([P.polyval(x, p) / P.polyval(x, dq) for x in poles])

    failures = []
    if variable == "xi":
        band = (poles >= -1.0 - CUT_BAND) & (poles < -1.0)
        if np.any(band):
            raise StructureViolationError(f"poles {poles[band]} sit on the end of the cut at -1")
        if np.any(poles >= -1.0 - margin):
            failures.append(f"poles not below -1: {poles[poles >= -1.0 - margin]}")
        if np.any(residues <= 0):
            failures.append(f"non-positive residues: {residues[residues <= 0]}")
        if constant < 0:
            failures.append(f"negative constant term {constant}")
    else:
        failures.extend(_s_constraint_failures(poles, residues))
    return PoleResidueForm(poles, residues, variable, constant, Certificate(not failures, failures))


def _s_constraint_failures(poles, residues):
    failures = []
    if np.any((poles < 0) | (poles >= 1)):
        failures.append("s-poles outside [0, 1)")
    if np.any((residues < 0) | (residues >= 1)):
        failures.append("residues outside [0, 1)")
    total = float(np.sum(residues))
    if not 0 < total < 1:
        failures.append(f"sum of residues {total:.6g} outside (0, 1)")
    return failures


def s_form_certificate(form: PoleResidueForm) -> Certificate:
    failures = _s_constraint_failures(form.poles, form.residues)
    return Certificate(not failures, failures)


def denominator_linear_coefficient(s_poles) -> float:
    """Coefficient of ``s`` in ``prod_n (s - s_n)`` before normalization."""
    return float(P.polyfromroots(np.asarray(s_poles, dtype=float))[1]) if len(s_poles) else 0.0


def to_nonstandard(form: PoleResidueForm):
    """Map a xi pole/residue form to ``sum_n A_n / (s - s_n)``.

    Returns ``(s_form, approximant)`` where the approximant has numerator
    degree M-1, denominator degree M and ``b_1 = 1``.
    """
    if form.variable != "xi":
        raise ValueError("to_nonstandard expects a xi pole/residue form")
    if np.any(form.poles >= -1.0):
        raise ValueError(f"xi-poles must lie in (-inf, -1), got {form.poles}")
    s_poles = -1.0 / form.poles
    A = -form.residues / form.poles
    if form.constant != 0.0:
        s_poles = np.concatenate(([0.0], s_poles))
        A = np.concatenate(([form.constant], A))
    order = np.argsort(s_poles)
    s_poles, A = s_poles[order], A[order]
    M = len(s_poles)
    if M == 0:
        raise ValueError("no poles: F is identically zero")

    b = P.polyfromroots(s_poles)
    a = np.zeros(M)
    for n in range(M):
        a += A[n] * P.polyfromroots(np.delete(s_poles, n))
    b1 = b[1]
    if b1 == 0.0:
        raise StructureViolationError("linear denominator coefficient vanishes")
    b = b / b1
    b[1] = 1.0
    approx = PadeApproximant(a / b1, b, M - 1, M, S_NONSTANDARD, "F")
    s_form = PoleResidueForm(s_poles, A, "s")
    s_form.certificate = s_form_certificate(s_form)
    return s_form, approx


def moments_from_poles(form: PoleResidueForm, count: int) -> MomentSequence:
    """``c_m = sum_n A_n s_n**m`` for ``m < count``."""
    if form.variable != "s":
        raise ValueError("moments_from_poles expects an s pole/residue form")
    m = np.arange(count)
    if len(form.poles) == 0:
        return MomentSequence(np.zeros(count), check=False)
    c = (form.residues[:, None] * form.poles[:, None] ** m[None, :]).sum(axis=0)
    return MomentSequence(c, check=False)


def nonstandard_from_moments(moments, M: int):
    """Convenience chain: ``[M-1/M]_f`` -> poles/residues -> s-form."""
    approx = solve_standard_pade(moments, M - 1, M)
    return to_nonstandard(to_pole_residue(approx))


# S_N equivalence -----------------------------------------------------------

SN_RTOL = 1e-12
TABLE_ATOL = 1e-9


def _first(moments, N):
    mu = np.asarray(moments, dtype=float)
    if len(mu) < N:
        raise ValueError(f"need at least {N} moments, got {len(mu)}")
    return mu[:N]


def sn_equivalent(moments_a, moments_b, N: int) -> bool:
    """True iff the first N moments agree to ``1e-12`` relative."""
    a, b = _first(moments_a, N), _first(moments_b, N)
    return bool(np.all(np.abs(a - b) <= SN_RTOL * np.maximum(np.abs(a), np.abs(b))))


def table_cells(N: int):
    """Index pairs ``(L, M)`` with ``L + M <= N`` and ``L >= M >= 0``."""
    return [(L, M) for L in range(N + 1) for M in range(L + 1) if L + M <= N]


def pade_table_diff(moments_a, moments_b, N: int) -> dict:
    """Per-cell coefficient difference of ``[L/M]_G``; NonExistence noted per cell."""
    a, b = _first(moments_a, N), _first(moments_b, N)
    out = {}
    for L, M in table_cells(N):
        try:
            ga, gb = pade_for_G(a, L, M), pade_for_G(b, L, M)
        except NonExistenceError as exc:
            out[(L, M)] = exc
            continue
        diff = max(np.max(np.abs(ga.numerator - gb.numerator)),
                   np.max(np.abs(ga.denominator - gb.denominator)))
        out[(L, M)] = float(diff)
    return out


def pade_table_equal(moments_a, moments_b, N: int) -> bool:
    """True iff ``[L/M]_G`` coincide (to ``1e-9``) for all ``L + M <= N``, ``L >= M``."""
    for cell, diff in pade_table_diff(moments_a, moments_b, N).items():
        if isinstance(diff, Exception):
            raise NonExistenceError(f"Padé table cell [{cell[0]}/{cell[1]}]: {diff}",
                                    diff.smallest_singular_value)
        if diff > TABLE_ATOL:
            return False
    return True


# interlacing ---------------------------------------------------------------

def strictly_interlace(inner, outer, tol: float = 0.0) -> bool:
    """True if each gap of sorted ``outer`` (len k+1) holds one ``inner`` (len k)."""
    inner, outer = np.sort(inner), np.sort(outer)
    if len(outer) != len(inner) + 1:
        return False
    return bool(np.all(outer[:-1] < inner - tol) and np.all(inner < outer[1:] - tol))


def interlacing_report(moments, J: int, M_max: int, tol: float = 1e-9) -> list:
    """Check interlacing of poles of ``[M+J/M]_f`` for consecutive M.

    Returns ``(M, ok)`` pairs comparing M and M+1.  A violation only raises
    :class:`InterlacingWarning`.
    """
    poles = {}
    for M in range(1, M_max + 1):
        if M + J < 0:
            continue
        approx = solve_standard_pade(moments, M + J, M)
        q = _trim(approx.denominator * (-1.0) ** np.arange(M + 1))
        poles[M] = _real_simple(_polished_roots(q))
    report = []
    for M in sorted(poles):
        if M + 1 in poles and len(poles[M + 1]) == len(poles[M]) + 1:
            ok = strictly_interlace(poles[M], poles[M + 1])
            if not ok:
                near = strictly_interlace(poles[M], poles[M + 1], tol=-tol)
                warnings.warn(f"poles of [{M + J}/{M}] and [{M + 1 + J}/{M + 1}] do not interlace"
                              + (" (within tolerance)" if near else ""), InterlacingWarning)
            report.append((M, ok))
    return report
