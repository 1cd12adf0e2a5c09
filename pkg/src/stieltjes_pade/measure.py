"""Spectral measures on [0, 1] and their moments.

A spectral measure is a finite sum of point masses (atoms) plus an optional
absolutely continuous part.  The continuous part is integrated with adaptive
Gauss-Kronrod quadrature (QUADPACK through :func:`scipy.integrate.quad`); when
the density has integrable endpoint singularities the substitution
``z = sin(theta)**2`` is applied first so the integrand becomes smooth.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy import integrate

from .errors import QuadratureError

QUAD_EPSABS = 1e-12
QUAD_LIMIT = 200
MIN_ATOM_GAP = 1e-12


class QuadratureHint(str, enum.Enum):
    SMOOTH = "smooth"
    INV_SQRT_AT_0 = "inverse-sqrt-at-0"
    INV_SQRT_AT_BOTH = "inverse-sqrt-at-both-ends"


class VolumeFractionWarning(UserWarning):
    """Total mass of a measure is >= 1 (not a volume fraction)."""


@dataclass(frozen=True)
class Atom:
    """Point mass of ``weight`` located at ``position`` in [0, 1]."""

    position: float
    weight: float

    def __post_init__(self):
        z, w = float(self.position), float(self.weight)
        if not 0.0 <= z <= 1.0:
            raise ValueError(f"atom position {z!r} outside [0, 1]")
        if not w > 0.0:
            raise ValueError(f"atom weight must be positive, got {w!r}")
        object.__setattr__(self, "position", z)
        object.__setattr__(self, "weight", w)


@dataclass(frozen=True)
class ContinuousDensity:
    """Non-negative density on [0, 1].

    ``kind`` and ``params`` only matter for serialization; evaluation goes
    through ``density``.
    """

    density: Callable[[np.ndarray], np.ndarray]
    quadrature_hint: QuadratureHint = QuadratureHint.SMOOTH
    kind: str = "custom"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "quadrature_hint", QuadratureHint(self.quadrature_hint))

    def __call__(self, z):
        return self.density(z)


def _checkerboard(z):
    z = np.asarray(z, dtype=float)
    return np.sqrt((1.0 - z) / z) / np.pi


def checkerboard_density() -> ContinuousDensity:
    """Spectral density of the 50/50 checkerboard, ``sqrt((1-z)/z)/pi``."""
    return ContinuousDensity(_checkerboard, QuadratureHint.INV_SQRT_AT_0, kind="checkerboard")


def table_density(z, w) -> ContinuousDensity:
    """Piecewise-linear density through the nodes ``(z[i], w[i])``, zero outside."""
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    if z.ndim != 1 or z.shape != w.shape or len(z) < 2:
        raise ValueError("table density needs matching 1-d z and w with at least 2 nodes")
    if np.any(np.diff(z) <= 0) or z[0] < 0 or z[-1] > 1:
        raise ValueError("table nodes must be strictly increasing inside [0, 1]")
    if np.any(w < 0):
        raise ValueError("table density values must be non-negative")

    def density(x):
        return np.interp(x, z, w, left=0.0, right=0.0)

    return ContinuousDensity(density, QuadratureHint.SMOOTH, kind="table",
                             params={"z": z.tolist(), "w": w.tolist()})


class ValueCount(NamedTuple):
    """How many distinct values the distribution function takes.

    ``kind`` is ``"zero"``, ``"finite"`` or ``"infinite"``; ``n`` is the
    number of atoms for ``"finite"`` and ``None`` otherwise.
    """

    kind: str
    n: int | None = None


@dataclass(frozen=True)
class SpectralMeasure:
    """Positive measure on [0, 1]: atoms plus an optional continuous density.

    Atoms are stored sorted by position.  Positions closer than ``1e-12`` are
    rejected.  A total mass >= 1 triggers :class:`VolumeFractionWarning`.
    """

    atoms: tuple[Atom, ...] = ()
    density: ContinuousDensity | None = None

    def __post_init__(self):
        atoms = tuple(sorted((a if isinstance(a, Atom) else Atom(*a) for a in self.atoms),
                             key=lambda a: a.position))
        for a, b in zip(atoms, atoms[1:]):
            if b.position - a.position < MIN_ATOM_GAP:
                raise ValueError(f"atoms at {a.position!r} and {b.position!r} are not distinct")
        object.__setattr__(self, "atoms", atoms)
        if self.mass >= 1.0:
            warnings.warn(f"total mass {self.mass:.6g} >= 1 cannot be a volume fraction",
                          VolumeFractionWarning, stacklevel=3)

    @classmethod
    def from_atoms(cls, positions: Sequence[float], weights: Sequence[float]) -> "SpectralMeasure":
        if len(positions) != len(weights):
            raise ValueError("positions and weights differ in length")
        return cls(tuple(Atom(z, w) for z, w in zip(positions, weights)))

    @classmethod
    def checkerboard(cls) -> "SpectralMeasure":
        return cls((), checkerboard_density())

    @property
    def positions(self) -> np.ndarray:
        return np.array([a.position for a in self.atoms], dtype=float)

    @property
    def weights(self) -> np.ndarray:
        return np.array([a.weight for a in self.atoms], dtype=float)

    @property
    def mass(self) -> float:
        return moment(self, 0)

    @property
    def is_zero(self) -> bool:
        return not self.atoms and self.density is None


def integrate_density(density: ContinuousDensity, g: Callable[[np.ndarray], np.ndarray]) -> float:
    """Return ``int_0^1 g(z) density(z) dz`` for a real-valued weight ``g``."""
    if density.quadrature_hint is QuadratureHint.SMOOTH:
        def integrand(z):
            return g(z) * density(z)
        lo, hi = 0.0, 1.0
        points = None
        if density.kind == "table":
            nodes = np.asarray(density.params["z"])
            points = nodes[(nodes > 0) & (nodes < 1)]
            points = points if len(points) else None
    else:
        def integrand(theta):
            z = np.sin(theta) ** 2
            return g(z) * density(z) * np.sin(2.0 * theta)
        lo, hi = 0.0, np.pi / 2
        points = None
    res = integrate.quad(integrand, lo, hi, epsabs=QUAD_EPSABS, epsrel=0.0,
                         limit=QUAD_LIMIT, points=points, full_output=1)
    value, abserr = res[0], res[1]
    if len(res) > 3 and abserr > QUAD_EPSABS:
        raise QuadratureError("density quadrature did not converge", abserr)
    return float(value)


def integrate_density_complex(density: ContinuousDensity, g) -> complex:
    """Complex counterpart of :func:`integrate_density` (real and imaginary parts)."""
    re = integrate_density(density, lambda z: np.real(g(z)))
    im = integrate_density(density, lambda z: np.imag(g(z)))
    return complex(re, im)


def moment(measure: SpectralMeasure, m: int) -> float:
    """m-th moment ``sum_i w_i z_i**m + int z**m density(z) dz``."""
    m = int(m)
    if m < 0:
        raise ValueError("moment order must be non-negative")
    total = 0.0
    if measure.atoms:
        total += float(np.sum(measure.weights * measure.positions ** m))
    if measure.density is not None:
        total += integrate_density(measure.density, lambda z: z ** m)
    return total


def moments(measure: SpectralMeasure, count: int) -> "MomentSequence":
    """First ``count`` moments ``mu_0, ..., mu_{count-1}``."""
    count = int(count)
    if count < 1:
        raise ValueError("count must be >= 1")
    return MomentSequence([moment(measure, m) for m in range(count)])


def value_count_class(measure: SpectralMeasure) -> ValueCount:
    if measure.density is not None:
        return ValueCount("infinite")
    if not measure.atoms:
        return ValueCount("zero")
    return ValueCount("finite", len(measure.atoms))


def hankel(values, k: int, shift: int = 0) -> np.ndarray:
    """k x k Hankel matrix ``[values[i + j + shift]]``."""
    values = np.asarray(values)
    idx = np.arange(k)[:, None] + np.arange(k)[None, :] + shift
    return values[idx]


@dataclass(frozen=True)
class MomentSequence:
    """Moments ``mu_0, mu_1, ...`` of a measure on [0, 1].

    With ``check=True`` (the default) the entries must be non-negative and
    non-increasing up to a relative tolerance of ``1e-12``.
    """

    values: np.ndarray
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size == 0:
            raise ValueError("empty moment sequence")
        if not np.all(np.isfinite(v)):
            raise ValueError("moments must be finite")
        if self.check:
            tol = 1e-12 * max(1.0, abs(v[0]))
            if np.any(v < -tol):
                raise ValueError("moments of a positive measure are non-negative")
            if np.any(np.diff(v) > tol):
                raise ValueError("moments of a measure on [0, 1] are non-increasing")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def get(self, j: int) -> float:
        """``mu_j`` with the convention ``mu_j = 0`` for ``j < 0``."""
        return 0.0 if j < 0 else float(self.values[j])

    def hankel_determinants(self) -> np.ndarray:
        """Determinants of the leading blocks ``[mu_{i+j}]``, k = 1, 2, ..."""
        kmax = (len(self) + 1) // 2
        return np.array([np.linalg.det(hankel(self.values, k)) for k in range(1, kmax + 1)])

    def is_consistent(self, tol: float = 1e-12) -> bool:
        """True if every leading Hankel determinant is >= -tol."""
        return bool(np.all(self.hankel_determinants() >= -tol))
