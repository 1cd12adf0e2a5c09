"""Closed-form two-phase composites and dispersive permittivity models.

Each :class:`CompositeModel` supplies both an exact F(s) and its spectral
measure, so forward evaluation through the measure can be checked against
the closed form.  ``p`` is the volume fraction of constituent 2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .inverse import FrequencyDataset, s_from_permittivities
from .measure import SpectralMeasure
from .stieltjes import on_s_cut

MODEL_KINDS = ("laminate_parallel", "laminate_perpendicular", "hashin_shtrikman_2d",
               "checkerboard_5050")


@dataclass(frozen=True)
class CompositeModel:
    kind: str
    p: float = 0.5

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown composite model {self.kind!r}; choose from {MODEL_KINDS}")
        if self.kind == "checkerboard_5050":
            object.__setattr__(self, "p", 0.5)
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"volume fraction must lie in (0, 1), got {self.p}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p}

    @classmethod
    def from_json(cls, obj: dict) -> "CompositeModel":
        return cls(obj["kind"], obj.get("p", 0.5))


def spectral_measure_of(model: CompositeModel) -> SpectralMeasure:
    p = model.p
    if model.kind == "laminate_parallel":
        return SpectralMeasure.from_atoms([0.0], [p])
    if model.kind == "laminate_perpendicular":
        return SpectralMeasure.from_atoms([1.0 - p], [p])
    if model.kind == "hashin_shtrikman_2d":
        # coated cylinders of phase 2 in a phase-1 matrix
        return SpectralMeasure.from_atoms([(1.0 - p) / 2.0], [p])
    return SpectralMeasure.checkerboard()


def effective_F(model: CompositeModel, s):
    """Closed-form ``F(s) = 1 - eps*/eps1`` for scalar or array ``s``."""
    s_arr = np.asarray(s, dtype=complex)
    for v in s_arr.ravel():
        if on_s_cut(v):
            raise DomainError(f"s = {v} lies on the cut [0, 1]")
    p = model.p
    if model.kind == "laminate_parallel":
        out = p / s_arr
    elif model.kind == "laminate_perpendicular":
        out = p / (s_arr - (1.0 - p))
    elif model.kind == "hashin_shtrikman_2d":
        out = p / (s_arr - (1.0 - p) / 2.0)
    else:
        # principal sqrt of 1 - 1/s has its cut exactly on s in [0, 1]
        out = 1.0 - np.sqrt(1.0 - 1.0 / s_arr)
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class PermittivityModel:
    """``constant``: eps(w) = c.  ``drude``: eps_inf - w_p**2 / (w**2 + i gamma w).

    Frequencies in rad/s; the ``exp(-i w t)`` convention gives Im eps >= 0.
    """

    kind: str
    c: complex = 1.0
    eps_inf: float = 1.0
    omega_p: float = 1.0
    gamma: float = 0.1

    def __post_init__(self):
        if self.kind not in ("constant", "drude"):
            raise ValueError(f"unknown permittivity model {self.kind!r}")
        if self.kind == "drude" and not self.gamma > 0:
            raise ValueError("Drude damping gamma must be positive")

    @classmethod
    def constant(cls, c) -> "PermittivityModel":
        return cls("constant", c=complex(c))

    @classmethod
    def drude(cls, eps_inf, omega_p, gamma) -> "PermittivityModel":
        return cls("drude", eps_inf=float(eps_inf), omega_p=float(omega_p), gamma=float(gamma))

    def __call__(self, omega):
        w = np.asarray(omega, dtype=float)
        if self.kind == "constant":
            return np.full(w.shape, complex(self.c)) if w.ndim else complex(self.c)
        out = self.eps_inf - self.omega_p ** 2 / (w ** 2 + 1j * self.gamma * w)
        return out if w.ndim else complex(out)

    def to_json(self) -> dict:
        if self.kind == "constant":
            return {"kind": "constant", "re": self.c.real, "im": self.c.imag}
        return {"kind": "drude", "eps_inf": self.eps_inf, "omega_p": self.omega_p,
                "gamma": self.gamma}


def generate_dataset(model: CompositeModel, pm1: PermittivityModel, pm2: PermittivityModel,
                     omegas, noise: float = 0.0, seed: int = 0) -> FrequencyDataset:
    """Synthetic records at ``omegas`` with multiplicative complex Gaussian noise.

    ``d_k = F(s_k) * (1 + noise * eta_k)`` where ``eta_k`` is complex standard
    normal (unit variance split evenly over real and imaginary parts).
    """
    omegas = np.asarray(omegas, dtype=float)
    eps1 = np.atleast_1d(pm1(omegas)).astype(complex)
    eps2 = np.atleast_1d(pm2(omegas)).astype(complex)
    s = np.array([s_from_permittivities(e1, e2) for e1, e2 in zip(eps1, eps2)])
    for w, sk in zip(omegas, s):
        if on_s_cut(sk):
            raise DomainError(f"s = {sk} at omega = {w} lies on the cut [0, 1]")
    d = np.asarray(effective_F(model, s), dtype=complex).reshape(s.shape)
    if noise:
        rng = np.random.default_rng(seed)
        eta = (rng.standard_normal(len(s)) + 1j * rng.standard_normal(len(s))) / np.sqrt(2.0)
        d = d * (1.0 + noise * eta)
    return FrequencyDataset(s=s, d=d, omega=omegas, eps1=eps1, eps2=eps2, noise_level=noise)
