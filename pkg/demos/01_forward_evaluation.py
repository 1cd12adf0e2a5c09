"""Forward evaluation: from a spectral measure to F(s).

A two-phase composite is summarized by a positive measure on [0, 1].  Its
Stieltjes transform F(s) = integral dmu(z) / (s - z) gives the effective
permittivity through F = 1 - eps*/eps1, with s = 1 / (1 - eps2/eps1).
"""
import numpy as np

from stieltjes_pade import (CompositeModel, SpectralMeasure, effective_F, eval_F, eval_f, eval_G,
                            moments, series_eval_F, spectral_measure_of)

# %% A finite-atom measure and its moments
two = SpectralMeasure.from_atoms([0.25, 0.75], [0.3, 0.2])
print("two-atom moments:", moments(two, 5).values)

# %% The checkerboard has a continuous density sqrt((1 - z)/z) / pi
cb = SpectralMeasure.checkerboard()
mu = moments(cb, 6)
print("checkerboard moments:", mu.values)
print("expected           :", [1 / 2, 1 / 8, 1 / 16, 5 / 128, 7 / 256, 21 / 1024])

# %% F(s) through quadrature agrees with the closed form 1 - sqrt(1 - 1/s)
s = np.array([2.0, 1.5 + 0.5j, -0.5 + 0.1j, 0.5 + 1e-3j])
print("\n  s                  quadrature                 closed form")
for sk, a, b in zip(s, eval_F(cb, s), effective_F(CompositeModel("checkerboard_5050"), s)):
    print(f"  {sk!s:<18} {a:.12f}  {b:.12f}")

# %% The xi variable: F(s) = G(xi) = -xi f(xi) with xi = -1/s
xi = -1 / 2.0
print("\nG(-1/2) =", eval_G(two, xi), " F(2) =", eval_F(two, 2.0), " f(0) = mu_0 =", eval_f(two, 0))

# %% Truncated moment series versus the exact value
for count in (2, 4, 8, 16):
    res = series_eval_F(moments(cb, count), 2.0)
    err = abs(res.value - (1 - np.sqrt(0.5)))
    print(f"{count:2d} terms: error {err:.2e}  (bound {res.truncation_bound:.2e})")

# %% Reference microstructures
for kind in ("laminate_parallel", "laminate_perpendicular", "hashin_shtrikman_2d"):
    m = spectral_measure_of(CompositeModel(kind, 0.3))
    print(f"{kind:24s} atom {m.atoms[0]}")
