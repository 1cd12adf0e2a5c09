"""Pole structure of [M-1/M]_f and the nonstandard form in s.

For a Stieltjes series the poles of [M-1/M]_f are simple, lie on
(-inf, -1) and carry positive residues.  Mapping s_n = -1/p_n turns the
partial fractions into sum A_n / (s - s_n) with s_n in [0, 1), the form in
which the reconstruction is posed.
"""
import numpy as np

from stieltjes_pade import (SpectralMeasure, delta_MJ, interlacing_report, moments,
                            nonstandard_from_moments, solve_standard_pade, to_pole_residue)

cb = SpectralMeasure.checkerboard()
mu = moments(cb, 20)

# %% xi-poles and residues of [3/4]_f
form = to_pole_residue(solve_standard_pade(mu, 3, 4))
print("xi-poles :", form.poles)
print("residues :", form.residues)
print("certificate:", form.certificate)

# %% s-form: poles in [0, 1), residues summing to mu_0
s_form, approx = nonstandard_from_moments(mu, 4)
for p, a in s_form.pairs:
    print(f"  s_n = {p:.6f}   A_n = {a:.6f}")
print("sum A_n =", s_form.residues.sum(), " mu_0 =", mu[0])
print("denominator (b_1 = 1):", approx.denominator)

# %% Poles fill the support of the density as M grows
for M in (2, 4, 8):
    print(f"M={M}: s-poles", np.round(nonstandard_from_moments(mu, M)[0].poles, 4))

# %% Consecutive orders interlace
print("\ninterlacing (M, ok):", interlacing_report(mu, 0, 6))

# %% Sign pattern of the Delta determinants
for M in range(1, 5):
    print(f"Delta_{M}(0) = {delta_MJ(mu, M, 0, 0.0):+.3e}   Delta_{M}(-1e6) = "
          f"{delta_MJ(mu, M, 0, -1e6):+.3e}")

# %% Round trip on an atomic measure
m = SpectralMeasure.from_atoms([0.1, 0.4, 0.8], [0.2, 0.3, 0.1])
back, _ = nonstandard_from_moments(moments(m, 6), 3)
print("\nrecovered atoms:", back.pairs)
