"""Padé approximants of the auxiliary function f(xi) from moments.

The series f(xi) = sum mu_k (-xi)^k converges only for |xi| < 1, yet the
[L/M] approximants built from the same coefficients converge on the whole
plane cut along (-inf, -1].
"""
import numpy as np

from stieltjes_pade import (SpectralMeasure, eval_f, moments, pade_determinant_oracle, pade_for_G,
                            solve_standard_pade, verify_accuracy_through_order)

cb = SpectralMeasure.checkerboard()
mu = moments(cb, 20)

# %% [2/3]: coefficients and accuracy-through-order
approx = solve_standard_pade(mu, 2, 3)
print("numerator  :", approx.numerator)
print("denominator:", approx.denominator)
report = verify_accuracy_through_order(approx, mu)
print(f"series matches moments through order {report.order}: deviation {report.max_deviation:.1e}")

# %% The determinant formulas give the same function
xi = 0.8 + 0.6j
P, Q = pade_determinant_oracle(mu, 2, 3, xi)
print(f"\nlinear solve {approx(xi):.14f}\ndeterminants {P / Q:.14f}")

# %% Convergence outside the disk of convergence of the series
xi = np.array([3.0, -0.9 + 0.5j, 10j])
exact = eval_f(cb, xi)
print("\n M   max |[M-1/M] - f|   (series diverges at these points)")
for M in range(1, 9):
    err = np.max(np.abs(solve_standard_pade(mu, M - 1, M)(xi) - exact))
    print(f"{M:2d}   {err:.2e}")

# %% A rational f is reproduced exactly once M reaches the atom count
two = SpectralMeasure.from_atoms([0.25, 0.75], [0.3, 0.2])
exact_two = solve_standard_pade(moments(two, 4), 1, 2)
print("\ntwo atoms, [1/2] at xi = 5:", exact_two(5.0), "vs", eval_f(two, 5.0))

# %% Approximants of G(xi) = -xi f(xi)
g = pade_for_G(mu, 3, 3)
print("[3/3]_G numerator:", g.numerator)
