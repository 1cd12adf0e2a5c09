"""Measures that share N moments share the Padé table up to order N.

Gauss quadrature rules give k-atom measures matching the first 2k moments
of any measure, a convenient source of matched pairs.
"""
from stieltjes_pade import SpectralMeasure, moments, pade_table_equal, sn_equivalent
from stieltjes_pade.benchmarks import constructed_pairs, gauss_rule

cb = SpectralMeasure.checkerboard()
rule = gauss_rule(cb, 2)
print("2-point rule for the checkerboard:", rule.atoms)
a, b = moments(cb, 8), moments(rule, 8)
print(" N   moments   Padé table")
for N in range(1, 7):
    print(f"{N:2d}   {sn_equivalent(a, b, N)!s:8}  {pade_table_equal(a, b, N)}")

# %% All constructed pairs
print()
for pair in constructed_pairs():
    a, b = moments(pair.a, 8), moments(pair.b, 8)
    agree = all(sn_equivalent(a, b, N) == pade_table_equal(a, b, N) for N in range(1, 7))
    print(f"{pair.label:38s} matched={pair.matched!s:4}  predicates agree: {agree}")
