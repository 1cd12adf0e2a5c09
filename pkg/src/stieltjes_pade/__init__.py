"""Stieltjes functions of two-phase composites and their Padé approximants.

The effective permittivity of a two-phase composite is encoded by a positive
spectral measure on [0, 1].  This package evaluates the Stieltjes transform of
that measure, builds Padé approximants from its moments, converts them to
pole/residue form, and recovers moments from frequency-domain data.
"""
from .errors import (ConfigurationError, DegenerateContrastError, DomainError,
                     MultiplePoleError, NonExistenceError, QuadratureError, SchemaError,
                     StieltjesError, StructureViolationError)
from .measure import (Atom, ContinuousDensity, MomentSequence, QuadratureHint, SpectralMeasure,
                      checkerboard_density, hankel, moment, moments, table_density,
                      value_count_class)
from .stieltjes import (eval_F, eval_f, eval_G, s_from_xi, series_eval_F, xi_from_s)
from .pade import (PadeApproximant, build_hankel_system, delta_MJ, delta_sign,
                   pade_determinant_oracle, pade_for_G, solve_standard_pade,
                   solve_standard_pade_exact, verify_accuracy_through_order)
from .spectral import (PoleResidueForm, interlacing_report, moments_from_poles,
                       nonstandard_from_moments, pade_table_equal, sn_equivalent,
                       to_nonstandard, to_pole_residue)
from .inverse import (FrequencyDataset, ReconstructionConfig, ReconstructionResult,
                      model_select, reconstruct, s_from_permittivities)
from .materials import (CompositeModel, PermittivityModel, effective_F, generate_dataset,
                        spectral_measure_of)

__version__ = "0.1.0"

__all__ = [
    "Atom", "CompositeModel", "ConfigurationError", "ContinuousDensity",
    "DegenerateContrastError", "DomainError", "FrequencyDataset", "MomentSequence",
    "MultiplePoleError", "NonExistenceError", "PadeApproximant", "PermittivityModel",
    "PoleResidueForm", "QuadratureError", "QuadratureHint", "ReconstructionConfig",
    "ReconstructionResult", "SchemaError", "SpectralMeasure", "StieltjesError",
    "StructureViolationError", "build_hankel_system", "checkerboard_density", "delta_MJ",
    "delta_sign", "effective_F", "eval_F", "eval_G", "eval_f", "generate_dataset", "hankel",
    "interlacing_report", "model_select", "moment", "moments", "moments_from_poles",
    "nonstandard_from_moments", "pade_determinant_oracle", "pade_for_G", "pade_table_equal",
    "reconstruct", "s_from_permittivities", "s_from_xi", "series_eval_F", "sn_equivalent",
    "solve_standard_pade", "solve_standard_pade_exact", "spectral_measure_of",
    "table_density", "to_nonstandard", "to_pole_residue", "value_count_class",
    "verify_accuracy_through_order", "xi_from_s",
]
