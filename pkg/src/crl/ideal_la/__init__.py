"""Ground-truth graded pieces of coincident-root-locus ideals.

Degreewise exact linear algebra is the engine; Buchberger elimination is an
independent cross-check on small cases.
"""

from crl.ideal_la.kernel import (
    BudgetExceeded,
    DEFAULT_CONFIG,
    EquivarianceError,
    GradedPieceReport,
    LAConfig,
    SubstitutionMap,
    build_parameterization,
    generator_characters,
    graded_piece_kernel,
    hilbert_function,
    kernel_character,
    minimal_generators_by_degree,
)

__all__ = [
    "BudgetExceeded",
    "DEFAULT_CONFIG",
    "EquivarianceError",
    "GradedPieceReport",
    "LAConfig",
    "SubstitutionMap",
    "build_parameterization",
    "generator_characters",
    "graded_piece_kernel",
    "hilbert_function",
    "kernel_character",
    "minimal_generators_by_degree",
]
