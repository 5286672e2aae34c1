"""Hyperholomorphic function theory over finite-dimensional algebras."""
from .algebra import (AlgebraElement, AlgebraError, AlgebraSpec, DivergentSeries,
                      MatrixOverA, NotInvertible, builtin_algebra, invert, involute,
                      left_regular, mat_invert, mat_mul, mat_sqrt_inv, mul, norm,
                      resolve_algebra, sym_product, validate_spec)
from .fueter import (FueterPoint, FueterSeries, VPolynomial, apply_D, backward_shift,
                     cauchy_inverse, cauchy_product, cauchy_product_right, eval_series,
                     evaluate, frechet_check, fueter_vars, gleason_residual, gleason_solve,
                     hermitian_form_Am, monomial_expand, norm_Am, recenter, tail_bound)
from .realization import (Realization, concat_col, concat_row, from_polynomial,
                          gleason_via_realization, inverse, product, resolvent_span,
                          sum_, to_series)
from .rkmodules import (blaschke_factor, da_adjoint_check, da_contraction_gap,
                        derivative_op, drury_arveson, evaluation_identity_check, fock,
                        fock_adjoint_check, hermitian_form, kernel_eval, module_norm,
                        mult_by, mult_op, multiplier_kernel_pairing, reproducing_check)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "AlgebraError", "AlgebraSpec", "DivergentSeries", "MatrixOverA",
    "NotInvertible", "builtin_algebra", "invert", "involute", "left_regular", "mat_invert",
    "mat_mul", "mat_sqrt_inv", "mul", "norm", "resolve_algebra", "sym_product",
    "validate_spec", "FueterPoint", "FueterSeries", "VPolynomial", "apply_D",
    "backward_shift", "cauchy_inverse", "cauchy_product", "cauchy_product_right",
    "eval_series", "evaluate", "frechet_check", "fueter_vars", "gleason_residual",
    "gleason_solve", "hermitian_form_Am", "monomial_expand", "norm_Am", "recenter",
    "tail_bound", "Realization", "concat_col", "concat_row", "from_polynomial",
    "gleason_via_realization", "inverse", "product", "resolvent_span", "sum_", "to_series",
    "blaschke_factor", "da_adjoint_check", "da_contraction_gap", "derivative_op",
    "drury_arveson", "evaluation_identity_check", "fock", "fock_adjoint_check",
    "hermitian_form", "kernel_eval", "module_norm", "mult_by", "mult_op",
    "multiplier_kernel_pairing", "reproducing_check",
]
