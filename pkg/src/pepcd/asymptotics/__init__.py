from .closed_form import (
    NU_AND,
    NU_OR,
    P_AND,
    P_OR,
    VAR_AND,
    VAR_OR,
    AsymptoticParams,
    MultiTriangleParams,
    check_clt_range,
    cov_kernel,
    cov_kernel_and,
    cov_kernel_or,
    curves,
    finite_sample_variance,
    mean,
    mean_and,
    mean_or,
    multi_triangle_params_I,
    multi_triangle_params_II,
    normal_params,
    validate_weights,
    var_kernel,
    var_kernel_and,
    var_kernel_or,
)
from .piecewise import PiecewiseRational, RationalPiece, Surd, comp_horner

__all__ = [
    "NU_AND", "NU_OR", "P_AND", "P_OR", "VAR_AND", "VAR_OR",
    "AsymptoticParams", "MultiTriangleParams", "PiecewiseRational",
    "RationalPiece", "Surd", "check_clt_range", "comp_horner", "cov_kernel",
    "cov_kernel_and", "cov_kernel_or", "curves", "finite_sample_variance",
    "mean", "mean_and", "mean_or", "multi_triangle_params_I",
    "multi_triangle_params_II", "normal_params", "validate_weights",
    "var_kernel", "var_kernel_and", "var_kernel_or",
]
