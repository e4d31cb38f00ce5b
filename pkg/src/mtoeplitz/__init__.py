"""Multiplicative Toeplitz truncations: apply, norm brackets, harnesses.

The operator sends x to y with y_n = sum_k f(n/k) x_k for a symbol f on
the positive rationals; naturally supported symbols act by Dirichlet
convolution. The package computes exact finite truncations, analytic
upper and constructive lower operator-norm bounds, and runs seedable
verification harnesses over the supporting number theory.
"""

from .errors import (
    DispatchError,
    MissingPrimePowerError,
    MToeplitzError,
    NormDivergenceError,
    PreconditionError,
    ResourceLimitError,
    ScopeError,
)
from .numtheory import (
    DIVISOR_CAP,
    Factorization,
    diagonal_witness_modulus,
    dirichlet_convolve,
    divisor_count,
    divisor_count_sieve,
    divisors,
    euler_product_zeta,
    factorize,
    is_prime,
    iterate_divisors,
    mobius_sieve,
    primorial_power,
    sieve_primes,
    zeta,
)
from .symbols import (
    NormEstimate,
    PositiveRational,
    SymbolSpec,
    TruncatedSequence,
    completely_multiplicative,
    coprime_power_sum,
    coprime_tail_bound,
    enumerate_rational_support,
    evaluate,
    identity_symbol,
    is_natural_supported,
    is_nonnegative,
    lr_norm_naturals,
    lr_norm_rationals,
    multiplicative,
    natural_values,
    power_on_naturals,
    product_power,
    product_power_rational_norm_closed_form,
    random_completely_multiplicative,
    symbol_from_json,
    symbol_to_json,
    symbol_transform_scan,
    tabulated_naturals,
    tabulated_rationals,
)
from .operator import (
    MATRIX_BUDGET,
    TruncatedMatrix,
    apply,
    apply_adjoint,
    build_matrix,
    matrix_to_csv,
    vector_to_csv,
)
from .norms import (
    AscentResult,
    NormBracket,
    bracket,
    bracket_to_json_dict,
    conjugate_r,
    lower_bound_ascent,
    upper_bound_theorem1,
    vector_norm,
    witness_delta,
    witness_divisor_uniform,
    witness_dual_exponent,
)
from .supports import (
    SupportSetSpec,
    divisor_rich,
    dyadic_powers,
    explicit_list,
    naturals,
    prime_numbers,
    primorial_multiples,
    smooth_numbers,
)
from .experiments import (
    ExperimentReport,
    check_dyadic_example,
    check_lemma4,
    check_prop5,
    check_prop6_gamma,
    check_theorem1,
    check_theorem2_convergence,
    check_theorem3_ratio,
    search_counterexample,
    sparsity_census,
    theorem1_property_suite,
)
from .reporting import (
    render_bracket_figure,
    render_report_figures,
    report_to_json_dict,
    series_csv,
    to_json_str,
)

__version__ = "0.1.0"

__all__ = [
    "DispatchError",
    "MissingPrimePowerError",
    "MToeplitzError",
    "NormDivergenceError",
    "PreconditionError",
    "ResourceLimitError",
    "ScopeError",
    "DIVISOR_CAP",
    "Factorization",
    "diagonal_witness_modulus",
    "dirichlet_convolve",
    "divisor_count",
    "divisor_count_sieve",
    "divisors",
    "euler_product_zeta",
    "factorize",
    "is_prime",
    "iterate_divisors",
    "mobius_sieve",
    "primorial_power",
    "sieve_primes",
    "zeta",
    "NormEstimate",
    "PositiveRational",
    "SymbolSpec",
    "TruncatedSequence",
    "completely_multiplicative",
    "coprime_power_sum",
    "coprime_tail_bound",
    "enumerate_rational_support",
    "evaluate",
    "identity_symbol",
    "is_natural_supported",
    "is_nonnegative",
    "lr_norm_naturals",
    "lr_norm_rationals",
    "multiplicative",
    "natural_values",
    "power_on_naturals",
    "product_power",
    "product_power_rational_norm_closed_form",
    "random_completely_multiplicative",
    "symbol_from_json",
    "symbol_to_json",
    "symbol_transform_scan",
    "tabulated_naturals",
    "tabulated_rationals",
    "MATRIX_BUDGET",
    "TruncatedMatrix",
    "apply",
    "apply_adjoint",
    "build_matrix",
    "matrix_to_csv",
    "vector_to_csv",
    "AscentResult",
    "NormBracket",
    "bracket",
    "bracket_to_json_dict",
    "conjugate_r",
    "lower_bound_ascent",
    "upper_bound_theorem1",
    "vector_norm",
    "witness_delta",
    "witness_divisor_uniform",
    "witness_dual_exponent",
    "SupportSetSpec",
    "divisor_rich",
    "dyadic_powers",
    "explicit_list",
    "naturals",
    "prime_numbers",
    "primorial_multiples",
    "smooth_numbers",
    "ExperimentReport",
    "check_dyadic_example",
    "check_lemma4",
    "check_prop5",
    "check_prop6_gamma",
    "check_theorem1",
    "check_theorem2_convergence",
    "check_theorem3_ratio",
    "search_counterexample",
    "sparsity_census",
    "theorem1_property_suite",
    "render_bracket_figure",
    "render_report_figures",
    "report_to_json_dict",
    "series_csv",
    "to_json_str",
]
