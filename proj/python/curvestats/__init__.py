"""Point-count statistics of curves over small finite fields.

Exact tautological predictions, trace-formula bounds, Haar unitary-symplectic
sampling with curve-like constraints, and exhaustive weighted censuses of
genus-1 and genus-2 curves. The heavy lifting lives in the compiled
extension; this package re-exports it.
"""

from curvestats._core import (  # noqa: F401
    __version__,
    cohomology_log_bound,
    dimension_d,
    field_modulus,
    hilbert_dimensions,
    hs_ratio_closed_form,
    hyperelliptic_point_count,
    implied_point_counts,
    kprime_search,
    lambda_of_q,
    multiset_count,
    partition_numbers,
    poisson_pmf,
    predicted_falling_moment,
    predicted_moment,
    ratio_prediction,
    run_census,
    run_experiment,
    sample_phases,
    stable_trace_normalized,
    stirling2,
    subexp_constant,
    unstable_tail_exact,
)

__all__ = [
    "__version__",
    "cohomology_log_bound",
    "dimension_d",
    "field_modulus",
    "hilbert_dimensions",
    "hs_ratio_closed_form",
    "hyperelliptic_point_count",
    "implied_point_counts",
    "kprime_search",
    "lambda_of_q",
    "multiset_count",
    "partition_numbers",
    "poisson_pmf",
    "predicted_falling_moment",
    "predicted_moment",
    "ratio_prediction",
    "run_census",
    "run_experiment",
    "sample_phases",
    "stable_trace_normalized",
    "stirling2",
    "subexp_constant",
    "unstable_tail_exact",
]
