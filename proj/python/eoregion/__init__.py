"""Error vs opportunity-difference analysis for discrete data sources.

Predictors are passed and returned pointwise: one qhat value in [0, 1] per
row of the source.
"""

from ._eoregion import (
    DataSource,
    EoRegionError,
    UndefinedEOError,
    accuracy,
    algorithm1,
    bayes,
    bayes_accuracy,
    brute_force_region,
    check_sufficiency,
    compatibility_verdict,
    eo_slice,
    error,
    fixtures,
    impossibility_source,
    min_error_eo,
    nontrivial_exists,
    opp_diff,
    oracle_min_error_eo,
    positive_rate,
    region,
    render_svg,
    sufficiency_predictor,
    tau_star,
    three_region_source,
    trivial_accuracy,
)

__all__ = [
    "DataSource",
    "EoRegionError",
    "UndefinedEOError",
    "accuracy",
    "algorithm1",
    "bayes",
    "bayes_accuracy",
    "brute_force_region",
    "check_sufficiency",
    "compatibility_verdict",
    "eo_slice",
    "error",
    "fixtures",
    "impossibility_source",
    "min_error_eo",
    "nontrivial_exists",
    "opp_diff",
    "oracle_min_error_eo",
    "positive_rate",
    "region",
    "render_svg",
    "sufficiency_predictor",
    "tau_star",
    "three_region_source",
    "trivial_accuracy",
]
