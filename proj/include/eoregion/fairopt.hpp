#pragma once

// Most accurate predictor under (relaxed) equal opportunity, existence of
// non-trivial predictors, and the combined compatibility verdict.

#include "eoregion/distribution.hpp"
#include "eoregion/metrics.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace eoregion {

namespace lp {

struct Solution {
    std::vector<double> t;
    // Lagrange multiplier of the linear constraint at the optimum.
    double multiplier = 0.0;
};

/// min <cost, t>  s.t.  <weight, t> = target,  0 <= t <= 1.
///
/// Breakpoint sweep over the scalar multiplier: at multiplier l the box
/// minimizer sets t_i = 1 iff cost_i + l weight_i < 0, and the constraint
/// value falls monotonically as l crosses each breakpoint -cost_i/weight_i.
/// At most one coordinate ends fractional. Equal breakpoints are taken in
/// row order. Among optimal solutions, the one minimizing <secondary, t> is
/// returned (pass an empty span to skip that step).
///
/// Throws std::logic_error when target lies outside the attainable range.
Solution minimize_equality(std::span<const double> cost, std::span<const double> weight, double target,
                           std::span<const double> secondary = {});

/// Same objective with the two-sided constraint |<weight, t>| <= bound.
Solution minimize_band(std::span<const double> cost, std::span<const double> weight, double bound,
                       std::span<const double> secondary = {});

} // namespace lp

struct EoOptimum {
    PredictorVec predictor;
    double error = 0.0;
    double opp_diff = 0.0;
};

/// Minimizes err(F) subject to |opp_diff(F)| <= eps and 0 <= F <= P.
/// eps must lie in [0, 2]. Among optimal predictors the one with the least
/// total positive mass <F, 1> is returned.
EoOptimum min_error_eo(const DataSource& source, double eps = 0.0);

inline constexpr std::size_t kOracleMaxRows = 12;

/// Exhaustive check of min_error_eo(source, 0): an optimum has at most one
/// coordinate strictly inside its bounds, so every (fractional index, bound
/// pattern) pair is tried.
double oracle_min_error_eo(const DataSource& source, unsigned threads = 1);

/// Non-trivial predictors exist iff tau* < 1.
bool nontrivial_exists(const DataSource& source);

enum class Certificate {
    NontrivialEOWitness,
    AllEOTrivial,
    NoNontrivialExists,
};

std::string_view to_string(Certificate c) noexcept;

struct Verdict {
    double trivial_accuracy = 0.0;
    double tau_star = 0.0;
    double bayes_accuracy = 0.0;
    double min_eo_error = 0.0;
    bool compatible = false;
    std::optional<PredictorVec> witness;
    Certificate certificate = Certificate::AllEOTrivial;
};

/// Compatible iff some equal-opportunity predictor has error strictly below
/// 1 - tau (margin 1e-12).
Verdict compatibility_verdict(const DataSource& source);

} // namespace eoregion
