#pragma once

#include "eoregion/distribution.hpp"

#include <vector>

namespace eoregion {

/// Tolerance for algebraic identities that hold exactly in real arithmetic.
inline constexpr double kIdentityTol = 1e-12;
/// Tolerance for user-facing comparisons.
inline constexpr double kCompareTol = 1e-9;

struct MetricPoint {
    double error = 0.0;
    double opp_diff = 0.0;
};

/// <P, Q^(a)> for a = 0, 1, i.e. P(Y=1, A=a).
struct GroupDenominators {
    double d0 = 0.0;
    double d1 = 0.0;

    bool defined() const noexcept { return d0 > 0.0 && d1 > 0.0; }
};

enum class Tie {
    Strict,    // 1[q > 1/2]
    Inclusive, // 1[q >= 1/2]
};

GroupDenominators group_denominators(const DataSource& source);

/// w_i = Q^(1)_i / d1 - Q^(0)_i / d0, so that opp_diff(F) = <F, w>.
/// Throws UndefinedEOError when either denominator is zero.
std::vector<double> opportunity_weights(const DataSource& source);

/// E[Y] = <P, Q>.
double positive_rate(const DataSource& source);

/// err(F) = <P,Q> + <F, 1 - 2Q>.
double error(const DataSource& source, const PredictorVec& f);
double accuracy(const DataSource& source, const PredictorVec& f);

/// TPR(A=1) - TPR(A=0), signed.
double opp_diff(const DataSource& source, const PredictorVec& f);

MetricPoint metric_point(const DataSource& source, const PredictorVec& f);

PredictorVec bayes(const DataSource& source, Tie tie = Tie::Strict);

/// 1/2 + E|Q - 1/2|.
double bayes_accuracy(const DataSource& source);

/// max{P(Y=0), P(Y=1)}; cross-checked against 1/2 + |E[Y] - 1/2|.
double trivial_accuracy(const DataSource& source);

/// max{P(Q >= 1/2), P(Q <= 1/2)}.
double tau_star(const DataSource& source);

} // namespace eoregion
