#include "eoregion/metrics.hpp"

#include "eoregion/error.hpp"
#include "eoregion/summation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eoregion {

namespace {

void require_same_size(const DataSource& source, const PredictorVec& f)
{
    if (f.size() != source.size())
        throw Error(ErrorCode::DimensionMismatch,
                    "predictor has " + std::to_string(f.size()) + " entries, source has " +
                        std::to_string(source.size()) + " rows");
}

void ensure(bool condition, const char* what)
{
    if (!condition)
        throw std::logic_error(what);
}

} // namespace

GroupDenominators group_denominators(const DataSource& source)
{
    CompensatedSum d0, d1;
    for (std::size_t i = 0; i < source.size(); ++i) {
        const double mass = source.p()[i] * source.q()[i];
        (source.a()[i] == 1 ? d1 : d0).add(mass);
    }
    return {d0.value(), d1.value()};
}

std::vector<double> opportunity_weights(const DataSource& source)
{
    const auto den = group_denominators(source);
    if (!(den.d0 > 0.0))
        throw UndefinedEOError(0);
    if (!(den.d1 > 0.0))
        throw UndefinedEOError(1);
    std::vector<double> w(source.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = source.a()[i] == 1 ? source.q()[i] / den.d1 : -source.q()[i] / den.d0;
    return w;
}

double positive_rate(const DataSource& source)
{
    return compensated_dot(source.p(), source.q());
}

double error(const DataSource& source, const PredictorVec& f)
{
    require_same_size(source, f);
    CompensatedSum acc;
    for (std::size_t i = 0; i < source.size(); ++i) {
        acc.add(source.p()[i] * source.q()[i]);
        acc.add(f[i] * (1.0 - 2.0 * source.q()[i]));
    }
    return acc.value();
}

double accuracy(const DataSource& source, const PredictorVec& f)
{
    return 1.0 - error(source, f);
}

double opp_diff(const DataSource& source, const PredictorVec& f)
{
    require_same_size(source, f);
    const auto den = group_denominators(source);
    if (!(den.d0 > 0.0))
        throw UndefinedEOError(0);
    if (!(den.d1 > 0.0))
        throw UndefinedEOError(1);
    CompensatedSum tp0, tp1;
    for (std::size_t i = 0; i < source.size(); ++i)
        (source.a()[i] == 1 ? tp1 : tp0).add(f[i] * source.q()[i]);
    return tp1.value() / den.d1 - tp0.value() / den.d0;
}

MetricPoint metric_point(const DataSource& source, const PredictorVec& f)
{
    return {error(source, f), opp_diff(source, f)};
}

PredictorVec bayes(const DataSource& source, Tie tie)
{
    std::vector<double> f(source.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double q = source.q()[i];
        const bool positive = tie == Tie::Strict ? q > 0.5 : q >= 0.5;
        if (positive)
            f[i] = source.p()[i];
    }
    return PredictorVec(std::move(f));
}

double bayes_accuracy(const DataSource& source)
{
    CompensatedSum acc;
    acc.add(0.5);
    for (std::size_t i = 0; i < source.size(); ++i)
        acc.add(source.p()[i] * std::abs(source.q()[i] - 0.5));
    return acc.value();
}

double trivial_accuracy(const DataSource& source)
{
    const double ey = positive_rate(source);
    const double by_max = std::max(1.0 - ey, ey);
    const double by_distance = 0.5 + std::abs(ey - 0.5);
    ensure(std::abs(by_max - by_distance) <= kIdentityTol,
           "trivial accuracy: max{P(Y=0),P(Y=1)} disagrees with 1/2 + |E[Y] - 1/2|");
    return by_max;
}

double tau_star(const DataSource& source)
{
    CompensatedSum upper, lower;
    for (std::size_t i = 0; i < source.size(); ++i) {
        const double q = source.q()[i];
        if (q >= 0.5)
            upper.add(source.p()[i]);
        if (q <= 0.5)
            lower.add(source.p()[i]);
    }
    const double value = std::max(upper.value(), lower.value());
    if (source.is_deterministic())
        ensure(std::abs(value - trivial_accuracy(source)) <= kIdentityTol,
               "tau_star differs from tau on a deterministic source");
    return value;
}

} // namespace eoregion
