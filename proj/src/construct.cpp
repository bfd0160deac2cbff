#include "eoregion/construct.hpp"

#include "eoregion/error.hpp"
#include "eoregion/exact.hpp"
#include "eoregion/metrics.hpp"
#include "eoregion/summation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace eoregion {

namespace {

// Uniform on the open interval (lo, hi). The unit draw is
// ((k + 1/2) / 2^53) for a 53-bit integer k, which never hits 0 or 1; the
// loop guards against the scaled value rounding onto an endpoint.
double open_uniform(std::mt19937_64& rng, double lo, double hi)
{
    if (!(lo < hi))
        throw std::logic_error("open_uniform: empty interval");
    for (;;) {
        const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        const double x = lo + (hi - lo) * u;
        if (lo < x && x < hi)
            return x;
    }
}

} // namespace

PlaneConstraints check_constraints(const PlaneInstance& in)
{
    const auto& P = in.P;
    const auto& Q = in.Q;
    PlaneConstraints c;
    c.c1 = true;
    for (int j = 0; j < 3; ++j)
        c.c1 = c.c1 && P[j] > 0.0 && P[j] < 1.0 && Q[j] > 0.0 && Q[j] < 1.0;
    c.c2 = P[0] * (2.0 * Q[0] - 1.0) + P[1] * (2.0 * Q[1] - 1.0) + P[2] * (2.0 * Q[2] - 1.0) > 0.0;
    c.c3 = Q[0] < 0.5 && Q[1] > 0.5 && Q[2] > 0.5;
    c.c4 = Q[2] + Q[0] >= 1.0;
    c.c5 = P[0] * Q[0] + P[1] * Q[1] < P[2] * Q[0];
    return c;
}

PlaneInstance algorithm1(std::uint64_t seed, PlaneTrace* trace)
{
    std::mt19937_64 rng(seed);
    PlaneInstance out;
    out.seed = seed;
    auto& P = out.P;
    auto& Q = out.Q;

    Q[0] = open_uniform(rng, 0.0, 0.5);
    Q[1] = open_uniform(rng, 0.5, 1.0);
    Q[2] = open_uniform(rng, 1.0 - Q[0], 1.0);
    P[2] = open_uniform(rng, 0.5, 1.0);
    const double a = std::max((1.0 - P[2]) * Q[0], 0.5 - P[2] * Q[2]);
    const double b = std::min((1.0 - P[2]) * Q[1], P[2] * Q[0]);
    if (!(a < b))
        throw std::logic_error("algorithm1: lower bound a is not below upper bound b");
    const double c = open_uniform(rng, a, b);
    P[1] = (c - Q[0] * (1.0 - P[2])) / (Q[1] - Q[0]);
    P[0] = 1.0 - P[2] - P[1];

    if (trace)
        *trace = {a, b, c};
    if (!check_constraints(out).all())
        throw std::logic_error("algorithm1 produced an instance violating its constraints (seed " +
                               std::to_string(seed) + ")");
    return out;
}

DataSource impossibility_source(const PlaneInstance& instance)
{
    const auto c = check_constraints(instance);
    if (!c.all()) {
        std::string failed;
        const bool flags[] = {c.c1, c.c2, c.c3, c.c4, c.c5};
        for (int j = 0; j < 5; ++j)
            if (!flags[j])
                failed += (failed.empty() ? "C" : ", C") + std::to_string(j + 1);
        throw Error(ErrorCode::ConstraintViolation, "instance violates " + failed);
    }
    return three_region_source(instance.P, instance.Q);
}

SufficiencyReport check_sufficiency(const DataSource& source)
{
    std::array<CompensatedSum, 2> above, below;
    for (std::size_t i = 0; i < source.size(); ++i) {
        const double q = source.q()[i];
        const int a = source.a()[i];
        if (q > 0.5)
            above[a].add(source.p()[i]);
        else if (q < 0.5)
            below[a].add(source.p()[i]);
    }
    SufficiencyReport r;
    for (int a = 0; a < 2; ++a) {
        r.above[a] = above[a].value();
        r.below[a] = below[a].value();
    }
    r.holds = r.above[0] > 0.0 && r.above[1] > 0.0 && r.below[0] > 0.0 && r.below[1] > 0.0;
    return r;
}

PredictorVec sufficiency_predictor(const DataSource& source)
{
    if (!check_sufficiency(source).holds)
        throw Error(ErrorCode::SufficiencyNotMet,
                    "P(Q > 1/2, A=a) and P(Q < 1/2, A=a) must be positive for both groups");

    const auto den = group_denominators(source);
    const std::array<double, 2> d{den.d0, den.d1};
    const std::size_t n = source.size();
    std::vector<double> qhat(n);

    if (positive_rate(source) <= 0.5) {
        // Constant 0 is the best constant. Predict 0 on {Q <= 1/2} and a
        // group constant on {Q > 1/2}; TPR_a = qhat_a * m_a / d_a with m_a
        // the positive mass of group a above 1/2.
        std::array<CompensatedSum, 2> m;
        for (std::size_t i = 0; i < n; ++i)
            if (source.q()[i] > 0.5)
                m[source.a()[i]].add(source.p()[i] * source.q()[i]);
        const std::array<double, 2> c{m[0].value() / d[0], m[1].value() / d[1]};
        const double top = std::max(c[0], c[1]);
        const std::array<double, 2> level{c[1] / top, c[0] / top};
        for (std::size_t i = 0; i < n; ++i)
            qhat[i] = source.q()[i] > 0.5 ? level[source.a()[i]] : 0.0;
    } else {
        // Constant 1 is strictly best. Predict 1 on {Q >= 1/2} and a group
        // constant on {Q < 1/2}; FNR_a = (1 - qhat_a) * k_a / d_a.
        std::array<CompensatedSum, 2> k;
        for (std::size_t i = 0; i < n; ++i)
            if (source.q()[i] < 0.5)
                k[source.a()[i]].add(source.p()[i] * source.q()[i]);
        const std::array<double, 2> e{k[0].value() / d[0], k[1].value() / d[1]};
        std::array<double, 2> level{};
        if (e[1] == 0.0) {
            // Group 1 misses no positives below 1/2 whatever qhat_1 is.
            level = {1.0, 0.5};
        } else if (e[0] == 0.0) {
            level = {0.5, 1.0};
        } else {
            const double top = std::max(e[0], e[1]);
            level = {1.0 - e[1] / top, 1.0 - e[0] / top};
        }
        for (std::size_t i = 0; i < n; ++i)
            qhat[i] = source.q()[i] < 0.5 ? level[source.a()[i]] : 1.0;
    }
    return PredictorVec::from_pointwise(source, qhat);
}

std::map<std::string, DataSource> paper_fixtures()
{
    std::map<std::string, DataSource> out;

    std::vector<SourceRow> cloud;
    for (const auto& row : exact::cloud_rows())
        cloud.push_back({row.x, static_cast<std::uint8_t>(row.a), exact::to_double(row.p), exact::to_double(row.q)});
    out.emplace("cloud", DataSource::from_rows(std::move(cloud), LoadOptions{.strict = true}));

    out.emplace("non-example", DataSource::from_rows(
                                   {
                                       {"x1", 0, 0.267, 0.893},
                                       {"x2", 1, 0.344, 0.896},
                                       {"x3", 0, 0.141, 0.126},
                                       {"x4", 1, 0.248, 0.207},
                                   },
                                   LoadOptions{.strict = true}));

    // Printed to three decimals: P2 = 0.096, P3 = 0.772, and P1 completes
    // the simplex as the generator itself does (the printed 0.131 leaves a
    // total mass of 0.999).
    out.emplace("ex-plane", three_region_source({1.0 - 0.772 - 0.096, 0.096, 0.772}, {0.274, 0.858, 0.891}));
    return out;
}

} // namespace eoregion
