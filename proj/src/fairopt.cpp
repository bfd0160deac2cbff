#include "eoregion/fairopt.hpp"

#include "eoregion/error.hpp"
#include "eoregion/summation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace eoregion {

namespace lp {

namespace {

constexpr double kFeasibilityTol = 1e-12;
constexpr double kReducedCostTol = 1e-12;
constexpr double kBandTol = 1e-13;

struct Breakpoint {
    double lambda;
    std::size_t index;
};

// Sweep restricted to the coordinates in `active`; the others are left as is.
double sweep(std::span<const double> cost, std::span<const double> weight, double target,
             std::span<const std::size_t> active, std::vector<double>& t)
{
    CompensatedSum s;
    double lowest = 0.0;
    std::vector<Breakpoint> bps;
    for (std::size_t i : active) {
        if (weight[i] == 0.0) {
            t[i] = cost[i] < 0.0 ? 1.0 : 0.0;
            continue;
        }
        if (weight[i] > 0.0) {
            t[i] = 1.0;
            s.add(weight[i]);
        } else {
            t[i] = 0.0;
            lowest += weight[i];
        }
        bps.push_back({-cost[i] / weight[i], i});
    }
    const double highest = s.value();
    const double scale = std::max(1.0, highest - lowest);
    if (target > highest + kFeasibilityTol * scale || target < lowest - kFeasibilityTol * scale)
        throw std::logic_error("box LP: constraint target is not attainable");

    std::sort(bps.begin(), bps.end(), [](const Breakpoint& l, const Breakpoint& r) {
        return l.lambda < r.lambda || (l.lambda == r.lambda && l.index < r.index);
    });

    for (const auto& bp : bps) {
        const std::size_t i = bp.index;
        const double step = std::abs(weight[i]);
        const double excess = s.value() - target;
        if (excess <= step) {
            const double theta = std::clamp(excess / step, 0.0, 1.0);
            t[i] = weight[i] > 0.0 ? 1.0 - theta : theta;
            return bp.lambda;
        }
        t[i] = weight[i] > 0.0 ? 0.0 : 1.0;
        s.add(-step);
    }
    return bps.empty() ? 0.0 : bps.back().lambda;
}

// Re-solves the zero-reduced-cost coordinates at `lambda` against the
// secondary objective, holding the others at their optimal bound.
void canonicalize(std::span<const double> cost, std::span<const double> weight, double target,
                  std::span<const double> secondary, double lambda, std::vector<double>& t)
{
    std::vector<std::size_t> ties;
    CompensatedSum fixed;
    for (std::size_t i = 0; i < cost.size(); ++i) {
        const double reduced = cost[i] + lambda * weight[i];
        const double scale = std::abs(cost[i]) + std::abs(lambda * weight[i]);
        if (std::abs(reduced) <= kReducedCostTol * scale || reduced == 0.0) {
            ties.push_back(i);
            continue;
        }
        t[i] = reduced < 0.0 ? 1.0 : 0.0;
        fixed.add(t[i] * weight[i]);
    }
    if (ties.empty())
        return;
    sweep(secondary, weight, target - fixed.value(), ties, t);
}

void check_sizes(std::span<const double> cost, std::span<const double> weight, std::span<const double> secondary)
{
    if (cost.size() != weight.size() || (!secondary.empty() && secondary.size() != cost.size()))
        throw Error(ErrorCode::DimensionMismatch, "box LP: vector lengths differ");
}

} // namespace

Solution minimize_equality(std::span<const double> cost, std::span<const double> weight, double target,
                           std::span<const double> secondary)
{
    check_sizes(cost, weight, secondary);
    Solution sol;
    sol.t.assign(cost.size(), 0.0);
    std::vector<std::size_t> all(cost.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    sol.multiplier = sweep(cost, weight, target, all, sol.t);
    if (!secondary.empty())
        canonicalize(cost, weight, target, secondary, sol.multiplier, sol.t);
    return sol;
}

Solution minimize_band(std::span<const double> cost, std::span<const double> weight, double bound,
                       std::span<const double> secondary)
{
    check_sizes(cost, weight, secondary);
    if (!(bound >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "box LP: band half-width must be non-negative");

    // Face of unconstrained minimizers: negative costs on, positive off,
    // zero costs free.
    Solution sol;
    sol.t.assign(cost.size(), 0.0);
    std::vector<std::size_t> free;
    CompensatedSum base;
    double free_lo = 0.0, free_hi = 0.0;
    for (std::size_t i = 0; i < cost.size(); ++i) {
        if (cost[i] == 0.0) {
            free.push_back(i);
            (weight[i] > 0.0 ? free_hi : free_lo) += weight[i];
        } else if (cost[i] < 0.0) {
            sol.t[i] = 1.0;
            base.add(weight[i]);
        }
    }
    const double s0 = base.value();
    const double lo = s0 + free_lo;
    const double hi = s0 + free_hi;
    if (hi >= -bound - kBandTol && lo <= bound + kBandTol) {
        const double goal = std::clamp(s0, std::max(lo, -bound), std::min(hi, bound));
        if (!free.empty()) {
            const auto& tiebreak = secondary.empty() ? cost : secondary;
            sweep(tiebreak, weight, goal - s0, free, sol.t);
        }
        sol.multiplier = 0.0;
        return sol;
    }
    return minimize_equality(cost, weight, lo > bound ? bound : -bound, secondary);
}

} // namespace lp

namespace {

struct LpData {
    std::vector<double> cost;
    std::vector<double> weight;
};

LpData lp_data(const DataSource& source)
{
    const auto w = opportunity_weights(source);
    LpData d;
    d.cost.resize(source.size());
    d.weight.resize(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
        const double p = source.p()[i];
        d.cost[i] = p * (1.0 - 2.0 * source.q()[i]);
        d.weight[i] = p * w[i];
    }
    return d;
}

} // namespace

EoOptimum min_error_eo(const DataSource& source, double eps)
{
    if (!(eps >= 0.0 && eps <= 2.0))
        throw Error(ErrorCode::InvalidArgument, "eps must lie in [0, 2]");
    const auto data = lp_data(source);
    const auto sol = lp::minimize_band(data.cost, data.weight, eps, source.p());

    std::vector<double> f(source.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = source.p()[i] * sol.t[i];
    EoOptimum out{PredictorVec(std::move(f)), 0.0, 0.0};
    out.error = error(source, out.predictor);
    out.opp_diff = opp_diff(source, out.predictor);
    return out;
}

double oracle_min_error_eo(const DataSource& source, unsigned threads)
{
    const std::size_t n = source.size();
    if (n > kOracleMaxRows)
        throw Error(ErrorCode::TooLarge,
                    "exhaustive oracle supports at most " + std::to_string(kOracleMaxRows) + " rows");
    const auto w = opportunity_weights(source);
    const auto p = source.p();

    // Jobs are (fractional index, pattern over the remaining n-1 rows).
    const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
    const std::uint64_t jobs = patterns * n;

    auto search = [&](std::uint64_t lo, std::uint64_t hi) {
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> f(n);
        for (std::uint64_t job = lo; job < hi; ++job) {
            const std::size_t frac = static_cast<std::size_t>(job / patterns);
            const std::uint64_t mask = job % patterns;
            if (w[frac] == 0.0)
                continue;
            CompensatedSum s;
            for (std::size_t j = 0, bit = 0; j < n; ++j) {
                if (j == frac)
                    continue;
                const bool on = (mask >> bit++) & 1u;
                f[j] = on ? p[j] : 0.0;
                s.add(f[j] * w[j]);
            }
            double t = -s.value() / (p[frac] * w[frac]);
            if (t < -1e-12 || t > 1.0 + 1e-12)
                continue;
            t = std::clamp(t, 0.0, 1.0);
            f[frac] = t * p[frac];
            const PredictorVec candidate(f);
            if (std::abs(opp_diff(source, candidate)) > kCompareTol)
                continue;
            best = std::min(best, error(source, candidate));
        }
        return best;
    };

    double best = std::numeric_limits<double>::infinity();
    threads = std::max(1u, threads);
    if (threads == 1) {
        best = search(0, jobs);
    } else {
        std::mutex mu;
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (jobs + threads - 1) / threads;
        for (unsigned k = 0; k < threads; ++k) {
            const std::uint64_t lo = k * chunk;
            const std::uint64_t hi = std::min(jobs, lo + chunk);
            if (lo >= hi)
                continue;
            pool.emplace_back([&, lo, hi] {
                const double local = search(lo, hi);
                std::lock_guard lock(mu);
                best = std::min(best, local);
            });
        }
        pool.clear();
    }
    if (!std::isfinite(best))
        throw std::logic_error("oracle found no equal-opportunity predictor; constant classifiers always qualify");
    return best;
}

bool nontrivial_exists(const DataSource& source)
{
    return tau_star(source) < 1.0 - kIdentityTol;
}

std::string_view to_string(Certificate c) noexcept
{
    switch (c) {
    case Certificate::NontrivialEOWitness: return "NontrivialEOWitness";
    case Certificate::AllEOTrivial: return "AllEOTrivial";
    case Certificate::NoNontrivialExists: return "NoNontrivialExists";
    }
    return "Unknown";
}

Verdict compatibility_verdict(const DataSource& source)
{
    Verdict v;
    v.trivial_accuracy = trivial_accuracy(source);
    v.tau_star = tau_star(source);
    v.bayes_accuracy = bayes_accuracy(source);
    auto best = min_error_eo(source, 0.0);
    v.min_eo_error = best.error;
    v.compatible = v.min_eo_error < 1.0 - v.trivial_accuracy - kIdentityTol;
    if (v.compatible) {
        v.witness = std::move(best.predictor);
        v.certificate = Certificate::NontrivialEOWitness;
    } else if (!nontrivial_exists(source)) {
        v.certificate = Certificate::NoNontrivialExists;
    } else {
        v.certificate = Certificate::AllEOTrivial;
    }
    return v;
}

} // namespace eoregion
