#include "eoregion/region.hpp"

#include "eoregion/error.hpp"
#include "eoregion/summation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace eoregion {

namespace {

constexpr double kAngleTol = 1e-12;
constexpr double kHullTol = 1e-12;
constexpr double kLexTol = 1e-12;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double cross(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }
double norm(Vec2 u) { return std::hypot(u.x, u.y); }

// Rotates so the lexicographically smallest vertex comes first; the error
// coordinate is compared with a small tolerance so near-vertical left edges
// pick the same start regardless of rounding.
void canonicalize(RegionPolygon& region)
{
    auto& vs = region.vertices;
    if (vs.size() < 2)
        return;
    double min_err = vs[0].error;
    for (const auto& v : vs)
        min_err = std::min(min_err, v.error);
    std::size_t best = vs.size();
    for (std::size_t k = 0; k < vs.size(); ++k) {
        if (vs[k].error > min_err + kLexTol)
            continue;
        if (best == vs.size() || vs[k].opp_diff < vs[best].opp_diff)
            best = k;
    }
    std::rotate(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(best), vs.end());
    std::rotate(region.witnesses.begin(),
                region.witnesses.begin() + static_cast<std::ptrdiff_t>(best), region.witnesses.end());
}

PredictorVec witness_from_bits(const DataSource& source, const std::vector<std::uint8_t>& on)
{
    std::vector<double> f(source.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (on[i])
            f[i] = source.p()[i];
    return PredictorVec(std::move(f));
}

struct Direction {
    Vec2 sum;
    std::vector<std::size_t> rows;
    double angle = 0.0;
};

} // namespace

std::vector<Generator2D> generators(const DataSource& source)
{
    const auto w = opportunity_weights(source);
    std::vector<Generator2D> gens(source.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const double p = source.p()[i];
        gens[i] = {p * (1.0 - 2.0 * source.q()[i]), p * w[i], i};
    }
    return gens;
}

RegionPolygon zonotope_region(const DataSource& source)
{
    const auto gens = generators(source);
    const std::size_t n = source.size();

    // Orient every generator into the upper half-plane; a flipped generator
    // starts "on" so the walk begins at the lowest (then leftmost) vertex.
    std::vector<std::uint8_t> on(n, 0);
    std::vector<Direction> dirs;
    CompensatedSum base_x, base_y;
    base_x.add(positive_rate(source));
    for (const auto& g : gens) {
        const Vec2 v{g.dx, g.dy};
        const double len = norm(v);
        if (len < kZeroGeneratorNorm)
            continue;
        const bool horizontal = std::abs(v.y) <= kAngleTol * len;
        const bool flip = horizontal ? v.x < 0.0 : v.y < 0.0;
        Vec2 h = v;
        if (flip) {
            on[g.row_index] = 1;
            base_x.add(v.x);
            base_y.add(v.y);
            h = {-v.x, -v.y};
        }
        dirs.push_back({h, {g.row_index}, std::atan2(h.y, h.x)});
    }

    std::stable_sort(dirs.begin(), dirs.end(),
                     [](const Direction& l, const Direction& r) { return l.angle < r.angle; });

    std::vector<Direction> merged;
    for (auto& d : dirs) {
        if (!merged.empty()) {
            auto& last = merged.back();
            const Vec2 u = last.sum;
            const double sine = cross(u, d.sum) / (norm(u) * norm(d.sum));
            if (std::abs(sine) <= kAngleTol && u.x * d.sum.x + u.y * d.sum.y > 0.0) {
                last.sum.x += d.sum.x;
                last.sum.y += d.sum.y;
                last.rows.insert(last.rows.end(), d.rows.begin(), d.rows.end());
                continue;
            }
        }
        merged.push_back(std::move(d));
    }

    RegionPolygon region;
    Vec2 cur{base_x.value(), base_y.value()};
    auto emit = [&] {
        region.vertices.push_back({cur.x, cur.y});
        region.witnesses.push_back(witness_from_bits(source, on));
    };
    auto toggle = [&](const Direction& d) {
        for (std::size_t i : d.rows)
            on[i] ^= 1;
    };

    emit();
    const std::size_t m = merged.size();
    if (m == 0) {
        region.degenerate = true;
        return region;
    }
    // Going up the first chain adds each direction; the return chain removes
    // them in the same order. The last removal closes the polygon.
    for (std::size_t k = 0; k < m; ++k) {
        cur.x += merged[k].sum.x;
        cur.y += merged[k].sum.y;
        toggle(merged[k]);
        emit();
    }
    for (std::size_t k = 0; k + 1 < m; ++k) {
        cur.x -= merged[k].sum.x;
        cur.y -= merged[k].sum.y;
        toggle(merged[k]);
        emit();
    }
    region.degenerate = m == 1;
    canonicalize(region);
    return region;
}

RegionPolygon brute_force_region(const DataSource& source, unsigned threads)
{
    const std::size_t n = source.size();
    if (n > kBruteForceMaxRows)
        throw Error(ErrorCode::TooLarge, "brute-force region supports at most " +
                                             std::to_string(kBruteForceMaxRows) + " rows");
    const auto gens = generators(source);
    const double offset = positive_rate(source);

    struct Point {
        Vec2 v;
        std::uint32_t mask = 0;
    };
    const std::uint32_t count = std::uint32_t{1} << n;
    std::vector<Point> pts(count);

    auto fill = [&](std::uint32_t lo, std::uint32_t hi) {
        for (std::uint32_t mask = lo; mask < hi; ++mask) {
            CompensatedSum x, y;
            x.add(offset);
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::uint32_t{1} << i)) {
                    x.add(gens[i].dx);
                    y.add(gens[i].dy);
                }
            }
            pts[mask] = {{x.value(), y.value()}, mask};
        }
    };
    threads = std::max(1u, std::min(threads, count));
    if (threads == 1) {
        fill(0, count);
    } else {
        std::vector<std::jthread> pool;
        const std::uint32_t chunk = (count + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint32_t lo = t * chunk;
            const std::uint32_t hi = std::min(count, lo + chunk);
            if (lo < hi)
                pool.emplace_back(fill, lo, hi);
        }
    }

    std::sort(pts.begin(), pts.end(), [](const Point& l, const Point& r) {
        return l.v.x < r.v.x || (l.v.x == r.v.x && (l.v.y < r.v.y || (l.v.y == r.v.y && l.mask < r.mask)));
    });
    std::vector<Point> uniq;
    for (const auto& p : pts) {
        if (!uniq.empty() && std::abs(uniq.back().v.x - p.v.x) <= kHullTol &&
            std::abs(uniq.back().v.y - p.v.y) <= kHullTol)
            continue;
        uniq.push_back(p);
    }

    auto turn = [](const Point& o, const Point& a, const Point& b) {
        const Vec2 oa{a.v.x - o.v.x, a.v.y - o.v.y};
        const Vec2 ob{b.v.x - o.v.x, b.v.y - o.v.y};
        return cross(oa, ob) > kHullTol * std::max(1.0, norm(oa) * norm(ob));
    };

    // Andrew's monotone chain, dropping collinear points.
    std::vector<Point> hull;
    if (uniq.size() == 1) {
        hull = uniq;
    } else {
        hull.resize(2 * uniq.size());
        std::size_t k = 0;
        for (const auto& p : uniq) {
            while (k >= 2 && !turn(hull[k - 2], hull[k - 1], p))
                --k;
            hull[k++] = p;
        }
        for (std::size_t i = uniq.size() - 1, t = k + 1; i-- > 0;) {
            while (k >= t && !turn(hull[k - 2], hull[k - 1], uniq[i]))
                --k;
            hull[k++] = uniq[i];
        }
        hull.resize(k - 1);
    }

    RegionPolygon region;
    for (const auto& p : hull) {
        region.vertices.push_back({p.v.x, p.v.y});
        std::vector<std::uint8_t> on(n);
        for (std::size_t i = 0; i < n; ++i)
            on[i] = (p.mask >> i) & 1u;
        region.witnesses.push_back(witness_from_bits(source, on));
    }
    region.degenerate = region.vertices.size() <= 2;
    canonicalize(region);
    return region;
}

ErrorInterval eo_slice(const RegionPolygon& region)
{
    const auto& vs = region.vertices;
    if (vs.empty())
        throw std::logic_error("eo_slice on an empty region");
    constexpr double tol = kIdentityTol;
    std::vector<double> xs;
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const auto& u = vs[k];
        const auto& v = vs[(k + 1) % vs.size()];
        if (std::abs(u.opp_diff) <= tol)
            xs.push_back(u.error);
        const bool crosses = (u.opp_diff < -tol && v.opp_diff > tol) || (u.opp_diff > tol && v.opp_diff < -tol);
        if (crosses) {
            const double t = u.opp_diff / (u.opp_diff - v.opp_diff);
            xs.push_back(u.error + t * (v.error - u.error));
        }
    }
    if (xs.empty())
        throw std::logic_error("region misses the opp_diff = 0 axis; constant classifiers must lie on it");
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    return {*lo, *hi};
}

bool contains(const RegionPolygon& region, const MetricPoint& pt, double tol)
{
    const auto& vs = region.vertices;
    if (vs.empty())
        return false;
    const Vec2 p{pt.error, pt.opp_diff};
    if (vs.size() == 1)
        return std::hypot(p.x - vs[0].error, p.y - vs[0].opp_diff) <= tol;
    if (vs.size() == 2) {
        const Vec2 a{vs[0].error, vs[0].opp_diff};
        const Vec2 d{vs[1].error - a.x, vs[1].opp_diff - a.y};
        const double len2 = d.x * d.x + d.y * d.y;
        double t = len2 > 0.0 ? ((p.x - a.x) * d.x + (p.y - a.y) * d.y) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        return std::hypot(p.x - (a.x + t * d.x), p.y - (a.y + t * d.y)) <= tol;
    }
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const auto& u = vs[k];
        const auto& v = vs[(k + 1) % vs.size()];
        const Vec2 e{v.error - u.error, v.opp_diff - u.opp_diff};
        const double len = norm(e);
        if (len == 0.0)
            continue;
        const double signed_dist = cross(e, {p.x - u.error, p.y - u.opp_diff}) / len;
        if (signed_dist < -tol)
            return false;
    }
    return true;
}

} // namespace eoregion
