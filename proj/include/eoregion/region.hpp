#pragma once

// The feasible region M = {(err(F), opp_diff(F)) : 0 <= F <= P}. Both metrics
// are affine in F, so M is the image of a box: a 2-D zonotope translated by
// (<P,Q>, 0).

#include "eoregion/distribution.hpp"
#include "eoregion/metrics.hpp"

#include <cstddef>
#include <vector>

namespace eoregion {

/// Contribution of row `row_index` when its predictor moves from 0 to p_i.
struct Generator2D {
    double dx = 0.0; // p_i (1 - 2 q_i)
    double dy = 0.0; // p_i w_i
    std::size_t row_index = 0;
};

/// Counter-clockwise vertices starting at the lexicographically smallest
/// (error, opp_diff). witnesses[k] is a deterministic predictor mapping to
/// vertices[k]. A degenerate region (segment or point) has at most two
/// vertices.
struct RegionPolygon {
    std::vector<MetricPoint> vertices;
    std::vector<PredictorVec> witnesses;
    bool degenerate = false;
};

struct ErrorInterval {
    double err_min = 0.0;
    double err_max = 0.0;
};

inline constexpr std::size_t kBruteForceMaxRows = 20;

/// Generators with norm below this are dropped.
inline constexpr double kZeroGeneratorNorm = 1e-14;

std::vector<Generator2D> generators(const DataSource& source);

/// O(n log n): sort generators by angle, merge parallel ones, walk the
/// boundary. Throws UndefinedEOError.
RegionPolygon zonotope_region(const DataSource& source);

/// Convex hull of the 2^n deterministic predictors. Throws TooLarge for
/// n > kBruteForceMaxRows. `threads` > 1 splits the enumeration.
RegionPolygon brute_force_region(const DataSource& source, unsigned threads = 1);

/// Errors attainable with opp_diff = 0, i.e. M intersected with the x-axis.
ErrorInterval eo_slice(const RegionPolygon& region);

/// Point-in-convex-polygon with an absolute distance tolerance.
bool contains(const RegionPolygon& region, const MetricPoint& pt, double tol = kCompareTol);

} // namespace eoregion
