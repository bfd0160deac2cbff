#pragma once

// File formats: distribution JSON, sample CSV, region JSON/CSV, verdict
// JSON, generator sidecar, and the region SVG figure.

#include "eoregion/construct.hpp"
#include "eoregion/distribution.hpp"
#include "eoregion/fairopt.hpp"
#include "eoregion/region.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace eoregion::io {

using nlohmann::json;

/// printf("%.9g").
std::string format_float(double x);
/// x rounded to nine significant digits.
double round9(double x);

json distribution_to_json(const DataSource& source);
DataSource distribution_from_json(const json& doc, const LoadOptions& options = {},
                                  std::vector<std::string>* warnings = nullptr);
DataSource read_distribution(const std::filesystem::path& path, const LoadOptions& options = {},
                             std::vector<std::string>* warnings = nullptr);

/// CSV with header `x,a,y`.
std::vector<SampleRecord> parse_samples_csv(std::istream& in);
std::vector<SampleRecord> read_samples(const std::filesystem::path& path);

/// {"vertices":[{"error","opp_diff","witness":[0|1,...]}], "degenerate"}.
/// Coordinates keep full precision so that reading back is exact.
json region_to_json(const RegionPolygon& region);
RegionPolygon region_from_json(const json& doc, const DataSource& source);
/// Header `error,opp_diff`, one vertex per line.
std::string region_to_csv(const RegionPolygon& region);

/// Witness is given pointwise (qhat_i = f_i / p_i).
json verdict_to_json(const Verdict& verdict, const DataSource& source);

json plane_sidecar(const PlaneInstance& instance);

struct PlotSpec {
    int width_px = 640;
    int height_px = 480;
};

/// Byte-stable rendering: fixed element order, %.9g coordinates. Markers for
/// the Bayes classifier, both constants and the optimal equal-opportunity
/// predictor are drawn only when they lie in the region (tolerance 1e-6).
std::string render_svg(const DataSource& source, const RegionPolygon& region, const PlotSpec& spec = {});

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

} // namespace eoregion::io
