#include "eoregion/io.hpp"

#include "eoregion/error.hpp"
#include "eoregion/metrics.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace eoregion::io {

namespace {

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
        cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

int parse_bit(const std::string& text, const char* what, std::size_t line_no)
{
    if (text == "0")
        return 0;
    if (text == "1")
        return 1;
    throw Error(ErrorCode::BadLabel,
                std::string(what) + " must be 0 or 1 on line " + std::to_string(line_no) + ", got \"" + text + "\"");
}

} // namespace

std::string format_float(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

double round9(double x)
{
    return std::strtod(format_float(x).c_str(), nullptr);
}

json distribution_to_json(const DataSource& source)
{
    json rows = json::array();
    for (const auto& row : source.rows())
        rows.push_back({{"x", row.x}, {"a", row.a}, {"p", row.p}, {"q", row.q}});
    return {{"rows", rows}};
}

DataSource distribution_from_json(const json& doc, const LoadOptions& options, std::vector<std::string>* warnings)
{
    if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array())
        throw Error(ErrorCode::Parse, "distribution JSON must be an object with a \"rows\" array");
    std::vector<SourceRow> rows;
    for (const auto& r : doc["rows"]) {
        if (!r.is_object() || !r.contains("x") || !r.contains("a") || !r.contains("p") || !r.contains("q"))
            throw Error(ErrorCode::Parse, "each row needs fields x, a, p, q");
        if (!r["p"].is_number() || !r["q"].is_number())
            throw Error(ErrorCode::Parse, "p and q must be numbers");
        const auto& a = r["a"];
        if (!a.is_number_integer() || (a.get<int>() != 0 && a.get<int>() != 1))
            throw Error(ErrorCode::BadLabel, "a must be 0 or 1");
        SourceRow row;
        row.x = r["x"].is_string() ? r["x"].get<std::string>() : r["x"].dump();
        row.a = static_cast<std::uint8_t>(a.get<int>());
        row.p = r["p"].get<double>();
        row.q = r["q"].get<double>();
        rows.push_back(std::move(row));
    }
    return DataSource::from_rows(std::move(rows), options, warnings);
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << contents;
    if (!out)
        throw Error(ErrorCode::Io, "failed writing " + path.string());
}

DataSource read_distribution(const std::filesystem::path& path, const LoadOptions& options,
                             std::vector<std::string>* warnings)
{
    const auto text = read_file(path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
    }
    return distribution_from_json(doc, options, warnings);
}

std::vector<SampleRecord> parse_samples_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty())
            break;
    }
    const auto header = split_csv_line(line);
    if (header != std::vector<std::string>{"x", "a", "y"})
        throw Error(ErrorCode::Parse, "sample CSV must start with the header x,a,y");

    std::vector<SampleRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 3)
            throw Error(ErrorCode::Parse, "expected 3 fields on line " + std::to_string(line_no));
        records.push_back({cells[0], parse_bit(cells[1], "a", line_no), parse_bit(cells[2], "y", line_no)});
    }
    return records;
}

std::vector<SampleRecord> read_samples(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    return parse_samples_csv(in);
}

json region_to_json(const RegionPolygon& region)
{
    json vertices = json::array();
    for (std::size_t k = 0; k < region.vertices.size(); ++k) {
        json bits = json::array();
        for (double f : region.witnesses[k].values())
            bits.push_back(f > 0.0 ? 1 : 0);
        vertices.push_back(
            {{"error", region.vertices[k].error}, {"opp_diff", region.vertices[k].opp_diff}, {"witness", bits}});
    }
    return {{"vertices", vertices}, {"degenerate", region.degenerate}};
}

RegionPolygon region_from_json(const json& doc, const DataSource& source)
{
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw Error(ErrorCode::Parse, "region JSON must be an object with a \"vertices\" array");
    RegionPolygon region;
    region.degenerate = doc.value("degenerate", false);
    for (const auto& v : doc["vertices"]) {
        region.vertices.push_back({v.at("error").get<double>(), v.at("opp_diff").get<double>()});
        const auto& bits = v.at("witness");
        if (!bits.is_array() || bits.size() != source.size())
            throw Error(ErrorCode::DimensionMismatch, "witness length differs from source");
        std::vector<double> f(source.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            f[i] = bits[i].get<int>() ? source.p()[i] : 0.0;
        region.witnesses.emplace_back(std::move(f));
    }
    return region;
}

std::string region_to_csv(const RegionPolygon& region)
{
    std::string out = "error,opp_diff\n";
    for (const auto& v : region.vertices)
        out += format_float(v.error) + "," + format_float(v.opp_diff) + "\n";
    return out;
}

json verdict_to_json(const Verdict& verdict, const DataSource& source)
{
    json doc = {
        {"trivial_accuracy", round9(verdict.trivial_accuracy)},
        {"tau_star", round9(verdict.tau_star)},
        {"bayes_accuracy", round9(verdict.bayes_accuracy)},
        {"min_eo_error", round9(verdict.min_eo_error)},
        {"compatible", verdict.compatible},
        {"certificate", std::string(to_string(verdict.certificate))},
    };
    if (verdict.witness) {
        json qhat = json::array();
        for (double v : verdict.witness->pointwise(source))
            qhat.push_back(round9(v));
        doc["witness"] = qhat;
    } else {
        doc["witness"] = nullptr;
    }
    return doc;
}

json plane_sidecar(const PlaneInstance& instance)
{
    const auto c = check_constraints(instance);
    return {
        {"seed", instance.seed},
        {"P", {instance.P[0], instance.P[1], instance.P[2]}},
        {"Q", {instance.Q[0], instance.Q[1], instance.Q[2]}},
        {"constraints", {{"C1", c.c1}, {"C2", c.c2}, {"C3", c.c3}, {"C4", c.c4}, {"C5", c.c5}}},
    };
}

std::string render_svg(const DataSource& source, const RegionPolygon& region, const PlotSpec& spec)
{
    constexpr double margin = 48.0;
    const double w = spec.width_px;
    const double h = spec.height_px;
    const double plot_w = w - 2 * margin;
    const double plot_h = h - 2 * margin;
    auto px = [&](double error) { return format_float(margin + error * plot_w); };
    auto py = [&](double opp) { return format_float(margin + (1.0 - opp) / 2.0 * plot_h); };
    auto point = [&](const MetricPoint& v) { return px(v.error) + "," + py(v.opp_diff); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width_px << "\" height=\""
        << spec.height_px << "\" viewBox=\"0 0 " << spec.width_px << " " << spec.height_px << "\">\n";
    svg << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << spec.width_px << "\" height=\""
        << spec.height_px << "\" fill=\"white\"/>\n";
    svg << "<rect class=\"frame\" x=\"" << px(0) << "\" y=\"" << py(1) << "\" width=\"" << format_float(plot_w)
        << "\" height=\"" << format_float(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double e : {0.0, 0.5, 1.0})
        svg << "<text class=\"tick\" x=\"" << px(e) << "\" y=\"" << format_float(h - margin + 16)
            << "\" text-anchor=\"middle\" font-size=\"12\">" << format_float(e) << "</text>\n";
    for (double d : {-1.0, 0.0, 1.0})
        svg << "<text class=\"tick\" x=\"" << format_float(margin - 6) << "\" y=\"" << py(d)
            << "\" text-anchor=\"end\" font-size=\"12\">" << format_float(d) << "</text>\n";
    svg << "<text class=\"label\" x=\"" << format_float(w / 2) << "\" y=\"" << format_float(h - 8)
        << "\" text-anchor=\"middle\" font-size=\"14\">error</text>\n";
    svg << "<text class=\"label\" x=\"14\" y=\"" << format_float(h / 2) << "\" text-anchor=\"middle\" font-size=\"14\""
        << " transform=\"rotate(-90 14 " << format_float(h / 2) << ")\">opportunity difference</text>\n";
    svg << "<line class=\"eo-axis\" x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\""
        << py(0) << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";

    std::string points;
    for (const auto& v : region.vertices)
        points += (points.empty() ? "" : " ") + point(v);
    if (region.degenerate) {
        svg << "<polyline class=\"region degenerate\" points=\"" << points
            << "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"3\"/>\n";
        svg << "<text class=\"annotation\" x=\"" << format_float(w - margin) << "\" y=\"" << format_float(margin - 12)
            << "\" text-anchor=\"end\" font-size=\"12\">degenerate</text>\n";
    } else {
        svg << "<polygon class=\"region\" points=\"" << points
            << "\" fill=\"lightsteelblue\" fill-opacity=\"0.6\" stroke=\"steelblue\"/>\n";
    }

    auto marker = [&](const char* cls, const MetricPoint& m, const char* color) {
        if (!contains(region, m, 1e-6))
            return;
        svg << "<circle class=\"" << cls << "\" cx=\"" << px(m.error) << "\" cy=\"" << py(m.opp_diff)
            << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    };
    const double ey = positive_rate(source);
    marker("bayes", metric_point(source, bayes(source)), "darkred");
    marker("constant", {ey, 0.0}, "black");
    marker("constant", {1.0 - ey, 0.0}, "black");
    const auto best = min_error_eo(source, 0.0);
    marker("eo-optimum", {best.error, best.opp_diff}, "darkgreen");
    svg << "</svg>\n";
    return svg.str();
}

} // namespace eoregion::io
