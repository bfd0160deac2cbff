// eoregion: feasible (error, opportunity-difference) regions, equal-opportunity
// optimal predictors and impossibility instances from the command line.
//
// Exit codes: 0 success, 1 input or validation failure, 2 equal opportunity
// undefined for the input source.

#include "eoregion/eoregion.hpp"
#include "eoregion/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using eoregion::io::json;

namespace {

struct InputArgs {
    std::string path;
    bool samples = false;
    bool strict = false;
};

void add_input(CLI::App* cmd, InputArgs& in)
{
    cmd->add_option("input", in.path, "distribution JSON (or sample CSV with --samples)")->required();
    cmd->add_flag("--samples", in.samples, "input is a CSV of x,a,y samples");
    cmd->add_flag("--strict", in.strict, "reject zero-mass rows instead of dropping them");
}

eoregion::DataSource load(const InputArgs& in)
{
    if (in.samples) {
        const auto records = eoregion::io::read_samples(in.path);
        return eoregion::from_samples(records);
    }
    std::vector<std::string> warnings;
    auto source = eoregion::io::read_distribution(in.path, eoregion::LoadOptions{.strict = in.strict}, &warnings);
    for (const auto& w : warnings)
        std::cerr << json{{"warning", w}}.dump() << "\n";
    return source;
}

json qhat_json(const eoregion::PredictorVec& f, const eoregion::DataSource& source)
{
    json out = json::array();
    for (double v : f.pointwise(source))
        out.push_back(eoregion::io::round9(v));
    return out;
}

unsigned thread_count(std::optional<unsigned> flag)
{
    if (flag)
        return *flag;
    if (const char* env = std::getenv("EO_REGION_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return 1;
}

int cmd_analyze(const InputArgs& in)
{
    const auto source = load(in);
    const auto verdict = eoregion::compatibility_verdict(source);
    const double bayes_opp = eoregion::opp_diff(source, eoregion::bayes(source));
    using eoregion::io::round9;
    const json report = {
        {"tau", round9(verdict.trivial_accuracy)},
        {"tau_star", round9(verdict.tau_star)},
        {"bayes_accuracy", round9(verdict.bayes_accuracy)},
        {"bayes_opp_diff", round9(bayes_opp)},
        {"min_eo_error", round9(verdict.min_eo_error)},
        {"compatible", verdict.compatible},
        {"certificate", std::string(eoregion::to_string(verdict.certificate))},
    };
    std::cout << report.dump(2) << "\n";
    return 0;
}

struct RegionArgs {
    std::string svg, csv, json_path;
    bool verify = false;
};

int cmd_region(const InputArgs& in, const RegionArgs& args, unsigned threads)
{
    const auto source = load(in);
    const auto region = eoregion::zonotope_region(source);
    if (args.verify) {
        const auto brute = eoregion::brute_force_region(source, threads);
        bool same = brute.vertices.size() == region.vertices.size();
        for (std::size_t k = 0; same && k < region.vertices.size(); ++k)
            same = std::abs(brute.vertices[k].error - region.vertices[k].error) <= eoregion::kCompareTol &&
                   std::abs(brute.vertices[k].opp_diff - region.vertices[k].opp_diff) <= eoregion::kCompareTol;
        if (!same)
            throw std::logic_error("zonotope and brute-force regions disagree");
    }
    const auto doc = eoregion::io::region_to_json(region);
    if (!args.svg.empty())
        eoregion::io::write_file(args.svg, eoregion::io::render_svg(source, region));
    if (!args.csv.empty())
        eoregion::io::write_file(args.csv, eoregion::io::region_to_csv(region));
    if (!args.json_path.empty())
        eoregion::io::write_file(args.json_path, doc.dump(2) + "\n");
    if (args.svg.empty() && args.csv.empty() && args.json_path.empty())
        std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_generate(std::uint64_t seed, const std::string& out, std::string sidecar)
{
    const auto instance = eoregion::algorithm1(seed);
    const auto source = eoregion::impossibility_source(instance);
    if (sidecar.empty()) {
        fs::path p(out);
        sidecar = (p.parent_path() / (p.stem().string() + ".sidecar.json")).string();
    }
    eoregion::io::write_file(out, eoregion::io::distribution_to_json(source).dump(2) + "\n");
    eoregion::io::write_file(sidecar, eoregion::io::plane_sidecar(instance).dump(2) + "\n");

    const auto verdict = eoregion::compatibility_verdict(source);
    using eoregion::io::round9;
    const json summary = {
        {"seed", seed},
        {"compatible", verdict.compatible},
        {"certificate", std::string(eoregion::to_string(verdict.certificate))},
        {"min_eo_error", round9(verdict.min_eo_error)},
        {"trivial_error", round9(1.0 - verdict.trivial_accuracy)},
        {"bayes_accuracy", round9(verdict.bayes_accuracy)},
    };
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_optimal(const InputArgs& in, double eps, bool verify, unsigned threads)
{
    const auto source = load(in);
    const auto best = eoregion::min_error_eo(source, eps);
    json report = {
        {"eps", eps},
        {"error", eoregion::io::round9(best.error)},
        {"opp_diff", eoregion::io::round9(best.opp_diff)},
        {"qhat", qhat_json(best.predictor, source)},
    };
    if (verify) {
        if (eps != 0.0)
            throw eoregion::Error(eoregion::ErrorCode::InvalidArgument, "--verify requires --eps 0");
        const double oracle = eoregion::oracle_min_error_eo(source, threads);
        report["oracle_error"] = eoregion::io::round9(oracle);
        if (std::abs(oracle - best.error) > eoregion::kCompareTol)
            throw std::logic_error("sweep optimum disagrees with exhaustive oracle");
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_check(const InputArgs& in)
{
    const auto source = load(in);
    const auto report = eoregion::check_sufficiency(source);
    using eoregion::io::round9;
    json out = {
        {"sufficiency",
         {{"above", {round9(report.above[0]), round9(report.above[1])}},
          {"below", {round9(report.below[0]), round9(report.below[1])}},
          {"holds", report.holds}}},
        {"tau", round9(eoregion::trivial_accuracy(source))},
        {"tau_star", round9(eoregion::tau_star(source))},
        {"nontrivial_exists", eoregion::nontrivial_exists(source)},
    };
    if (report.holds) {
        const auto f = eoregion::sufficiency_predictor(source);
        out["witness"] = {
            {"qhat", qhat_json(f, source)},
            {"accuracy", round9(eoregion::accuracy(source, f))},
            {"opp_diff", round9(eoregion::opp_diff(source, f))},
        };
    } else {
        out["witness"] = nullptr;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_ingest(const std::string& samples, const std::string& out)
{
    const auto source = eoregion::from_samples(eoregion::io::read_samples(samples));
    eoregion::io::write_file(out, eoregion::io::distribution_to_json(source).dump(2) + "\n");
    std::cout << json{{"rows", source.size()}, {"out", out}}.dump(2) << "\n";
    return 0;
}

int fail(int code, std::string_view kind, const std::string& message)
{
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Error vs opportunity-difference analysis for discrete data sources"};
    app.require_subcommand(1);
    std::optional<unsigned> threads;
    app.add_option("--threads", threads, "worker threads for brute-force checks (env EO_REGION_THREADS)");

    InputArgs analyze_in;
    auto* analyze = app.add_subcommand("analyze", "metrics and compatibility verdict as JSON");
    add_input(analyze, analyze_in);

    InputArgs region_in;
    RegionArgs region_args;
    auto* region = app.add_subcommand("region", "feasible region polygon as SVG, CSV or JSON");
    add_input(region, region_in);
    region->add_option("--svg", region_args.svg, "write the SVG figure here");
    region->add_option("--csv", region_args.csv, "write vertices as CSV here");
    region->add_option("--json", region_args.json_path, "write the polygon JSON here");
    region->add_flag("--verify", region_args.verify, "cross-check against the brute-force hull");

    std::uint64_t seed = 0;
    std::string gen_out, gen_sidecar;
    auto* generate = app.add_subcommand("generate", "random source where equal opportunity forces trivial accuracy");
    generate->add_option("--seed", seed, "generator seed")->required();
    generate->add_option("--out", gen_out, "distribution JSON output path")->required();
    generate->add_option("--sidecar", gen_sidecar, "constraint sidecar path (default <out stem>.sidecar.json)");

    InputArgs optimal_in;
    double eps = 0.0;
    bool optimal_verify = false;
    auto* optimal = app.add_subcommand("optimal", "most accurate predictor with |opp_diff| <= eps");
    add_input(optimal, optimal_in);
    optimal->add_option("--eps", eps, "bound on |opportunity difference|, in [0, 2]")->required();
    optimal->add_flag("--verify", optimal_verify, "cross-check against the exhaustive oracle (eps 0 only)");

    InputArgs check_in;
    auto* check = app.add_subcommand("check", "four-mass sufficiency condition and constructive witness");
    add_input(check, check_in);

    std::string ingest_in, ingest_out;
    auto* ingest = app.add_subcommand("ingest", "estimate a distribution from x,a,y samples");
    ingest->add_option("samples", ingest_in, "sample CSV")->required();
    ingest->add_option("--out", ingest_out, "distribution JSON output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const unsigned n_threads = thread_count(threads);
        if (*analyze)
            return cmd_analyze(analyze_in);
        if (*region)
            return cmd_region(region_in, region_args, n_threads);
        if (*generate)
            return cmd_generate(seed, gen_out, gen_sidecar);
        if (*optimal)
            return cmd_optimal(optimal_in, eps, optimal_verify, n_threads);
        if (*check)
            return cmd_check(check_in);
        if (*ingest)
            return cmd_ingest(ingest_in, ingest_out);
    } catch (const eoregion::UndefinedEOError& e) {
        return fail(2, eoregion::to_string(e.code()), e.what());
    } catch (const eoregion::Error& e) {
        return fail(1, eoregion::to_string(e.code()), e.what());
    } catch (const std::exception& e) {
        return fail(1, "Internal", e.what());
    }
    return 1;
}
