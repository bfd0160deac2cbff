// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "cli_runner.hpp"
#include "test_support.hpp"

#include "eoregion/exact.hpp"
#include "eoregion/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace eoregion;

namespace {

class Tally {
public:
    void expect(bool ok, const std::string& what)
    {
        ++checks_;
        if (!ok && failures_.size() < 5)
            failures_.push_back(what);
        failed_ += !ok;
    }
    bool ok() const { return failed_ == 0; }
    std::string summary() const
    {
        std::ostringstream s;
        s << checks_ - failed_ << "/" << checks_ << " checks";
        for (const auto& f : failures_)
            s << "; " << f;
        return s.str();
    }

private:
    long checks_ = 0;
    long failed_ = 0;
    std::vector<std::string> failures_;
};

bool near(double a, double b, double tol)
{
    return std::abs(a - b) <= tol;
}

std::string fmt(double x)
{
    return io::format_float(x);
}

void cloud_example(Tally& t)
{
    using exact::Rational;
    const auto s = exact::cloud_source();
    const Rational zero(0);
    t.expect(exact::trivial_accuracy(s) == Rational(13, 20), "exact tau");
    t.expect(exact::bayes_accuracy(s) == Rational(11, 16), "exact bayes accuracy");
    t.expect(Rational(1) - exact::error(s, exact::bayes(s)) == Rational(11, 16), "exact bayes accuracy by error");
    t.expect(exact::opp_diff(s, exact::bayes(s)) == Rational(9, 14), "exact bayes opp_diff");
    t.expect(exact::min_eo_error(s) == Rational(7, 20), "exact min EO error");
    t.expect(exact::min_eo_error(s) == Rational(1) - exact::trivial_accuracy(s), "exact min EO = trivial error");
    t.expect(exact::tau_star(s) < Rational(1), "exact nontrivial predictors exist");

    const auto src = paper_fixtures().at("cloud");
    t.expect(near(trivial_accuracy(src), 0.65, 1e-12), "float tau");
    t.expect(near(bayes_accuracy(src), 0.6875, 1e-12), "float bayes accuracy");
    t.expect(near(opp_diff(src, bayes(src)), 9.0 / 14.0, 1e-12), "float bayes opp_diff");
    const auto v = compatibility_verdict(src);
    t.expect(near(v.min_eo_error, 0.35, 1e-12), "float min EO error");
    t.expect(near(oracle_min_error_eo(src), 0.35, 1e-12), "float oracle");
    t.expect(!v.compatible, "verdict incompatible");
    t.expect(nontrivial_exists(src), "nontrivial_exists");
}

void check_polygon(Tally& t, const DataSource& src, const std::string& label)
{
    const auto z = zonotope_region(src);
    const auto b = brute_force_region(src);
    t.expect(eotest::same_vertex_set(z.vertices, b.vertices, 1e-9), label + ": zonotope == hull");
    const std::size_t m = z.vertices.size();
    if (m >= 3) {
        for (std::size_t k = 0; k < m; ++k) {
            const auto& p0 = z.vertices[k];
            const auto& p1 = z.vertices[(k + 1) % m];
            const auto& p2 = z.vertices[(k + 2) % m];
            const double cross = (p1.error - p0.error) * (p2.opp_diff - p1.opp_diff) -
                                 (p1.opp_diff - p0.opp_diff) * (p2.error - p1.error);
            t.expect(cross > -1e-12, label + ": convex");
        }
    }
    for (std::size_t k = 0; k < m; ++k) {
        const auto& w = z.witnesses[k];
        t.expect(w.is_deterministic(src, 0.0), label + ": deterministic witness");
        t.expect(eotest::same_point(metric_point(src, w), z.vertices[k], 1e-9), label + ": witness maps to vertex");
    }
    std::vector<MetricPoint> mirrored;
    for (const auto& v : z.vertices)
        mirrored.push_back({1.0 - v.error, -v.opp_diff});
    t.expect(eotest::same_vertex_set(z.vertices, mirrored, 1e-9), label + ": point symmetry");
}

void polygon_suite(Tally& t)
{
    check_polygon(t, paper_fixtures().at("non-example"), "non-example");
    std::mt19937_64 rng(2002);
    for (int i = 0; i < 200; ++i)
        check_polygon(t, eotest::random_source(rng, {.min_rows = 2, .max_rows = 12, .half_rate = 0.05}),
                      "random#" + std::to_string(i));
}

void algorithm1_suite(Tally& t)
{
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        PlaneTrace trace;
        PlaneInstance inst;
        try {
            inst = algorithm1(seed, &trace);
        } catch (const std::logic_error& e) {
            t.expect(false, "seed " + std::to_string(seed) + ": " + e.what());
            continue;
        }
        t.expect(check_constraints(inst).all(), "seed " + std::to_string(seed) + ": constraints");
        t.expect(trace.a < trace.b, "seed " + std::to_string(seed) + ": a < b");
        if (seed >= 1000)
            continue;
        const auto src = impossibility_source(inst);
        const auto best = min_error_eo(src, 0.0);
        const double pq = inst.P[0] * inst.Q[0] + inst.P[1] * inst.Q[1] + inst.P[2] * inst.Q[2];
        t.expect(near(best.error, 1.0 - pq, 1e-9), "seed " + std::to_string(seed) + ": LP error");
        t.expect(near(best.error, 1.0 - trivial_accuracy(src), 1e-9), "seed " + std::to_string(seed) + ": trivial");
        t.expect(near(oracle_min_error_eo(src), 1.0 - pq, 1e-9), "seed " + std::to_string(seed) + ": oracle");
        for (std::size_t i = 0; i < 3; ++i)
            t.expect(near(best.predictor[i], src.p()[i], 1e-9), "seed " + std::to_string(seed) + ": F = P");
    }
}

std::string ex_plane_suite(Tally& t)
{
    const auto src = paper_fixtures().at("ex-plane");
    const double pq = positive_rate(src);
    const auto v = compatibility_verdict(src);
    t.expect(near(v.min_eo_error, 1.0 - pq, 1e-6), "LP min EO error = 1-<P,Q>");
    t.expect(near(oracle_min_error_eo(src), 1.0 - pq, 1e-6), "oracle min EO error = 1-<P,Q>");
    t.expect(!v.compatible, "incompatible");
    t.expect(near(v.tau_star, 0.868, 1e-12), "tau* = 0.868");

    // The printed three-decimal P carries total mass 0.999 and is not a distribution.
    const std::array<double, 3> printed_p{0.131, 0.096, 0.772};
    const std::array<double, 3> q{0.274, 0.858, 0.891};
    double printed = 1.0;
    for (int i = 0; i < 3; ++i)
        printed -= printed_p[i] * q[i];
    t.expect(near(printed, 0.193886, 1e-6), "printed-P figure");
    return "min_eo_error=" + fmt(v.min_eo_error) + " tau*=" + fmt(v.tau_star) + " (printed P, mass 0.999: " +
           fmt(printed) + ")";
}

void nta_suite(Tally& t)
{
    std::mt19937_64 rng(5005);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        auto src = eotest::random_source(rng, {.min_rows = 2, .max_rows = 10, .half_rate = 0.15, .binary_rate = 0.05});
        const int mode = i % 4;
        if (mode == 1 || mode == 2) {
            auto rows = src.rows();
            for (auto& r : rows) {
                const double u = unit(rng) < 0.2 ? 0.0 : unit(rng);
                r.q = mode == 1 ? 0.5 + 0.5 * u : 0.5 - 0.5 * u;
            }
            src = DataSource::from_rows(rows);
        }
        const bool by_bayes = bayes_accuracy(src) > trivial_accuracy(src) + 1e-12;
        const bool by_tau = tau_star(src) < 1.0 - 1e-12;
        const bool nte = nontrivial_exists(src);
        t.expect(nte == by_bayes && nte == by_tau, "source #" + std::to_string(i));
        if (mode == 1 || mode == 2)
            t.expect(!nte, "one-sided source #" + std::to_string(i));
    }
}

void sufficiency_suite(Tally& t)
{
    std::mt19937_64 rng(6006);
    int used = 0;
    for (int trial = 0; used < 1000 && trial < 200000; ++trial) {
        const auto src = eotest::random_source(rng, {.min_rows = 4, .max_rows = 30, .half_rate = 0.05, .binary_rate = 0.05});
        if (!check_sufficiency(src).holds)
            continue;
        ++used;
        const auto f = sufficiency_predictor(src);
        t.expect(std::abs(opp_diff(src, f)) <= 1e-12, "opp_diff = 0");
        t.expect(accuracy(src, f) > trivial_accuracy(src) + 1e-12, "accuracy > tau");
        t.expect(compatibility_verdict(src).compatible, "verdict concurs");
    }
    t.expect(used == 1000, "1000 qualifying sources");
}

void identity_suite(Tally& t)
{
    std::mt19937_64 rng(7007);
    for (int i = 0; i < 1000; ++i) {
        const auto src = eotest::random_source(rng, {.min_rows = 2, .max_rows = 30, .half_rate = 0.1, .binary_rate = 0.05});
        const auto f = eotest::random_predictor(rng, src);
        const auto g = f.complement(src);
        t.expect(near(error(src, g), 1.0 - error(src, f), 1e-12), "err(P-F) = 1-err(F)");
        t.expect(near(opp_diff(src, g), -opp_diff(src, f), 1e-12), "d(P-F) = -d(F)");

        double closed = 0.5;
        for (std::size_t k = 0; k < src.size(); ++k)
            closed += src.p()[k] * std::abs(src.q()[k] - 0.5);
        t.expect(near(bayes_accuracy(src), closed, 1e-12), "bayes closed form");
        t.expect(near(bayes_accuracy(src), 1.0 - error(src, bayes(src)), 1e-12), "bayes vs direct error");

        const double ey = positive_rate(src);
        const double by_constants =
            1.0 - std::min(error(src, PredictorVec::zeros(src.size())), error(src, PredictorVec::full(src)));
        t.expect(near(std::max(ey, 1.0 - ey), by_constants, 1e-12), "constant accuracy formulas");
        t.expect(near(trivial_accuracy(src), by_constants, 1e-12), "trivial_accuracy");

        t.expect(near(accuracy(src, bayes(src, Tie::Strict)), accuracy(src, bayes(src, Tie::Inclusive)), 1e-12),
                 "alt-Bayes accuracy");
    }
}

std::string cli_suite(Tally& t)
{
    const std::string fixtures = EOREGION_FIXTURES_DIR;
    const std::string golden = EOREGION_GOLDEN_DIR;
    for (const std::string name : {"cloud", "non-example", "ex-plane"}) {
        for (int run = 0; run < 2; ++run) {
            const auto svg = (eotest::scratch_dir() / (name + ".svg")).string();
            const auto js = (eotest::scratch_dir() / (name + ".json")).string();
            const auto r = eotest::run_cli("region " + fixtures + "/" + name + ".json --svg " + svg + " --json " + js);
            t.expect(r.exit_code == 0, name + ": exit 0");
            t.expect(eotest::slurp(svg) == eotest::slurp(golden + "/" + name + ".svg"), name + ": svg golden");
            t.expect(eotest::slurp(js) == eotest::slurp(golden + "/" + name + ".json"), name + ": json golden");
        }
    }

    const auto write = [](const std::string& file, const std::string& text) {
        const auto p = eotest::scratch_dir() / file;
        std::ofstream(p) << text;
        return p.string();
    };
    const auto expect_error = [&](const std::string& args, int code, const std::string& kind) {
        const auto r = eotest::run_cli(args);
        t.expect(r.exit_code == code, args + ": exit " + std::to_string(code));
        try {
            t.expect(nlohmann::json::parse(r.err).at("error") == kind, args + ": error " + kind);
        } catch (const std::exception&) {
            t.expect(false, args + ": error JSON on stderr");
        }
    };
    t.expect(eotest::run_cli("analyze " + fixtures + "/cloud.json").exit_code == 0, "analyze exit 0");
    expect_error("analyze " + write("empty.json", ""), 1, "Parse");
    expect_error("analyze /nonexistent/in.json", 1, "Io");
    expect_error("analyze " + write("neg.json", R"({"rows":[{"x":"u","a":0,"p":-1,"q":0.5}]})"), 1, "NonPositiveMass");
    const auto undefined =
        write("undefined.json", R"({"rows":[{"x":"u","a":0,"p":0.5,"q":0.7},{"x":"v","a":1,"p":0.5,"q":0}]})");
    expect_error("analyze " + undefined, 2, "UndefinedEO");
    expect_error("optimal " + undefined + " --eps 0", 2, "UndefinedEO");
    return "3 fixtures x (svg, json) x 2 runs";
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        std::function<std::string(Tally&)> run;
    };
    const auto plain = [](void (*fn)(Tally&)) {
        return [fn](Tally& t) {
            fn(t);
            return std::string();
        };
    };
    const std::vector<Criterion> criteria{
        {1, "cloud example (exact rationals and float)", plain(cloud_example)},
        {2, "region polygon suite", plain(polygon_suite)},
        {3, "three-region generator suite", plain(algorithm1_suite)},
        {4, "ex-plane fixture", ex_plane_suite},
        {5, "non-trivial accuracy equivalence suite", plain(nta_suite)},
        {6, "four-mass sufficiency suite", plain(sufficiency_suite)},
        {7, "metric identity suite", plain(identity_suite)},
        {8, "CLI golden files and exit codes", cli_suite},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Tally t;
        std::string note;
        try {
            note = c.run(t);
        } catch (const std::exception& e) {
            t.expect(false, std::string("exception: ") + e.what());
        }
        failed += !t.ok();
        std::printf("%s criterion %d: %s (%s)%s%s\n", t.ok() ? "PASS" : "FAIL", c.id, c.name, t.summary().c_str(),
                    note.empty() ? "" : " ", note.c_str());
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
