#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace eoregion;

TEST_CASE("generator output satisfies every constraint")
{
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        PlaneTrace trace;
        const auto inst = algorithm1(seed, &trace);
        REQUIRE(check_constraints(inst).all());
        CHECK(trace.a < trace.b);
        CHECK(trace.c > trace.a);
        CHECK(trace.c < trace.b);
        CHECK(inst.seed == seed);

        const auto& P = inst.P;
        const auto& Q = inst.Q;
        CHECK(std::abs(P[0] + P[1] + P[2] - 1.0) <= 1e-12);
        // The plane point with R1 switched off and R2 fully on loses to P.
        const std::array<double, 3> Z{0.0, P[1], P[2] * P[1] * Q[1] / (P[0] * Q[0] + P[1] * Q[1])};
        double lp = 0.0;
        double lz = 0.0;
        for (int i = 0; i < 3; ++i) {
            lp += P[i] * (2 * Q[i] - 1);
            lz += Z[i] * (2 * Q[i] - 1);
        }
        CHECK(lp > lz);
    }
}

TEST_CASE("generator is deterministic per seed")
{
    for (std::uint64_t seed : {0ull, 1ull, 42ull, 123456789ull, ~0ull}) {
        const auto a = algorithm1(seed);
        const auto b = algorithm1(seed);
        CHECK(a.P == b.P);
        CHECK(a.Q == b.Q);
    }
    CHECK(algorithm1(1).Q != algorithm1(2).Q);
}

TEST_CASE("constraint checker")
{
    PlaneInstance good{{0.132, 0.096, 0.772}, {0.274, 0.858, 0.891}, 0};
    CHECK(check_constraints(good).all());

    auto bad = good;
    bad.Q[0] = 0.6;
    const auto c = check_constraints(bad);
    CHECK_FALSE(c.c3);
    CHECK_FALSE(c.all());

    bad = good;
    bad.Q[2] = 0.7; // Q1 + Q3 < 1
    CHECK_FALSE(check_constraints(bad).c4);

    bad = good;
    bad.P = {0.5, 0.3, 0.2}; // mass of R3 too small
    CHECK_FALSE(check_constraints(bad).c5);

    bad = good;
    bad.P = {0.0, 0.228, 0.772};
    CHECK_FALSE(check_constraints(bad).c1);

    try {
        impossibility_source(bad);
        FAIL("expected ConstraintViolation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConstraintViolation);
    }
}

TEST_CASE("generated sources only admit trivial fair predictors")
{
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto src = impossibility_source(algorithm1(seed));
        CHECK(nontrivial_exists(src));
        const auto best = min_error_eo(src, 0.0);
        const double trivial = 1.0 - positive_rate(src);
        CHECK(std::abs(best.error - trivial) <= 1e-9);
        CHECK(std::abs(oracle_min_error_eo(src) - trivial) <= 1e-9);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(best.predictor[i] == doctest::Approx(src.p()[i]).epsilon(1e-9));
        const auto v = compatibility_verdict(src);
        CHECK_FALSE(v.compatible);
        CHECK(v.certificate == Certificate::AllEOTrivial);
    }
}

TEST_CASE("four-mass condition")
{
    const auto fx = paper_fixtures();
    CHECK_FALSE(check_sufficiency(fx.at("cloud")).holds);
    CHECK_FALSE(check_sufficiency(fx.at("ex-plane")).holds);
    const auto ne = check_sufficiency(fx.at("non-example"));
    CHECK(ne.holds);
    CHECK(ne.above[0] == doctest::Approx(0.267));
    CHECK(ne.above[1] == doctest::Approx(0.344));
    CHECK(ne.below[0] == doctest::Approx(0.141));
    CHECK(ne.below[1] == doctest::Approx(0.248));

    for (std::uint64_t seed = 0; seed < 200; ++seed)
        CHECK_FALSE(check_sufficiency(impossibility_source(algorithm1(seed))).holds);

    // Rows at exactly 1/2 count for neither side.
    const auto half = DataSource::from_rows({{"u", 0, 0.25, 0.5}, {"v", 1, 0.25, 0.5}, {"w", 0, 0.25, 0.9}, {"z", 1, 0.25, 0.1}});
    const auto r = check_sufficiency(half);
    CHECK(r.above[0] == doctest::Approx(0.25));
    CHECK(r.above[1] == 0.0);
    CHECK_FALSE(r.holds);
    CHECK_THROWS_AS(sufficiency_predictor(half), Error);
}

namespace {

void check_fair_witness(const DataSource& src)
{
    const auto f = sufficiency_predictor(src);
    CHECK(f.within_box(src, 1e-15));
    CHECK(std::abs(opp_diff(src, f)) <= 1e-12);
    CHECK(accuracy(src, f) > trivial_accuracy(src) + 1e-12);
}

} // namespace

TEST_CASE("sufficiency predictor is fair and beats constants")
{
    check_fair_witness(paper_fixtures().at("non-example"));

    std::mt19937_64 rng(31);
    int used = 0;
    for (int trial = 0; used < 1000; ++trial) {
        REQUIRE(trial < 100000);
        const auto src = eotest::random_source(rng, {.min_rows = 4, .max_rows = 30, .half_rate = 0.05, .binary_rate = 0.05});
        if (!check_sufficiency(src).holds)
            continue;
        ++used;
        check_fair_witness(src);
        CHECK(compatibility_verdict(src).compatible);
    }
}

TEST_CASE("sufficiency predictor branches")
{
    SUBCASE("symmetric groups get equal levels")
    {
        const auto src = DataSource::from_rows(
            {{"u", 0, 0.2, 0.8}, {"v", 0, 0.3, 0.3}, {"w", 1, 0.2, 0.8}, {"z", 1, 0.3, 0.3}});
        const auto q = sufficiency_predictor(src).pointwise(src);
        CHECK(q[0] == doctest::Approx(q[2]));
        CHECK(q[1] == doctest::Approx(q[3]));
        check_fair_witness(src);
    }
    SUBCASE("positive rate above one half")
    {
        const auto src = DataSource::from_rows(
            {{"u", 0, 0.3, 0.9}, {"v", 0, 0.1, 0.2}, {"w", 1, 0.4, 0.8}, {"z", 1, 0.2, 0.3}});
        REQUIRE(positive_rate(src) > 0.5);
        const auto q = sufficiency_predictor(src).pointwise(src);
        CHECK(q[0] == 1.0);
        CHECK(q[2] == 1.0);
        check_fair_witness(src);
    }
    SUBCASE("no positives below one half in group 1")
    {
        const auto src = DataSource::from_rows(
            {{"u", 0, 0.3, 0.9}, {"v", 0, 0.1, 0.2}, {"w", 1, 0.4, 0.8}, {"z", 1, 0.2, 0.0}});
        const auto q = sufficiency_predictor(src).pointwise(src);
        CHECK(q[1] == 1.0);
        CHECK(q[3] == 0.5);
        check_fair_witness(src);
    }
    SUBCASE("no positives below one half in group 0")
    {
        const auto src = DataSource::from_rows(
            {{"u", 0, 0.3, 0.9}, {"v", 0, 0.1, 0.0}, {"w", 1, 0.4, 0.8}, {"z", 1, 0.2, 0.2}});
        const auto q = sufficiency_predictor(src).pointwise(src);
        CHECK(q[1] == 0.5);
        CHECK(q[3] == 1.0);
        check_fair_witness(src);
    }
    SUBCASE("positive rate at most one half")
    {
        const auto src = DataSource::from_rows(
            {{"u", 0, 0.1, 0.9}, {"v", 0, 0.4, 0.2}, {"w", 1, 0.2, 0.7}, {"z", 1, 0.3, 0.1}});
        REQUIRE(positive_rate(src) <= 0.5);
        const auto q = sufficiency_predictor(src).pointwise(src);
        CHECK(q[1] == 0.0);
        CHECK(q[3] == 0.0);
        CHECK(std::max(q[0], q[2]) == doctest::Approx(1.0));
        check_fair_witness(src);
    }
}

TEST_CASE("embedded reference sources")
{
    const auto fx = paper_fixtures();
    REQUIRE(fx.size() == 3);
    CHECK(fx.at("cloud").size() == 4);
    CHECK(fx.at("non-example").size() == 4);
    const auto& plane = fx.at("ex-plane");
    REQUIRE(plane.size() == 3);
    CHECK(plane.p()[0] == doctest::Approx(0.132));
    CHECK(plane.q()[2] == doctest::Approx(0.891));
    CHECK(std::vector<int>(plane.a().begin(), plane.a().end()) == std::vector<int>{0, 0, 1});
}
