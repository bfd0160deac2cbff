#pragma once

// Constructive results: the randomized generator of sources where equal
// opportunity forces trivial accuracy, the four-mass sufficiency condition
// with its explicit fair predictor, and the embedded reference sources.

#include "eoregion/distribution.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>

namespace eoregion {

/// Three-region instance: R1 = (x1, a=0), R2 = (x2, a=0), R3 = (x3, a=1).
struct PlaneInstance {
    std::array<double, 3> P{};
    std::array<double, 3> Q{};
    std::uint64_t seed = 0;
};

/// Each flag is one of the five sufficient constraints:
///   c1  P, Q in (0,1)^3
///   c2  <P, 2Q - 1> > 0  (constant 1 beats constant 0)
///   c3  Q1 < 1/2 < Q2, Q3
///   c4  Q1 + Q3 >= 1
///   c5  P1 Q1 + P2 Q2 < P3 Q1
struct PlaneConstraints {
    bool c1 = false;
    bool c2 = false;
    bool c3 = false;
    bool c4 = false;
    bool c5 = false;

    bool all() const noexcept { return c1 && c2 && c3 && c4 && c5; }
};

PlaneConstraints check_constraints(const PlaneInstance& instance);

/// Intermediate bounds of the generator; c is drawn from (a, b).
struct PlaneTrace {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Deterministic per seed (mt19937_64, uniform draws on open intervals).
/// Every output satisfies all five constraints; a violation is a bug and is
/// raised as std::logic_error.
PlaneInstance algorithm1(std::uint64_t seed, PlaneTrace* trace = nullptr);

/// Wraps the instance as a three-row source. Throws ConstraintViolation
/// unless all five constraints hold.
DataSource impossibility_source(const PlaneInstance& instance);

/// P(Q > 1/2, A=a) and P(Q < 1/2, A=a); rows at exactly 1/2 count for neither.
struct SufficiencyReport {
    std::array<double, 2> above{}; // indexed by a
    std::array<double, 2> below{};
    bool holds = false;
};

SufficiencyReport check_sufficiency(const DataSource& source);

/// Equal-opportunity predictor with accuracy above tau, built region by
/// region. Throws SufficiencyNotMet when the four masses are not all
/// positive.
PredictorVec sufficiency_predictor(const DataSource& source);

/// "cloud", "non-example" and "ex-plane".
std::map<std::string, DataSource> paper_fixtures();

} // namespace eoregion
