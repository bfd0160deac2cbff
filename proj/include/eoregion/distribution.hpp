#pragma once

// Finite discrete data sources (pi, q) with a binary protected attribute, and
// soft predictors in vectorial form F_i = P(Yhat=1, X=x_i, A=a_i).

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace eoregion {

/// Tolerance on |sum(p) - 1| under which input masses are renormalized.
inline constexpr double kNormalizationTol = 1e-9;

/// One (x, a) outcome: its probability mass p and positive-label rate q.
struct SourceRow {
    std::string x;
    std::uint8_t a = 0;
    double p = 0.0;
    double q = 0.0;
};

struct LoadOptions {
    // Reject rows with p == 0 instead of dropping them.
    bool strict = false;
};

/// Checks every DataSource invariant on raw rows and throws eoregion::Error
/// on the first violation. Zero-mass rows are rejected here; dropping them is
/// the job of DataSource::from_rows.
void validate(std::span<const SourceRow> rows);

class DataSource {
public:
    /// Validates and renormalizes. Zero-mass rows are dropped (one message per
    /// dropped row is appended to `warnings` when given) unless options.strict.
    static DataSource from_rows(std::vector<SourceRow> rows, const LoadOptions& options = {},
                                std::vector<std::string>* warnings = nullptr);

    std::size_t size() const noexcept { return rows_.size(); }
    const std::vector<SourceRow>& rows() const noexcept { return rows_; }
    const SourceRow& row(std::size_t i) const { return rows_.at(i); }

    std::span<const double> p() const noexcept { return p_; }
    std::span<const double> q() const noexcept { return q_; }
    std::span<const std::uint8_t> a() const noexcept { return a_; }

    /// Every q_i is 0 or 1.
    bool is_deterministic() const noexcept;

private:
    DataSource() = default;

    std::vector<SourceRow> rows_;
    std::vector<double> p_;
    std::vector<double> q_;
    std::vector<std::uint8_t> a_;
};

/// One observation (x, a, y) used to estimate a DataSource empirically.
struct SampleRecord {
    std::string x;
    int a = 0;
    int y = 0;
};

/// Empirical (pi, q): groups by (x, a) in first-appearance order, no smoothing.
DataSource from_samples(std::span<const SampleRecord> records);

/// The three-region layout R1=(x1, a=0), R2=(x2, a=0), R3=(x3, a=1) with
/// constant q on each region. P must lie in the open simplex (sum within
/// 1e-12) and Q in (0,1)^3.
DataSource three_region_source(const std::array<double, 3>& P, const std::array<double, 3>& Q);

/// Soft predictor in vectorial form. Valid for a source when 0 <= f_i <= p_i.
class PredictorVec {
public:
    PredictorVec() = default;
    explicit PredictorVec(std::vector<double> f) : f_(std::move(f)) {}

    static PredictorVec zeros(std::size_t n) { return PredictorVec(std::vector<double>(n, 0.0)); }
    /// The constant-1 classifier, F = P.
    static PredictorVec full(const DataSource& source);
    /// F_i = p_i * qhat_i.
    static PredictorVec from_pointwise(const DataSource& source, std::span<const double> qhat);

    /// qhat_i = f_i / p_i.
    std::vector<double> pointwise(const DataSource& source) const;

    /// P - F, the complementary predictor 1 - qhat.
    PredictorVec complement(const DataSource& source) const;

    bool within_box(const DataSource& source, double tol = 0.0) const;
    bool is_deterministic(const DataSource& source, double tol = 0.0) const;

    std::size_t size() const noexcept { return f_.size(); }
    double operator[](std::size_t i) const { return f_[i]; }
    std::span<const double> values() const noexcept { return f_; }

private:
    std::vector<double> f_;
};

} // namespace eoregion
