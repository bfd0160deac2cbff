#include "eoregion/distribution.hpp"

#include "eoregion/error.hpp"
#include "eoregion/summation.hpp"

#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace eoregion {

namespace {

std::string describe(const SourceRow& row)
{
    return "row (x=\"" + row.x + "\", a=" + std::to_string(row.a) + ")";
}

void check_row(const SourceRow& row)
{
    if (row.a > 1)
        throw Error(ErrorCode::BadLabel, describe(row) + ": protected bit must be 0 or 1");
    if (!std::isfinite(row.p) || row.p <= 0.0)
        throw Error(ErrorCode::NonPositiveMass, describe(row) + ": mass must be positive");
    if (!std::isfinite(row.q) || row.q < 0.0 || row.q > 1.0)
        throw Error(ErrorCode::OutOfRangeQ, describe(row) + ": q must lie in [0, 1]");
}

void check_unique(std::span<const SourceRow> rows)
{
    std::set<std::pair<std::string, std::uint8_t>> seen;
    for (const auto& row : rows) {
        if (!seen.emplace(row.x, row.a).second)
            throw Error(ErrorCode::DuplicateRow, describe(row) + " appears more than once");
    }
}

double total_mass(std::span<const SourceRow> rows)
{
    CompensatedSum acc;
    for (const auto& row : rows)
        acc.add(row.p);
    return acc.value();
}

} // namespace

void validate(std::span<const SourceRow> rows)
{
    if (rows.empty())
        throw Error(ErrorCode::EmptyInput, "a data source needs at least one row");
    for (const auto& row : rows)
        check_row(row);
    check_unique(rows);
    const double mass = total_mass(rows);
    if (std::abs(mass - 1.0) > kNormalizationTol)
        throw Error(ErrorCode::MassNotNormalized,
                    "probability masses sum to " + std::to_string(mass) + ", not 1");
}

DataSource DataSource::from_rows(std::vector<SourceRow> rows, const LoadOptions& options,
                                 std::vector<std::string>* warnings)
{
    if (!options.strict) {
        std::vector<SourceRow> kept;
        kept.reserve(rows.size());
        for (auto& row : rows) {
            if (row.p == 0.0) {
                if (warnings)
                    warnings->push_back("dropped zero-mass " + describe(row));
                continue;
            }
            kept.push_back(std::move(row));
        }
        rows = std::move(kept);
    }
    validate(rows);

    const double mass = total_mass(rows);
    DataSource source;
    source.rows_ = std::move(rows);
    source.p_.reserve(source.rows_.size());
    source.q_.reserve(source.rows_.size());
    source.a_.reserve(source.rows_.size());
    for (auto& row : source.rows_) {
        if (mass != 1.0)
            row.p /= mass;
        source.p_.push_back(row.p);
        source.q_.push_back(row.q);
        source.a_.push_back(row.a);
    }
    return source;
}

bool DataSource::is_deterministic() const noexcept
{
    for (double q : q_) {
        if (q != 0.0 && q != 1.0)
            return false;
    }
    return true;
}

DataSource from_samples(std::span<const SampleRecord> records)
{
    if (records.empty())
        throw Error(ErrorCode::EmptyInput, "no samples");

    struct Cell {
        std::size_t count = 0;
        std::size_t positives = 0;
    };
    std::map<std::pair<std::string, int>, std::size_t> index;
    std::vector<std::pair<std::string, int>> order;
    std::vector<Cell> cells;
    for (const auto& rec : records) {
        if (rec.a != 0 && rec.a != 1)
            throw Error(ErrorCode::BadLabel, "sample a=" + std::to_string(rec.a) + " is not 0 or 1");
        if (rec.y != 0 && rec.y != 1)
            throw Error(ErrorCode::BadLabel, "sample y=" + std::to_string(rec.y) + " is not 0 or 1");
        auto key = std::make_pair(rec.x, rec.a);
        auto [it, inserted] = index.emplace(key, cells.size());
        if (inserted) {
            order.push_back(key);
            cells.emplace_back();
        }
        auto& cell = cells[it->second];
        ++cell.count;
        cell.positives += static_cast<std::size_t>(rec.y);
    }

    const double total = static_cast<double>(records.size());
    std::vector<SourceRow> rows;
    rows.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& cell = cells[i];
        rows.push_back({order[i].first, static_cast<std::uint8_t>(order[i].second),
                        static_cast<double>(cell.count) / total,
                        static_cast<double>(cell.positives) / static_cast<double>(cell.count)});
    }
    return DataSource::from_rows(std::move(rows), LoadOptions{.strict = true});
}

DataSource three_region_source(const std::array<double, 3>& P, const std::array<double, 3>& Q)
{
    CompensatedSum mass;
    for (int j = 0; j < 3; ++j) {
        if (!(P[j] > 0.0 && P[j] < 1.0))
            throw Error(ErrorCode::BadSimplexVector, "P_" + std::to_string(j + 1) + " not in (0, 1)");
        if (!(Q[j] > 0.0 && Q[j] < 1.0))
            throw Error(ErrorCode::BadSimplexVector, "Q_" + std::to_string(j + 1) + " not in (0, 1)");
        mass.add(P[j]);
    }
    if (std::abs(mass.value() - 1.0) > 1e-12)
        throw Error(ErrorCode::BadSimplexVector, "P does not sum to 1");

    std::vector<SourceRow> rows{
        {"x1", 0, P[0], Q[0]},
        {"x2", 0, P[1], Q[1]},
        {"x3", 1, P[2], Q[2]},
    };
    return DataSource::from_rows(std::move(rows), LoadOptions{.strict = true});
}

PredictorVec PredictorVec::full(const DataSource& source)
{
    return PredictorVec(std::vector<double>(source.p().begin(), source.p().end()));
}

PredictorVec PredictorVec::from_pointwise(const DataSource& source, std::span<const double> qhat)
{
    if (qhat.size() != source.size())
        throw Error(ErrorCode::DimensionMismatch, "pointwise predictor has the wrong length");
    std::vector<double> f(source.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(qhat[i] >= 0.0 && qhat[i] <= 1.0))
            throw Error(ErrorCode::InvalidArgument, "pointwise predictor value outside [0, 1]");
        f[i] = source.p()[i] * qhat[i];
    }
    return PredictorVec(std::move(f));
}

std::vector<double> PredictorVec::pointwise(const DataSource& source) const
{
    if (f_.size() != source.size())
        throw Error(ErrorCode::DimensionMismatch, "predictor length differs from source");
    std::vector<double> qhat(f_.size());
    for (std::size_t i = 0; i < f_.size(); ++i)
        qhat[i] = f_[i] / source.p()[i];
    return qhat;
}

PredictorVec PredictorVec::complement(const DataSource& source) const
{
    if (f_.size() != source.size())
        throw Error(ErrorCode::DimensionMismatch, "predictor length differs from source");
    std::vector<double> g(f_.size());
    for (std::size_t i = 0; i < f_.size(); ++i)
        g[i] = source.p()[i] - f_[i];
    return PredictorVec(std::move(g));
}

bool PredictorVec::within_box(const DataSource& source, double tol) const
{
    if (f_.size() != source.size())
        return false;
    for (std::size_t i = 0; i < f_.size(); ++i) {
        if (f_[i] < -tol || f_[i] > source.p()[i] + tol)
            return false;
    }
    return true;
}

bool PredictorVec::is_deterministic(const DataSource& source, double tol) const
{
    if (f_.size() != source.size())
        return false;
    for (std::size_t i = 0; i < f_.size(); ++i) {
        const double p = source.p()[i];
        if (std::abs(f_[i]) > tol && std::abs(f_[i] - p) > tol)
            return false;
    }
    return true;
}

} // namespace eoregion
