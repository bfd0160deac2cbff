#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace eoregion {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept
{
    CompensatedSum acc;
    for (double x : xs)
        acc.add(x);
    return acc.value();
}

inline double compensated_dot(std::span<const double> a, std::span<const double> b) noexcept
{
    CompensatedSum acc;
    const std::size_t n = a.size() < b.size() ? a.size() : b.size();
    for (std::size_t i = 0; i < n; ++i)
        acc.add(a[i] * b[i]);
    return acc.value();
}

} // namespace eoregion
