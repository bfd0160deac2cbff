#pragma once

// Exact-arithmetic evaluation of the core metrics, generic over the scalar
// type. Used with boost::rational to check reference values with no
// rounding at all.

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eoregion::exact {

using Rational = boost::rational<std::int64_t>;

struct RationalRow {
    std::string x;
    int a = 0;
    Rational p;
    Rational q;
};

inline double to_double(const Rational& r)
{
    return boost::rational_cast<double>(r);
}

/// The four-outcome source over (x, a) in {0,1}^2 whose EO-optimal
/// predictor is constant although a non-trivial one exists.
inline std::vector<RationalRow> cloud_rows()
{
    return {
        {"0", 0, Rational(3, 8), Rational(9, 20)},
        {"0", 1, Rational(2, 8), Rational(15, 20)},
        {"1", 0, Rational(1, 8), Rational(15, 20)},
        {"1", 1, Rational(2, 8), Rational(16, 20)},
    };
}

template <class T>
struct Source {
    std::vector<T> p;
    std::vector<T> q;
    std::vector<int> a;

    std::size_t size() const { return p.size(); }
};

inline Source<Rational> cloud_source()
{
    Source<Rational> s;
    for (const auto& row : cloud_rows()) {
        s.p.push_back(row.p);
        s.q.push_back(row.q);
        s.a.push_back(row.a);
    }
    return s;
}

template <class T>
T abs_value(const T& x)
{
    return x < T(0) ? -x : x;
}

template <class T>
T positive_rate(const Source<T>& s)
{
    T sum(0);
    for (std::size_t i = 0; i < s.size(); ++i)
        sum += s.p[i] * s.q[i];
    return sum;
}

template <class T>
T error(const Source<T>& s, const std::vector<T>& f)
{
    T sum = positive_rate(s);
    for (std::size_t i = 0; i < s.size(); ++i)
        sum += f[i] * (T(1) - T(2) * s.q[i]);
    return sum;
}

template <class T>
T opp_diff(const Source<T>& s, const std::vector<T>& f)
{
    T d[2] = {T(0), T(0)};
    T tp[2] = {T(0), T(0)};
    for (std::size_t i = 0; i < s.size(); ++i) {
        d[s.a[i]] += s.p[i] * s.q[i];
        tp[s.a[i]] += f[i] * s.q[i];
    }
    if (d[0] == T(0) || d[1] == T(0))
        throw std::domain_error("equal opportunity undefined");
    return tp[1] / d[1] - tp[0] / d[0];
}

template <class T>
std::vector<T> bayes(const Source<T>& s)
{
    std::vector<T> f(s.size(), T(0));
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.q[i] > T(1) / T(2))
            f[i] = s.p[i];
    return f;
}

template <class T>
T bayes_accuracy(const Source<T>& s)
{
    T sum = T(1) / T(2);
    for (std::size_t i = 0; i < s.size(); ++i)
        sum += s.p[i] * abs_value(s.q[i] - T(1) / T(2));
    return sum;
}

template <class T>
T trivial_accuracy(const Source<T>& s)
{
    const T ey = positive_rate(s);
    return ey > T(1) - ey ? ey : T(1) - ey;
}

template <class T>
T tau_star(const Source<T>& s)
{
    const T half = T(1) / T(2);
    T upper(0), lower(0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.q[i] >= half)
            upper += s.p[i];
        if (s.q[i] <= half)
            lower += s.p[i];
    }
    return upper > lower ? upper : lower;
}

/// Minimum error over equal-opportunity predictors by enumerating every
/// (fractional row, bound pattern) candidate; exact for exact T.
template <class T>
T min_eo_error(const Source<T>& s)
{
    const std::size_t n = s.size();
    if (n > 16)
        throw std::length_error("exact enumeration limited to 16 rows");
    T d[2] = {T(0), T(0)};
    for (std::size_t i = 0; i < n; ++i)
        d[s.a[i]] += s.p[i] * s.q[i];
    std::vector<T> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = s.a[i] == 1 ? s.q[i] / d[1] : -s.q[i] / d[0];

    std::optional<T> best;
    std::vector<T> f(n);
    for (std::size_t frac = 0; frac < n; ++frac) {
        if (w[frac] == T(0))
            continue;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
            T sum(0);
            for (std::size_t j = 0, bit = 0; j < n; ++j) {
                if (j == frac)
                    continue;
                f[j] = ((mask >> bit++) & 1u) ? s.p[j] : T(0);
                sum += f[j] * w[j];
            }
            const T t = -sum / (s.p[frac] * w[frac]);
            if (t < T(0) || t > T(1))
                continue;
            f[frac] = t * s.p[frac];
            const T e = error(s, f);
            if (!best || e < *best)
                best = e;
        }
    }
    if (!best)
        throw std::logic_error("no equal-opportunity predictor found");
    return *best;
}

} // namespace eoregion::exact
