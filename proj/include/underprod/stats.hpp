#pragma once

// Small numeric helpers shared across the analysis modules.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

namespace underprod {

// two-sided 95% normal critical value
constexpr double kZ975 = 1.959963984540054;

inline double mean(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

inline double sample_variance(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(n - 1);
}

// Empirical quantile with linear interpolation between order statistics
// (R type 7). p in [0, 1].
inline double quantile(std::vector<double> xs, double p) {
    assert(!xs.empty());
    std::sort(xs.begin(), xs.end());
    if (p <= 0.0) return xs.front();
    if (p >= 1.0) return xs.back();
    const double h = p * static_cast<double>(xs.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= xs.size()) return xs.back();
    return xs[lo] + frac * (xs[lo + 1] - xs[lo]);
}

struct QuantileSet {
    double q025, q25, median, q75, q975;
};

inline QuantileSet summary_quantiles(const std::vector<double>& xs) {
    std::vector<double> sorted(xs);
    std::sort(sorted.begin(), sorted.end());
    auto at = [&](double p) {
        const double h = p * static_cast<double>(sorted.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(h);
        const double frac = h - static_cast<double>(lo);
        if (lo + 1 >= sorted.size()) return sorted.back();
        return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
    };
    return {at(0.025), at(0.25), at(0.5), at(0.75), at(0.975)};
}

// digamma via recurrence + asymptotic series
inline double digamma(double x) {
    double result = 0.0;
    while (x < 6.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
    return result;
}

inline double trigamma(double x) {
    double result = 0.0;
    while (x < 6.0) {
        result += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += inv + 0.5 * inv2 +
              inv2 * inv * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 / 42.0));
    return result;
}

// Shortest decimal string that parses back to exactly the same double.
// Used by every CSV/JSON emitter so persisted values round-trip.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

}  // namespace underprod
