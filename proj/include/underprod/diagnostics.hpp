#pragma once

// MCMC convergence diagnostics: split R-hat and effective sample size
// over per-chain draw sequences (one parameter at a time).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace underprod {

namespace detail {

// splits each chain in half; drops the middle element of odd-length chains
inline std::vector<std::vector<double>> split_chains(
    const std::vector<std::vector<double>>& chains) {
    std::vector<std::vector<double>> out;
    for (const auto& c : chains) {
        const std::size_t half = c.size() / 2;
        if (half == 0) continue;
        out.emplace_back(c.begin(), c.begin() + half);
        out.emplace_back(c.end() - half, c.end());
    }
    return out;
}

inline double sequence_mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// biased autocovariance (divisor N) at the given lag
inline double autocov(const std::vector<double>& xs, double m, std::size_t lag) {
    const std::size_t n = xs.size();
    double s = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) s += (xs[i] - m) * (xs[i + lag] - m);
    return s / static_cast<double>(n);
}

}  // namespace detail

// Split R-hat (potential scale reduction). Returns 1.0 for degenerate
// inputs (constant sequences) so flat prior-only parameters do not trip
// convergence warnings.
inline double split_rhat(const std::vector<std::vector<double>>& chains) {
    const auto seqs = detail::split_chains(chains);
    const std::size_t m = seqs.size();
    if (m < 2) return 1.0;
    const std::size_t n = seqs.front().size();
    if (n < 2) return 1.0;

    std::vector<double> means(m);
    double w = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
        means[s] = detail::sequence_mean(seqs[s]);
        double v = 0.0;
        for (double x : seqs[s]) v += (x - means[s]) * (x - means[s]);
        w += v / static_cast<double>(n - 1);
    }
    w /= static_cast<double>(m);

    const double grand = detail::sequence_mean(means);
    double b = 0.0;
    for (double mu : means) b += (mu - grand) * (mu - grand);
    b *= static_cast<double>(n) / static_cast<double>(m - 1);

    if (w <= 0.0) return 1.0;
    const double var_plus =
        (static_cast<double>(n - 1) / static_cast<double>(n)) * w + b / static_cast<double>(n);
    return std::sqrt(var_plus / w);
}

// Effective sample size with Geyer's initial monotone positive sequence,
// computed on split chains. Capped at the actual draw count.
inline double effective_sample_size(const std::vector<std::vector<double>>& chains) {
    const auto seqs = detail::split_chains(chains);
    const std::size_t m = seqs.size();
    if (m == 0) return 0.0;
    const std::size_t n = seqs.front().size();
    if (n < 4) return static_cast<double>(m * n);

    std::vector<double> means(m);
    std::vector<double> acov0(m);
    for (std::size_t s = 0; s < m; ++s) {
        means[s] = detail::sequence_mean(seqs[s]);
        acov0[s] = detail::autocov(seqs[s], means[s], 0);
    }

    double mean_var = 0.0;
    for (double a : acov0) mean_var += a * static_cast<double>(n) / static_cast<double>(n - 1);
    mean_var /= static_cast<double>(m);

    const double grand = detail::sequence_mean(means);
    double b_over_n = 0.0;
    for (double mu : means) b_over_n += (mu - grand) * (mu - grand);
    b_over_n /= static_cast<double>(m > 1 ? m - 1 : 1);

    const double var_plus =
        mean_var * static_cast<double>(n - 1) / static_cast<double>(n) +
        (m > 1 ? b_over_n : 0.0);
    if (var_plus <= 0.0) return static_cast<double>(m * n);

    auto rho_at = [&](std::size_t t) {
        double acov_t = 0.0;
        for (std::size_t s = 0; s < m; ++s)
            acov_t += detail::autocov(seqs[s], means[s], t);
        acov_t /= static_cast<double>(m);
        return 1.0 - (mean_var - acov_t * static_cast<double>(n) /
                                      static_cast<double>(n - 1)) /
                         var_plus;
    };

    // Geyer: accumulate paired sums while positive, enforcing monotonicity
    double tau = 1.0;  // rho_0
    double prev_pair = std::numeric_limits<double>::infinity();
    for (std::size_t t = 1; t + 1 < n; t += 2) {
        const double pair = rho_at(t) + rho_at(t + 1);
        if (pair <= 0.0) break;
        const double capped = std::min(pair, prev_pair);
        tau += 2.0 * capped;
        prev_pair = capped;
    }
    const double total = static_cast<double>(m * n);
    return std::min(total, total / tau);
}

}  // namespace underprod
