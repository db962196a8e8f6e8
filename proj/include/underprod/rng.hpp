#pragma once

// Deterministic random number generation. Every sampler in the project
// draws through this wrapper instead of <random> distributions, whose
// output is implementation-defined; the transforms below give the same
// stream on every platform for a fixed seed.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace underprod {

// SplitMix64 step, used to mix (seed, stream) pairs into engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derives an independent substream seed from (seed, stream index).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= stream * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL;
    std::uint64_t b = splitmix64(s);
    return a ^ (b + stream);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    Rng(std::uint64_t seed, std::uint64_t stream)
        : engine_(substream_seed(seed, stream)) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform on (0, 1); never returns 0 or 1 exactly
    double u01() {
        const std::uint64_t x = engine_() >> 11;  // 53 bits
        return (static_cast<double>(x) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    // Box-Muller; one normal per call (the sine companion is discarded so
    // consumption of the underlying stream stays easy to reason about)
    double normal() {
        const double u = u01();
        const double v = u01();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925287 * v);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    double exponential(double rate) { return -std::log(u01()) / rate; }

    // Weibull with scale such that the hazard is h(t) = rate * shape * (rate*t)^(shape-1),
    // i.e. cumulative hazard H(t) = (rate*t)^shape. shape = 1 is exponential(rate).
    double weibull_from_cumhaz(double rate, double shape) {
        const double e = -std::log(u01());  // unit exponential = H(T)
        return std::pow(e, 1.0 / shape) / rate;
    }

    // Marsaglia-Tsang for shape >= 1, boost step for shape < 1.
    double gamma(double shape, double scale) {
        if (shape < 1.0) {
            const double u = u01();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = u01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

    std::uint64_t binomial(std::uint64_t n, double p) {
        std::uint64_t k = 0;
        for (std::uint64_t i = 0; i < n; ++i)
            if (u01() < p) ++k;
        return k;
    }

    // Knuth multiplication for small means; Ahrens-Dieter gamma split
    // (exact) for large ones.
    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean > 30.0) {
            const double m = std::floor(0.875 * mean);
            const double g = gamma(m, 1.0);
            if (g <= mean) return static_cast<std::uint64_t>(m) + poisson(mean - g);
            return binomial(static_cast<std::uint64_t>(m) - 1, mean / g);
        }
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = u01();
        while (prod > limit) {
            ++k;
            prod *= u01();
        }
        return k;
    }

    // NB2: mean mu, variance mu + mu^2/theta (gamma-Poisson mixture)
    std::uint64_t negative_binomial(double mu, double theta) {
        const double lambda = gamma(theta, mu / theta);
        return poisson(lambda);
    }

    // Pareto(shape, scale): support [scale, inf)
    double pareto(double shape, double scale) {
        return scale * std::pow(u01(), -1.0 / shape);
    }

    // index into weights, weights need not be normalised
    std::size_t categorical(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = u01() * total;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            u -= weights[i];
            if (u <= 0.0) return i;
        }
        return weights.empty() ? 0 : weights.size() - 1;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace underprod
