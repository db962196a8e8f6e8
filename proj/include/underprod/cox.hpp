#pragma once

// Cox proportional-hazards partial likelihood with package-level random
// effects entering the linear predictor as log-frailties:
//
//   hazard of row i  ~  baseline(t) * exp(beta . x_i + q[package_i])
//
// The baseline is never estimated; the partial likelihood eliminates it.
// Efron (default) and Breslow tie corrections are supported. The
// evaluator below is the value-only fast path used by the MCMC sampler;
// cox_log_partial_likelihood adds the exact analytic gradient.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "underprod/survival_data.hpp"

namespace underprod {

enum class TieMethod { Efron, Breslow };

struct CoxParams {
    std::vector<double> beta;  // one entry per severity covariate
    std::vector<double> q;     // one entry per package
    double sigma = 1.0;        // random-effect scale

    static CoxParams zeros(const SurvivalDataset& ds) {
        CoxParams p;
        p.beta.assign(ds.covariate_count, 0.0);
        p.q.assign(ds.package_count(), 0.0);
        p.sigma = 1.0;
        return p;
    }
};

namespace detail {

// rows grouped by tied duration; [begin, end) in sorted-row order
struct TieGroup {
    std::uint32_t begin;
    std::uint32_t end;
    std::uint32_t n_events;
};

inline std::vector<TieGroup> build_tie_groups(const SurvivalDataset& ds) {
    std::vector<TieGroup> groups;
    const std::size_t n = ds.row_count();
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        std::uint32_t events = 0;
        while (j < n && ds.duration[j] == ds.duration[i]) {
            events += ds.event[j];
            ++j;
        }
        groups.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                          events});
        i = j;
    }
    return groups;
}

}  // namespace detail

// Value-only partial-likelihood evaluator with per-coordinate proposal
// support. Coordinates are laid out [beta..., q...]; sigma never enters
// the likelihood. All state is derived from the dataset once; proposals
// touch only the rows a coordinate affects and are exactly reversible.
class CoxLikelihood {
public:
    CoxLikelihood(const SurvivalDataset& ds, TieMethod ties)
        : ds_(&ds),
          ties_(ties),
          groups_(detail::build_tie_groups(ds)),
          lp_(ds.row_count(), 0.0),
          exp_lp_(ds.row_count(), 1.0) {
        const std::size_t p = ds.covariate_count;
        rows_for_coord_.resize(p + ds.package_count());
        cov_value_.resize(ds.row_count());
        cov_index_.resize(ds.row_count());
        for (std::size_t i = 0; i < ds.row_count(); ++i) {
            const auto [idx, val] = ds.covariate(i);
            cov_index_[i] = idx;
            cov_value_[i] = val;
            if (idx >= 0 && val != 0.0)
                rows_for_coord_[static_cast<std::size_t>(idx)].push_back(
                    static_cast<std::uint32_t>(i));
            rows_for_coord_[p + ds.package_index[i]].push_back(
                static_cast<std::uint32_t>(i));
        }
        value_ = compute_value();
    }

    std::size_t coord_count() const {
        return ds_->covariate_count + ds_->package_count();
    }

    const std::vector<std::uint32_t>& rows_for(std::size_t coord) const {
        return rows_for_coord_[coord];
    }

    // resets the linear predictor from explicit parameters
    void set_params(const CoxParams& params) {
        for (std::size_t i = 0; i < ds_->row_count(); ++i) {
            double lp = params.q[ds_->package_index[i]];
            const int idx = cov_index_[i];
            if (idx >= 0) lp += params.beta[static_cast<std::size_t>(idx)] * cov_value_[i];
            lp_[i] = lp;
            exp_lp_[i] = std::exp(lp);
        }
        value_ = compute_value();
    }

    double value() const { return value_; }

    // Applies delta to a single coordinate and returns the new value.
    // Call keep() to accept or revert() to restore the previous state.
    double propose(std::size_t coord, double delta) {
        pending_rows_ = &rows_for_coord_[coord];
        stash_and_shift(delta, coord);
        proposed_value_ = pending_rows_->empty() ? value_ : compute_value();
        return proposed_value_;
    }

    // Joint shift of all beta coordinates (block update).
    double propose_beta_block(const std::vector<double>& deltas) {
        pending_block_rows_.clear();
        for (std::size_t i = 0; i < ds_->row_count(); ++i) {
            const int idx = cov_index_[i];
            if (idx < 0) continue;
            const double d = deltas[static_cast<std::size_t>(idx)] * cov_value_[i];
            if (d == 0.0) continue;
            pending_block_rows_.push_back({static_cast<std::uint32_t>(i), d});
        }
        pending_rows_ = nullptr;
        stash_block();
        proposed_value_ = pending_block_rows_.empty() ? value_ : compute_value();
        return proposed_value_;
    }

    void keep() { value_ = proposed_value_; }

    void revert() {
        if (pending_rows_) {
            for (std::size_t k = 0; k < pending_rows_->size(); ++k) {
                const std::uint32_t i = (*pending_rows_)[k];
                lp_[i] = stash_lp_[k];
                exp_lp_[i] = stash_exp_[k];
            }
        } else {
            for (std::size_t k = 0; k < pending_block_rows_.size(); ++k) {
                const std::uint32_t i = pending_block_rows_[k].first;
                lp_[i] = stash_lp_[k];
                exp_lp_[i] = stash_exp_[k];
            }
        }
    }

    // full pass over the risk sets; -inf when the linear predictor has
    // diverged (caller treats that as a rejected proposal)
    double compute_value() const {
        double value = 0.0;
        double risk_sum = 0.0;
        for (const auto& g : groups_) {
            double tied_exp = 0.0;
            double tied_lp = 0.0;
            for (std::uint32_t i = g.begin; i < g.end; ++i) {
                risk_sum += exp_lp_[i];
                if (ds_->event[i]) {
                    tied_exp += exp_lp_[i];
                    tied_lp += lp_[i];
                }
            }
            if (g.n_events == 0) continue;
            value += tied_lp;
            if (ties_ == TieMethod::Breslow) {
                value -= static_cast<double>(g.n_events) * std::log(risk_sum);
            } else {
                const double d = static_cast<double>(g.n_events);
                for (std::uint32_t l = 0; l < g.n_events; ++l)
                    value -= std::log(risk_sum - (static_cast<double>(l) / d) * tied_exp);
            }
        }
        if (!std::isfinite(value)) return -std::numeric_limits<double>::infinity();
        return value;
    }

    const SurvivalDataset& dataset() const { return *ds_; }
    TieMethod ties() const { return ties_; }
    const std::vector<detail::TieGroup>& groups() const { return groups_; }
    const std::vector<double>& lp() const { return lp_; }
    const std::vector<double>& exp_lp() const { return exp_lp_; }
    int cov_index(std::size_t row) const { return cov_index_[row]; }
    double cov_value(std::size_t row) const { return cov_value_[row]; }

private:
    void stash_and_shift(double delta, std::size_t coord) {
        const auto& rows = rows_for_coord_[coord];
        stash_lp_.resize(rows.size());
        stash_exp_.resize(rows.size());
        const bool is_beta = coord < ds_->covariate_count;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const std::uint32_t i = rows[k];
            stash_lp_[k] = lp_[i];
            stash_exp_[k] = exp_lp_[i];
            const double d = is_beta ? delta * cov_value_[i] : delta;
            lp_[i] += d;
            exp_lp_[i] = std::exp(lp_[i]);
        }
    }

    void stash_block() {
        stash_lp_.resize(pending_block_rows_.size());
        stash_exp_.resize(pending_block_rows_.size());
        for (std::size_t k = 0; k < pending_block_rows_.size(); ++k) {
            const auto [i, d] = pending_block_rows_[k];
            stash_lp_[k] = lp_[i];
            stash_exp_[k] = exp_lp_[i];
            lp_[i] += d;
            exp_lp_[i] = std::exp(lp_[i]);
        }
    }

    const SurvivalDataset* ds_;
    TieMethod ties_;
    std::vector<detail::TieGroup> groups_;
    std::vector<double> lp_;
    std::vector<double> exp_lp_;
    std::vector<int> cov_index_;
    std::vector<double> cov_value_;
    std::vector<std::vector<std::uint32_t>> rows_for_coord_;

    double value_ = 0.0;
    double proposed_value_ = 0.0;
    const std::vector<std::uint32_t>* pending_rows_ = nullptr;
    std::vector<std::pair<std::uint32_t, double>> pending_block_rows_;
    std::vector<double> stash_lp_;
    std::vector<double> stash_exp_;
};

struct CoxValueGradient {
    double value = 0.0;
    std::vector<double> grad_beta;
    std::vector<double> grad_q;
};

// Log partial likelihood and its exact gradient with respect to beta and
// q jointly. Throws std::domain_error when the linear predictor is not
// finite (divergent parameters).
inline CoxValueGradient cox_log_partial_likelihood(const CoxParams& params,
                                                   const SurvivalDataset& ds,
                                                   TieMethod ties = TieMethod::Efron) {
    const std::size_t p = ds.covariate_count;
    const std::size_t J = ds.package_count();
    if (params.beta.size() != p) throw std::invalid_argument("beta size mismatch");
    if (params.q.size() != J) throw std::invalid_argument("q size mismatch");

    const std::size_t n = ds.row_count();
    std::vector<double> lp(n), elp(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = params.q[ds.package_index[i]];
        const auto [idx, val] = ds.covariate(i);
        if (idx >= 0) v += params.beta[static_cast<std::size_t>(idx)] * val;
        if (!std::isfinite(v)) throw std::domain_error("non-finite linear predictor");
        lp[i] = v;
        elp[i] = std::exp(v);
        if (!std::isfinite(elp[i]))
            throw std::domain_error("linear predictor overflow in exp()");
    }

    CoxValueGradient out;
    out.grad_beta.assign(p, 0.0);
    out.grad_q.assign(J, 0.0);

    // running risk-set sums: S (scalar), Z (per coordinate)
    double risk_sum = 0.0;
    std::vector<double> z_beta(p, 0.0), z_q(J, 0.0);

    const auto groups = detail::build_tie_groups(ds);
    // sparse per-group sums over tied events
    std::vector<std::pair<std::size_t, double>> w_beta, w_q;
    for (const auto& g : groups) {
        double tied_exp = 0.0, tied_lp = 0.0;
        w_beta.clear();
        w_q.clear();
        for (std::uint32_t i = g.begin; i < g.end; ++i) {
            risk_sum += elp[i];
            const auto [idx, val] = ds.covariate(i);
            if (idx >= 0) z_beta[static_cast<std::size_t>(idx)] += elp[i] * val;
            z_q[ds.package_index[i]] += elp[i];
            if (ds.event[i]) {
                tied_exp += elp[i];
                tied_lp += lp[i];
                if (idx >= 0) {
                    w_beta.emplace_back(static_cast<std::size_t>(idx), elp[i] * val);
                    out.grad_beta[static_cast<std::size_t>(idx)] += val;
                }
                w_q.emplace_back(ds.package_index[i], elp[i]);
                out.grad_q[ds.package_index[i]] += 1.0;
            }
        }
        if (g.n_events == 0) continue;
        out.value += tied_lp;

        // denominators: Breslow uses S alone; Efron peels off l/d of the
        // tied mass. coeff_z = sum_l 1/denom_l, coeff_w = sum_l (l/d)/denom_l
        double coeff_z = 0.0, coeff_w = 0.0;
        if (ties == TieMethod::Breslow) {
            out.value -= static_cast<double>(g.n_events) * std::log(risk_sum);
            coeff_z = static_cast<double>(g.n_events) / risk_sum;
        } else {
            const double d = static_cast<double>(g.n_events);
            for (std::uint32_t l = 0; l < g.n_events; ++l) {
                const double frac = static_cast<double>(l) / d;
                const double denom = risk_sum - frac * tied_exp;
                out.value -= std::log(denom);
                coeff_z += 1.0 / denom;
                coeff_w += frac / denom;
            }
        }
        for (std::size_t k = 0; k < p; ++k) out.grad_beta[k] -= coeff_z * z_beta[k];
        for (std::size_t j = 0; j < J; ++j) out.grad_q[j] -= coeff_z * z_q[j];
        for (const auto& [k, v] : w_beta) out.grad_beta[k] += coeff_w * v;
        for (const auto& [j, v] : w_q) out.grad_q[j] += coeff_w * v;
    }
    return out;
}

// Weakly-informative default priors; all scales configurable.
struct Priors {
    double beta_sd = 5.0;          // beta_p ~ Normal(0, beta_sd)
    double sigma_scale = 1.0;      // sigma ~ HalfNormal(sigma_scale)
};

inline double log_normal_pdf(double x, double sd) {
    return -0.91893853320467274178 - std::log(sd) - 0.5 * (x / sd) * (x / sd);
}

inline double log_half_normal_pdf(double x, double scale) {
    // support x > 0
    return 0.69314718055994530942 + log_normal_pdf(x, scale);
}

// Log posterior density over (beta, q, log sigma): partial likelihood +
// hierarchical prior on q + priors on beta and sigma + the log-sigma
// Jacobian. sigma must be positive.
inline double log_posterior(const CoxParams& params, const SurvivalDataset& ds,
                            const Priors& priors = {},
                            TieMethod ties = TieMethod::Efron) {
    if (!(params.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    double lp = cox_log_partial_likelihood(params, ds, ties).value;
    for (double b : params.beta) lp += log_normal_pdf(b, priors.beta_sd);
    for (double qj : params.q) lp += log_normal_pdf(qj, params.sigma);
    lp += log_half_normal_pdf(params.sigma, priors.sigma_scale);
    lp += std::log(params.sigma);  // Jacobian of the log-sigma transform
    return lp;
}

}  // namespace underprod
