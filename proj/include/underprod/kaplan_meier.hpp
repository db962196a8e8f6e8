#pragma once

// Kaplan-Meier product-limit estimator over right-censored durations.

#include <string>
#include <vector>

#include "underprod/severity.hpp"
#include "underprod/survival_data.hpp"

namespace underprod {

struct KMCurve {
    std::string stratum;  // severity name or "all"
    std::vector<double> time;
    std::vector<double> survival;  // S(t) just after each event time
};

namespace detail {

// rows given as (duration, event) pairs; any order
inline KMCurve km_curve(const std::vector<std::pair<double, bool>>& rows,
                        std::string stratum) {
    KMCurve curve;
    curve.stratum = std::move(stratum);
    if (rows.empty()) return curve;

    std::vector<std::pair<double, bool>> sorted(rows);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    double survival = 1.0;
    const std::size_t n = sorted.size();
    std::size_t i = 0;
    while (i < n) {
        const double t = sorted[i].first;
        std::size_t deaths = 0;
        std::size_t tied = 0;
        while (i + tied < n && sorted[i + tied].first == t) {
            if (sorted[i + tied].second) ++deaths;
            ++tied;
        }
        const std::size_t at_risk = n - i;  // everything with duration >= t
        if (deaths > 0) {
            survival *= 1.0 - static_cast<double>(deaths) / static_cast<double>(at_risk);
            curve.time.push_back(t);
            curve.survival.push_back(survival);
        }
        i += tied;
    }
    return curve;
}

}  // namespace detail

// Product-limit curves. Unstratified: a single curve labelled "all".
// Stratified: one curve per severity level (empty strata give empty
// curves, preserving the fixed six-curve layout).
inline std::vector<KMCurve> kaplan_meier(const SurvivalDataset& ds,
                                         bool stratify_by_severity) {
    std::vector<KMCurve> curves;
    if (!stratify_by_severity) {
        std::vector<std::pair<double, bool>> rows;
        rows.reserve(ds.row_count());
        for (std::size_t i = 0; i < ds.row_count(); ++i)
            rows.emplace_back(ds.duration[i], ds.event[i] != 0);
        curves.push_back(detail::km_curve(rows, "all"));
        return curves;
    }
    for (SeverityLevel sev : kAllSeverities) {
        std::vector<std::pair<double, bool>> rows;
        for (std::size_t i = 0; i < ds.row_count(); ++i)
            if (ds.severity_code[i] == static_cast<int>(sev))
                rows.emplace_back(ds.duration[i], ds.event[i] != 0);
        curves.push_back(detail::km_curve(rows, std::string(severity_name(sev))));
    }
    return curves;
}

// survival probability at time t (right-continuous step function)
inline double km_survival_at(const KMCurve& curve, double t) {
    double s = 1.0;
    for (std::size_t i = 0; i < curve.time.size(); ++i) {
        if (curve.time[i] <= t)
            s = curve.survival[i];
        else
            break;
    }
    return s;
}

}  // namespace underprod
