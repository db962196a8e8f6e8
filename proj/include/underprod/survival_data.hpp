#pragma once

// Flattens a Corpus into the row layout the survival estimators consume:
// one row per bug with duration, event flag, severity covariates and the
// owning package's index. Rows are sorted by descending duration so risk
// sets are prefixes.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "underprod/corpus.hpp"
#include "underprod/severity.hpp"

namespace underprod {

enum class SeverityCoding {
    Dummy,    // 5 indicators {minor, important, serious, grave, critical}, normal = reference
    Ordinal,  // single covariate: severity code centred on normal
};

struct SurvivalDataset {
    // all row vectors are parallel, sorted descending by duration
    std::vector<double> duration;
    std::vector<std::uint8_t> event;       // 1 = resolved, 0 = censored
    std::vector<int> severity_code;        // SeverityLevel as int
    std::vector<std::uint32_t> package_index;

    std::size_t covariate_count = kDummyCount;
    SeverityCoding coding = SeverityCoding::Dummy;

    std::vector<std::string> package_ids;  // index -> package_id, J entries

    std::size_t row_count() const { return duration.size(); }
    std::size_t package_count() const { return package_ids.size(); }

    // covariate vector of a row is sparse: at most one non-zero entry
    // (dummy coding), or exactly one (ordinal). Returns (index, value);
    // index < 0 means the zero vector.
    std::pair<int, double> covariate(std::size_t row) const {
        const auto sev = static_cast<SeverityLevel>(severity_code[row]);
        if (coding == SeverityCoding::Dummy) {
            const int idx = severity_dummy_index(sev);
            return {idx, idx >= 0 ? 1.0 : 0.0};
        }
        return {0, static_cast<double>(severity_code[row]) -
                       static_cast<double>(SeverityLevel::Normal)};
    }

    std::size_t event_count() const {
        std::size_t n = 0;
        for (auto e : event) n += e;
        return n;
    }
};

// Every package in the corpus gets an index (and therefore a random
// effect), including packages with no bugs; those contribute no rows and
// their quality posterior is prior-only.
inline SurvivalDataset build_survival_dataset(const Corpus& corpus,
                                              SeverityCoding coding = SeverityCoding::Dummy) {
    SurvivalDataset ds;
    ds.coding = coding;
    ds.covariate_count = coding == SeverityCoding::Dummy ? kDummyCount : 1;
    ds.package_ids.reserve(corpus.package_count());
    for (const PackageRecord& p : corpus.packages()) ds.package_ids.push_back(p.package_id);

    const std::size_t n = corpus.bug_count();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    const auto& bugs = corpus.bugs();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (bugs[a].duration_days != bugs[b].duration_days)
            return bugs[a].duration_days > bugs[b].duration_days;
        return bugs[a].bug_id < bugs[b].bug_id;  // deterministic tie order
    });

    ds.duration.reserve(n);
    ds.event.reserve(n);
    ds.severity_code.reserve(n);
    ds.package_index.reserve(n);
    for (std::size_t i : order) {
        const BugRecord& b = bugs[i];
        if (b.duration_days <= 0.0)
            throw std::runtime_error("non-positive duration for bug " +
                                     std::to_string(b.bug_id));
        const auto pidx = corpus.package_index(b.package_id);
        if (!pidx)
            throw std::runtime_error("bug " + std::to_string(b.bug_id) +
                                     " references unknown package " + b.package_id);
        ds.duration.push_back(b.duration_days);
        ds.event.push_back(b.censored ? 0 : 1);
        ds.severity_code.push_back(static_cast<int>(b.severity));
        ds.package_index.push_back(static_cast<std::uint32_t>(*pidx));
    }
    return ds;
}

}  // namespace underprod
