#pragma once

// The analysis corpus: one immutable snapshot of packages, their bugs,
// install counts and NMU counts. Everything downstream (survival fits,
// rankings, validation) reads from this structure and never mutates it.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "underprod/severity.hpp"
#include "underprod/time_utils.hpp"

namespace underprod {

enum class Resolution { Closed, Forwarded, Merged, Open };

inline std::string_view resolution_name(Resolution r) {
    switch (r) {
        case Resolution::Closed: return "closed";
        case Resolution::Forwarded: return "forwarded";
        case Resolution::Merged: return "merged";
        case Resolution::Open: return "open";
    }
    return "?";
}

inline std::optional<Resolution> parse_resolution(std::string_view s) {
    if (s == "closed") return Resolution::Closed;
    if (s == "forwarded") return Resolution::Forwarded;
    if (s == "merged") return Resolution::Merged;
    if (s == "open") return Resolution::Open;
    return std::nullopt;
}

// Minimum time to resolution, in days. Same-timestamp open/close pairs
// (and bugs censored at the instant they were opened) are floored here so
// durations stay strictly positive for the survival machinery.
constexpr double kMinDurationDays = 1e-3;

struct BugRecord {
    std::int64_t bug_id = 0;
    std::string package_id;
    std::int64_t opened_at = 0;                 // epoch seconds, UTC
    std::optional<std::int64_t> resolved_at;    // absent iff censored
    Resolution resolution = Resolution::Open;
    SeverityLevel severity = SeverityLevel::Normal;
    double duration_days = 0.0;
    bool censored = false;

    bool operator==(const BugRecord&) const = default;
};

struct PackageRecord {
    std::string package_id;
    std::int64_t installs = 0;
    std::int64_t nmu_count = 0;
    std::vector<std::int64_t> bug_ids;

    bool operator==(const PackageRecord&) const = default;
};

// Immutable after construction (use build_corpus); packages are kept in
// lexicographic package_id order so every index-based consumer sees the
// same deterministic layout.
class Corpus {
public:
    Corpus() = default;

    std::int64_t snapshot_time() const { return snapshot_time_; }
    const std::vector<PackageRecord>& packages() const { return packages_; }
    const std::vector<BugRecord>& bugs() const { return bugs_; }

    std::size_t package_count() const { return packages_.size(); }
    std::size_t bug_count() const { return bugs_.size(); }

    const PackageRecord& package_at(std::size_t idx) const { return packages_[idx]; }

    std::optional<std::size_t> package_index(const std::string& package_id) const {
        auto it = index_.find(package_id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool operator==(const Corpus& other) const {
        return snapshot_time_ == other.snapshot_time_ &&
               packages_ == other.packages_ && bugs_ == other.bugs_;
    }

    friend Corpus build_corpus(std::vector<BugRecord> bugs,
                               const std::map<std::string, std::int64_t>& installs,
                               const std::map<std::string, std::int64_t>& nmu_counts,
                               std::int64_t snapshot_time,
                               std::vector<std::string>* warnings);

private:
    std::int64_t snapshot_time_ = 0;
    std::vector<PackageRecord> packages_;
    std::vector<BugRecord> bugs_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Assembles the corpus from folded bugs plus the install / NMU tables.
// The package universe is the union of all three key sets; packages that
// appear only through their bugs get installs = 0 (with a warning).
// Throws std::runtime_error on duplicate bug ids.
inline Corpus build_corpus(std::vector<BugRecord> bugs,
                           const std::map<std::string, std::int64_t>& installs,
                           const std::map<std::string, std::int64_t>& nmu_counts,
                           std::int64_t snapshot_time,
                           std::vector<std::string>* warnings = nullptr) {
    std::unordered_set<std::int64_t> seen_ids;
    seen_ids.reserve(bugs.size());
    for (const BugRecord& b : bugs) {
        if (!seen_ids.insert(b.bug_id).second)
            throw std::runtime_error("duplicate bug_id " + std::to_string(b.bug_id));
    }

    std::map<std::string, PackageRecord> table;
    for (const auto& [pkg, inst] : installs) {
        PackageRecord& rec = table[pkg];
        rec.package_id = pkg;
        rec.installs = inst;
    }
    for (const auto& [pkg, nmu] : nmu_counts) {
        PackageRecord& rec = table[pkg];
        rec.package_id = pkg;
        rec.nmu_count = nmu;
    }

    // deterministic bug order: by bug_id
    std::sort(bugs.begin(), bugs.end(),
              [](const BugRecord& a, const BugRecord& b) { return a.bug_id < b.bug_id; });

    for (const BugRecord& b : bugs) {
        auto [it, inserted] = table.try_emplace(b.package_id);
        if (inserted) {
            it->second.package_id = b.package_id;
            if (warnings)
                warnings->push_back("package '" + b.package_id +
                                    "' has bugs but no install row; installs = 0");
        }
        it->second.bug_ids.push_back(b.bug_id);
    }

    Corpus corpus;
    corpus.snapshot_time_ = snapshot_time;
    corpus.bugs_ = std::move(bugs);
    corpus.packages_.reserve(table.size());
    for (auto& [pkg, rec] : table) {
        corpus.index_.emplace(pkg, corpus.packages_.size());
        corpus.packages_.push_back(std::move(rec));
    }
    return corpus;
}

}  // namespace underprod
