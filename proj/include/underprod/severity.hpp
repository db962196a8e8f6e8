#pragma once

// Bug severity levels as used by the Debian-style tracker input. Wishlist
// is not a level: records carrying it are excluded from analysis, so the
// parse result distinguishes "a level", "wishlist", and "unknown label".

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace underprod {

enum class SeverityLevel : int {
    Minor = 1,
    Normal = 2,
    Important = 3,
    Serious = 4,
    Grave = 5,
    Critical = 6,
};

constexpr int kSeverityCount = 6;

// index into the dummy vector {Minor, Important, Serious, Grave, Critical};
// Normal is the reference level (-1)
constexpr int severity_dummy_index(SeverityLevel s) {
    switch (s) {
        case SeverityLevel::Minor: return 0;
        case SeverityLevel::Important: return 1;
        case SeverityLevel::Serious: return 2;
        case SeverityLevel::Grave: return 3;
        case SeverityLevel::Critical: return 4;
        case SeverityLevel::Normal: return -1;
    }
    return -1;
}

constexpr int kDummyCount = 5;

constexpr bool is_release_critical(SeverityLevel s) {
    return s >= SeverityLevel::Serious;
}

inline std::string_view severity_name(SeverityLevel s) {
    switch (s) {
        case SeverityLevel::Minor: return "minor";
        case SeverityLevel::Normal: return "normal";
        case SeverityLevel::Important: return "important";
        case SeverityLevel::Serious: return "serious";
        case SeverityLevel::Grave: return "grave";
        case SeverityLevel::Critical: return "critical";
    }
    return "?";
}

struct SeverityParse {
    enum class Kind { Level, Wishlist, Unknown } kind;
    SeverityLevel level;  // valid only when kind == Level
};

// "not set" and "fixed" normalise to Normal; "wishlist" is reported as
// such so callers can drop the record.
inline SeverityParse parse_severity_label(std::string_view raw) {
    using K = SeverityParse::Kind;
    if (raw == "minor") return {K::Level, SeverityLevel::Minor};
    if (raw == "normal" || raw == "not set" || raw == "fixed")
        return {K::Level, SeverityLevel::Normal};
    if (raw == "important") return {K::Level, SeverityLevel::Important};
    if (raw == "serious") return {K::Level, SeverityLevel::Serious};
    if (raw == "grave") return {K::Level, SeverityLevel::Grave};
    if (raw == "critical") return {K::Level, SeverityLevel::Critical};
    if (raw == "wishlist") return {K::Wishlist, SeverityLevel::Normal};
    return {K::Unknown, SeverityLevel::Normal};
}

constexpr std::array<SeverityLevel, kSeverityCount> kAllSeverities = {
    SeverityLevel::Minor,  SeverityLevel::Normal, SeverityLevel::Important,
    SeverityLevel::Serious, SeverityLevel::Grave,  SeverityLevel::Critical,
};

constexpr std::array<std::string_view, kDummyCount> kDummyNames = {
    "minor", "important", "serious", "grave", "critical",
};

}  // namespace underprod
