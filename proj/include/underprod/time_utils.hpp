#pragma once

// ISO-8601 UTC timestamp handling. All timestamps in the library are
// seconds since the Unix epoch (UTC); the only accepted text form is
// "YYYY-MM-DDThh:mm:ssZ".

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

namespace underprod {

constexpr double kSecondsPerDay = 86400.0;

// Days since 1970-01-01 for a proleptic Gregorian civil date.
// Howard Hinnant's algorithm.
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
    std::int64_t year;
    unsigned month;
    unsigned day;
};

constexpr CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {y + (m <= 2), m, d};
}

// Parses "YYYY-MM-DDThh:mm:ssZ" into epoch seconds. Rejects anything else,
// including fractional seconds and numeric offsets.
inline std::optional<std::int64_t> parse_iso8601_utc(const std::string& s) {
    if (s.size() != 20) return std::nullopt;
    int y, mo, d, h, mi, se;
    char t, z;
    if (std::sscanf(s.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%c",
                    &y, &mo, &d, &t, &h, &mi, &se, &z) != 8)
        return std::nullopt;
    if (t != 'T' || z != 'Z') return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31) return std::nullopt;
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || se < 0 || se > 59) return std::nullopt;
    // round-trip check catches e.g. Feb 30
    const std::int64_t days = days_from_civil(y, static_cast<unsigned>(mo),
                                              static_cast<unsigned>(d));
    const CivilDate back = civil_from_days(days);
    if (back.year != y || back.month != static_cast<unsigned>(mo) ||
        back.day != static_cast<unsigned>(d))
        return std::nullopt;
    return days * 86400 + h * 3600 + mi * 60 + se;
}

inline std::string format_iso8601_utc(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    const CivilDate cd = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(cd.year), cd.month, cd.day,
                  static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem % 3600) / 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

}  // namespace underprod
