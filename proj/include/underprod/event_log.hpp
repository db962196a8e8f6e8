#pragma once

// Normalized JSONL bug-tracker event log: parsing and folding into
// BugRecords. One JSON object per line, fields:
//   bug (int), ts (ISO-8601 UTC, "Z"), event, and for event=opened also
//   package + severity; for event=severity the new severity label.

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "underprod/corpus.hpp"
#include "underprod/severity.hpp"
#include "underprod/time_utils.hpp"

namespace underprod {

enum class EventType { Opened, Severity, Closed, Forwarded, Merged, Reopened };

inline std::optional<EventType> parse_event_type(std::string_view s) {
    if (s == "opened") return EventType::Opened;
    if (s == "severity") return EventType::Severity;
    if (s == "closed") return EventType::Closed;
    if (s == "forwarded") return EventType::Forwarded;
    if (s == "merged") return EventType::Merged;
    if (s == "reopened") return EventType::Reopened;
    return std::nullopt;
}

// severity payload of an opened/severity event; wishlist is carried as a
// flag because it is an exclusion marker, not a level
struct SeverityValue {
    bool wishlist = false;
    SeverityLevel level = SeverityLevel::Normal;
};

struct Event {
    std::int64_t bug = 0;
    std::int64_t ts = 0;          // epoch seconds
    EventType type = EventType::Opened;
    std::string package;          // opened only
    SeverityValue severity;       // opened / severity only
};

using EventSequence = std::vector<Event>;

struct RejectedLine {
    std::size_t line_no;  // 1-based
    std::string reason;
};

struct ParseResult {
    EventSequence events;  // sorted by (bug, ts), input order preserved on ties
    std::vector<RejectedLine> rejects;
};

inline ParseResult parse_event_log(std::istream& in) {
    ParseResult out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            out.rejects.push_back({line_no, "malformed JSON"});
            continue;
        }
        if (!j.contains("bug") || !j["bug"].is_number_integer()) {
            out.rejects.push_back({line_no, "missing or non-integer 'bug'"});
            continue;
        }
        if (!j.contains("ts") || !j["ts"].is_string()) {
            out.rejects.push_back({line_no, "missing 'ts'"});
            continue;
        }
        const auto ts = parse_iso8601_utc(j["ts"].get<std::string>());
        if (!ts) {
            out.rejects.push_back({line_no, "unparseable timestamp"});
            continue;
        }
        if (!j.contains("event") || !j["event"].is_string()) {
            out.rejects.push_back({line_no, "missing 'event'"});
            continue;
        }
        const auto type = parse_event_type(j["event"].get<std::string>());
        if (!type) {
            out.rejects.push_back({line_no, "unknown event type"});
            continue;
        }

        Event ev;
        ev.bug = j["bug"].get<std::int64_t>();
        ev.ts = *ts;
        ev.type = *type;

        if (ev.type == EventType::Opened) {
            if (!j.contains("package") || !j["package"].is_string() ||
                j["package"].get<std::string>().empty()) {
                out.rejects.push_back({line_no, "'opened' missing package"});
                continue;
            }
            ev.package = j["package"].get<std::string>();
        }
        if (ev.type == EventType::Opened || ev.type == EventType::Severity) {
            // the tracker's default severity is "not set" (= normal), so a
            // missing field on 'opened' falls back to that; a 'severity'
            // event without a payload is meaningless and rejected
            std::string label = "not set";
            if (j.contains("severity")) {
                if (!j["severity"].is_string()) {
                    out.rejects.push_back({line_no, "non-string severity"});
                    continue;
                }
                label = j["severity"].get<std::string>();
            } else if (ev.type == EventType::Severity) {
                out.rejects.push_back({line_no, "'severity' event without severity"});
                continue;
            }
            const SeverityParse sp = parse_severity_label(label);
            if (sp.kind == SeverityParse::Kind::Unknown) {
                out.rejects.push_back({line_no, "unknown severity label '" + label + "'"});
                continue;
            }
            ev.severity.wishlist = sp.kind == SeverityParse::Kind::Wishlist;
            ev.severity.level = sp.level;
        }
        out.events.push_back(std::move(ev));
    }

    std::stable_sort(out.events.begin(), out.events.end(),
                     [](const Event& a, const Event& b) {
                         if (a.bug != b.bug) return a.bug < b.bug;
                         return a.ts < b.ts;
                     });
    return out;
}

struct FoldResult {
    std::vector<BugRecord> records;
    std::size_t rejected_events = 0;   // events for unknown/duplicate-opened bugs
    std::size_t excluded_bugs = 0;     // opened after the snapshot
    std::size_t wishlist_dropped = 0;  // effective severity was wishlist
};

// Collapses the per-bug event stream into BugRecords.
//
// Resolution time is the earliest closed/forwarded/merged event at or
// before the snapshot; reopen events never undo it. Effective severity is
// the last severity set at or before resolution (or before the snapshot
// for unresolved bugs), seeded from the opened event. Events after the
// snapshot are outside the observation window and ignored.
inline FoldResult fold_events(const EventSequence& events, std::int64_t snapshot_time) {
    FoldResult out;

    struct BugState {
        std::string package;
        std::int64_t opened_at = 0;
        SeverityValue severity;
        std::optional<std::int64_t> resolved_at;
        Resolution resolution = Resolution::Open;
    };

    std::optional<std::int64_t> current_bug;
    std::optional<BugState> state;  // nullopt while current bug unknown/excluded
    bool excluded = false;

    auto flush = [&](std::int64_t bug_id) {
        if (!state) return;
        if (state->severity.wishlist) {
            ++out.wishlist_dropped;
            return;
        }
        BugRecord rec;
        rec.bug_id = bug_id;
        rec.package_id = state->package;
        rec.opened_at = state->opened_at;
        rec.severity = state->severity.level;
        if (state->resolved_at) {
            rec.resolved_at = state->resolved_at;
            rec.resolution = state->resolution;
            rec.censored = false;
            rec.duration_days = std::max(
                static_cast<double>(*state->resolved_at - state->opened_at) / kSecondsPerDay,
                kMinDurationDays);
        } else {
            rec.resolution = Resolution::Open;
            rec.censored = true;
            rec.duration_days = std::max(
                static_cast<double>(snapshot_time - state->opened_at) / kSecondsPerDay,
                kMinDurationDays);
        }
        out.records.push_back(std::move(rec));
    };

    for (const Event& ev : events) {
        if (!current_bug || *current_bug != ev.bug) {
            if (current_bug) flush(*current_bug);
            current_bug = ev.bug;
            state.reset();
            excluded = false;
        }

        if (excluded) continue;
        if (ev.ts > snapshot_time && ev.type != EventType::Opened) continue;

        if (ev.type == EventType::Opened) {
            if (state) {
                ++out.rejected_events;  // duplicate opened
                continue;
            }
            if (ev.ts > snapshot_time) {
                excluded = true;
                ++out.excluded_bugs;
                continue;
            }
            state.emplace();
            state->package = ev.package;
            state->opened_at = ev.ts;
            state->severity = ev.severity;
            continue;
        }

        if (!state) {
            ++out.rejected_events;  // event for a bug never opened (yet)
            continue;
        }

        switch (ev.type) {
            case EventType::Severity:
                if (!state->resolved_at || ev.ts <= *state->resolved_at)
                    state->severity = ev.severity;
                break;
            case EventType::Closed:
            case EventType::Forwarded:
            case EventType::Merged:
                if (!state->resolved_at) {
                    state->resolved_at = ev.ts;
                    state->resolution = ev.type == EventType::Closed ? Resolution::Closed
                                        : ev.type == EventType::Forwarded
                                            ? Resolution::Forwarded
                                            : Resolution::Merged;
                }
                break;
            case EventType::Reopened:
                break;  // earliest-closure rule: reopen never resets duration
            case EventType::Opened:
                break;  // handled above
        }
    }
    if (current_bug) flush(*current_bug);
    return out;
}

}  // namespace underprod
