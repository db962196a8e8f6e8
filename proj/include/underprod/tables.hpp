#pragma once

// CSV ingestion for the two per-package side tables: binary-package
// install counts and NMU counts. Identifiers are comma-free by contract,
// so parsing is a plain split.

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace underprod {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

inline std::int64_t parse_count_field(const std::string& s, std::size_t line_no,
                                      const char* what) {
    std::size_t consumed = 0;
    std::int64_t value = 0;
    try {
        value = std::stoll(s, &consumed);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("line ") + std::to_string(line_no) +
                                 ": non-integer " + what + " '" + s + "'");
    }
    if (consumed != s.size())
        throw std::runtime_error(std::string("line ") + std::to_string(line_no) +
                                 ": non-integer " + what + " '" + s + "'");
    if (value < 0)
        throw std::runtime_error(std::string("line ") + std::to_string(line_no) +
                                 ": negative " + what);
    return value;
}

struct InstallTable {
    std::map<std::string, std::int64_t> installs;  // source package -> max inst
    std::vector<std::string> warnings;
};

// installs.csv: header binary_package,source_package,inst. Per source
// package the result is the maximum inst over its binary packages.
// Throws on structural errors and negative counts.
inline InstallTable load_installs(std::istream& in) {
    InstallTable out;
    std::map<std::pair<std::string, std::string>, std::int64_t> seen_pairs;

    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "binary_package,source_package,inst")
                throw std::runtime_error("installs.csv: unexpected header '" + line + "'");
            saw_header = true;
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw std::runtime_error("installs.csv line " + std::to_string(line_no) +
                                     ": expected 3 fields, got " +
                                     std::to_string(fields.size()));
        const std::string& binary = fields[0];
        const std::string& source = fields[1];
        const std::int64_t inst = parse_count_field(fields[2], line_no, "inst");

        auto key = std::make_pair(binary, source);
        auto it = seen_pairs.find(key);
        if (it != seen_pairs.end()) {
            out.warnings.push_back("duplicate row for (" + binary + "," + source +
                                   "); keeping max");
            it->second = std::max(it->second, inst);
        } else {
            seen_pairs.emplace(std::move(key), inst);
        }
    }
    if (!saw_header) throw std::runtime_error("installs.csv: empty input");

    for (const auto& [key, inst] : seen_pairs) {
        auto [it, inserted] = out.installs.try_emplace(key.second, inst);
        if (!inserted) it->second = std::max(it->second, inst);
    }
    return out;
}

struct NmuTable {
    std::map<std::string, std::int64_t> counts;
    std::vector<std::string> warnings;
};

// nmu.csv: header source_package,nmu_count. Duplicate source rows keep the
// maximum, mirroring the install-table rule.
inline NmuTable load_nmu(std::istream& in) {
    NmuTable out;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "source_package,nmu_count")
                throw std::runtime_error("nmu.csv: unexpected header '" + line + "'");
            saw_header = true;
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw std::runtime_error("nmu.csv line " + std::to_string(line_no) +
                                     ": expected 2 fields, got " +
                                     std::to_string(fields.size()));
        const std::int64_t nmu = parse_count_field(fields[1], line_no, "nmu_count");
        auto [it, inserted] = out.counts.try_emplace(fields[0], nmu);
        if (!inserted) {
            out.warnings.push_back("duplicate nmu row for " + fields[0] + "; keeping max");
            it->second = std::max(it->second, nmu);
        }
    }
    if (!saw_header) throw std::runtime_error("nmu.csv: empty input");
    return out;
}

}  // namespace underprod
