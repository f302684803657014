#include "segscore/reports.hpp"

#include <cstdio>
#include <fstream>

#include "segscore/errors.hpp"

#include <nlohmann/json.hpp>

namespace segscore {

std::string format_double(double value) {
    char buf[40];
    for (int precision : {15, 16, 17}) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

void CsvTable::add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

std::string CsvTable::to_string() const {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void CsvTable::write(const std::string& path) const {
    std::ofstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "' for writing");
    file << to_string();
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["parameters"] = parameters;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(model_fingerprint));
    j["model_hash"] = buf;
    j["tool_version"] = tool_version;
    if (seed_used) j["seed"] = seed;
    j["outputs"] = outputs;
    j["wall_seconds"] = wall_seconds;
    return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const {
    std::ofstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "' for writing");
    file << to_json();
}

}  // namespace segscore
