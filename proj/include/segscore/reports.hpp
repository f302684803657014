#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace segscore {

inline constexpr const char* kToolVersion = "0.1.0";

// Shortest decimal that round-trips a double.
std::string format_double(double value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::string to_string() const;
    void write(const std::string& path) const;
};

// One manifest per CLI run: enough to replay the run and to tie every
// output file to the command that produced it.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t model_fingerprint = 0;
    std::string tool_version = kToolVersion;
    std::vector<std::string> outputs;
    std::uint64_t seed = 0;
    bool seed_used = false;
    double wall_seconds = 0.0;

    std::string to_json() const;
    void write(const std::string& path) const;
};

}  // namespace segscore
