#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace hmc::cli {

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// UTC timestamp, ISO 8601 with seconds.
std::string utc_timestamp();

struct RunManifest {
    std::string tool_version;
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;  // echoed in order
    std::string config_text;                                  // re-parseable form, may be empty
    std::uint64_t seed = 0;
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> files;  // names relative to the output directory
};

/// Writes manifest.json into `dir`, checksumming every listed file.
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

} // namespace hmc::cli
