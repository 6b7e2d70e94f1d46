#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace cardioload::cli {

std::string sha256_hex(std::string_view bytes);
/// Throws Error(io_error) if the file cannot be read.
std::string file_sha256(const std::filesystem::path& path);

/// Self-describing record of one run. Contains no wall-clock data, so identical
/// inputs produce a byte-identical manifest.
struct RunManifest {
    std::string command;
    /// Non-path run parameters (scenario, seed, timezone, ...).
    nlohmann::json parameters = nlohmann::json::object();
    nlohmann::json config;
    /// name -> sha256
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> outputs;

    nlohmann::json to_json() const;
};

} // namespace cardioload::cli
