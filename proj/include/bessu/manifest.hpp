#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace bessu {

inline constexpr const char* kToolVersion = "0.3.0";

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

struct InputDigest {
    std::string path;
    std::string sha256;
};

/// Record of one CLI run. Outputs live in a directory named after `run_id()`,
/// which hashes everything except the wall-clock timestamp.
struct RunManifest {
    std::string command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<InputDigest> inputs;
    nlohmann::ordered_json coverage = nlohmann::ordered_json::array();
    std::string tool_version{kToolVersion};
    std::string timestamp;

    void add_input(const std::filesystem::path& path);
    std::string run_id() const;
    nlohmann::ordered_json to_json() const;
};

std::string utc_now_iso();

}  // namespace bessu
