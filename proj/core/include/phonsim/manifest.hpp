#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace phonsim {

// Run provenance record written next to every artifact set: which subcommand
// ran, what it consumed (with content digests), what it produced, and whether
// it succeeded. Written even when the run fails.
struct RunManifest {
    std::string subcommand;
    std::string tool_version;
    std::uint64_t config_fingerprint = 0;
    std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
    std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
    double wall_time_s = 0.0;
    bool success = false;
    std::string failure;

    void add_input(const std::string& path);
    void add_output(const std::string& path);
    std::string to_json() const;
    void write(const std::string& path) const;
};

// FNV-1a of the file bytes, hex-encoded; empty digest for unreadable files.
std::string file_digest(const std::string& path);

}  // namespace phonsim
