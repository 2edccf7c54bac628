#include "phonsim/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "phonsim/config.hpp"
#include "phonsim/errors.hpp"

namespace phonsim {

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "";
    std::ostringstream ss;
    ss << in.rdbuf();
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(ss.str())));
    return buf;
}

void RunManifest::add_input(const std::string& path) {
    inputs.emplace_back(path, file_digest(path));
}

void RunManifest::add_output(const std::string& path) {
    outputs.emplace_back(path, file_digest(path));
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["subcommand"] = subcommand;
    j["tool_version"] = tool_version;
    char fp[20];
    std::snprintf(fp, sizeof(fp), "%016llx", static_cast<unsigned long long>(config_fingerprint));
    j["config_fingerprint"] = fp;
    auto files = [](const std::vector<std::pair<std::string, std::string>>& v) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& [path, digest] : v)
            arr.push_back({{"path", path}, {"digest", digest}});
        return arr;
    };
    j["inputs"] = files(inputs);
    j["outputs"] = files(outputs);
    j["wall_time_s"] = wall_time_s;
    j["success"] = success;
    if (!failure.empty()) j["failure"] = failure;
    return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write manifest: " + path);
    out << to_json();
}

}  // namespace phonsim
