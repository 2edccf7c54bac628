#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace phonsim {

std::uint64_t fnv1a(std::string_view bytes);

// INI-style `key = value` files with `[section]` headers; keys inside a
// section become `section.key`. `#` and `;` start comments. Every key carries
// its unit in its name (e.g. pulse.fwhm_nm), so there is no separate unit
// layer. Accessors mark keys as consumed; ensure_all_consumed() turns unknown
// keys into hard errors.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // Comma-separated list.
    std::vector<std::string> get_list(const std::string& key) const;
    std::vector<std::string> get_list(const std::string& key,
                                      const std::vector<std::string>& fallback) const;

    void set(const std::string& key, const std::string& value);

    // Throws config_error naming every key never read by an accessor.
    void ensure_all_consumed() const;

    // Canonical serialization (sorted keys) and its FNV-1a fingerprint.
    std::string canonical() const;
    std::uint64_t fingerprint() const;

    const std::string& origin() const { return origin_; }

private:
    std::string raw(const std::string& key) const;

    std::map<std::string, std::string> values_;
    mutable std::set<std::string> consumed_;
    std::string origin_;
};

}  // namespace phonsim
