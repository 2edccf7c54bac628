#include "phonsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "phonsim/errors.hpp"

namespace phonsim {

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
    for (size_t i = 0; i < line.size(); ++i)
        if (line[i] == '#' || line[i] == ';') return line.substr(0, i);
    return line;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw config_error(origin + ":" + std::to_string(lineno) +
                                   ": malformed section header");
            section = trim(body.substr(1, body.size() - 2));
            continue;
        }
        const size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw config_error(origin + ":" + std::to_string(lineno) +
                               ": expected `key = value`");
        std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty())
            throw config_error(origin + ":" + std::to_string(lineno) + ": empty key");
        if (!section.empty() && key.find('.') == std::string::npos)
            key = section + "." + key;
        if (cfg.values_.count(key))
            throw config_error(origin + ":" + std::to_string(lineno) + ": duplicate key `" +
                               key + "`");
        cfg.values_[key] = value;
    }
    return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

std::string Config::raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw config_error(origin_ + ": missing required key `" + key + "`");
    consumed_.insert(key);
    return it->second;
}

std::string Config::get_string(const std::string& key) const { return raw(key); }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
}

double Config::get_double(const std::string& key) const {
    const std::string v = raw(key);
    size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw config_error(origin_ + ": key `" + key + "` is not a number: " + v);
    }
    if (pos != v.size())
        throw config_error(origin_ + ": trailing characters in numeric key `" + key + "`: " + v);
    return out;
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
    const double d = get_double(key);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        throw config_error(origin_ + ": key `" + key + "` must be an integer");
    return i;
}

int Config::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key) const {
    std::string v = raw(key);
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw config_error(origin_ + ": key `" + key + "` is not a boolean: " + v);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

std::vector<std::string> Config::get_list(const std::string& key) const {
    const std::string v = raw(key);
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(v);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<std::string> Config::get_list(const std::string& key,
                                          const std::vector<std::string>& fallback) const {
    return has(key) ? get_list(key) : fallback;
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

void Config::ensure_all_consumed() const {
    std::string unknown;
    for (const auto& [k, v] : values_)
        if (!consumed_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
    if (!unknown.empty())
        throw config_error(origin_ + ": unknown key(s): " + unknown);
}

std::string Config::canonical() const {
    std::string out;
    for (const auto& [k, v] : values_) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

std::uint64_t Config::fingerprint() const { return fnv1a(canonical()); }

}  // namespace phonsim
