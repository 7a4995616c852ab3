#include "specloc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace specloc {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool valid_key(const std::string& key) {
    std::size_t dot = key.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) return false;
    if (key.find('.', dot + 1) != std::string::npos) return false;
    auto ok = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '_';
    };
    for (std::size_t i = 0; i < key.size(); ++i)
        if (i != dot && !ok(key[i])) return false;
    return true;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected `section.key = value`");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (!valid_key(key))
            throw config_error("config line " + std::to_string(lineno) +
                               ": bad key `" + key + "`");
        if (value.empty())
            throw config_error("config line " + std::to_string(lineno) +
                               ": empty value for `" + key + "`");
        if (cfg.has(key))
            throw config_error("config line " + std::to_string(lineno) +
                               ": duplicate key `" + key + "`");
        cfg.set(key, value);
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

bool ExperimentConfig::has(const std::string& key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const auto& e, const std::string& k) {
                                   return e.first < k;
                               });
    return it != entries_.end() && it->first == key;
}

const std::string& ExperimentConfig::get(const std::string& key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const auto& e, const std::string& k) {
                                   return e.first < k;
                               });
    if (it == entries_.end() || it->first != key)
        throw config_error("missing required config key `" + key + "`");
    return it->second;
}

std::string ExperimentConfig::get_or(const std::string& key,
                                     const std::string& def) const {
    return has(key) ? get(key) : def;
}

double ExperimentConfig::get_real(const std::string& key) const {
    const std::string& v = get(key);
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size())
        throw config_error("config key `" + key + "`: not a real number: " + v);
    return x;
}

double ExperimentConfig::get_real_or(const std::string& key, double def) const {
    return has(key) ? get_real(key) : def;
}

long long ExperimentConfig::get_int(const std::string& key) const {
    const std::string& v = get(key);
    char* end = nullptr;
    long long x = std::strtoll(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size())
        throw config_error("config key `" + key + "`: not an integer: " + v);
    return x;
}

long long ExperimentConfig::get_int_or(const std::string& key, long long def) const {
    return has(key) ? get_int(key) : def;
}

bool ExperimentConfig::get_bool_or(const std::string& key, bool def) const {
    if (!has(key)) return def;
    const std::string& v = get(key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw config_error("config key `" + key + "`: not a boolean: " + v);
}

std::vector<double> ExperimentConfig::get_real_list(const std::string& key) const {
    std::vector<double> out;
    for (const std::string& item : split_list(get(key))) {
        char* end = nullptr;
        double x = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size())
            throw config_error("config key `" + key + "`: bad list element: " + item);
        out.push_back(x);
    }
    if (out.empty()) throw config_error("config key `" + key + "`: empty list");
    return out;
}

std::vector<long long> ExperimentConfig::get_int_list(const std::string& key) const {
    std::vector<long long> out;
    for (const std::string& item : split_list(get(key))) {
        char* end = nullptr;
        long long x = std::strtoll(item.c_str(), &end, 10);
        if (end != item.c_str() + item.size())
            throw config_error("config key `" + key + "`: bad list element: " + item);
        out.push_back(x);
    }
    if (out.empty()) throw config_error("config key `" + key + "`: empty list");
    return out;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const auto& e, const std::string& k) {
                                   return e.first < k;
                               });
    if (it != entries_.end() && it->first == key)
        it->second = value;
    else
        entries_.insert(it, {key, value});
}

void ExperimentConfig::validate_keys(const std::vector<std::string>& known,
                                     const std::vector<std::string>& required) const {
    for (const auto& [k, v] : entries_)
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw config_error("unknown config key `" + k + "`");
    for (const std::string& k : required)
        if (!has(k)) throw config_error("missing required config key `" + k + "`");
}

std::string ExperimentConfig::canonical() const {
    std::string out;
    for (const auto& [k, v] : entries_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

}  // namespace specloc
