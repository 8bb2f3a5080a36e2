#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "faasproc/common/error.hpp"

namespace faasproc {

// key=value config files (one pair per line, '#' comments). Used for the
// simulator config; kept deliberately simple.
class KvConfig {
public:
    KvConfig() = default;

    static KvConfig parse(std::istream& in) {
        KvConfig cfg;
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (!key.empty()) cfg.values_[key] = value;
        }
        return cfg;
    }

    static KvConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw FaasprocError("cannot open config file: " + path);
        return parse(in);
    }

    std::optional<std::string> get(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto v = get(key);
        return v ? std::stod(*v) : fallback;
    }

    int64_t get_int(const std::string& key, int64_t fallback) const {
        auto v = get(key);
        return v ? std::stoll(*v) : fallback;
    }

    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

private:
    static std::string trim(const std::string& s) {
        size_t a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return {};
        size_t b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    }

    std::map<std::string, std::string> values_;
};

// Store address resolution order: explicit value, FAASPROC_STORE_ADDR, then
// the embedded engine.
inline std::string resolve_store_addr(const std::string& explicit_addr = {}) {
    if (!explicit_addr.empty()) return explicit_addr;
    if (const char* env = std::getenv("FAASPROC_STORE_ADDR"); env && *env) return env;
    return "embedded";
}

}  // namespace faasproc
