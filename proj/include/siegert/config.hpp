#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "siegert/errors.hpp"

namespace siegert {

// Flat key = value configuration with one [section] per CLI command.
// Top-level keys describe the model and solver; a command reads the
// top-level table merged with its own section (section wins).

class ConfigData {
public:
    static ConfigData parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_text(buf.str(), path);
    }

    static ConfigData parse_text(const std::string& text, const std::string& origin = "<string>") {
        ConfigData cfg;
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError(origin + ":" + std::to_string(lineno) +
                                      ": malformed section header");
                section = trim(line.substr(1, line.size() - 2));
                if (section.empty())
                    throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
                cfg.tables_[section]; // section may legitimately stay empty
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": expected key = value, got '" + line + "'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
            auto& table = cfg.tables_[section];
            if (table.count(key))
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                                  key + "'");
            table[key] = value;
        }
        return cfg;
    }

    bool has_section(const std::string& name) const { return tables_.count(name) > 0; }

    /// Top-level table merged with one section; section entries win.
    std::map<std::string, std::string> view(const std::string& section) const {
        std::map<std::string, std::string> merged;
        if (auto it = tables_.find(""); it != tables_.end()) merged = it->second;
        if (auto it = tables_.find(section); it != tables_.end())
            for (const auto& [k, v] : it->second) merged[k] = v;
        return merged;
    }

private:
    static std::string trim(std::string s) {
        const auto notspace = [](unsigned char c) { return !std::isspace(c); };
        s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
        s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
        return s;
    }

    std::map<std::string, std::map<std::string, std::string>> tables_;
};

/// Typed access over a merged key table; tracks consumption so leftover
/// (misspelled) keys can be rejected.
class ConfigView {
public:
    explicit ConfigView(std::map<std::string, std::string> table) : table_(std::move(table)) {}

    std::optional<std::string> maybe(const std::string& key) {
        auto it = table_.find(key);
        if (it == table_.end()) return std::nullopt;
        used_.push_back(key);
        return it->second;
    }

    std::string get_string(const std::string& key) {
        auto v = maybe(key);
        if (!v) throw ConfigError("missing required config key '" + key + "'");
        return *v;
    }

    std::string get_string(const std::string& key, const std::string& fallback) {
        auto v = maybe(key);
        return v ? *v : fallback;
    }

    double get_double(const std::string& key) { return to_double(key, get_string(key)); }

    double get_double(const std::string& key, double fallback) {
        auto v = maybe(key);
        return v ? to_double(key, *v) : fallback;
    }

    int get_int(const std::string& key) { return to_int(key, get_string(key)); }

    int get_int(const std::string& key, int fallback) {
        auto v = maybe(key);
        return v ? to_int(key, *v) : fallback;
    }

    bool get_bool(const std::string& key, bool fallback) {
        auto v = maybe(key);
        if (!v) return fallback;
        if (*v == "true" || *v == "1" || *v == "yes") return true;
        if (*v == "false" || *v == "0" || *v == "no") return false;
        throw ConfigError("config key '" + key + "': expected a boolean, got '" + *v + "'");
    }

    std::vector<std::string> get_list(const std::string& key) {
        std::vector<std::string> out;
        std::string item;
        std::istringstream in(get_string(key));
        while (std::getline(in, item, ',')) {
            item.erase(std::remove_if(item.begin(), item.end(),
                                      [](unsigned char c) { return std::isspace(c); }),
                       item.end());
            if (!item.empty()) out.push_back(item);
        }
        if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
        return out;
    }

    std::vector<int> get_int_list(const std::string& key) {
        std::vector<int> out;
        for (const std::string& item : get_list(key)) out.push_back(to_int(key, item));
        return out;
    }

    void reject_unknown() const {
        for (const auto& [key, value] : table_)
            if (std::find(used_.begin(), used_.end(), key) == used_.end())
                throw ConfigError("unknown config key '" + key + "'");
    }

private:
    static double to_double(const std::string& key, const std::string& text) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument(text);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
        }
    }

    static int to_int(const std::string& key, const std::string& text) {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(text, &pos);
            if (pos != text.size()) throw std::invalid_argument(text);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': expected an integer, got '" + text + "'");
        }
    }

    std::map<std::string, std::string> table_;
    std::vector<std::string> used_;
};

} // namespace siegert
