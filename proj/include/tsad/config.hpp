#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace tsad {

/// Flat `key = value` configuration with `[section]` headers. Keys are
/// stored as "section.key" ("" section for keys before any header).
/// Comments start with '#'. No nesting, no quoting.
class ConfigFile {
public:
    static ConfigFile parse(std::istream& in);

    std::optional<std::string> get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    /// Throws ConfigError naming the key when absent.
    std::string require(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace tsad
