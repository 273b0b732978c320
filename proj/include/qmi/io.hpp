#pragma once

#include "qmi/entropy.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qmi::io {

/// Key-value run configuration with [section] headers, one section per
/// subcommand.  Lines are `key = value`; `#` starts a comment.  All getters
/// throw ConfigError naming the file, section, key, and line of the
/// offending entry.
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text,
                                   const std::string& origin);

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section,
                           const std::string& key) const;
    std::string get_string_or(const std::string& section,
                              const std::string& key,
                              const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;
    int get_int_or(const std::string& section, const std::string& key,
                   int fallback) const;
    std::uint64_t get_seed_or(const std::string& section,
                              const std::string& key,
                              std::uint64_t fallback) const;
    bool get_bool_or(const std::string& section, const std::string& key,
                     bool fallback) const;
    /// Whitespace-separated list of reals; must be non-empty.
    std::vector<double> get_list(const std::string& section,
                                 const std::string& key) const;
    std::vector<double> get_list_or(const std::string& section,
                                    const std::string& key,
                                    const std::vector<double>& fallback) const;

    const std::string& origin() const { return origin_; }

private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::string origin_;
    std::map<std::string, std::map<std::string, Entry>> sections_;

    const Entry& entry(const std::string& section, const std::string& key) const;
    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           int line, const std::string& what) const;
};

/// Parses a body description: "disc R", "rect W H" or
/// "polygon x1 y1 x2 y2 x3 y3 ...", each optionally followed by
/// "at X Y" (default placement is the origin).  `where` names the config
/// field in error messages.
PlacedBody parse_body(const std::string& text, const std::string& where);

/// Shortest decimal form carrying 12 significant digits; the same input
/// always yields the same bytes, so repeated runs diff clean.
std::string format_number(double x);

/// Writes content atomically enough for our purposes (truncate + write).
/// Throws ConfigError on filesystem failure, naming the path.
void write_text_file(const std::string& path, const std::string& content);

} // namespace qmi::io
