#include "qmi/io.hpp"

#include "qmi/errors.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qmi::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double to_double(const std::string& tok, const std::string& where) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ConfigError(where + ": '" + tok + "' is not a number");
    }
    if (used != tok.size())
        throw ConfigError(where + ": '" + tok + "' is not a number");
    return v;
}

} // namespace

ConfigFile ConfigFile::parse_string(const std::string& text,
                                    const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": empty section name");
            cfg.sections_[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": entry before any [section] header");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": empty key");
        cfg.sections_[section][key] = Entry{trim(line.substr(eq + 1)), line_no};
    }
    return cfg;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

bool ConfigFile::has_section(const std::string& section) const {
    return sections_.count(section) != 0;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) != 0;
}

void ConfigFile::fail(const std::string& section, const std::string& key,
                      int line, const std::string& what) const {
    std::string msg = origin_;
    if (line > 0) msg += ":" + std::to_string(line);
    msg += ": [" + section + "] " + key + ": " + what;
    throw ConfigError(msg);
}

const ConfigFile::Entry& ConfigFile::entry(const std::string& section,
                                           const std::string& key) const {
    const auto sec = sections_.find(section);
    if (sec == sections_.end())
        fail(section, key, 0, "missing section [" + section + "]");
    const auto it = sec->second.find(key);
    if (it == sec->second.end()) fail(section, key, 0, "missing required key");
    return it->second;
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key) const {
    return entry(section, key).value;
}

std::string ConfigFile::get_string_or(const std::string& section,
                                      const std::string& key,
                                      const std::string& fallback) const {
    return has(section, key) ? entry(section, key).value : fallback;
}

double ConfigFile::get_double(const std::string& section,
                              const std::string& key) const {
    const Entry& e = entry(section, key);
    try {
        return to_double(e.value, key);
    } catch (const ConfigError& err) {
        fail(section, key, e.line, err.what());
    }
}

double ConfigFile::get_double_or(const std::string& section,
                                 const std::string& key,
                                 double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

int ConfigFile::get_int_or(const std::string& section, const std::string& key,
                           int fallback) const {
    if (!has(section, key)) return fallback;
    const Entry& e = entry(section, key);
    const double v = get_double(section, key);
    if (v != static_cast<double>(static_cast<int>(v)))
        fail(section, key, e.line, "expected an integer");
    return static_cast<int>(v);
}

std::uint64_t ConfigFile::get_seed_or(const std::string& section,
                                      const std::string& key,
                                      std::uint64_t fallback) const {
    if (!has(section, key)) return fallback;
    const Entry& e = entry(section, key);
    try {
        return std::stoull(e.value);
    } catch (const std::exception&) {
        fail(section, key, e.line, "expected a non-negative integer seed");
    }
}

bool ConfigFile::get_bool_or(const std::string& section, const std::string& key,
                             bool fallback) const {
    if (!has(section, key)) return fallback;
    const Entry& e = entry(section, key);
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    fail(section, key, e.line, "expected true or false");
}

std::vector<double> ConfigFile::get_list(const std::string& section,
                                         const std::string& key) const {
    const Entry& e = entry(section, key);
    const std::vector<std::string> toks = split_ws(e.value);
    if (toks.empty()) fail(section, key, e.line, "list is empty");
    std::vector<double> out;
    out.reserve(toks.size());
    for (const std::string& t : toks) {
        try {
            out.push_back(to_double(t, key));
        } catch (const ConfigError& err) {
            fail(section, key, e.line, err.what());
        }
    }
    return out;
}

std::vector<double> ConfigFile::get_list_or(
    const std::string& section, const std::string& key,
    const std::vector<double>& fallback) const {
    return has(section, key) ? get_list(section, key) : fallback;
}

PlacedBody parse_body(const std::string& text, const std::string& where) {
    std::vector<std::string> toks = split_ws(text);
    if (toks.empty()) throw ConfigError(where + ": empty body description");

    Vec2 center{0.0, 0.0};
    if (toks.size() >= 3 && toks[toks.size() - 3] == "at") {
        center.x = to_double(toks[toks.size() - 2], where);
        center.y = to_double(toks[toks.size() - 1], where);
        toks.resize(toks.size() - 3);
    }
    if (toks.empty()) throw ConfigError(where + ": missing shape name");

    const std::string& kind = toks[0];
    std::vector<double> nums;
    for (std::size_t i = 1; i < toks.size(); ++i)
        nums.push_back(to_double(toks[i], where));

    BodyShape shape;
    if (kind == "disc") {
        if (nums.size() != 1)
            throw ConfigError(where + ": disc takes exactly one radius");
        shape = Disc{nums[0]};
    } else if (kind == "rect") {
        if (nums.size() != 2)
            throw ConfigError(where + ": rect takes width and height");
        shape = Rectangle{nums[0], nums[1]};
    } else if (kind == "polygon") {
        if (nums.size() < 6 || nums.size() % 2 != 0)
            throw ConfigError(where +
                              ": polygon takes at least three x y pairs");
        Polygon poly;
        for (std::size_t i = 0; i < nums.size(); i += 2)
            poly.vertices.push_back({nums[i], nums[i + 1]});
        shape = poly;
    } else {
        throw ConfigError(where + ": unknown shape '" + kind +
                          "' (expected disc, rect or polygon)");
    }
    try {
        validate_shape(shape);
    } catch (const InvalidArgumentError& err) {
        throw ConfigError(where + ": " + err.what());
    }
    return PlacedBody{shape, center};
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

} // namespace qmi::io
