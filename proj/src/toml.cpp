#include "geoclust/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace geoclust {

const std::string& TomlValue::as_string() const {
    if (!is_string()) throw InvalidInput("config value is not a string");
    return std::get<std::string>(v);
}

long long TomlValue::as_int() const {
    if (!is_int()) throw InvalidInput("config value is not an integer");
    return std::get<long long>(v);
}

double TomlValue::as_float() const {
    if (is_int()) return static_cast<double>(std::get<long long>(v));
    if (!is_float()) throw InvalidInput("config value is not a number");
    return std::get<double>(v);
}

bool TomlValue::as_bool() const {
    if (!is_bool()) throw InvalidInput("config value is not a boolean");
    return std::get<bool>(v);
}

const TomlValue::Array& TomlValue::as_array() const {
    if (!is_array()) throw InvalidInput("config value is not an array");
    return std::get<Array>(v);
}

const TomlValue& TomlTable::at(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) throw InvalidInput("missing config key: " + key);
    return it->second;
}

std::string TomlTable::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? at(key).as_string() : fallback;
}

long long TomlTable::get_int(const std::string& key, long long fallback) const {
    return has(key) ? at(key).as_int() : fallback;
}

double TomlTable::get_float(const std::string& key, double fallback) const {
    return has(key) ? at(key).as_float() : fallback;
}

bool TomlTable::get_bool(const std::string& key, bool fallback) const {
    return has(key) ? at(key).as_bool() : fallback;
}

namespace {

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

/// Removes a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

TomlValue parse_scalar(const std::string& raw, std::size_t lineno) {
    const std::string text = strip(raw);
    if (text.empty()) throw InvalidInput("toml:" + std::to_string(lineno) + ": empty value");
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"') {
            throw InvalidInput("toml:" + std::to_string(lineno) + ": unterminated string");
        }
        return TomlValue{text.substr(1, text.size() - 2)};
    }
    if (text == "true") return TomlValue{true};
    if (text == "false") return TomlValue{false};
    // integer first, then float
    {
        long long iv;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), iv);
        if (ec == std::errc() && p == text.data() + text.size()) return TomlValue{iv};
    }
    {
        double fv;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), fv);
        if (ec == std::errc() && p == text.data() + text.size()) return TomlValue{fv};
    }
    throw InvalidInput("toml:" + std::to_string(lineno) + ": cannot parse value '" + text + "'");
}

TomlValue parse_value(const std::string& raw, std::size_t lineno) {
    const std::string text = strip(raw);
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') {
            throw InvalidInput("toml:" + std::to_string(lineno) + ": unterminated array");
        }
        TomlValue::Array arr;
        std::string inner = text.substr(1, text.size() - 2);
        std::string cell;
        bool in_string = false;
        for (char ch : inner) {
            if (ch == '"') in_string = !in_string;
            if (ch == ',' && !in_string) {
                if (!strip(cell).empty()) arr.push_back(parse_scalar(cell, lineno));
                cell.clear();
            } else {
                cell += ch;
            }
        }
        if (!strip(cell).empty()) arr.push_back(parse_scalar(cell, lineno));
        return TomlValue{std::move(arr)};
    }
    return parse_scalar(text, lineno);
}

}  // namespace

TomlDocument parse_toml(const std::string& text) {
    TomlDocument doc;
    TomlTable* current = &doc.root;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            const bool array = line.size() > 1 && line[1] == '[';
            const std::string close = array ? "]]" : "]";
            if (line.substr(line.size() - close.size()) != close) {
                throw InvalidInput("toml:" + std::to_string(lineno) + ": bad table header");
            }
            const std::string name =
                strip(line.substr(array ? 2 : 1, line.size() - 2 * (array ? 2 : 1)));
            if (name.empty()) {
                throw InvalidInput("toml:" + std::to_string(lineno) + ": empty table name");
            }
            if (array) {
                doc.table_arrays[name].emplace_back();
                current = &doc.table_arrays[name].back();
            } else {
                current = &doc.tables[name];
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput("toml:" + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = strip(line.substr(0, eq));
        if (key.empty()) throw InvalidInput("toml:" + std::to_string(lineno) + ": empty key");
        current->values[key] = parse_value(line.substr(eq + 1), lineno);
    }
    return doc;
}

TomlDocument parse_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_toml(ss.str());
}

}  // namespace geoclust
