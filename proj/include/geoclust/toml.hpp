#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "geoclust/errors.hpp"

namespace geoclust {

/// Minimal TOML subset for experiment configs: top-level keys, [tables],
/// [[arrays of tables]], and scalar / flat-array values (string, integer,
/// float, boolean). Enough for the config schema; not a general TOML parser.
class TomlValue {
public:
    using Array = std::vector<TomlValue>;
    std::variant<std::string, long long, double, bool, Array> v;

    bool is_string() const { return std::holds_alternative<std::string>(v); }
    bool is_int() const { return std::holds_alternative<long long>(v); }
    bool is_float() const { return std::holds_alternative<double>(v); }
    bool is_bool() const { return std::holds_alternative<bool>(v); }
    bool is_array() const { return std::holds_alternative<Array>(v); }

    const std::string& as_string() const;
    long long as_int() const;
    double as_float() const;  // accepts integers too
    bool as_bool() const;
    const Array& as_array() const;
};

struct TomlTable {
    std::map<std::string, TomlValue> values;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    const TomlValue& at(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    double get_float(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
};

struct TomlDocument {
    TomlTable root;
    std::map<std::string, TomlTable> tables;                  // [name]
    std::map<std::string, std::vector<TomlTable>> table_arrays;  // [[name]]
};

TomlDocument parse_toml(const std::string& text);
TomlDocument parse_toml_file(const std::string& path);

}  // namespace geoclust
