#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace tfdg {

// flat key = value files: strings, numbers, booleans, and one-level arrays
// of numbers or strings; # comments; no section headers
struct TomlValue {
  std::variant<bool, double, std::string, std::vector<double>, std::vector<std::string>> v;

  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_number() const { return std::holds_alternative<double>(v); }
  bool is_string() const { return std::holds_alternative<std::string>(v); }
  bool is_number_array() const { return std::holds_alternative<std::vector<double>>(v); }
  bool is_string_array() const { return std::holds_alternative<std::vector<std::string>>(v); }

  bool as_bool() const { return std::get<bool>(v); }
  double as_number() const { return std::get<double>(v); }
  const std::string& as_string() const { return std::get<std::string>(v); }
  const std::vector<double>& as_number_array() const { return std::get<std::vector<double>>(v); }
  const std::vector<std::string>& as_string_array() const {
    return std::get<std::vector<std::string>>(v);
  }
};

using TomlTable = std::map<std::string, TomlValue>;

TomlTable parse_toml(const std::string& text);
TomlTable parse_toml_file(const std::string& path);

}  // namespace tfdg
