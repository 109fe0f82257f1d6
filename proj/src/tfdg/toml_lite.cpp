#include "toml_lite.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace tfdg {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void bad(int line, const std::string& msg) {
  fail(ErrorCode::bad_data, "toml line " + std::to_string(line) + ": " + msg);
}

// strips a trailing comment that is not inside a quoted string
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

bool parse_number(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

std::string parse_string(const std::string& s, int line) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"')
    bad(line, "expected a quoted string, got '" + s + "'");
  std::string body = s.substr(1, s.size() - 2);
  if (body.find('"') != std::string::npos) bad(line, "embedded quotes are not supported");
  return body;
}

TomlValue parse_array(const std::string& s, int line) {
  std::string body = trim(s.substr(1, s.size() - 2));
  std::vector<std::string> parts;
  std::string cur;
  bool quoted = false;
  for (char c : body) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) parts.push_back(trim(cur));
  if (quoted) bad(line, "unterminated string in array");

  if (parts.empty()) return TomlValue{std::vector<double>{}};
  if (parts.front().front() == '"') {
    std::vector<std::string> out;
    for (const auto& p : parts) out.push_back(parse_string(p, line));
    return TomlValue{out};
  }
  std::vector<double> out;
  for (const auto& p : parts) {
    double v;
    if (!parse_number(p, &v)) bad(line, "array element '" + p + "' is not a number");
    out.push_back(v);
  }
  return TomlValue{out};
}

}  // namespace

TomlTable parse_toml(const std::string& text) {
  TomlTable table;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') bad(line, "section headers are not supported; use flat keys");
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) bad(line, "expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty()) bad(line, "empty key");
    for (char c : key)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
        bad(line, "key '" + key + "' has unsupported characters");
    if (table.count(key)) bad(line, "duplicate key '" + key + "'");
    if (val.empty()) bad(line, "missing value for '" + key + "'");

    TomlValue out;
    if (val == "true") {
      out.v = true;
    } else if (val == "false") {
      out.v = false;
    } else if (val.front() == '"') {
      out.v = parse_string(val, line);
    } else if (val.front() == '[') {
      if (val.back() != ']') bad(line, "arrays must close on the same line");
      out = parse_array(val, line);
    } else {
      double num;
      if (!parse_number(val, &num)) bad(line, "cannot parse value '" + val + "'");
      out.v = num;
    }
    table.emplace(std::move(key), std::move(out));
  }
  return table;
}

TomlTable parse_toml_file(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), ErrorCode::io_failure, "cannot open config file " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_toml(buf.str());
}

}  // namespace tfdg
