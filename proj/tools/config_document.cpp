#include "config_document.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

#include "dqsci/error.hpp"

namespace dqsci::cli {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::vector<std::string> split_dotted(std::string_view key, std::size_t line) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const auto part = trim(key.substr(start, dot == std::string_view::npos ? dot : dot - start));
    if (part.empty() || !std::all_of(part.begin(), part.end(), bare_key_char))
      throw ParseError("invalid key '" + std::string(key) + "'", line);
    parts.emplace_back(part);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

// Position of the first '#' that is not inside a string, or npos.
std::size_t comment_start(std::string_view s) {
  char quote = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (quote == '"' && c == '\\') ++i;
      else if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return i;
    }
  }
  return std::string_view::npos;
}

std::optional<double> parse_float(std::string_view s) {
  std::string digits;
  for (char c : s)
    if (c != '_') digits.push_back(c);
  std::string_view v = digits;
  bool negative = false;
  if (!v.empty() && (v.front() == '+' || v.front() == '-')) {
    negative = v.front() == '-';
    v.remove_prefix(1);
  }
  if (v.empty() || v.front() == '+' || v.front() == '-') return std::nullopt;
  double x = 0.0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || end != v.data() + v.size()) return std::nullopt;
  return negative ? -x : x;
}

std::optional<std::int64_t> parse_integer(std::string_view s) {
  std::string digits;
  for (char c : s)
    if (c != '_') digits.push_back(c);
  std::string_view v = digits;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  if (v.empty()) return std::nullopt;
  std::int64_t x = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || end != v.data() + v.size()) return std::nullopt;
  return x;
}

std::string unescape(std::string_view body, std::size_t line) {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] != '\\') {
      out.push_back(body[i]);
      continue;
    }
    if (++i == body.size()) throw ParseError("dangling escape in string", line);
    switch (body[i]) {
      case '\\': out.push_back('\\'); break;
      case '"': out.push_back('"'); break;
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      default: throw ParseError(std::string("unsupported escape \\") + body[i], line);
    }
  }
  return out;
}

json parse_value(std::string_view text, std::size_t line) {
  if (text.empty()) throw ParseError("missing value", line);
  const char q = text.front();
  if (q == '"' || q == '\'') {
    if (text.size() < 2 || text.back() != q) throw ParseError("unterminated string", line);
    if (text.substr(0, 3) == "\"\"\"" || text.substr(0, 3) == "'''")
      throw ParseError("multi-line strings are not supported", line);
    const auto body = text.substr(1, text.size() - 2);
    if (q == '\'') {
      if (body.find('\'') != std::string_view::npos) throw ParseError("stray quote in string", line);
      return std::string(body);
    }
    return unescape(body, line);
  }
  if (q == '[' || q == '{') throw ParseError("arrays and inline tables are not supported", line);
  if (text == "true") return true;
  if (text == "false") return false;
  if (auto i = parse_integer(text)) return *i;
  if (auto x = parse_float(text)) return *x;
  throw ParseError("cannot read value '" + std::string(text) + "'", line);
}

void insert(json& doc, const std::vector<std::string>& path, json value, std::size_t line) {
  json* node = &doc;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    json& next = (*node)[path[i]];
    if (next.is_null()) next = json::object();
    if (!next.is_object()) throw ParseError("key '" + path[i] + "' is not a table", line);
    node = &next;
  }
  if (node->contains(path.back())) throw ParseError("duplicate key '" + path.back() + "'", line);
  (*node)[path.back()] = std::move(value);
}

enum class Kind { String, Integer, Unsigned, Float };

// Key table derived from the serialized default configuration, so every key
// the echo writes is accepted back.
const std::map<std::string, Kind>& key_kinds() {
  static const std::map<std::string, Kind> table = [] {
    pipeline::PipelineConfig defaults;
    defaults.afqmc = afqmc::AfqmcConfig{};
    std::map<std::string, Kind> out;
    const json flat = pipeline::to_json(defaults).flatten();
    for (const auto& [key, value] : flat.items()) {
      std::string dotted = key.substr(1);
      std::replace(dotted.begin(), dotted.end(), '/', '.');
      Kind k = Kind::Float;
      if (value.is_string()) k = Kind::String;
      else if (value.is_number_unsigned()) k = Kind::Unsigned;
      else if (value.is_number_integer()) k = Kind::Integer;
      out.emplace(dotted, k);
    }
    return out;
  }();
  return table;
}

bool matches(Kind kind, const json& v) {
  switch (kind) {
    case Kind::String: return v.is_string();
    case Kind::Integer: return v.is_number_integer();
    case Kind::Unsigned: return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    case Kind::Float: return v.is_number() || v.is_null();
  }
  return false;
}

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::String: return "a string";
    case Kind::Integer: return "an integer";
    case Kind::Unsigned: return "a non-negative integer";
    case Kind::Float: return "a number";
  }
  return "";
}

json::json_pointer pointer_of(const std::string& dotted) {
  std::string p = "/" + dotted;
  std::replace(p.begin(), p.end(), '.', '/');
  return json::json_pointer(p);
}

}  // namespace

json parse_config_document(std::istream& in) {
  json doc = json::object();
  std::vector<std::string> section;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (auto c = comment_start(text); c != std::string_view::npos) text = text.substr(0, c);
    text = trim(text);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.substr(0, 2) == "[[") throw ParseError("arrays of tables are not supported", line);
      if (text.back() != ']') throw ParseError("unterminated section header", line);
      section = split_dotted(text.substr(1, text.size() - 2), line);
      json* node = &doc;
      for (const auto& part : section) {
        json& next = (*node)[part];
        if (next.is_null()) next = json::object();
        if (!next.is_object()) throw ParseError("key '" + part + "' is not a table", line);
        node = &next;
      }
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line);
    auto path = section;
    for (auto& part : split_dotted(text.substr(0, eq), line)) path.push_back(std::move(part));
    insert(doc, path, parse_value(trim(text.substr(eq + 1)), line), line);
  }
  return doc;
}

json load_config_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  try {
    return parse_config_document(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& [key, kind] : key_kinds()) out.push_back(key);
  return out;
}

void apply_override(json& doc, const std::string& key, const std::string& text) {
  const auto it = key_kinds().find(key);
  require(it != key_kinds().end(), "unknown configuration key '" + key + "'");
  json value;
  if (it->second == Kind::String) {
    value = text;
  } else if (it->second == Kind::Float) {
    const auto x = parse_float(trim(text));
    require(x.has_value(), key + " expects a number, got '" + text + "'");
    value = *x;
  } else {
    const auto i = parse_integer(trim(text));
    require(i.has_value(), key + " expects an integer, got '" + text + "'");
    value = *i;
  }
  require(matches(it->second, value), key + " expects " + kind_name(it->second));
  doc[pointer_of(key)] = value;
}

pipeline::PipelineConfig config_from_document(const json& doc) {
  require(doc.is_object(), "configuration document must be a table");
  const json flat = doc.flatten();
  for (const auto& [pointer, value] : flat.items()) {
    if (pointer.empty()) continue;
    std::string dotted = pointer.substr(1);
    std::replace(dotted.begin(), dotted.end(), '/', '.');
    const bool empty_section =
        value.is_null() && std::any_of(key_kinds().begin(), key_kinds().end(), [&](const auto& kv) {
          return kv.first.rfind(dotted + ".", 0) == 0;
        });
    if (empty_section) continue;
    const auto it = key_kinds().find(dotted);
    require(it != key_kinds().end(), "unknown configuration key '" + dotted + "'");
    require(matches(it->second, value), dotted + " expects " + kind_name(it->second));
  }
  auto cfg = pipeline::config_from_json(doc);
  if (cfg.refinement == pipeline::Refinement::QsciAfqmc && !cfg.afqmc) cfg.afqmc = afqmc::AfqmcConfig{};
  return cfg;
}

}  // namespace dqsci::cli
