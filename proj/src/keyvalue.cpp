#include "rgbwforge/keyvalue.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "rgbwforge/error.hpp"
#include "text_util.hpp"

namespace rgbwforge {

KeyValues KeyValues::parse(std::istream& in) {
  KeyValues kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
    const auto key = text::trim(body.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line_no);
    const auto value = text::trim(body.substr(eq + 1));
    if (!kv.entries_.emplace(std::string(key), Entry{std::string(value), line_no}).second) {
      throw ParseError("duplicate key '" + std::string(key) + "'", line_no);
    }
  }
  return kv;
}

KeyValues KeyValues::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return parse(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::optional<std::string> KeyValues::get(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

std::string KeyValues::require(std::string_view key) const {
  auto v = get(key);
  if (!v) throw ParseError("missing key '" + std::string(key) + "'");
  return *v;
}

std::optional<double> KeyValues::get_double(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  const auto v = text::to_double(it->second.value);
  if (!v) throw ParseError("key '" + std::string(key) + "' is not a number", it->second.line);
  return v;
}

std::optional<long long> KeyValues::get_integer(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  const auto v = text::to_integer<long long>(it->second.value);
  if (!v) throw ParseError("key '" + std::string(key) + "' is not an integer", it->second.line);
  return v;
}

void KeyValues::reject_unknown(std::initializer_list<std::string_view> known) const {
  for (const auto& [key, entry] : entries_) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError("unknown key '" + key + "'", entry.line);
    }
  }
}

void KeyValues::set(std::string key, std::string value) {
  entries_[std::move(key)] = Entry{std::move(value), 0};
}

void KeyValues::write(std::ostream& out) const {
  for (const auto& [key, entry] : entries_) out << key << '=' << entry.value << '\n';
}

}  // namespace rgbwforge
