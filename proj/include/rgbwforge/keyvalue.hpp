#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace rgbwforge {

/// Flat "key=value" text. '#' starts a comment line; blank lines are ignored;
/// whitespace around keys and values is trimmed. Duplicate keys are a ParseError.
class KeyValues {
 public:
  static KeyValues parse(std::istream& in);
  static KeyValues load(const std::string& path);

  bool contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }
  std::optional<std::string> get(std::string_view key) const;
  std::string require(std::string_view key) const;

  std::optional<double> get_double(std::string_view key) const;
  std::optional<long long> get_integer(std::string_view key) const;

  /// ParseError (with line number) for the first key not in `known`.
  void reject_unknown(std::initializer_list<std::string_view> known) const;

  void set(std::string key, std::string value);
  void write(std::ostream& out) const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };
  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace rgbwforge
