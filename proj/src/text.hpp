#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "histories/error.hpp"

namespace histories::detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

/// 1-based text index -> 0-based index below n.
inline std::size_t parse_index(std::string_view item, std::size_t n) {
  item = trim(item);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
  if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
    throw Error(ErrorCode::BadIndex, "cannot parse path index '" + std::string(item) + "'");
  }
  if (value < 1 || value > n) {
    throw Error(ErrorCode::BadIndex,
                "path index " + std::to_string(value) + " outside 1.." + std::to_string(n));
  }
  return value - 1;
}

}  // namespace histories::detail
