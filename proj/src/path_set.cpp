#include "histories/path_set.hpp"

#include <charconv>

#include "text.hpp"

namespace histories {

std::string format_indices(PathSet set) {
  std::string out;
  for (auto i : set.members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i + 1);
  }
  return out;
}

std::string format_set(PathSet set) { return "{" + format_indices(set) + "}"; }

PathSet parse_path_set(std::string_view text, std::size_t n_paths) {
  PathSet set;
  auto items = detail::split(text, ',');
  if (items.size() == 1 && detail::trim(items.front()).empty()) {
    throw Error(ErrorCode::EmptyMask, "no path indices given");
  }
  for (auto item : items) {
    auto index = detail::parse_index(item, n_paths);
    if (set.contains(index)) {
      throw Error(ErrorCode::OverlappingGroups, "path " + std::to_string(index + 1) + " listed twice");
    }
    set.insert(index);
  }
  return set;
}

}  // namespace histories
