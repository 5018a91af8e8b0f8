#include "histories/partition.hpp"

#include <algorithm>

#include "text.hpp"

namespace histories {

Partition::Partition(std::vector<PathSet> groups, PathSet universe)
    : groups_(std::move(groups)), universe_(universe) {
  PathSet seen;
  for (auto g : groups_) {
    if (g.empty()) throw Error(ErrorCode::BadIndex, "partition contains an empty group");
    if (!g.disjoint(seen)) {
      throw Error(ErrorCode::OverlappingGroups,
                  "path(s) " + format_set(g & seen) + " appear in more than one group");
    }
    seen |= g;
  }
  if (!seen.subset_of(universe_)) {
    throw Error(ErrorCode::ClosedPathInGroup,
                "path(s) " + format_set(seen - universe_) + " are not open paths");
  }
  if (seen != universe_) {
    throw Error(ErrorCode::NotExhaustive, "path(s) " + format_set(universe_ - seen) + " not covered");
  }
  std::sort(groups_.begin(), groups_.end(),
            [](PathSet a, PathSet b) { return a.lowest() < b.lowest(); });
}

bool Partition::is_union_of_groups(PathSet event) const {
  PathSet covered;
  for (auto g : groups_) {
    if (g.subset_of(event)) {
      covered |= g;
    } else if (!g.disjoint(event)) {
      return false;
    }
  }
  return covered == event;
}

bool Partition::refines(const Partition& coarser) const {
  if (universe_ != coarser.universe_) return false;
  return std::all_of(groups_.begin(), groups_.end(), [&](PathSet g) {
    return std::any_of(coarser.groups_.begin(), coarser.groups_.end(),
                       [g](PathSet c) { return g.subset_of(c); });
  });
}

Partition parse_partition(std::string_view text, std::size_t n_paths) {
  return parse_partition(text, n_paths, PathSet::first(n_paths));
}

Partition parse_partition(std::string_view text, std::size_t n_paths, PathSet universe) {
  std::vector<PathSet> groups;
  PathSet seen;
  for (auto group_text : detail::split(text, '|')) {
    if (detail::trim(group_text).empty()) {
      throw Error(ErrorCode::BadIndex, "empty group in partition '" + std::string(text) + "'");
    }
    PathSet group;
    for (auto item : detail::split(group_text, ',')) {
      auto index = detail::parse_index(item, n_paths);
      if (group.contains(index) || seen.contains(index)) {
        throw Error(ErrorCode::OverlappingGroups,
                    "path " + std::to_string(index + 1) + " appears in more than one group");
      }
      group.insert(index);
    }
    seen |= group;
    groups.push_back(group);
  }
  return Partition(std::move(groups), universe);
}

std::string format_partition(const Partition& partition) {
  std::string out;
  for (auto g : partition.groups()) {
    if (!out.empty()) out += '|';
    out += format_indices(g);
  }
  return out;
}

}  // namespace histories
