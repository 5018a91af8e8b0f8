#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "histories/path_set.hpp"

namespace histories {

/// A coarse-graining of the open paths into disjoint, non-empty groups.
///
/// Groups are kept in canonical order: each group is a bitmask (members are
/// implicitly ascending) and groups are sorted by their smallest member, so
/// two partitions of the same set compare equal iff they are the same
/// coarse-graining.
class Partition {
 public:
  Partition() = default;

  /// Validates disjointness, non-emptiness and that the groups cover exactly `universe`.
  Partition(std::vector<PathSet> groups, PathSet universe);

  std::span<const PathSet> groups() const { return groups_; }
  std::size_t size() const { return groups_.size(); }
  PathSet universe() const { return universe_; }

  /// True iff `event` is a (possibly empty) union of this partition's groups.
  bool is_union_of_groups(PathSet event) const;

  /// True iff every group of *this lies inside some group of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<PathSet> groups_;
  PathSet universe_;
};

/// Parses "1,2|3": groups separated by '|', 1-based indices separated by ','.
/// The result must cover exactly paths 1..n_paths.
Partition parse_partition(std::string_view text, std::size_t n_paths);

/// Same text format, but the groups must cover exactly `universe` (0-based
/// indices below n_paths). Indices outside the universe raise ClosedPathInGroup.
Partition parse_partition(std::string_view text, std::size_t n_paths, PathSet universe);

/// Canonical text form, inverse of parse_partition.
std::string format_partition(const Partition& partition);

}  // namespace histories
