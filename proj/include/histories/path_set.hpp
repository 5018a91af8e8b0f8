#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "histories/error.hpp"

namespace histories {

/// Largest number of flattened paths a scenario may carry; path sets are 64-bit masks.
inline constexpr std::size_t kMaxPaths = 64;

/// A path of a scenario: dense 0-based index plus its unique label ("S1", "S2.upper").
struct PathId {
  std::size_t index = 0;
  std::string label;

  friend bool operator==(const PathId&, const PathId&) = default;
};

/// Set of 0-based path indices, stored as a bitmask.
class PathSet {
 public:
  constexpr PathSet() = default;
  constexpr explicit PathSet(std::uint64_t bits) : bits_(bits) {}

  static PathSet of(std::initializer_list<std::size_t> indices) {
    PathSet s;
    for (auto i : indices) s.insert(i);
    return s;
  }

  /// {0, ..., n-1}
  static PathSet first(std::size_t n) {
    if (n > kMaxPaths) throw Error(ErrorCode::TooLarge, "at most 64 paths are supported");
    return PathSet(n == kMaxPaths ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  void insert(std::size_t index) {
    if (index >= kMaxPaths) throw Error(ErrorCode::BadIndex, "path index " + std::to_string(index) + " exceeds 64-path limit");
    bits_ |= std::uint64_t{1} << index;
  }

  constexpr bool contains(std::size_t index) const {
    return index < kMaxPaths && ((bits_ >> index) & 1U) != 0;
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint64_t bits() const { return bits_; }

  /// Smallest member; undefined for the empty set.
  constexpr std::size_t lowest() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

  constexpr bool subset_of(PathSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool disjoint(PathSet other) const { return (bits_ & other.bits_) == 0; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (auto b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  constexpr PathSet operator|(PathSet o) const { return PathSet(bits_ | o.bits_); }
  constexpr PathSet operator&(PathSet o) const { return PathSet(bits_ & o.bits_); }
  constexpr PathSet operator-(PathSet o) const { return PathSet(bits_ & ~o.bits_); }
  PathSet& operator|=(PathSet o) { bits_ |= o.bits_; return *this; }

  friend constexpr bool operator==(PathSet, PathSet) = default;
  friend constexpr auto operator<=>(PathSet, PathSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// "1,2" with 1-based indices; the empty set formats as "".
std::string format_indices(PathSet set);

/// "{1,2}"
std::string format_set(PathSet set);

/// Parses "1,3" (1-based) into a set. Indices must lie in 1..n_paths.
PathSet parse_path_set(std::string_view text, std::size_t n_paths);

}  // namespace histories
