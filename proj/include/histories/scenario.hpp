#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "histories/amplitude.hpp"
#include "histories/path_set.hpp"

namespace histories {

/// Absolute tolerance on sum(part amplitudes) == slit amplitude.
inline constexpr double kPartSumTolerance = 1e-12;

struct SlitPart {
  std::string label;
  Amplitude amplitude;

  friend bool operator==(const SlitPart&, const SlitPart&) = default;
};

/// One slit of the wall. A slit with parts contributes one path per part;
/// otherwise it is a single path. Closed slits keep their paths (zero initial
/// support) so indices do not move when a slit is toggled.
struct Slit {
  std::string label;
  Amplitude amplitude;
  bool open = true;
  std::vector<SlitPart> parts;

  friend bool operator==(const Slit&, const Slit&) = default;
};

/// A flattened path: label is "S2" or "S2.upper" for a part.
struct Path {
  PathId id;
  Amplitude amplitude;
  bool open = true;
  std::size_t slit = 0;
};

using Metadata = std::map<std::string, std::string>;

class SlitScenario {
 public:
  SlitScenario() = default;

  /// Validates labels, finiteness and part sums, then flattens the slits to paths.
  SlitScenario(std::string name, std::vector<Slit> slits, Metadata metadata = {});

  const std::string& name() const { return name_; }
  std::span<const Slit> slits() const { return slits_; }
  std::span<const Path> paths() const { return paths_; }
  const Metadata& metadata() const { return metadata_; }

  std::size_t path_count() const { return paths_.size(); }
  PathSet open_paths() const { return open_; }
  PathSet all_paths() const { return PathSet::first(paths_.size()); }

  /// Amplitudes of all flattened paths, in index order.
  std::vector<Amplitude> amplitudes() const;

  /// Index of the path with this label; throws BadIndex if absent.
  std::size_t path_index(std::string_view label) const;

 private:
  std::string name_;
  std::vector<Slit> slits_;
  std::vector<Path> paths_;
  Metadata metadata_;
  PathSet open_;
};

/// A_G: sum of the amplitudes of the paths in `group`. Every path must be open.
Amplitude group_amplitude(const SlitScenario& scenario, PathSet group);

/// |sum of A_i over mask|^2: the relative counting rate with exactly the
/// masked paths open. Closed paths may be named; the rate is hypothetical.
double counting_rate(const SlitScenario& scenario, PathSet open_mask);

/// Replaces a slit by its parts. Part amplitudes must sum to the slit amplitude.
SlitScenario refine_slit(const SlitScenario& scenario, std::string_view slit_label,
                         std::vector<SlitPart> parts);

}  // namespace histories
