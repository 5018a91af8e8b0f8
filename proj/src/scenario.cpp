#include "histories/scenario.hpp"

#include <algorithm>
#include <set>

namespace histories {

namespace {

void require_label(const std::string& label, const std::string& what) {
  if (label.empty()) throw Error(ErrorCode::SchemaError, what + " has an empty label");
}

}  // namespace

SlitScenario::SlitScenario(std::string name, std::vector<Slit> slits, Metadata metadata)
    : name_(std::move(name)), slits_(std::move(slits)), metadata_(std::move(metadata)) {
  std::set<std::string> path_labels;
  std::set<std::string> slit_labels;
  for (std::size_t s = 0; s < slits_.size(); ++s) {
    const auto& slit = slits_[s];
    require_label(slit.label, "slit " + std::to_string(s + 1));
    require_finite(slit.amplitude, "amplitude of slit " + slit.label);
    if (!slit_labels.insert(slit.label).second) {
      throw Error(ErrorCode::DuplicateLabel, "slit label '" + slit.label + "' is not unique");
    }

    auto add_path = [&](std::string label, Amplitude a) {
      if (!path_labels.insert(label).second) {
        throw Error(ErrorCode::DuplicateLabel, "path label '" + label + "' is not unique");
      }
      if (paths_.size() == kMaxPaths) {
        throw Error(ErrorCode::TooLarge, "scenario has more than 64 paths");
      }
      if (slit.open) open_.insert(paths_.size());
      paths_.push_back(Path{PathId{paths_.size(), std::move(label)}, a, slit.open, s});
    };

    if (slit.parts.empty()) {
      add_path(slit.label, slit.amplitude);
      continue;
    }
    std::set<std::string> part_labels;
    Amplitude sum{};
    for (const auto& part : slit.parts) {
      require_label(part.label, "a part of slit " + slit.label);
      require_finite(part.amplitude, "amplitude of part " + slit.label + "." + part.label);
      if (!part_labels.insert(part.label).second) {
        throw Error(ErrorCode::DuplicateLabel,
                    "part label '" + part.label + "' repeated in slit " + slit.label);
      }
      sum += part.amplitude;
    }
    if (std::abs(sum.real() - slit.amplitude.real()) > kPartSumTolerance ||
        std::abs(sum.imag() - slit.amplitude.imag()) > kPartSumTolerance) {
      throw Error(ErrorCode::PartSumMismatch,
                  "parts of slit " + slit.label + " do not sum to the slit amplitude");
    }
    for (const auto& part : slit.parts) add_path(slit.label + "." + part.label, part.amplitude);
  }
}

std::vector<Amplitude> SlitScenario::amplitudes() const {
  std::vector<Amplitude> out;
  out.reserve(paths_.size());
  for (const auto& p : paths_) out.push_back(p.amplitude);
  return out;
}

std::size_t SlitScenario::path_index(std::string_view label) const {
  auto it = std::find_if(paths_.begin(), paths_.end(),
                         [&](const Path& p) { return p.id.label == label; });
  if (it == paths_.end()) throw Error(ErrorCode::BadIndex, "no path labeled '" + std::string(label) + "'");
  return it->id.index;
}

Amplitude group_amplitude(const SlitScenario& scenario, PathSet group) {
  if (!group.subset_of(scenario.all_paths())) {
    throw Error(ErrorCode::BadIndex, "group " + format_set(group) + " names a path outside the scenario");
  }
  if (!group.subset_of(scenario.open_paths())) {
    throw Error(ErrorCode::ClosedPathInGroup,
                "group " + format_set(group) + " contains closed path(s) " +
                    format_set(group - scenario.open_paths()));
  }
  Amplitude sum{};
  for (auto i : group.members()) sum += scenario.paths()[i].amplitude;
  return sum;
}

double counting_rate(const SlitScenario& scenario, PathSet open_mask) {
  if (open_mask.empty()) throw Error(ErrorCode::EmptyMask, "counting rate needs at least one open path");
  if (!open_mask.subset_of(scenario.all_paths())) {
    throw Error(ErrorCode::BadIndex, "mask " + format_set(open_mask) + " names a path outside the scenario");
  }
  Amplitude sum{};
  for (auto i : open_mask.members()) sum += scenario.paths()[i].amplitude;
  return std::norm(sum);
}

SlitScenario refine_slit(const SlitScenario& scenario, std::string_view slit_label,
                         std::vector<SlitPart> parts) {
  std::vector<Slit> slits(scenario.slits().begin(), scenario.slits().end());
  auto it = std::find_if(slits.begin(), slits.end(), [&](const Slit& s) { return s.label == slit_label; });
  if (it == slits.end()) throw Error(ErrorCode::UnknownSlit, "no slit labeled '" + std::string(slit_label) + "'");
  if (!it->parts.empty()) throw Error(ErrorCode::AlreadyRefined, "slit " + it->label + " already has parts");
  if (parts.empty()) throw Error(ErrorCode::SchemaError, "refinement of slit " + it->label + " needs at least one part");
  it->parts = std::move(parts);
  return SlitScenario(scenario.name(), std::move(slits), scenario.metadata());
}

}  // namespace histories
