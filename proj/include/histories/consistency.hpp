#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "histories/experiment.hpp"

namespace histories {

/// Weak: Re D(h,h') = 0 off the diagonal. Medium: D(h,h') = 0.
enum class ConsistencyMode { Weak, Medium };

constexpr std::string_view to_string(ConsistencyMode m) { return m == ConsistencyMode::Weak ? "weak" : "medium"; }

/// Relative to the largest diagonal decoherence value.
inline constexpr double kDefaultTolerance = 1e-10;
/// Absolute floor on the tolerance, reached when all diagonal values vanish.
inline constexpr double kToleranceFloor = 1e-14;
/// Below this the detection event is treated as null.
inline constexpr double kNullConditionThreshold = 1e-14;

struct ConsistencyReport {
  ConsistencyMode mode = ConsistencyMode::Medium;
  bool consistent = true;
  double max_violation = 0.0;
  /// Indices into the evaluated history list; set only when inconsistent.
  std::optional<std::pair<std::size_t, std::size_t>> offending_pair;
  double tolerance_used = 0.0;
};

/// D(h, h2) over every pair: entry (h, h2).
template <typename Real>
Matrix<Real> decoherence_matrix(const Vector<Real>& psi, const std::vector<History<Real>>& histories) {
  const auto m = static_cast<Eigen::Index>(histories.size());
  Matrix<Real> branches(psi.size(), m);
  for (Eigen::Index h = 0; h < m; ++h) branches.col(h) = class_operator_apply(histories[static_cast<std::size_t>(h)], psi);
  // (B^dagger B)(h2, h) = <C_h2 psi, C_h psi> = D(h, h2)
  return (branches.adjoint() * branches).transpose();
}

/// Consistency verdict from a precomputed decoherence matrix.
template <typename Real>
ConsistencyReport assess_consistency(const Matrix<Real>& d, ConsistencyMode mode, double tolerance) {
  ConsistencyReport report;
  report.mode = mode;
  double max_diag = 0.0;
  for (Eigen::Index h = 0; h < d.rows(); ++h) max_diag = std::max(max_diag, double(d(h, h).real()));
  report.tolerance_used = std::max(tolerance * max_diag, kToleranceFloor);

  std::pair<std::size_t, std::size_t> worst{0, 0};
  for (Eigen::Index h = 0; h < d.rows(); ++h) {
    for (Eigen::Index h2 = 0; h2 < d.cols(); ++h2) {
      if (h == h2) continue;
      const double v = double(mode == ConsistencyMode::Medium ? std::abs(d(h, h2)) : std::abs(d(h, h2).real()));
      if (v > report.max_violation) {
        report.max_violation = v;
        worst = {static_cast<std::size_t>(h), static_cast<std::size_t>(h2)};
      }
    }
  }
  report.consistent = report.max_violation <= report.tolerance_used;
  if (!report.consistent) report.offending_pair = worst;
  return report;
}

/// General check over any history set built from a pure state.
template <typename Real>
ConsistencyReport check_consistency(const Vector<Real>& psi, const HistorySet<Real>& set, ConsistencyMode mode,
                                    double tolerance = kDefaultTolerance) {
  return assess_consistency(decoherence_matrix(psi, set.histories()), mode, tolerance);
}

/// The slit-then-detector history set of a partition: families
/// {P_G : G in partition} followed by {P_D, 1 - P_D}. History 2g is
/// (group g, detected), 2g+1 is (group g, not detected).
template <typename Real>
HistorySet<Real> partition_history_set(const BasicExperimentModel<Real>& model, const Partition& partition) {
  if (partition.universe() != model.open_paths()) {
    throw Error(ErrorCode::NotExhaustive, "partition does not cover exactly the open paths of the model");
  }
  // Closed paths carry no initial support; folding them into the first group
  // keeps the slit family a resolution of the identity without changing any
  // branch vector.
  const PathSet closed = PathSet::first(static_cast<std::size_t>(model.dim())) - model.open_paths();
  std::vector<Projector<Real>> slits;
  slits.reserve(partition.size());
  for (std::size_t g = 0; g < partition.size(); ++g) {
    slits.push_back(model.group_projector(g == 0 ? partition.groups()[g] | closed : partition.groups()[g]));
  }
  return HistorySet<Real>({std::move(slits), {model.detected(), model.undetected()}});
}

template <typename Real>
ConsistencyReport check_consistency(const BasicExperimentModel<Real>& model, const Partition& partition,
                                    ConsistencyMode mode = ConsistencyMode::Medium,
                                    double tolerance = kDefaultTolerance) {
  return check_consistency(model.psi(), partition_history_set(model, partition), mode, tolerance);
}

struct HistoryProbability {
  PathSet group;
  Branch branch = Branch::Detected;
  double probability = 0.0;

  friend bool operator==(const HistoryProbability&, const HistoryProbability&) = default;
};

/// Diagonal decoherence values of a consistent partition, group-major with
/// the detected branch first, plus the report that certified them.
struct ProbabilityTable {
  std::vector<HistoryProbability> entries;
  ConsistencyReport report;

  double at(PathSet group, Branch branch) const {
    for (const auto& e : entries) {
      if (e.group == group && e.branch == branch) return e.probability;
    }
    throw Error(ErrorCode::NotInPartition, "group " + format_set(group) + " is not a group of the partition");
  }

  double total() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.probability;
    return s;
  }

  /// Sum of p(G, D) over all groups.
  double detected_total() const {
    double s = 0.0;
    for (const auto& e : entries) {
      if (e.branch == Branch::Detected) s += e.probability;
    }
    return s;
  }
};

/// Evaluates a partition's history set. Entries are filled only when the
/// report is consistent; probabilities of inconsistent sets are withheld.
template <typename Real>
ProbabilityTable evaluate_partition(const BasicExperimentModel<Real>& model, const Partition& partition,
                                    ConsistencyMode mode = ConsistencyMode::Medium,
                                    double tolerance = kDefaultTolerance) {
  const auto set = partition_history_set(model, partition);
  const auto d = decoherence_matrix(model.psi(), set.histories());
  ProbabilityTable table;
  table.report = assess_consistency(d, mode, tolerance);
  if (!table.report.consistent) return table;
  table.entries.reserve(set.size());
  for (std::size_t h = 0; h < set.size(); ++h) {
    const auto& label = set.labels()[h];
    table.entries.push_back({partition.groups()[label[0]], label[1] == 0 ? Branch::Detected : Branch::Undetected,
                             double(d(Eigen::Index(h), Eigen::Index(h)).real())});
  }
  return table;
}

/// p(G, branch) = D(h, h) for every history of a consistent partition.
/// Throws InconsistentSet otherwise.
template <typename Real>
ProbabilityTable history_probabilities(const BasicExperimentModel<Real>& model, const Partition& partition,
                                       ConsistencyMode mode = ConsistencyMode::Medium,
                                       double tolerance = kDefaultTolerance) {
  auto table = evaluate_partition(model, partition, mode, tolerance);
  if (!table.report.consistent) {
    throw Error(ErrorCode::InconsistentSet,
                "partition " + format_partition(partition) + " is not " + std::string(to_string(mode)) +
                    "-consistent (max violation " + std::to_string(table.report.max_violation) + ")");
  }
  return table;
}

/// P(event) or P(event | detected) read from a table. `event` must be a
/// union of the partition's groups; the error code for violations is the caller's.
inline double event_probability(const ProbabilityTable& table, const Partition& partition, PathSet event,
                                bool given_detected, ErrorCode not_union = ErrorCode::NotInPartition) {
  if (!partition.is_union_of_groups(event)) {
    throw Error(not_union, "event " + format_set(event) + " is not a union of the groups of " +
                               format_partition(partition));
  }
  double numerator = 0.0;
  for (const auto& e : table.entries) {
    if (!e.group.subset_of(event)) continue;
    if (!given_detected || e.branch == Branch::Detected) numerator += e.probability;
  }
  if (!given_detected) return numerator;
  const double detected = table.detected_total();
  if (detected <= kNullConditionThreshold) {
    throw Error(ErrorCode::ConditionUnsatisfied, "probability of detection is zero; cannot condition on it");
  }
  return numerator / detected;
}

/// p(group | D) within a consistent partition.
template <typename Real>
double conditional_probability(const BasicExperimentModel<Real>& model, const Partition& partition, PathSet group,
                               ConsistencyMode mode = ConsistencyMode::Medium,
                               double tolerance = kDefaultTolerance) {
  return event_probability(history_probabilities(model, partition, mode, tolerance), partition, group, true);
}

}  // namespace histories
