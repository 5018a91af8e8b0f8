#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "histories/consistency.hpp"

namespace histories {

inline constexpr std::size_t kDefaultMaxPaths = 12;
/// p >= 1 - threshold counts as certain, p <= threshold as impossible.
inline constexpr double kCertaintyThreshold = 1e-10;

/// Streams every set partition of a path universe exactly once, in
/// restricted-growth-string order (canonical order: {123}, {12|3}, {13|2}, ...).
///
/// Optionally the labels of the first `prefix.size()` members are pinned, in
/// which case only partitions extending that prefix are produced. Pinned
/// prefixes of equal length tile the full enumeration in prefix order, which
/// is how work is split across threads.
class PartitionStream {
 public:
  explicit PartitionStream(PathSet universe, std::vector<std::uint8_t> prefix = {});

  /// Next partition, or nullopt once exhausted.
  std::optional<Partition> next();

  /// Restricted growth string of the partition last returned by next().
  const std::vector<std::uint8_t>& labels() const { return labels_; }
  /// Path index of each position in labels().
  const std::vector<std::size_t>& members() const { return members_; }

 private:
  bool advance();

  PathSet universe_;
  std::vector<std::size_t> members_;
  std::vector<std::uint8_t> labels_;
  std::vector<std::uint8_t> prefix_max_;
  std::size_t pinned_ = 0;
  bool started_ = false;
  bool done_ = false;
};

/// All partitions of {1..n}. Throws TooLarge above `max_n`.
PartitionStream enumerate_partitions(std::size_t n, std::size_t max_n = kDefaultMaxPaths);

/// n-th Bell number (exact for n <= 25).
std::uint64_t bell_number(std::size_t n);

/// A consistent partition together with its probability table. Statements
/// about path events are only meaningful relative to one of these.
class Framework {
 public:
  /// Throws InconsistentSet if the partition fails the check.
  Framework(const ExperimentModel& model, Partition partition, ConsistencyMode mode,
            double tolerance = kDefaultTolerance);

  const Partition& partition() const { return partition_; }
  ConsistencyMode mode() const { return mode_; }
  double tolerance() const { return tolerance_; }
  const ProbabilityTable& probabilities() const { return table_; }
  const ConsistencyReport& report() const { return table_.report; }

 private:
  friend struct FrameworkAccess;
  Framework(Partition partition, ConsistencyMode mode, double tolerance, ProbabilityTable table)
      : partition_(std::move(partition)), mode_(mode), tolerance_(tolerance), table_(std::move(table)) {}

  Partition partition_;
  ConsistencyMode mode_;
  double tolerance_;
  ProbabilityTable table_;
};

struct EnumerationOptions {
  std::size_t max_paths = kDefaultMaxPaths;
  /// Reject partitions whose analytic off-diagonal terms clearly exceed the
  /// tolerance before building the explicit model check.
  bool prune = true;
  unsigned workers = 1;
};

std::vector<Framework> enumerate_consistent_frameworks(const ExperimentModel& model, ConsistencyMode mode,
                                                       double tolerance = kDefaultTolerance,
                                                       const EnumerationOptions& options = {});

/// The only sanctioned way to read a probability: P(event) or
/// P(event | detected) inside one framework. Throws NotInFramework unless the
/// event is a union of the framework's groups.
double query_event(const Framework& framework, PathSet event, bool given_detected);

/// The common context of two frameworks: the same one, or the finer when one
/// refines the other. Throws MeaninglessCombination otherwise.
const Framework& combine_queries(const Framework& a, const Framework& b);

enum class ContradictionKind { DisjointCertainty, ImplicationViolation };

constexpr std::string_view to_string(ContradictionKind k) {
  return k == ContradictionKind::DisjointCertainty ? "disjoint-certainty" : "implication-violation";
}

/// Two framework-relative retrodictions for a detected particle that cannot
/// both hold in a single classical account:
///  - disjoint-certainty: event_a and event_b are disjoint and both certain;
///  - implication-violation: event_a is certain, event_b contains it and is impossible.
struct ContradictionRecord {
  ContradictionKind kind;
  Framework framework_a;
  Framework framework_b;
  PathSet event_a;
  PathSet event_b;
  double p_a;
  double p_b;
};

std::vector<ContradictionRecord> find_contradictions(const ExperimentModel& model, ConsistencyMode mode,
                                                     double tolerance = kDefaultTolerance,
                                                     const EnumerationOptions& options = {});

}  // namespace histories
