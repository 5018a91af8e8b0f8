#include "histories/frameworks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace histories {

PartitionStream::PartitionStream(PathSet universe, std::vector<std::uint8_t> prefix)
    : universe_(universe), members_(universe.members()), pinned_(prefix.size()) {
  const std::size_t n = members_.size();
  if (n == 0) throw Error(ErrorCode::NoOpenPaths, "cannot partition an empty set of paths");
  if (prefix.size() > n) throw Error(ErrorCode::BadIndex, "partition prefix longer than the path set");
  labels_.assign(n, 0);
  prefix_max_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < prefix.size()) {
      const std::uint8_t limit = i == 0 ? 0 : static_cast<std::uint8_t>(prefix_max_[i - 1] + 1);
      if (prefix[i] > limit) throw Error(ErrorCode::BadIndex, "partition prefix is not a restricted growth string");
      labels_[i] = prefix[i];
    }
    prefix_max_[i] = i == 0 ? labels_[0] : std::max(prefix_max_[i - 1], labels_[i]);
  }
}

bool PartitionStream::advance() {
  const std::size_t n = labels_.size();
  // position 0 is always labelled 0
  for (std::size_t i = n; i-- > std::max<std::size_t>(pinned_, 1);) {
    if (labels_[i] <= prefix_max_[i - 1]) {
      ++labels_[i];
      prefix_max_[i] = std::max(prefix_max_[i - 1], labels_[i]);
      for (std::size_t j = i + 1; j < n; ++j) {
        labels_[j] = 0;
        prefix_max_[j] = prefix_max_[i];
      }
      return true;
    }
  }
  return false;
}

std::optional<Partition> PartitionStream::next() {
  if (done_) return std::nullopt;
  if (started_ && !advance()) {
    done_ = true;
    return std::nullopt;
  }
  started_ = true;
  std::vector<PathSet> groups(static_cast<std::size_t>(prefix_max_.back()) + 1);
  for (std::size_t i = 0; i < labels_.size(); ++i) groups[labels_[i]].insert(members_[i]);
  return Partition(std::move(groups), universe_);
}

PartitionStream enumerate_partitions(std::size_t n, std::size_t max_n) {
  if (n < 1) throw Error(ErrorCode::BadIndex, "need at least one path to partition");
  if (n > max_n) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " paths exceed the enumeration cap of " + std::to_string(max_n));
  }
  return PartitionStream(PathSet::first(n));
}

std::uint64_t bell_number(std::size_t n) {
  // Bell triangle
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

Framework::Framework(const ExperimentModel& model, Partition partition, ConsistencyMode mode, double tolerance)
    : partition_(std::move(partition)),
      mode_(mode),
      tolerance_(tolerance),
      table_(history_probabilities(model, partition_, mode, tolerance)) {}

struct FrameworkAccess {
  static Framework make(Partition partition, ConsistencyMode mode, double tolerance, ProbabilityTable table) {
    return Framework(std::move(partition), mode, tolerance, std::move(table));
  }
};

namespace {

/// Analytic screen for two-time slit histories. Off the diagonal only
/// same-branch pairs survive, with |D| = |conj(c_G') c_G| in both branches.
/// Returns true only when the violation exceeds the tolerance by a margin
/// far above rounding, so every screened-out partition would also fail the
/// explicit check.
class AnalyticScreen {
 public:
  AnalyticScreen(const ExperimentModel& model, ConsistencyMode mode, double tolerance)
      : mode_(mode), tolerance_(tolerance), k_(static_cast<double>(model.open_count())) {
    const double scale = std::sqrt(k_) * model.amplitude_norm();
    for (auto i : model.open_paths().members()) c_.push_back(model.amplitudes()(Eigen::Index(i)) / scale);
  }

  bool clearly_inconsistent(const std::vector<std::uint8_t>& labels, std::size_t group_count) {
    sums_.assign(group_count, Amplitude{});
    sizes_.assign(group_count, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      sums_[labels[i]] += c_[i];
      ++sizes_[labels[i]];
    }
    double max_diag = 0.0;
    for (std::size_t g = 0; g < group_count; ++g) {
      const double detected = std::norm(sums_[g]);
      max_diag = std::max({max_diag, detected, static_cast<double>(sizes_[g]) / k_ - detected});
    }
    const double limit = std::max(tolerance_ * max_diag, kToleranceFloor) + kMargin;
    for (std::size_t g = 0; g < group_count; ++g) {
      for (std::size_t h = g + 1; h < group_count; ++h) {
        const Amplitude d = std::conj(sums_[h]) * sums_[g];
        const double v = mode_ == ConsistencyMode::Medium ? std::abs(d) : std::abs(d.real());
        if (v > limit) return true;
      }
    }
    return false;
  }

 private:
  static constexpr double kMargin = 1e-12;

  ConsistencyMode mode_;
  double tolerance_;
  double k_;
  std::vector<Amplitude> c_;
  std::vector<Amplitude> sums_;
  std::vector<std::size_t> sizes_;
};

std::vector<Framework> scan(const ExperimentModel& model, ConsistencyMode mode, double tolerance, bool prune,
                            std::vector<std::uint8_t> prefix) {
  std::vector<Framework> out;
  PartitionStream stream(model.open_paths(), std::move(prefix));
  AnalyticScreen screen(model, mode, tolerance);
  while (auto partition = stream.next()) {
    if (prune && screen.clearly_inconsistent(stream.labels(), partition->size())) continue;
    auto table = evaluate_partition(model, *partition, mode, tolerance);
    if (table.report.consistent) {
      out.push_back(FrameworkAccess::make(std::move(*partition), mode, tolerance, std::move(table)));
    }
  }
  return out;
}

/// All restricted growth strings of the given length, in lexicographic order.
std::vector<std::vector<std::uint8_t>> growth_prefixes(std::size_t length) {
  std::vector<std::vector<std::uint8_t>> out{{0}};
  for (std::size_t pos = 1; pos < length; ++pos) {
    std::vector<std::vector<std::uint8_t>> next;
    for (const auto& p : out) {
      const auto top = *std::max_element(p.begin(), p.end());
      for (unsigned v = 0; v <= top + 1U; ++v) {
        next.push_back(p);
        next.back().push_back(static_cast<std::uint8_t>(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<Framework> enumerate_consistent_frameworks(const ExperimentModel& model, ConsistencyMode mode,
                                                       double tolerance, const EnumerationOptions& options) {
  const std::size_t n = model.open_count();
  if (n > options.max_paths) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " open paths exceed the enumeration cap of " +
                                         std::to_string(options.max_paths));
  }
  if (options.workers <= 1 || n < 4) return scan(model, mode, tolerance, options.prune, {});

  std::size_t length = 1;
  while (length < n && bell_number(length) < 8ULL * options.workers) ++length;
  const auto prefixes = growth_prefixes(length);

  std::vector<std::vector<Framework>> results(prefixes.size());
  std::atomic<std::size_t> cursor{0};
  std::vector<std::exception_ptr> failures(options.workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < options.workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = cursor.fetch_add(1)) < prefixes.size();) {
          results[i] = scan(model, mode, tolerance, options.prune, prefixes[i]);
        }
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::vector<Framework> merged;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(merged));
  return merged;
}

double query_event(const Framework& framework, PathSet event, bool given_detected) {
  if (!event.subset_of(framework.partition().universe())) {
    throw Error(ErrorCode::ClosedPathInGroup, "event " + format_set(event) + " names paths that are not open");
  }
  return event_probability(framework.probabilities(), framework.partition(), event, given_detected,
                           ErrorCode::NotInFramework);
}

const Framework& combine_queries(const Framework& a, const Framework& b) {
  const auto refuse = [&](const std::string& why) {
    return Error(ErrorCode::MeaninglessCombination,
                 "frameworks " + format_partition(a.partition()) + " and " + format_partition(b.partition()) + " " +
                     why + "; probabilities from different frameworks cannot be combined");
  };
  if (a.mode() != b.mode()) throw refuse("use different consistency modes");
  if (a.partition().universe() != b.partition().universe()) throw refuse("describe different open paths");
  if (a.partition() == b.partition()) return a;
  if (a.partition().refines(b.partition())) return a;
  if (b.partition().refines(a.partition())) return b;
  throw refuse("have no common refinement among them");
}

namespace {

struct FrameworkEvents {
  std::vector<std::pair<PathSet, double>> certain;
  std::vector<std::pair<PathSet, double>> impossible;
};

FrameworkEvents classify_events(const Framework& f) {
  FrameworkEvents out;
  if (f.probabilities().detected_total() <= kNullConditionThreshold) return out;
  const auto groups = f.partition().groups();
  const std::uint64_t count = std::uint64_t{1} << groups.size();
  for (std::uint64_t pick = 1; pick < count; ++pick) {
    PathSet event;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if ((pick >> g) & 1U) event |= groups[g];
    }
    const double p = query_event(f, event, true);
    if (p >= 1.0 - kCertaintyThreshold) out.certain.emplace_back(event, p);
    if (p <= kCertaintyThreshold) out.impossible.emplace_back(event, p);
  }
  return out;
}

}  // namespace

std::vector<ContradictionRecord> find_contradictions(const ExperimentModel& model, ConsistencyMode mode,
                                                     double tolerance, const EnumerationOptions& options) {
  const auto frameworks = enumerate_consistent_frameworks(model, mode, tolerance, options);
  std::vector<FrameworkEvents> events;
  events.reserve(frameworks.size());
  for (const auto& f : frameworks) events.push_back(classify_events(f));

  std::vector<ContradictionRecord> out;
  for (std::size_t a = 0; a < frameworks.size(); ++a) {
    for (std::size_t b = 0; b < frameworks.size(); ++b) {
      if (a == b) continue;
      if (a < b) {
        for (const auto& [ea, pa] : events[a].certain) {
          for (const auto& [eb, pb] : events[b].certain) {
            if (ea.disjoint(eb)) {
              out.push_back({ContradictionKind::DisjointCertainty, frameworks[a], frameworks[b], ea, eb, pa, pb});
            }
          }
        }
      }
      for (const auto& [ea, pa] : events[a].certain) {
        for (const auto& [eb, pb] : events[b].impossible) {
          if (ea.subset_of(eb)) {
            out.push_back({ContradictionKind::ImplicationViolation, frameworks[a], frameworks[b], ea, eb, pa, pb});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace histories
