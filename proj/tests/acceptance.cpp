// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "histories/frameworks.hpp"
#include "histories/scenario_io.hpp"
#include "oracle.hpp"
#include "properties.hpp"

using namespace histories;

namespace {

constexpr double kExact = 1e-12;

struct Criterion {
  std::string name;
  std::function<std::string()> run;  // empty string on success, else the reason
};

const Framework& framework_of(const std::vector<Framework>& fs, std::string_view text) {
  for (const auto& f : fs) {
    if (format_partition(f.partition()) == text) return f;
  }
  throw std::runtime_error("framework " + std::string(text) + " not enumerated");
}

std::string expect(bool ok, const std::string& why) { return ok ? "" : why; }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::vector<oracle::SetPartition> oracle_census(const SlitScenario& s) {
  std::vector<bool> open;
  for (const auto& p : s.paths()) open.push_back(p.open);
  return oracle::Experiment(s.amplitudes(), open).consistent_partitions(true, kDefaultTolerance);
}

std::string paradox() {
  const auto model = build_experiment(builtin_scenario("three-slit-contradiction"));
  const Framework alpha(model, parse_partition("1,2|3", 3), ConsistencyMode::Medium);
  const Framework beta(model, parse_partition("1|2,3", 3), ConsistencyMode::Medium);
  const double p3 = query_event(alpha, PathSet::of({2}), true);
  const double p1 = query_event(beta, PathSet::of({0}), true);
  if (std::abs(p3 - 1.0) > kExact) return "P({3}|D) in 1,2|3 = " + fmt(p3);
  if (std::abs(p1 - 1.0) > kExact) return "P({1}|D) in 1|2,3 = " + fmt(p1);
  return expect(alpha.report().consistent && beta.report().consistent, "alpha or beta inconsistent");
}

std::string implication() {
  const auto model = build_experiment(builtin_scenario("three-slit-contradiction"));
  const auto fs = enumerate_consistent_frameworks(model, ConsistencyMode::Medium);
  const double p23 = query_event(framework_of(fs, "1|2,3"), PathSet::of({1, 2}), true);
  const double p3 = query_event(framework_of(fs, "1,2|3"), PathSet::of({2}), true);
  if (std::abs(p23) > kExact) return "P({2,3}|D) in 1|2,3 = " + fmt(p23);
  if (std::abs(p3 - 1.0) > kExact) return "P({3}|D) in 1,2|3 = " + fmt(p3);
  bool disjoint = false, violation = false;
  for (const auto& r : find_contradictions(model, ConsistencyMode::Medium)) {
    const auto a = format_partition(r.framework_a.partition()), b = format_partition(r.framework_b.partition());
    if (r.kind == ContradictionKind::DisjointCertainty && a == "1,2|3" && r.event_a == PathSet::of({2}) &&
        b == "1|2,3" && r.event_b == PathSet::of({0})) {
      disjoint = true;
    }
    if (r.kind == ContradictionKind::ImplicationViolation && a == "1,2|3" && r.event_a == PathSet::of({2}) &&
        b == "1|2,3" && r.event_b == PathSet::of({1, 2})) {
      violation = true;
    }
  }
  if (!disjoint) return "disjoint-certainty record missing";
  return expect(violation, "implication-violation record missing");
}

std::string footnote() {
  const auto s = builtin_scenario("two-slit-footnote");
  const auto model = build_experiment(s);
  const auto up = s.path_index("S2.upper"), lo = s.path_index("S2.lower"), s3 = s.path_index("S3");
  const Framework coarse(model, Partition({PathSet::of({up, lo}), PathSet::of({s3})}, s.open_paths()),
                         ConsistencyMode::Medium);
  const Framework split(model, Partition({PathSet::of({up}), PathSet::of({lo, s3})}, s.open_paths()),
                        ConsistencyMode::Medium);
  const double p3 = query_event(coarse, PathSet::of({s3}), true);
  const double pu = query_event(split, PathSet::of({up}), true);
  if (std::abs(p3 - 1.0) > kExact) return "P(S3|D) = " + fmt(p3);
  return expect(std::abs(pu - 1.0) <= kExact, "P(S2.upper|D) = " + fmt(pu));
}

std::string census() {
  struct Case {
    SlitScenario scenario;
    std::size_t expected;
  };
  const std::vector<Case> cases = {
      {builtin_scenario("three-slit-contradiction"), 3},
      {builtin_scenario("generic"), 1},
      {SlitScenario("aligned", {{"S1", {1, 0}, true, {}}, {"S2", {0, 0}, true, {}}, {"S3", {0, 0}, true, {}}}), 5},
  };
  for (const auto& c : cases) {
    const auto fs = enumerate_consistent_frameworks(build_experiment(c.scenario), ConsistencyMode::Medium);
    const auto reference = oracle_census(c.scenario);
    std::vector<oracle::SetPartition> got;
    for (const auto& f : fs) got.push_back(testing::to_oracle(f.partition()));
    std::sort(got.begin(), got.end());
    if (fs.size() != c.expected) {
      return c.scenario.name() + ": " + std::to_string(fs.size()) + " frameworks, expected " +
             std::to_string(c.expected);
    }
    if (reference.size() != c.expected || got != reference) return c.scenario.name() + ": differs from brute force";
  }
  return "";
}

std::string interference() {
  const auto s = builtin_scenario("three-slit-contradiction");
  const double all = counting_rate(s, PathSet::of({0, 1, 2}));
  const double singles =
      counting_rate(s, PathSet::of({0})) + counting_rate(s, PathSet::of({1})) + counting_rate(s, PathSet::of({2}));
  return expect(all == 1.0 && singles == 3.0, "rates " + fmt(all) + " vs " + fmt(singles));
}

std::string properties() {
  const auto st = testing::run_properties(20240607, 1000);
  std::ostringstream why;
  if (st.hermiticity > 1e-12) why << "hermiticity " << st.hermiticity << "; ";
  if (st.most_negative_diagonal < -1e-12) why << "positivity " << st.most_negative_diagonal << "; ";
  if (st.normalization > 1e-10) why << "normalization " << st.normalization << "; ";
  if (st.additivity > 1e-10) why << "additivity " << st.additivity << "; ";
  if (st.closed_form > 1e-10) why << "closed form " << st.closed_form << "; ";
  if (st.scale_verdict_mismatches != 0) why << st.scale_verdict_mismatches << " verdicts changed under rescaling; ";
  if (st.scale_conditional > 1e-10) why << "conditional changed by " << st.scale_conditional << " under rescaling; ";
  if (st.scale_contradiction_mismatches != 0) why << "contradictions changed under rescaling; ";
  if (st.merges == 0) why << "no coarse-graining pairs exercised; ";
  std::cout << "      (" << st.scenarios << " scenarios, " << st.partitions << " partitions, " << st.merges
            << " merges; worst: herm " << st.hermiticity << ", norm " << st.normalization << ", add "
            << st.additivity << ", closed-form " << st.closed_form << ")\n";
  return why.str();
}

std::string enumeration() {
  const std::uint64_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (std::size_t n = 1; n <= 8; ++n) {
    auto stream = enumerate_partitions(n);
    std::uint64_t count = 0;
    while (stream.next()) ++count;
    if (count != bell[n]) return "n=" + std::to_string(n) + " yields " + std::to_string(count);
  }

  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Slit> slits;
  for (int i = 0; i < 10; ++i) slits.push_back({"S" + std::to_string(i + 1), {unit(rng), unit(rng)}, true, {}});
  const auto model = build_experiment(SlitScenario("random-10", std::move(slits)));

  std::uint64_t seen = 0;
  PartitionStream stream(model.open_paths());
  while (stream.next()) ++seen;
  if (seen != 115975) return "Bell(10) enumeration yields " + std::to_string(seen);

  const auto start = std::chrono::steady_clock::now();
  const auto fs = enumerate_consistent_frameworks(model, ConsistencyMode::Medium);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "      (10-path enumeration: " << fs.size() << " consistent of 115975, " << seconds << " s)\n";
  if (fs.empty() || fs.front().partition().size() != 1) return "coarsest partition missing";
  return expect(seconds < 10.0, "took " + fmt(seconds) + " s");
}

int cli_code(std::vector<std::string> args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

std::string single_framework_rule() {
  const auto model = build_experiment(builtin_scenario("three-slit-contradiction"));
  const Framework alpha(model, parse_partition("1,2|3", 3), ConsistencyMode::Medium);
  const Framework beta(model, parse_partition("1|2,3", 3), ConsistencyMode::Medium);
  try {
    query_event(alpha, PathSet::of({0}), true);
    return "query of {1} in 1,2|3 succeeded";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotInFramework) return std::string("wrong error: ") + e.what();
  }
  try {
    combine_queries(alpha, beta);
    return "alpha and beta combined";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MeaninglessCombination) return std::string("wrong error: ") + e.what();
  }
  const int q = cli_code({"query", "--demo", "three-slit-contradiction", "--framework", "1,2|3", "--event", "1",
                          "--given-detected"});
  const int c = cli_code({"query", "--demo", "three-slit-contradiction", "--framework", "1,2|3", "--event", "3",
                          "--given-detected", "--and", "1|2,3:1"});
  return expect(q == 4 && c == 4, "CLI exit codes " + std::to_string(q) + " and " + std::to_string(c));
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"paradox reproduction", paradox},
      {"implication violation", implication},
      {"footnote reproduction", footnote},
      {"framework census vs brute force", census},
      {"interference inequality", interference},
      {"property suites (1000 scenarios)", properties},
      {"enumeration correctness and performance", enumeration},
      {"single-framework rule", single_framework_rule},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::string why;
    try {
      why = c.run();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    if (why.empty()) {
      std::cout << "PASS  " << c.name << "\n";
    } else {
      std::cout << "FAIL  " << c.name << ": " << why << "\n";
      ++failed;
    }
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed;
}
