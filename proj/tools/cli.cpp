#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "histories/frameworks.hpp"
#include "histories/scenario_io.hpp"

namespace histories::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kTextDigits = 12;

constexpr const char* kSingleFrameworkRule =
    "single-framework rule: probabilities and their logical combinations are meaningful only within one "
    "consistent framework";

struct ScenarioSource {
  std::string file;
  std::string demo;
};

struct Common {
  ScenarioSource source;
  std::string format = "text";
  std::string mode = "medium";
  double tolerance = kDefaultTolerance;
};

void add_source(CLI::App& cmd, Common& c) {
  auto* file = cmd.add_option("--file", c.source.file, "Scenario JSON file");
  auto* demo = cmd.add_option("--demo", c.source.demo, "Built-in scenario")
                   ->check(CLI::IsMember(builtin_scenario_names()));
  file->excludes(demo);
  cmd.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

void add_consistency(CLI::App& cmd, Common& c) {
  cmd.add_option("--mode", c.mode, "Consistency condition")->check(CLI::IsMember({"weak", "medium"}));
  cmd.add_option("--tol", c.tolerance, "Tolerance relative to the largest diagonal decoherence value")
      ->check(CLI::NonNegativeNumber);
}

ConsistencyMode parse_mode(const std::string& m) { return m == "weak" ? ConsistencyMode::Weak : ConsistencyMode::Medium; }

SlitScenario load(const ScenarioSource& src) {
  if (!src.demo.empty()) return builtin_scenario(src.demo);
  if (src.file.empty()) throw Error(ErrorCode::SchemaError, "a scenario is required: pass --file PATH or --demo NAME");
  std::ifstream in(src.file, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read --file '" + src.file + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_scenario(text.str());
}

std::size_t default_cap() {
  if (const char* env = std::getenv("CH_MAX_PATHS")) {
    char* end = nullptr;
    const auto v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return std::min<std::size_t>(v, kMaxPaths);
  }
  return kDefaultMaxPaths;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(kTextDigits) << v;
  return s.str();
}

ordered_json report(std::string_view kind, const SlitScenario& scenario, const Common* c, ordered_json payload) {
  ordered_json r;
  r["kind"] = kind;
  r["scenario_name"] = scenario.name();
  r["mode"] = c ? ordered_json(c->mode) : ordered_json(nullptr);
  r["tolerance"] = c ? ordered_json(c->tolerance) : ordered_json(nullptr);
  r["payload"] = std::move(payload);
  return r;
}

std::string labels_of(const SlitScenario& s, PathSet set) {
  std::string out;
  for (auto i : set.members()) {
    if (!out.empty()) out += ",";
    out += s.paths()[i].id.label;
  }
  return out;
}

ordered_json table_json(const ProbabilityTable& t) {
  auto rows = ordered_json::array();
  for (const auto& e : t.entries) {
    rows.push_back({{"group", format_indices(e.group)}, {"branch", to_string(e.branch)}, {"probability", e.probability}});
  }
  return rows;
}

void print_table(std::ostream& out, const SlitScenario& s, const ProbabilityTable& t) {
  for (const auto& e : t.entries) {
    out << "    p(" << format_set(e.group) << " [" << labels_of(s, e.group) << "], "
        << (e.branch == Branch::Detected ? "detected" : "not detected") << ") = " << fmt(e.probability) << "\n";
  }
}

// check ---------------------------------------------------------------------

int cmd_check(const Common& c, const std::string& partition_text, std::ostream& out) {
  const auto scenario = load(c.source);
  const auto model = build_experiment(scenario);
  const auto partition = parse_partition(partition_text, scenario.path_count(), scenario.open_paths());
  const auto mode = parse_mode(c.mode);
  const auto set = partition_history_set(model, partition);
  const auto r = check_consistency(model.psi(), set, mode, c.tolerance);

  auto history_label = [&](std::size_t h) {
    const auto& l = set.labels()[h];
    return std::pair{partition.groups()[l[0]], l[1] == 0 ? Branch::Detected : Branch::Undetected};
  };

  if (c.format == "json") {
    ordered_json offending = nullptr;
    if (r.offending_pair) {
      offending = ordered_json::array();
      for (auto h : {r.offending_pair->first, r.offending_pair->second}) {
        auto [g, b] = history_label(h);
        offending.push_back({{"group", format_indices(g)}, {"branch", to_string(b)}});
      }
    }
    out << report("consistency", scenario, &c,
                  {{"partition", format_partition(partition)},
                   {"consistent", r.consistent},
                   {"max_violation", r.max_violation},
                   {"tolerance_used", r.tolerance_used},
                   {"offending_pair", offending}})
               .dump(2)
        << "\n";
  } else {
    out << "scenario " << scenario.name() << ": partition " << format_partition(partition) << " is "
        << (r.consistent ? "consistent" : "inconsistent") << " (" << to_string(mode) << ")\n"
        << "  max violation: " << fmt(r.max_violation) << "\n"
        << "  tolerance:     " << fmt(r.tolerance_used) << "\n";
    if (r.offending_pair) {
      auto [g1, b1] = history_label(r.offending_pair->first);
      auto [g2, b2] = history_label(r.offending_pair->second);
      out << "  offending pair: (" << format_set(g1) << ", " << to_string(b1) << ") vs (" << format_set(g2) << ", "
          << to_string(b2) << ")\n";
    }
  }
  return r.consistent ? kSuccess : kInconsistent;
}

// frameworks ----------------------------------------------------------------

int cmd_frameworks(const Common& c, std::size_t cap, unsigned jobs, std::ostream& out) {
  const auto scenario = load(c.source);
  const auto model = build_experiment(scenario);
  const auto frameworks =
      enumerate_consistent_frameworks(model, parse_mode(c.mode), c.tolerance, {.max_paths = cap, .workers = jobs});

  if (c.format == "json") {
    auto list = ordered_json::array();
    for (const auto& f : frameworks) {
      list.push_back({{"partition", format_partition(f.partition())},
                      {"max_violation", f.report().max_violation},
                      {"tolerance_used", f.report().tolerance_used},
                      {"probabilities", table_json(f.probabilities())}});
    }
    out << report("frameworks", scenario, &c, {{"count", frameworks.size()}, {"frameworks", list}}).dump(2) << "\n";
    return kSuccess;
  }
  out << "scenario " << scenario.name() << ": " << frameworks.size() << " consistent framework"
      << (frameworks.size() == 1 ? "" : "s") << " (" << c.mode << ", of " << bell_number(model.open_count())
      << " partitions)\n";
  for (const auto& f : frameworks) {
    out << "  " << format_partition(f.partition()) << "\n";
    print_table(out, scenario, f.probabilities());
  }
  return kSuccess;
}

// query ---------------------------------------------------------------------

struct QueryAnswer {
  Framework framework;
  PathSet event;
  double probability;
};

QueryAnswer answer(const ExperimentModel& model, const SlitScenario& s, const Common& c, const std::string& framework_text,
                   const std::string& event_text, bool given_detected) {
  Framework f(model, parse_partition(framework_text, s.path_count(), s.open_paths()), parse_mode(c.mode), c.tolerance);
  const auto event = parse_path_set(event_text, s.path_count());
  const double p = query_event(f, event, given_detected);
  return {std::move(f), event, p};
}

std::string statement(const QueryAnswer& a, bool given_detected) {
  return "In analysis " + format_partition(a.framework.partition()) + ": P(went through " + format_set(a.event) +
         (given_detected ? " | detected" : "") + ") = " + fmt(a.probability);
}

ordered_json answer_json(const QueryAnswer& a) {
  return {{"framework", format_partition(a.framework.partition())},
          {"event", format_indices(a.event)},
          {"probability", a.probability}};
}

int cmd_query(const Common& c, const std::string& framework_text, const std::string& event_text, bool given_detected,
              const std::string& conjunct, std::ostream& out) {
  const auto scenario = load(c.source);
  const auto model = build_experiment(scenario);
  const auto first = answer(model, scenario, c, framework_text, event_text, given_detected);

  if (conjunct.empty()) {
    if (c.format == "json") {
      auto payload = answer_json(first);
      payload["given_detected"] = given_detected;
      out << report("query", scenario, &c, payload).dump(2) << "\n";
    } else {
      out << statement(first, given_detected) << "\n";
    }
    return kSuccess;
  }

  const auto colon = conjunct.rfind(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::SchemaError, "--and expects FRAMEWORK:EVENT, e.g. \"1|2,3:1\"");
  }
  const auto second =
      answer(model, scenario, c, conjunct.substr(0, colon), conjunct.substr(colon + 1), given_detected);
  if (c.format == "text") {
    out << statement(first, given_detected) << "\n" << statement(second, given_detected) << "\n";
  }
  const Framework* common = nullptr;
  try {
    common = &combine_queries(first.framework, second.framework);
  } catch (const Error& e) {
    throw Error(ErrorCode::MeaninglessCombination,
                std::string(kSingleFrameworkRule) + ". No joint probability exists for frameworks " +
                    format_partition(first.framework.partition()) + " and " +
                    format_partition(second.framework.partition()));
  }
  const PathSet both = first.event & second.event;
  const double p = query_event(*common, both, given_detected);
  if (c.format == "json") {
    out << report("query", scenario, &c,
                  {{"given_detected", given_detected},
                   {"conjuncts", ordered_json::array({answer_json(first), answer_json(second)})},
                   {"framework", format_partition(common->partition())},
                   {"event", format_indices(both)},
                   {"probability", p}})
               .dump(2)
        << "\n";
  } else {
    out << "In analysis " << format_partition(common->partition()) << ": P(went through " << format_set(first.event)
        << " and " << format_set(second.event) << (given_detected ? " | detected" : "") << ") = " << fmt(p) << "\n";
  }
  return kSuccess;
}

// contradictions ------------------------------------------------------------

int cmd_contradictions(const Common& c, std::size_t cap, unsigned jobs, std::ostream& out) {
  const auto scenario = load(c.source);
  const auto model = build_experiment(scenario);
  const auto records = find_contradictions(model, parse_mode(c.mode), c.tolerance, {.max_paths = cap, .workers = jobs});

  if (c.format == "json") {
    auto list = ordered_json::array();
    for (const auto& r : records) {
      list.push_back({{"kind", to_string(r.kind)},
                      {"framework_a", format_partition(r.framework_a.partition())},
                      {"event_a", format_indices(r.event_a)},
                      {"p_a", r.p_a},
                      {"framework_b", format_partition(r.framework_b.partition())},
                      {"event_b", format_indices(r.event_b)},
                      {"p_b", r.p_b}});
    }
    out << report("contradictions", scenario, &c, {{"count", records.size()}, {"records", list}}).dump(2) << "\n";
    return kSuccess;
  }
  out << "scenario " << scenario.name() << ": ";
  if (records.empty()) {
    out << "none found\n";
    return kSuccess;
  }
  out << records.size() << " contradiction" << (records.size() == 1 ? "" : "s") << "\n";
  for (const auto& r : records) {
    const auto fa = format_partition(r.framework_a.partition());
    const auto fb = format_partition(r.framework_b.partition());
    out << "  " << to_string(r.kind) << ": in analysis " << fa << ", P(" << format_set(r.event_a) << " ["
        << labels_of(scenario, r.event_a) << "] | detected) = " << fmt(r.p_a) << "; in analysis " << fb << ", P("
        << format_set(r.event_b) << " [" << labels_of(scenario, r.event_b) << "] | detected) = " << fmt(r.p_b)
        << "\n";
  }
  return kSuccess;
}

// rates ---------------------------------------------------------------------

int cmd_rates(const Common& c, const std::string& mask_text, bool all_single, std::ostream& out) {
  const auto scenario = load(c.source);
  if (mask_text.empty() && !all_single) throw Error(ErrorCode::EmptyMask, "pass --mask INDICES or --all-single");

  ordered_json payload = ordered_json::object();
  if (!mask_text.empty()) {
    const auto mask = parse_path_set(mask_text, scenario.path_count());
    const double rate = counting_rate(scenario, mask);
    payload["mask"] = format_indices(mask);
    payload["rate"] = rate;
    if (c.format == "text") out << "rate " << format_set(mask) << " = " << fmt(rate) << "\n";
  }
  if (all_single) {
    const auto open = scenario.open_paths();
    const double all = counting_rate(scenario, open);
    auto singles = ordered_json::array();
    double sum = 0.0;
    if (c.format == "text") out << "rate with all open paths " << format_set(open) << " = " << fmt(all) << "\n";
    for (auto i : open.members()) {
      const double r = counting_rate(scenario, PathSet::of({i}));
      sum += r;
      singles.push_back({{"path", i + 1}, {"label", scenario.paths()[i].id.label}, {"rate", r}});
      if (c.format == "text") {
        out << "rate {" << i + 1 << "} [" << scenario.paths()[i].id.label << "] = " << fmt(r) << "\n";
      }
    }
    payload["all_open_rate"] = all;
    payload["single_rates"] = singles;
    payload["sum_single"] = sum;
    payload["deficit"] = all - sum;
    if (c.format == "text") {
      out << "sum of single-path rates = " << fmt(sum) << "\n"
          << "interference deficit = " << fmt(all - sum) << "\n";
    }
  }
  if (c.format == "json") out << report("rates", scenario, nullptr, payload).dump(2) << "\n";
  return kSuccess;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInFramework:
    case ErrorCode::MeaninglessCombination:
      return kFrameworkRule;
    case ErrorCode::ConditionUnsatisfied:
      return kNullCondition;
    case ErrorCode::InconsistentSet:
      return kInconsistent;
    default:
      return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Consistent-histories analysis of multi-slit experiments"};
  app.require_subcommand(1);

  Common check_opts, fw_opts, query_opts, contra_opts, rates_opts;
  std::string partition_text, framework_text, event_text, conjunct, mask_text;
  bool given_detected = false;
  bool all_single = false;
  std::size_t cap = default_cap();
  unsigned jobs = 1;

  auto* check = app.add_subcommand("check", "Check whether a partition of the open paths is a consistent set");
  add_source(*check, check_opts);
  add_consistency(*check, check_opts);
  check->add_option("--partition", partition_text, "Groups separated by '|', 1-based paths by ','")->required();

  auto* frameworks = app.add_subcommand("frameworks", "List every consistent partition with its probabilities");
  add_source(*frameworks, fw_opts);
  add_consistency(*frameworks, fw_opts);
  frameworks->add_option("--max-n", cap, "Largest open-path count to enumerate (default 12, or CH_MAX_PATHS)");
  frameworks->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* query = app.add_subcommand(
      "query",
      "Probability of a path event inside one framework. Every answer is relative to the framework it was asked in; "
      "the tool does not say which slit the particle really went through.");
  add_source(*query, query_opts);
  add_consistency(*query, query_opts);
  query->add_option("--framework", framework_text, "Partition defining the framework, e.g. 1,2|3")->required();
  query->add_option("--event", event_text, "Paths of the event, e.g. 3 or 2,3")->required();
  query->add_flag("--given-detected", given_detected, "Condition on detection at D");
  query->add_option("--and", conjunct, "Conjoin a second FRAMEWORK:EVENT query");

  auto* contradictions =
      app.add_subcommand("contradictions", "Find clashing certain retrodictions across consistent frameworks");
  add_source(*contradictions, contra_opts);
  add_consistency(*contradictions, contra_opts);
  contradictions->add_option("--max-n", cap, "Largest open-path count to enumerate (default 12, or CH_MAX_PATHS)");
  contradictions->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* rates = app.add_subcommand("rates", "Relative counting rates |A|^2 at the detector");
  add_source(*rates, rates_opts);
  rates->add_option("--mask", mask_text, "Open paths, e.g. 1,2,3");
  rates->add_flag("--all-single", all_single, "Per-path rates and the interference deficit");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*check) return cmd_check(check_opts, partition_text, out);
    if (*frameworks) return cmd_frameworks(fw_opts, cap, jobs, out);
    if (*query) return cmd_query(query_opts, framework_text, event_text, given_detected, conjunct, out);
    if (*contradictions) return cmd_contradictions(contra_opts, cap, jobs, out);
    if (*rates) return cmd_rates(rates_opts, mask_text, all_single, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::NotInFramework) err << "(" << kSingleFrameworkRule << ")\n";
    return exit_code_for(e.code());
  }
  return kInputError;
}

}  // namespace histories::cli
