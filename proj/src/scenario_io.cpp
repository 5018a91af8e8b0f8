#include "histories/scenario_io.hpp"

#include <cstdint>
#include <algorithm>
#include <limits>
#include <random>

#include <json.hpp>

namespace histories {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, path + ": " + what);
}

const json& field(const json& object, const std::string& key, const std::string& path) {
  auto it = object.find(key);
  if (it == object.end()) schema_error(path + "." + key, "missing");
  return *it;
}

std::string text_field(const json& object, const std::string& key, const std::string& path) {
  const auto& v = field(object, key, path);
  if (!v.is_string()) schema_error(path + "." + key, "expected a string");
  return v.get<std::string>();
}

double number_field(const json& object, const std::string& key, const std::string& path) {
  const auto& v = field(object, key, path);
  if (!v.is_number()) schema_error(path + "." + key, "expected a number");
  return v.get<double>();
}

Amplitude amplitude_field(const json& object, const std::string& path) {
  const auto& v = field(object, "amplitude", path);
  const auto here = path + ".amplitude";
  if (!v.is_object()) schema_error(here, "expected an object {\"re\", \"im\"}");
  return {number_field(v, "re", here), number_field(v, "im", here)};
}

ordered_json amplitude_json(Amplitude a) { return ordered_json{{"re", a.real()}, {"im", a.imag()}}; }

}  // namespace

SlitScenario load_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) schema_error("$", "expected an object");

  const auto& version = field(doc, "version", "$");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kScenarioSchemaVersion) {
    schema_error("$.version", "expected 1");
  }
  auto name = text_field(doc, "name", "$");

  const auto& slits_json = field(doc, "slits", "$");
  if (!slits_json.is_array()) schema_error("$.slits", "expected an array");
  std::vector<Slit> slits;
  for (std::size_t s = 0; s < slits_json.size(); ++s) {
    const auto& sj = slits_json[s];
    const auto path = "$.slits[" + std::to_string(s) + "]";
    if (!sj.is_object()) schema_error(path, "expected an object");
    Slit slit;
    slit.label = text_field(sj, "label", path);
    slit.amplitude = amplitude_field(sj, path);
    const auto& open = field(sj, "open", path);
    if (!open.is_boolean()) schema_error(path + ".open", "expected a boolean");
    slit.open = open.get<bool>();
    if (auto it = sj.find("parts"); it != sj.end()) {
      if (!it->is_array() || it->empty()) schema_error(path + ".parts", "expected a non-empty array");
      for (std::size_t p = 0; p < it->size(); ++p) {
        const auto& pj = (*it)[p];
        const auto part_path = path + ".parts[" + std::to_string(p) + "]";
        if (!pj.is_object()) schema_error(part_path, "expected an object");
        slit.parts.push_back({text_field(pj, "label", part_path), amplitude_field(pj, part_path)});
      }
    }
    slits.push_back(std::move(slit));
  }

  Metadata metadata;
  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) schema_error("$.metadata", "expected an object of strings");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_string()) schema_error("$.metadata." + key, "expected a string");
      metadata.emplace(key, value.get<std::string>());
    }
  }
  return SlitScenario(std::move(name), std::move(slits), std::move(metadata));
}

std::string save_scenario(const SlitScenario& scenario) {
  ordered_json doc;
  doc["version"] = kScenarioSchemaVersion;
  doc["name"] = scenario.name();
  doc["slits"] = ordered_json::array();
  for (const auto& slit : scenario.slits()) {
    ordered_json sj;
    sj["label"] = slit.label;
    sj["amplitude"] = amplitude_json(slit.amplitude);
    sj["open"] = slit.open;
    if (!slit.parts.empty()) {
      sj["parts"] = ordered_json::array();
      for (const auto& part : slit.parts) {
        sj["parts"].push_back(ordered_json{{"label", part.label}, {"amplitude", amplitude_json(part.amplitude)}});
      }
    }
    doc["slits"].push_back(std::move(sj));
  }
  if (!scenario.metadata().empty()) {
    doc["metadata"] = ordered_json::object();
    for (const auto& [k, v] : scenario.metadata()) doc["metadata"][k] = v;
  }
  return doc.dump(2) + "\n";
}

namespace {

constexpr std::uint64_t kGenericSeed = 19960814;
constexpr std::size_t kGenericSlits = 4;
/// Smallest |A_G| tolerated over non-empty subsets of the generic amplitudes.
constexpr double kGenericMinSubsetSum = 0.05;

/// Uniform on [-1, 1) from the top 53 bits; independent of the standard
/// library's distribution implementations.
double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

SlitScenario generic_scenario() {
  std::mt19937_64 rng(kGenericSeed);
  for (;;) {
    std::vector<Amplitude> a;
    for (std::size_t i = 0; i < kGenericSlits; ++i) {
      const double re = unit_interval(rng);
      a.emplace_back(re, unit_interval(rng));
    }
    double smallest = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 1; mask < (1U << kGenericSlits); ++mask) {
      Amplitude sum{};
      for (std::size_t i = 0; i < kGenericSlits; ++i) {
        if ((mask >> i) & 1U) sum += a[i];
      }
      smallest = std::min(smallest, std::abs(sum));
    }
    if (smallest < kGenericMinSubsetSum) continue;

    std::vector<Slit> slits;
    for (std::size_t i = 0; i < kGenericSlits; ++i) slits.push_back({"S" + std::to_string(i + 1), a[i], true, {}});
    return SlitScenario("generic", std::move(slits),
                        {{"generator", "mt19937_64, components uniform on [-1, 1)"},
                         {"seed", std::to_string(kGenericSeed)}});
  }
}

}  // namespace

SlitScenario builtin_scenario(std::string_view name) {
  if (name == "three-slit-contradiction") {
    return SlitScenario("three-slit-contradiction",
                        {{"S1", {1.0, 0.0}, true, {}}, {"S2", {-1.0, 0.0}, true, {}}, {"S3", {1.0, 0.0}, true, {}}},
                        {{"amplitudes", "A1 = A3 = -A2, unit scale"}});
  }
  if (name == "two-slit-footnote") {
    // S1 is closed and keeps the amplitude it has in the three-slit case.
    return SlitScenario("two-slit-footnote",
                        {{"S1", {1.0, 0.0}, false, {}},
                         {"S2", {0.0, 0.0}, true, {{"upper", {1.0, 0.0}}, {"lower", {-1.0, 0.0}}}},
                         {"S3", {1.0, 0.0}, true, {}}},
                        {{"amplitudes", "A3 = A2.upper = -A2.lower, unit scale"}});
  }
  if (name == "generic") return generic_scenario();
  throw Error(ErrorCode::UnknownScenario, "no built-in scenario named '" + std::string(name) + "'");
}

std::vector<std::string> builtin_scenario_names() {
  return {"three-slit-contradiction", "two-slit-footnote", "generic"};
}

}  // namespace histories
