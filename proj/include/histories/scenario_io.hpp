#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "histories/scenario.hpp"

namespace histories {

/// Version written to and required from every scenario document.
inline constexpr int kScenarioSchemaVersion = 1;

/// Parses a version-1 scenario document:
///
///   {"version": 1, "name": "...",
///    "slits": [{"label": "S1", "amplitude": {"re": 1.0, "im": 0.0}, "open": true,
///               "parts": [{"label": "upper", "amplitude": {...}}]}],
///    "metadata": {"key": "value"}}
///
/// "parts" and "metadata" are optional. Errors: ParseError for malformed
/// JSON, SchemaError naming the offending field path, PartSumMismatch.
SlitScenario load_scenario(std::string_view text);

/// Canonical document: fields in schema order, two-space indentation,
/// shortest round-trip number formatting.
std::string save_scenario(const SlitScenario& scenario);

/// "three-slit-contradiction", "two-slit-footnote", "generic".
SlitScenario builtin_scenario(std::string_view name);

std::vector<std::string> builtin_scenario_names();

}  // namespace histories
