#include <cmath>

#include "histories/experiment.hpp"

namespace histories {

Amplitude group_decoherence_closed_form(const SlitScenario& scenario, PathSet group, PathSet group2,
                                        Branch branch) {
  const auto a = group_amplitude(scenario, group);
  const auto a2 = group_amplitude(scenario, group2);
  const auto k = static_cast<double>(scenario.open_paths().size());
  if (k == 0) throw Error(ErrorCode::NoOpenPaths, "scenario has no open path");
  double norm2 = 0.0;
  for (const auto& p : scenario.paths()) norm2 += std::norm(p.amplitude);
  if (!(norm2 > 0.0)) throw Error(ErrorCode::DegenerateDetector, "all amplitudes vanish");

  const double scale = std::sqrt(k * norm2);
  const Amplitude detected = std::conj(a2 / scale) * (a / scale);
  if (branch == Branch::Detected) return detected;
  return Amplitude(static_cast<double>((group & group2).size()) / k) - detected;
}

}  // namespace histories
