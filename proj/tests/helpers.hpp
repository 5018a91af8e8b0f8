#pragma once

#include <random>
#include <vector>

#include "histories/partition.hpp"
#include "histories/scenario.hpp"
#include "oracle.hpp"

namespace testing {

inline histories::SlitScenario scenario_from(const std::vector<histories::Amplitude>& amps,
                                             const std::vector<bool>& open = {}) {
  std::vector<histories::Slit> slits;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    slits.push_back({"S" + std::to_string(i + 1), amps[i], open.empty() ? true : bool(open[i]), {}});
  }
  return histories::SlitScenario("test", std::move(slits));
}

inline histories::SlitScenario real_scenario(std::initializer_list<double> amps) {
  std::vector<histories::Amplitude> a;
  for (double x : amps) a.emplace_back(x, 0.0);
  return scenario_from(a);
}

/// Random scenario with n <= 6 paths. Roughly half get planted cancellations
/// (some amplitude set to minus another, or minus a sum) so that non-trivial
/// consistent sets occur; a few paths are closed at random.
struct RandomScenario {
  std::vector<histories::Amplitude> amps;
  std::vector<bool> open;
};

inline RandomScenario random_scenario(std::mt19937_64& rng, std::size_t max_n = 6) {
  std::uniform_int_distribution<std::size_t> size(1, max_n);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution rarely(0.15);
  RandomScenario s;
  const auto n = size(rng);
  for (std::size_t i = 0; i < n; ++i) s.amps.emplace_back(unit(rng), unit(rng));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  if (n >= 2 && coin(rng)) {
    const auto i = pick(rng), j = pick(rng);
    if (i != j) s.amps[j] = -s.amps[i];
  } else if (n >= 3 && coin(rng)) {
    const auto i = pick(rng), j = pick(rng), k = pick(rng);
    if (i != j && j != k && i != k) s.amps[k] = -(s.amps[i] + s.amps[j]);
  }
  if (n >= 2 && rarely(rng)) s.amps[0] = 0.0;
  s.open.assign(n, true);
  for (std::size_t i = 1; i < n; ++i) s.open[i] = !rarely(rng);
  return s;
}

inline oracle::SetPartition to_oracle(const histories::Partition& p) {
  oracle::SetPartition out;
  for (auto g : p.groups()) out.push_back(g.members());
  return oracle::Experiment::canonical(out);
}

}  // namespace testing
