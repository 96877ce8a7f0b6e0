#include "mtsearch/cost.h"

#include <cmath>
#include <limits>

#include "mtsearch/errors.h"

namespace mtsearch {

std::uint64_t pow3(int k) {
  if (k < 0) throw DomainError("negative exponent");
  std::uint64_t result = 1;
  for (int i = 0; i < k; ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / 3) {
      throw OverflowError("3^" + std::to_string(k) + " does not fit in 64 bits");
    }
    result *= 3;
  }
  return result;
}

std::uint64_t reflection_calls(int j) { return pow3(j) - 1; }

std::uint64_t total_cost(int n_iter) { return (pow3(n_iter) - 1) / 2; }

double cost_exponent() { return std::log(3.0) / std::log(4.0); }

std::string to_string(SearchRegime regime) {
  switch (regime) {
    case SearchRegime::kCertain:
      return "certain";
    case SearchRegime::kHighFill:
      return "high_fill";
    case SearchRegime::kLowFill:
      return "low_fill";
  }
  return "unknown";
}

CostReport cost_for_iterations(int n_iter) {
  if (n_iter < 0) throw DomainError("iteration count must be non-negative");
  CostReport report;
  report.iterations = n_iter;
  report.t_table.reserve(static_cast<std::size_t>(n_iter));
  for (int j = 0; j < n_iter; ++j) report.t_table.push_back(reflection_calls(j));
  report.total_calls = total_cost(n_iter);
  report.closed_form_calls = static_cast<double>(report.total_calls);
  report.exponent = cost_exponent();
  return report;
}

CostReport strategy_cost(const Embedding& e) {
  SearchRegime regime;
  int iterations = e.main_phase_length();
  double multiplier = 3.0;
  if (e.power_of_four) {
    regime = SearchRegime::kCertain;
  } else if (e.rho.compare(1, 2) >= 0) {
    regime = SearchRegime::kHighFill;
  } else {
    regime = SearchRegime::kLowFill;
    iterations += 1;
    multiplier = 9.0;
  }

  CostReport report = cost_for_iterations(iterations);
  report.regime = regime;
  // N / nu is a power of four, so the float form is exact up to pow() rounding.
  const double ratio = static_cast<double>(e.N) / static_cast<double>(e.nu);
  report.closed_form_calls = 0.5 * (multiplier * std::pow(ratio, report.exponent) - 1.0);
  report.reference_two_series_n = 2 * total_cost(e.n);
  report.reference_two_series_n_plus_1 = 2 * total_cost(e.n + 1);
  report.reference_printed_form =
      3.0 * std::pow(static_cast<double>(e.N), report.exponent) - 1.0;
  return report;
}

void apply_state_reflection(std::span<double> v, const OracleSet& oracles, int j) {
  if (j == 0) {
    reflect_about_uniform(v);
    return;
  }
  // I_{s_j} = I_{s_{j-1}} I_{j-1} I_{s_{j-1}} I_{j-1} I_{s_{j-1}}, rightmost first.
  apply_state_reflection(v, oracles, j - 1);
  apply_phase_oracle(v, oracles, j - 1);
  apply_state_reflection(v, oracles, j - 1);
  apply_phase_oracle(v, oracles, j - 1);
  apply_state_reflection(v, oracles, j - 1);
}

RecursiveRun recursive_execute(const OracleSet& oracles, int n_iter) {
  if (n_iter < 0) throw DomainError("iteration count must be non-negative");
  if (n_iter > kMaxRecursiveIterations) {
    throw SizeGateError("recursive expansion limited to " +
                        std::to_string(kMaxRecursiveIterations) + " iterations");
  }
  const std::uint64_t calls_before = oracles.call_count();
  StateVector state = uniform_state(oracles.embedding());
  std::vector<double> v(state.dimension());
  for (int j = 0; j < n_iter; ++j) {
    auto amps = state.amplitudes();
    v.assign(amps.begin(), amps.end());
    apply_phase_oracle(v, oracles, j);
    apply_state_reflection(v, oracles, j);
    for (double& x : v) x = -x;
    state = StateVector(v, j + 1);
  }
  return RecursiveRun{std::move(state), oracles.call_count() - calls_before};
}

}  // namespace mtsearch
