#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtsearch/embedding.h"
#include "mtsearch/statevector.h"

namespace mtsearch {

// Deepest iteration count recursive_execute will expand (3^12 reflections).
inline constexpr int kMaxRecursiveIterations = 12;

// 3^k in exact integer arithmetic; throws OverflowError past 64 bits.
std::uint64_t pow3(int k);

// Oracle calls consumed by one application of I_{s_j} when it is expanded as
// I_{s_j} = I_{s_{j-1}} I_{j-1} I_{s_{j-1}} I_{j-1} I_{s_{j-1}}: 3^j - 1.
std::uint64_t reflection_calls(int j);

// Total oracle calls for n_iter iterations, one I_j plus one I_{s_j} each:
// (3^n_iter - 1) / 2.
std::uint64_t total_cost(int n_iter);

// log_4 3, the growth exponent of the recursive implementation.
double cost_exponent();

enum class SearchRegime {
  kCertain,    // nu0 a power of four, n_I = n~ - p, probability 1
  kHighFill,   // 1/2 <= rho < 1, n_I = n~ - p~
  kLowFill,    // 1/4 < rho < 1/2, n_I = n~ - p~ + 1
};

std::string to_string(SearchRegime regime);

struct CostReport {
  SearchRegime regime = SearchRegime::kCertain;
  int iterations = 0;
  std::vector<std::uint64_t> t_table;  // t(0) ... t(iterations - 1)
  std::uint64_t total_calls = 0;
  // The same count through the (1/2)(k (N/nu)^{log4 3} - 1) form, k = 3 or 9,
  // evaluated in floating point.
  double closed_form_calls = 0.0;
  double exponent = 0.0;
  // Reference cost of the single-target original algorithm, two series of
  // iterations. Reported for series of n and of n + 1 iterations: the printed
  // closed form 3 N^{log4 3} - 1 equals the latter, 2 C(n) equals the former.
  std::uint64_t reference_two_series_n = 0;
  std::uint64_t reference_two_series_n_plus_1 = 0;
  double reference_printed_form = 0.0;
};

// Oracle-call table for an explicit iteration count.
CostReport cost_for_iterations(int n_iter);

// Selects the iteration count the search strategy uses for this embedding and
// fills in the matching cost.
CostReport strategy_cost(const Embedding& embedding);

struct RecursiveRun {
  StateVector state;
  std::uint64_t measured_calls;
};

// Applies I_{s_j} to v by literal recursive expansion down to the
// oracle-free reflection I_{s_0} about the uniform state.
void apply_state_reflection(std::span<double> v, const OracleSet& oracles, int j);

// Runs n_iter iterations with every I_{s_j} expanded recursively. The
// returned count is the number of oracle queries recorded during the run.
// Throws SizeGateError for n_iter above kMaxRecursiveIterations.
RecursiveRun recursive_execute(const OracleSet& oracles, int n_iter);

}  // namespace mtsearch
