#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtsearch/cost.h"
#include "mtsearch/embedding.h"

namespace mtsearch {

// Default agreement threshold between independent computation paths.
inline constexpr double kVerifyTolerance = 1e-10;

struct IterationChoice {
  SearchRegime regime;
  int iterations;
  double predicted_probability;
};

// Measurement strategy:
//   nu0 a power of four     -> n~ - p~ iterations, probability 1
//   1/2 <= rho < 1          -> n~ - p~ iterations, probability P0(rho)
//   1/4 <  rho < 1/2        -> n~ - p~ + 1 iterations, probability P1(rho)
// The comparison against 1/2 is exact, so rho = 1/2 takes the cheaper branch.
IterationChoice choose_iterations(const Embedding& embedding);

// Result of one end-to-end search. Callers that want a target with higher
// confidence repeat the search with fresh seeds; no retry happens here.
struct SearchOutcome {
  BasisIndex measured_index = 0;
  // Catalog item measured, or nullopt when a padding index came up.
  std::optional<std::uint64_t> measured_item;
  bool is_target = false;
  SearchRegime regime = SearchRegime::kCertain;
  int iterations_used = 0;
  double predicted_probability = 0.0;
  std::uint64_t oracle_calls_abstract = 0;
  std::uint64_t oracle_calls_recursive_model = 0;
  std::uint64_t seed = 0;
};

SearchOutcome search(const ProblemSpec& spec, std::uint64_t seed);

struct VerifyCheck {
  std::string name;
  double deviation = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::uint64_t catalog_size = 0;
  std::uint64_t num_targets = 0;
  int q_max = 0;
  double tolerance = kVerifyTolerance;
  std::vector<VerifyCheck> checks;

  bool passed() const;
  double max_deviation() const;
};

// Cross-validates the state-vector, closed-form and recursive-expansion paths
// for q = 0 ... q_max extra iterations, together with the brute-force counting
// identities of the auxiliary oracles. A check passes when its deviation is
// strictly below `tolerance`. Failures are recorded, not thrown.
VerifyReport verify(const ProblemSpec& spec, int q_max, double tolerance = kVerifyTolerance);

}  // namespace mtsearch
