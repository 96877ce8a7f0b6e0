#pragma once

#include <span>
#include <vector>

#include "mtsearch/embedding.h"

namespace mtsearch {

// Largest number of extra iterations accepted by the recursion.
inline constexpr int kMaxExtraIterations = 64;

// Closed-form success probabilities as functions of the filling fraction
// rho = nu0 / nu. All require 1/4 < rho <= 1 and throw DomainError otherwise.
double P0(double rho);
double P1(double rho);
double P2(double rho);

// delta = (4 rho - 1) / 2, the overshoot of the first extra iteration.
double extra_iteration_delta(double rho);

// After n_tilde - p_tilde + q iterations (q >= 1) the state is
//
//   2^{1 - p_tilde} [ A_q * sum_{f = 1} |w>  +  B_q * sum_{f_{n~-p~} = 1} |w> ]
//
// so it is described by two amplitudes. Normalization reads
// 4 (A^2 rho + B^2 (1 - rho)) = 1.
struct CollapsedState {
  int q = 1;
  double A = 0.0;
  double B = 0.0;
  double rho = 1.0;

  double success_probability() const { return 4.0 * A * A * rho; }
  double norm_squared() const { return 4.0 * (A * A * rho + B * B * (1.0 - rho)); }
};

// State after the first extra iteration: (A_1, B_1) = (1 - delta, -delta).
CollapsedState first_extra_state(double rho);

// One more iteration:
//   A' = (1 - 8 [A^2 rho - B^2 (1 - rho)]) A
//   B' = -(1 + 8 [A^2 rho - B^2 (1 - rho)]) B
CollapsedState recurse(const CollapsedState& state);

// Collapsed state after q >= 1 extra iterations, renormalized after every
// step.
//
// In the plane spanned by the two sets each iteration triples the state's
// angle, so P_q(rho) = cos^2(3^q arccos sqrt(rho)) and rounding error grows
// about threefold per step. Double precision tracks the exact value to ~1e-12
// up to q ~ 10; beyond q ~ 25 the result is no longer meaningful except at
// rho = 1/2 and rho = 1, where the recursion is exact.
CollapsedState collapsed_state(double rho, int q);

// Success probability after q >= 0 extra iterations; q = 0 is P0.
double Pq(double rho, int q);

// Uniform amplitude 2^{j - n_tilde} on {F_j = 1} after j main-phase
// iterations, 0 <= j <= n_tilde - p_tilde.
double main_phase_amplitude(const Embedding& embedding, int j);

struct ProbabilitySample {
  double rho;
  double probability;
};

struct ProbabilityCurve {
  int q;
  std::vector<ProbabilitySample> samples;
};

// start, start + step, ... up to stop (inclusive, within half a step). When
// the step is a short decimal the points are formed as integer ratios, so
// 0.26 + 24 * 0.01 lands on 0.5 exactly. Throws DomainError if any point
// leaves (1/4, 1] or the step is not positive.
std::vector<double> rho_grid(double start, double stop, double step);

// One curve per entry of q_list, evaluated at every grid point.
std::vector<ProbabilityCurve> sweep(std::span<const int> q_list, std::span<const double> grid);

}  // namespace mtsearch
