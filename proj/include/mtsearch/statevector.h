#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mtsearch/embedding.h"

namespace mtsearch {

// Dense real amplitudes over the N_tilde basis states, plus the number of
// iterations applied so far. Every operator in the algorithm is a real
// reflection, so no imaginary parts are carried.
class StateVector {
 public:
  StateVector(std::vector<double> amplitudes, int step);

  std::span<const double> amplitudes() const { return amplitudes_; }
  std::span<double> amplitudes() { return amplitudes_; }
  double operator[](BasisIndex i) const { return amplitudes_[i]; }
  std::uint64_t dimension() const { return amplitudes_.size(); }
  int step() const { return step_; }
  void set_step(int step) { step_ = step; }

  double norm_squared() const;

 private:
  std::vector<double> amplitudes_;
  int step_;
};

double inner_product(std::span<const double> a, std::span<const double> b);

// v <- v - 2 <axis|v> axis, for a unit vector axis.
void reflect_about(std::span<double> v, std::span<const double> axis);

// v <- v - 2 <s0|v> s0 for the uniform state s0, without materializing s0.
void reflect_about_uniform(std::span<double> v);

// Equal superposition 1/sqrt(N_tilde) over every basis state, step 0.
// Throws SizeGateError above kMaxDenseDimension.
StateVector uniform_state(const Embedding& embedding);

// The operator I_j: multiplies amplitude i by (-1)^{F_{j+1}(i)}.
//
// Applied as the oracle-free diagonal (-1)^{f_{j+1}} followed by the target
// phase flip (-1)^f. The two factors commute and their product is
// (-1)^{F_{j+1}} because no target has an all-zero leading symbol pair. One
// oracle query is recorded per application.
void apply_phase_oracle(std::span<double> amplitudes, const OracleSet& oracles, int j);
void apply_phase_oracle(StateVector& state, const OracleSet& oracles, int j);

// One step s_{j+1} = -I_{s_j} I_j s_j with j = state.step(). The reflection
// axis is the current state itself.
StateVector iterate(const StateVector& state, const OracleSet& oracles);

// Uniform state followed by n_iter iterations.
StateVector run_main_phase(const OracleSet& oracles, int n_iter);

// Sum of squared amplitudes over target indices.
double success_probability(const StateVector& state, const OracleSet& oracles);

// Measurement outcomes in the computational basis: `trials` independent draws
// with probability amplitude^2, seeded mt19937_64. Returns index -> count.
std::map<BasisIndex, std::uint64_t> sample(const StateVector& state, std::uint64_t seed,
                                           std::uint64_t trials);

}  // namespace mtsearch
