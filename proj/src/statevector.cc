#include "mtsearch/statevector.h"

#include <cmath>
#include <random>

#include "mtsearch/errors.h"

namespace mtsearch {

StateVector::StateVector(std::vector<double> amplitudes, int step)
    : amplitudes_(std::move(amplitudes)), step_(step) {}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for (double a : amplitudes_) sum += a * a;
  return sum;
}

double inner_product(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void reflect_about(std::span<double> v, std::span<const double> axis) {
  const double c = 2.0 * inner_product(axis, v);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * axis[i];
}

void reflect_about_uniform(std::span<double> v) {
  // 2 <s0|v> s0_i = (2 / dim) * sum(v).
  double sum = 0.0;
  for (double x : v) sum += x;
  const double shift = 2.0 * sum / static_cast<double>(v.size());
  for (double& x : v) x -= shift;
}

StateVector uniform_state(const Embedding& embedding) {
  if (embedding.N_tilde > kMaxDenseDimension) {
    throw SizeGateError("dense state of dimension " + std::to_string(embedding.N_tilde) +
                        " exceeds limit " + std::to_string(kMaxDenseDimension));
  }
  // 1/sqrt(4^n_tilde) = 2^-n_tilde, exact.
  const double amp = std::ldexp(1.0, -embedding.n_tilde);
  return StateVector(std::vector<double>(embedding.N_tilde, amp), 0);
}

void apply_phase_oracle(std::span<double> amplitudes, const OracleSet& oracles, int j) {
  const int aux = j + 1;
  for (BasisIndex i = 0; i < amplitudes.size(); ++i) {
    if (oracles.f_aux(i, aux)) amplitudes[i] = -amplitudes[i];
  }
  for (BasisIndex t : oracles.target_indices()) amplitudes[t] = -amplitudes[t];
  oracles.record_query();
}

void apply_phase_oracle(StateVector& state, const OracleSet& oracles, int j) {
  apply_phase_oracle(state.amplitudes(), oracles, j);
}

StateVector iterate(const StateVector& state, const OracleSet& oracles) {
  std::vector<double> v(state.amplitudes().begin(), state.amplitudes().end());
  apply_phase_oracle(v, oracles, state.step());
  reflect_about(v, state.amplitudes());
  for (double& x : v) x = -x;
  return StateVector(std::move(v), state.step() + 1);
}

StateVector run_main_phase(const OracleSet& oracles, int n_iter) {
  if (n_iter < 0) throw DomainError("iteration count must be non-negative");
  StateVector state = uniform_state(oracles.embedding());
  for (int k = 0; k < n_iter; ++k) state = iterate(state, oracles);
  return state;
}

double success_probability(const StateVector& state, const OracleSet& oracles) {
  double p = 0.0;
  for (BasisIndex t : oracles.target_indices()) p += state[t] * state[t];
  return p;
}

std::map<BasisIndex, std::uint64_t> sample(const StateVector& state, std::uint64_t seed,
                                           std::uint64_t trials) {
  if (trials < 1) throw DomainError("trials must be at least 1");
  std::vector<double> weights(state.dimension());
  for (BasisIndex i = 0; i < state.dimension(); ++i) weights[i] = state[i] * state[i];
  std::discrete_distribution<BasisIndex> dist(weights.begin(), weights.end());
  std::mt19937_64 rng(seed);
  std::map<BasisIndex, std::uint64_t> counts;
  for (std::uint64_t k = 0; k < trials; ++k) ++counts[dist(rng)];
  return counts;
}

}  // namespace mtsearch
