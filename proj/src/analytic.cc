#include "mtsearch/analytic.h"

#include <cmath>
#include <string>

#include "mtsearch/errors.h"

namespace mtsearch {
namespace {

void check_rho(double rho) {
  if (!(rho > 0.25 && rho <= 1.0)) {
    throw DomainError("rho=" + std::to_string(rho) + " outside (1/4, 1]");
  }
}

void check_q(int q) {
  if (q < 0 || q > kMaxExtraIterations) {
    throw DomainError("extra iteration count q=" + std::to_string(q) + " outside [0, " +
                      std::to_string(kMaxExtraIterations) + "]");
  }
}

}  // namespace

double P0(double rho) {
  check_rho(rho);
  return rho;
}

double P1(double rho) {
  check_rho(rho);
  const double d = 3.0 - 4.0 * rho;
  return rho * d * d;
}

double extra_iteration_delta(double rho) {
  check_rho(rho);
  return (4.0 * rho - 1.0) / 2.0;
}

double P2(double rho) {
  const double delta = extra_iteration_delta(rho);
  const double C = 8.0 * ((1.0 - delta) * (1.0 - delta) * rho - delta * delta * (1.0 - rho));
  return 4.0 * rho * (1.0 - delta) * (1.0 - delta) * (1.0 - C) * (1.0 - C);
}

CollapsedState first_extra_state(double rho) {
  const double delta = extra_iteration_delta(rho);
  return CollapsedState{1, 1.0 - delta, -delta, rho};
}

CollapsedState recurse(const CollapsedState& s) {
  const double c = 8.0 * (s.A * s.A * s.rho - s.B * s.B * (1.0 - s.rho));
  return CollapsedState{s.q + 1, (1.0 - c) * s.A, -(1.0 + c) * s.B, s.rho};
}

CollapsedState collapsed_state(double rho, int q) {
  check_q(q);
  if (q < 1) throw DomainError("collapsed state needs q >= 1");
  CollapsedState s = first_extra_state(rho);
  while (s.q < q) {
    s = recurse(s);
    // The map preserves the constraint exactly but amplifies any departure
    // from it by up to 9x per step, so rounding error is projected out.
    const double scale = 1.0 / std::sqrt(s.norm_squared());
    s.A *= scale;
    s.B *= scale;
  }
  return s;
}

double Pq(double rho, int q) {
  check_q(q);
  if (q == 0) return P0(rho);
  return collapsed_state(rho, q).success_probability();
}

double main_phase_amplitude(const Embedding& embedding, int j) {
  if (j < 0 || j > embedding.main_phase_length()) {
    throw DomainError("main phase step j=" + std::to_string(j) + " outside [0, " +
                      std::to_string(embedding.main_phase_length()) + "]");
  }
  return std::ldexp(1.0, j - embedding.n_tilde);
}

std::vector<double> rho_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  if (stop < start) throw DomainError("grid stop precedes start");
  const auto count = static_cast<long long>(std::floor((stop - start) / step + 0.5)) + 1;

  // Look for a power of ten that makes start and step integers.
  double scale = 0.0;
  for (int digits = 0, p = 1; digits <= 9; ++digits, p *= 10) {
    const double s = start * p;
    const double d = step * p;
    if (std::abs(s - std::round(s)) < 1e-9 * p && std::abs(d - std::round(d)) < 1e-9 * p) {
      scale = p;
      break;
    }
  }

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    double rho;
    if (scale > 0.0) {
      rho = (std::round(start * scale) + static_cast<double>(k) * std::round(step * scale)) / scale;
    } else {
      rho = start + static_cast<double>(k) * step;
    }
    check_rho(rho);
    grid.push_back(rho);
  }
  return grid;
}

std::vector<ProbabilityCurve> sweep(std::span<const int> q_list, std::span<const double> grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    check_rho(grid[i]);
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("rho grid must be strictly increasing");
    }
  }
  std::vector<ProbabilityCurve> curves;
  curves.reserve(q_list.size());
  for (int q : q_list) {
    check_q(q);
    ProbabilityCurve curve{q, {}};
    curve.samples.reserve(grid.size());
    for (double rho : grid) curve.samples.push_back({rho, Pq(rho, q)});
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace mtsearch
