#include "mtsearch/strategy.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mtsearch/analytic.h"
#include "mtsearch/statevector.h"

namespace mtsearch {

IterationChoice choose_iterations(const Embedding& e) {
  const int base = e.main_phase_length();
  if (e.power_of_four) return {SearchRegime::kCertain, base, 1.0};
  const double rho = e.rho.value();
  if (e.rho.compare(1, 2) >= 0) return {SearchRegime::kHighFill, base, P0(rho)};
  return {SearchRegime::kLowFill, base + 1, P1(rho)};
}

SearchOutcome search(const ProblemSpec& spec, std::uint64_t seed) {
  const Embedding embedding = build_embedding(spec);
  const OracleSet oracles(embedding, spec);
  const IterationChoice choice = choose_iterations(embedding);

  const StateVector state = run_main_phase(oracles, choice.iterations);
  const BasisIndex measured = sample(state, seed, 1).begin()->first;

  SearchOutcome out;
  out.measured_index = measured;
  out.measured_item = oracles.symbols().catalog_item_at(measured);
  out.is_target = oracles.f(measured);
  out.regime = choice.regime;
  out.iterations_used = choice.iterations;
  out.predicted_probability = choice.predicted_probability;
  out.oracle_calls_abstract = oracles.call_count();
  out.oracle_calls_recursive_model = total_cost(choice.iterations);
  out.seed = seed;
  return out;
}

bool VerifyReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

double VerifyReport::max_deviation() const {
  double worst = 0.0;
  for (const VerifyCheck& c : checks) worst = std::max(worst, c.deviation);
  return worst;
}

namespace {

// Recursive expansion stays cheap while 3^n_iter * N_tilde is modest.
constexpr int kVerifyRecursiveDepth = 7;
constexpr std::uint64_t kVerifyRecursiveWork = std::uint64_t{1} << 24;

class CheckList {
 public:
  explicit CheckList(VerifyReport& report) : report_(report) {}

  void add(std::string name, double deviation) {
    const bool ok = std::isfinite(deviation) && deviation < report_.tolerance;
    report_.checks.push_back({std::move(name), deviation, ok});
  }

  void add_count(std::string name, std::int64_t measured, std::int64_t expected) {
    add(std::move(name), static_cast<double>(measured > expected ? measured - expected
                                                                 : expected - measured));
  }

 private:
  VerifyReport& report_;
};

// Largest |amplitude - expected| for the main-phase state after j steps:
// 2^{j - n~} on {F_j = 1} (uniform 2^{-n~} for j = 0), zero elsewhere.
double main_phase_deviation(const StateVector& state, const OracleSet& oracles, int j) {
  const Embedding& e = oracles.embedding();
  const double amp = std::ldexp(1.0, j - e.n_tilde);
  double worst = 0.0;
  for (BasisIndex i = 0; i < state.dimension(); ++i) {
    const double expected = (j == 0 || oracles.F(i, j)) ? amp : 0.0;
    worst = std::max(worst, std::abs(state[i] - expected));
  }
  return worst;
}

}  // namespace

VerifyReport verify(const ProblemSpec& spec, int q_max, double tolerance) {
  VerifyReport report;
  report.catalog_size = spec.catalog_size;
  report.num_targets = spec.num_targets();
  report.q_max = q_max;
  report.tolerance = tolerance;
  CheckList checks(report);

  const Embedding e = build_embedding(spec);
  const OracleSet oracles(e, spec);
  const int main_len = e.main_phase_length();
  const std::int64_t nt = e.n_tilde;
  const std::int64_t pt = e.p_tilde;
  const std::int64_t nu0 = static_cast<std::int64_t>(e.num_targets);

  // Counting identities of the auxiliary oracles.
  checks.add_count("count/sign_sum_first", oracles.sign_sum_first(),
                   static_cast<std::int64_t>(e.N_tilde / 2));
  for (int j = 1; j <= main_len - 1; ++j) {
    checks.add_count("count/sign_sum_marked/j=" + std::to_string(j), oracles.sign_sum_marked(j),
                     std::int64_t{1} << (2 * (nt - j) - 1));
  }
  checks.add_count("count/sign_sum_boundary", oracles.sign_sum_marked(main_len),
                   (std::int64_t{1} << (2 * pt)) - 2 * nu0);
  for (int j = 1; j <= main_len; ++j) {
    checks.add_count("count/marked/j=" + std::to_string(j),
                     static_cast<std::int64_t>(oracles.count_marked(j)),
                     std::int64_t{1} << (2 * (nt - j)));
  }

  // Direct path, checked step by step against the closed forms.
  const IterationChoice choice = choose_iterations(e);
  const int total =
      std::max(main_len + std::clamp(q_max, 0, kMaxExtraIterations), choice.iterations);
  const double rho = e.rho.value();
  int recursive_depth = 0;
  while (recursive_depth < std::min(total, kVerifyRecursiveDepth) &&
         pow3(recursive_depth + 1) * e.N_tilde <= kVerifyRecursiveWork) {
    ++recursive_depth;
  }
  std::vector<StateVector> kept;  // direct states 1 ... recursive_depth

  StateVector state = uniform_state(e);
  for (int j = 0; j <= total; ++j) {
    if (j > 0) state = iterate(state, oracles);
    if (j >= 1 && j <= recursive_depth) kept.push_back(state);
    if (j <= main_len) {
      checks.add("main_phase/j=" + std::to_string(j), main_phase_deviation(state, oracles, j));
    }
    if (j >= main_len) {
      const int q = j - main_len;
      const double simulated = success_probability(state, oracles);
      checks.add("probability/q=" + std::to_string(q), std::abs(simulated - Pq(rho, q)));
      if (e.power_of_four) {
        checks.add("certainty/q=" + std::to_string(q), std::abs(simulated - 1.0));
      }
    }
    if (j == choice.iterations) {
      checks.add("strategy/prediction",
                 std::abs(success_probability(state, oracles) - choice.predicted_probability));
    }
  }
  checks.add_count("oracle_calls/direct", static_cast<std::int64_t>(oracles.call_count()), total);
  checks.add("strategy/at_least_half", choice.predicted_probability >= 0.5 ? 0.0 : 1.0);

  // Recursive expansion of I_{s_j}, where tractable.
  for (int n_iter = 1; n_iter <= recursive_depth; ++n_iter) {
    const std::string tag = "/n=" + std::to_string(n_iter);
    const RecursiveRun run = recursive_execute(oracles, n_iter);
    checks.add_count("recursive/calls" + tag, static_cast<std::int64_t>(run.measured_calls),
                     static_cast<std::int64_t>(total_cost(n_iter)));
    const StateVector& direct = kept[static_cast<std::size_t>(n_iter - 1)];
    double worst = 0.0;
    for (BasisIndex i = 0; i < direct.dimension(); ++i) {
      worst = std::max(worst, std::abs(direct[i] - run.state[i]));
    }
    checks.add("recursive/state" + tag, worst);
  }
  return report;
}

}  // namespace mtsearch
