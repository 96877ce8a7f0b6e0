#include "mtsearch/statevector.h"

#include <gtest/gtest.h>

#include <cmath>

#include "mtsearch/errors.h"
#include "test_support.h"

namespace mtsearch {
namespace {

using testing::Matrix;
using testing::ReferenceModel;

struct Problem {
  ProblemSpec spec;
  Embedding embedding;
  std::unique_ptr<OracleSet> oracles;

  explicit Problem(ProblemSpec s)
      : spec(std::move(s)),
        embedding(build_embedding(spec)),
        oracles(std::make_unique<OracleSet>(embedding, spec)) {}
};

TEST(UniformState, Amplitudes) {
  const StateVector s4 = uniform_state(build_embedding(1, 1));
  ASSERT_EQ(s4.dimension(), 4u);
  for (double a : s4.amplitudes()) EXPECT_EQ(a, 0.5);
  EXPECT_EQ(s4.norm_squared(), 1.0);
  EXPECT_EQ(s4.step(), 0);

  const StateVector s16 = uniform_state(build_embedding(4, 1));
  ASSERT_EQ(s16.dimension(), 16u);
  for (double a : s16.amplitudes()) EXPECT_EQ(a, 0.25);

  for (std::uint64_t catalog : {5, 17, 100, 1000}) {
    EXPECT_EQ(uniform_state(build_embedding(catalog, 1)).norm_squared(), 1.0);
  }
}

TEST(UniformState, SizeGate) {
  // 4^11 = 2^22 is the largest accepted dimension: catalog up to 4^10.
  EXPECT_NO_THROW(build_embedding(std::uint64_t{1} << 20, 1));
  EXPECT_EQ(build_embedding(std::uint64_t{1} << 20, 1).N_tilde, kMaxDenseDimension);
  EXPECT_THROW(uniform_state(build_embedding((std::uint64_t{1} << 20) + 1, 1)), SizeGateError);
}

TEST(PhaseOracle, FlipsExactlyTheMarkedSet) {
  Problem p(random_targets(40, 9, 5));
  const ReferenceModel ref(40, p.spec.targets);
  for (int j = 0; j <= p.embedding.n_tilde + 1; ++j) {
    StateVector s = uniform_state(p.embedding);
    apply_phase_oracle(s, *p.oracles, j);
    for (BasisIndex i = 0; i < s.dimension(); ++i) {
      const double expected = uniform_state(p.embedding)[i] * (ref.F(i, j + 1) ? -1.0 : 1.0);
      ASSERT_EQ(s[i], expected) << "j=" << j << " i=" << i;
    }
  }
}

TEST(PhaseOracle, InvolutionBitForBit) {
  Problem p(random_targets(64, 11, 2));
  StateVector s = run_main_phase(*p.oracles, 2);
  const std::vector<double> before(s.amplitudes().begin(), s.amplitudes().end());
  for (int j = 0; j < 4; ++j) {
    apply_phase_oracle(s, *p.oracles, j);
    apply_phase_oracle(s, *p.oracles, j);
    for (BasisIndex i = 0; i < s.dimension(); ++i) ASSERT_EQ(s[i], before[i]);
  }
}

TEST(PhaseOracle, OneQueryPerApplication) {
  Problem p(first_targets(16, 3));
  p.oracles->reset_call_count();
  StateVector s = uniform_state(p.embedding);
  for (int k = 0; k < 5; ++k) apply_phase_oracle(s, *p.oracles, k % 3);
  EXPECT_EQ(p.oracles->call_count(), 5u);
}

TEST(PhaseOracle, SmallestCaseOnUniformState) {
  // N_tilde = 4, the single target sits at index 1 and the all-zero index is
  // the ground item, so F_1 marks the target alone: one sign flips, and the
  // sign sum is 4 - 2 = N_tilde / 2.
  Problem p(first_targets(1, 1));
  StateVector s = uniform_state(p.embedding);
  apply_phase_oracle(s, *p.oracles, 0);
  int flipped = 0;
  double sign_sum = 0.0;
  for (double a : s.amplitudes()) {
    if (a < 0) ++flipped;
    sign_sum += a / 0.5;
  }
  EXPECT_EQ(flipped, 1);
  EXPECT_EQ(s[1], -0.5);
  EXPECT_EQ(sign_sum, 2.0);
}

TEST(Iterate, SmallestCaseReachesTarget) {
  Problem p(first_targets(1, 1));
  const StateVector s1 = iterate(uniform_state(p.embedding), *p.oracles);
  EXPECT_EQ(s1.step(), 1);
  EXPECT_EQ(s1[0], 0.0);
  EXPECT_EQ(s1[1], 1.0);
  EXPECT_EQ(s1[2], 0.0);
  EXPECT_EQ(s1[3], 0.0);
}

TEST(Iterate, FirstStepAmplitudes) {
  Problem p(random_targets(100, 7, 1));
  const StateVector s1 = iterate(uniform_state(p.embedding), *p.oracles);
  const double amp = std::ldexp(1.0, 1 - p.embedding.n_tilde);
  for (BasisIndex i = 0; i < s1.dimension(); ++i) {
    ASSERT_EQ(s1[i], p.oracles->F(i, 1) ? amp : 0.0);
  }
}

TEST(Iterate, InductionExactDyadicAmplitudes) {
  for (std::uint64_t catalog : {3, 16, 50, 200, 1000}) {
    for (std::uint64_t count : {1, 2, 3, 4, 5, 11, 16, 17, 63, 64}) {
      if (count > catalog) continue;
      Problem p(random_targets(catalog, count, catalog + 17 * count));
      StateVector s = uniform_state(p.embedding);
      for (int j = 1; j <= p.embedding.main_phase_length(); ++j) {
        s = iterate(s, *p.oracles);
        const double amp = std::ldexp(1.0, j - p.embedding.n_tilde);
        for (BasisIndex i = 0; i < s.dimension(); ++i) {
          ASSERT_EQ(s[i], p.oracles->F(i, j) ? amp : 0.0)
              << catalog << "/" << count << " j=" << j << " i=" << i;
        }
      }
    }
  }
}

TEST(Iterate, NormPreservedUpToLargeDimension) {
  // Covers dimensions up to 16384 with extra iterations past the main phase.
  for (std::uint64_t catalog : {1, 7, 30, 250, 4096}) {
    for (std::uint64_t count : {1, 3, 6, 13, 37}) {
      if (count > catalog) continue;
      Problem p(random_targets(catalog, count, 5 * catalog + count));
      StateVector s = uniform_state(p.embedding);
      for (int j = 0; j < p.embedding.main_phase_length() + 4; ++j) {
        s = iterate(s, *p.oracles);
        ASSERT_NEAR(s.norm_squared(), 1.0, 1e-12);
      }
    }
  }
}

TEST(Iterate, MatchesExplicitMatrices) {
  for (std::uint64_t catalog : {1, 2, 4, 9, 16}) {
    for (std::uint64_t count = 1; count <= catalog; ++count) {
      Problem p(random_targets(catalog, count, 3 * catalog + count));
      const ReferenceModel ref(catalog, p.spec.targets);
      const int steps = p.embedding.main_phase_length() + 3;
      const auto expected = testing::reference_states(ref, steps);
      StateVector s = uniform_state(p.embedding);
      for (int j = 1; j <= steps; ++j) {
        s = iterate(s, *p.oracles);
        const auto& e = expected[static_cast<std::size_t>(j)];
        for (BasisIndex i = 0; i < s.dimension(); ++i) ASSERT_NEAR(s[i], e[i], 1e-12);
      }
    }
  }
}

TEST(RunMainPhase, CertaintyForPowerOfFour) {
  for (std::uint64_t count : {1, 4, 16, 64}) {
    Problem p(random_targets(300, count, count));
    const StateVector s = run_main_phase(*p.oracles, p.embedding.main_phase_length());
    const double amp = std::ldexp(1.0, -p.embedding.p_tilde);
    for (BasisIndex i = 0; i < s.dimension(); ++i) ASSERT_EQ(s[i], p.oracles->f(i) ? amp : 0.0);
    EXPECT_EQ(success_probability(s, *p.oracles), 1.0);
  }
}

TEST(RunMainPhase, NonPowerOfFourSpreadsOverBoundarySet) {
  Problem p(random_targets(20, 6, 4));
  const StateVector s = run_main_phase(*p.oracles, p.embedding.main_phase_length());
  const double amp = std::ldexp(1.0, -p.embedding.p_tilde);
  std::uint64_t support = 0;
  for (BasisIndex i = 0; i < s.dimension(); ++i) {
    if (s[i] != 0.0) {
      ++support;
      ASSERT_EQ(s[i], amp);
      ASSERT_TRUE(p.oracles->F(i, p.embedding.main_phase_length()));
    }
  }
  EXPECT_EQ(support, 16u);
  EXPECT_EQ(success_probability(s, *p.oracles), 0.375);
}

TEST(RunMainPhase, ZeroIterationsIsUniform) {
  Problem p(first_targets(10, 2));
  const StateVector s = run_main_phase(*p.oracles, 0);
  for (double a : s.amplitudes()) EXPECT_EQ(a, 0.125);
  EXPECT_DOUBLE_EQ(success_probability(s, *p.oracles), 2.0 / 64.0);
  EXPECT_EQ(p.oracles->call_count(), 0u);
  EXPECT_THROW(run_main_phase(*p.oracles, -1), DomainError);
}

TEST(Sample, CertaintyStateAlwaysHitsTargets) {
  Problem p(random_targets(60, 16, 8));
  const StateVector s = run_main_phase(*p.oracles, p.embedding.main_phase_length());
  std::uint64_t total = 0;
  for (const auto& [index, count] : sample(s, 42, 5000)) {
    EXPECT_TRUE(p.oracles->f(index));
    total += count;
  }
  EXPECT_EQ(total, 5000u);
}

TEST(Sample, UniformFrequenciesWithinThreeSigma) {
  const StateVector s = uniform_state(build_embedding(1, 1));
  const std::uint64_t trials = 100000;
  const auto counts = sample(s, 2024, trials);
  const double sigma = std::sqrt(trials * 0.25 * 0.75);
  for (BasisIndex i = 0; i < 4; ++i) {
    const double c = counts.count(i) ? static_cast<double>(counts.at(i)) : 0.0;
    EXPECT_LT(std::abs(c - trials * 0.25), 3 * sigma) << "index " << i;
  }
}

TEST(Sample, OneExtraIterationAtThreeEighths) {
  Problem p(random_targets(20, 6, 12));
  const StateVector s = run_main_phase(*p.oracles, p.embedding.main_phase_length() + 1);
  const std::uint64_t trials = 100000;
  std::uint64_t hits = 0;
  for (const auto& [index, count] : sample(s, 77, trials)) {
    if (p.oracles->f(index)) hits += count;
  }
  const double expected = 27.0 / 32.0;
  const double sigma = std::sqrt(trials * expected * (1 - expected));
  EXPECT_LT(std::abs(static_cast<double>(hits) - trials * expected), 3 * sigma);
}

TEST(Sample, DeterministicGivenSeed) {
  Problem p(random_targets(20, 6, 12));
  const StateVector s = run_main_phase(*p.oracles, 3);
  EXPECT_EQ(sample(s, 5, 1000), sample(s, 5, 1000));
  EXPECT_NE(sample(s, 5, 1000), sample(s, 6, 1000));
  EXPECT_THROW(sample(s, 5, 0), DomainError);
}

}  // namespace
}  // namespace mtsearch
