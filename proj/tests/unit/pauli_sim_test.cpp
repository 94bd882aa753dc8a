#include "oracles.h"
#include "wadapt/errors.h"
#include "wadapt/statevector.h"

#include <gtest/gtest.h>

#include <numbers>

using namespace wadapt;

namespace {

constexpr double kPi = std::numbers::pi;

MixerOp random_mixer(int n, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> q(0, n - 1);
  const char ops[] = {'X', 'Y', 'Z'};
  switch (kind(rng)) {
  case 0:
    return MixerOp::standard(n);
  case 1: {
    // sum of arbitrary one-local terms, including several on one qubit
    std::normal_distribution<double> c(0.0, 1.0);
    std::vector<WeightedTerm> t;
    for (int j = 0; j < n; ++j)
      t.push_back({c(rng), PauliTerm::parse(std::string{ops[j % 3]} + std::to_string(j))});
    t.push_back({c(rng), PauliTerm::Y(q(rng))});
    return MixerOp(std::move(t), "adjusted");
  }
  case 2: {
    int a = q(rng), b = q(rng);
    while (b == a)
      b = q(rng);
    return MixerOp::single(PauliTerm::parse(std::string{ops[rng() % 3]} + std::to_string(a) + ops[rng() % 3] +
                                            std::to_string(b)));
  }
  default:
    return MixerOp::single(PauliTerm::parse(std::string{ops[rng() % 3]} + std::to_string(q(rng))));
  }
}

} // namespace

TEST(PauliTerm, ParseLabelAndCommutation) {
  const auto p = PauliTerm::parse("Y2Z5");
  EXPECT_EQ(p.at(2), 'Y');
  EXPECT_EQ(p.at(5), 'Z');
  EXPECT_EQ(p.weight(), 2);
  EXPECT_EQ(p.label(), "Y2Z5");
  EXPECT_EQ(PauliTerm::parse("X1Y0").label(), "Y0X1");
  EXPECT_TRUE(PauliTerm::parse("X0X1").commutes_with(PauliTerm::parse("Y0Y1")));
  EXPECT_FALSE(PauliTerm::parse("X0").commutes_with(PauliTerm::parse("Z0")));
  EXPECT_THROW(PauliTerm::parse("X0X0"), ParameterError);
  EXPECT_THROW(PauliTerm::parse("Q1"), ParameterError);
}

TEST(PauliTerm, YPhaseConvention) {
  const auto y = apply_pauli(StateVector::basis(1, 0), PauliTerm::Y(0));
  EXPECT_NEAR(std::abs(y[1] - Complex(0, 1)), 0.0, 1e-15);
  const auto y1 = apply_pauli(StateVector::basis(1, 1), PauliTerm::Y(0));
  EXPECT_NEAR(std::abs(y1[0] - Complex(0, -1)), 0.0, 1e-15);
}

TEST(UniformState, Amplitudes) {
  const auto s1 = uniform_state(1);
  EXPECT_NEAR(s1[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s1[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
  const auto s2 = uniform_state(2);
  for (std::size_t b = 0; b < 4; ++b)
    EXPECT_NEAR(s2[b].real(), 0.5, 1e-15);
  EXPECT_THROW(uniform_state(0), ParameterError);
}

TEST(UniformState, EnergyIsMinusHalfTotalWeight) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_regular(8, 5, true, seed);
    EXPECT_NEAR(expectation_cost(uniform_state(8), cost_diagonal(g)), -total_weight(g) / 2, 1e-12);
  }
}

TEST(CostDiagonal, SingleEdgeAndTriangle) {
  const auto d = cost_diagonal(oracle::single_edge(1.0));
  EXPECT_EQ(d.values, (std::vector<double>{0.0, -1.0, -1.0, 0.0}));
  EXPECT_EQ(cost_diagonal(oracle::triangle()).min(), -2.0);
}

TEST(CostDiagonal, EqualsNegatedObjectiveAndDenseCost) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = random_regular(4, 3, true, seed);
    const auto d = cost_diagonal(g);
    const auto dense = oracle::cost_dense(g);
    const std::size_t full = d.dim() - 1;
    for (std::size_t b = 0; b < d.dim(); ++b) {
      EXPECT_NEAR(d.values[b], -oracle::maxcut_objective(g, b), 1e-12);
      EXPECT_NEAR(d.values[b], dense(b, b).real(), 1e-12);
      EXPECT_EQ(d.values[b], d.values[b ^ full]);
    }
    EXPECT_NEAR(d.min(), -brute_force_maxcut(g).value, 1e-12);
  }
}

TEST(CostPhase, IdentityAndBasisStates) {
  std::mt19937_64 rng(1);
  const Graph g = random_regular(4, 3, true, 1);
  const auto d = cost_diagonal(g);
  const auto s = oracle::random_state(4, rng);
  EXPECT_EQ(oracle::max_abs_diff(apply_cost_phase(s, 0.0, d), oracle::to_eigen(s)), 0.0);
  const auto b = apply_cost_phase(StateVector::basis(4, 5), 0.7, d);
  EXPECT_NEAR(std::abs(b[5]), 1.0, 1e-15);
  EXPECT_THROW(apply_cost_phase(uniform_state(3), 0.1, d), DimensionError);
}

TEST(CostPhase, MatchesDenseExponentialAndComposes) {
  std::mt19937_64 rng(2);
  const Graph g = random_regular(4, 3, true, 2);
  const auto d = cost_diagonal(g);
  const auto c = oracle::cost_dense(g);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = oracle::random_state(4, rng);
    const double gamma = std::uniform_real_distribution<double>(-3, 3)(rng);
    const oracle::Vec ref = oracle::expm_hermitian(c, gamma) * oracle::to_eigen(s);
    EXPECT_LT(oracle::max_abs_diff(apply_cost_phase(s, gamma, d), ref), 1e-10);
    const auto twice = apply_cost_phase(apply_cost_phase(s, 0.3, d), gamma, d);
    EXPECT_LT(oracle::max_abs_diff(twice, oracle::to_eigen(apply_cost_phase(s, gamma + 0.3, d))), 1e-12);
    const auto swapped = apply_cost_phase(apply_cost_phase(s, gamma, d), 0.3, d);
    EXPECT_LT(oracle::max_abs_diff(twice, oracle::to_eigen(swapped)), 1e-12);
  }
}

TEST(MixerExp, ClosedFormExamples) {
  const auto s = apply_mixer_exp(StateVector::basis(1, 0), kPi / 2, MixerOp::single(PauliTerm::X(0)));
  EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1] - Complex(0, -1)), 0.0, 1e-15);
  std::mt19937_64 rng(3);
  const auto r = oracle::random_state(3, rng);
  EXPECT_EQ(oracle::max_abs_diff(apply_mixer_exp(r, 0.0, MixerOp::standard(3)), oracle::to_eigen(r)), 0.0);
  EXPECT_THROW(apply_mixer_exp(r, 0.1, MixerOp::single(PauliTerm::X(3))), DimensionError);
}

TEST(MixerExp, MatchesDenseExponentialForEveryMixerClass) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 3;
    const auto m = random_mixer(n, rng);
    const auto s = oracle::random_state(n, rng);
    const double beta = std::uniform_real_distribution<double>(-2, 2)(rng);
    const oracle::Vec ref = oracle::expm_hermitian(oracle::mixer_dense(m, n), beta) * oracle::to_eigen(s);
    EXPECT_LT(oracle::max_abs_diff(apply_mixer_exp(s, beta, m), ref), 1e-10) << m.label();
  }
}

TEST(MixerExp, NonCommutingMultiQubitSumUsesExactFallback) {
  const MixerOp m({{0.7, PauliTerm::parse("X0Z1")}, {-1.3, PauliTerm::parse("Y0Y1")}, {0.4, PauliTerm::Z(1)}},
                  "mixed");
  ASSERT_FALSE(m.terms_commute());
  ASSERT_FALSE(m.is_one_local());
  std::mt19937_64 rng(5);
  const auto s = oracle::random_state(2, rng);
  const oracle::Vec ref = oracle::expm_hermitian(oracle::mixer_dense(m, 2), 1.9) * oracle::to_eigen(s);
  EXPECT_LT(oracle::max_abs_diff(apply_mixer_exp(s, 1.9, m), ref), 1e-10);
}

TEST(Expectation, BasisUniformAndDense) {
  const Graph g = random_regular(4, 3, true, 6);
  const auto d = cost_diagonal(g);
  for (std::size_t b = 0; b < d.dim(); ++b)
    EXPECT_EQ(expectation_cost(StateVector::basis(4, b), d), d.values[b]);
  EXPECT_NEAR(expectation_cost(uniform_state(4), d), -total_weight(g) / 2, 1e-14);
  std::mt19937_64 rng(6);
  const auto c = oracle::cost_dense(g);
  for (int t = 0; t < 10; ++t) {
    const auto s = oracle::random_state(4, rng);
    const auto v = oracle::to_eigen(s);
    const double e = expectation_cost(s, d);
    EXPECT_NEAR(e, (v.adjoint() * c * v)(0, 0).real(), 1e-12);
    EXPECT_GE(e, d.min() - 1e-12);
    EXPECT_LE(e, d.max() + 1e-12);
  }
}

TEST(GroundOverlap, Examples) {
  const auto cut = brute_force_maxcut(oracle::triangle());
  EXPECT_NEAR(ground_overlap(uniform_state(3), cut), std::sqrt(6.0 / 8.0), 1e-15);
  EXPECT_NEAR(ground_overlap(StateVector::basis(3, 3), cut), 1.0, 1e-15);
  EXPECT_NEAR(ground_overlap(StateVector::basis(3, 0), cut), 0.0, 1e-15);
}

TEST(PauliSimProperties, NormPreservationAndInversion) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    const Graph g = random_regular(n + (n % 2 == 1 ? 1 : 0), 1, true, trial);
    const auto d = cost_diagonal(g);
    const int nq = g.num_vertices();
    auto s = oracle::random_state(nq, rng);
    const auto start = s;
    std::vector<std::pair<double, MixerOp>> steps;
    for (int k = 0; k < 5; ++k) {
      const double gamma = std::uniform_real_distribution<double>(-3, 3)(rng);
      const double beta = std::uniform_real_distribution<double>(-3, 3)(rng);
      auto m = random_mixer(nq, rng);
      s = apply_mixer_exp(apply_cost_phase(std::move(s), gamma, d), beta, m);
      EXPECT_NEAR(s.norm(), 1.0, 1e-10);
      steps.emplace_back(gamma, m);
      steps.emplace_back(beta, std::move(m));
    }
    for (int k = static_cast<int>(steps.size()) - 1; k >= 0; k -= 2) {
      s = apply_mixer_exp(std::move(s), -steps[k].first, steps[k].second);
      s = apply_cost_phase(std::move(s), -steps[k - 1].first, d);
    }
    EXPECT_LT(oracle::max_abs_diff(s, oracle::to_eigen(start)), 1e-10);
  }
}
