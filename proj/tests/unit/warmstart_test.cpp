#include "oracles.h"
#include "wadapt/errors.h"
#include "wadapt/warmstart.h"

#include <gtest/gtest.h>

#include <numbers>

using namespace wadapt;

namespace {

constexpr double kPi = std::numbers::pi;

double vdot(const Vec3 &a, const Vec3 &b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

RelaxedSolution random_solution(const Graph &g, std::mt19937_64 &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RelaxedSolution r;
  for (int j = 0; j < g.num_vertices(); ++j) {
    Vec3 v{normal(rng), normal(rng), normal(rng)};
    const double len = std::sqrt(vdot(v, v));
    r.vectors.push_back({v[0] / len, v[1] / len, v[2] / len});
  }
  r.objective = relaxed_objective(g, r.vectors);
  return r;
}

// Minimum of the triangle objective over planar configurations
// v0 = (1,0), v1 = (cos a, sin a), v2 = (cos b, sin b) on a dense grid.
double triangle_planar_grid_minimum() {
  double best = 1e9;
  const int steps = 720;
  for (int i = 0; i < steps; ++i)
    for (int k = 0; k < steps; ++k) {
      const double a = 2 * kPi * i / steps, b = 2 * kPi * k / steps;
      best = std::min(best, std::cos(a) + std::cos(b) + std::cos(a - b));
    }
  return best;
}

} // namespace

TEST(SolveBm, SingleEdgeIsAntipodal) {
  const auto r = solve_bm_rank3(oracle::single_edge(1.0), {}, 1);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.objective, -1.0, 1e-10);
  EXPECT_NEAR(vdot(r.vectors[0], r.vectors[1]), -1.0, 1e-10);
}

TEST(SolveBm, TriangleMatchesPlanarGridSearch) {
  const double grid_min = triangle_planar_grid_minimum();
  ASSERT_NEAR(grid_min, -1.5, 1e-9); // 120 degrees lies on the 0.5-degree grid
  const auto r = solve_bm_rank3(oracle::triangle(), {}, 2);
  EXPECT_NEAR(r.objective, grid_min, 1e-9);
  EXPECT_NEAR(vdot(r.vectors[0], r.vectors[1]), -0.5, 1e-6);
  EXPECT_NEAR(vdot(r.vectors[1], r.vectors[2]), -0.5, 1e-6);
  EXPECT_NEAR(vdot(r.vectors[0], r.vectors[2]), -0.5, 1e-6);
}

TEST(SolveBm, FourCycleReachesBipartiteBound) {
  const auto r = solve_bm_rank3(oracle::cycle(4), {}, 3);
  EXPECT_NEAR(r.objective, -4.0, 1e-10);
  EXPECT_NEAR(vdot(r.vectors[0], r.vectors[2]), 1.0, 1e-8);
  EXPECT_NEAR(vdot(r.vectors[0], r.vectors[1]), -1.0, 1e-8);
}

TEST(SolveBm, UnitVectorsObjectiveConsistencyAndConvergence) {
  int converged = 0;
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const int n = 6 + 2 * (seed % 4);
    const Graph g = random_regular(n, seed % 2 ? 3 : 5, seed % 3 != 0, seed);
    const auto r = solve_bm_rank3(g, {}, seed);
    converged += r.converged;
    if (!r.converged)
      EXPECT_EQ(r.iterations, SgdConfig{}.max_iterations);
    for (const auto &v : r.vectors)
      EXPECT_NEAR(std::sqrt(vdot(v, v)), 1.0, 1e-8);
    EXPECT_NEAR(r.objective, relaxed_objective(g, r.vectors), 1e-8);
    EXPECT_LE(r.objective, 0.0);
  }
  // flat directions occasionally need more than the default iteration budget
  EXPECT_GE(converged, 12);
}

TEST(SolveBm, NeverWorseThanStartAndDeterministic) {
  std::mt19937_64 rng(4);
  const Graph g = random_regular(10, 7, true, 4);
  const auto start = random_solution(g, rng);
  SgdConfig cfg;
  cfg.max_iterations = 3;
  const auto r = descend_bm_rank3(g, start.vectors, cfg);
  EXPECT_LE(r.objective, start.objective);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(relaxed_to_json(solve_bm_rank3(g, {}, 9)), relaxed_to_json(solve_bm_rank3(g, {}, 9)));
}

TEST(SolveBm, SmallStepDescentIsMonotone) {
  SgdConfig cfg;
  cfg.step_size = 0.01;
  cfg.max_iterations = 2000;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    const Graph g = random_regular(8, 5, true, seed);
    std::vector<double> trace;
    const auto start = random_solution(g, rng);
    descend_bm_rank3(g, start.vectors, cfg, &trace);
    ASSERT_FALSE(trace.empty());
    EXPECT_LE(trace.front(), start.objective + 1e-12);
    for (std::size_t i = 1; i < trace.size(); ++i)
      ASSERT_LE(trace[i], trace[i - 1] + 1e-12) << "seed " << seed << " iteration " << i;
  }
}

TEST(RotateToPole, Examples) {
  RelaxedSolution north{{{0, 0, 1}, {1, 0, 0}}, 0.0};
  const auto same = rotate_to_pole(north, 0);
  for (int j = 0; j < 2; ++j)
    for (int c = 0; c < 3; ++c)
      EXPECT_NEAR(same.vectors[j][c], north.vectors[j][c], 1e-15);

  RelaxedSolution pair{{{0.6, 0.0, 0.8}, {-0.6, 0.0, -0.8}}, -1.0};
  const auto rotated = rotate_to_pole(pair, 0);
  EXPECT_NEAR(rotated.vectors[0][2], 1.0, 1e-12);
  EXPECT_NEAR(rotated.vectors[1][2], -1.0, 1e-12);

  RelaxedSolution south{{{0, 0, -1}, {0, 1, 0}}, 0.0};
  const auto flipped = rotate_to_pole(south, 0);
  EXPECT_NEAR(flipped.vectors[0][2], 1.0, 1e-15);
  EXPECT_NEAR(vdot(flipped.vectors[1], flipped.vectors[1]), 1.0, 1e-15);
}

TEST(RotateToPole, PreservesGeometryForAllPivots) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_regular(8, 5, true, trial);
    const auto r = random_solution(g, rng);
    for (int pivot = 0; pivot < 8; ++pivot) {
      const auto rot = rotate_to_pole(r, pivot);
      EXPECT_NEAR(rot.vectors[pivot][0], 0.0, 1e-10);
      EXPECT_NEAR(rot.vectors[pivot][1], 0.0, 1e-10);
      EXPECT_NEAR(rot.vectors[pivot][2], 1.0, 1e-10);
      EXPECT_NEAR(relaxed_objective(g, rot.vectors), r.objective, 1e-10);
      for (int a = 0; a < 8; ++a) {
        EXPECT_NEAR(vdot(rot.vectors[a], rot.vectors[a]), 1.0, 1e-8);
        for (int b = a + 1; b < 8; ++b)
          EXPECT_NEAR(vdot(rot.vectors[a], rot.vectors[b]), vdot(r.vectors[a], r.vectors[b]), 1e-10);
      }
    }
  }
}

TEST(RotateToPole, NearSouthPolePivotIsWellConditioned) {
  RelaxedSolution r{{{1e-9, -2e-9, -1.0}, {1, 0, 0}}, 0.0};
  const auto rot = rotate_to_pole(r, 0);
  EXPECT_NEAR(rot.vectors[0][2], 1.0, 1e-12);
  EXPECT_NEAR(vdot(rot.vectors[1], rot.vectors[1]), 1.0, 1e-12);
}

TEST(BlochToState, PolesAndEquator) {
  RelaxedSolution r{{{0, 0, 1}}, 0.0};
  auto [north, a] = bloch_to_state(r);
  EXPECT_NEAR(std::abs(north[0] - Complex(1, 0)), 0.0, 1e-15);
  r.vectors = {{0, 0, -1}};
  auto [south, sa] = bloch_to_state(r);
  EXPECT_NEAR(std::abs(south[1] - Complex(1, 0)), 0.0, 1e-15);
  EXPECT_EQ(sa[0].phi, 0.0);
  r.vectors = {{1, 0, 0}};
  auto [plus, pa] = bloch_to_state(r);
  EXPECT_NEAR(std::abs(plus[0] - 1 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(plus[1] - 1 / std::sqrt(2.0)), 0.0, 1e-15);
  r.vectors = {{0, -1, 0}};
  EXPECT_NEAR(bloch_angle(r.vectors[0]).phi, 1.5 * kPi, 1e-15);
}

TEST(BlochToState, ProductStateMatchesPauliExpectations) {
  std::mt19937_64 rng(6);
  const Graph g = random_regular(4, 3, true, 6);
  const auto r = random_solution(g, rng);
  const auto [s, angles] = bloch_to_state(r);
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(expectation_mixer(s, MixerOp::single(PauliTerm::X(j))), r.vectors[j][0], 1e-12);
    EXPECT_NEAR(expectation_mixer(s, MixerOp::single(PauliTerm::Y(j))), r.vectors[j][1], 1e-12);
    EXPECT_NEAR(expectation_mixer(s, MixerOp::single(PauliTerm::Z(j))), r.vectors[j][2], 1e-12);
  }
}

TEST(BestWarmState, SingleEdgeAndFourCycle) {
  const Graph edge = oracle::single_edge(1.0);
  const auto w = best_warm_state(edge, RelaxedSolution{{{1, 0, 0}, {-1, 0, 0}}, -1.0});
  EXPECT_NEAR(w.energy, -1.0, 1e-12);
  EXPECT_EQ(w.pivot, 0);
  EXPECT_NEAR(std::norm(w.state[2]), 1.0, 1e-12); // vertex 0 at |0>, vertex 1 at |1>

  const Graph c4 = oracle::cycle(4);
  const auto w4 = best_warm_state(c4, solve_bm_rank3(c4, {}, 1));
  EXPECT_NEAR(w4.energy, -4.0, 1e-10);
  EXPECT_NEAR(ground_overlap(w4.state, brute_force_maxcut(c4)), 1.0, 1e-8);
}

TEST(BestWarmState, PicksLowestEnergyPivot) {
  std::mt19937_64 rng(7);
  const Graph g = random_regular(6, 3, true, 7);
  const auto r = random_solution(g, rng);
  const auto d = cost_diagonal(g);
  const auto best = best_warm_state(g, r);
  for (int p = 0; p < 6; ++p) {
    const auto [s, a] = bloch_to_state(rotate_to_pole(r, p));
    EXPECT_LE(best.energy, expectation_cost(s, d) + 1e-15);
  }
  EXPECT_NEAR(best.energy, expectation_cost(best.state, d), 1e-12);
}

TEST(BestWarmState, BeatsUniformStateOnTypicalWeightedInstances) {
  int below = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_regular(6, 3, true, seed);
    const auto w = best_warm_state(g, solve_bm_rank3(g, {}, seed));
    below += w.energy < -total_weight(g) / 2;
  }
  EXPECT_GE(below, 9);
}

TEST(AdjustedMixer, Examples) {
  BlochAngles north(3, BlochAngle{0.0, 0.0});
  const auto mz = adjusted_mixer(north);
  ASSERT_EQ(mz.terms().size(), 3u);
  for (int j = 0; j < 3; ++j) {
    EXPECT_EQ(mz.terms()[j].term, PauliTerm::Z(j));
    EXPECT_EQ(mz.terms()[j].coefficient, -1.0);
  }
  EXPECT_NEAR(expectation_mixer(StateVector(3), mz), -3.0, 1e-15);

  BlochAngles equator(3, BlochAngle{kPi / 2, 0.0});
  const auto mx = adjusted_mixer(equator);
  ASSERT_EQ(mx.terms().size(), 3u);
  for (int j = 0; j < 3; ++j) {
    EXPECT_EQ(mx.terms()[j].term, PauliTerm::X(j));
    EXPECT_NEAR(mx.terms()[j].coefficient, -1.0, 1e-15);
  }
  EXPECT_NEAR(expectation_mixer(uniform_state(3), mx), -3.0, 1e-14);
}

TEST(AdjustedMixer, WarmStateIsUniqueGroundStateOfDenseOperator) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> th(0, kPi), ph(0, 2 * kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 4;
    BlochAngles a;
    for (int j = 0; j < n; ++j)
      a.push_back({th(rng), ph(rng)});
    const auto s = product_state(a);
    const auto h = oracle::mixer_dense(adjusted_mixer(a), n);
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(h);
    EXPECT_NEAR(es.eigenvalues()[0], -n, 1e-10);
    if (es.eigenvalues().size() > 1)
      EXPECT_GT(es.eigenvalues()[1], -n + 1.5);
    const oracle::Vec v = oracle::to_eigen(s);
    EXPECT_LT((h * v + n * v).norm(), 1e-10);
    EXPECT_NEAR(expectation_mixer(s, adjusted_mixer(a)), -n, 1e-10);
  }
}

TEST(Hyperplane, Examples) {
  const auto edge = oracle::single_edge(1.0);
  EXPECT_EQ(hyperplane_round(edge, RelaxedSolution{{{0, 0, 1}, {0, 0, -1}}, -1}, 5, 1).value, 1.0);
  const auto c4 = oracle::cycle(4);
  RelaxedSolution alt{{{0, 0, 1}, {0, 0, -1}, {0, 0, 1}, {0, 0, -1}}, -4};
  EXPECT_EQ(hyperplane_round(c4, alt, 5, 2).value, 4.0);
}

TEST(Hyperplane, TriangleEveryPartitionCutsTwo) {
  RelaxedSolution tri{{{1, 0, 0}, {-0.5, std::sqrt(3.0) / 2, 0}, {-0.5, -std::sqrt(3.0) / 2, 0}}, -1.5};
  const Graph g = oracle::triangle();
  // exhaustive sweep of hyperplane normals: every generic one separates 1 from 2
  for (int i = 1; i < 90; ++i)
    for (int k = 0; k < 180; ++k) {
      const double t = kPi * i / 90, p = 2 * kPi * k / 180;
      const Vec3 nrm{std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
      Assignment x = 0;
      for (int j = 0; j < 3; ++j)
        if (vdot(tri.vectors[j], nrm) < 0)
          x |= Assignment{1} << j;
      ASSERT_EQ(g.cut_value(x), 2.0);
    }
  EXPECT_EQ(hyperplane_round(g, tri, 100, 3).value, 2.0);
}

TEST(RelaxedJson, RoundTripAndValidation) {
  const Graph g = random_regular(6, 3, true, 1);
  const auto r = solve_bm_rank3(g, {}, 1);
  const auto back = relaxed_from_json(relaxed_to_json(r));
  EXPECT_EQ(back.vectors, r.vectors);
  EXPECT_EQ(back.objective, r.objective);
  EXPECT_THROW(relaxed_from_json(R"({"vectors": [[1, 1, 0]], "objective": 0})"), FormatError);
}
