#pragma once

#include "wadapt/graph.h"
#include "wadapt/pauli.h"
#include "wadapt/statevector.h"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace wadapt {

using Vec3 = std::array<double, 3>;

/// Projected gradient descent on the product of 2-spheres.
struct SgdConfig {
  double step_size = 0.1;
  int max_iterations = 10000;
  /// Stop once every per-vertex tangent gradient is shorter than this.
  double tolerance = 1e-6;
  int restarts = 5;
};

/// Rank-3 Burer-Monteiro solution: one unit vector per vertex.
struct RelaxedSolution {
  std::vector<Vec3> vectors;
  /// sum_<jk> w_jk v_j . v_k (minimized)
  double objective = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Polar angle theta in [0, pi] from +z, azimuth phi in [0, 2pi) from +x.
struct BlochAngle {
  double theta = 0.0;
  double phi = 0.0;
};
using BlochAngles = std::vector<BlochAngle>;

struct WarmStart {
  StateVector state;
  BlochAngles angles;
  int pivot = 0;
  double energy = 0.0;
  RelaxedSolution rotated;
};

double relaxed_objective(const Graph &g, const std::vector<Vec3> &vectors);

/// Minimizes the relaxed objective from `config.restarts` random starts and
/// keeps the best. Non-convergence is reported through `converged`.
RelaxedSolution solve_bm_rank3(const Graph &g, const SgdConfig &config, std::uint64_t seed);

/// Single descent from the given vectors; `trace`, if non-null, receives the
/// objective after every iteration.
RelaxedSolution descend_bm_rank3(const Graph &g, std::vector<Vec3> start, const SgdConfig &config,
                                 std::vector<double> *trace = nullptr);

/// Rotation R in SO(3) with R v_pivot = +z.
std::array<Vec3, 3> pole_rotation(const Vec3 &v);

/// Applies the rotation taking `vectors[pivot]` to the north pole to every vector.
RelaxedSolution rotate_to_pole(const RelaxedSolution &r, int pivot);

BlochAngle bloch_angle(const Vec3 &v);

/// Product state with qubit j at cos(theta_j/2)|0> + e^{i phi_j} sin(theta_j/2)|1>.
StateVector product_state(const BlochAngles &angles);

struct BlochState {
  StateVector state;
  BlochAngles angles;
};
BlochState bloch_to_state(const RelaxedSolution &r);

/// Tries every vertex as the pole and keeps the lowest-energy product state
/// (lowest pivot on ties).
WarmStart best_warm_state(const Graph &g, const RelaxedSolution &r);
WarmStart best_warm_state(const Graph &g, const RelaxedSolution &r, const CostDiagonal &d);

/// -sum_j n_j . sigma_j, whose ground state is product_state(angles).
MixerOp adjusted_mixer(const BlochAngles &angles);

struct HyperplaneCut {
  double value = 0.0;
  Assignment assignment = 0;
};

/// Best of `trials` random hyperplanes through the origin.
HyperplaneCut hyperplane_round(const Graph &g, const RelaxedSolution &r, int trials, std::uint64_t seed);

/// `{"vectors": [[x,y,z],...], "objective": f}`
std::string relaxed_to_json(const RelaxedSolution &r);
RelaxedSolution relaxed_from_json(const std::string &text);

} // namespace wadapt
