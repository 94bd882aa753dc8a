#include "wadapt/warmstart.h"

#include "wadapt/errors.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "json.hpp"

namespace wadapt {

namespace {

double dot(const Vec3 &a, const Vec3 &b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 normalized(const Vec3 &v) {
  const double n = std::sqrt(dot(v, v));
  return {v[0] / n, v[1] / n, v[2] / n};
}

Vec3 rotate(const std::array<Vec3, 3> &m, const Vec3 &v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

std::vector<Vec3> random_unit_vectors(int n, std::mt19937_64 &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vec3> vs(n);
  for (auto &v : vs) {
    double len = 0.0;
    do {
      v = {normal(rng), normal(rng), normal(rng)};
      len = dot(v, v);
    } while (len < 1e-24);
    v = normalized(v);
  }
  return vs;
}

void check_vectors(const Graph &g, const std::vector<Vec3> &vs) {
  if (static_cast<int>(vs.size()) != g.num_vertices())
    throw DimensionError("relaxed solution: expected one vector per vertex");
}

} // namespace

double relaxed_objective(const Graph &g, const std::vector<Vec3> &vectors) {
  check_vectors(g, vectors);
  double f = 0.0;
  for (const auto &e : g.edges())
    f += e.w * dot(vectors[e.j], vectors[e.k]);
  return f;
}

RelaxedSolution descend_bm_rank3(const Graph &g, std::vector<Vec3> start, const SgdConfig &config,
                                 std::vector<double> *trace) {
  check_vectors(g, start);
  const int n = g.num_vertices();
  for (auto &v : start)
    v = normalized(v);

  RelaxedSolution best{start, relaxed_objective(g, start), false, 0};
  std::vector<Vec3> cur = std::move(start);
  std::vector<Vec3> grad(n);

  for (int it = 0; it < config.max_iterations; ++it) {
    std::fill(grad.begin(), grad.end(), Vec3{0.0, 0.0, 0.0});
    for (const auto &e : g.edges()) {
      for (int c = 0; c < 3; ++c) {
        grad[e.j][c] += e.w * cur[e.k][c];
        grad[e.k][c] += e.w * cur[e.j][c];
      }
    }
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      const double radial = dot(grad[j], cur[j]);
      for (int c = 0; c < 3; ++c)
        grad[j][c] -= radial * cur[j][c];
      worst = std::max(worst, std::sqrt(dot(grad[j], grad[j])));
    }
    if (worst < config.tolerance) {
      best.converged = true;
      best.iterations = it;
      break;
    }
    for (int j = 0; j < n; ++j) {
      Vec3 next{cur[j][0] - config.step_size * grad[j][0], cur[j][1] - config.step_size * grad[j][1],
                cur[j][2] - config.step_size * grad[j][2]};
      cur[j] = normalized(next);
    }
    const double f = relaxed_objective(g, cur);
    if (trace)
      trace->push_back(f);
    best.iterations = it + 1;
    if (f <= best.objective) {
      best.vectors = cur;
      best.objective = f;
    }
  }
  return best;
}

RelaxedSolution solve_bm_rank3(const Graph &g, const SgdConfig &config, std::uint64_t seed) {
  if (config.step_size <= 0.0 || config.max_iterations < 0 || config.restarts < 1)
    throw ParameterError("solve_bm_rank3: invalid descent settings");
  RelaxedSolution best;
  bool have = false;
  for (int r = 0; r < config.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    auto sol = descend_bm_rank3(g, random_unit_vectors(g.num_vertices(), rng), config);
    if (!have || sol.objective < best.objective) {
      best = std::move(sol);
      have = true;
    }
  }
  return best;
}

std::array<Vec3, 3> pole_rotation(const Vec3 &v_in) {
  const Vec3 v = normalized(v_in);
  std::array<Vec3, 3> flip{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  Vec3 u = v;
  if (v[2] < 0.0) {
    // pi about x first, so the remaining rotation is well conditioned
    flip = {Vec3{1, 0, 0}, Vec3{0, -1, 0}, Vec3{0, 0, -1}};
    u = {v[0], -v[1], -v[2]};
  }
  // Minimal rotation u -> z: R = I + K + K^2 / (1 + c), K = [u x z]_x
  const Vec3 k{u[1], -u[0], 0.0};
  const double c = u[2];
  const std::array<Vec3, 3> kx{Vec3{0.0, -k[2], k[1]}, Vec3{k[2], 0.0, -k[0]}, Vec3{-k[1], k[0], 0.0}};
  std::array<Vec3, 3> rot{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double k2 = 0.0;
      for (int l = 0; l < 3; ++l)
        k2 += kx[i][l] * kx[l][j];
      rot[i][j] = (i == j ? 1.0 : 0.0) + kx[i][j] + k2 / (1.0 + c);
    }
  std::array<Vec3, 3> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l)
        out[i][j] += rot[i][l] * flip[l][j];
  return out;
}

RelaxedSolution rotate_to_pole(const RelaxedSolution &r, int pivot) {
  if (pivot < 0 || pivot >= static_cast<int>(r.vectors.size()))
    throw ParameterError("rotate_to_pole: pivot out of range");
  const auto rot = pole_rotation(r.vectors[pivot]);
  RelaxedSolution out = r;
  for (auto &v : out.vectors)
    v = rotate(rot, v);
  return out;
}

BlochAngle bloch_angle(const Vec3 &v) {
  const double z = std::clamp(v[2], -1.0, 1.0);
  BlochAngle a;
  a.theta = std::acos(z);
  if (std::sin(a.theta) < 1e-12) {
    a.phi = 0.0;
  } else {
    a.phi = std::atan2(v[1], v[0]);
    if (a.phi < 0.0)
      a.phi += 2.0 * std::numbers::pi;
    if (a.phi >= 2.0 * std::numbers::pi)
      a.phi = 0.0;
  }
  return a;
}

StateVector product_state(const BlochAngles &angles) {
  const int n = static_cast<int>(angles.size());
  std::vector<std::array<Complex, 2>> local(n);
  for (int j = 0; j < n; ++j) {
    local[j] = {Complex(std::cos(angles[j].theta / 2.0), 0.0),
                std::polar(std::sin(angles[j].theta / 2.0), angles[j].phi)};
  }
  StateVector s(n);
  for (std::size_t b = 0; b < s.dim(); ++b) {
    Complex a{1.0, 0.0};
    for (int j = 0; j < n; ++j)
      a *= local[j][(b >> j) & 1U];
    s[b] = a;
  }
  return s;
}

BlochState bloch_to_state(const RelaxedSolution &r) {
  BlochAngles angles;
  angles.reserve(r.vectors.size());
  for (const auto &v : r.vectors)
    angles.push_back(bloch_angle(v));
  StateVector s = product_state(angles);
  return {std::move(s), std::move(angles)};
}

WarmStart best_warm_state(const Graph &g, const RelaxedSolution &r) {
  return best_warm_state(g, r, cost_diagonal(g));
}

WarmStart best_warm_state(const Graph &g, const RelaxedSolution &r, const CostDiagonal &d) {
  check_vectors(g, r.vectors);
  if (g.num_vertices() == 0)
    throw ParameterError("best_warm_state: empty graph");
  WarmStart best;
  bool have = false;
  for (int pivot = 0; pivot < g.num_vertices(); ++pivot) {
    auto rotated = rotate_to_pole(r, pivot);
    auto [state, angles] = bloch_to_state(rotated);
    const double e = expectation_cost(state, d);
    if (!have || e < best.energy) {
      best = WarmStart{std::move(state), std::move(angles), pivot, e, std::move(rotated)};
      have = true;
    }
  }
  return best;
}

MixerOp adjusted_mixer(const BlochAngles &angles) {
  std::vector<WeightedTerm> terms;
  const auto add = [&terms](double c, PauliTerm p) {
    if (std::abs(c) > 1e-14)
      terms.push_back({c, p});
  };
  for (int j = 0; j < static_cast<int>(angles.size()); ++j) {
    const auto [theta, phi] = angles[j];
    add(-std::sin(theta) * std::cos(phi), PauliTerm::X(j));
    add(-std::sin(theta) * std::sin(phi), PauliTerm::Y(j));
    add(-std::cos(theta), PauliTerm::Z(j));
  }
  return MixerOp(std::move(terms), "adjusted");
}

HyperplaneCut hyperplane_round(const Graph &g, const RelaxedSolution &r, int trials, std::uint64_t seed) {
  check_vectors(g, r.vectors);
  if (trials < 1)
    throw ParameterError("hyperplane_round: need at least one trial");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  HyperplaneCut best{-1.0, 0};
  for (int t = 0; t < trials; ++t) {
    const Vec3 normal_vec{normal(rng), normal(rng), normal(rng)};
    Assignment x = 0;
    for (int j = 0; j < g.num_vertices(); ++j)
      if (dot(r.vectors[j], normal_vec) < 0.0)
        x |= Assignment{1} << j;
    const double f = g.cut_value(x);
    if (f > best.value)
      best = {f, x};
  }
  return best;
}

std::string relaxed_to_json(const RelaxedSolution &r) {
  nlohmann::json doc;
  doc["vectors"] = nlohmann::json::array();
  for (const auto &v : r.vectors)
    doc["vectors"].push_back({v[0], v[1], v[2]});
  doc["objective"] = r.objective;
  return doc.dump();
}

RelaxedSolution relaxed_from_json(const std::string &text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw FormatError(std::string("relaxed solution: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vectors") || !doc["vectors"].is_array() ||
      !doc.contains("objective") || !doc["objective"].is_number())
    throw FormatError("relaxed solution: expected {\"vectors\": [...], \"objective\": f}");
  RelaxedSolution r;
  for (const auto &v : doc["vectors"]) {
    if (!v.is_array() || v.size() != 3)
      throw FormatError("relaxed solution: vectors must have three components");
    Vec3 vec{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    if (std::abs(std::sqrt(dot(vec, vec)) - 1.0) > 1e-8)
      throw FormatError("relaxed solution: vectors must have unit length");
    r.vectors.push_back(vec);
  }
  r.objective = doc["objective"].get<double>();
  return r;
}

} // namespace wadapt
