#include "wadapt/statevector.h"

#include "wadapt/errors.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

namespace wadapt {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_dims(std::size_t a, std::size_t b, const char *where) {
  if (a != b)
    throw DimensionError(std::string(where) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
}

void check_support(const StateVector &s, Mask support, const char *where) {
  const int n = s.num_qubits();
  if (n < 64 && (support >> n) != 0)
    throw DimensionError(std::string(where) + ": operator acts outside the " + std::to_string(n) +
                         "-qubit register");
}

// 2x2 unitary on qubit q: [u00 u01; u10 u11].
void apply_one_qubit(StateVector &s, int q, const std::array<Complex, 4> &u) {
  const std::size_t bit = std::size_t{1} << q;
  auto amps = s.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    if (b & bit)
      continue;
    const Complex a0 = amps[b];
    const Complex a1 = amps[b | bit];
    amps[b] = u[0] * a0 + u[1] * a1;
    amps[b | bit] = u[2] * a0 + u[3] * a1;
  }
}

void apply_one_local_exp(StateVector &s, double beta, const MixerOp &m) {
  std::array<std::array<double, 3>, 64> field{};
  Mask touched = 0;
  for (const auto &t : m.terms()) {
    const int q = std::countr_zero(t.term.support());
    const char c = t.term.at(q);
    field[q][c == 'X' ? 0 : (c == 'Y' ? 1 : 2)] += t.coefficient;
    touched |= Mask{1} << q;
  }
  for (int q = 0; q < s.num_qubits(); ++q) {
    if (!((touched >> q) & 1U))
      continue;
    const auto [ax, ay, az] = field[q];
    const double r = std::sqrt(ax * ax + ay * ay + az * az);
    if (r == 0.0)
      continue;
    const double c = std::cos(beta * r);
    const double sn = std::sin(beta * r) / r;
    // h = [[az, ax - i ay], [ax + i ay, -az]]
    const std::array<Complex, 4> u = {
        Complex(c, 0.0) - kI * sn * az,
        -kI * sn * Complex(ax, -ay),
        -kI * sn * Complex(ax, ay),
        Complex(c, 0.0) + kI * sn * az,
    };
    apply_one_qubit(s, q, u);
  }
}

void apply_taylor_exp(StateVector &s, double beta, const MixerOp &m) {
  double bound = 0.0;
  for (const auto &t : m.terms())
    bound += std::abs(t.coefficient);
  const double reach = std::abs(beta) * bound;
  const int steps = std::max(1, static_cast<int>(std::ceil(reach)));
  const double dt = beta / steps;
  for (int step = 0; step < steps; ++step) {
    StateVector term = s;
    StateVector sum = s;
    for (int k = 1; k < 64; ++k) {
      StateVector next = apply_mixer(term, m);
      const Complex factor = -kI * dt / static_cast<double>(k);
      double tnorm = 0.0;
      for (std::size_t b = 0; b < next.dim(); ++b) {
        next[b] *= factor;
        sum[b] += next[b];
        tnorm += std::norm(next[b]);
      }
      term = std::move(next);
      if (tnorm < 1e-34)
        break;
    }
    s = std::move(sum);
  }
}

} // namespace

StateVector::StateVector(int n) : n_(n) {
  if (n < 0 || n > 30)
    throw ParameterError("state vector: qubit count must be in [0, 30]");
  amps_.assign(std::size_t{1} << n, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(int n, std::vector<Complex> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
  if (n < 0 || n > 30)
    throw ParameterError("state vector: qubit count must be in [0, 30]");
  check_dims(amps_.size(), std::size_t{1} << n, "state vector");
}

StateVector StateVector::basis(int n, Mask b) {
  StateVector s(n);
  if (b >= s.dim())
    throw DimensionError("state vector: basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[b] = 1.0;
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto &a : amps_)
    acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::normalize() {
  const double nrm = norm();
  if (nrm == 0.0)
    throw ParameterError("state vector: cannot normalize the zero vector");
  for (auto &a : amps_)
    a /= nrm;
}

Complex inner_product(const StateVector &bra, const StateVector &ket) {
  check_dims(bra.dim(), ket.dim(), "inner_product");
  Complex acc{0.0, 0.0};
  for (std::size_t b = 0; b < bra.dim(); ++b)
    acc += std::conj(bra[b]) * ket[b];
  return acc;
}

double CostDiagonal::min() const { return *std::min_element(values.begin(), values.end()); }
double CostDiagonal::max() const { return *std::max_element(values.begin(), values.end()); }

StateVector uniform_state(int n) {
  if (n < 1)
    throw ParameterError("uniform_state: n must be >= 1");
  StateVector s(n);
  const double a = std::pow(2.0, -0.5 * n);
  for (auto &amp : s.amplitudes())
    amp = a;
  return s;
}

CostDiagonal cost_diagonal(const Graph &g) {
  CostDiagonal d;
  d.n = g.num_vertices();
  d.values.resize(std::size_t{1} << d.n);
  for (std::size_t b = 0; b < d.values.size(); ++b)
    d.values[b] = -g.cut_value(b);
  return d;
}

void apply_cost_phase_inplace(StateVector &s, double gamma, const CostDiagonal &d) {
  check_dims(s.dim(), d.dim(), "apply_cost_phase");
  auto amps = s.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b)
    amps[b] *= std::polar(1.0, -gamma * d.values[b]);
}

StateVector apply_cost_phase(StateVector s, double gamma, const CostDiagonal &d) {
  apply_cost_phase_inplace(s, gamma, d);
  return s;
}

void apply_pauli_exp_inplace(StateVector &s, double beta, const PauliTerm &p) {
  check_support(s, p.support(), "apply_pauli_exp");
  const double c = std::cos(beta);
  const double sn = std::sin(beta);
  auto amps = s.amplitudes();
  if (p.x_mask == 0) {
    for (std::size_t b = 0; b < amps.size(); ++b)
      amps[b] *= c - kI * sn * pauli_phase(p, b);
    return;
  }
  const Mask high = std::bit_floor(p.x_mask);
  for (std::size_t b = 0; b < amps.size(); ++b) {
    if (b & high)
      continue;
    const std::size_t partner = b ^ p.x_mask;
    const Complex a = amps[b];
    const Complex ap = amps[partner];
    // (P psi)[b] = phase(partner) psi[partner]
    amps[b] = c * a - kI * sn * pauli_phase(p, partner) * ap;
    amps[partner] = c * ap - kI * sn * pauli_phase(p, b) * a;
  }
}

void apply_mixer_exp_inplace(StateVector &s, double beta, const MixerOp &m) {
  check_support(s, m.support(), "apply_mixer_exp");
  if (beta == 0.0 || m.terms().empty())
    return;
  if (m.is_one_local()) {
    apply_one_local_exp(s, beta, m);
  } else if (m.terms_commute()) {
    for (const auto &t : m.terms())
      apply_pauli_exp_inplace(s, beta * t.coefficient, t.term);
  } else {
    apply_taylor_exp(s, beta, m);
  }
}

StateVector apply_mixer_exp(StateVector s, double beta, const MixerOp &m) {
  apply_mixer_exp_inplace(s, beta, m);
  return s;
}

StateVector apply_pauli(const StateVector &s, const PauliTerm &p) {
  check_support(s, p.support(), "apply_pauli");
  StateVector out(s.num_qubits());
  for (std::size_t b = 0; b < s.dim(); ++b)
    out[b ^ p.x_mask] = pauli_phase(p, b) * s[b];
  return out;
}

StateVector apply_mixer(const StateVector &s, const MixerOp &m) {
  check_support(s, m.support(), "apply_mixer");
  StateVector out(s.num_qubits());
  out[0] = 0.0;
  for (const auto &t : m.terms())
    for (std::size_t b = 0; b < s.dim(); ++b)
      out[b ^ t.term.x_mask] += t.coefficient * pauli_phase(t.term, b) * s[b];
  return out;
}

double expectation_cost(const StateVector &s, const CostDiagonal &d) {
  check_dims(s.dim(), d.dim(), "expectation_cost");
  double e = 0.0;
  for (std::size_t b = 0; b < s.dim(); ++b)
    e += d.values[b] * std::norm(s[b]);
  return e;
}

double expectation_mixer(const StateVector &s, const MixerOp &m) {
  return inner_product(s, apply_mixer(s, m)).real();
}

double ground_overlap(const StateVector &s, const CutResult &cut) {
  double acc = 0.0;
  for (Assignment b : cut.optimal_assignments) {
    if (b >= s.dim())
      throw DimensionError("ground_overlap: assignment outside the state space");
    acc += std::norm(s[b]);
  }
  return std::sqrt(acc);
}

} // namespace wadapt
