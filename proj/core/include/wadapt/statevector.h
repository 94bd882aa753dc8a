#pragma once

#include "wadapt/graph.h"
#include "wadapt/pauli.h"

#include <complex>
#include <span>
#include <vector>

namespace wadapt {

using Complex = std::complex<double>;

/// Dense n-qubit state; basis index b has qubit j at bit j.
class StateVector {
public:
  StateVector() = default;
  /// |0...0>
  explicit StateVector(int n);
  StateVector(int n, std::vector<Complex> amplitudes);

  static StateVector basis(int n, Mask b);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  const Complex &operator[](std::size_t b) const { return amps_[b]; }
  Complex &operator[](std::size_t b) { return amps_[b]; }

  double norm() const;
  void normalize();

private:
  int n_ = 0;
  std::vector<Complex> amps_;
};

Complex inner_product(const StateVector &bra, const StateVector &ket);

/// Diagonal of the MaxCut cost Hamiltonian C = -1/2 sum w (I - Z_j Z_k),
/// constant term included: values[b] = -cut(b).
struct CostDiagonal {
  int n = 0;
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  double min() const;
  double max() const;
};

/// |+>^n
StateVector uniform_state(int n);

CostDiagonal cost_diagonal(const Graph &g);

/// amplitude[b] *= exp(-i gamma values[b])
StateVector apply_cost_phase(StateVector s, double gamma, const CostDiagonal &d);
void apply_cost_phase_inplace(StateVector &s, double gamma, const CostDiagonal &d);

/// exp(-i beta m) applied exactly. Commuting terms are exponentiated one at a
/// time, one-local sums qubit by qubit; anything else falls back to a
/// scaled Taylor series of the operator action.
StateVector apply_mixer_exp(StateVector s, double beta, const MixerOp &m);
void apply_mixer_exp_inplace(StateVector &s, double beta, const MixerOp &m);

/// exp(-i beta P) = cos(beta) I - i sin(beta) P
void apply_pauli_exp_inplace(StateVector &s, double beta, const PauliTerm &p);

/// P|psi>
StateVector apply_pauli(const StateVector &s, const PauliTerm &p);
/// m|psi>
StateVector apply_mixer(const StateVector &s, const MixerOp &m);

double expectation_cost(const StateVector &s, const CostDiagonal &d);
/// <psi|m|psi>
double expectation_mixer(const StateVector &s, const MixerOp &m);

/// Norm of the projection onto the span of all optimal cut states.
double ground_overlap(const StateVector &s, const CutResult &cut);

} // namespace wadapt
