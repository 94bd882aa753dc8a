#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace wadapt {

using Mask = std::uint64_t;

/// Tensor product of single-qubit Paulis encoded as (x_mask, z_mask):
/// qubit j carries X if only its x bit is set, Z if only its z bit is set,
/// and Y if both are set. No phase is stored; the operator is Hermitian.
struct PauliTerm {
  Mask x_mask = 0;
  Mask z_mask = 0;

  static PauliTerm X(int q) { return {Mask{1} << q, 0}; }
  static PauliTerm Y(int q) { return {Mask{1} << q, Mask{1} << q}; }
  static PauliTerm Z(int q) { return {0, Mask{1} << q}; }

  /// Parses "X0", "Y2Z5", "X1Y0" ...; a qubit may appear at most once.
  static PauliTerm parse(const std::string &text);

  Mask support() const { return x_mask | z_mask; }
  int weight() const;
  bool is_identity() const { return support() == 0; }
  bool commutes_with(const PauliTerm &other) const;

  /// Single-qubit factor on qubit q: 'I', 'X', 'Y' or 'Z'.
  char at(int q) const;
  /// Factors listed by ascending qubit, e.g. "Y2Z5"; "I" for identity.
  std::string label() const;

  /// Product with an arbitrary qubit order, e.g. X1 * Y0.
  PauliTerm operator*(const PauliTerm &other) const { return {x_mask ^ other.x_mask, z_mask ^ other.z_mask}; }

  friend bool operator==(const PauliTerm &, const PauliTerm &) = default;
};

/// Action on a basis state: P|b> = phase(b) |b ^ x_mask>.
std::complex<double> pauli_phase(const PauliTerm &p, Mask basis);

struct WeightedTerm {
  double coefficient = 1.0;
  PauliTerm term;
};

/// Real-weighted sum of Pauli terms: a Hermitian candidate mixer.
class MixerOp {
public:
  MixerOp() = default;
  MixerOp(std::vector<WeightedTerm> terms, std::string label);

  static MixerOp single(const PauliTerm &p);
  static MixerOp single(const PauliTerm &p, std::string label);
  /// M = sum_i X_i.
  static MixerOp standard(int n);

  const std::vector<WeightedTerm> &terms() const { return terms_; }
  const std::string &label() const { return label_; }

  Mask support() const;
  bool is_single_term() const { return terms_.size() == 1; }
  /// One Pauli term acting on exactly two qubits (charged 2 CNOTs).
  bool is_two_qubit_pauli() const;
  /// Every term acts on exactly one qubit.
  bool is_one_local() const;
  bool terms_commute() const;

  friend bool operator==(const MixerOp &a, const MixerOp &b);

private:
  std::vector<WeightedTerm> terms_;
  std::string label_;
};

bool operator==(const MixerOp &a, const MixerOp &b);

} // namespace wadapt
