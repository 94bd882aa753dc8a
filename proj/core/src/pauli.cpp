#include "wadapt/pauli.h"

#include "wadapt/errors.h"

#include <bit>
#include <cctype>

namespace wadapt {

PauliTerm PauliTerm::parse(const std::string &text) {
  PauliTerm p;
  std::size_t i = 0;
  if (text == "I")
    return p;
  while (i < text.size()) {
    const char op = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i++])));
    if (op != 'X' && op != 'Y' && op != 'Z')
      throw ParameterError("pauli: unexpected character in '" + text + "'");
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    if (start == i)
      throw ParameterError("pauli: missing qubit index in '" + text + "'");
    const int q = std::stoi(text.substr(start, i - start));
    if (q >= 64)
      throw ParameterError("pauli: qubit index out of range in '" + text + "'");
    const Mask bit = Mask{1} << q;
    if (p.support() & bit)
      throw ParameterError("pauli: qubit repeated in '" + text + "'");
    if (op != 'Z')
      p.x_mask |= bit;
    if (op != 'X')
      p.z_mask |= bit;
  }
  return p;
}

int PauliTerm::weight() const { return std::popcount(support()); }

bool PauliTerm::commutes_with(const PauliTerm &other) const {
  const Mask anti = (x_mask & other.z_mask) ^ (z_mask & other.x_mask);
  return std::popcount(anti) % 2 == 0;
}

char PauliTerm::at(int q) const {
  const bool x = (x_mask >> q) & 1U;
  const bool z = (z_mask >> q) & 1U;
  if (x && z)
    return 'Y';
  if (x)
    return 'X';
  if (z)
    return 'Z';
  return 'I';
}

std::string PauliTerm::label() const {
  if (is_identity())
    return "I";
  std::string s;
  for (int q = 0; q < 64; ++q) {
    const char c = at(q);
    if (c != 'I') {
      s += c;
      s += std::to_string(q);
    }
  }
  return s;
}

std::complex<double> pauli_phase(const PauliTerm &p, Mask basis) {
  // Y = iXZ per qubit: i^{#Y} (-1)^{popcount(b & z)}.
  static constexpr std::complex<double> kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int ny = std::popcount(p.x_mask & p.z_mask);
  const int sign = std::popcount(basis & p.z_mask) & 1;
  return kPowI[(ny + 2 * sign) & 3];
}

MixerOp::MixerOp(std::vector<WeightedTerm> terms, std::string label)
    : terms_(std::move(terms)), label_(std::move(label)) {}

MixerOp MixerOp::single(const PauliTerm &p) { return single(p, p.label()); }

MixerOp MixerOp::single(const PauliTerm &p, std::string label) {
  return MixerOp({{1.0, p}}, std::move(label));
}

MixerOp MixerOp::standard(int n) {
  std::vector<WeightedTerm> terms;
  terms.reserve(n);
  for (int q = 0; q < n; ++q)
    terms.push_back({1.0, PauliTerm::X(q)});
  return MixerOp(std::move(terms), "sumX");
}

Mask MixerOp::support() const {
  Mask m = 0;
  for (const auto &t : terms_)
    m |= t.term.support();
  return m;
}

bool MixerOp::is_two_qubit_pauli() const {
  return terms_.size() == 1 && terms_.front().term.weight() == 2;
}

bool MixerOp::is_one_local() const {
  for (const auto &t : terms_)
    if (t.term.weight() != 1)
      return false;
  return true;
}

bool MixerOp::terms_commute() const {
  for (std::size_t a = 0; a < terms_.size(); ++a)
    for (std::size_t b = a + 1; b < terms_.size(); ++b)
      if (!terms_[a].term.commutes_with(terms_[b].term))
        return false;
  return true;
}

bool operator==(const MixerOp &a, const MixerOp &b) {
  if (a.terms_.size() != b.terms_.size())
    return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].coefficient != b.terms_[i].coefficient || !(a.terms_[i].term == b.terms_[i].term))
      return false;
  return true;
}

} // namespace wadapt
