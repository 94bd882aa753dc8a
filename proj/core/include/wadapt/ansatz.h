#pragma once

#include "wadapt/graph.h"
#include "wadapt/nelder_mead.h"
#include "wadapt/pauli.h"
#include "wadapt/statevector.h"
#include "wadapt/warmstart.h"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wadapt {

enum class Variant { qaoa, qaoa_warm, qaoa_warm_am, adapt, adapt_warm, adapt_warm_am };

inline constexpr Variant kAllVariants[] = {Variant::qaoa,  Variant::qaoa_warm,  Variant::qaoa_warm_am,
                                           Variant::adapt, Variant::adapt_warm, Variant::adapt_warm_am};

std::string_view to_string(Variant v);
/// Accepts the CLI spellings: qaoa, qaoa-warm, qaoa-warm-am, adapt, adapt-warm, adapt-warm-am.
Variant parse_variant(std::string_view text);

constexpr bool is_adaptive(Variant v) {
  return v == Variant::adapt || v == Variant::adapt_warm || v == Variant::adapt_warm_am;
}
constexpr bool is_warm(Variant v) { return v != Variant::qaoa && v != Variant::adapt; }
constexpr bool uses_adjusted_mixer(Variant v) {
  return v == Variant::qaoa_warm_am || v == Variant::adapt_warm_am;
}

/// One e^{-i beta mixer} e^{-i gamma C} block.
struct AnsatzLayer {
  MixerOp mixer;
  double gamma = 0.0;
  double beta = 0.0;
};

/// Candidate mixers in selection order: sum_i X_i; X_i, Y_i per qubit;
/// X_jY_k, X_jZ_k, Y_jZ_k over ordered pairs; X_jX_k, Y_jY_k, Z_jZ_k over
/// unordered pairs; then `adjusted` when present.
std::vector<MixerOp> build_pool(int n, const std::optional<MixerOp> &adjusted = std::nullopt);

/// Energy gradient of candidate `a` at the new layer's starting point
/// (gamma = gamma0, beta = 0): <phi| i[C, A] |phi> with phi = e^{-i gamma0 C} s.
/// This is -dE/dbeta for the layer e^{-i beta A}.
double mixer_gradient(const StateVector &s, const CostDiagonal &d, const MixerOp &a, double gamma0);

struct Selection {
  std::size_t index = 0;
  double gradient = 0.0;
};

/// Largest |gradient| in the pool; lowest index wins ties.
Selection select_mixer(const StateVector &s, const CostDiagonal &d, std::span<const MixerOp> pool, double gamma0);

/// Applies layers in order with params = (gamma_1, beta_1, gamma_2, beta_2, ...).
StateVector evaluate_ansatz(const StateVector &init, std::span<const AnsatzLayer> layers, const CostDiagonal &d,
                            std::span<const double> params);
/// Same, using the parameters stored in the layers.
StateVector evaluate_ansatz(const StateVector &init, std::span<const AnsatzLayer> layers, const CostDiagonal &d);

struct RunConfig {
  int max_layers = 15;
  double gamma0 = 0.01;
  /// Energy-error level used for "reached threshold" bookkeeping.
  double threshold = 0.01;
  SimplexConfig simplex;
  SgdConfig sgd;
  std::uint64_t seed = 0;
};

struct LayerRecord {
  int layer = 0;
  /// Empty for the reference state (layer 0).
  std::string mixer;
  double selection_gradient = 0.0;
  std::vector<double> gammas;
  std::vector<double> betas;
  double energy = 0.0;
  double energy_error = 0.0;
  long cnots = 0;
  double ground_overlap = 0.0;
  int evals = 0;
  bool optimizer_converged = true;
  /// The optimizer did not improve on the starting point.
  bool kept_initial = false;
  /// Optimizer raised; parameters fell back to the starting point.
  bool flagged = false;
  std::string diagnostic;
};

struct WarmInfo {
  int pivot = 0;
  double relaxed_objective = 0.0;
  bool relaxed_converged = false;
  double energy = 0.0;
  BlochAngles angles;
};

struct RunRecord {
  Variant algorithm = Variant::qaoa;
  std::string graph_hash;
  std::uint64_t seed = 0;
  int n = 0;
  std::size_t num_edges = 0;
  double c_min = 0.0;
  /// layers[0] is the reference state, layers[p] the optimum with p layers.
  std::vector<LayerRecord> layers;
  std::optional<WarmInfo> warm;

  double final_energy() const { return layers.back().energy; }
  double min_energy_error(int max_layers) const;
  /// First layer index with energy_error <= threshold, if any.
  std::optional<int> layers_to_threshold(double threshold) const;
};

RunRecord run_algorithm(Variant tag, const Graph &g, const RunConfig &cfg);

/// Cumulative CNOT upper bound per layer (index 0 = reference state = 0):
/// 2 per edge for the cost unitary, plus 2 for a two-qubit Pauli mixer.
std::vector<long> cnot_count(const RunRecord &record, const Graph &g);
/// CNOTs charged to a single layer with the given mixer label.
long layer_cnots(const std::string &mixer_label, std::size_t num_edges);

std::string run_record_to_json(const RunRecord &r, int indent = -1);
RunRecord run_record_from_json(const std::string &text);

} // namespace wadapt
