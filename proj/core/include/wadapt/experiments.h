#pragma once

#include "wadapt/ansatz.h"
#include "wadapt/graph.h"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wadapt {

/// (energy - c_min) / |c_min|; c_min must be negative.
double energy_error(double energy, double c_min);

struct Reduction {
  double value = 0.0;
  /// Reference state already at c_min; value is 1 by convention.
  bool degenerate = false;
};

/// 1 - (E_final - c_min) / (E_0 - c_min)
Reduction energy_reduction(const RunRecord &record);

/// Share of records whose best energy error within `max_layers` is <= threshold.
double threshold_fraction(const std::vector<RunRecord> &records, double threshold, int max_layers);

struct GridSpec {
  double gamma_min = -2.0;
  double gamma_max = 2.0;
  int gamma_steps = 81;
  double beta_min = -2.0;
  double beta_max = 2.0;
  int beta_steps = 81;

  /// "gmin,gmax,gsteps,bmin,bmax,bsteps"
  static GridSpec parse(const std::string &text);
  double gamma(int i) const;
  double beta(int i) const;
};

struct LandscapeGrid {
  GridSpec grid;
  std::string mixer;
  /// errors[i * beta_steps + j] at (gamma(i), beta(j)).
  std::vector<double> errors;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;

  double at(int gi, int bi) const { return errors[static_cast<std::size_t>(gi) * grid.beta_steps + bi]; }
};

/// Energy error over a (gamma, beta) grid for one layer whose mixer is picked
/// by the variant's rule from its initial state.
LandscapeGrid landscape_scan(const Graph &g, Variant variant, const GridSpec &grid, const RunConfig &cfg = {});

void write_landscape_csv(const LandscapeGrid &grid, const std::filesystem::path &path);

struct FirstLayerReference {
  double adapt_cut = 0.0;
  std::optional<double> adapt_ratio_3reg;
  std::optional<double> ring_qaoa_cut;
  std::optional<double> ring_adapt_cut;
};

/// Closed-form p = 1 cut values for unweighted D-regular graphs.
FirstLayerReference first_layer_reference(int n, int degree);

struct ExperimentSpec {
  std::vector<Variant> variants;
  int n = 6;
  int degree = 3;
  bool weighted = true;
  int instances = 1;
  int max_layers = 15;
  double threshold = 0.01;
  double gamma0 = 0.01;
  std::uint64_t seed = 0;
  /// 0 = hardware concurrency.
  int threads = 0;
  std::string output_dir;

  void validate() const;
};

ExperimentSpec experiment_spec_from_json(const std::string &text);

/// Seed of instance i in a batch seeded with `seed`.
std::uint64_t instance_seed(std::uint64_t seed, int instance);

struct WarmStartStats {
  int instance = 0;
  double total_weight = 0.0;
  double uniform_energy = 0.0;
  double warm_energy = 0.0;
  double c_min = 0.0;
  double overlap = 0.0;
  bool below_uniform = false;
  /// The largest-magnitude basis amplitude belongs to an optimal cut.
  bool dominant_is_ground = false;
};

struct VariantSummary {
  Variant variant = Variant::qaoa;
  /// Mean energy error at p = 0..max_layers over successful instances.
  std::vector<double> mean_error;
  int instances = 0;
  int failures = 0;
  double threshold_fraction = 0.0;
  double mean_reduction = 0.0;
  int degenerate_reductions = 0;
  /// Averaged over instances that reach the threshold only.
  std::optional<double> mean_cnots_to_threshold;
  int reached_threshold = 0;
  int missed_threshold = 0;
  double first_layer_min_energy = 0.0;
  double first_layer_median_energy = 0.0;
  double first_layer_max_energy = 0.0;
  /// Same statistics with the constant -W/2 of the cost removed.
  double first_layer_min_shifted = 0.0;
  double first_layer_median_shifted = 0.0;
  double first_layer_max_shifted = 0.0;
};

struct BatchJob {
  int instance = 0;
  Variant variant = Variant::qaoa;
  std::optional<RunRecord> record;
  std::string error;
};

struct BatchResult {
  ExperimentSpec spec;
  std::vector<Graph> graphs;
  std::vector<WarmStartStats> warm_stats;
  /// instance-major, variants in spec order.
  std::vector<BatchJob> jobs;
  std::vector<VariantSummary> summaries;
};

BatchResult run_batch(const ExperimentSpec &spec);

/// Aggregates per-variant tables from finished jobs (order-independent).
std::vector<VariantSummary> summarize(const ExperimentSpec &spec, const std::vector<Graph> &graphs,
                                      const std::vector<BatchJob> &jobs);

/// Writes graphs/, records/ and the summary CSVs under `dir`.
void write_batch(const BatchResult &result, const std::filesystem::path &dir);

} // namespace wadapt
