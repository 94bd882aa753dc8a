#include "wadapt/experiments.h"

#include "wadapt/errors.h"
#include "wadapt/statevector.h"
#include "wadapt/warmstart.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace wadapt {

namespace fs = std::filesystem;

double energy_error(double energy, double c_min) {
  if (!(c_min < 0.0))
    throw ParameterError("energy_error: ground energy must be negative");
  return (energy - c_min) / std::abs(c_min);
}

Reduction energy_reduction(const RunRecord &record) {
  if (record.layers.size() < 2)
    throw ParameterError("energy_reduction: record needs a reference and a final layer");
  const double start = record.layers.front().energy - record.c_min;
  const double end = record.layers.back().energy - record.c_min;
  if (std::abs(start) <= 1e-12 * std::abs(record.c_min))
    return {1.0, true};
  return {1.0 - end / start, false};
}

double threshold_fraction(const std::vector<RunRecord> &records, double threshold, int max_layers) {
  if (records.empty())
    throw ParameterError("threshold_fraction: no records");
  const auto hits = std::count_if(records.begin(), records.end(), [&](const RunRecord &r) {
    return r.min_energy_error(max_layers) <= threshold;
  });
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

GridSpec GridSpec::parse(const std::string &text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    parts.push_back(item);
  if (parts.size() != 6)
    throw ParameterError("grid: expected \"gmin,gmax,gsteps,bmin,bmax,bsteps\"");
  GridSpec g;
  try {
    g.gamma_min = std::stod(parts[0]);
    g.gamma_max = std::stod(parts[1]);
    g.gamma_steps = std::stoi(parts[2]);
    g.beta_min = std::stod(parts[3]);
    g.beta_max = std::stod(parts[4]);
    g.beta_steps = std::stoi(parts[5]);
  } catch (const std::exception &) {
    throw ParameterError("grid: cannot parse '" + text + "'");
  }
  if (g.gamma_steps < 1 || g.beta_steps < 1)
    throw ParameterError("grid: step counts must be positive");
  return g;
}

double GridSpec::gamma(int i) const {
  return gamma_steps == 1 ? gamma_min : gamma_min + (gamma_max - gamma_min) * i / (gamma_steps - 1);
}

double GridSpec::beta(int i) const {
  return beta_steps == 1 ? beta_min : beta_min + (beta_max - beta_min) * i / (beta_steps - 1);
}

namespace {

struct InitialState {
  StateVector state;
  std::optional<MixerOp> adjusted;
};

InitialState initial_state(const Graph &g, Variant v, const RunConfig &cfg, const CostDiagonal &d) {
  if (!is_warm(v))
    return {uniform_state(g.num_vertices()), std::nullopt};
  const auto relaxed = solve_bm_rank3(g, cfg.sgd, cfg.seed);
  auto warm = best_warm_state(g, relaxed, d);
  std::optional<MixerOp> adjusted;
  if (uses_adjusted_mixer(v))
    adjusted = adjusted_mixer(warm.angles);
  return {std::move(warm.state), std::move(adjusted)};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw FormatError("cannot write " + path.string());
  out << text;
}

} // namespace

LandscapeGrid landscape_scan(const Graph &g, Variant variant, const GridSpec &grid, const RunConfig &cfg) {
  const CostDiagonal d = cost_diagonal(g);
  const double c_min = d.min();
  auto [init, adjusted] = initial_state(g, variant, cfg, d);

  MixerOp mixer;
  if (is_adaptive(variant)) {
    const auto pool = build_pool(g.num_vertices(), adjusted);
    mixer = pool[select_mixer(init, d, pool, cfg.gamma0).index];
  } else {
    mixer = adjusted ? *adjusted : MixerOp::standard(g.num_vertices());
  }

  LandscapeGrid out;
  out.grid = grid;
  out.mixer = mixer.label();
  out.errors.reserve(static_cast<std::size_t>(grid.gamma_steps) * grid.beta_steps);
  for (int i = 0; i < grid.gamma_steps; ++i) {
    const StateVector phased = apply_cost_phase(init, grid.gamma(i), d);
    for (int j = 0; j < grid.beta_steps; ++j) {
      const StateVector s = apply_mixer_exp(phased, grid.beta(j), mixer);
      out.errors.push_back(std::max(0.0, energy_error(expectation_cost(s, d), c_min)));
    }
  }
  out.min = *std::min_element(out.errors.begin(), out.errors.end());
  out.max = *std::max_element(out.errors.begin(), out.errors.end());
  out.mean = std::accumulate(out.errors.begin(), out.errors.end(), 0.0) / static_cast<double>(out.errors.size());
  return out;
}

void write_landscape_csv(const LandscapeGrid &grid, const fs::path &path) {
  std::string text = "gamma,beta,energy_error\n";
  for (int i = 0; i < grid.grid.gamma_steps; ++i)
    for (int j = 0; j < grid.grid.beta_steps; ++j)
      text += fmt(grid.grid.gamma(i)) + "," + fmt(grid.grid.beta(j)) + "," + fmt(grid.at(i, j)) + "\n";
  write_text(path, text);
}

FirstLayerReference first_layer_reference(int n, int degree) {
  if (n < 1 || degree < 0 || (n * degree) % 2 != 0)
    throw ParameterError("first_layer_reference: need n * degree even");
  FirstLayerReference ref;
  ref.adapt_cut = (n * degree + 2) / 4.0;
  if (degree == 3)
    ref.adapt_ratio_3reg = (3.0 * n + 2.0) / (6.0 * n);
  if (degree == 2) {
    ref.ring_adapt_cut = (n + 1) / 2.0;
    ref.ring_qaoa_cut = 3.0 * n / 4.0;
  }
  return ref;
}

void ExperimentSpec::validate() const {
  if (variants.empty())
    throw ParameterError("experiment: no variants");
  if (instances < 1 || max_layers < 0 || threads < 0)
    throw ParameterError("experiment: invalid instance count, layer count or thread count");
  if (n < 2 || n > 14)
    throw ParameterError("experiment: n must be in [2, 14] for dense simulation");
  if (degree < 1 || degree >= n || (n * degree) % 2 != 0)
    throw ParameterError("experiment: need 1 <= degree < n with n * degree even");
}

ExperimentSpec experiment_spec_from_json(const std::string &text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    ExperimentSpec s;
    for (const auto &v : doc.at("variants"))
      s.variants.push_back(parse_variant(v.get<std::string>()));
    s.n = doc.at("n").get<int>();
    s.degree = doc.at("degree").get<int>();
    s.weighted = doc.value("weighted", true);
    s.instances = doc.value("instances", 1);
    s.max_layers = doc.value("max_layers", 15);
    s.threshold = doc.value("threshold", 0.01);
    s.gamma0 = doc.value("gamma0", 0.01);
    s.seed = doc.value("seed", std::uint64_t{0});
    s.threads = doc.value("threads", 0);
    s.output_dir = doc.value("output_dir", std::string{});
    s.validate();
    return s;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("experiment spec: ") + e.what());
  }
}

std::uint64_t instance_seed(std::uint64_t seed, int instance) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(instance) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<VariantSummary> summarize(const ExperimentSpec &spec, const std::vector<Graph> &graphs,
                                      const std::vector<BatchJob> &jobs) {
  std::vector<VariantSummary> out;
  for (Variant v : spec.variants) {
    VariantSummary s;
    s.variant = v;
    s.mean_error.assign(spec.max_layers + 1, 0.0);
    std::vector<RunRecord> records;
    std::vector<double> first_energy, first_shifted;
    double reduction_sum = 0.0;
    long cnot_sum = 0;
    for (const auto &job : jobs) {
      if (job.variant != v)
        continue;
      if (!job.record) {
        ++s.failures;
        continue;
      }
      const RunRecord &r = *job.record;
      records.push_back(r);
      for (std::size_t p = 0; p < r.layers.size() && p < s.mean_error.size(); ++p)
        s.mean_error[p] += r.layers[p].energy_error;
      if (r.layers.size() > 1) {
        const auto red = energy_reduction(r);
        reduction_sum += red.value;
        s.degenerate_reductions += red.degenerate;
        first_energy.push_back(r.layers[1].energy);
        first_shifted.push_back(r.layers[1].energy + total_weight(graphs[job.instance]) / 2.0);
      }
      if (auto p = r.layers_to_threshold(spec.threshold)) {
        ++s.reached_threshold;
        cnot_sum += r.layers[*p].cnots;
      } else {
        ++s.missed_threshold;
      }
    }
    s.instances = static_cast<int>(records.size());
    if (s.instances > 0) {
      for (auto &e : s.mean_error)
        e /= s.instances;
      s.threshold_fraction = threshold_fraction(records, spec.threshold, spec.max_layers);
      s.mean_reduction = first_energy.empty() ? 0.0 : reduction_sum / static_cast<double>(first_energy.size());
      if (s.reached_threshold > 0)
        s.mean_cnots_to_threshold = static_cast<double>(cnot_sum) / s.reached_threshold;
    }
    if (!first_energy.empty()) {
      s.first_layer_min_energy = *std::min_element(first_energy.begin(), first_energy.end());
      s.first_layer_max_energy = *std::max_element(first_energy.begin(), first_energy.end());
      s.first_layer_median_energy = median(first_energy);
      s.first_layer_min_shifted = *std::min_element(first_shifted.begin(), first_shifted.end());
      s.first_layer_max_shifted = *std::max_element(first_shifted.begin(), first_shifted.end());
      s.first_layer_median_shifted = median(first_shifted);
    }
    out.push_back(std::move(s));
  }
  return out;
}

BatchResult run_batch(const ExperimentSpec &spec) {
  spec.validate();
  BatchResult result;
  result.spec = spec;
  for (int i = 0; i < spec.instances; ++i)
    result.graphs.push_back(random_regular(spec.n, spec.degree, spec.weighted, instance_seed(spec.seed, i)));

  RunConfig base;
  base.max_layers = spec.max_layers;
  base.gamma0 = spec.gamma0;
  base.threshold = spec.threshold;

  for (int i = 0; i < spec.instances; ++i) {
    const Graph &g = result.graphs[i];
    base.seed = instance_seed(spec.seed, i);
    const CostDiagonal d = cost_diagonal(g);
    const CutResult cut = brute_force_maxcut(g);
    const auto warm = best_warm_state(g, solve_bm_rank3(g, base.sgd, base.seed), d);
    WarmStartStats st;
    st.instance = i;
    st.total_weight = total_weight(g);
    st.uniform_energy = expectation_cost(uniform_state(g.num_vertices()), d);
    st.warm_energy = warm.energy;
    st.c_min = -cut.value;
    st.overlap = ground_overlap(warm.state, cut);
    st.below_uniform = warm.energy < st.uniform_energy;
    std::size_t dominant = 0;
    for (std::size_t b = 1; b < warm.state.dim(); ++b)
      if (std::norm(warm.state[b]) > std::norm(warm.state[dominant]))
        dominant = b;
    st.dominant_is_ground = std::binary_search(cut.optimal_assignments.begin(), cut.optimal_assignments.end(),
                                               static_cast<Assignment>(dominant));
    result.warm_stats.push_back(st);
  }

  for (int i = 0; i < spec.instances; ++i)
    for (Variant v : spec.variants)
      result.jobs.push_back({i, v, std::nullopt, {}});

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t j = next++; j < result.jobs.size(); j = next++) {
      auto &job = result.jobs[j];
      RunConfig cfg = base;
      cfg.seed = instance_seed(spec.seed, job.instance);
      try {
        job.record = run_algorithm(job.variant, result.graphs[job.instance], cfg);
      } catch (const std::exception &e) {
        job.error = e.what();
      }
    }
  };
  unsigned threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads) : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(result.jobs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(worker);
  }

  result.summaries = summarize(spec, result.graphs, result.jobs);
  return result;
}

void write_batch(const BatchResult &result, const fs::path &dir) {
  fs::create_directories(dir / "graphs");
  fs::create_directories(dir / "records");
  const auto &spec = result.spec;

  char name[64];
  for (std::size_t i = 0; i < result.graphs.size(); ++i) {
    std::snprintf(name, sizeof name, "inst%03zu.json", i);
    write_text(dir / "graphs" / name, graph_to_json(result.graphs[i]) + "\n");
  }
  std::string failures = "instance,algorithm,error\n";
  for (const auto &job : result.jobs) {
    std::snprintf(name, sizeof name, "inst%03d_%s.json", job.instance, std::string(to_string(job.variant)).c_str());
    if (job.record) {
      write_text(dir / "records" / name, run_record_to_json(*job.record, 1) + "\n");
    } else {
      std::string msg = job.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      failures += std::to_string(job.instance) + "," + std::string(to_string(job.variant)) + "," + msg + "\n";
    }
  }
  write_text(dir / "failures.csv", failures);

  std::string by_layer = "algorithm,layer,mean_energy_error,instances\n";
  std::string fraction = "algorithm,threshold,max_layers,fraction,instances\n";
  std::string reduction = "algorithm,mean_energy_reduction,degenerate,instances\n";
  std::string cnots = "algorithm,threshold,mean_cnots_to_threshold,reached,not_reached\n";
  std::string first = "algorithm,min_energy,median_energy,max_energy,min_energy_no_const,median_energy_no_const,"
                      "max_energy_no_const\n";
  for (const auto &s : result.summaries) {
    const std::string tag(to_string(s.variant));
    for (std::size_t p = 0; p < s.mean_error.size(); ++p)
      by_layer += tag + "," + std::to_string(p) + "," + fmt(s.mean_error[p]) + "," + std::to_string(s.instances) + "\n";
    fraction += tag + "," + fmt(spec.threshold) + "," + std::to_string(spec.max_layers) + "," +
                fmt(s.threshold_fraction) + "," + std::to_string(s.instances) + "\n";
    reduction += tag + "," + fmt(s.mean_reduction) + "," + std::to_string(s.degenerate_reductions) + "," +
                 std::to_string(s.instances) + "\n";
    cnots += tag + "," + fmt(spec.threshold) + "," +
             (s.mean_cnots_to_threshold ? fmt(*s.mean_cnots_to_threshold) : std::string("nan")) + "," +
             std::to_string(s.reached_threshold) + "," + std::to_string(s.missed_threshold) + "\n";
    first += tag + "," + fmt(s.first_layer_min_energy) + "," + fmt(s.first_layer_median_energy) + "," +
             fmt(s.first_layer_max_energy) + "," + fmt(s.first_layer_min_shifted) + "," +
             fmt(s.first_layer_median_shifted) + "," + fmt(s.first_layer_max_shifted) + "\n";
  }
  write_text(dir / "energy_error_by_layer.csv", by_layer);
  write_text(dir / "threshold_fraction.csv", fraction);
  write_text(dir / "energy_reduction.csv", reduction);
  write_text(dir / "cnots_to_threshold.csv", cnots);
  write_text(dir / "first_layer.csv", first);

  std::string overlap = "instance,algorithm,initial_overlap,energy_reduction\n";
  for (const auto &job : result.jobs) {
    if (!job.record || job.record->layers.size() < 2)
      continue;
    overlap += std::to_string(job.instance) + "," + std::string(to_string(job.variant)) + "," +
               fmt(job.record->layers.front().ground_overlap) + "," + fmt(energy_reduction(*job.record).value) + "\n";
  }
  write_text(dir / "overlap_vs_reduction.csv", overlap);

  std::string warm = "instance,total_weight,uniform_energy,warm_energy,c_min,ground_overlap,below_uniform,"
                     "dominant_is_ground\n";
  int below = 0, dominant = 0;
  for (const auto &w : result.warm_stats) {
    warm += std::to_string(w.instance) + "," + fmt(w.total_weight) + "," + fmt(w.uniform_energy) + "," +
            fmt(w.warm_energy) + "," + fmt(w.c_min) + "," + fmt(w.overlap) + "," + (w.below_uniform ? "1" : "0") +
            "," + (w.dominant_is_ground ? "1" : "0") + "\n";
    below += w.below_uniform;
    dominant += w.dominant_is_ground;
  }
  write_text(dir / "warm_start.csv", warm);

  nlohmann::json manifest;
  manifest["schema_version"] = 1;
  manifest["n"] = spec.n;
  manifest["degree"] = spec.degree;
  manifest["weighted"] = spec.weighted;
  manifest["instances"] = spec.instances;
  manifest["max_layers"] = spec.max_layers;
  manifest["threshold"] = spec.threshold;
  manifest["gamma0"] = spec.gamma0;
  manifest["seed"] = spec.seed;
  manifest["energy_convention"] = "cost includes the constant -W/2";
  manifest["cnot_caveat"] = "mean CNOTs to threshold average only instances that reach it";
  const auto count = static_cast<double>(result.warm_stats.size());
  manifest["warm_below_uniform_fraction"] = count > 0 ? below / count : 0.0;
  manifest["warm_dominant_ground_fraction"] = count > 0 ? dominant / count : 0.0;
  nlohmann::json variants = nlohmann::json::array();
  for (Variant v : spec.variants)
    variants.push_back(std::string(to_string(v)));
  manifest["variants"] = std::move(variants);
  write_text(dir / "manifest.json", manifest.dump(1) + "\n");
}

} // namespace wadapt
