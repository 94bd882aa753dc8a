#include "wadapt/ansatz.h"

#include "wadapt/errors.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace wadapt {

namespace {

// <chi| P |phi>, without materializing P|phi>.
Complex matrix_element(const std::vector<Complex> &chi, const StateVector &phi, const PauliTerm &p) {
  Complex acc{0.0, 0.0};
  const Mask x = p.x_mask;
  for (std::size_t b = 0; b < phi.dim(); ++b)
    acc += std::conj(chi[b ^ x]) * pauli_phase(p, b) * phi[b];
  return acc;
}

struct GradientContext {
  StateVector phi;
  std::vector<Complex> c_phi;
};

GradientContext gradient_context(const StateVector &s, const CostDiagonal &d, double gamma0) {
  GradientContext ctx{apply_cost_phase(s, gamma0, d), {}};
  ctx.c_phi.resize(ctx.phi.dim());
  for (std::size_t b = 0; b < ctx.phi.dim(); ++b)
    ctx.c_phi[b] = d.values[b] * ctx.phi[b];
  return ctx;
}

double gradient_from(const GradientContext &ctx, const MixerOp &a) {
  // <phi|i[C,A]|phi> = -2 Im <phi|C A|phi>; diagonal terms commute with C.
  double g = 0.0;
  for (const auto &t : a.terms()) {
    if (t.term.x_mask == 0)
      continue;
    g += t.coefficient * -2.0 * matrix_element(ctx.c_phi, ctx.phi, t.term).imag();
  }
  return g;
}

} // namespace

std::string_view to_string(Variant v) {
  switch (v) {
  case Variant::qaoa:
    return "qaoa";
  case Variant::qaoa_warm:
    return "qaoa-warm";
  case Variant::qaoa_warm_am:
    return "qaoa-warm-am";
  case Variant::adapt:
    return "adapt";
  case Variant::adapt_warm:
    return "adapt-warm";
  case Variant::adapt_warm_am:
    return "adapt-warm-am";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  for (Variant v : kAllVariants)
    if (to_string(v) == text)
      return v;
  throw ParameterError("unknown algorithm '" + std::string(text) + "'");
}

std::vector<MixerOp> build_pool(int n, const std::optional<MixerOp> &adjusted) {
  if (n < 2)
    throw ParameterError("build_pool: need at least two qubits");
  std::vector<MixerOp> pool;
  pool.reserve(1 + 2 * n + 3 * n * (n - 1) + 3 * n * (n - 1) / 2 + 1);
  pool.push_back(MixerOp::standard(n));
  for (int q = 0; q < n; ++q) {
    pool.push_back(MixerOp::single(PauliTerm::X(q)));
    pool.push_back(MixerOp::single(PauliTerm::Y(q)));
  }
  const auto pair = [&pool](char a, int j, char b, int k) {
    const auto factor = [](char c, int q) {
      return c == 'X' ? PauliTerm::X(q) : (c == 'Y' ? PauliTerm::Y(q) : PauliTerm::Z(q));
    };
    std::string label{a};
    label += std::to_string(j);
    label += b;
    label += std::to_string(k);
    pool.push_back(MixerOp::single(factor(a, j) * factor(b, k), std::move(label)));
  };
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k)
        continue;
      pair('X', j, 'Y', k);
      pair('X', j, 'Z', k);
      pair('Y', j, 'Z', k);
    }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      pair('X', j, 'X', k);
      pair('Y', j, 'Y', k);
      pair('Z', j, 'Z', k);
    }
  if (adjusted)
    pool.push_back(*adjusted);
  return pool;
}

double mixer_gradient(const StateVector &s, const CostDiagonal &d, const MixerOp &a, double gamma0) {
  if (s.dim() != d.dim())
    throw DimensionError("mixer_gradient: state and cost diagonal differ in dimension");
  if (s.num_qubits() < 64 && (a.support() >> s.num_qubits()) != 0)
    throw DimensionError("mixer_gradient: operator acts outside the register");
  return gradient_from(gradient_context(s, d, gamma0), a);
}

Selection select_mixer(const StateVector &s, const CostDiagonal &d, std::span<const MixerOp> pool, double gamma0) {
  if (pool.empty())
    throw ParameterError("select_mixer: empty pool");
  if (s.dim() != d.dim())
    throw DimensionError("select_mixer: state and cost diagonal differ in dimension");
  const auto ctx = gradient_context(s, d, gamma0);
  Selection best{0, gradient_from(ctx, pool[0])};
  for (std::size_t i = 1; i < pool.size(); ++i) {
    const double g = gradient_from(ctx, pool[i]);
    if (std::abs(g) > std::abs(best.gradient))
      best = {i, g};
  }
  return best;
}

StateVector evaluate_ansatz(const StateVector &init, std::span<const AnsatzLayer> layers, const CostDiagonal &d,
                            std::span<const double> params) {
  if (params.size() != 2 * layers.size())
    throw DimensionError("evaluate_ansatz: expected " + std::to_string(2 * layers.size()) + " parameters, got " +
                         std::to_string(params.size()));
  StateVector s = init;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    apply_cost_phase_inplace(s, params[2 * i], d);
    apply_mixer_exp_inplace(s, params[2 * i + 1], layers[i].mixer);
  }
  return s;
}

StateVector evaluate_ansatz(const StateVector &init, std::span<const AnsatzLayer> layers, const CostDiagonal &d) {
  std::vector<double> params;
  params.reserve(2 * layers.size());
  for (const auto &l : layers) {
    params.push_back(l.gamma);
    params.push_back(l.beta);
  }
  return evaluate_ansatz(init, layers, d, params);
}

double RunRecord::min_energy_error(int max_layers) const {
  double best = layers.front().energy_error;
  for (const auto &l : layers)
    if (l.layer <= max_layers)
      best = std::min(best, l.energy_error);
  return best;
}

std::optional<int> RunRecord::layers_to_threshold(double threshold) const {
  for (const auto &l : layers)
    if (l.energy_error <= threshold)
      return l.layer;
  return std::nullopt;
}

long layer_cnots(const std::string &mixer_label, std::size_t num_edges) {
  long c = 2 * static_cast<long>(num_edges);
  if (mixer_label != "sumX" && mixer_label != "adjusted" && PauliTerm::parse(mixer_label).weight() == 2)
    c += 2;
  return c;
}

std::vector<long> cnot_count(const RunRecord &record, const Graph &g) {
  std::vector<long> counts;
  counts.reserve(record.layers.size());
  long total = 0;
  for (const auto &l : record.layers) {
    if (l.layer > 0)
      total += layer_cnots(l.mixer, g.num_edges());
    counts.push_back(total);
  }
  return counts;
}

namespace {

double normalized_error(double energy, double c_min) { return std::max(0.0, (energy - c_min) / std::abs(c_min)); }

} // namespace

RunRecord run_algorithm(Variant tag, const Graph &g, const RunConfig &cfg) {
  if (cfg.max_layers < 0)
    throw ParameterError("run_algorithm: max_layers must be >= 0");
  cfg.simplex.validate();
  const int n = g.num_vertices();
  const CostDiagonal d = cost_diagonal(g);
  const CutResult cut = brute_force_maxcut(g);
  if (!(cut.value > 0.0))
    throw ParameterError("run_algorithm: graph has no positive-weight cut");

  RunRecord rec;
  rec.algorithm = tag;
  rec.graph_hash = graph_hash(g);
  rec.seed = cfg.seed;
  rec.n = n;
  rec.num_edges = g.num_edges();
  rec.c_min = -cut.value;

  StateVector init;
  std::optional<MixerOp> adjusted;
  if (is_warm(tag)) {
    const auto relaxed = solve_bm_rank3(g, cfg.sgd, cfg.seed);
    auto warm = best_warm_state(g, relaxed, d);
    rec.warm = WarmInfo{warm.pivot, relaxed.objective, relaxed.converged, warm.energy, warm.angles};
    if (uses_adjusted_mixer(tag))
      adjusted = adjusted_mixer(warm.angles);
    init = std::move(warm.state);
  } else {
    init = uniform_state(n);
  }

  std::vector<MixerOp> pool;
  std::optional<MixerOp> fixed;
  if (is_adaptive(tag))
    pool = build_pool(n, adjusted);
  else
    fixed = adjusted ? *adjusted : MixerOp::standard(n);

  LayerRecord ref;
  ref.energy = expectation_cost(init, d);
  ref.energy_error = normalized_error(ref.energy, rec.c_min);
  ref.ground_overlap = ground_overlap(init, cut);
  rec.layers.push_back(ref);

  std::vector<AnsatzLayer> layers;
  std::vector<double> params;
  StateVector current = init;
  double energy = ref.energy;
  long cnots = 0;

  for (int p = 1; p <= cfg.max_layers; ++p) {
    LayerRecord lr;
    lr.layer = p;
    if (is_adaptive(tag)) {
      const auto sel = select_mixer(current, d, pool, cfg.gamma0);
      layers.push_back({pool[sel.index], cfg.gamma0, 0.0});
      lr.selection_gradient = sel.gradient;
    } else {
      layers.push_back({*fixed, cfg.gamma0, 0.0});
    }
    lr.mixer = layers.back().mixer.label();
    params.push_back(cfg.gamma0);
    params.push_back(0.0);

    // The appended block starts as e^{-i gamma0 C} followed by the identity,
    // which leaves <C> at the previous optimum; that value is the baseline.
    const Objective objective = [&](std::span<const double> x) {
      return expectation_cost(evaluate_ansatz(init, layers, d, x), d);
    };
    try {
      auto res = minimize(objective, params, cfg.simplex);
      lr.evals = res.evals;
      lr.optimizer_converged = res.converged;
      if (res.f < energy) {
        params = std::move(res.x);
        energy = res.f;
      } else {
        lr.kept_initial = true;
      }
    } catch (const std::exception &e) {
      lr.flagged = true;
      lr.optimizer_converged = false;
      lr.kept_initial = true;
      lr.diagnostic = e.what();
    }

    for (std::size_t i = 0; i < layers.size(); ++i) {
      layers[i].gamma = params[2 * i];
      layers[i].beta = params[2 * i + 1];
      lr.gammas.push_back(params[2 * i]);
      lr.betas.push_back(params[2 * i + 1]);
    }
    current = evaluate_ansatz(init, layers, d);
    cnots += layer_cnots(lr.mixer, g.num_edges());
    lr.energy = energy;
    lr.energy_error = normalized_error(energy, rec.c_min);
    lr.cnots = cnots;
    lr.ground_overlap = ground_overlap(current, cut);
    rec.layers.push_back(std::move(lr));
  }
  return rec;
}

using nlohmann::json;

std::string run_record_to_json(const RunRecord &r, int indent) {
  json doc;
  doc["algorithm"] = std::string(to_string(r.algorithm));
  doc["graph_hash"] = r.graph_hash;
  doc["seed"] = r.seed;
  doc["n"] = r.n;
  doc["num_edges"] = r.num_edges;
  doc["c_min"] = r.c_min;
  doc["layers"] = json::array();
  for (const auto &l : r.layers) {
    json jl;
    jl["layer"] = l.layer;
    jl["mixer"] = l.mixer;
    jl["selection_gradient"] = l.selection_gradient;
    jl["gamma"] = l.gammas;
    jl["beta"] = l.betas;
    jl["energy"] = l.energy;
    jl["energy_error"] = l.energy_error;
    jl["cnots"] = l.cnots;
    jl["ground_overlap"] = l.ground_overlap;
    jl["evals"] = l.evals;
    jl["optimizer_converged"] = l.optimizer_converged;
    jl["kept_initial"] = l.kept_initial;
    jl["flagged"] = l.flagged;
    if (!l.diagnostic.empty())
      jl["diagnostic"] = l.diagnostic;
    doc["layers"].push_back(std::move(jl));
  }
  if (r.warm) {
    json jw;
    jw["pivot"] = r.warm->pivot;
    jw["relaxed_objective"] = r.warm->relaxed_objective;
    jw["relaxed_converged"] = r.warm->relaxed_converged;
    jw["energy"] = r.warm->energy;
    jw["theta"] = json::array();
    jw["phi"] = json::array();
    for (const auto &a : r.warm->angles) {
      jw["theta"].push_back(a.theta);
      jw["phi"].push_back(a.phi);
    }
    doc["warm_start"] = std::move(jw);
  }
  return doc.dump(indent);
}

RunRecord run_record_from_json(const std::string &text) {
  try {
    const json doc = json::parse(text);
    RunRecord r;
    r.algorithm = parse_variant(doc.at("algorithm").get<std::string>());
    r.graph_hash = doc.at("graph_hash").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.n = doc.at("n").get<int>();
    r.num_edges = doc.at("num_edges").get<std::size_t>();
    r.c_min = doc.at("c_min").get<double>();
    for (const auto &jl : doc.at("layers")) {
      LayerRecord l;
      l.layer = jl.at("layer").get<int>();
      l.mixer = jl.at("mixer").get<std::string>();
      l.selection_gradient = jl.value("selection_gradient", 0.0);
      l.gammas = jl.at("gamma").get<std::vector<double>>();
      l.betas = jl.at("beta").get<std::vector<double>>();
      l.energy = jl.at("energy").get<double>();
      l.energy_error = jl.at("energy_error").get<double>();
      l.cnots = jl.at("cnots").get<long>();
      l.ground_overlap = jl.at("ground_overlap").get<double>();
      l.evals = jl.value("evals", 0);
      l.optimizer_converged = jl.value("optimizer_converged", true);
      l.kept_initial = jl.value("kept_initial", false);
      l.flagged = jl.value("flagged", false);
      l.diagnostic = jl.value("diagnostic", std::string{});
      r.layers.push_back(std::move(l));
    }
    if (doc.contains("warm_start")) {
      const auto &jw = doc["warm_start"];
      WarmInfo w;
      w.pivot = jw.at("pivot").get<int>();
      w.relaxed_objective = jw.at("relaxed_objective").get<double>();
      w.relaxed_converged = jw.at("relaxed_converged").get<bool>();
      w.energy = jw.at("energy").get<double>();
      const auto theta = jw.at("theta").get<std::vector<double>>();
      const auto phi = jw.at("phi").get<std::vector<double>>();
      if (theta.size() != phi.size())
        throw FormatError("run record: theta/phi length mismatch");
      for (std::size_t i = 0; i < theta.size(); ++i)
        w.angles.push_back({theta[i], phi[i]});
      r.warm = std::move(w);
    }
    if (r.layers.empty())
      throw FormatError("run record: no layers");
    return r;
  } catch (const json::exception &e) {
    throw FormatError(std::string("run record: ") + e.what());
  }
}

} // namespace wadapt
