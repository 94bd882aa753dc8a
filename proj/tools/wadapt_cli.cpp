// wadapt: graph generation, single runs, batches, landscapes and first-layer
// statistics for (warm-)ADAPT-QAOA on MaxCut.

#include "wadapt/ansatz.h"
#include "wadapt/errors.h"
#include "wadapt/experiments.h"
#include "wadapt/graph.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace {

using namespace wadapt;

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw FormatError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw FormatError("cannot write " + path);
  out << text;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"warm-start ADAPT-QAOA MaxCut simulator"};
  app.require_subcommand(1);

  // gen-graph
  int gen_n = 6, gen_degree = 3;
  bool gen_weighted = false;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto *gen = app.add_subcommand("gen-graph", "Generate a random regular graph");
  gen->add_option("--n", gen_n, "Vertex count")->required();
  gen->add_option("--degree", gen_degree, "Vertex degree")->required();
  gen->add_flag("--weighted", gen_weighted, "Draw weights uniformly from (0, 1)");
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--out", gen_out, "Output graph.json (stdout if omitted)");

  // run
  std::string run_graph, run_algo, run_out;
  RunConfig run_cfg;
  auto *run = app.add_subcommand("run", "Run one algorithm on one graph");
  run->add_option("--graph", run_graph, "Graph JSON file")->required();
  run->add_option("--algorithm", run_algo, "qaoa|qaoa-warm|qaoa-warm-am|adapt|adapt-warm|adapt-warm-am")
      ->required()
      ->check(CLI::IsMember({"qaoa", "qaoa-warm", "qaoa-warm-am", "adapt", "adapt-warm", "adapt-warm-am"}));
  run->add_option("--max-layers", run_cfg.max_layers, "Ansatz layers")->capture_default_str();
  run->add_option("--gamma0", run_cfg.gamma0, "Initial cost angle of new layers")->capture_default_str();
  run->add_option("--threshold", run_cfg.threshold, "Energy-error threshold")->capture_default_str();
  run->add_option("--seed", run_cfg.seed, "Seed for the warm-start relaxation")->capture_default_str();
  run->add_option("--out", run_out, "Output record.json (stdout if omitted)");

  // batch
  std::string batch_spec, batch_dir;
  auto *batch = app.add_subcommand("batch", "Run an experiment spec and write records and summary CSVs");
  batch->add_option("--spec", batch_spec, "Experiment spec JSON")->required();
  batch->add_option("--out-dir", batch_dir, "Output directory")->required();

  // landscape
  std::string land_graph, land_algo, land_grid = "-2,2,81,-2,2,81", land_out;
  RunConfig land_cfg;
  auto *land = app.add_subcommand("landscape", "Scan the p = 1 energy-error landscape");
  land->add_option("--graph", land_graph, "Graph JSON file")->required();
  land->add_option("--algorithm", land_algo, "Variant whose first-layer mixer is used")->required();
  land->add_option("--grid", land_grid, "gmin,gmax,gsteps,bmin,bmax,bsteps")->capture_default_str();
  land->add_option("--gamma0", land_cfg.gamma0, "Angle used for mixer selection")->capture_default_str();
  land->add_option("--seed", land_cfg.seed, "Seed for the warm-start relaxation")->capture_default_str();
  land->add_option("--out", land_out, "Output grid.csv")->required();

  // first-layer
  int fl_n = 6, fl_degree = 3, fl_instances = 0;
  std::uint64_t fl_seed = 0;
  auto *fl = app.add_subcommand("first-layer", "Closed-form and empirical p = 1 cut values");
  fl->add_option("--n", fl_n, "Vertex count")->required();
  fl->add_option("--degree", fl_degree, "Vertex degree")->required();
  fl->add_option("--instances", fl_instances, "Unweighted instances to simulate");
  fl->add_option("--seed", fl_seed, "Batch seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Graph g = random_regular(gen_n, gen_degree, gen_weighted, gen_seed);
      write_file(gen_out, graph_to_json(g) + "\n");
    } else if (*run) {
      const Graph g = load_graph(run_graph);
      const RunRecord rec = run_algorithm(parse_variant(run_algo), g, run_cfg);
      write_file(run_out, run_record_to_json(rec, 1) + "\n");
      const auto hit = rec.layers_to_threshold(run_cfg.threshold);
      std::fprintf(stderr, "%s: final energy %.10g, energy error %.6g, threshold %s\n", run_algo.c_str(),
                   rec.final_energy(), rec.layers.back().energy_error,
                   hit ? ("reached at p=" + std::to_string(*hit)).c_str() : "not reached");
    } else if (*batch) {
      ExperimentSpec spec = experiment_spec_from_json(read_file(batch_spec));
      const BatchResult result = run_batch(spec);
      write_batch(result, batch_dir);
      for (const auto &s : result.summaries)
        std::printf("%-14s instances=%d failures=%d final_mean_error=%.6g threshold_fraction=%.4g\n",
                    std::string(to_string(s.variant)).c_str(), s.instances, s.failures,
                    s.mean_error.empty() ? 0.0 : s.mean_error.back(), s.threshold_fraction);
    } else if (*land) {
      const Graph g = load_graph(land_graph);
      const auto grid = landscape_scan(g, parse_variant(land_algo), GridSpec::parse(land_grid), land_cfg);
      write_landscape_csv(grid, land_out);
      std::printf("mixer=%s min=%.10g max=%.10g mean=%.10g\n", grid.mixer.c_str(), grid.min, grid.max, grid.mean);
    } else if (*fl) {
      const auto ref = first_layer_reference(fl_n, fl_degree);
      std::printf("adapt_cut (nD+2)/4 = %.10g\n", ref.adapt_cut);
      if (ref.adapt_ratio_3reg)
        std::printf("adapt_ratio_3reg (3n+2)/(6n) = %.10g\n", *ref.adapt_ratio_3reg);
      if (ref.ring_adapt_cut)
        std::printf("ring_adapt_cut (n+1)/2 = %.10g\n", *ref.ring_adapt_cut);
      if (ref.ring_qaoa_cut)
        std::printf("ring_qaoa_cut 3n/4 = %.10g\n", *ref.ring_qaoa_cut);
      if (fl_instances > 0) {
        RunConfig cfg;
        cfg.max_layers = 1;
        std::printf("algorithm,min_cut,median_cut,max_cut,median_exact_maxcut\n");
        std::vector<double> exact;
        std::vector<Graph> graphs;
        for (int i = 0; i < fl_instances; ++i) {
          graphs.push_back(random_regular(fl_n, fl_degree, false, instance_seed(fl_seed, i)));
          exact.push_back(brute_force_maxcut(graphs.back()).value);
        }
        for (Variant v : {Variant::qaoa, Variant::adapt, Variant::adapt_warm}) {
          std::vector<double> cuts;
          for (int i = 0; i < fl_instances; ++i) {
            cfg.seed = instance_seed(fl_seed, i);
            cuts.push_back(-run_algorithm(v, graphs[i], cfg).layers[1].energy);
          }
          std::printf("%s,%.10g,%.10g,%.10g,%.10g\n", std::string(to_string(v)).c_str(),
                      *std::min_element(cuts.begin(), cuts.end()), median(cuts),
                      *std::max_element(cuts.begin(), cuts.end()), median(exact));
        }
      }
    }
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
