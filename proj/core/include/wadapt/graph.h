#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wadapt {

using Assignment = std::uint64_t; // bit j holds the side of vertex j

struct Edge {
  int j = 0;
  int k = 0;
  double w = 1.0;

  friend bool operator==(const Edge &, const Edge &) = default;
};

/// Weighted undirected simple graph. Edges are kept sorted by (j, k) with
/// j < k; construction rejects self-loops, duplicates and non-finite weights.
class Graph {
public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge> &edges() const { return edges_; }

  std::vector<int> degrees() const;
  /// Dense symmetric adjacency matrix, row-major n*n.
  std::vector<double> adjacency() const;

  /// Cut weight of an assignment (the MaxCut objective).
  double cut_value(Assignment x) const;

  friend bool operator==(const Graph &, const Graph &) = default;

private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

struct CutResult {
  double value = 0.0;
  std::vector<Assignment> optimal_assignments; // sorted ascending
};

/// Random D-regular graph on n vertices. Unweighted graphs get w = 1,
/// weighted ones draw w uniformly from the open interval (0, 1).
Graph random_regular(int n, int degree, bool weighted, std::uint64_t seed);

/// Exhaustive MaxCut. Returns every maximizer (closed under global flip).
CutResult brute_force_maxcut(const Graph &g);

double total_weight(const Graph &g);

/// Vertex-0..n-1 assignment as a string, vertex n-1 first.
std::string assignment_to_string(Assignment x, int n);

/// `{"n": int, "edges": [[j, k, w], ...]}`
std::string graph_to_json(const Graph &g);
Graph graph_from_json(const std::string &text);
Graph load_graph(const std::string &path);
void save_graph(const Graph &g, const std::string &path);

/// Stable FNV-1a digest of the canonical JSON form, as 16 hex digits.
std::string graph_hash(const Graph &g);

} // namespace wadapt
