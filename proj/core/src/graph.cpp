#include "wadapt/graph.h"

#include "wadapt/errors.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wadapt {

using nlohmann::json;

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0 || n > 62)
    throw ParameterError("graph: vertex count must be in [0, 62], got " + std::to_string(n));
  for (auto &e : edges_) {
    if (e.j == e.k)
      throw ParameterError("graph: self-loop at vertex " + std::to_string(e.j));
    if (e.j > e.k)
      std::swap(e.j, e.k);
    if (e.j < 0 || e.k >= n)
      throw ParameterError("graph: edge (" + std::to_string(e.j) + "," + std::to_string(e.k) +
                           ") out of range");
    if (!std::isfinite(e.w))
      throw ParameterError("graph: non-finite edge weight");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge &a, const Edge &b) { return a.j != b.j ? a.j < b.j : a.k < b.k; });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].j == edges_[i - 1].j && edges_[i].k == edges_[i - 1].k)
      throw ParameterError("graph: duplicate edge (" + std::to_string(edges_[i].j) + "," +
                           std::to_string(edges_[i].k) + ")");
  }
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const auto &e : edges_) {
    ++deg[e.j];
    ++deg[e.k];
  }
  return deg;
}

std::vector<double> Graph::adjacency() const {
  std::vector<double> a(static_cast<std::size_t>(n_) * n_, 0.0);
  for (const auto &e : edges_) {
    a[e.j * n_ + e.k] = e.w;
    a[e.k * n_ + e.j] = e.w;
  }
  return a;
}

double Graph::cut_value(Assignment x) const {
  double f = 0.0;
  for (const auto &e : edges_) {
    if (((x >> e.j) ^ (x >> e.k)) & 1U)
      f += e.w;
  }
  return f;
}

namespace {

// Pairs stubs at random, setting aside pairs that would form a loop or a
// multi-edge and re-pairing only those. Returns false when the leftover stubs
// can no longer be completed.
bool try_pairing(int n, int degree, std::mt19937_64 &rng, std::set<std::pair<int, int>> &edges) {
  edges.clear();
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * degree);
  for (int d = 0; d < degree; ++d)
    for (int v = 0; v < n; ++v)
      stubs.push_back(v);

  while (!stubs.empty()) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::map<int, int> leftover;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int a = std::min(stubs[i], stubs[i + 1]);
      int b = std::max(stubs[i], stubs[i + 1]);
      if (a != b && !edges.contains({a, b})) {
        edges.insert({a, b});
      } else {
        ++leftover[a];
        ++leftover[b];
      }
    }
    if (leftover.empty())
      return true;
    bool completable = false;
    for (auto i = leftover.begin(); i != leftover.end() && !completable; ++i)
      for (auto j = std::next(i); j != leftover.end(); ++j)
        if (!edges.contains({i->first, j->first})) {
          completable = true;
          break;
        }
    if (!completable)
      return false;
    stubs.clear();
    for (auto [v, count] : leftover)
      for (int c = 0; c < count; ++c)
        stubs.push_back(v);
  }
  return true;
}

} // namespace

Graph random_regular(int n, int degree, bool weighted, std::uint64_t seed) {
  if (n < 1 || degree < 0)
    throw ParameterError("random_regular: need n >= 1 and degree >= 0");
  if (degree >= n)
    throw ParameterError("random_regular: degree " + std::to_string(degree) +
                         " must be smaller than n = " + std::to_string(n));
  if ((static_cast<long>(n) * degree) % 2 != 0)
    throw ParameterError("random_regular: n * degree must be even");

  std::mt19937_64 rng(seed);
  std::set<std::pair<int, int>> pairs;
  constexpr int kMaxAttempts = 100000;
  int attempt = 0;
  while (!try_pairing(n, degree, rng, pairs)) {
    if (++attempt == kMaxAttempts)
      throw ParameterError("random_regular: pairing failed repeatedly");
  }

  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    double w = 1.0;
    if (weighted) {
      do {
        w = uniform(rng);
      } while (w == 0.0);
    }
    edges.push_back({a, b, w});
  }
  return Graph(n, std::move(edges));
}

CutResult brute_force_maxcut(const Graph &g) {
  const int n = g.num_vertices();
  if (n > 30)
    throw ParameterError("brute_force_maxcut: n = " + std::to_string(n) + " too large");
  CutResult result;
  if (n == 0) {
    result.optimal_assignments.push_back(0);
    return result;
  }
  const Assignment full = (Assignment{1} << n) - 1;
  // Vertex 0 pinned to side 0; mirrors are added afterwards.
  std::vector<Assignment> best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (Assignment half = 0; half < (Assignment{1} << (n - 1)); ++half) {
    const Assignment x = half << 1;
    const double f = g.cut_value(x);
    if (f > best_value) {
      best_value = f;
      best.clear();
      best.push_back(x);
    } else if (f == best_value) {
      best.push_back(x);
    }
  }
  result.value = best_value;
  result.optimal_assignments.reserve(2 * best.size());
  for (Assignment x : best) {
    result.optimal_assignments.push_back(x);
    result.optimal_assignments.push_back(x ^ full);
  }
  std::sort(result.optimal_assignments.begin(), result.optimal_assignments.end());
  return result;
}

double total_weight(const Graph &g) {
  double w = 0.0;
  for (const auto &e : g.edges())
    w += e.w;
  return w;
}

std::string assignment_to_string(Assignment x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int j = 0; j < n; ++j)
    if ((x >> j) & 1U)
      s[n - 1 - j] = '1';
  return s;
}

std::string graph_to_json(const Graph &g) {
  json edges = json::array();
  for (const auto &e : g.edges())
    edges.push_back(json::array({e.j, e.k, e.w}));
  json doc;
  doc["n"] = g.num_vertices();
  doc["edges"] = std::move(edges);
  return doc.dump();
}

Graph graph_from_json(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw FormatError(std::string("graph file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges") ||
      !doc["n"].is_number_integer() || !doc["edges"].is_array())
    throw FormatError("graph file: expected {\"n\": int, \"edges\": [[j, k, w], ...]}");
  const int n = doc["n"].get<int>();
  std::vector<Edge> edges;
  int prev_j = -1, prev_k = -1;
  for (const auto &item : doc["edges"]) {
    if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() ||
        !item[1].is_number_integer() || !item[2].is_number())
      throw FormatError("graph file: each edge must be [j, k, w]");
    Edge e{item[0].get<int>(), item[1].get<int>(), item[2].get<double>()};
    if (e.j >= e.k)
      throw FormatError("graph file: edge requires j < k");
    if (e.j < prev_j || (e.j == prev_j && e.k <= prev_k))
      throw FormatError("graph file: edges must be sorted by (j, k) without duplicates");
    prev_j = e.j;
    prev_k = e.k;
    edges.push_back(e);
  }
  try {
    return Graph(n, std::move(edges));
  } catch (const ParameterError &e) {
    throw FormatError(std::string("graph file: ") + e.what());
  }
}

Graph load_graph(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw FormatError("cannot open graph file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return graph_from_json(buf.str());
}

void save_graph(const Graph &g, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw FormatError("cannot write graph file " + path);
  out << graph_to_json(g) << '\n';
}

std::string graph_hash(const Graph &g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : graph_to_json(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace wadapt
