#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lowspace/types.hpp"

namespace lowspace {

struct Arc {
  Vertex to;
  Weight weight;
};

struct Edge {
  Vertex u;
  Vertex v;
  Weight w;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected graph with positive integer weights. Adjacency is stored in CSR
// form with each neighbor list sorted by vertex id. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Parallel edges collapse to the minimum weight.
  /// Throws GraphError on self-loops, zero weights or out-of-range ids.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool unit_weights() const noexcept { return unit_weights_; }

  std::span<const Arc> neighbors(Vertex v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  /// Edges with u < v, sorted lexicographically.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<Weight> edge_weight(Vertex u, Vertex v) const;

  /// Component id per vertex, numbered in order of smallest member.
  std::vector<std::uint32_t> components() const;
  bool connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  bool unit_weights_ = true;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
};

/// Parses the "n m" / "u v w" edge-list format.
Graph load_graph(std::string_view text);
Graph load_graph_file(const std::string& path);
std::string write_graph(const Graph& g);

enum class GraphKind { path, cycle, grid, random, tree, sparse };

GraphKind parse_graph_kind(std::string_view name);
std::string_view to_string(GraphKind kind);

struct GenerateParams {
  GraphKind kind = GraphKind::path;
  std::size_t n = 0;
  std::size_t m = 0;       // random / sparse
  std::size_t rows = 0;    // grid
  std::size_t cols = 0;    // grid
  Weight max_weight = 1;   // weights drawn uniformly from [1, max_weight]
};

/// Deterministic for a fixed (params, seed).
///  path/cycle: n vertices.  grid: rows x cols.
///  random: m distinct edges drawn uniformly, redrawn until connected.
///  tree: uniform random recursive tree on n vertices.
///  sparse: random recursive tree plus m - (n - 1) uniform extra edges.
Graph generate_graph(const GenerateParams& params, std::uint64_t seed);

}  // namespace lowspace
