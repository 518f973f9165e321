#pragma once

#include <algorithm>
#include <vector>

#include "lowspace/graph.hpp"

namespace fixture {

using namespace lowspace;

inline Graph path(std::size_t n) {
  GenerateParams p;
  p.kind = GraphKind::path;
  p.n = n;
  return generate_graph(p, 0);
}

inline Graph cycle(std::size_t n) {
  GenerateParams p;
  p.kind = GraphKind::cycle;
  p.n = n;
  return generate_graph(p, 0);
}

inline Graph grid(std::size_t rows, std::size_t cols, Weight max_weight = 1) {
  GenerateParams p;
  p.kind = GraphKind::grid;
  p.rows = rows;
  p.cols = cols;
  p.max_weight = max_weight;
  return generate_graph(p, 0);
}

inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.push_back({0, v, 1});
  return Graph::from_edges(leaves + 1, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v, 1});
  return Graph::from_edges(n, e);
}

inline Graph single() { return Graph::from_edges(1, {}); }

/// Triangle with w(0,1)=5, w(1,2)=1, w(0,2)=1.
inline Graph weighted_triangle() { return Graph::from_edges(3, {{0, 1, 5}, {1, 2, 1}, {0, 2, 1}}); }

inline Graph sparse(std::size_t n, std::size_t m, std::uint64_t seed, Weight max_weight = 1) {
  GenerateParams p;
  p.kind = GraphKind::sparse;
  p.n = n;
  p.m = m;
  p.max_weight = max_weight;
  return generate_graph(p, seed);
}

inline Graph tree(std::size_t n, std::uint64_t seed) {
  GenerateParams p;
  p.kind = GraphKind::tree;
  p.n = n;
  return generate_graph(p, seed);
}

/// Small connected family mixing shapes, densities and weights.
inline std::vector<Graph> family(std::size_t count, std::size_t max_n, std::uint64_t seed,
                                 bool weighted = true) {
  std::vector<Graph> out;
  for (std::size_t i = 0; out.size() < count; ++i) {
    const std::size_t n = 2 + (seed * 7919 + i * 104729) % (max_n - 1);
    switch (i % 5) {
      case 0: out.push_back(sparse(n, std::min(n * (n - 1) / 2, n - 1 + n / 2), seed + i)); break;
      case 1: out.push_back(tree(n, seed + i)); break;
      case 2: {
        std::size_t r = 1;
        while ((r + 1) * (r + 1) <= n) ++r;
        out.push_back(grid(r, std::max<std::size_t>(n / r, 1)));
        break;
      }
      case 3: out.push_back(n >= 3 ? cycle(n) : path(n)); break;
      case 4: out.push_back(sparse(n, std::min(n * (n - 1) / 2, 2 * n), seed + i, weighted ? 5 : 1)); break;
    }
  }
  return out;
}

}  // namespace fixture
