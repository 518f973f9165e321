#pragma once

// Brute-force references used by the tests. Nothing here shares code with
// the library beyond the Graph container.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "lowspace/graph.hpp"

namespace oracle {

using lowspace::Dist;
using lowspace::Graph;
using lowspace::kInfinity;
using lowspace::Vertex;

using Matrix = std::vector<std::vector<Dist>>;

inline Dist add(Dist a, Dist b) { return (a == kInfinity || b == kInfinity) ? kInfinity : a + b; }

/// Floyd-Warshall over the subgraph induced by `keep` (all vertices if empty).
inline Matrix floyd(const Graph& g, const std::vector<char>& keep = {}) {
  const std::size_t n = g.num_vertices();
  auto in = [&](Vertex v) { return keep.empty() || keep[v]; };
  Matrix d(n, std::vector<Dist>(n, kInfinity));
  for (Vertex v = 0; v < n; ++v)
    if (in(v)) d[v][v] = 0;
  for (const auto& e : g.edges()) {
    if (!in(e.u) || !in(e.v)) continue;
    d[e.u][e.v] = std::min(d[e.u][e.v], e.w);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.w);
  }
  for (Vertex k = 0; k < n; ++k)
    for (Vertex i = 0; i < n; ++i) {
      if (d[i][k] == kInfinity) continue;
      for (Vertex j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], add(d[i][k], d[k][j]));
    }
  return d;
}

/// Minimum over all simple paths, by exhaustive DFS (tiny graphs only).
inline Dist enumerate_paths(const Graph& g, Vertex u, Vertex v) {
  std::vector<char> on(g.num_vertices(), 0);
  Dist best = kInfinity;
  std::function<void(Vertex, Dist)> go = [&](Vertex x, Dist len) {
    if (x == v) {
      best = std::min(best, len);
      return;
    }
    on[x] = 1;
    for (const auto& a : g.neighbors(x))
      if (!on[a.to]) go(a.to, len + a.weight);
    on[x] = 0;
  };
  go(u, 0);
  return best;
}

inline std::vector<Vertex> ball(const Matrix& d, Vertex v, Dist limit) {
  std::vector<Vertex> out;
  for (Vertex u = 0; u < d.size(); ++u)
    if (d[v][u] <= limit) out.push_back(u);
  return out;
}

/// Strong diameter of the induced subgraph on `set` (kInfinity if disconnected).
inline Dist strong_diameter(const Graph& g, const std::vector<Vertex>& set) {
  std::vector<char> keep(g.num_vertices(), 0);
  for (Vertex v : set) keep[v] = 1;
  const Matrix d = floyd(g, keep);
  Dist best = 0;
  for (Vertex a : set)
    for (Vertex b : set) best = std::max(best, d[a][b]);
  return best;
}

/// Sizes of the components left after deleting `removed` from a forest given
/// by parent pointers over `members` (parent[i] == i for the root).
inline std::vector<std::size_t> forest_components(const std::vector<Vertex>& members,
                                                  const std::vector<Vertex>& parent,
                                                  const std::set<Vertex>& removed) {
  std::vector<std::size_t> comp(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) comp[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  auto index = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(members.begin(), members.end(), v) - members.begin());
  };
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Vertex v = members[i];
    const Vertex p = parent[i];
    if (p == v || removed.count(v) || removed.count(p)) continue;
    comp[find(i)] = find(index(p));
  }
  std::vector<std::size_t> size(members.size(), 0);
  for (std::size_t i = 0; i < members.size(); ++i)
    if (!removed.count(members[i])) ++size[find(i)];
  std::vector<std::size_t> out;
  for (std::size_t s : size)
    if (s > 0) out.push_back(s);
  return out;
}

/// True when walk starts at u, ends at v and every hop is an edge; returns length via out.
inline bool walk_ok(const Graph& g, const std::vector<Vertex>& walk, Vertex u, Vertex v, Dist& length) {
  if (walk.empty() || walk.front() != u || walk.back() != v) return false;
  length = 0;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    bool found = false;
    for (const auto& a : g.neighbors(walk[i])) {
      if (a.to == walk[i + 1]) {
        length += a.weight;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace oracle
