#pragma once

#include <cstdint>
#include <optional>
#include <algorithm>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "lowspace/graph.hpp"

namespace lowspace {

// Reusable Dijkstra/BFS state. Only touched entries are reset between runs,
// so a workspace can serve thousands of small searches on a large graph.
class SearchWorkspace {
 public:
  explicit SearchWorkspace(std::size_t n = 0) : dist_(n, kInfinity) {}

  std::size_t capacity() const noexcept { return dist_.size(); }

  /// Multi-source search. A vertex is entered only if its distance is <= limit
  /// and allow(v) holds; allow may instead take (v, tentative distance).
  /// Sources are assumed allowed.
  template <class Allow>
  void run(const Graph& g, std::span<const Vertex> sources, Dist limit, Allow&& allow);

  void run(const Graph& g, Vertex source, Dist limit = kInfinity) {
    run(g, std::span<const Vertex>(&source, 1), limit, [](Vertex) { return true; });
  }

  Dist dist(Vertex v) const noexcept { return dist_[v]; }
  bool reached(Vertex v) const noexcept { return dist_[v] != kInfinity; }

  /// Reached vertices in nondecreasing distance order.
  const std::vector<Vertex>& settled() const noexcept { return settled_; }

  void clear();

 private:
  template <class Allow>
  static bool admits(Allow& allow, Vertex v, Dist d) {
    if constexpr (std::is_invocable_r_v<bool, Allow&, Vertex, Dist>) {
      return allow(v, d);
    } else {
      return allow(v);
    }
  }

  std::vector<Dist> dist_;
  std::vector<Vertex> settled_;
  std::vector<std::pair<Dist, Vertex>> heap_;
};

// A shortest-path tree over a subset of vertices. Members are kept sorted by
// vertex id; parents are stored both as vertex ids and as local indices so
// walks towards the root cost O(1) per step.
class ShortestPathTree {
 public:
  ShortestPathTree() = default;

  /// parents[i] / dists[i] describe members[i]. members must be sorted and
  /// contain root; parents[root] == root. Throws InvariantViolation otherwise.
  ShortestPathTree(std::uint32_t id, Vertex root, std::vector<Vertex> members,
                   const std::vector<Vertex>& parents, std::vector<Dist> dists);

  std::uint32_t id() const noexcept { return id_; }
  Vertex root() const noexcept { return root_; }
  std::size_t size() const noexcept { return members_.size(); }
  std::span<const Vertex> members() const noexcept { return members_; }

  std::optional<std::uint32_t> local(Vertex v) const;
  bool contains(Vertex v) const { return local(v).has_value(); }

  Vertex vertex_at(std::uint32_t i) const { return members_[i]; }
  std::uint32_t parent_local(std::uint32_t i) const { return parent_[i]; }
  Vertex parent_at(std::uint32_t i) const { return members_[parent_[i]]; }
  Dist dist_at(std::uint32_t i) const { return dist_[i]; }
  std::uint32_t root_local() const noexcept { return root_local_; }

  Vertex parent(Vertex v) const;
  Dist dist_to_root(Vertex v) const;
  Dist max_depth() const;

  friend bool operator==(const ShortestPathTree&, const ShortestPathTree&) = default;

 private:
  std::uint32_t id_ = 0;
  Vertex root_ = 0;
  std::uint32_t root_local_ = 0;
  std::vector<Vertex> members_;
  std::vector<std::uint32_t> parent_;
  std::vector<Dist> dist_;
};

struct Path {
  std::vector<Vertex> vertices;
  Dist length = 0;
};

/// Tree built from the last search in `ws` rooted at `root`: every reached
/// vertex becomes a member, its parent is the smallest-id reached neighbor
/// lying on a shortest path.
ShortestPathTree tree_from_search(const Graph& g, const SearchWorkspace& ws, Vertex root,
                                  std::uint32_t id);

/// SPT of the subgraph induced by `restrict` (whole graph when absent).
ShortestPathTree shortest_path_tree(const Graph& g, Vertex root,
                                    std::optional<std::span<const Vertex>> restrict = std::nullopt,
                                    std::uint32_t id = 0);

/// Sorted { u : d(v,u) <= rho }.
std::vector<Vertex> ball(const Graph& g, Vertex v, const Radius& rho);

std::vector<Dist> distances_from(const Graph& g, Vertex source);
Dist exact_distance(const Graph& g, Vertex u, Vertex v);

/// 2 * ecc(0). Throws GraphError on disconnected graphs.
Dist diameter_upper_bound(const Graph& g);
/// Max over components of 2 * ecc(smallest vertex of the component).
Dist component_diameter_bound(const Graph& g);

/// Length of `walk` if it runs from u to v over edges of g; throws PathError.
Dist validate_path(const Graph& g, std::span<const Vertex> walk, Vertex u, Vertex v);

/// Unique tree path u -> LCA -> v. Throws PathError if an endpoint is absent.
Path tree_path(const ShortestPathTree& tree, Vertex u, Vertex v);

// ---------------------------------------------------------------------------

template <class Allow>
void SearchWorkspace::run(const Graph& g, std::span<const Vertex> sources, Dist limit,
                          Allow&& allow) {
  clear();
  if (g.unit_weights()) {
    for (Vertex s : sources) {
      if (dist_[s] == kInfinity) {
        dist_[s] = 0;
        settled_.push_back(s);
      }
    }
    for (std::size_t head = 0; head < settled_.size(); ++head) {
      const Vertex x = settled_[head];
      const Dist nd = dist_[x] + 1;
      if (nd > limit) continue;
      for (const Arc& a : g.neighbors(x)) {
        if (dist_[a.to] != kInfinity || !admits(allow, a.to, nd)) continue;
        dist_[a.to] = nd;
        settled_.push_back(a.to);
      }
    }
    return;
  }

  auto cmp = [](const auto& a, const auto& b) { return a.first > b.first; };
  for (Vertex s : sources) {
    if (dist_[s] == 0) continue;
    dist_[s] = 0;
    heap_.emplace_back(0, s);
  }
  std::make_heap(heap_.begin(), heap_.end(), cmp);
  // Each finite label is pushed once per strict decrease, so exactly one pop
  // carries the final value; every labelled vertex ends up in settled_.
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), cmp);
    auto [d, x] = heap_.back();
    heap_.pop_back();
    if (d != dist_[x]) continue;
    settled_.push_back(x);
    for (const Arc& a : g.neighbors(x)) {
      const Dist nd = d + a.weight;
      if (nd > limit || nd >= dist_[a.to] || !admits(allow, a.to, nd)) continue;
      dist_[a.to] = nd;
      heap_.emplace_back(nd, a.to);
      std::push_heap(heap_.begin(), heap_.end(), cmp);
    }
  }
}

}  // namespace lowspace
