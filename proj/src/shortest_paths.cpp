#include "lowspace/shortest_paths.hpp"

#include <algorithm>
#include <cmath>

namespace lowspace {

void SearchWorkspace::clear() {
  for (Vertex v : settled_) dist_[v] = kInfinity;
  settled_.clear();
  heap_.clear();
}

// ---------------------------------------------------------------------------

ShortestPathTree::ShortestPathTree(std::uint32_t id, Vertex root, std::vector<Vertex> members,
                                   const std::vector<Vertex>& parents, std::vector<Dist> dists)
    : id_(id), root_(root), members_(std::move(members)), dist_(std::move(dists)) {
  if (parents.size() != members_.size() || dist_.size() != members_.size()) {
    throw InvariantViolation("tree arrays have mismatched sizes");
  }
  if (!std::is_sorted(members_.begin(), members_.end()) ||
      std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw InvariantViolation("tree members must be sorted and unique");
  }
  auto r = local(root_);
  if (!r) throw InvariantViolation("tree root is not a member");
  root_local_ = *r;
  parent_.resize(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    auto p = local(parents[i]);
    if (!p) throw InvariantViolation("tree parent outside the tree");
    parent_[i] = *p;
  }
  if (parent_[root_local_] != root_local_ || dist_[root_local_] != 0) {
    throw InvariantViolation("tree root must be its own parent at distance 0");
  }
}

std::optional<std::uint32_t> ShortestPathTree::local(Vertex v) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it == members_.end() || *it != v) return std::nullopt;
  return static_cast<std::uint32_t>(it - members_.begin());
}

Vertex ShortestPathTree::parent(Vertex v) const {
  auto i = local(v);
  if (!i) throw PathError("vertex " + std::to_string(v) + " is not in the tree");
  return parent_at(*i);
}

Dist ShortestPathTree::dist_to_root(Vertex v) const {
  auto i = local(v);
  if (!i) throw PathError("vertex " + std::to_string(v) + " is not in the tree");
  return dist_[*i];
}

Dist ShortestPathTree::max_depth() const {
  return dist_.empty() ? 0 : *std::max_element(dist_.begin(), dist_.end());
}

// ---------------------------------------------------------------------------

ShortestPathTree tree_from_search(const Graph& g, const SearchWorkspace& ws, Vertex root,
                                  std::uint32_t id) {
  std::vector<Vertex> members = ws.settled();
  std::sort(members.begin(), members.end());
  std::vector<Vertex> parents(members.size());
  std::vector<Dist> dists(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Vertex v = members[i];
    dists[i] = ws.dist(v);
    if (v == root) {
      parents[i] = v;
      continue;
    }
    Vertex best = kNoVertex;
    for (const Arc& a : g.neighbors(v)) {  // ascending ids: first hit is smallest
      if (ws.reached(a.to) && ws.dist(a.to) + a.weight == dists[i]) {
        best = a.to;
        break;
      }
    }
    if (best == kNoVertex) throw InvariantViolation("search left a vertex without a parent");
    parents[i] = best;
  }
  return ShortestPathTree(id, root, std::move(members), parents, std::move(dists));
}

ShortestPathTree shortest_path_tree(const Graph& g, Vertex root,
                                    std::optional<std::span<const Vertex>> restrict,
                                    std::uint32_t id) {
  if (root >= g.num_vertices()) throw GraphError("root out of range");
  SearchWorkspace ws(g.num_vertices());
  if (!restrict) {
    ws.run(g, root);
    return tree_from_search(g, ws, root, id);
  }
  std::vector<char> allowed(g.num_vertices(), 0);
  for (Vertex v : *restrict) {
    if (v >= g.num_vertices()) throw GraphError("restrict set vertex out of range");
    allowed[v] = 1;
  }
  if (!allowed[root]) throw GraphError("root must belong to the restrict set");
  const Vertex src[] = {root};
  ws.run(g, src, kInfinity, [&](Vertex v) { return allowed[v] != 0; });
  return tree_from_search(g, ws, root, id);
}

std::vector<Vertex> ball(const Graph& g, Vertex v, const Radius& rho) {
  if (v >= g.num_vertices()) throw GraphError("vertex out of range");
  SearchWorkspace ws(g.num_vertices());
  const Vertex src[] = {v};
  ws.run(g, src, rho.limit, [](Vertex) { return true; });
  std::vector<Vertex> out = ws.settled();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Dist> distances_from(const Graph& g, Vertex source) {
  if (source >= g.num_vertices()) throw GraphError("vertex out of range");
  SearchWorkspace ws(g.num_vertices());
  ws.run(g, source);
  std::vector<Dist> out(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) out[v] = ws.dist(v);
  return out;
}

Dist exact_distance(const Graph& g, Vertex u, Vertex v) {
  if (u >= g.num_vertices() || v >= g.num_vertices()) throw GraphError("vertex out of range");
  return distances_from(g, u)[v];
}

Dist diameter_upper_bound(const Graph& g) {
  if (g.num_vertices() == 0) return 0;
  if (!g.connected()) throw GraphError("diameter bound needs a connected graph");
  auto d = distances_from(g, 0);
  return 2 * *std::max_element(d.begin(), d.end());
}

Dist component_diameter_bound(const Graph& g) {
  const auto comp = g.components();
  std::vector<char> seen_component;
  SearchWorkspace ws(g.num_vertices());
  Dist best = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (comp[v] < seen_component.size()) continue;  // components are numbered by smallest member
    seen_component.push_back(1);
    ws.run(g, v);
    for (Vertex x : ws.settled()) best = std::max(best, 2 * ws.dist(x));
  }
  return best;
}

Dist validate_path(const Graph& g, std::span<const Vertex> walk, Vertex u, Vertex v) {
  if (walk.empty()) throw PathError("empty path");
  if (walk.front() != u || walk.back() != v) throw PathError("path endpoints do not match");
  Dist total = 0;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    auto w = g.edge_weight(walk[i], walk[i + 1]);
    if (!w) {
      throw PathError("non-edge hop " + std::to_string(walk[i]) + " -> " +
                      std::to_string(walk[i + 1]));
    }
    total += *w;
  }
  return total;
}

Path tree_path(const ShortestPathTree& tree, Vertex u, Vertex v) {
  auto iu = tree.local(u);
  auto iv = tree.local(v);
  if (!iu || !iv) throw PathError("tree path endpoint is not in the tree");
  std::vector<Vertex> up;
  std::vector<Vertex> down;
  std::uint32_t a = *iu;
  std::uint32_t b = *iv;
  // Step the side that is farther from the root; they meet at the LCA.
  while (a != b) {
    if (tree.dist_at(a) >= tree.dist_at(b)) {
      up.push_back(tree.vertex_at(a));
      a = tree.parent_local(a);
    } else {
      down.push_back(tree.vertex_at(b));
      b = tree.parent_local(b);
    }
  }
  Path p;
  p.length = tree.dist_at(*iu) + tree.dist_at(*iv) - 2 * tree.dist_at(a);
  p.vertices = std::move(up);
  p.vertices.push_back(tree.vertex_at(a));
  p.vertices.insert(p.vertices.end(), down.rbegin(), down.rend());
  return p;
}

// ---------------------------------------------------------------------------

Radius Radius::from_real(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("radius must be non-negative");
  Radius out;
  out.value = r;
  out.limit = r >= 9.0e18 ? kInfinity - 1 : static_cast<Dist>(std::floor(r));
  return out;
}

namespace {

using u128 = unsigned __int128;
constexpr u128 kCap = static_cast<u128>(1) << 120;

u128 pow_sat(u128 base, std::uint64_t e) {
  u128 r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && r > kCap / base) return kCap;
    r *= base;
  }
  return r;
}

}  // namespace

Radius Radius::power(std::uint64_t base, std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("radius exponent denominator must be positive");
  Radius out;
  out.value = std::pow(static_cast<double>(base), static_cast<double>(num) / static_cast<double>(den));
  const u128 target = pow_sat(base, num);
  if (target >= kCap || out.value >= 4.0e18) {
    out.limit = kInfinity - 1;
    return out;
  }
  auto x = static_cast<u128>(std::floor(std::pow(static_cast<long double>(base),
                                                 static_cast<long double>(num) / den)));
  while (x > 0 && pow_sat(x, den) > target) --x;
  while (pow_sat(x + 1, den) <= target) ++x;
  out.limit = static_cast<Dist>(x);
  return out;
}

}  // namespace lowspace
