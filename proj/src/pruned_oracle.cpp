#include "lowspace/pruned_oracle.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "lowspace/rng.hpp"

namespace lowspace {

namespace {

void require_unweighted(const Graph& g) {
  if (!g.unit_weights()) throw GraphError("this construction requires an unweighted graph");
}

void append_path(Path& out, const Path& seg) {
  if (seg.vertices.empty()) return;
  auto first = seg.vertices.begin();
  if (!out.vertices.empty() && out.vertices.back() == *first) ++first;
  out.vertices.insert(out.vertices.end(), first, seg.vertices.end());
  out.length += seg.length;
}

std::uint64_t elapsed_ns(std::chrono::steady_clock::time_point a,
                         std::chrono::steady_clock::time_point b) {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
}

}  // namespace

// ---------------------------------------------------------------------------

HittingSet hitting_set(const Graph& g, std::uint32_t r) {
  if (r < 1) throw std::invalid_argument("hitting set radius must be >= 1");
  require_unweighted(g);
  const std::size_t n = g.num_vertices();
  std::vector<Dist> depth(n, kInfinity);
  std::vector<Vertex> parent(n, kNoVertex);
  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<char> is_root(n, 0);
  for (Vertex s = 0; s < n; ++s) {
    if (depth[s] != kInfinity) continue;
    is_root[s] = 1;
    depth[s] = 0;
    parent[s] = s;
    order.push_back(s);
    for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
      const Vertex x = order[head];
      for (const Arc& a : g.neighbors(x)) {
        if (depth[a.to] != kInfinity) continue;
        depth[a.to] = depth[x] + 1;
        parent[a.to] = x;
        order.push_back(a.to);
      }
    }
  }

  std::vector<std::size_t> count(r, 0);
  for (Vertex v = 0; v < n; ++v) ++count[depth[v] % r];
  const auto residue = static_cast<Dist>(std::min_element(count.begin(), count.end()) - count.begin());

  HittingSet h;
  h.r = r;
  h.rep.assign(n, kNoVertex);
  h.rep_dist.assign(n, 0);
  for (Vertex v : order) {
    if (is_root[v] || depth[v] % r == residue) {
      h.rep[v] = v;
      h.members.push_back(v);
    } else {
      h.rep[v] = h.rep[parent[v]];
      h.rep_dist[v] = h.rep_dist[parent[v]] + 1;
    }
  }
  std::sort(h.members.begin(), h.members.end());
  return h;
}

std::vector<Vertex> tree_separator(const ShortestPathTree& tree, std::uint32_t r) {
  if (r < 1) throw std::invalid_argument("separator size parameter must be >= 1");
  const std::size_t size = tree.size();
  std::vector<std::uint32_t> order(size);
  std::iota(order.begin(), order.end(), 0U);
  // Children are strictly farther from the root, so deepest-first is a post-order.
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::pair(tree.dist_at(a), tree.vertex_at(a)) > std::pair(tree.dist_at(b), tree.vertex_at(b));
  });
  const std::size_t cut_at = (r + 1) / 2;
  std::vector<std::size_t> residual(size, 1);
  std::vector<Vertex> out;
  for (std::uint32_t i : order) {
    if (residual[i] >= cut_at) {
      out.push_back(tree.vertex_at(i));
      residual[i] = 0;
    }
    if (i != tree.root_local()) residual[tree.parent_local(i)] += residual[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

TZLevels sample_levels(const Graph& g, std::uint32_t t, std::uint64_t seed) {
  if (t < 1 || t > 255) throw std::invalid_argument("t must be in [1, 255]");
  const std::size_t n = g.num_vertices();
  std::vector<std::uint8_t> level(n, 0);
  Rng rng = make_stream(seed, "tz-levels");
  std::bernoulli_distribution keep(n > 0 ? std::pow(static_cast<double>(n), -1.0 / t) : 1.0);
  for (std::uint32_t i = 1; i < t; ++i) {
    for (Vertex v = 0; v < n; ++v) {
      if (level[v] == i - 1 && keep(rng)) level[v] = static_cast<std::uint8_t>(i);
    }
  }
  const auto comp = g.components();
  std::vector<char> has_top;
  for (Vertex v = 0; v < n; ++v) {
    if (comp[v] >= has_top.size()) has_top.resize(comp[v] + 1, 0);
    if (level[v] == t - 1) has_top[comp[v]] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!has_top[comp[v]]) {  // first visit is the smallest vertex of the component
      level[v] = static_cast<std::uint8_t>(t - 1);
      has_top[comp[v]] = 1;
    }
  }
  TZLevels out = levels_from_assignment(g, t, std::move(level));
  out.seed = seed;
  return out;
}

TZLevels levels_from_assignment(const Graph& g, std::uint32_t t, std::vector<std::uint8_t> level) {
  if (t < 1 || t > 255) throw std::invalid_argument("t must be in [1, 255]");
  const std::size_t n = g.num_vertices();
  if (level.size() != n) throw std::invalid_argument("level assignment has wrong length");
  for (auto l : level)
    if (l >= t) throw std::invalid_argument("level assignment exceeds t-1");

  TZLevels out;
  out.t = t;
  out.level = std::move(level);
  out.dist.assign(t + 1, std::vector<Dist>(n, kInfinity));
  out.pivot.assign(t, std::vector<Vertex>(n, kNoVertex));
  std::vector<std::vector<Vertex>> nearest(t, std::vector<Vertex>(n, kNoVertex));

  SearchWorkspace ws(n);
  std::vector<Vertex> sources;
  for (std::uint32_t i = 0; i < t; ++i) {
    sources.clear();
    for (Vertex v = 0; v < n; ++v)
      if (out.level[v] >= i) sources.push_back(v);
    ws.run(g, sources, kInfinity, [](Vertex) { return true; });
    auto& d = out.dist[i];
    auto& near = nearest[i];
    // Settled order is nondecreasing in distance: predecessors are final.
    for (Vertex x : ws.settled()) {
      d[x] = ws.dist(x);
      if (d[x] == 0) {
        near[x] = x;
        continue;
      }
      for (const Arc& a : g.neighbors(x)) {
        if (ws.reached(a.to) && ws.dist(a.to) + a.weight == d[x]) near[x] = std::min(near[x], near[a.to]);
      }
    }
  }
  for (std::uint32_t i = t; i-- > 0;) {
    for (Vertex v = 0; v < n; ++v) {
      const bool tied = i + 1 < t && out.dist[i][v] == out.dist[i + 1][v];
      out.pivot[i][v] = tied ? out.pivot[i + 1][v] : nearest[i][v];
    }
  }
  return out;
}

ShortestPathTree tz_cluster_tree(const Graph& g, const TZLevels& levels, Vertex w,
                                 SearchWorkspace& ws) {
  const std::vector<Dist>& next = levels.dist[levels.level[w] + 1];
  const Vertex src[] = {w};
  ws.run(g, src, kInfinity, [&](Vertex x, Dist d) { return d < next[x]; });
  return tree_from_search(g, ws, w, w);
}

std::optional<std::size_t> BunchStore::index(Vertex v) const {
  auto it = std::lower_bound(owners.begin(), owners.end(), v);
  if (it == owners.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - owners.begin());
}

std::optional<Dist> BunchStore::bunch_distance(std::size_t owner, Vertex w) const {
  const auto& b = bunch[owner];
  auto it = std::lower_bound(b.begin(), b.end(), w, [](const BunchEntry& e, Vertex x) { return e.w < x; });
  if (it == b.end() || it->w != w) return std::nullopt;
  return it->dist;
}

namespace {

struct OwnerHit {
  std::uint32_t owner;
  Dist dist;
};

std::vector<OwnerHit> owner_hits(const ShortestPathTree& tree, const std::vector<std::int64_t>& owner_index) {
  std::vector<OwnerHit> hits;
  for (std::uint32_t j = 0; j < tree.size(); ++j) {
    const auto idx = owner_index[tree.vertex_at(j)];
    if (idx >= 0) hits.push_back({static_cast<std::uint32_t>(idx), tree.dist_at(j)});
  }
  return hits;
}

BunchStore assemble_bunches(const TZLevels& levels, std::vector<Vertex> owners,
                            const std::vector<std::vector<OwnerHit>>& per_root) {
  BunchStore store;
  store.owners = std::move(owners);
  store.bunch.resize(store.owners.size());
  for (Vertex w = 0; w < per_root.size(); ++w)
    for (const OwnerHit& h : per_root[w]) store.bunch[h.owner].push_back({w, h.dist});
  store.pivot.resize(store.owners.size());
  store.pivot_dist.resize(store.owners.size());
  for (std::size_t i = 0; i < store.owners.size(); ++i) {
    const Vertex v = store.owners[i];
    for (std::uint32_t l = 0; l < levels.t; ++l) {
      store.pivot[i].push_back(levels.pivot[l][v]);
      store.pivot_dist[i].push_back(levels.dist[l][v]);
    }
  }
  return store;
}

std::vector<std::int64_t> owner_index_of(std::size_t n, std::span<const Vertex> owners) {
  std::vector<std::int64_t> idx(n, -1);
  for (std::size_t i = 0; i < owners.size(); ++i) {
    if (owners[i] >= n) throw GraphError("owner out of range");
    if (i > 0 && owners[i] <= owners[i - 1]) throw std::invalid_argument("owners must be sorted and unique");
    idx[owners[i]] = static_cast<std::int64_t>(i);
  }
  return idx;
}

}  // namespace

TZBuild tz_build(const Graph& g, std::uint32_t t, std::span<const Vertex> owners, std::uint64_t seed,
                 Execution exec) {
  require_unweighted(g);
  return tz_build(g, sample_levels(g, t, seed), owners, exec);
}

TZBuild tz_build(const Graph& g, TZLevels levels, std::span<const Vertex> owners, Execution exec) {
  require_unweighted(g);
  const std::size_t n = g.num_vertices();
  const auto owner_index = owner_index_of(n, owners);
  TZBuild out;
  out.trees.resize(n);
  std::vector<std::vector<OwnerHit>> per_root(n);
  parallel_for_with_state(
      exec, n, [n] { return SearchWorkspace(n); },
      [&](SearchWorkspace& ws, std::size_t w) {
        out.trees[w] = tz_cluster_tree(g, levels, static_cast<Vertex>(w), ws);
        per_root[w] = owner_hits(out.trees[w], owner_index);
      });
  out.bunches = assemble_bunches(levels, std::vector<Vertex>(owners.begin(), owners.end()), per_root);
  out.levels = std::move(levels);
  return out;
}

Witness find_witness(const BunchStore& store, Vertex u, Vertex v) {
  auto iu = store.index(u);
  auto iv = store.index(v);
  if (!iu || !iv) throw std::invalid_argument("witness endpoints must belong to the hitting set");
  if (u == v) return {u, 0, 0};
  std::size_t a = *iu;
  std::size_t b = *iv;
  bool swapped = false;
  const std::size_t t = store.pivot[a].size();
  for (std::size_t i = 0; i < t; ++i) {
    const Vertex w = store.pivot[a][i];
    if (w == kNoVertex) break;
    if (auto d = store.bunch_distance(b, w)) {
      const Dist own = store.pivot_dist[a][i];
      return swapped ? Witness{w, *d, own} : Witness{w, own, *d};
    }
    std::swap(a, b);
    swapped = !swapped;
  }
  throw Unreachable("no common bunch vertex: endpoints lie in different components");
}

// ---------------------------------------------------------------------------

std::optional<std::uint32_t> PrunedTree::local(Vertex v) const {
  auto it = std::lower_bound(members.begin(), members.end(), v);
  if (it == members.end() || *it != v) return std::nullopt;
  return static_cast<std::uint32_t>(it - members.begin());
}

PrunedTree prune_tree(const ShortestPathTree& tree, std::span<const Vertex> separator,
                      const std::vector<char>& in_n, Dist max_gap) {
  const std::size_t size = tree.size();
  PrunedTree out;
  out.root = tree.root();
  std::vector<std::int64_t> kept(size, -1);
  for (std::uint32_t i = 0; i < size; ++i) {
    const Vertex v = tree.vertex_at(i);
    const bool root = i == tree.root_local();
    const bool hit = in_n[v] != 0;
    const bool cut = std::binary_search(separator.begin(), separator.end(), v);
    if (!(root || hit || cut)) continue;
    kept[i] = static_cast<std::int64_t>(out.members.size());
    out.members.push_back(v);
    out.root_dist.push_back(tree.dist_at(i));
    if (!root) ++(hit ? out.from_hitting : out.from_separator);
  }

  // Nearest kept ancestor-or-self, filled in nondecreasing depth order.
  std::vector<std::uint32_t> order(size);
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::pair(tree.dist_at(a), a) < std::pair(tree.dist_at(b), b);
  });
  std::vector<std::uint32_t> nearest(size, 0);
  out.ancestor.assign(out.members.size(), 0);
  out.ancestor_dist.assign(out.members.size(), 0);
  for (std::uint32_t i : order) {
    if (i == tree.root_local()) {
      nearest[i] = static_cast<std::uint32_t>(kept[i]);
      out.ancestor[nearest[i]] = nearest[i];
      continue;
    }
    const std::uint32_t up = nearest[tree.parent_local(i)];
    if (kept[i] < 0) {
      nearest[i] = up;
      continue;
    }
    const auto me = static_cast<std::uint32_t>(kept[i]);
    nearest[i] = me;
    out.ancestor[me] = up;
    out.ancestor_dist[me] = out.root_dist[me] - out.root_dist[up];
    if (out.ancestor_dist[me] > max_gap) {
      throw InvariantViolation("pruned tree of " + std::to_string(out.root) + " has a gap of " +
                               std::to_string(out.ancestor_dist[me]) + " > " + std::to_string(max_gap));
    }
  }
  return out;
}

std::vector<SkeletonPoint> skeleton_path(const PrunedTree& tree, Vertex u, Vertex v) {
  auto iu = tree.local(u);
  auto iv = tree.local(v);
  if (!iu || !iv) throw PathError("skeleton endpoint is not in the pruned tree");
  std::vector<std::uint32_t> up;
  std::vector<std::uint32_t> down;
  std::uint32_t a = *iu;
  std::uint32_t b = *iv;
  while (a != b) {
    if (tree.root_dist[a] >= tree.root_dist[b]) {
      up.push_back(a);
      a = tree.ancestor[a];
    } else {
      down.push_back(b);
      b = tree.ancestor[b];
    }
  }
  const Dist du = tree.root_dist[*iu];
  const Dist dm = tree.root_dist[a];
  std::vector<SkeletonPoint> out;
  out.reserve(up.size() + down.size() + 1);
  for (std::uint32_t x : up) out.push_back({tree.members[x], du - tree.root_dist[x]});
  out.push_back({tree.members[a], du - dm});
  for (auto it = down.rbegin(); it != down.rend(); ++it) {
    out.push_back({tree.members[*it], (du - dm) + (tree.root_dist[*it] - dm)});
  }
  return out;
}

std::vector<SkeletonPoint> sparsify_skeleton(std::span<const SkeletonPoint> seq, Dist p) {
  std::vector<SkeletonPoint> out;
  if (seq.empty()) return out;
  out.push_back(seq.front());
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (i + 1 == seq.size() || seq[i].offset - out.back().offset >= p) out.push_back(seq[i]);
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    const Dist gap = out[i].offset - out[i - 1].offset;
    const bool final_gap = i + 1 == out.size();
    if (gap > 3 * p || (!final_gap && gap < p)) {
      throw InvariantViolation("sparsified gap " + std::to_string(gap) + " outside [p, 3p] for p = " +
                               std::to_string(p));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

OracleParams params_from_epsilon(std::size_t n, std::uint32_t k, double eps, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  OracleParams p;
  p.k = k;
  p.t = k;
  const Dist root = Radius::power(std::max<std::size_t>(n, 1), 1, k).limit;
  Dist ceil_root = root;
  {
    // ceil(n^{1/k}) from the exact floor.
    unsigned __int128 x = 1;
    for (std::uint32_t i = 0; i < k; ++i) x *= root;
    if (x < n) ++ceil_root;
  }
  p.p = static_cast<std::uint32_t>(std::max<Dist>(ceil_root, 1));
  p.s = static_cast<std::uint32_t>(std::max(1.0, std::ceil(1.0 / eps - 1e-12)));
  p.seed = seed;
  return p;
}

PrunedOracle build_oracle(const Graph& g, const OracleParams& params) {
  require_unweighted(g);
  if (params.k < 1 || params.p < 1 || params.t < 1 || params.s < 1) {
    throw std::invalid_argument("oracle parameters k, p, t, s must be >= 1");
  }
  const std::size_t n = g.num_vertices();
  PrunedOracle o;
  o.params = params;
  o.n = n;
  o.hits = hitting_set(g, 2 * params.p);
  std::vector<char> in_n(n, 0);
  for (Vertex v : o.hits.members) in_n[v] = 1;
  const auto owner_index = owner_index_of(n, o.hits.members);

  TZLevels levels = sample_levels(g, params.t, params.seed);
  o.level = levels.level;
  o.trees.resize(n);
  std::vector<std::vector<OwnerHit>> per_root(n);
  parallel_for_with_state(
      params.exec, n, [n] { return SearchWorkspace(n); },
      [&](SearchWorkspace& ws, std::size_t w) {
        const ShortestPathTree tw = tz_cluster_tree(g, levels, static_cast<Vertex>(w), ws);
        const auto sep = tree_separator(tw, params.p);
        o.trees[w] = prune_tree(tw, sep, in_n, params.p);
        per_root[w] = owner_hits(tw, owner_index);
      });
  o.bunches = assemble_bunches(levels, o.hits.members, per_root);

  const Dist base = 3ULL * params.p;
  o.gap_covers.resize(params.s);
  parallel_for(params.exec, params.s, [&](std::size_t i) {
    const Radius r = Radius::power(base, i + 1, params.s);
    if (params.cover_method == CoverMethod::deterministic) {
      o.gap_covers[i] = build_cover_deterministic(g, r, params.k, Execution::serial);
    } else {
      const std::uint64_t seed = make_stream(params.seed, "gap-cover", i)();
      o.gap_covers[i] = build_cover_randomized_retrying(g, r, params.k, seed, 32, Execution::serial);
    }
  });
  return o;
}

std::optional<std::uint32_t> gap_cover_index(const PrunedOracle& oracle, Vertex a, Vertex b) {
  const auto& covers = oracle.gap_covers;
  auto in = [&](std::size_t i) { return covers[i].padded_cluster(a).contains(b); };
  const auto top = static_cast<std::uint32_t>(covers.size() - 1);
  if (!in(top)) return std::nullopt;
  if (in(0)) return 0;
  std::uint32_t lo = 0;
  std::uint32_t hi = top;
  while (hi - lo > 1) {
    const std::uint32_t mid = lo + (hi - lo) / 2;
    if (in(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

Path fill_gap(const PrunedOracle& oracle, Vertex a, Vertex b) {
  if (a >= oracle.n || b >= oracle.n) throw GraphError("vertex out of range");
  if (a == b) return Path{{a}, 0};
  auto i = gap_cover_index(oracle, a, b);
  if (!i) throw PathError("gap endpoints are not covered by a common cluster");
  return tree_path(oracle.gap_covers[*i].padded_cluster(a).spt, a, b);
}

Path query_path(const PrunedOracle& oracle, Vertex u, Vertex v, QueryProfile* profile) {
  using clock = std::chrono::steady_clock;
  const auto start = profile ? clock::now() : clock::time_point{};
  if (u >= oracle.n || v >= oracle.n) throw GraphError("vertex out of range");
  if (u == v) return Path{{u}, 0};

  const SparseCover& top = oracle.gap_covers.back();
  if (top.padded_cluster(u).contains(v)) {
    Path p = fill_gap(oracle, u, v);
    if (profile) profile->path_ns = elapsed_ns(start, clock::now());
    return p;
  }

  const Vertex u1 = oracle.hits.rep[u];
  const Vertex v1 = oracle.hits.rep[v];
  const auto witness_start = profile ? clock::now() : clock::time_point{};
  const Witness w = find_witness(oracle.bunches, u1, v1);
  if (profile) profile->witness_ns = elapsed_ns(witness_start, clock::now());

  const auto skeleton = skeleton_path(oracle.trees[w.w], u1, v1);
  const auto kept = sparsify_skeleton(skeleton, oracle.params.p);

  Path out = fill_gap(oracle, u, u1);
  for (std::size_t i = 1; i < kept.size(); ++i) {
    const Vertex a = kept[i - 1].v;
    const Vertex b = kept[i].v;
    const Cluster& c = top.padded_cluster(a);
    if (!c.contains(b)) throw InvariantViolation("skeleton gap escapes the top gap cover");
    append_path(out, tree_path(c.spt, a, b));
  }
  append_path(out, fill_gap(oracle, v1, v));
  if (profile) profile->path_ns = elapsed_ns(start, clock::now()) - profile->witness_ns;
  return out;
}

StretchEnvelope oracle_envelope(const PrunedOracle& oracle) {
  const auto& p = oracle.params;
  const double root = std::pow(static_cast<double>(std::max<std::size_t>(oracle.n, 1)), 1.0 / p.k);
  const double scale = cover_beta(p.cover_method, oracle.n, p.k) / cover_beta(CoverMethod::deterministic, oracle.n, p.k);
  const double kn = p.k * root * scale;
  StretchEnvelope e;
  const double short_range = p.s > 1 ? std::pow(3.0 * p.p, 1.0 / p.s) : 0.0;
  e.multiplicative = 100.0 * (p.t + short_range) * kn;
  e.additive = 100.0 * p.p * kn;
  return e;
}

SpaceReport space_report(const PrunedOracle& o) {
  SpaceReport r;
  for (const SparseCover& c : o.gap_covers) {
    for (const Cluster& cl : c.clusters) r.cover_words += 3 * cl.spt.size();
    r.cover_words += c.padded.size();
  }
  for (const auto& b : o.bunches.bunch) r.bunch_words += 2 * b.size();
  for (const auto& pv : o.bunches.pivot) r.pivot_words += 2 * pv.size();
  r.rep_words = 2 * o.n;
  for (const PrunedTree& t : o.trees) {
    r.pruned_hitting_words += 3 * static_cast<std::size_t>(t.from_hitting);
    r.pruned_separator_words += 3 * static_cast<std::size_t>(t.from_separator);
    r.pruned_root_words += 3;
  }
  r.total_words = r.cover_words + r.bunch_words + r.pivot_words + r.rep_words + r.pruned_hitting_words +
                  r.pruned_separator_words + r.pruned_root_words;
  const double n = static_cast<double>(o.n);
  const double t = o.params.t;
  r.formula = o.params.k * n + t * std::pow(n, 1.0 + 1.0 / t) / o.params.p;
  return r;
}

}  // namespace lowspace
