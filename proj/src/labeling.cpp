#include "lowspace/labeling.hpp"

#include <algorithm>
#include <cmath>

namespace lowspace {

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

ScaleSet make_scales(std::size_t n, Dist delta, std::uint32_t k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  ScaleSet s;
  s.k = k;
  s.delta = std::max<Dist>(delta, 1);
  s.q = 0;
  if (n > 1 && s.delta > 1) {
    const u128 target = pow_sat(s.delta, k);
    if (target < kCap) {
      while (pow_sat(n, s.q) < target) ++s.q;
    } else {
      const long double exact = k * std::log(static_cast<long double>(s.delta)) /
                                std::log(static_cast<long double>(n));
      s.q = static_cast<std::uint32_t>(std::ceil(exact - 1e-12L));
    }
  }
  for (std::uint32_t i = 0; i <= s.q; ++i) s.radii.push_back(Radius::power(n, i, k));
  return s;
}

const ShortestPathTree& LabelingScheme::tree(ClusterId global) const {
  const std::uint32_t i = scale_of(global);
  return covers[i].clusters[global - offsets[i]].spt;
}

std::uint32_t LabelingScheme::scale_of(ClusterId global) const {
  if (global >= num_trees()) throw std::out_of_range("tree id out of range");
  auto it = std::upper_bound(offsets.begin(), offsets.end(), global);
  return static_cast<std::uint32_t>(it - offsets.begin() - 1);
}

std::size_t LabelingScheme::num_trees() const {
  return covers.empty() ? 0 : offsets.back() + covers.back().clusters.size();
}

void derive_labels(LabelingScheme& scheme) {
  const std::size_t n = scheme.n;
  if (scheme.covers.size() != scheme.scales.q + 1) {
    throw InvariantViolation("labeling needs one cover per scale");
  }
  scheme.offsets.assign(scheme.covers.size(), 0);
  ClusterId next = 0;
  for (std::size_t i = 0; i < scheme.covers.size(); ++i) {
    scheme.offsets[i] = next;
    next += static_cast<ClusterId>(scheme.covers[i].clusters.size());
  }

  Fingerprint fp;
  fp.add(n);
  fp.add(scheme.scales.k);
  fp.add(scheme.scales.delta);
  fp.add(scheme.scales.q);
  fp.add(static_cast<std::uint64_t>(scheme.method));
  fp.add(scheme.seed);
  for (const SparseCover& c : scheme.covers) {
    fp.add(c.clusters.size());
    for (const Cluster& cl : c.clusters) {
      fp.add(cl.root());
      fp.add(cl.spt.size());
    }
  }
  scheme.id = fp.value();

  scheme.labels.assign(n, {});
  for (Vertex v = 0; v < n; ++v) {
    VertexLabel& l = scheme.labels[v];
    l.scheme_id = scheme.id;
    l.vertex = v;
    l.padded.resize(scheme.covers.size());
  }
  for (std::size_t i = 0; i < scheme.covers.size(); ++i) {
    const SparseCover& c = scheme.covers[i];
    for (const Cluster& cl : c.clusters) {
      const ClusterId gid = scheme.offsets[i] + cl.id;
      for (std::uint32_t j = 0; j < cl.spt.size(); ++j) {
        scheme.labels[cl.spt.vertex_at(j)].trees.emplace(gid,
                                                         TreeRecord{cl.spt.parent_at(j), cl.spt.dist_at(j)});
      }
    }
    for (Vertex v = 0; v < n; ++v) scheme.labels[v].padded[i] = scheme.offsets[i] + c.padded[v];
  }
}

LabelingScheme build_labeling(const Graph& g, const LabelingOptions& opt) {
  LabelingScheme scheme;
  scheme.n = g.num_vertices();
  scheme.scales = make_scales(scheme.n, component_diameter_bound(g), opt.k);
  scheme.method = opt.method;
  scheme.seed = opt.seed;
  scheme.covers.resize(scheme.scales.q + 1);
  // Scales are independent; each randomized scale gets its own derived seed.
  parallel_for(opt.exec, scheme.covers.size(), [&](std::size_t i) {
    const Radius& r = scheme.scales.radii[i];
    if (opt.method == CoverMethod::deterministic) {
      scheme.covers[i] = build_cover_deterministic(g, r, opt.k, Execution::serial);
    } else {
      const std::uint64_t seed = make_stream(opt.seed, "labeling-scale", i)();
      scheme.covers[i] =
          build_cover_randomized_retrying(g, r, opt.k, seed, opt.max_attempts, Execution::serial);
    }
  });
  derive_labels(scheme);
  return scheme;
}

namespace {

bool in_scale(const VertexLabel& u, const VertexLabel& v, std::uint32_t j) {
  return v.trees.contains(u.padded[j]);
}

}  // namespace

std::optional<std::uint32_t> common_scale(const VertexLabel& u, const VertexLabel& v) {
  if (u.scheme_id != v.scheme_id) throw std::invalid_argument("labels come from different schemes");
  if (u.padded.empty()) return std::nullopt;
  const auto q = static_cast<std::uint32_t>(u.padded.size() - 1);
  if (!in_scale(u, v, q)) return std::nullopt;
  if (in_scale(u, v, 0)) return 0;
  std::uint32_t lo = 0;  // not in J
  std::uint32_t hi = q;  // in J
  while (hi - lo > 1) {
    const std::uint32_t mid = lo + (hi - lo) / 2;
    if (in_scale(u, v, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

Dist query_distance(const VertexLabel& u, const VertexLabel& v) {
  if (u.scheme_id != v.scheme_id) throw std::invalid_argument("labels come from different schemes");
  if (u.vertex == v.vertex) return 0;
  auto j = common_scale(u, v);
  if (!j) return kInfinity;
  const ClusterId tree = u.padded[*j];
  return u.trees.at(tree).dist + v.trees.at(tree).dist;
}

Path query_path(const LabelingScheme& scheme, Vertex u, Vertex v) {
  if (u >= scheme.n || v >= scheme.n) throw GraphError("vertex out of range");
  if (u == v) return Path{{u}, 0};
  auto j = common_scale(scheme.labels[u], scheme.labels[v]);
  if (!j) throw Unreachable("vertices lie in different components");
  return tree_path(scheme.tree(scheme.labels[u].padded[*j]), u, v);
}

double labeling_path_factor(const LabelingScheme& scheme) {
  const double n = static_cast<double>(std::max<std::size_t>(scheme.n, 1));
  return cover_beta(scheme.method, scheme.n, scheme.scales.k) * std::pow(n, 1.0 / scheme.scales.k);
}

double labeling_distance_factor(const LabelingScheme& scheme) { return 2.0 * labeling_path_factor(scheme); }

}  // namespace lowspace
