#pragma once

// Path-reporting distance oracle for unweighted graphs with space
// O(kn + t n^{1+1/t} / p).
//
// Ingredients:
//   N         a set of about n/p vertices hitting every ball of radius 2p;
//   TZ        levels A_0 = V ⊇ ... ⊇ A_{t-1}, bunches and pivots kept only for N;
//   T̄_w       the TZ cluster tree of w pruned to separator vertices, N and w;
//   D_1..D_s  sparse covers of radii (3p)^{i/s} used to fill short gaps.
//
// A query maps u, v to nearby u', v' in N, finds a TZ witness w, walks the
// pruned tree between u' and v', thins the walk so consecutive points are
// between p and 3p apart and joins them through cover trees.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lowspace/graph.hpp"
#include "lowspace/parallel.hpp"
#include "lowspace/shortest_paths.hpp"
#include "lowspace/sparse_cover.hpp"

namespace lowspace {

// ---------------------------------------------------------------------------
// Hitting set and tree separator

struct HittingSet {
  std::uint32_t r = 1;
  std::vector<Vertex> members;  // sorted
  std::vector<Vertex> rep;      // nearest selected BFS ancestor
  std::vector<Dist> rep_dist;

  bool contains(Vertex v) const { return std::binary_search(members.begin(), members.end(), v); }
  friend bool operator==(const HittingSet&, const HittingSet&) = default;
};

/// BFS forest (one tree per component, rooted at its smallest vertex); the
/// smallest depth class modulo r plus the roots. Every radius-r ball is hit
/// and rep_dist <= r - 1.
HittingSet hitting_set(const Graph& g, std::uint32_t r);

/// Sorted separator vertices: post-order sweep cutting a vertex once its
/// residual subtree reaches ceil(r/2). At most 2|T|/r vertices; every
/// remaining component has fewer than ceil(r/2) vertices.
std::vector<Vertex> tree_separator(const ShortestPathTree& tree, std::uint32_t r);

// ---------------------------------------------------------------------------
// Thorup-Zwick levels, clusters and bunches

struct TZLevels {
  std::uint32_t t = 1;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> level;           // v in A_i  <=>  level[v] >= i
  std::vector<std::vector<Dist>> dist;       // dist[i][v] = d(v, A_i), i = 0..t
  std::vector<std::vector<Vertex>> pivot;    // pivot[i][v] = p_i(v), i = 0..t-1

  bool in_level(std::uint32_t i, Vertex v) const { return i < t && level[v] >= i; }
};

/// A_i is drawn from A_{i-1} with probability n^{-1/t}; a component with no
/// vertex in A_{t-1} gets its smallest vertex promoted so every pivot chain
/// ends inside the component.
TZLevels sample_levels(const Graph& g, std::uint32_t t, std::uint64_t seed);

/// Levels from an explicit assignment (level[v] = largest i with v in A_i).
TZLevels levels_from_assignment(const Graph& g, std::uint32_t t, std::vector<std::uint8_t> level);

/// T_w: SPT of C(w) = { u : d(w,u) < d(u, A_{l+1}) } for w at level l.
ShortestPathTree tz_cluster_tree(const Graph& g, const TZLevels& levels, Vertex w,
                                 SearchWorkspace& ws);

struct BunchEntry {
  Vertex w;
  Dist dist;
  friend bool operator==(const BunchEntry&, const BunchEntry&) = default;
};

// Bunches and pivots for the owners (members of N) only.
struct BunchStore {
  std::vector<Vertex> owners;                        // sorted
  std::vector<std::vector<BunchEntry>> bunch;        // sorted by w
  std::vector<std::vector<Vertex>> pivot;            // t entries; kNoVertex if unreachable
  std::vector<std::vector<Dist>> pivot_dist;

  std::optional<std::size_t> index(Vertex v) const;
  std::optional<Dist> bunch_distance(std::size_t owner, Vertex w) const;
  friend bool operator==(const BunchStore&, const BunchStore&) = default;
};

struct TZBuild {
  TZLevels levels;
  BunchStore bunches;
  std::vector<ShortestPathTree> trees;  // T_w for every w
};

/// Materializes every cluster tree; meant for inspection and tests.
TZBuild tz_build(const Graph& g, std::uint32_t t, std::span<const Vertex> owners, std::uint64_t seed,
                 Execution exec = Execution::parallel);
TZBuild tz_build(const Graph& g, TZLevels levels, std::span<const Vertex> owners,
                 Execution exec = Execution::parallel);

struct Witness {
  Vertex w;
  Dist du;  // d(u', w)
  Dist dv;  // d(v', w)
};

/// Alternating pivot search over the owners' bunches. Throws Unreachable
/// when no level produces a common vertex.
Witness find_witness(const BunchStore& store, Vertex u, Vertex v);

// ---------------------------------------------------------------------------
// Pruned trees and skeleton paths

struct PrunedTree {
  Vertex root = 0;
  std::vector<Vertex> members;           // sorted
  std::vector<std::uint32_t> ancestor;   // local index of nearest kept proper ancestor; root -> self
  std::vector<Dist> ancestor_dist;
  std::vector<Dist> root_dist;
  std::uint32_t from_hitting = 0;        // members taken because they lie in N (root excluded)
  std::uint32_t from_separator = 0;      // remaining non-root members

  std::optional<std::uint32_t> local(Vertex v) const;
  friend bool operator==(const PrunedTree&, const PrunedTree&) = default;
};

/// Keeps (separator ∪ in_n ∪ {root}) ∩ T. Throws InvariantViolation when a
/// gap on a root path exceeds max_gap.
PrunedTree prune_tree(const ShortestPathTree& tree, std::span<const Vertex> separator,
                      const std::vector<char>& in_n, Dist max_gap);

struct SkeletonPoint {
  Vertex v;
  Dist offset;  // cumulative tree length from the first point
};

/// u' -> meeting point -> v' along pruned ancestor links.
std::vector<SkeletonPoint> skeleton_path(const PrunedTree& tree, Vertex u, Vertex v);

/// Greedy thinning: keep a point once it is >= p past the last kept one and
/// always keep the last. Non-final gaps land in [p, 3p], the final in [0, 3p]
/// (checked; InvariantViolation otherwise).
std::vector<SkeletonPoint> sparsify_skeleton(std::span<const SkeletonPoint> seq, Dist p);

// ---------------------------------------------------------------------------
// The oracle

struct OracleParams {
  std::uint32_t k = 2;
  std::uint32_t p = 1;
  std::uint32_t t = 2;
  std::uint32_t s = 1;
  std::uint64_t seed = 0;
  CoverMethod cover_method = CoverMethod::deterministic;
  Execution exec = Execution::parallel;
};

/// t = k, p = ceil(n^{1/k}), s = ceil(1/eps).
OracleParams params_from_epsilon(std::size_t n, std::uint32_t k, double eps, std::uint64_t seed);

struct PrunedOracle {
  OracleParams params;
  std::size_t n = 0;
  std::vector<std::uint8_t> level;
  HittingSet hits;
  BunchStore bunches;
  std::vector<PrunedTree> trees;         // indexed by root w
  std::vector<SparseCover> gap_covers;   // radii (3p)^{i/s}, i = 1..s
};

PrunedOracle build_oracle(const Graph& g, const OracleParams& params);

/// Tree path between a and b in the cover with the smallest index found by
/// binary search whose padded cluster of a contains b. Requires b in D_s(a).
Path fill_gap(const PrunedOracle& oracle, Vertex a, Vertex b);
/// Index (0-based) of the cover fill_gap would use, or nullopt if b is not in D_s(a).
std::optional<std::uint32_t> gap_cover_index(const PrunedOracle& oracle, Vertex a, Vertex b);

struct QueryProfile {
  std::uint64_t witness_ns = 0;
  std::uint64_t path_ns = 0;
};

Path query_path(const PrunedOracle& oracle, Vertex u, Vertex v, QueryProfile* profile = nullptr);

struct StretchEnvelope {
  double multiplicative = 0.0;
  double additive = 0.0;
};

/// 100 t k n^{1/k} (s = 1) or 100 (t + (3p)^{1/s}) k n^{1/k} (s > 1), plus
/// 100 p k n^{1/k}.
StretchEnvelope oracle_envelope(const PrunedOracle& oracle);

struct SpaceReport {
  std::size_t cover_words = 0;
  std::size_t bunch_words = 0;
  std::size_t pivot_words = 0;
  std::size_t rep_words = 0;
  std::size_t pruned_hitting_words = 0;
  std::size_t pruned_separator_words = 0;
  std::size_t pruned_root_words = 0;
  std::size_t total_words = 0;
  double formula = 0.0;  // k n + t n^{1+1/t} / p
};

SpaceReport space_report(const PrunedOracle& oracle);

}  // namespace lowspace
