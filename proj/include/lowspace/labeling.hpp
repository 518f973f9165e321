#pragma once

// Multi-scale distance labels. Scale i holds a sparse cover with radius
// n^{i/k}; a vertex label lists its padded cluster per scale and, for every
// cover tree containing the vertex, its parent and distance to the root.
// Two labels suffice to answer a distance query.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lowspace/graph.hpp"
#include "lowspace/parallel.hpp"
#include "lowspace/shortest_paths.hpp"
#include "lowspace/sparse_cover.hpp"

namespace lowspace {

struct ScaleSet {
  std::uint32_t k = 1;
  Dist delta = 1;
  std::uint32_t q = 0;
  std::vector<Radius> radii;  // radii[i] = n^{i/k}, i = 0..q

  friend bool operator==(const ScaleSet&, const ScaleSet&) = default;
};

/// Smallest q with n^q >= delta^k, i.e. ceil(k log_n delta); delta is
/// clamped to >= 1 and q = 0 when n <= 1.
ScaleSet make_scales(std::size_t n, Dist delta, std::uint32_t k);

struct TreeRecord {
  Vertex parent = 0;
  Dist dist = 0;
  friend bool operator==(const TreeRecord&, const TreeRecord&) = default;
};

struct VertexLabel {
  std::uint64_t scheme_id = 0;
  Vertex vertex = 0;
  std::vector<ClusterId> padded;  // global tree id of C_i(v), per scale
  std::unordered_map<ClusterId, TreeRecord> trees;

  std::size_t record_count() const noexcept { return padded.size() + trees.size(); }
  friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};

struct LabelingOptions {
  std::uint32_t k = 2;
  CoverMethod method = CoverMethod::deterministic;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 32;
  Execution exec = Execution::parallel;
};

struct LabelingScheme {
  std::size_t n = 0;
  ScaleSet scales;
  CoverMethod method = CoverMethod::deterministic;
  std::uint64_t seed = 0;
  std::uint64_t id = 0;
  std::vector<SparseCover> covers;    // one per scale
  std::vector<ClusterId> offsets;     // global tree id = offsets[i] + local id
  std::vector<VertexLabel> labels;

  const ShortestPathTree& tree(ClusterId global) const;
  std::uint32_t scale_of(ClusterId global) const;
  std::size_t num_trees() const;
};

LabelingScheme build_labeling(const Graph& g, const LabelingOptions& opt);

/// Recomputes offsets, id and labels from scales + covers.
void derive_labels(LabelingScheme& scheme);

/// Index j in [0,q] with C_j(u) in v's trees and j = 0 or C_{j-1}(u) not,
/// found by binary search; nullopt when C_q(u) does not contain v.
std::optional<std::uint32_t> common_scale(const VertexLabel& u, const VertexLabel& v);

/// Distance estimate from two labels. Throws std::invalid_argument when the
/// labels come from different schemes.
Dist query_distance(const VertexLabel& u, const VertexLabel& v);

/// Tree path inside C_j(u). Throws Unreachable across components.
Path query_path(const LabelingScheme& scheme, Vertex u, Vertex v);

/// Multiplicative envelopes: query_distance <= distance_factor * d and
/// path length <= path_factor * max(d, 1). For the deterministic cover these
/// are 16k n^{2/k} and 8k n^{2/k}.
double labeling_distance_factor(const LabelingScheme& scheme);
double labeling_path_factor(const LabelingScheme& scheme);

}  // namespace lowspace
