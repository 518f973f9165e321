#pragma once

// Strong-diameter sparse covers with small overlap.
//
// A (beta, s, rho)-sparse cover is a family of clusters such that
//   - every cluster induces a connected subgraph of diameter <= beta * rho,
//   - every radius-rho ball lies inside some cluster (the vertex is "padded"),
//   - every vertex lies in at most s clusters.
//
// Two constructions are provided: region growing over radius-rho balls
// (beta = 8k n^{1/k}, s = 2k) and 2k independent padded partitions drawn by
// exponential ball carving (beta = 64k n^{1/k}, overlap exactly 2k).

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "lowspace/graph.hpp"
#include "lowspace/parallel.hpp"
#include "lowspace/rng.hpp"
#include "lowspace/shortest_paths.hpp"

namespace lowspace {

enum class CoverMethod { deterministic, randomized };

std::string_view to_string(CoverMethod m);
CoverMethod parse_cover_method(std::string_view name);

/// Radius blow-up guaranteed by each construction.
double cover_beta(CoverMethod method, std::size_t n, std::uint32_t k);

struct Cluster {
  ClusterId id = 0;
  ShortestPathTree spt;  // rooted at the first ball center / carving center

  std::span<const Vertex> vertices() const { return spt.members(); }
  Vertex root() const { return spt.root(); }
  bool contains(Vertex v) const { return spt.contains(v); }

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct CoverBuildStats {
  std::size_t phases = 0;                 // outer loop rounds (region growing)
  std::size_t max_growth_iterations = 0;  // longest inner growth loop
  std::size_t attempts = 1;               // seeds consumed (randomized)
};

struct SparseCover {
  Radius rho;
  std::uint32_t k = 1;
  double beta = 0.0;
  std::uint32_t s = 0;
  CoverMethod method = CoverMethod::deterministic;
  std::vector<Cluster> clusters;
  std::vector<std::vector<ClusterId>> membership;  // vertex -> clusters, ascending
  std::vector<ClusterId> padded;                   // vertex -> cluster holding its ball
  CoverBuildStats stats;

  std::size_t num_vertices() const noexcept { return padded.size(); }
  const Cluster& padded_cluster(Vertex v) const { return clusters[padded[v]]; }
};

/// Region-growing construction. Ball order is by smallest center id; a
/// cluster keeps absorbing the remaining balls that touch it while that
/// multiplies the ball count by at least (1 + ln n / (k n^{1/k})).
SparseCover build_cover_deterministic(const Graph& g, const Radius& rho, std::uint32_t k,
                                      Execution exec = Execution::parallel);

/// Same construction evaluated literally: every ball is materialized as a
/// sorted vertex list and the intersecting set is found by marking the
/// current union and scanning the remaining balls. Quadratic; kept as the
/// reference the incremental builder is tested against.
SparseCover build_cover_reference(const Graph& g, const Radius& rho, std::uint32_t k,
                                  Execution exec = Execution::parallel);

struct Partition {
  double delta = 0.0;
  std::vector<std::vector<Vertex>> cells;  // each sorted
  std::vector<Vertex> centers;             // carving center of each cell
  std::vector<std::uint32_t> cell_of;
};

/// Exponential ball carving: the smallest uncovered vertex becomes a center,
/// r ~ truncated exponential on [0, delta/2] with rate 4 ln n / delta, and
/// the ball of radius r in the not-yet-carved graph becomes a cell.
Partition padded_partition(const Graph& g, double delta, std::uint64_t seed);
Partition padded_partition(const Graph& g, double delta, Rng& rng);

struct PaddingFailure : std::runtime_error {
  explicit PaddingFailure(std::vector<Vertex> vertices);
  std::vector<Vertex> unpadded;
};

/// Union of 2k padded partitions with delta = 64 k n^{1/k} rho. Throws
/// PaddingFailure when some ball is cut by every partition.
SparseCover build_cover_randomized(const Graph& g, const Radius& rho, std::uint32_t k,
                                   std::uint64_t seed, Execution exec = Execution::parallel);

/// Retries build_cover_randomized with seed, seed+1, ... up to max_attempts.
SparseCover build_cover_randomized_retrying(const Graph& g, const Radius& rho, std::uint32_t k,
                                            std::uint64_t seed, std::size_t max_attempts = 32,
                                            Execution exec = Execution::parallel);

struct CoverStats {
  Dist max_diameter = 0;     // exact strong diameter, max over clusters
  std::size_t max_overlap = 0;
  std::size_t unpadded_count = 0;
  Dist max_root_radius = 0;  // deepest SPT

  bool within_bounds(const SparseCover& c) const {
    return unpadded_count == 0 && max_overlap <= c.s &&
           static_cast<double>(max_diameter) <= c.beta * c.rho.value;
  }
};

/// Recomputes the three cover properties from scratch. A vertex counts as
/// padded only if its recorded padded cluster contains its whole ball.
CoverStats verify_cover(const Graph& g, const SparseCover& cover,
                        Execution exec = Execution::parallel);

/// Rebuilds membership lists and checks ids. Used after deserialization.
void index_cover(SparseCover& cover, std::size_t n);

}  // namespace lowspace
