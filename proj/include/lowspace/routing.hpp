#pragma once

// Labeled compact routing over the labeling covers. Every cover tree gets a
// DFS interval numbering; a packet carries the target's per-scale interval in
// its padded tree and each hop is decided by interval containment.

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lowspace/graph.hpp"
#include "lowspace/labeling.hpp"

namespace lowspace {

struct TreeRouteInfo {
  ClusterId tree = 0;
  std::uint32_t in = 0;   // preorder index
  std::uint32_t out = 0;  // largest preorder index in the subtree
  Vertex parent = 0;
  Dist dist = 0;

  bool covers(std::uint32_t x) const noexcept { return in <= x && x <= out; }
  friend bool operator==(const TreeRouteInfo&, const TreeRouteInfo&) = default;
};

struct RoutingTable {
  Vertex vertex = 0;
  std::unordered_map<ClusterId, TreeRouteInfo> trees;

  std::size_t record_count() const noexcept { return trees.size(); }
  friend bool operator==(const RoutingTable&, const RoutingTable&) = default;
};

struct LabelRecord {
  ClusterId tree = 0;
  std::uint32_t in = 0;
  std::uint32_t out = 0;
  Dist dist = 0;
  friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

struct RoutingLabel {
  Vertex vertex = 0;
  std::vector<LabelRecord> scales;  // one per scale: the padded tree C_i(v)

  std::size_t record_count() const noexcept { return scales.size(); }
  friend bool operator==(const RoutingLabel&, const RoutingLabel&) = default;
};

/// Interval label a neighbor exposes on the port towards it.
struct PortLabel {
  Vertex neighbor = 0;
  std::uint32_t in = 0;
  std::uint32_t out = 0;
};

struct StepDecision {
  bool delivered = false;
  Vertex next = kNoVertex;
};

/// One forwarding decision. Reads only the current vertex's record for the
/// active tree, the target's record and the ports of tree children.
StepDecision route_step(const TreeRouteInfo& own, const LabelRecord& target,
                        std::span<const PortLabel> children);

struct RoutingScheme {
  Graph graph;
  LabelingScheme labeling;
  std::vector<RoutingTable> tables;
  std::vector<RoutingLabel> labels;

  /// Tree-children ports of u in the given tree.
  std::vector<PortLabel> ports(Vertex u, ClusterId tree) const;
};

RoutingScheme build_routing(const Graph& g, const LabelingOptions& opt);

/// Rebuilds tables and labels from graph + labeling.
void derive_routing(RoutingScheme& scheme);

struct RouteResult {
  bool delivered = false;
  Path path;
  std::size_t hops = 0;
};

/// Routes from u using only u-side tables and the target label. Appends one
/// "step u tree next" line per hop to trace when given.
RouteResult route(const RoutingScheme& scheme, Vertex u, const RoutingLabel& target,
                  std::vector<std::string>* trace = nullptr);

/// Scale chosen for (u, target): smallest i whose padded tree of the target
/// contains u.
std::optional<std::uint32_t> route_scale(const RoutingTable& table, const RoutingLabel& target);

/// Envelope on hop-path length: 2 * labeling path factor * max(d, 1), which is
/// 16k n^{2/k} for the deterministic cover.
double routing_path_factor(const RoutingScheme& scheme);

}  // namespace lowspace
