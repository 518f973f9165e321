#include "lowspace/routing.hpp"

#include <algorithm>

namespace lowspace {

StepDecision route_step(const TreeRouteInfo& own, const LabelRecord& target,
                        std::span<const PortLabel> children) {
  if (own.tree != target.tree) throw PathError("current vertex record belongs to another tree");
  if (own.in == target.in) return {true, kNoVertex};
  if (!own.covers(target.in)) return {false, own.parent};
  for (const PortLabel& c : children) {
    if (c.in <= target.in && target.in <= c.out) return {false, c.neighbor};
  }
  throw InvariantViolation("no child interval contains the target");
}

std::vector<PortLabel> RoutingScheme::ports(Vertex u, ClusterId tree) const {
  std::vector<PortLabel> out;
  for (const Arc& a : graph.neighbors(u)) {
    const auto& t = tables[a.to].trees;
    auto it = t.find(tree);
    if (it != t.end() && it->second.parent == u) out.push_back({a.to, it->second.in, it->second.out});
  }
  return out;
}

void derive_routing(RoutingScheme& scheme) {
  const LabelingScheme& lab = scheme.labeling;
  const std::size_t n = lab.n;
  scheme.tables.assign(n, {});
  for (Vertex v = 0; v < n; ++v) scheme.tables[v].vertex = v;

  std::vector<std::vector<std::uint32_t>> children;
  std::vector<std::uint32_t> in;
  std::vector<std::uint32_t> out;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  for (std::size_t i = 0; i < lab.covers.size(); ++i) {
    for (const Cluster& cl : lab.covers[i].clusters) {
      const ShortestPathTree& t = cl.spt;
      const ClusterId gid = lab.offsets[i] + cl.id;
      const std::size_t size = t.size();
      children.assign(size, {});
      // Local indices follow vertex ids, so children come out ascending.
      for (std::uint32_t j = 0; j < size; ++j)
        if (j != t.root_local()) children[t.parent_local(j)].push_back(j);
      in.assign(size, 0);
      out.assign(size, 0);
      std::uint32_t clock = 0;
      stack.clear();
      stack.emplace_back(t.root_local(), 0);
      in[t.root_local()] = clock++;
      while (!stack.empty()) {
        auto& [x, next] = stack.back();
        if (next < children[x].size()) {
          const std::uint32_t c = children[x][next++];
          in[c] = clock++;
          stack.emplace_back(c, 0);
        } else {
          out[x] = clock - 1;
          stack.pop_back();
        }
      }
      for (std::uint32_t j = 0; j < size; ++j) {
        scheme.tables[t.vertex_at(j)].trees.emplace(
            gid, TreeRouteInfo{gid, in[j], out[j], t.parent_at(j), t.dist_at(j)});
      }
    }
  }

  scheme.labels.assign(n, {});
  for (Vertex v = 0; v < n; ++v) {
    RoutingLabel& l = scheme.labels[v];
    l.vertex = v;
    for (ClusterId gid : lab.labels[v].padded) {
      const TreeRouteInfo& r = scheme.tables[v].trees.at(gid);
      l.scales.push_back({gid, r.in, r.out, r.dist});
    }
  }
}

RoutingScheme build_routing(const Graph& g, const LabelingOptions& opt) {
  RoutingScheme scheme;
  scheme.graph = g;
  scheme.labeling = build_labeling(g, opt);
  derive_routing(scheme);
  return scheme;
}

std::optional<std::uint32_t> route_scale(const RoutingTable& table, const RoutingLabel& target) {
  for (std::uint32_t i = 0; i < target.scales.size(); ++i) {
    if (table.trees.contains(target.scales[i].tree)) return i;
  }
  return std::nullopt;
}

RouteResult route(const RoutingScheme& scheme, Vertex u, const RoutingLabel& target,
                  std::vector<std::string>* trace) {
  const std::size_t n = scheme.tables.size();
  if (u >= n || target.vertex >= n) throw GraphError("vertex out of range");
  auto scale = route_scale(scheme.tables[u], target);
  if (!scale) throw Unreachable("source and target share no tree");
  const LabelRecord& rec = target.scales[*scale];

  RouteResult res;
  res.path.vertices.push_back(u);
  Vertex cur = u;
  while (true) {
    auto it = scheme.tables[cur].trees.find(rec.tree);
    if (it == scheme.tables[cur].trees.end()) throw InvariantViolation("route left the active tree");
    const auto ports = scheme.ports(cur, rec.tree);
    const StepDecision d = route_step(it->second, rec, ports);
    if (d.delivered) {
      res.delivered = cur == target.vertex;
      return res;
    }
    if (trace) {
      trace->push_back("step " + std::to_string(cur) + " " + std::to_string(rec.tree) + " " +
                       std::to_string(d.next));
    }
    auto w = scheme.graph.edge_weight(cur, d.next);
    if (!w) throw InvariantViolation("tree hop is not a graph edge");
    res.path.vertices.push_back(d.next);
    res.path.length += *w;
    ++res.hops;
    if (res.hops > 2 * n) throw InvariantViolation("route exceeded 2n hops");
    cur = d.next;
  }
}

double routing_path_factor(const RoutingScheme& scheme) {
  return 2.0 * labeling_path_factor(scheme.labeling);
}

}  // namespace lowspace
