#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <vector>

#include "fixtures.hpp"
#include "lowspace/routing.hpp"
#include "oracles.hpp"

using namespace lowspace;

namespace {

RoutingScheme build(const Graph& g, std::uint32_t k, CoverMethod method = CoverMethod::deterministic,
                    std::uint64_t seed = 0) {
  LabelingOptions o;
  o.k = k;
  o.method = method;
  o.seed = seed;
  return build_routing(g, o);
}

void check_sizes(const RoutingScheme& s) {
  const std::uint32_t k = s.labeling.scales.k;
  const std::uint32_t q = s.labeling.scales.q;
  for (const RoutingTable& t : s.tables) CHECK(t.record_count() <= 2 * k * (q + 1) + (q + 1));
  for (const RoutingLabel& l : s.labels) CHECK(l.record_count() <= 2 * (q + 1));
}

void check_all_pairs(const Graph& g, const RoutingScheme& s) {
  const std::size_t n = g.num_vertices();
  const oracle::Matrix d = oracle::floyd(g);
  const double factor = routing_path_factor(s);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      const RouteResult r = route(s, u, s.labels[v]);
      CHECK(r.delivered);
      CHECK(r.hops + 1 == r.path.vertices.size());
      CHECK(validate_path(g, r.path.vertices, u, v) == r.path.length);
      CHECK(r.path.length >= d[u][v]);
      CHECK(static_cast<double>(r.path.length) <= factor * static_cast<double>(std::max<Dist>(d[u][v], 1)));
    }
  }
}

}  // namespace

TEST_CASE("single vertex routing") {
  const RoutingScheme s = build(fixture::single(), 2);
  CHECK(s.labels[0].record_count() == s.labeling.scales.q + 1);
  const RouteResult r = route(s, 0, s.labels[0]);
  CHECK(r.delivered);
  CHECK(r.hops == 0);
  CHECK(r.path.vertices == std::vector<Vertex>{0});
}

TEST_CASE("n = 16, k = 2 with diameter bound at most 256 has q = 4 and small tables") {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < 16; ++v) e.push_back({v, v + 1, 8});
  const Graph g = Graph::from_edges(16, e);
  REQUIRE(component_diameter_bound(g) <= 256);
  const RoutingScheme s = build(g, 2);
  CHECK(s.labeling.scales.q == 4);
  for (const RoutingTable& t : s.tables) CHECK(t.record_count() <= 2 * 2 * 5 + 5);
  for (const RoutingLabel& l : s.labels) CHECK(l.record_count() <= 5);
  check_all_pairs(g, s);
}

TEST_CASE("routing build is deterministic") {
  const Graph g = fixture::sparse(120, 200, 3, 4);
  const RoutingScheme a = build(g, 2);
  const RoutingScheme b = build(g, 2);
  CHECK(a.tables == b.tables);
  CHECK(a.labels == b.labels);
}

TEST_CASE("route_step decisions") {
  // Tree 1 - 0 - 2 rooted at 0; preorder 0:[0,2], 1:[1,1], 2:[2,2].
  const TreeRouteInfo root{7, 0, 2, 0, 0};
  const TreeRouteInfo leaf1{7, 1, 1, 0, 1};
  const LabelRecord to_root{7, 0, 2, 0};
  const LabelRecord to1{7, 1, 1, 1};
  const LabelRecord to2{7, 2, 2, 1};
  const std::vector<PortLabel> kids{{1, 1, 1}, {2, 2, 2}};

  CHECK(route_step(leaf1, to1, {}).delivered);
  const StepDecision up = route_step(leaf1, to2, {});
  CHECK(!up.delivered);
  CHECK(up.next == 0);
  CHECK(route_step(leaf1, to_root, {}).next == 0);
  CHECK(route_step(root, to1, kids).next == 1);
  CHECK(route_step(root, to2, kids).next == 2);
  CHECK(route_step(root, to_root, kids).delivered);

  const LabelRecord other{8, 1, 1, 1};
  CHECK_THROWS_AS(route_step(leaf1, other, {}), PathError);
  CHECK_THROWS_AS(route_step(root, to2, std::vector<PortLabel>{{1, 1, 1}}), InvariantViolation);
}

TEST_CASE("DFS intervals nest along the tree") {
  const RoutingScheme s = build(fixture::grid(6, 6), 2);
  for (ClusterId gid = 0; gid < s.labeling.num_trees(); ++gid) {
    const ShortestPathTree& t = s.labeling.tree(gid);
    std::vector<char> used(t.size(), 0);
    for (Vertex v : t.members()) {
      const TreeRouteInfo& r = s.tables[v].trees.at(gid);
      REQUIRE(r.in < t.size());
      CHECK(!used[r.in]);
      used[r.in] = 1;
      CHECK(r.in <= r.out);
      CHECK(r.out < t.size());
      CHECK(r.parent == t.parent(v));
      CHECK(r.dist == t.dist_to_root(v));
      if (v != t.root()) {
        const TreeRouteInfo& p = s.tables[r.parent].trees.at(gid);
        CHECK(p.in < r.in);
        CHECK(r.out <= p.out);
      } else {
        CHECK(r.in == 0);
        CHECK(r.out + 1 == t.size());
      }
    }
  }
}

TEST_CASE("route on P5 from 0 to 4") {
  const Graph g = fixture::path(5);
  const RoutingScheme s = build(g, 1);
  const RouteResult r = route(s, 0, s.labels[4]);
  CHECK(r.delivered);
  CHECK(validate_path(g, r.path.vertices, 0, 4) == r.path.length);
  CHECK(r.path.length <= 16 * 1 * 25 * 4);
  CHECK(routing_path_factor(s) == doctest::Approx(16.0 * 1 * 25));
}

TEST_CASE("star: leaf to leaf through the center") {
  const Graph g = fixture::star(7);
  const RoutingScheme s = build(g, 2);
  const RouteResult r = route(s, 3, s.labels[5]);
  CHECK(r.delivered);
  CHECK(r.hops == 2);
  CHECK(r.path.vertices == std::vector<Vertex>{3, 0, 5});
}

TEST_CASE("u = v is delivered in zero hops") {
  const RoutingScheme s = build(fixture::cycle(9), 2);
  for (Vertex v = 0; v < 9; ++v) {
    const RouteResult r = route(s, v, s.labels[v]);
    CHECK(r.delivered);
    CHECK(r.hops == 0);
  }
}

TEST_CASE("trace lines follow the step format") {
  const Graph g = fixture::path(12);
  const RoutingScheme s = build(g, 2);
  std::vector<std::string> trace;
  const RouteResult r = route(s, 0, s.labels[11], &trace);
  REQUIRE(trace.size() == r.hops);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::istringstream in(trace[i]);
    std::string word;
    Vertex at = 0;
    ClusterId tree = 0;
    Vertex next = 0;
    in >> word >> at >> tree >> next;
    CHECK(word == "step");
    CHECK(at == r.path.vertices[i]);
    CHECK(next == r.path.vertices[i + 1]);
    CHECK(tree == s.labels[11].scales[*route_scale(s.tables[0], s.labels[11])].tree);
  }
}

TEST_CASE("route scale is the smallest padded tree of the target holding the source") {
  const Graph g = fixture::grid(9, 9);
  const RoutingScheme s = build(g, 2);
  for (Vertex u = 0; u < 81; u += 5) {
    for (Vertex v = 0; v < 81; v += 4) {
      const auto i = route_scale(s.tables[u], s.labels[v]);
      REQUIRE(i.has_value());
      CHECK(s.labeling.tree(s.labels[v].scales[*i].tree).contains(u));
      for (std::uint32_t j = 0; j < *i; ++j) CHECK(!s.labeling.tree(s.labels[v].scales[j].tree).contains(u));
      // Padding: every scale whose radius reaches d(u,v) already works.
      const Dist d = exact_distance(g, u, v);
      for (std::uint32_t j = 0; j < s.labels[v].scales.size(); ++j) {
        if (s.labeling.scales.radii[j].limit >= d) CHECK(*i <= j);
      }
    }
  }
}

TEST_CASE("different components are unreachable") {
  const Graph g = Graph::from_edges(5, {{0, 1, 1}, {2, 3, 1}, {3, 4, 1}});
  const RoutingScheme s = build(g, 1);
  CHECK_THROWS_AS(route(s, 0, s.labels[4]), Unreachable);
  CHECK(route(s, 2, s.labels[4]).delivered);
}

TEST_CASE("property: delivery, stretch and sizes, deterministic covers") {
  for (const Graph& g : fixture::family(12, 150, 51)) {
    for (std::uint32_t k : {1u, 2u}) {
      const RoutingScheme s = build(g, k);
      check_sizes(s);
      check_all_pairs(g, s);
    }
  }
}

TEST_CASE("property: delivery, stretch and sizes, randomized covers") {
  for (const Graph& g : fixture::family(6, 120, 61)) {
    for (std::uint32_t k : {1u, 2u}) {
      const RoutingScheme s = build(g, k, CoverMethod::randomized, 3);
      check_sizes(s);
      check_all_pairs(g, s);
    }
  }
}
