#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "fixtures.hpp"
#include "lowspace/graph.hpp"
#include "lowspace/rng.hpp"
#include "lowspace/shortest_paths.hpp"
#include "oracles.hpp"

using namespace lowspace;

TEST_CASE("load_graph parses the edge-list format") {
  const Graph a = load_graph("2 1\n0 1 1\n");
  CHECK(a.num_vertices() == 2);
  CHECK(a.num_edges() == 1);
  CHECK(a.unit_weights());

  const Graph p3 = load_graph("3 2\n0 1 1\n1 2 1\n");
  CHECK(p3 == fixture::path(3));
}

TEST_CASE("load_graph collapses duplicate edges to the minimum weight") {
  const Graph g = load_graph("2 2\n0 1 5\n0 1 3\n");
  CHECK(g.num_edges() == 1);
  REQUIRE(g.edge_weight(0, 1).has_value());
  CHECK(*g.edge_weight(0, 1) == 3);
  CHECK(*g.edge_weight(1, 0) == 3);
  REQUIRE(g.neighbors(0).size() == 1);
  CHECK(g.neighbors(0)[0].weight == 3);
  CHECK(!g.unit_weights());
}

TEST_CASE("load_graph rejects malformed input") {
  CHECK_THROWS_AS(load_graph("2 1\n0 1\n"), GraphError);
  CHECK_THROWS_AS(load_graph("2 1\n0 1 0\n"), GraphError);
  CHECK_THROWS_AS(load_graph("2 1\n0 1 -2\n"), GraphError);
  CHECK_THROWS_AS(load_graph("2 1\n0 2 1\n"), GraphError);
  CHECK_THROWS_AS(load_graph("2 1\n0 0 1\n"), GraphError);
  CHECK_THROWS_AS(load_graph("2 1\n0 x 1\n"), GraphError);
  CHECK_THROWS_AS(load_graph(""), GraphError);
}

TEST_CASE("write_graph round-trips") {
  const Graph g = fixture::sparse(40, 80, 3, 9);
  CHECK(load_graph(write_graph(g)) == g);
}

TEST_CASE("generate_graph basic kinds") {
  const Graph p5 = fixture::path(5);
  CHECK(p5.num_vertices() == 5);
  CHECK(p5.num_edges() == 4);
  for (Vertex v = 0; v + 1 < 5; ++v) CHECK(p5.edge_weight(v, v + 1) == Weight{1});

  const Graph c3 = fixture::cycle(3);
  CHECK(c3.num_edges() == 3);
  CHECK(c3.edge_weight(0, 2) == Weight{1});

  const Graph grid = fixture::grid(3, 4);
  CHECK(grid.num_vertices() == 12);
  CHECK(grid.num_edges() == 3 * 3 + 2 * 4);
}

TEST_CASE("generate_graph random is deterministic and connected") {
  GenerateParams p;
  p.kind = GraphKind::random;
  p.n = 100;
  p.m = 300;
  const Graph a = generate_graph(p, 7);
  const Graph b = generate_graph(p, 7);
  CHECK(a == b);
  CHECK(a.num_edges() == 300);
  CHECK(a.connected());
  CHECK(!(generate_graph(p, 8) == a));

  p.m = 98;
  CHECK_THROWS_AS(generate_graph(p, 1), GraphError);
}

TEST_CASE("generated trees and sparse graphs are connected") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(fixture::tree(60, seed).num_edges() == 59);
    CHECK(fixture::tree(60, seed).connected());
    CHECK(fixture::sparse(60, 90, seed).connected());
  }
}

TEST_CASE("shortest_path_tree examples") {
  const Graph p5 = fixture::path(5);
  const ShortestPathTree t = shortest_path_tree(p5, 0);
  CHECK(t.size() == 5);
  for (Vertex i = 1; i < 5; ++i) {
    CHECK(t.parent(i) == i - 1);
    CHECK(t.dist_to_root(i) == i);
  }
  CHECK(t.parent(0) == 0);

  const std::vector<Vertex> restrict{1, 2, 3};
  const ShortestPathTree r = shortest_path_tree(p5, 2, std::span<const Vertex>(restrict));
  CHECK(r.size() == 3);
  CHECK(r.dist_to_root(1) == 1);
  CHECK(r.dist_to_root(3) == 1);
  CHECK(!r.contains(0));

  const Graph tri = fixture::weighted_triangle();
  const ShortestPathTree w = shortest_path_tree(tri, 0);
  CHECK(w.dist_to_root(1) == oracle::enumerate_paths(tri, 0, 1));
  CHECK(w.dist_to_root(1) == 2);
  CHECK(w.parent(1) == 2);
}

TEST_CASE("shortest_path_tree breaks ties by smallest parent id") {
  // 0 reaches 3 through 1 or 2 at equal cost.
  const Graph g = Graph::from_edges(4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  CHECK(shortest_path_tree(g, 0).parent(3) == 1);
  const Graph w = Graph::from_edges(4, {{0, 1, 2}, {0, 2, 1}, {1, 3, 1}, {2, 3, 2}});
  CHECK(shortest_path_tree(w, 0).parent(3) == 1);
}

TEST_CASE("ball examples") {
  const Graph p5 = fixture::path(5);
  CHECK(ball(p5, 2, Radius::from_real(1)) == std::vector<Vertex>{1, 2, 3});
  CHECK(ball(p5, 0, Radius::from_real(2)) == std::vector<Vertex>{0, 1, 2});
  CHECK(ball(fixture::single(), 0, Radius::from_real(5)) == std::vector<Vertex>{0});
  CHECK(ball(p5, 0, Radius::from_real(1.9)) == std::vector<Vertex>{0, 1});
}

TEST_CASE("exact_distance examples") {
  CHECK(exact_distance(fixture::path(5), 0, 4) == 4);
  const Graph two = Graph::from_edges(2, {});
  CHECK(exact_distance(two, 0, 1) == kInfinity);
  const Graph tri = fixture::weighted_triangle();
  CHECK(exact_distance(tri, 0, 1) == oracle::enumerate_paths(tri, 0, 1));
  CHECK(exact_distance(tri, 0, 1) == 2);
}

TEST_CASE("diameter_upper_bound examples") {
  CHECK(diameter_upper_bound(fixture::path(5)) == 8);
  CHECK(diameter_upper_bound(fixture::star(6)) == 2);
  const Graph c6 = fixture::cycle(6);
  Dist ecc = 0;
  for (Vertex v = 0; v < 6; ++v) ecc = std::max(ecc, exact_distance(c6, 0, v));
  CHECK(diameter_upper_bound(c6) == 2 * ecc);
  CHECK(diameter_upper_bound(c6) == 6);
  CHECK_THROWS_AS(diameter_upper_bound(Graph::from_edges(3, {{0, 1, 1}})), GraphError);
}

TEST_CASE("validate_path examples") {
  const Graph p5 = fixture::path(5);
  const std::vector<Vertex> ok{0, 1, 2};
  CHECK(validate_path(p5, ok, 0, 2) == 2);
  const std::vector<Vertex> skip{0, 2};
  CHECK_THROWS_AS(validate_path(p5, skip, 0, 2), PathError);
  const std::vector<Vertex> single{0};
  CHECK(validate_path(p5, single, 0, 0) == 0);
  CHECK_THROWS_AS(validate_path(p5, ok, 0, 3), PathError);
  CHECK_THROWS_AS(validate_path(p5, ok, 1, 2), PathError);
  CHECK_THROWS_AS(validate_path(p5, std::vector<Vertex>{}, 0, 0), PathError);
}

TEST_CASE("tree_path examples") {
  const ShortestPathTree t = shortest_path_tree(fixture::path(5), 0);
  const Path same = tree_path(t, 4, 4);
  CHECK(same.vertices == std::vector<Vertex>{4});
  CHECK(same.length == 0);
  const Path p = tree_path(t, 1, 3);
  CHECK(p.vertices == std::vector<Vertex>{1, 2, 3});
  CHECK(p.length == 2);

  const ShortestPathTree s = shortest_path_tree(fixture::star(4), 0);
  const Path leaf = tree_path(s, 2, 4);
  CHECK(leaf.vertices == std::vector<Vertex>{2, 0, 4});
  CHECK(leaf.length == 2);

  const std::vector<Vertex> part{0, 1};
  const ShortestPathTree small = shortest_path_tree(fixture::path(5), 0, std::span<const Vertex>(part));
  CHECK_THROWS_AS(tree_path(small, 0, 3), PathError);
}

TEST_CASE("Radius::power is an exact integer floor") {
  CHECK(Radius::power(16, 1, 2).limit == 4);
  CHECK(Radius::power(15, 1, 2).limit == 3);
  CHECK(Radius::power(10, 0, 3).limit == 1);
  CHECK(Radius::power(1000, 1, 3).limit == 10);
  CHECK(Radius::power(999, 1, 3).limit == 9);
  CHECK(Radius::power(7, 3, 1).limit == 343);
  for (std::uint64_t b = 1; b < 200; ++b) {
    for (std::uint64_t den = 1; den <= 4; ++den) {
      const Dist x = Radius::power(b, 1, den).limit;
      std::uint64_t lo = 1;
      for (std::uint64_t i = 0; i < den; ++i) lo *= x;
      std::uint64_t hi = 1;
      for (std::uint64_t i = 0; i < den; ++i) hi *= x + 1;
      CHECK(lo <= b);
      CHECK(hi > b);
    }
  }
  CHECK(Radius::from_real(2.5).limit == 2);
  CHECK_THROWS(Radius::from_real(-1));
}

TEST_CASE("property: SPT distances and balls match Floyd-Warshall") {
  for (const Graph& g : fixture::family(25, 120, 11)) {
    const oracle::Matrix d = oracle::floyd(g);
    const std::size_t n = g.num_vertices();
    for (Vertex root = 0; root < n; root += std::max<std::size_t>(1, n / 7)) {
      const ShortestPathTree t = shortest_path_tree(g, root);
      REQUIRE(t.size() == n);
      for (Vertex v = 0; v < n; ++v) {
        CHECK(t.dist_to_root(v) == d[root][v]);
        if (v != root) {
          const Vertex p = t.parent(v);
          REQUIRE(g.edge_weight(v, p).has_value());
          CHECK(t.dist_to_root(v) == t.dist_to_root(p) + *g.edge_weight(v, p));
        }
        CHECK(exact_distance(g, root, v) == d[root][v]);
      }
      for (double rho : {0.0, 1.0, 2.5, 4.0, 9.0}) {
        CHECK(ball(g, root, Radius::from_real(rho)) ==
              oracle::ball(d, root, static_cast<Dist>(rho)));
      }
    }
    Dist diam = 0;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v) diam = std::max(diam, d[u][v]);
    CHECK(diameter_upper_bound(g) >= diam);
  }
}

TEST_CASE("property: restricted SPT matches induced-subgraph distances") {
  for (const Graph& g : fixture::family(15, 60, 5)) {
    const std::size_t n = g.num_vertices();
    std::vector<Vertex> keep_list;
    std::vector<char> keep(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      if (v % 3 != 1) {
        keep_list.push_back(v);
        keep[v] = 1;
      }
    }
    const oracle::Matrix d = oracle::floyd(g, keep);
    const ShortestPathTree t = shortest_path_tree(g, 0, std::span<const Vertex>(keep_list));
    for (Vertex v : keep_list) {
      if (d[0][v] == kInfinity) {
        CHECK(!t.contains(v));
      } else {
        REQUIRE(t.contains(v));
        CHECK(t.dist_to_root(v) == d[0][v]);
      }
    }
  }
}

TEST_CASE("property: validate_path accepts exactly edge walks") {
  const Graph g = fixture::sparse(12, 18, 4, 3);
  Rng rng = make_stream(1, "walks");
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Vertex> walk(1 + rng() % 5);
    for (Vertex& x : walk) x = static_cast<Vertex>(rng() % 12);
    Dist expected = 0;
    const bool ok = oracle::walk_ok(g, walk, walk.front(), walk.back(), expected);
    if (ok) {
      CHECK(validate_path(g, walk, walk.front(), walk.back()) == expected);
    } else {
      CHECK_THROWS_AS(validate_path(g, walk, walk.front(), walk.back()), PathError);
    }
  }
}

TEST_CASE("property: tree_path is a valid walk within the root-distance budget") {
  for (const Graph& g : fixture::family(10, 80, 21)) {
    const ShortestPathTree t = shortest_path_tree(g, 0);
    const std::size_t n = g.num_vertices();
    for (Vertex u = 0; u < n; u += 3) {
      for (Vertex v = 0; v < n; v += 2) {
        const Path p = tree_path(t, u, v);
        CHECK(validate_path(g, p.vertices, u, v) == p.length);
        CHECK(p.length <= t.dist_to_root(u) + t.dist_to_root(v));
      }
    }
  }
}

TEST_CASE("components are numbered by smallest member") {
  const Graph g = Graph::from_edges(5, {{3, 4, 1}, {0, 2, 1}});
  CHECK(g.components() == std::vector<std::uint32_t>{0, 1, 0, 2, 2});
  CHECK(component_diameter_bound(g) == 2);
}
