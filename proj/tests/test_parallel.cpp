#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <vector>

#include "fixtures.hpp"
#include "lowspace/bench.hpp"
#include "lowspace/serialize.hpp"

using namespace lowspace;

namespace {

std::vector<Graph> inputs() {
  std::vector<Graph> out = fixture::family(5, 160, 71);
  out.push_back(fixture::path(300));
  out.push_back(fixture::grid(12, 15, 4));
  return out;
}

}  // namespace

TEST_CASE("parallel_for visits every index once") {
  for (std::size_t count : {0u, 1u, 2u, 17u, 1000u}) {
    std::vector<std::atomic<int>> hits(count);
    parallel_for(Execution::parallel, count, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("covers: serial and parallel agree") {
  for (const Graph& g : inputs()) {
    for (std::uint32_t k : {1u, 2u, 3u}) {
      const Radius rho = Radius::from_real(3);
      const SparseCover a = build_cover_deterministic(g, rho, k, Execution::serial);
      const SparseCover b = build_cover_deterministic(g, rho, k, Execution::parallel);
      CHECK(serialize(a) == serialize(b));
      const CoverStats sa = verify_cover(g, a, Execution::serial);
      const CoverStats sb = verify_cover(g, a, Execution::parallel);
      CHECK(sa.max_diameter == sb.max_diameter);
      CHECK(sa.max_overlap == sb.max_overlap);
      CHECK(sa.unpadded_count == sb.unpadded_count);
      CHECK(sa.max_root_radius == sb.max_root_radius);
      CHECK(serialize(build_cover_reference(g, rho, k, Execution::serial)) ==
            serialize(build_cover_reference(g, rho, k, Execution::parallel)));
      CHECK(serialize(build_cover_randomized_retrying(g, rho, k, 9, 32, Execution::serial)) ==
            serialize(build_cover_randomized_retrying(g, rho, k, 9, 32, Execution::parallel)));
    }
  }
}

TEST_CASE("labeling and routing: serial and parallel agree") {
  for (const Graph& g : inputs()) {
    for (CoverMethod m : {CoverMethod::deterministic, CoverMethod::randomized}) {
      LabelingOptions o;
      o.k = 2;
      o.method = m;
      o.seed = 4;
      o.exec = Execution::serial;
      const std::string serial = serialize(build_labeling(g, o));
      const std::string serial_routing = serialize(build_routing(g, o));
      o.exec = Execution::parallel;
      CHECK(serialize(build_labeling(g, o)) == serial);
      CHECK(serialize(build_routing(g, o)) == serial_routing);
    }
  }
}

TEST_CASE("oracle: serial and parallel agree") {
  for (const Graph& g : inputs()) {
    if (!g.unit_weights()) continue;
    for (std::uint32_t s : {1u, 2u}) {
      OracleParams p;
      p.k = 2;
      p.t = 2;
      p.p = 3;
      p.s = s;
      p.seed = 8;
      p.exec = Execution::serial;
      const std::string serial = serialize(build_oracle(g, p));
      p.exec = Execution::parallel;
      CHECK(serialize(build_oracle(g, p)) == serial);
    }
  }
}

TEST_CASE("bench rows: serial and parallel agree") {
  const Graph g = fixture::cycle(250);
  for (BenchTarget target : {BenchTarget::labeling, BenchTarget::oracle, BenchTarget::routing}) {
    ExperimentConfig c;
    c.target = target;
    c.queries = 500;
    c.exec = Execution::serial;
    const std::string serial = rows_to_csv(run_bench(g, c).rows);
    c.exec = Execution::parallel;
    CHECK(rows_to_csv(run_bench(g, c).rows) == serial);
  }
}
