#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "lowspace/bench.hpp"

using namespace lowspace;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("Q = 0 gives a header-only CSV and build stats") {
  ExperimentConfig c;
  c.queries = 0;
  const BenchResult r = run_bench(fixture::grid(5, 5), c);
  CHECK(rows_to_csv(r.rows) == "u,v,d_exact,d_reported,path_length,stretch,query_ns\n");
  CHECK(r.summary.rows == 0);
  CHECK(r.summary.space_words > 0);
  CHECK(r.summary.build_ms >= 0.0);
  CHECK(r.summary.bound_satisfied);
}

TEST_CASE("P5 labeling, k = 1, all pairs") {
  ExperimentConfig c;
  c.k = 1;
  c.all_pairs = true;
  const BenchResult r = run_bench(fixture::path(5), c);
  REQUIRE(r.rows.size() == 10);
  for (const ExperimentRow& row : r.rows) {
    CHECK(row.u < row.v);
    CHECK(row.d_exact == row.v - row.u);
    CHECK(row.path_length >= row.d_exact);
    CHECK(row.stretch <= 8.0 * 1 * 25);
    CHECK(row.ok);
  }
  CHECK(r.summary.bound_satisfied);
  CHECK(r.summary.multiplicative == doctest::Approx(8.0 * 25));
}

TEST_CASE("same config twice gives byte-identical CSV") {
  const Graph g = fixture::sparse(200, 350, 3);
  for (BenchTarget target : {BenchTarget::labeling, BenchTarget::oracle, BenchTarget::routing}) {
    ExperimentConfig c;
    c.target = target;
    c.k = 2;
    c.queries = 300;
    c.seed = 12;
    const std::string a = rows_to_csv(run_bench(g, c).rows);
    const std::string b = rows_to_csv(run_bench(g, c).rows);
    CHECK(a == b);
    c.exec = Execution::serial;
    CHECK(rows_to_csv(run_bench(g, c).rows) == a);
    CHECK(lines(a).size() == 301);
  }
}

TEST_CASE("every target satisfies its envelope on shipped configurations") {
  const Graph g = fixture::path(300);
  ExperimentConfig c;
  c.queries = 400;
  c.seed = 3;
  for (BenchTarget target : {BenchTarget::labeling, BenchTarget::oracle, BenchTarget::routing}) {
    for (bool randomized : {false, true}) {
      c.target = target;
      c.randomized = randomized;
      const BenchResult r = run_bench(g, c);
      CHECK(r.summary.violations == 0);
      CHECK(r.summary.bound_satisfied);
      for (const ExperimentRow& row : r.rows) {
        CHECK(row.d_exact <= row.path_length);
        if (row.d_exact > 0) CHECK(row.stretch == doctest::Approx(double(row.path_length) / row.d_exact));
      }
    }
  }
  c.target = BenchTarget::oracle;
  c.randomized = false;
  c.eps = 0.5;
  const BenchResult eps = run_bench(g, c);
  CHECK(eps.summary.bound_satisfied);
}

TEST_CASE("timing fills query and witness time") {
  ExperimentConfig c;
  c.target = BenchTarget::oracle;
  c.p = 1;
  c.t = 3;
  c.queries = 200;
  c.timing = true;
  const BenchResult r = run_bench(fixture::path(1200), c);
  std::uint64_t total = 0;
  for (const ExperimentRow& row : r.rows) total += row.query_ns;
  CHECK(total > 0);
  CHECK(r.summary.witness_ns > 0);
  CHECK(r.summary.path_ns > 0);
}

TEST_CASE("disconnected pairs are reported as infinite") {
  const Graph g = Graph::from_edges(6, {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}, {4, 5, 1}});
  for (BenchTarget target : {BenchTarget::labeling, BenchTarget::oracle, BenchTarget::routing}) {
    ExperimentConfig c;
    c.target = target;
    c.all_pairs = true;
    const BenchResult r = run_bench(g, c);
    CHECK(r.summary.bound_satisfied);
    const std::string csv = rows_to_csv(r.rows);
    CHECK(csv.find("0,3,inf,inf,inf,") != std::string::npos);
  }
}

TEST_CASE("configs are validated before building") {
  ExperimentConfig c;
  c.k = 0;
  CHECK_THROWS_AS(run_bench(fixture::path(4), c), std::invalid_argument);
  c.k = 2;
  c.target = BenchTarget::oracle;
  CHECK_THROWS_AS(run_bench(fixture::weighted_triangle(), c), std::invalid_argument);
  c.p = 0;
  CHECK_THROWS_AS(run_bench(fixture::path(4), c), std::invalid_argument);
  CHECK(parse_bench_target("routing") == BenchTarget::routing);
  CHECK_THROWS_AS(parse_bench_target("nope"), std::invalid_argument);
}

TEST_CASE("summary JSON fields") {
  ExperimentConfig c;
  c.queries = 20;
  const auto j = summary_to_json(run_bench(fixture::grid(4, 4), c).summary);
  for (const char* key : {"max_stretch", "median_stretch", "space_words", "build_ms", "bound_envelope",
                          "bound_satisfied", "rows", "violations"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["bound_envelope"].contains("multiplicative"));
  CHECK(j["bound_envelope"].contains("additive"));
}
