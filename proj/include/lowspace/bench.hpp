#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lowspace/graph.hpp"
#include "lowspace/parallel.hpp"

namespace lowspace {

enum class BenchTarget { labeling, oracle, routing };

BenchTarget parse_bench_target(std::string_view name);
std::string_view to_string(BenchTarget target);

struct ExperimentConfig {
  BenchTarget target = BenchTarget::labeling;
  std::uint32_t k = 2;
  std::uint32_t t = 2;
  std::uint32_t p = 1;
  std::uint32_t s = 1;
  double eps = 0.0;  // > 0 selects t = k, p = ceil(n^{1/k}), s = ceil(1/eps)
  bool randomized = false;
  std::uint64_t seed = 0;
  std::size_t queries = 100;
  bool all_pairs = false;  // every unordered pair u < v instead of sampling
  bool timing = false;     // fill query_ns (makes the CSV run-dependent)
  Execution exec = Execution::parallel;
};

/// Throws std::invalid_argument when the parameters do not suit the target.
void validate_config(const Graph& g, const ExperimentConfig& config);

struct ExperimentRow {
  Vertex u = 0;
  Vertex v = 0;
  Dist d_exact = 0;
  Dist d_reported = 0;
  Dist path_length = 0;
  double stretch = 0.0;
  std::uint64_t query_ns = 0;
  bool ok = true;
};

struct BenchSummary {
  std::size_t rows = 0;
  std::size_t violations = 0;
  double max_stretch = 0.0;
  double median_stretch = 0.0;
  std::size_t space_words = 0;
  double build_ms = 0.0;
  double multiplicative = 0.0;
  double additive = 0.0;
  bool bound_satisfied = true;
  std::uint64_t witness_ns = 0;  // oracle only, with timing
  std::uint64_t path_ns = 0;
};

struct BenchResult {
  std::vector<ExperimentRow> rows;
  BenchSummary summary;
};

BenchResult run_bench(const Graph& g, const ExperimentConfig& config);

std::string rows_to_csv(const std::vector<ExperimentRow>& rows);
nlohmann::json summary_to_json(const BenchSummary& summary);

}  // namespace lowspace
