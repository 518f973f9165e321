#include "lowspace/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

#include "lowspace/labeling.hpp"
#include "lowspace/pruned_oracle.hpp"
#include "lowspace/rng.hpp"
#include "lowspace/routing.hpp"

namespace lowspace {

BenchTarget parse_bench_target(std::string_view name) {
  if (name == "labeling") return BenchTarget::labeling;
  if (name == "oracle") return BenchTarget::oracle;
  if (name == "routing") return BenchTarget::routing;
  throw std::invalid_argument("unknown bench target '" + std::string(name) + "'");
}

std::string_view to_string(BenchTarget target) {
  switch (target) {
    case BenchTarget::labeling: return "labeling";
    case BenchTarget::oracle: return "oracle";
    case BenchTarget::routing: return "routing";
  }
  return "?";
}

void validate_config(const Graph& g, const ExperimentConfig& c) {
  if (c.k < 1) throw std::invalid_argument("k must be >= 1");
  if (c.target == BenchTarget::oracle) {
    if (!g.unit_weights()) throw std::invalid_argument("the oracle needs an unweighted graph");
    if (c.eps < 0.0) throw std::invalid_argument("eps must be positive");
    if (c.eps == 0.0 && (c.t < 1 || c.p < 1 || c.s < 1)) {
      throw std::invalid_argument("t, p and s must be >= 1");
    }
    if (c.t > 255) throw std::invalid_argument("t must be <= 255");
  }
}

namespace {

using clock = std::chrono::steady_clock;

std::vector<std::pair<Vertex, Vertex>> choose_pairs(std::size_t n, const ExperimentConfig& c) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  if (n == 0) return pairs;
  if (c.all_pairs) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    return pairs;
  }
  Rng rng = make_stream(c.seed, "bench-pairs");
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  for (std::size_t i = 0; i < c.queries; ++i) {
    const Vertex u = pick(rng);
    const Vertex v = pick(rng);
    pairs.emplace_back(u, v);
  }
  return pairs;
}

// Outcome of one query before checking: the reported path and estimate.
struct Answer {
  std::optional<Path> path;  // nullopt: structure reported "unreachable"
  Dist estimate = kInfinity;
  QueryProfile profile;
};

}  // namespace

BenchResult run_bench(const Graph& g, const ExperimentConfig& c) {
  validate_config(g, c);
  const std::size_t n = g.num_vertices();
  BenchResult res;
  BenchSummary& sum = res.summary;

  LabelingScheme labeling;
  PrunedOracle oracle;
  RoutingScheme routing;
  LabelingOptions lopt;
  lopt.k = c.k;
  lopt.method = c.randomized ? CoverMethod::randomized : CoverMethod::deterministic;
  lopt.seed = make_stream(c.seed, "build")();
  lopt.exec = c.exec;

  const auto build_start = clock::now();
  switch (c.target) {
    case BenchTarget::labeling: {
      labeling = build_labeling(g, lopt);
      sum.multiplicative = labeling_path_factor(labeling);
      for (const VertexLabel& l : labeling.labels) sum.space_words += l.padded.size() + 3 * l.trees.size();
      break;
    }
    case BenchTarget::oracle: {
      OracleParams op;
      if (c.eps > 0.0) {
        op = params_from_epsilon(n, c.k, c.eps, lopt.seed);
      } else {
        op.k = c.k;
        op.t = c.t;
        op.p = c.p;
        op.s = c.s;
        op.seed = lopt.seed;
      }
      op.cover_method = lopt.method;
      op.exec = c.exec;
      oracle = build_oracle(g, op);
      const StretchEnvelope e = oracle_envelope(oracle);
      sum.multiplicative = e.multiplicative;
      sum.additive = e.additive;
      sum.space_words = space_report(oracle).total_words;
      break;
    }
    case BenchTarget::routing: {
      routing = build_routing(g, lopt);
      sum.multiplicative = routing_path_factor(routing);
      for (const RoutingTable& t : routing.tables) sum.space_words += 5 * t.record_count();
      for (const RoutingLabel& l : routing.labels) sum.space_words += 4 * l.record_count();
      break;
    }
  }
  sum.build_ms = std::chrono::duration<double, std::milli>(clock::now() - build_start).count();

  const auto pairs = choose_pairs(n, c);
  std::vector<Vertex> sources;
  for (const auto& pr : pairs) sources.push_back(pr.first);
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::vector<std::vector<Dist>> exact(sources.size());
  parallel_for(c.exec, sources.size(), [&](std::size_t i) { exact[i] = distances_from(g, sources[i]); });
  auto exact_of = [&](Vertex u, Vertex v) {
    const auto i = std::lower_bound(sources.begin(), sources.end(), u) - sources.begin();
    return exact[static_cast<std::size_t>(i)][v];
  };

  auto answer = [&](Vertex u, Vertex v) {
    Answer a;
    try {
      switch (c.target) {
        case BenchTarget::labeling:
          a.estimate = query_distance(labeling.labels[u], labeling.labels[v]);
          if (a.estimate != kInfinity) a.path = query_path(labeling, u, v);
          break;
        case BenchTarget::oracle:
          a.path = query_path(oracle, u, v, c.timing ? &a.profile : nullptr);
          a.estimate = a.path->length;
          break;
        case BenchTarget::routing: {
          RouteResult r = route(routing, u, routing.labels[v]);
          if (r.delivered) {
            a.estimate = r.path.length;
            a.path = std::move(r.path);
          }
          break;
        }
      }
    } catch (const Unreachable&) {
      a.path.reset();
      a.estimate = kInfinity;
    }
    return a;
  };

  res.rows.resize(pairs.size());
  std::vector<QueryProfile> profiles(pairs.size());
  parallel_for(c.exec, pairs.size(), [&](std::size_t i) {
    const auto [u, v] = pairs[i];
    ExperimentRow& row = res.rows[i];
    row.u = u;
    row.v = v;
    row.d_exact = exact_of(u, v);
    const auto start = c.timing ? clock::now() : clock::time_point{};
    Answer a = answer(u, v);
    if (c.timing) {
      row.query_ns = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - start).count());
    }
    profiles[i] = a.profile;
    row.d_reported = a.estimate;
    if (row.d_exact == kInfinity) {
      row.path_length = kInfinity;
      row.ok = !a.path.has_value();
      return;
    }
    if (!a.path) {
      row.ok = false;
      row.path_length = kInfinity;
      return;
    }
    try {
      row.path_length = validate_path(g, a.path->vertices, u, v);
    } catch (const PathError&) {
      row.ok = false;
      row.path_length = a.path->length;
      return;
    }
    const double d = static_cast<double>(row.d_exact);
    row.stretch = static_cast<double>(row.path_length) / std::max(d, 1.0);
    const double limit = c.target == BenchTarget::oracle ? sum.multiplicative * d + sum.additive
                                                         : sum.multiplicative * std::max(d, 1.0);
    row.ok = row.path_length == a.path->length && row.path_length >= row.d_exact &&
             static_cast<double>(row.path_length) <= limit;
    if (c.target == BenchTarget::labeling) {
      row.ok = row.ok && row.d_reported >= row.d_exact &&
               static_cast<double>(row.d_reported) <= 2.0 * sum.multiplicative * d;
    }
  });

  std::vector<double> stretches;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const ExperimentRow& r = res.rows[i];
    if (!r.ok) ++sum.violations;
    if (r.d_exact != kInfinity && r.path_length != kInfinity) stretches.push_back(r.stretch);
    sum.witness_ns += profiles[i].witness_ns;
    sum.path_ns += profiles[i].path_ns;
  }
  sum.rows = res.rows.size();
  if (!stretches.empty()) {
    sum.max_stretch = *std::max_element(stretches.begin(), stretches.end());
    auto mid = stretches.begin() + static_cast<std::ptrdiff_t>(stretches.size() / 2);
    std::nth_element(stretches.begin(), mid, stretches.end());
    sum.median_stretch = *mid;
  }
  sum.bound_satisfied = sum.violations == 0;
  return res;
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "u,v,d_exact,d_reported,path_length,stretch,query_ns\n";
  auto dist = [](Dist d) { return d == kInfinity ? std::string("inf") : std::to_string(d); };
  char buf[32];
  for (const ExperimentRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f", r.stretch);
    out << r.u << ',' << r.v << ',' << dist(r.d_exact) << ',' << dist(r.d_reported) << ','
        << dist(r.path_length) << ',' << buf << ',' << r.query_ns << '\n';
  }
  return out.str();
}

nlohmann::json summary_to_json(const BenchSummary& s) {
  return nlohmann::json{{"rows", s.rows},
                        {"violations", s.violations},
                        {"max_stretch", s.max_stretch},
                        {"median_stretch", s.median_stretch},
                        {"space_words", s.space_words},
                        {"build_ms", s.build_ms},
                        {"bound_envelope", {{"multiplicative", s.multiplicative}, {"additive", s.additive}}},
                        {"bound_satisfied", s.bound_satisfied},
                        {"witness_ns", s.witness_ns},
                        {"path_ns", s.path_ns}};
}

}  // namespace lowspace
