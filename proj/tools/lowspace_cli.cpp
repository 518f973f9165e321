// lowspace: build, query, benchmark and verify the low-space structures.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lowspace/bench.hpp"
#include "lowspace/graph.hpp"
#include "lowspace/labeling.hpp"
#include "lowspace/pruned_oracle.hpp"
#include "lowspace/routing.hpp"
#include "lowspace/serialize.hpp"
#include "lowspace/sparse_cover.hpp"

using namespace lowspace;
using nlohmann::json;

namespace {

struct Options {
  std::string input;
  std::string kind = "path";
  std::size_t n = 10;
  std::size_t m = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t max_weight = 1;
  std::uint32_t k = 2;
  std::uint32_t t = 2;
  std::uint32_t p = 1;
  std::uint32_t s = 1;
  double eps = 0.0;
  double rho = 1.0;
  std::uint64_t seed = 0;
  std::size_t queries = 100;
  std::string out;
  std::string format = "json";
  std::string target = "labeling";
  std::string structure;
  bool randomized = false;
  bool all_pairs = false;
  bool timing = false;
  std::int64_t source = -1;
  std::int64_t dest = -1;
};

void add_graph_options(CLI::App* app, Options& o) {
  app->add_option("--input", o.input, "edge-list file ('n m' header, then 'u v w' lines)");
  app->add_option("--kind", o.kind, "generator kind: path|cycle|grid|random|tree|sparse");
  app->add_option("--n", o.n, "vertex count for the generator");
  app->add_option("--m", o.m, "edge count for random/sparse graphs");
  app->add_option("--rows", o.rows, "grid rows");
  app->add_option("--cols", o.cols, "grid columns");
  app->add_option("--max-weight", o.max_weight, "draw edge weights uniformly from [1, max]");
  app->add_option("--seed", o.seed, "root seed for every random choice");
}

Graph load_input(const Options& o) {
  if (!o.input.empty()) return load_graph_file(o.input);
  GenerateParams gp;
  gp.kind = parse_graph_kind(o.kind);
  gp.n = o.n;
  gp.m = o.m;
  gp.rows = o.rows;
  gp.cols = o.cols;
  gp.max_weight = o.max_weight;
  return generate_graph(gp, o.seed);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

LabelingOptions labeling_options(const Options& o) {
  LabelingOptions l;
  l.k = o.k;
  l.method = o.randomized ? CoverMethod::randomized : CoverMethod::deterministic;
  l.seed = o.seed;
  return l;
}

OracleParams oracle_params(const Graph& g, const Options& o) {
  OracleParams p;
  if (o.eps > 0.0) {
    p = params_from_epsilon(g.num_vertices(), o.k, o.eps, o.seed);
  } else {
    p.k = o.k;
    p.t = o.t;
    p.p = o.p;
    p.s = o.s;
    p.seed = o.seed;
  }
  p.cover_method = o.randomized ? CoverMethod::randomized : CoverMethod::deterministic;
  return p;
}

json cover_stats_json(const SparseCover& c, const CoverStats& st) {
  return json{{"clusters", c.clusters.size()},
              {"max_diameter", st.max_diameter},
              {"max_overlap", st.max_overlap},
              {"unpadded_count", st.unpadded_count},
              {"max_root_radius", st.max_root_radius},
              {"beta", c.beta},
              {"s", c.s},
              {"phases", c.stats.phases},
              {"within_bounds", st.within_bounds(c)}};
}

json space_json(const SpaceReport& r) {
  return json{{"cover_words", r.cover_words},
              {"bunch_words", r.bunch_words},
              {"pivot_words", r.pivot_words},
              {"rep_words", r.rep_words},
              {"pruned_hitting_words", r.pruned_hitting_words},
              {"pruned_separator_words", r.pruned_separator_words},
              {"pruned_root_words", r.pruned_root_words},
              {"total_words", r.total_words},
              {"formula", r.formula}};
}

json route_json(const RouteResult& r) {
  return json{{"delivered", r.delivered}, {"hops", r.hops}, {"length", r.path.length}};
}

int cmd_gen(const Options& o) {
  emit(o.out, write_graph(load_input(o)));
  return 0;
}

int cmd_cover(const Options& o) {
  const Graph g = load_input(o);
  const Radius rho = Radius::from_real(o.rho);
  SparseCover c = o.randomized ? build_cover_randomized_retrying(g, rho, o.k, o.seed)
                               : build_cover_deterministic(g, rho, o.k);
  const CoverStats st = verify_cover(g, c);
  if (!o.out.empty()) emit(o.out, serialize(c));
  std::cout << cover_stats_json(c, st).dump(2) << '\n';
  return st.within_bounds(c) ? 0 : 1;
}

int cmd_label(const Options& o) {
  const Graph g = load_input(o);
  const LabelingScheme s = build_labeling(g, labeling_options(o));
  std::size_t max_records = 0;
  for (const VertexLabel& l : s.labels) max_records = std::max(max_records, l.record_count());
  if (!o.out.empty()) emit(o.out, serialize(s));
  const std::size_t budget = (2 * static_cast<std::size_t>(s.scales.k) + 1) * (s.scales.q + 1);
  std::cout << json{{"q", s.scales.q},
                    {"delta", s.scales.delta},
                    {"trees", s.num_trees()},
                    {"max_label_records", max_records},
                    {"label_budget", budget}}
                   .dump(2)
            << '\n';
  return max_records <= budget ? 0 : 1;
}

int cmd_oracle(const Options& o) {
  const Graph g = load_input(o);
  const PrunedOracle oracle = build_oracle(g, oracle_params(g, o));
  if (!o.out.empty()) emit(o.out, serialize(oracle));
  json rep = space_json(space_report(oracle));
  rep["hitting_set_size"] = oracle.hits.members.size();
  rep["params"] = {{"k", oracle.params.k}, {"p", oracle.params.p}, {"t", oracle.params.t}, {"s", oracle.params.s}};
  std::cout << rep.dump(2) << '\n';
  return 0;
}

int cmd_route(const Options& o) {
  const Graph g = load_input(o);
  const RoutingScheme s = build_routing(g, labeling_options(o));
  if (!o.out.empty()) emit(o.out, serialize(s));
  const std::size_t n = g.num_vertices();
  if (n == 0) return 0;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  if (o.source >= 0 && o.dest >= 0) {
    pairs.emplace_back(static_cast<Vertex>(o.source), static_cast<Vertex>(o.dest));
  } else {
    Rng rng = make_stream(o.seed, "route-pairs");
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    for (std::size_t i = 0; i < o.queries; ++i) {
      const Vertex u = pick(rng);
      pairs.emplace_back(u, pick(rng));
    }
  }
  bool ok = true;
  for (const auto& [u, v] : pairs) {
    std::vector<std::string> trace;
    const RouteResult r = route(s, u, s.labels.at(v), &trace);
    for (const std::string& line : trace) std::cout << line << '\n';
    std::cout << route_json(r).dump() << '\n';
    ok = ok && r.delivered;
  }
  return ok ? 0 : 1;
}

int cmd_bench(const Options& o) {
  const Graph g = load_input(o);
  ExperimentConfig c;
  c.target = parse_bench_target(o.target);
  c.k = o.k;
  c.t = o.t;
  c.p = o.p;
  c.s = o.s;
  c.eps = o.eps;
  c.randomized = o.randomized;
  c.seed = o.seed;
  c.queries = o.queries;
  c.all_pairs = o.all_pairs;
  c.timing = o.timing;
  const BenchResult r = run_bench(g, c);
  const std::string csv = rows_to_csv(r.rows);
  const std::string summary = summary_to_json(r.summary).dump(2) + "\n";
  if (o.format == "csv") {
    emit(o.out, csv);
    if (!o.out.empty()) std::cout << summary;
  } else {
    if (!o.out.empty()) emit(o.out, csv);
    std::cout << summary;
  }
  return r.summary.bound_satisfied ? 0 : 1;
}

int cmd_verify(const Options& o) {
  if (o.structure.empty()) throw std::runtime_error("verify needs --structure");
  const Graph g = load_input(o);
  const std::string text = read_file(o.structure);
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw SerializationError("corrupted document");
  const std::string format = doc.value("format", std::string());
  const std::size_t n = g.num_vertices();
  json report;
  bool ok = true;
  auto sample = [&](auto&& check) {
    std::size_t bad = 0;
    Rng rng = make_stream(o.seed, "verify-pairs");
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    for (std::size_t i = 0; n > 0 && i < o.queries; ++i) {
      const Vertex u = pick(rng);
      const Vertex v = pick(rng);
      if (!check(u, v, exact_distance(g, u, v))) ++bad;
    }
    return bad;
  };

  if (format == "lowspace.cover") {
    const SparseCover c = cover_from_json(doc);
    if (c.padded.size() != n) throw SerializationError("cover does not match the graph");
    const CoverStats st = verify_cover(g, c);
    report = cover_stats_json(c, st);
    ok = st.within_bounds(c);
  } else if (format == "lowspace.labeling") {
    const LabelingScheme s = labeling_from_json(doc);
    if (s.n != n) throw SerializationError("labeling does not match the graph");
    const double pf = labeling_path_factor(s);
    const std::size_t bad = sample([&](Vertex u, Vertex v, Dist d) {
      if (d == kInfinity) return query_distance(s.labels[u], s.labels[v]) == kInfinity;
      const Dist est = query_distance(s.labels[u], s.labels[v]);
      const Path p = query_path(s, u, v);
      const Dist len = validate_path(g, p.vertices, u, v);
      return est >= d && est <= 2 * pf * d && len >= d && len <= pf * std::max<Dist>(d, 1);
    });
    report = {{"violations", bad}};
    ok = bad == 0;
  } else if (format == "lowspace.oracle") {
    const PrunedOracle oracle = oracle_from_json(doc);
    if (oracle.n != n) throw SerializationError("oracle does not match the graph");
    const StretchEnvelope e = oracle_envelope(oracle);
    const std::size_t bad = sample([&](Vertex u, Vertex v, Dist d) {
      if (d == kInfinity) return true;
      const Path p = query_path(oracle, u, v);
      const Dist len = validate_path(g, p.vertices, u, v);
      return len >= d && static_cast<double>(len) <= e.multiplicative * d + e.additive;
    });
    report = {{"violations", bad}};
    ok = bad == 0;
  } else if (format == "lowspace.routing") {
    const RoutingScheme s = routing_from_json(doc);
    if (!(s.graph == g)) throw SerializationError("routing scheme was built for another graph");
    const double pf = routing_path_factor(s);
    const std::size_t bad = sample([&](Vertex u, Vertex v, Dist d) {
      if (d == kInfinity) return true;
      const RouteResult r = route(s, u, s.labels[v]);
      const Dist len = validate_path(g, r.path.vertices, u, v);
      return r.delivered && len >= d && len <= pf * std::max<Dist>(d, 1);
    });
    report = {{"violations", bad}};
    ok = bad == 0;
  } else {
    throw SerializationError("unknown document format '" + format + "'");
  }
  report["format"] = format;
  report["ok"] = ok;
  std::cout << report.dump(2) << '\n';
  return ok ? 0 : 1;
}

int cmd_export(const Options& o) {
  if (o.structure.empty()) throw std::runtime_error("export needs --structure");
  const json doc = json::parse(read_file(o.structure), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw SerializationError("corrupted document");
  const std::string format = doc.value("format", std::string());
  std::ostringstream out;
  if (format == "lowspace.labeling") {
    const LabelingScheme s = labeling_from_json(doc);
    for (const VertexLabel& l : s.labels) out << label_to_json(l).dump() << '\n';
  } else if (format == "lowspace.routing") {
    const RoutingScheme s = routing_from_json(doc);
    for (const RoutingLabel& l : s.labels) {
      json scales = json::array();
      for (const LabelRecord& r : l.scales) {
        scales.push_back({{"tree", r.tree}, {"in", r.in}, {"out", r.out}, {"dist", r.dist}});
      }
      out << json{{"v", l.vertex}, {"scales", std::move(scales)}}.dump() << '\n';
    }
  } else {
    throw SerializationError("export supports labeling and routing documents");
  }
  emit(o.out, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-space distance oracles, labels, sparse covers and routing"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "generate a graph and print its edge list");
  auto* cover = app.add_subcommand("cover", "build and verify a sparse cover");
  auto* label = app.add_subcommand("label", "build a distance labeling scheme");
  auto* oracle = app.add_subcommand("oracle", "build the pruned oracle and report its space");
  auto* rt = app.add_subcommand("route", "build routing tables and route messages");
  auto* bench = app.add_subcommand("bench", "stretch / space / time experiment");
  auto* verify = app.add_subcommand("verify", "check a serialized structure against a graph");
  auto* exp = app.add_subcommand("export", "print per-vertex labels of a serialized scheme");

  for (CLI::App* sub : {gen, cover, label, oracle, rt, bench, verify, exp}) {
    add_graph_options(sub, o);
    sub->add_option("--out", o.out, "output path (default stdout)");
  }
  for (CLI::App* sub : {cover, label, oracle, rt, bench, verify}) {
    sub->add_option("--k", o.k, "cover parameter k >= 1")->check(CLI::PositiveNumber);
    sub->add_flag("--randomized", o.randomized, "use padded-partition covers");
  }
  cover->add_option("--rho", o.rho, "ball radius")->check(CLI::PositiveNumber);
  for (CLI::App* sub : {oracle, bench}) {
    sub->add_option("--t", o.t, "TZ levels")->check(CLI::Range(1, 255));
    sub->add_option("--p", o.p, "hitting-set / pruning scale")->check(CLI::PositiveNumber);
    sub->add_option("--s", o.s, "number of gap covers")->check(CLI::PositiveNumber);
    sub->add_option("--eps", o.eps, "select t = k, p = ceil(n^{1/k}), s = ceil(1/eps)");
  }
  for (CLI::App* sub : {rt, bench, verify}) sub->add_option("--queries", o.queries, "number of random pairs");
  rt->add_option("--source", o.source, "route a single message from this vertex");
  rt->add_option("--dest", o.dest, "... to this vertex");
  bench->add_option("--target", o.target, "labeling|oracle|routing");
  bench->add_option("--format", o.format, "stdout format: csv|json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_flag("--all-pairs", o.all_pairs, "every pair u < v instead of sampling");
  bench->add_flag("--timing", o.timing, "record per-query nanoseconds");
  for (CLI::App* sub : {verify, exp}) sub->add_option("--structure", o.structure, "serialized document");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(o);
    if (*cover) return cmd_cover(o);
    if (*label) return cmd_label(o);
    if (*oracle) return cmd_oracle(o);
    if (*rt) return cmd_route(o);
    if (*bench) return cmd_bench(o);
    if (*verify) return cmd_verify(o);
    if (*exp) return cmd_export(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
