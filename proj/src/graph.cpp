#include "lowspace/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "lowspace/rng.hpp"

namespace lowspace {

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges) {
  if (n >= kNoVertex) throw GraphError("too many vertices");
  for (Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw GraphError("vertex id out of range in edge (" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + ")");
    }
    if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
    if (e.w == 0) throw GraphError("edge weights must be >= 1");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
  });
  // Sorted by weight within (u,v): keeping the first keeps the minimum.
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.unit_weights_ = std::all_of(g.edges_.begin(), g.edges_.end(),
                                [](const Edge& e) { return e.w == 1; });
  std::vector<std::size_t> deg(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.arcs_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.arcs_[fill[e.u]++] = {e.v, e.w};
    g.arcs_[fill[e.v]++] = {e.u, e.w};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.arcs_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.arcs_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }
  return g;
}

std::optional<Weight> Graph::edge_weight(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return std::nullopt;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v,
                             [](const Arc& a, Vertex x) { return a.to < x; });
  if (it == nb.end() || it->to != v) return std::nullopt;
  return it->weight;
}

std::vector<std::uint32_t> Graph::components() const {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp(n_, kUnset);
  std::vector<Vertex> stack;
  std::uint32_t next = 0;
  for (Vertex s = 0; s < n_; ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (const Arc& a : neighbors(x)) {
        if (comp[a.to] == kUnset) {
          comp[a.to] = next;
          stack.push_back(a.to);
        }
      }
    }
    ++next;
  }
  return comp;
}

bool Graph::connected() const {
  auto comp = components();
  return std::all_of(comp.begin(), comp.end(), [](std::uint32_t c) { return c == 0; });
}

// ---------------------------------------------------------------------------
// Edge-list text format

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t parse_int(std::string_view field, std::size_t line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw GraphError("malformed number '" + std::string(field) + "' on line " +
                     std::to_string(line_no));
  }
  return value;
}

}  // namespace

Graph load_graph(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!split_fields(line).empty()) lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) throw GraphError("missing header line 'n m'");

  auto header = split_fields(lines[0]);
  if (header.size() != 2) throw GraphError("header must be 'n m'");
  const std::int64_t n = parse_int(header[0], 1);
  const std::int64_t m = parse_int(header[1], 1);
  if (n < 0 || m < 0) throw GraphError("negative count in header");
  if (static_cast<std::size_t>(m) != lines.size() - 1) {
    throw GraphError("header announces " + std::to_string(m) + " edges but found " +
                     std::to_string(lines.size() - 1));
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto f = split_fields(lines[i]);
    if (f.size() != 3) {
      throw GraphError("malformed line " + std::to_string(i + 1) + ": expected 'u v w'");
    }
    const std::int64_t u = parse_int(f[0], i + 1);
    const std::int64_t v = parse_int(f[1], i + 1);
    const std::int64_t w = parse_int(f[2], i + 1);
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw GraphError("vertex id out of range on line " + std::to_string(i + 1));
    }
    if (w <= 0) throw GraphError("non-positive weight on line " + std::to_string(i + 1));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Weight>(w)});
  }
  return Graph::from_edges(static_cast<std::size_t>(n), std::move(edges));
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_graph(buf.str());
}

std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Generators

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "path") return GraphKind::path;
  if (name == "cycle") return GraphKind::cycle;
  if (name == "grid") return GraphKind::grid;
  if (name == "random") return GraphKind::random;
  if (name == "tree") return GraphKind::tree;
  if (name == "sparse") return GraphKind::sparse;
  throw GraphError("unknown graph kind '" + std::string(name) + "'");
}

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::path: return "path";
    case GraphKind::cycle: return "cycle";
    case GraphKind::grid: return "grid";
    case GraphKind::random: return "random";
    case GraphKind::tree: return "tree";
    case GraphKind::sparse: return "sparse";
  }
  return "?";
}

namespace {

std::uint64_t pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

void draw_extra_edges(std::size_t n, std::size_t count, Rng& rng,
                      std::unordered_set<std::uint64_t>& used, std::vector<Edge>& edges) {
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  while (count > 0) {
    Vertex u = pick(rng);
    Vertex v = pick(rng);
    if (u == v || !used.insert(pair_key(u, v)).second) continue;
    edges.push_back({std::min(u, v), std::max(u, v), 1});
    --count;
  }
}

void random_tree_edges(std::size_t n, Rng& rng, std::vector<Edge>& edges,
                       std::unordered_set<std::uint64_t>& used) {
  for (Vertex v = 1; v < n; ++v) {
    std::uniform_int_distribution<Vertex> pick(0, v - 1);
    Vertex u = pick(rng);
    used.insert(pair_key(u, v));
    edges.push_back({u, v, 1});
  }
}

}  // namespace

Graph generate_graph(const GenerateParams& params, std::uint64_t seed) {
  Rng rng = make_stream(seed, "generate");
  const std::size_t n = params.kind == GraphKind::grid ? params.rows * params.cols : params.n;
  if (params.max_weight == 0) throw GraphError("max_weight must be >= 1");
  std::vector<Edge> edges;

  switch (params.kind) {
    case GraphKind::path:
      for (Vertex v = 1; v < n; ++v) edges.push_back({v - 1, v, 1});
      break;
    case GraphKind::cycle:
      if (n < 3) throw GraphError("cycle needs n >= 3");
      for (Vertex v = 1; v < n; ++v) edges.push_back({v - 1, v, 1});
      edges.push_back({0, static_cast<Vertex>(n - 1), 1});
      break;
    case GraphKind::grid:
      if (params.rows == 0 || params.cols == 0) throw GraphError("grid needs rows, cols >= 1");
      for (std::size_t r = 0; r < params.rows; ++r) {
        for (std::size_t c = 0; c < params.cols; ++c) {
          auto id = static_cast<Vertex>(r * params.cols + c);
          if (c + 1 < params.cols) edges.push_back({id, id + 1, 1});
          if (r + 1 < params.rows) edges.push_back({id, static_cast<Vertex>(id + params.cols), 1});
        }
      }
      break;
    case GraphKind::random: {
      if (n == 0) break;
      const std::size_t max_m = n * (n - 1) / 2;
      if (params.m + 1 < n) throw GraphError("random graph needs m >= n-1 to be connected");
      if (params.m > max_m) throw GraphError("m exceeds n(n-1)/2");
      constexpr int kMaxAttempts = 1000;
      bool ok = false;
      for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
        edges.clear();
        std::unordered_set<std::uint64_t> used;
        draw_extra_edges(n, params.m, rng, used, edges);
        ok = Graph::from_edges(n, edges).connected();
      }
      if (!ok) throw GraphError("no connected sample after 1000 draws; increase m");
      break;
    }
    case GraphKind::tree: {
      std::unordered_set<std::uint64_t> used;
      random_tree_edges(n, rng, edges, used);
      break;
    }
    case GraphKind::sparse: {
      if (n == 0) break;
      if (params.m + 1 < n) throw GraphError("sparse graph needs m >= n-1");
      if (params.m > n * (n - 1) / 2) throw GraphError("m exceeds n(n-1)/2");
      std::unordered_set<std::uint64_t> used;
      random_tree_edges(n, rng, edges, used);
      draw_extra_edges(n, params.m - (n - 1), rng, used, edges);
      break;
    }
  }

  if (params.max_weight > 1) {
    std::uniform_int_distribution<Weight> w(1, params.max_weight);
    for (Edge& e : edges) e.w = w(rng);
  }
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace lowspace
