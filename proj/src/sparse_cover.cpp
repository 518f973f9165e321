#include "lowspace/sparse_cover.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lowspace {

std::string_view to_string(CoverMethod m) {
  return m == CoverMethod::deterministic ? "deterministic" : "randomized";
}

CoverMethod parse_cover_method(std::string_view name) {
  if (name == "deterministic") return CoverMethod::deterministic;
  if (name == "randomized") return CoverMethod::randomized;
  throw std::invalid_argument("unknown cover method '" + std::string(name) + "'");
}

double cover_beta(CoverMethod method, std::size_t n, std::uint32_t k) {
  const double root = std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), 1.0 / k);
  return (method == CoverMethod::deterministic ? 8.0 : 64.0) * k * root;
}

PaddingFailure::PaddingFailure(std::vector<Vertex> vertices)
    : std::runtime_error("padding failure: " + std::to_string(vertices.size()) +
                         " vertices have no padded cluster"),
      unpadded(std::move(vertices)) {}

namespace {

// Distance field that only ever decreases: new sources are pinned to 0 and
// the change is propagated up to `limit`. Vertices crossing from "beyond
// limit" to "within limit" are reported once.
class IncrementalField {
 public:
  explicit IncrementalField(std::size_t n) : dist_(n, kInfinity) {}

  void add_sources(const Graph& g, std::span<const Vertex> sources, Dist limit,
                   std::vector<Vertex>& entered) {
    auto cmp = [](const auto& a, const auto& b) { return a.first > b.first; };
    for (Vertex s : sources) {
      if (dist_[s] == 0) continue;
      if (dist_[s] == kInfinity) {
        entered.push_back(s);
        touched_.push_back(s);
      }
      dist_[s] = 0;
      heap_.emplace_back(0, s);
    }
    std::make_heap(heap_.begin(), heap_.end(), cmp);
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), cmp);
      auto [d, x] = heap_.back();
      heap_.pop_back();
      if (d != dist_[x]) continue;
      for (const Arc& a : g.neighbors(x)) {
        const Dist nd = d + a.weight;
        if (nd > limit || nd >= dist_[a.to]) continue;
        if (dist_[a.to] == kInfinity) {
          entered.push_back(a.to);
          touched_.push_back(a.to);
        }
        dist_[a.to] = nd;
        heap_.emplace_back(nd, a.to);
        std::push_heap(heap_.begin(), heap_.end(), cmp);
      }
    }
  }

  void reset() {
    for (Vertex v : touched_) dist_[v] = kInfinity;
    touched_.clear();
  }

 private:
  std::vector<Dist> dist_;
  std::vector<Vertex> touched_;
  std::vector<std::pair<Dist, Vertex>> heap_;
};

// One grown cluster before its tree is built.
struct Draft {
  Vertex root = 0;
  std::vector<Vertex> vertices;  // union of the absorbed balls
  std::vector<Vertex> centers;   // the absorbed balls (the set S)
  std::vector<Vertex> boundary;  // remaining balls touching the union
  std::size_t iterations = 0;
};

double growth_factor(std::size_t n, std::uint32_t k) {
  if (n < 2) return 1.0;
  const double ln = std::log(static_cast<double>(n));
  return 1.0 + ln / (k * std::pow(static_cast<double>(n), 1.0 / k));
}

// |S'| >= |S| * factor, plus strict growth so a single-vertex graph (factor 1)
// cannot loop forever. For n >= 2 the second test is implied by the first.
bool keeps_growing(std::size_t boundary, std::size_t current, double factor) {
  return boundary > current && static_cast<double>(boundary) >= static_cast<double>(current) * factor;
}

class IncrementalGrower {
 public:
  IncrementalGrower(const Graph& g, const Radius& rho, double factor)
      : g_(g),
        limit_(rho.limit),
        factor_(factor),
        to_centers_(g.num_vertices()),
        to_union_(g.num_vertices()),
        in_s_(g.num_vertices(), 0),
        in_boundary_(g.num_vertices(), 0) {}

  Draft grow(Vertex start, const std::vector<char>& in_r) {
    Draft d;
    d.root = start;
    std::vector<Vertex> fresh_centers{start};
    std::vector<Vertex> fresh_union;
    std::vector<Vertex> reached;
    in_s_[start] = 1;
    d.centers.push_back(start);
    while (true) {
      fresh_union.clear();
      to_centers_.add_sources(g_, fresh_centers, limit_, fresh_union);
      d.vertices.insert(d.vertices.end(), fresh_union.begin(), fresh_union.end());
      reached.clear();
      to_union_.add_sources(g_, fresh_union, limit_, reached);
      for (Vertex z : reached) {
        if (in_r[z] && !in_boundary_[z]) {
          in_boundary_[z] = 1;
          d.boundary.push_back(z);
        }
      }
      if (!keeps_growing(d.boundary.size(), d.centers.size(), factor_)) break;
      ++d.iterations;
      fresh_centers.clear();
      for (Vertex z : d.boundary) {
        if (!in_s_[z]) {
          in_s_[z] = 1;
          fresh_centers.push_back(z);
        }
      }
      d.centers.insert(d.centers.end(), fresh_centers.begin(), fresh_centers.end());
    }
    to_centers_.reset();
    to_union_.reset();
    for (Vertex z : d.centers) in_s_[z] = 0;
    for (Vertex z : d.boundary) in_boundary_[z] = 0;
    return d;
  }

 private:
  const Graph& g_;
  Dist limit_;
  double factor_;
  IncrementalField to_centers_;
  IncrementalField to_union_;
  std::vector<char> in_s_;
  std::vector<char> in_boundary_;
};

class ReferenceGrower {
 public:
  ReferenceGrower(const Graph& g, const Radius& rho, double factor, Execution exec)
      : factor_(factor), balls_(g.num_vertices()), marked_(g.num_vertices(), 0) {
    parallel_for_with_state(
        exec, g.num_vertices(), [&] { return SearchWorkspace(g.num_vertices()); },
        [&](SearchWorkspace& ws, std::size_t v) {
          const Vertex src[] = {static_cast<Vertex>(v)};
          ws.run(g, src, rho.limit, [](Vertex) { return true; });
          balls_[v] = ws.settled();
          std::sort(balls_[v].begin(), balls_[v].end());
        });
  }

  Draft grow(Vertex start, const std::vector<char>& in_r) {
    Draft d;
    d.root = start;
    std::vector<Vertex> s{start};
    std::vector<Vertex> boundary;
    while (true) {
      boundary = intersecting(s, in_r);
      if (!keeps_growing(boundary.size(), s.size(), factor_)) break;
      ++d.iterations;
      s = boundary;
    }
    std::vector<Vertex> vertices;
    for (Vertex c : s) vertices.insert(vertices.end(), balls_[c].begin(), balls_[c].end());
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    d.vertices = std::move(vertices);
    d.centers = std::move(s);
    d.boundary = std::move(boundary);
    return d;
  }

 private:
  std::vector<Vertex> intersecting(const std::vector<Vertex>& s, const std::vector<char>& in_r) {
    for (Vertex c : s)
      for (Vertex y : balls_[c]) marked_[y] = 1;
    std::vector<Vertex> out;
    for (Vertex z = 0; z < balls_.size(); ++z) {
      if (!in_r[z]) continue;
      if (std::any_of(balls_[z].begin(), balls_[z].end(), [&](Vertex y) { return marked_[y] != 0; }))
        out.push_back(z);
    }
    for (Vertex c : s)
      for (Vertex y : balls_[c]) marked_[y] = 0;
    return out;
  }

  double factor_;
  std::vector<std::vector<Vertex>> balls_;
  std::vector<char> marked_;
};

struct TreeJob {
  Vertex root;
  std::vector<Vertex> vertices;
};

// Builds the SPT of every job inside its own vertex set.
std::vector<Cluster> build_cluster_trees(const Graph& g, std::vector<TreeJob>& jobs,
                                         Execution exec) {
  std::vector<Cluster> clusters(jobs.size());
  struct State {
    SearchWorkspace ws;
    std::vector<std::uint32_t> stamp;
  };
  const std::size_t n = g.num_vertices();
  parallel_for_with_state(
      exec, jobs.size(),
      [n] { return State{SearchWorkspace(n), std::vector<std::uint32_t>(n, kNoCluster)}; },
      [&](State& st, std::size_t i) {
        const auto tag = static_cast<std::uint32_t>(i);
        for (Vertex v : jobs[i].vertices) st.stamp[v] = tag;
        const Vertex src[] = {jobs[i].root};
        st.ws.run(g, src, kInfinity, [&](Vertex v) { return st.stamp[v] == tag; });
        if (st.ws.settled().size() != jobs[i].vertices.size()) {
          throw InvariantViolation("cluster does not induce a connected subgraph");
        }
        clusters[i].id = tag;
        clusters[i].spt = tree_from_search(g, st.ws, jobs[i].root, tag);
      });
  return clusters;
}

template <class Grower>
SparseCover region_growing(const Graph& g, const Radius& rho, std::uint32_t k, Grower& grower,
                           Execution exec) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const std::size_t n = g.num_vertices();
  SparseCover cover;
  cover.rho = rho;
  cover.k = k;
  cover.method = CoverMethod::deterministic;
  cover.beta = cover_beta(CoverMethod::deterministic, n, k);
  cover.s = 2 * k;
  cover.padded.assign(n, kNoCluster);

  const double iteration_bound = 2.0 * k * std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), 1.0 / k);
  std::vector<char> in_u(n, 1);
  std::vector<char> in_r;
  std::size_t remaining = n;
  std::vector<TreeJob> jobs;

  while (remaining > 0) {
    ++cover.stats.phases;
    if (cover.stats.phases > 2 * static_cast<std::size_t>(k)) {
      throw InvariantViolation("region growing needed more than 2k phases");
    }
    in_r = in_u;
    for (Vertex c = 0; c < n; ++c) {
      if (!in_r[c]) continue;
      Draft d = grower.grow(c, in_r);
      if (static_cast<double>(d.iterations) > iteration_bound) {
        throw InvariantViolation("growth loop exceeded 2k n^{1/k} iterations");
      }
      cover.stats.max_growth_iterations = std::max(cover.stats.max_growth_iterations, d.iterations);
      const auto id = static_cast<ClusterId>(jobs.size());
      for (Vertex z : d.boundary) in_r[z] = 0;
      for (Vertex z : d.centers) {
        in_u[z] = 0;
        cover.padded[z] = id;
        --remaining;
      }
      std::sort(d.vertices.begin(), d.vertices.end());
      jobs.push_back({d.root, std::move(d.vertices)});
    }
  }
  cover.clusters = build_cluster_trees(g, jobs, exec);
  index_cover(cover, n);
  return cover;
}

}  // namespace

SparseCover build_cover_deterministic(const Graph& g, const Radius& rho, std::uint32_t k,
                                      Execution exec) {
  IncrementalGrower grower(g, rho, growth_factor(g.num_vertices(), k));
  return region_growing(g, rho, k, grower, exec);
}

SparseCover build_cover_reference(const Graph& g, const Radius& rho, std::uint32_t k,
                                  Execution exec) {
  ReferenceGrower grower(g, rho, growth_factor(g.num_vertices(), k), exec);
  return region_growing(g, rho, k, grower, exec);
}

// ---------------------------------------------------------------------------
// Padded partitions

Partition padded_partition(const Graph& g, double delta, std::uint64_t seed) {
  Rng rng = make_stream(seed, "partition");
  return padded_partition(g, delta, rng);
}

Partition padded_partition(const Graph& g, double delta, Rng& rng) {
  if (!(delta > 0.0)) throw std::invalid_argument("partition diameter must be positive");
  const std::size_t n = g.num_vertices();
  Partition p;
  p.delta = delta;
  p.cell_of.assign(n, 0);
  const double half = delta / 2.0;
  const double rate = n > 1 ? 4.0 * std::log(static_cast<double>(n)) / delta : 0.0;
  // Mass of the untruncated exponential on [0, delta/2].
  const double mass = rate > 0.0 ? -std::expm1(-rate * half) : 0.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<char> carved(n, 0);
  SearchWorkspace ws(n);

  for (Vertex c = 0; c < n; ++c) {
    if (carved[c]) continue;
    const double u = unit(rng);
    double r = rate > 0.0 ? -std::log1p(-u * mass) / rate : u * half;
    r = std::min(r, half);
    const Vertex src[] = {c};
    ws.run(g, src, Radius::from_real(r).limit, [&](Vertex v) { return carved[v] == 0; });
    std::vector<Vertex> cell = ws.settled();
    std::sort(cell.begin(), cell.end());
    const auto id = static_cast<std::uint32_t>(p.cells.size());
    for (Vertex v : cell) {
      carved[v] = 1;
      p.cell_of[v] = id;
    }
    p.cells.push_back(std::move(cell));
    p.centers.push_back(c);
  }
  return p;
}

SparseCover build_cover_randomized(const Graph& g, const Radius& rho, std::uint32_t k,
                                   std::uint64_t seed, Execution exec) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const std::size_t n = g.num_vertices();
  const std::size_t draws = 2 * static_cast<std::size_t>(k);
  SparseCover cover;
  cover.rho = rho;
  cover.k = k;
  cover.method = CoverMethod::randomized;
  cover.beta = cover_beta(CoverMethod::randomized, n, k);
  cover.s = static_cast<std::uint32_t>(draws);
  const double delta = std::max(cover.beta * rho.value, 1.0);

  std::vector<Partition> parts(draws);
  // pads[j][v]: the radius-rho ball of v lies inside its cell of partition j.
  std::vector<std::vector<char>> pads(draws);
  parallel_for_with_state(
      exec, draws, [n] { return SearchWorkspace(n); },
      [&](SearchWorkspace& ws, std::size_t j) {
        Rng rng = make_stream(seed, "cover-partition", j);
        parts[j] = padded_partition(g, delta, rng);
        const Partition& p = parts[j];
        pads[j].assign(n, 1);
        std::vector<Vertex> outside;
        for (std::size_t c = 0; c < p.cells.size(); ++c) {
          // Distance from each member to the nearest vertex of another cell.
          outside.clear();
          for (Vertex x : p.cells[c])
            for (const Arc& a : g.neighbors(x))
              if (p.cell_of[a.to] != c) outside.push_back(a.to);
          if (outside.empty()) continue;
          std::sort(outside.begin(), outside.end());
          outside.erase(std::unique(outside.begin(), outside.end()), outside.end());
          ws.run(g, outside, rho.limit, [&](Vertex v) { return p.cell_of[v] == c; });
          for (Vertex v : ws.settled())
            if (p.cell_of[v] == c) pads[j][v] = 0;
        }
      });

  std::vector<TreeJob> jobs;
  std::vector<ClusterId> first_id(draws);
  for (std::size_t j = 0; j < draws; ++j) {
    first_id[j] = static_cast<ClusterId>(jobs.size());
    for (std::size_t c = 0; c < parts[j].cells.size(); ++c) {
      jobs.push_back({parts[j].centers[c], parts[j].cells[c]});
    }
  }

  cover.padded.assign(n, kNoCluster);
  std::vector<Vertex> unpadded;
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < draws; ++j) {
      if (pads[j][v]) {
        cover.padded[v] = first_id[j] + parts[j].cell_of[v];
        break;
      }
    }
    if (cover.padded[v] == kNoCluster) unpadded.push_back(v);
  }
  if (!unpadded.empty()) throw PaddingFailure(std::move(unpadded));

  cover.clusters = build_cluster_trees(g, jobs, exec);
  index_cover(cover, n);
  return cover;
}

SparseCover build_cover_randomized_retrying(const Graph& g, const Radius& rho, std::uint32_t k,
                                            std::uint64_t seed, std::size_t max_attempts,
                                            Execution exec) {
  for (std::size_t attempt = 0;; ++attempt) {
    try {
      SparseCover c = build_cover_randomized(g, rho, k, seed + attempt, exec);
      c.stats.attempts = attempt + 1;
      return c;
    } catch (const PaddingFailure&) {
      if (attempt + 1 >= max_attempts) throw;
    }
  }
}

// ---------------------------------------------------------------------------

void index_cover(SparseCover& cover, std::size_t n) {
  if (cover.padded.size() != n) throw InvariantViolation("padded array has wrong length");
  cover.membership.assign(n, {});
  for (std::size_t i = 0; i < cover.clusters.size(); ++i) {
    if (cover.clusters[i].id != i) throw InvariantViolation("cluster ids must be 0..C-1 in order");
    for (Vertex v : cover.clusters[i].vertices()) {
      if (v >= n) throw InvariantViolation("cluster member out of range");
      cover.membership[v].push_back(static_cast<ClusterId>(i));
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    const ClusterId p = cover.padded[v];
    if (p >= cover.clusters.size() || !cover.clusters[p].contains(v)) {
      throw InvariantViolation("vertex " + std::to_string(v) + " has an invalid padded cluster");
    }
  }
}

CoverStats verify_cover(const Graph& g, const SparseCover& cover, Execution exec) {
  const std::size_t n = g.num_vertices();
  CoverStats out;

  std::vector<std::size_t> overlap(n, 0);
  for (const Cluster& c : cover.clusters)
    for (Vertex v : c.vertices()) ++overlap[v];
  out.max_overlap = n ? *std::max_element(overlap.begin(), overlap.end()) : 0;
  for (const Cluster& c : cover.clusters) out.max_root_radius = std::max(out.max_root_radius, c.spt.max_depth());

  // One task per (cluster, source) pair; eccentricities inside the cluster.
  std::vector<std::pair<std::uint32_t, Vertex>> tasks;
  for (std::uint32_t ci = 0; ci < cover.clusters.size(); ++ci)
    for (Vertex v : cover.clusters[ci].vertices()) tasks.emplace_back(ci, v);
  std::vector<Dist> ecc(tasks.size(), 0);
  struct State {
    SearchWorkspace ws;
    std::vector<std::uint32_t> stamp;
    std::uint32_t loaded = kNoCluster;
  };
  parallel_for_with_state(
      exec, tasks.size(),
      [n] { return State{SearchWorkspace(n), std::vector<std::uint32_t>(n, kNoCluster), kNoCluster}; },
      [&](State& st, std::size_t t) {
        const auto [ci, src] = tasks[t];
        if (st.loaded != ci) {
          for (Vertex v : cover.clusters[ci].vertices()) st.stamp[v] = ci;
          st.loaded = ci;
        }
        const Vertex s[] = {src};
        st.ws.run(g, s, kInfinity, [&](Vertex v) { return st.stamp[v] == ci; });
        Dist e = 0;
        for (Vertex x : st.ws.settled()) e = std::max(e, st.ws.dist(x));
        if (st.ws.settled().size() != cover.clusters[ci].vertices().size()) e = kInfinity;
        ecc[t] = e;
      });
  out.max_diameter = ecc.empty() ? 0 : *std::max_element(ecc.begin(), ecc.end());

  // Padding: v is padded by C iff no vertex outside C is within rho of v,
  // i.e. a search from C's outside neighbours, moving only through C, does
  // not reach v within rho.
  std::vector<std::vector<Vertex>> padded_by(cover.clusters.size());
  std::size_t dangling = 0;
  for (Vertex v = 0; v < n; ++v) {
    const ClusterId p = v < cover.padded.size() ? cover.padded[v] : kNoCluster;
    if (p >= cover.clusters.size() || !cover.clusters[p].contains(v)) {
      ++dangling;
    } else {
      padded_by[p].push_back(v);
    }
  }
  std::vector<std::size_t> cut(cover.clusters.size(), 0);
  parallel_for_with_state(
      exec, cover.clusters.size(),
      [n] { return State{SearchWorkspace(n), std::vector<std::uint32_t>(n, kNoCluster), kNoCluster}; },
      [&](State& st, std::size_t ci) {
        if (padded_by[ci].empty()) return;
        const auto tag = static_cast<std::uint32_t>(ci);
        const Cluster& c = cover.clusters[ci];
        for (Vertex v : c.vertices()) st.stamp[v] = tag;
        std::vector<Vertex> outside;
        for (Vertex x : c.vertices())
          for (const Arc& a : g.neighbors(x))
            if (st.stamp[a.to] != tag) outside.push_back(a.to);
        for (Vertex v : c.vertices()) st.stamp[v] = kNoCluster;
        if (outside.empty()) return;
        std::sort(outside.begin(), outside.end());
        outside.erase(std::unique(outside.begin(), outside.end()), outside.end());
        st.ws.run(g, outside, cover.rho.limit, [&](Vertex v) { return c.contains(v); });
        for (Vertex v : padded_by[ci])
          if (st.ws.reached(v)) ++cut[ci];
      });
  out.unpadded_count = dangling + std::accumulate(cut.begin(), cut.end(), std::size_t{0});
  return out;
}

}  // namespace lowspace
