#include "lowspace/serialize.hpp"

namespace lowspace {

using nlohmann::json;

namespace {

json header(std::string_view kind) {
  return json{{"format", std::string("lowspace.") + std::string(kind)}, {"version", kFormatVersion}};
}

void check_header(const json& doc, std::string_view kind) {
  if (!doc.is_object()) throw SerializationError("document is not a JSON object");
  const std::string want = std::string("lowspace.") + std::string(kind);
  if (doc.value("format", std::string()) != want) {
    throw SerializationError("expected a " + want + " document");
  }
  if (doc.at("version").get<int>() != kFormatVersion) {
    throw SerializationError("unsupported format version " + doc.at("version").dump());
  }
}

// Runs a loader and maps every parse or validation failure to SerializationError.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SerializationError&) {
    throw;
  } catch (const json::exception& e) {
    throw SerializationError(std::string("malformed document: ") + e.what());
  } catch (const std::logic_error& e) {
    throw SerializationError(std::string("inconsistent document: ") + e.what());
  } catch (const GraphError& e) {
    throw SerializationError(std::string("inconsistent document: ") + e.what());
  }
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw SerializationError(std::string("corrupted document: ") + e.what());
  }
}

json tree_to_json(const ShortestPathTree& t) {
  json members = json::array();
  for (std::uint32_t i = 0; i < t.size(); ++i) {
    members.push_back({{"v", t.vertex_at(i)}, {"parent", t.parent_at(i)}, {"dist", t.dist_at(i)}});
  }
  return json{{"id", t.id()}, {"root", t.root()}, {"members", std::move(members)}};
}

ShortestPathTree tree_from_json(const json& j) {
  std::vector<Vertex> members;
  std::vector<Vertex> parents;
  std::vector<Dist> dists;
  for (const json& m : j.at("members")) {
    members.push_back(m.at("v").get<Vertex>());
    parents.push_back(m.at("parent").get<Vertex>());
    dists.push_back(m.at("dist").get<Dist>());
  }
  return ShortestPathTree(j.at("id").get<std::uint32_t>(), j.at("root").get<Vertex>(), std::move(members),
                          parents, std::move(dists));
}

json cover_body(const SparseCover& c) {
  json clusters = json::array();
  for (const Cluster& cl : c.clusters) clusters.push_back(tree_to_json(cl.spt));
  return json{{"rho", c.rho.value},
              {"rho_limit", c.rho.limit},
              {"k", c.k},
              {"beta", c.beta},
              {"s", c.s},
              {"method", std::string(to_string(c.method))},
              {"stats",
               {{"phases", c.stats.phases},
                {"max_growth_iterations", c.stats.max_growth_iterations},
                {"attempts", c.stats.attempts}}},
              {"clusters", std::move(clusters)},
              {"padded", c.padded}};
}

SparseCover cover_body_from_json(const json& j) {
  SparseCover c;
  c.rho.value = j.at("rho").get<double>();
  c.rho.limit = j.at("rho_limit").get<Dist>();
  c.k = j.at("k").get<std::uint32_t>();
  c.beta = j.at("beta").get<double>();
  c.s = j.at("s").get<std::uint32_t>();
  c.method = parse_cover_method(j.at("method").get<std::string>());
  const json& st = j.at("stats");
  c.stats.phases = st.at("phases").get<std::size_t>();
  c.stats.max_growth_iterations = st.at("max_growth_iterations").get<std::size_t>();
  c.stats.attempts = st.at("attempts").get<std::size_t>();
  for (const json& cl : j.at("clusters")) {
    Cluster x;
    x.spt = tree_from_json(cl);
    x.id = x.spt.id();
    c.clusters.push_back(std::move(x));
  }
  c.padded = j.at("padded").get<std::vector<ClusterId>>();
  index_cover(c, c.padded.size());
  return c;
}

json labeling_body(const LabelingScheme& s) {
  json covers = json::array();
  for (const SparseCover& c : s.covers) covers.push_back(cover_body(c));
  json labels = json::array();
  for (const VertexLabel& l : s.labels) labels.push_back(label_to_json(l));
  return json{{"n", s.n},
              {"labels", std::move(labels)},
              {"k", s.scales.k},
              {"delta", s.scales.delta},
              {"q", s.scales.q},
              {"method", std::string(to_string(s.method))},
              {"seed", s.seed},
              {"id", s.id},
              {"covers", std::move(covers)}};
}

LabelingScheme labeling_body_from_json(const json& j) {
  LabelingScheme s;
  s.n = j.at("n").get<std::size_t>();
  s.scales = make_scales(s.n, j.at("delta").get<Dist>(), j.at("k").get<std::uint32_t>());
  if (s.scales.q != j.at("q").get<std::uint32_t>()) throw SerializationError("scale count mismatch");
  s.method = parse_cover_method(j.at("method").get<std::string>());
  s.seed = j.at("seed").get<std::uint64_t>();
  for (const json& c : j.at("covers")) {
    s.covers.push_back(cover_body_from_json(c));
    if (s.covers.back().padded.size() != s.n) throw SerializationError("cover size mismatch");
  }
  derive_labels(s);
  if (s.id != j.at("id").get<std::uint64_t>()) throw SerializationError("scheme fingerprint mismatch");
  // Stored labels must agree with the ones rederived from the covers.
  const json& labels = j.at("labels");
  if (labels.size() != s.n) throw SerializationError("label count mismatch");
  for (Vertex v = 0; v < s.n; ++v) {
    if (labels[v] != label_to_json(s.labels[v])) throw SerializationError("stored label disagrees with covers");
  }
  return s;
}

}  // namespace

json cover_to_json(const SparseCover& cover) {
  json doc = cover_body(cover);
  doc.update(header("cover"));
  return doc;
}

SparseCover cover_from_json(const json& doc) {
  return guarded([&] {
    check_header(doc, "cover");
    return cover_body_from_json(doc);
  });
}

json label_to_json(const VertexLabel& label) {
  json trees = json::object();
  for (const auto& [id, rec] : label.trees) {
    trees[std::to_string(id)] = {{"parent", rec.parent}, {"dist_to_root", rec.dist}};
  }
  return json{{"v", label.vertex}, {"padded", label.padded}, {"trees", std::move(trees)}};
}

json labeling_to_json(const LabelingScheme& scheme) {
  json doc = labeling_body(scheme);
  doc.update(header("labeling"));
  return doc;
}

LabelingScheme labeling_from_json(const json& doc) {
  return guarded([&] {
    check_header(doc, "labeling");
    return labeling_body_from_json(doc);
  });
}

json oracle_to_json(const PrunedOracle& o) {
  json bunch = json::array();
  for (const auto& b : o.bunches.bunch) {
    json row = json::array();
    for (const BunchEntry& e : b) row.push_back({e.w, e.dist});
    bunch.push_back(std::move(row));
  }
  json trees = json::array();
  for (const PrunedTree& t : o.trees) {
    trees.push_back({{"root", t.root},
                     {"members", t.members},
                     {"ancestor", t.ancestor},
                     {"ancestor_dist", t.ancestor_dist},
                     {"root_dist", t.root_dist},
                     {"from_hitting", t.from_hitting},
                     {"from_separator", t.from_separator}});
  }
  json covers = json::array();
  for (const SparseCover& c : o.gap_covers) covers.push_back(cover_body(c));
  json doc{{"n", o.n},
           {"params",
            {{"k", o.params.k},
             {"p", o.params.p},
             {"t", o.params.t},
             {"s", o.params.s},
             {"seed", o.params.seed},
             {"cover_method", std::string(to_string(o.params.cover_method))}}},
           {"level", o.level},
           {"hitting_set",
            {{"r", o.hits.r}, {"members", o.hits.members}, {"rep", o.hits.rep}, {"rep_dist", o.hits.rep_dist}}},
           {"bunches",
            {{"owners", o.bunches.owners},
             {"bunch", std::move(bunch)},
             {"pivot", o.bunches.pivot},
             {"pivot_dist", o.bunches.pivot_dist}}},
           {"trees", std::move(trees)},
           {"gap_covers", std::move(covers)}};
  doc.update(header("oracle"));
  return doc;
}

PrunedOracle oracle_from_json(const json& doc) {
  return guarded([&] {
    check_header(doc, "oracle");
    PrunedOracle o;
    o.n = doc.at("n").get<std::size_t>();
    const json& p = doc.at("params");
    o.params.k = p.at("k").get<std::uint32_t>();
    o.params.p = p.at("p").get<std::uint32_t>();
    o.params.t = p.at("t").get<std::uint32_t>();
    o.params.s = p.at("s").get<std::uint32_t>();
    o.params.seed = p.at("seed").get<std::uint64_t>();
    o.params.cover_method = parse_cover_method(p.at("cover_method").get<std::string>());
    o.level = doc.at("level").get<std::vector<std::uint8_t>>();

    const json& h = doc.at("hitting_set");
    o.hits.r = h.at("r").get<std::uint32_t>();
    o.hits.members = h.at("members").get<std::vector<Vertex>>();
    o.hits.rep = h.at("rep").get<std::vector<Vertex>>();
    o.hits.rep_dist = h.at("rep_dist").get<std::vector<Dist>>();

    const json& b = doc.at("bunches");
    o.bunches.owners = b.at("owners").get<std::vector<Vertex>>();
    for (const json& row : b.at("bunch")) {
      std::vector<BunchEntry> entries;
      for (const json& e : row) entries.push_back({e.at(0).get<Vertex>(), e.at(1).get<Dist>()});
      o.bunches.bunch.push_back(std::move(entries));
    }
    o.bunches.pivot = b.at("pivot").get<std::vector<std::vector<Vertex>>>();
    o.bunches.pivot_dist = b.at("pivot_dist").get<std::vector<std::vector<Dist>>>();

    for (const json& t : doc.at("trees")) {
      PrunedTree x;
      x.root = t.at("root").get<Vertex>();
      x.members = t.at("members").get<std::vector<Vertex>>();
      x.ancestor = t.at("ancestor").get<std::vector<std::uint32_t>>();
      x.ancestor_dist = t.at("ancestor_dist").get<std::vector<Dist>>();
      x.root_dist = t.at("root_dist").get<std::vector<Dist>>();
      x.from_hitting = t.at("from_hitting").get<std::uint32_t>();
      x.from_separator = t.at("from_separator").get<std::uint32_t>();
      const std::size_t m = x.members.size();
      if (x.ancestor.size() != m || x.ancestor_dist.size() != m || x.root_dist.size() != m || m == 0) {
        throw SerializationError("pruned tree arrays have mismatched sizes");
      }
      for (auto a : x.ancestor)
        if (a >= m) throw SerializationError("pruned tree ancestor out of range");
      o.trees.push_back(std::move(x));
    }
    for (const json& c : doc.at("gap_covers")) o.gap_covers.push_back(cover_body_from_json(c));

    const std::size_t owners = o.bunches.owners.size();
    if (o.level.size() != o.n || o.hits.rep.size() != o.n || o.hits.rep_dist.size() != o.n ||
        o.trees.size() != o.n || o.bunches.bunch.size() != owners || o.bunches.pivot.size() != owners ||
        o.bunches.pivot_dist.size() != owners || o.gap_covers.size() != o.params.s || o.params.s == 0) {
      throw SerializationError("oracle sections have inconsistent sizes");
    }
    for (const SparseCover& c : o.gap_covers)
      if (c.padded.size() != o.n) throw SerializationError("gap cover size mismatch");
    for (Vertex r : o.hits.rep)
      if (r >= o.n) throw SerializationError("representative out of range");
    auto ids_ok = [&](const std::vector<Vertex>& ids) {
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] >= o.n || (i > 0 && ids[i] <= ids[i - 1])) return false;
      return true;
    };
    if (!ids_ok(o.hits.members) || o.bunches.owners != o.hits.members) {
      throw SerializationError("hitting set and bunch owners disagree");
    }
    for (std::size_t w = 0; w < o.trees.size(); ++w) {
      if (!ids_ok(o.trees[w].members) || o.trees[w].root != w || !o.trees[w].local(o.trees[w].root)) {
        throw SerializationError("pruned tree members are invalid");
      }
    }
    for (std::size_t i = 0; i < owners; ++i) {
      if (o.bunches.pivot[i].size() != o.params.t || o.bunches.pivot_dist[i].size() != o.params.t) {
        throw SerializationError("pivot rows have the wrong length");
      }
      for (Vertex pv : o.bunches.pivot[i])
        if (pv >= o.n && pv != kNoVertex) throw SerializationError("pivot out of range");
      const auto& row = o.bunches.bunch[i];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j].w >= o.n || (j > 0 && row[j].w <= row[j - 1].w)) throw SerializationError("bunch entries are invalid");
    }
    return o;
  });
}

json routing_to_json(const RoutingScheme& scheme) {
  json edges = json::array();
  for (const Edge& e : scheme.graph.edges()) edges.push_back({e.u, e.v, e.w});
  json doc{{"graph", {{"n", scheme.graph.num_vertices()}, {"edges", std::move(edges)}}},
           {"labeling", labeling_body(scheme.labeling)}};
  doc.update(header("routing"));
  return doc;
}

RoutingScheme routing_from_json(const json& doc) {
  return guarded([&] {
    check_header(doc, "routing");
    RoutingScheme s;
    const json& g = doc.at("graph");
    std::vector<Edge> edges;
    for (const json& e : g.at("edges")) edges.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>(), e.at(2).get<Weight>()});
    s.graph = Graph::from_edges(g.at("n").get<std::size_t>(), std::move(edges));
    s.labeling = labeling_body_from_json(doc.at("labeling"));
    if (s.labeling.n != s.graph.num_vertices()) throw SerializationError("labeling does not match graph");
    derive_routing(s);
    return s;
  });
}

std::string serialize(const SparseCover& cover) { return cover_to_json(cover).dump(); }
std::string serialize(const LabelingScheme& scheme) { return labeling_to_json(scheme).dump(); }
std::string serialize(const PrunedOracle& oracle) { return oracle_to_json(oracle).dump(); }
std::string serialize(const RoutingScheme& scheme) { return routing_to_json(scheme).dump(); }

SparseCover deserialize_cover(std::string_view text) { return cover_from_json(parse(text)); }
LabelingScheme deserialize_labeling(std::string_view text) { return labeling_from_json(parse(text)); }
PrunedOracle deserialize_oracle(std::string_view text) { return oracle_from_json(parse(text)); }
RoutingScheme deserialize_routing(std::string_view text) { return routing_from_json(parse(text)); }

}  // namespace lowspace
