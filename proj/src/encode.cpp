#include "eposa/encode.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

namespace eposa {

namespace {

GroupSpec extend_spec(const GroupSpec& base, const std::vector<int>& extra) {
  std::vector<int> moduli = base.moduli;
  moduli.insert(moduli.end(), extra.begin(), extra.end());
  return make_spec(std::move(moduli));
}

GroupElement extend_elem(const GroupElement& x, const GroupElement& tail) {
  GroupElement y = x;
  y.insert(y.end(), tail.begin(), tail.end());
  return y;
}

std::vector<int> identity_map(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

std::vector<char> id_flags(const LabelledGraph& g, const std::vector<int>& ids,
                           const std::string& what) {
  std::vector<char> f(g.vertex_count(), 0);
  for (int v : ids) {
    if (v < 0 || v >= g.vertex_count())
      throw ValidationError(what + " vertex id " + std::to_string(v) + " out of range");
    f[v] = 1;
  }
  return f;
}

std::string fmt_ints(const std::vector<int>& xs) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << '}';
  return os.str();
}

}  // namespace

std::vector<int> back_map_path(const Encoding& enc, const ApPath& target_path) {
  std::vector<int> out;
  for (int v : target_path.vertices) {
    if (v < 0 || v >= (int)enc.vertex_map.size())
      throw ValidationError("path vertex " + std::to_string(v) + " outside the encoding target");
    int s = enc.vertex_map[v];
    if (out.empty() || out.back() != s) out.push_back(s);
  }
  return out;
}

Encoding encode_modular(const LabelledGraph& g, int m, const std::vector<int>& residues) {
  if (m < 1) throw ValidationError("length modulus must be >= 1, got " + std::to_string(m));
  GroupSpec spec = m == 1 ? make_spec({}) : make_spec({m});
  GroupElement one = m == 1 ? GroupElement{} : GroupElement{1};

  LabelledGraph t(spec);
  for (int v = 0; v < g.vertex_count(); ++v) t.add_vertex(g.vertex_name(v), g.is_terminal(v));
  std::vector<int> emap;
  std::set<std::pair<int, int>> seen;  // parallel edges collapse once labels are all 1
  for (const Edge& e : g.edges()) {
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert({key.first, key.second}).second) continue;
    t.add_edge(e.u, e.v, one);
    emap.push_back(e.id);
  }

  std::vector<GroupElement> lam;
  for (int r : residues)
    lam.push_back(m == 1 ? GroupElement{} : GroupElement{((r % m) + m) % m});
  return Encoding{g,
                  "edge count mod " + std::to_string(m) + " in " + fmt_ints(residues),
                  std::move(t),
                  make_lambda(spec, lam),
                  identity_map(g.vertex_count()),
                  std::move(emap)};
}

Encoding encode_edge_sets(const LabelledGraph& g, const std::vector<std::vector<int>>& fsets) {
  int k = (int)fsets.size();
  if (k == 0) throw ValidationError("need at least one mandatory edge set");
  if (k > 20) throw ValidationError("too many edge sets: " + std::to_string(k));
  std::set<std::pair<int, int>> pairs;
  for (const Edge& e : g.edges()) {
    auto key = std::minmax(e.u, e.v);
    if (!pairs.insert({key.first, key.second}).second)
      throw ValidationError("source graph must be simple; parallel edges join " +
                            g.vertex_name(e.u) + " and " + g.vertex_name(e.v));
  }

  std::vector<std::vector<int>> in_sets(g.edge_count());
  for (int i = 0; i < k; ++i)
    for (int eid : fsets[i]) {
      if (eid < 0 || eid >= g.edge_count())
        throw ValidationError("edge id " + std::to_string(eid) + " out of range in set " +
                              std::to_string(i));
      in_sets[eid].push_back(i);
    }
  for (auto& s : in_sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }

  GroupSpec spec = make_spec(std::vector<int>(k, 2));
  LabelledGraph t(spec);
  for (int v = 0; v < g.vertex_count(); ++v) t.add_vertex(g.vertex_name(v), g.is_terminal(v));
  std::vector<int> emap;
  for (const Edge& e : g.edges()) {
    const auto& s = in_sets[e.id];
    for (int mask = 0; mask < (1 << (int)s.size()); ++mask) {
      GroupElement label = zero(spec);
      for (int b = 0; b < (int)s.size(); ++b)
        if (mask & (1 << b)) label[s[b]] = 1;
      t.add_edge(e.u, e.v, label);
      emap.push_back(e.id);
    }
  }

  return Encoding{g,
                  "uses an edge of each of " + std::to_string(k) + " edge sets",
                  std::move(t),
                  make_lambda(spec, {GroupElement(k, 1)}),
                  identity_map(g.vertex_count()),
                  std::move(emap)};
}

Encoding encode_vertex_sets(const LabelledGraph& g, const std::vector<std::vector<int>>& usets) {
  if (usets.empty()) throw ValidationError("need at least one mandatory vertex set");
  std::vector<std::vector<int>> fsets;
  for (const auto& u : usets) {
    std::vector<char> in = id_flags(g, u, "mandatory");
    std::vector<int> f;
    for (const Edge& e : g.edges())
      if (in[e.u] || in[e.v]) f.push_back(e.id);
    fsets.push_back(std::move(f));
  }
  Encoding enc = encode_edge_sets(g, fsets);
  enc.constraint = "visits a vertex of each of " + std::to_string(usets.size()) + " vertex sets";
  return enc;
}

Encoding encode_ab_paths(const LabelledGraph& g, const std::vector<int>& a_set,
                         const std::vector<int>& b_set, const LambdaSet& lambda) {
  if (lambda.spec != g.spec())
    throw ValidationError("lambda group does not match the source graph");
  std::vector<char> in_a = id_flags(g, a_set, "A"), in_b = id_flags(g, b_set, "B");

  GroupSpec spec = extend_spec(g.spec(), {2, 2});
  LabelledGraph t(spec);
  for (int v = 0; v < g.vertex_count(); ++v)
    t.add_vertex(g.vertex_name(v), in_a[v] || in_b[v]);

  std::vector<int> emap;
  auto put = [&](const Edge& e, int t1, int t2) {
    t.add_edge(e.u, e.v, extend_elem(e.label, {t1, t2}));
    emap.push_back(e.id);
  };
  for (const Edge& e : g.edges()) {
    bool tu = in_a[e.u] || in_b[e.u], tv = in_a[e.v] || in_b[e.v];
    if (!tu && !tv) {
      put(e, 0, 0);
    } else if (tu != tv) {
      int w = tu ? e.u : e.v;  // the endpoint inside A u B
      if (in_a[w]) put(e, 1, 0);
      if (in_b[w]) put(e, 0, 1);
    } else if ((in_a[e.u] && in_b[e.v]) || (in_b[e.u] && in_a[e.v])) {
      put(e, 1, 1);
    }
    // remaining case: both endpoints in A-B or both in B-A; no A-B-path
    // can use such an edge, so it has no counterpart
  }

  std::vector<GroupElement> lam;
  for (const auto& x : lambda.elements) lam.push_back(extend_elem(x, {1, 1}));
  return Encoding{g,
                  "A-B endpoints with gamma-length in Lambda",
                  std::move(t),
                  make_lambda(spec, lam),
                  identity_map(g.vertex_count()),
                  std::move(emap)};
}

Encoding encode_weak_ab(const LabelledGraph& g, const std::vector<int>& a_set,
                        const std::vector<int>& b_set, const LambdaSet& lambda) {
  if (lambda.spec != g.spec())
    throw ValidationError("lambda group does not match the source graph");
  std::vector<char> in_a = id_flags(g, a_set, "A"), in_b = id_flags(g, b_set, "B");

  GroupSpec spec = extend_spec(g.spec(), {2, 2});
  LabelledGraph t(spec);
  for (int v = 0; v < g.vertex_count(); ++v) t.add_vertex(g.vertex_name(v), false);

  std::vector<int> vmap = identity_map(g.vertex_count());
  std::vector<int> emap;
  for (const Edge& e : g.edges()) {
    t.add_edge(e.u, e.v, extend_elem(e.label, {0, 0}));
    emap.push_back(e.id);
  }
  GroupElement z = zero(g.spec());
  auto pendant = [&](int v, int t1, int t2) {
    std::string name = g.vertex_name(v) + "'";
    while (t.has_vertex(name)) name += "'";
    int p = t.add_vertex(name, true);
    t.add_edge(v, p, extend_elem(z, {t1, t2}));
    vmap.push_back(v);
    emap.push_back(-1);
  };
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (in_a[v]) pendant(v, 1, 0);
    if (in_b[v]) pendant(v, 0, 1);
  }

  std::vector<GroupElement> lam;
  for (const auto& x : lambda.elements) lam.push_back(extend_elem(x, {1, 1}));
  return Encoding{g,
                  "weak A-B endpoints with gamma-length in Lambda",
                  std::move(t),
                  make_lambda(spec, lam),
                  std::move(vmap),
                  std::move(emap)};
}

Encoding encode_h_feasible(const LabelledGraph& g, const std::vector<std::vector<int>>& parts,
                           const std::vector<HEdge>& h_edges) {
  int k = (int)parts.size();
  if (k == 0) throw ValidationError("need at least one terminal part");
  std::vector<int> part_of(g.vertex_count(), -1);
  for (int i = 0; i < k; ++i)
    for (int v : parts[i]) {
      if (v < 0 || v >= g.vertex_count())
        throw ValidationError("part vertex id " + std::to_string(v) + " out of range");
      if (!g.is_terminal(v))
        throw ValidationError("part vertex " + g.vertex_name(v) + " is not a terminal");
      if (part_of[v] >= 0)
        throw ValidationError("vertex " + g.vertex_name(v) + " appears in two parts");
      part_of[v] = i;
    }
  for (int v : g.terminals())
    if (part_of[v] < 0)
      throw ValidationError("terminal " + g.vertex_name(v) + " missing from the partition");

  std::set<std::pair<int, int>> hseen;
  for (const HEdge& f : h_edges) {
    if (f.i < 0 || f.i >= k || f.j < 0 || f.j >= k)
      throw ValidationError("pattern edge references a part out of range");
    if (f.lambda.spec != g.spec())
      throw ValidationError("pattern edge lambda group does not match the source graph");
    auto key = std::minmax(f.i, f.j);
    if (!hseen.insert({key.first, key.second}).second)
      throw ValidationError("duplicate pattern edge between parts " + std::to_string(f.i) +
                            " and " + std::to_string(f.j));
  }

  GroupSpec spec = extend_spec(g.spec(), std::vector<int>(k, 3));
  LabelledGraph t(spec);
  for (int v = 0; v < g.vertex_count(); ++v) t.add_vertex(g.vertex_name(v), g.is_terminal(v));
  std::vector<int> emap;
  for (const Edge& e : g.edges()) {
    GroupElement tag(k, 0);
    if (part_of[e.u] >= 0) tag[part_of[e.u]] = (tag[part_of[e.u]] + 1) % 3;
    if (part_of[e.v] >= 0) tag[part_of[e.v]] = (tag[part_of[e.v]] + 1) % 3;
    t.add_edge(e.u, e.v, extend_elem(e.label, tag));
    emap.push_back(e.id);
  }

  std::vector<GroupElement> lam;
  for (const HEdge& f : h_edges) {
    GroupElement tag(k, 0);
    tag[f.i] = (tag[f.i] + 1) % 3;
    tag[f.j] = (tag[f.j] + 1) % 3;
    for (const auto& x : f.lambda.elements) lam.push_back(extend_elem(x, tag));
  }
  return Encoding{g,
                  "endpoint parts joined by a pattern edge, gamma-length per edge",
                  std::move(t),
                  make_lambda(spec, lam),
                  identity_map(g.vertex_count()),
                  std::move(emap)};
}

Encoding with_source_labels(const Encoding& enc, const LambdaSet& source_lambda) {
  if (source_lambda.spec != enc.source.spec())
    throw ValidationError("lambda group does not match the encoding source");
  GroupSpec spec = extend_spec(enc.lambda_target.spec, source_lambda.spec.moduli);
  GroupElement z = zero(enc.source.spec());

  LabelledGraph t(spec);
  for (int v = 0; v < enc.target.vertex_count(); ++v)
    t.add_vertex(enc.target.vertex_name(v), enc.target.is_terminal(v));
  for (const Edge& e : enc.target.edges()) {
    const GroupElement& tail =
        enc.edge_map[e.id] >= 0 ? enc.source.edge(enc.edge_map[e.id]).label : z;
    t.add_edge(e.u, e.v, extend_elem(e.label, tail));
  }

  std::vector<GroupElement> lam;
  for (const auto& x : enc.lambda_target.elements)
    for (const auto& s : source_lambda.elements) lam.push_back(extend_elem(x, s));
  return Encoding{enc.source,
                  enc.constraint + ", gamma-length in Lambda",
                  std::move(t),
                  make_lambda(spec, lam),
                  enc.vertex_map,
                  enc.edge_map};
}

Encoding with_modular(const Encoding& enc, int m, const std::vector<int>& residues) {
  if (m < 1) throw ValidationError("length modulus must be >= 1, got " + std::to_string(m));
  std::vector<int> extra = m == 1 ? std::vector<int>{} : std::vector<int>{m};
  GroupSpec spec = extend_spec(enc.lambda_target.spec, extra);

  LabelledGraph t(spec);
  for (int v = 0; v < enc.target.vertex_count(); ++v)
    t.add_vertex(enc.target.vertex_name(v), enc.target.is_terminal(v));
  for (const Edge& e : enc.target.edges()) {
    GroupElement tail;
    if (m > 1) tail.push_back(enc.edge_map[e.id] >= 0 ? 1 : 0);
    t.add_edge(e.u, e.v, extend_elem(e.label, tail));
  }

  std::vector<GroupElement> lam;
  for (const auto& x : enc.lambda_target.elements)
    for (int r : residues) {
      GroupElement tail;
      if (m > 1) tail.push_back(((r % m) + m) % m);
      lam.push_back(extend_elem(x, tail));
    }
  return Encoding{enc.source,
                  enc.constraint + ", edge count mod " + std::to_string(m) + " in " +
                      fmt_ints(residues),
                  std::move(t),
                  make_lambda(spec, lam),
                  enc.vertex_map,
                  enc.edge_map};
}

}  // namespace eposa
