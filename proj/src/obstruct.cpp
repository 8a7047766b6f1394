#include "eposa/obstruct.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eposa {

namespace {

// ---------------------------------------------------------------------------
// Group-element indexing (mixed radix over the moduli) for dense state tables.

struct GammaIndex {
  std::vector<int> moduli;
  std::vector<long long> stride;
  long long size = 1;

  explicit GammaIndex(const GroupSpec& spec) : moduli(spec.moduli) {
    stride.assign(moduli.size(), 1);
    for (int i = (int)moduli.size() - 1; i >= 0; --i) {
      stride[i] = size;
      size *= moduli[i];
    }
  }
  long long idx(const GroupElement& x) const {
    long long s = 0;
    for (size_t i = 0; i < moduli.size(); ++i) s += stride[i] * x[i];
    return s;
  }
  long long add(long long a, long long b) const {
    long long s = 0;
    for (size_t i = 0; i < moduli.size(); ++i) {
      long long xa = a / stride[i] % moduli[i];
      long long xb = b / stride[i] % moduli[i];
      s += stride[i] * ((xa + xb) % moduli[i]);
    }
    return s;
  }
};

// ---------------------------------------------------------------------------
// Spot allocation along a column boundary.

// Degree-2 attachment candidates: the outermost file of the column, corners
// excluded, in boundary order.
std::vector<int> spot_pool(const Wall& w, int col) {
  int file = col == 1 ? 1 : 2 * w.c;
  std::vector<int> pool;
  for (int vid : w.boundary) {
    if (w.coord[vid].first != file) continue;
    if (vid == w.v11 || vid == w.v1r || vid == w.vcr || vid == w.vc1) continue;
    pool.push_back(vid);
  }
  return pool;
}

// Evenly spaced zones: stride 2 inside a zone, a 3-slot gap between zones,
// one slot of margin at each end.
std::vector<std::vector<int>> allocate_zones(const std::vector<int>& pool,
                                             const std::vector<int>& sizes) {
  std::vector<std::vector<int>> zones;
  size_t at = 1;
  for (size_t z = 0; z < sizes.size(); ++z) {
    if (z > 0) at += 3;
    std::vector<int> spots;
    for (int i = 0; i < sizes[z]; ++i) {
      if (at >= pool.size()) throw ValidationError("wall too small for the handle layout");
      spots.push_back(pool[at]);
      at += 2;
    }
    at -= 1;  // one past the last used slot
    zones.push_back(std::move(spots));
  }
  return zones;
}

int pool_need(const std::vector<int>& sizes) {
  int need = 3;
  for (size_t z = 0; z < sizes.size(); ++z) need += 2 * sizes[z] - 1 + (z > 0 ? 3 : 0);
  return need;
}

std::vector<std::pair<int, int>> pair_spots(const std::vector<int>& s, BarKind kind) {
  int n = (int)s.size() / 2;
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    switch (kind) {
      case BarKind::series: out.push_back({s[2 * i], s[2 * i + 1]}); break;
      case BarKind::nested: out.push_back({s[i], s[2 * n - 1 - i]}); break;
      case BarKind::crossing: out.push_back({s[i], s[n + i]}); break;
    }
  }
  return out;
}

struct PPlanIn {
  GroupElement gamma;
  BarKind kind;
  int n;
};
struct QPlanIn {
  GroupElement gamma;
  int n;
};

// Shared layout: zones on column 1 are, bottom to top, Q_1 then P_1..P_m;
// in disjoint mode Q_2 sits on column c.  Handles are single labelled edges
// on degree-2 boundary spots, so the wall itself stays elementary.
RibbonedWall assemble(const GroupSpec& spec, int k, QMode mode, const std::vector<PPlanIn>& bars,
                      const QPlanIn& q1p, const QPlanIn& q2p, int min_c) {
  int c = std::max(3, min_c);
  std::vector<int> sizes;
  sizes.push_back(q1p.n);
  for (const auto& b : bars) sizes.push_back(2 * b.n);
  int need1 = pool_need(sizes);
  int needc = mode == QMode::disjoint ? pool_need({q2p.n}) : 0;
  int r = std::max({need1 + 4, needc + 4, c, 7});
  if (r % 2 == 0) ++r;

  RibbonedWall out;
  out.wall = elementary_wall(c, r, spec);
  out.graph = out.wall.graph;
  out.wall_edge_count = out.wall.graph.edge_count();
  out.k = k;
  out.q_mode = mode;

  auto zones = allocate_zones(spot_pool(out.wall, 1), sizes);
  for (size_t b = 0; b < bars.size(); ++b) {
    PBar bar;
    bar.kind = bars[b].kind;
    bar.gamma = bars[b].gamma;
    for (auto [u, v] : pair_spots(zones[b + 1], bars[b].kind)) {
      if (out.wall.boundary_pos[u] > out.wall.boundary_pos[v]) std::swap(u, v);
      HandleRef h;
      h.spot_u = u;
      h.spot_v = v;
      h.edge_id = out.graph.add_edge(u, v, bars[b].gamma);
      bar.handles.push_back(h);
    }
    out.pbars.push_back(std::move(bar));
  }

  auto add_q = [&](const QPlanIn& qp, const std::vector<int>& spots, const std::string& tag) {
    QBar q;
    q.gamma = qp.gamma;
    for (size_t i = 0; i < spots.size(); ++i) {
      QHandleRef h;
      h.terminal = out.graph.add_vertex("a_" + tag + "_" + std::to_string(i), true);
      h.spot = spots[i];
      h.edge_id = out.graph.add_edge(h.terminal, h.spot, qp.gamma);
      q.handles.push_back(h);
    }
    return q;
  };
  out.q1 = add_q(q1p, zones[0], "q1");
  if (mode == QMode::disjoint) {
    auto zc = allocate_zones(spot_pool(out.wall, c), {q2p.n});
    out.q2 = add_q(q2p, zc[0], "q2");
  } else {
    out.q2 = out.q1;
  }
  return out;
}

void check_spec_match(const GroupSpec& a, const GroupSpec& b) {
  if (a != b) throw ValidationError("group mismatch between instance and lambda");
}

}  // namespace

// ---------------------------------------------------------------------------
// Generators.

RibbonedWall gen_fig1a(const GroupSpec& spec, const GroupElement& a, const GroupElement& b,
                       const GroupElement& c, int n, const LambdaSet& lambda) {
  if (n < 2) throw ValidationError("gen_fig1a needs n >= 2");
  check_spec_match(spec, lambda.spec);
  int k = n / 2;
  return assemble(spec, k, QMode::disjoint, {{c, BarKind::series, n}}, {a, n}, {b, n},
                  std::max(3, 3 * n));
}

RibbonedWall gen_fig1b(const GroupSpec& spec, const GroupElement& a, const GroupElement& b,
                       const GroupElement& c, int n, const LambdaSet& lambda) {
  if (n < 2) throw ValidationError("gen_fig1b needs n >= 2");
  check_spec_match(spec, lambda.spec);
  int k = (n + 1) / 2;
  return assemble(spec, k, QMode::equal,
                  {{b, BarKind::series, n}, {c, BarKind::series, n}}, {a, n + 1}, {a, 0},
                  std::max(3, 3 * n));
}

RibbonedWall gen_from_params(const ObstructionParams& params, int k, const LambdaSet& lambda,
                             int order_slack) {
  if (k < 1) throw ValidationError("gen_from_params needs k >= 1");
  if (params.m < 1 || (int)params.g.size() != params.m ||
      (int)params.kinds.size() != params.m)
    throw ValidationError("inconsistent parameter tuple");
  if (params.q_mode == QMode::equal && params.h1 != params.h2)
    throw ValidationError("equal terminal bars need matching labels");
  if (order_slack < 0) throw ValidationError("order slack must be nonnegative");
  const GroupSpec& spec = lambda.spec;
  std::vector<PPlanIn> bars;
  for (int i = 0; i < params.m; ++i) bars.push_back({params.g[i], params.kinds[i], k});
  return assemble(spec, k, params.q_mode, bars, {params.h1, 2 * k}, {params.h2, 2 * k},
                  k * (params.m + 2) + order_slack);
}

// ---------------------------------------------------------------------------
// Condition checks.

bool strongly_balanced(const RibbonedWall& r) {
  // Spanning-tree potentials over the bare wall.  Every wall vertex is a
  // nail, so the nail-pair condition (all tree paths of length zero in the
  // group) is equivalent to all potentials collapsing to the root's zero;
  // non-tree edges contribute the usual cycle-closure test.
  const GroupSpec& spec = r.graph.spec();
  int n = r.wall.graph.vertex_count();
  if (n == 0) return true;
  std::vector<GroupElement> pot(n, zero(spec));
  std::vector<int> parent(n, -2), parent_edge(n, -1), depth(n, 0);
  std::queue<int> bfs;
  bfs.push(0);
  parent[0] = -1;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (auto [w, eid] : r.graph.incident(v)) {
      if (eid >= r.wall_edge_count || w >= n || parent[w] != -2) continue;
      parent[w] = v;
      parent_edge[w] = eid;
      depth[w] = depth[v] + 1;
      pot[w] = add(spec, pot[v], r.graph.edge(eid).label);
      bfs.push(w);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (parent[v] == -2) return false;  // disconnected wall part
    if (!is_zero(pot[v])) return false;
  }
  for (int eid = 0; eid < r.wall_edge_count; ++eid) {
    const Edge& e = r.graph.edge(eid);
    if (parent_edge[e.u] == eid || parent_edge[e.v] == eid) continue;
    int u = e.u, v = e.v;
    // walk to the lca; with all potentials zero the closure reduces to the
    // edge's own label, but compute it honestly
    int a = u, b = v;
    while (depth[a] > depth[b]) a = parent[a];
    while (depth[b] > depth[a]) b = parent[b];
    while (a != b) {
      a = parent[a];
      b = parent[b];
    }
    GroupElement closure = add(spec, e.label,
                               add(spec, sub(spec, pot[u], pot[a]), sub(spec, pot[v], pot[a])));
    if (!is_zero(closure)) return false;
  }
  return true;
}

namespace {

bool constant_bar_labels(const RibbonedWall& r) {
  for (const auto& bar : r.pbars) {
    if (bar.handles.empty()) return false;
    for (const auto& h : bar.handles)
      if (r.graph.edge(h.edge_id).label != bar.gamma) return false;
  }
  for (const QBar* q : {&r.q1, &r.q2}) {
    for (const auto& h : q->handles)
      if (r.graph.edge(h.edge_id).label != q->gamma) return false;
  }
  return true;
}

// column of an attachment spot: 1, c, or 0 for anything else
int spot_column(const RibbonedWall& r, int vid) {
  if (vid >= (int)r.wall.coord.size()) return 0;
  int file = r.wall.coord[vid].first;
  if (file <= 2) return 1;
  if (file >= 2 * r.wall.c - 1) return r.wall.c;
  return 0;
}

bool cond_a1_instance(const RibbonedWall& r) {
  int k = r.k;
  for (const auto& bar : r.pbars)
    if ((int)bar.handles.size() < k) return false;
  if ((int)r.q1.handles.size() < 2 * k || (int)r.q2.handles.size() < 2 * k) return false;

  auto same_q = [&] {
    if (r.q1.handles.size() != r.q2.handles.size()) return false;
    for (size_t i = 0; i < r.q1.handles.size(); ++i)
      if (r.q1.handles[i].edge_id != r.q2.handles[i].edge_id) return false;
    return true;
  };
  if (r.q_mode == QMode::equal) {
    if (!same_q()) return false;
  } else if (same_q() && !r.q1.handles.empty()) {
    return false;  // declared disjoint but the bars coincide
  }

  // vertex sets of the units: each P_i, and Q_1 with Q_2 as one unit
  std::vector<std::set<int>> units;
  for (const auto& bar : r.pbars) {
    std::set<int> s;
    for (const auto& h : bar.handles) {
      s.insert(h.spot_u);
      s.insert(h.spot_v);
    }
    if (2 * bar.handles.size() != s.size()) return false;  // shared spot inside a bar
    units.push_back(std::move(s));
  }
  std::set<int> qunit;
  for (const QBar* q : {&r.q1, &r.q2})
    for (const auto& h : q->handles) {
      qunit.insert(h.spot);
      qunit.insert(h.terminal);
    }
  if (r.q_mode == QMode::disjoint) {
    std::set<int> s1, s2;
    for (const auto& h : r.q1.handles) {
      s1.insert(h.spot);
      s1.insert(h.terminal);
    }
    for (const auto& h : r.q2.handles) {
      s2.insert(h.spot);
      s2.insert(h.terminal);
    }
    for (int v : s1)
      if (s2.count(v)) return false;
  }
  units.push_back(qunit);
  for (size_t i = 0; i < units.size(); ++i)
    for (size_t j = i + 1; j < units.size(); ++j)
      for (int v : units[i])
        if (units[j].count(v)) return false;

  // non-mixing: per column, the position hulls of the units must be disjoint
  auto hulls = [&](const std::set<int>& unit) {
    std::map<int, std::pair<int, int>> by_col;
    for (int v : unit) {
      if (v >= (int)r.wall.boundary_pos.size()) continue;  // terminal
      int pos = r.wall.boundary_pos[v];
      if (pos < 0) return std::map<int, std::pair<int, int>>{{-1, {0, 0}}};  // off boundary
      int col = spot_column(r, v);
      auto it = by_col.find(col);
      if (it == by_col.end())
        by_col[col] = {pos, pos};
      else {
        it->second.first = std::min(it->second.first, pos);
        it->second.second = std::max(it->second.second, pos);
      }
    }
    return by_col;
  };
  std::vector<std::map<int, std::pair<int, int>>> hull_of;
  for (const auto& u : units) {
    auto h = hulls(u);
    if (h.count(-1)) return false;
    hull_of.push_back(std::move(h));
  }
  for (size_t i = 0; i < hull_of.size(); ++i)
    for (size_t j = i + 1; j < hull_of.size(); ++j)
      for (const auto& [col, iv] : hull_of[i]) {
        auto it = hull_of[j].find(col);
        if (it == hull_of[j].end()) continue;
        if (iv.first <= it->second.second && it->second.first <= iv.second) return false;
      }
  return true;
}

}  // namespace

ConditionFlags check_conditions(const RibbonedWall& r, const LambdaSet& lambda) {
  check_spec_match(r.graph.spec(), lambda.spec);
  const GroupSpec& spec = r.graph.spec();
  ConditionFlags f;
  f.a1 = cond_a1_instance(r);
  f.a2 = strongly_balanced(r) && constant_bar_labels(r);
  std::vector<GroupElement> g;
  std::vector<BarKind> kinds;
  for (const auto& bar : r.pbars) {
    g.push_back(bar.gamma);
    kinds.push_back(bar.kind);
  }
  f.a3 = cond_a3(spec, lambda, g, r.q1.gamma, r.q2.gamma);
  f.a4 = cond_a4(spec, lambda, g, r.q1.gamma, r.q2.gamma);
  f.a5 = cond_a5(spec, lambda, g, kinds, r.q1.gamma, r.q2.gamma);
  f.a6 = cond_a6(kinds);
  f.a7 = cond_a7(spec, lambda, g, r.q1.gamma, r.q2.gamma);
  f.irreducible = f.a1 && f.a2 && f.a3 && f.a4 && f.a5;
  f.obstruction = f.irreducible && f.a6 && f.a7;
  return f;
}

bool is_minimally_allowable(const RibbonedWall& r, const ApPath& p) {
  make_appath(r.graph, p.vertices, p.edge_ids);  // validates, throws on junk
  std::map<int, int> bar_of;                     // edge id -> bar index; q1 = -1, q2 = -2
  for (size_t i = 0; i < r.pbars.size(); ++i)
    for (const auto& h : r.pbars[i].handles) bar_of[h.edge_id] = (int)i;
  for (const auto& h : r.q1.handles) bar_of[h.edge_id] = -1;
  if (r.q_mode == QMode::disjoint)
    for (const auto& h : r.q2.handles) bar_of[h.edge_id] = -2;
  std::map<int, int> count;
  for (int eid : p.edge_ids) {
    auto it = bar_of.find(eid);
    if (it != bar_of.end()) ++count[it->second];
  }
  for (size_t i = 0; i < r.pbars.size(); ++i)
    if (count[(int)i] != 1) return false;
  if (r.q_mode == QMode::equal) return count[-1] == 2;
  return count[-1] == 1 && count[-2] == 1;
}

// ---------------------------------------------------------------------------
// Text form: the plain graph plus `#!ribbon` sidecar lines.

std::string serialize_ribboned(const RibbonedWall& r) {
  const GroupSpec& spec = r.graph.spec();
  std::ostringstream out;
  out << serialize_lgraph(r.graph);
  out << "#!ribbon wall " << r.wall.c << " " << r.wall.r << " " << r.wall_edge_count << "\n";
  out << "#!ribbon meta k " << r.k << " qmode "
      << (r.q_mode == QMode::equal ? "equal" : "disjoint") << "\n";
  for (const auto& bar : r.pbars) {
    out << "#!ribbon pbar " << bar_kind_name(bar.kind) << " " << format_element(spec, bar.gamma);
    for (const auto& h : bar.handles) out << " " << h.edge_id;
    out << "\n";
  }
  for (const auto& [name, q] : {std::pair<const char*, const QBar*>{"q1", &r.q1},
                                std::pair<const char*, const QBar*>{"q2", &r.q2}}) {
    out << "#!ribbon " << name << " " << format_element(spec, q->gamma);
    for (const auto& h : q->handles) out << " " << h.edge_id;
    out << "\n";
  }
  return out.str();
}

RibbonedWall parse_ribboned(const std::string& text) {
  RibbonedWall r;
  r.graph = parse_lgraph(text);
  const GroupSpec& spec = r.graph.spec();

  int wall_c = -1, wall_r = -1, wall_edges = -1;
  bool have_meta = false;
  std::vector<std::vector<std::string>> bar_lines;
  std::optional<std::vector<std::string>> q1_line, q2_line;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("#!ribbon", 0) != 0) continue;
    std::istringstream ls(line.substr(8));
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) throw ValidationError("empty #!ribbon line");
    if (tok[0] == "wall") {
      if (tok.size() != 4) throw ValidationError("bad #!ribbon wall line");
      wall_c = std::stoi(tok[1]);
      wall_r = std::stoi(tok[2]);
      wall_edges = std::stoi(tok[3]);
    } else if (tok[0] == "meta") {
      if (tok.size() != 5 || tok[1] != "k" || tok[3] != "qmode")
        throw ValidationError("bad #!ribbon meta line");
      r.k = std::stoi(tok[2]);
      if (tok[4] == "equal")
        r.q_mode = QMode::equal;
      else if (tok[4] == "disjoint")
        r.q_mode = QMode::disjoint;
      else
        throw ValidationError("bad qmode '" + tok[4] + "'");
      have_meta = true;
    } else if (tok[0] == "pbar") {
      bar_lines.push_back(tok);
    } else if (tok[0] == "q1" || tok[0] == "q2") {
      if (tok.size() < 2) throw ValidationError("bad #!ribbon q line");
      auto& slot = tok[0] == "q1" ? q1_line : q2_line;
      if (slot) throw ValidationError("duplicate #!ribbon " + tok[0] + " line");
      slot = tok;
    } else {
      throw ValidationError("unknown #!ribbon directive '" + tok[0] + "'");
    }
  }
  if (wall_c < 0 || !have_meta || !q1_line || !q2_line)
    throw ValidationError("incomplete #!ribbon sidecar");
  if (r.k < 1) throw ValidationError("ribbon k must be positive");

  // Rebuild the wall geometry and confirm the graph really starts with it.
  r.wall = elementary_wall(wall_c, wall_r, spec);
  r.wall_edge_count = r.wall.graph.edge_count();
  if (wall_edges != r.wall_edge_count)
    throw ValidationError("#!ribbon wall edge count does not match the geometry");
  if (r.wall.graph.vertex_count() > r.graph.vertex_count() ||
      r.wall_edge_count > r.graph.edge_count())
    throw ValidationError("graph smaller than the declared wall");
  for (int v = 0; v < r.wall.graph.vertex_count(); ++v)
    if (r.wall.graph.vertex_name(v) != r.graph.vertex_name(v))
      throw ValidationError("graph vertices do not match the declared wall");
  for (int e = 0; e < r.wall_edge_count; ++e) {
    const Edge& a = r.wall.graph.edge(e);
    const Edge& b = r.graph.edge(e);
    if (std::minmax(a.u, a.v) != std::minmax(b.u, b.v))
      throw ValidationError("graph edges do not match the declared wall");
  }

  auto parse_edge_ids = [&](const std::vector<std::string>& tok, size_t from) {
    std::vector<int> ids;
    for (size_t i = from; i < tok.size(); ++i) {
      int id = std::stoi(tok[i]);
      if (id < r.wall_edge_count || id >= r.graph.edge_count())
        throw ValidationError("handle edge id out of range");
      ids.push_back(id);
    }
    return ids;
  };

  for (const auto& tok : bar_lines) {
    if (tok.size() < 4) throw ValidationError("bad #!ribbon pbar line");
    PBar bar;
    bar.kind = parse_bar_kind(tok[1]);
    bar.gamma = parse_element(spec, tok[2]);
    for (int id : parse_edge_ids(tok, 3)) {
      const Edge& e = r.graph.edge(id);
      if (e.label != bar.gamma) throw ValidationError("pbar edge label differs from bar label");
      int u = e.u, v = e.v;
      if (u >= (int)r.wall.boundary_pos.size() || v >= (int)r.wall.boundary_pos.size() ||
          r.wall.boundary_pos[u] < 0 || r.wall.boundary_pos[v] < 0)
        throw ValidationError("pbar handle must join two boundary spots");
      if (r.wall.boundary_pos[u] > r.wall.boundary_pos[v]) std::swap(u, v);
      bar.handles.push_back({id, u, v});
    }
    if (bar.handles.empty()) throw ValidationError("empty pbar");
    r.pbars.push_back(std::move(bar));
  }

  auto parse_q = [&](const std::vector<std::string>& tok) {
    QBar q;
    q.gamma = parse_element(spec, tok[1]);
    for (int id : parse_edge_ids(tok, 2)) {
      const Edge& e = r.graph.edge(id);
      if (e.label != q.gamma) throw ValidationError("q edge label differs from bar label");
      int term = -1, spot = -1;
      if (r.graph.is_terminal(e.u) && !r.graph.is_terminal(e.v)) {
        term = e.u;
        spot = e.v;
      } else if (r.graph.is_terminal(e.v) && !r.graph.is_terminal(e.u)) {
        term = e.v;
        spot = e.u;
      } else {
        throw ValidationError("q handle must join a terminal to a wall spot");
      }
      if (spot >= (int)r.wall.boundary_pos.size() || r.wall.boundary_pos[spot] < 0)
        throw ValidationError("q handle must attach on the wall boundary");
      q.handles.push_back({id, term, spot});
    }
    return q;
  };
  r.q1 = parse_q(*q1_line);
  r.q2 = parse_q(*q2_line);
  if (r.q_mode == QMode::equal) {
    bool same = r.q1.handles.size() == r.q2.handles.size();
    for (size_t i = 0; same && i < r.q1.handles.size(); ++i)
      same = r.q1.handles[i].edge_id == r.q2.handles[i].edge_id;
    if (!same) throw ValidationError("equal qmode but q1 and q2 differ");
  }
  if (r.wall.order() < r.k * (r.m() + 2))
    throw ValidationError("wall order below k(m+2)");
  return r;
}

// ---------------------------------------------------------------------------
// Solver.

namespace {

constexpr long long kOracleBudget = 200'000;
constexpr size_t kPatternCap = 120000;

struct QInfo {
  int edge_id, terminal, spot, pos;
  GroupElement gamma;
};
struct EarInfo {
  int edge_id, lo, hi, plo, phi;
};
struct EarStep {
  int bar, idx;
  bool enter_hi;
};
struct PathPlan {
  int qa, qb;  // indices into SolveCtx::q; the path starts at qa's terminal
  std::vector<EarStep> ears;
};

struct SolveCtx {
  const RibbonedWall* r;
  const LambdaSet* lambda;
  GammaIndex gi;
  std::vector<QInfo> q;  // q1 sorted by pos, then (disjoint mode) q2 sorted by pos
  int nq1 = 0;
  std::vector<std::vector<EarInfo>> ears;  // per bar, sorted by plo
  int total_ears = 0;
  std::vector<char> reserved;  // attachment spots of every handle
  std::vector<char> accept;    // gamma index lies in lambda
  bool labels_uniform = false;

  const GroupSpec& spec() const { return r->graph.spec(); }
};

SolveCtx build_ctx(const RibbonedWall& r, const LambdaSet& lambda) {
  check_spec_match(r.graph.spec(), lambda.spec);
  SolveCtx ctx{&r, &lambda, GammaIndex(r.graph.spec())};
  auto pos_of = [&](int vid) {
    if (vid >= (int)r.wall.boundary_pos.size() || r.wall.boundary_pos[vid] < 0)
      throw ValidationError("handle attachment off the wall boundary");
    return r.wall.boundary_pos[vid];
  };
  auto add_q = [&](const QBar& qb) {
    for (const auto& h : qb.handles)
      ctx.q.push_back({h.edge_id, h.terminal, h.spot, pos_of(h.spot),
                       r.graph.edge(h.edge_id).label});
  };
  add_q(r.q1);
  std::sort(ctx.q.begin(), ctx.q.end(), [](const QInfo& a, const QInfo& b) { return a.pos < b.pos; });
  ctx.nq1 = (int)ctx.q.size();
  if (r.q_mode == QMode::disjoint) {
    std::vector<QInfo> q2;
    std::swap(q2, ctx.q);
    add_q(r.q2);
    std::sort(ctx.q.begin(), ctx.q.end(),
              [](const QInfo& a, const QInfo& b) { return a.pos < b.pos; });
    q2.insert(q2.end(), ctx.q.begin(), ctx.q.end());
    ctx.q = std::move(q2);
  }
  for (const auto& bar : r.pbars) {
    std::vector<EarInfo> es;
    for (const auto& h : bar.handles)
      es.push_back({h.edge_id, h.spot_u, h.spot_v, pos_of(h.spot_u), pos_of(h.spot_v)});
    std::sort(es.begin(), es.end(), [](const EarInfo& a, const EarInfo& b) { return a.plo < b.plo; });
    ctx.total_ears += (int)es.size();
    ctx.ears.push_back(std::move(es));
  }
  ctx.reserved.assign(r.graph.vertex_count(), 0);
  for (const auto& q : ctx.q) ctx.reserved[q.spot] = 1;
  for (const auto& es : ctx.ears)
    for (const auto& e : es) ctx.reserved[e.lo] = ctx.reserved[e.hi] = 1;
  ctx.accept.assign(ctx.gi.size, 0);
  for (const auto& x : lambda.elements) ctx.accept[ctx.gi.idx(x)] = 1;
  bool uniform = constant_bar_labels(r);
  for (int e = 0; uniform && e < r.wall_edge_count; ++e)
    uniform = is_zero(r.graph.edge(e).label);
  ctx.labels_uniform = uniform;
  return ctx;
}

// ---- boundary-chord patterns -----------------------------------------------

bool chords_interleave(std::pair<int, int> a, std::pair<int, int> b) {
  if (a.first > b.first) std::swap(a, b);
  return b.first < a.second && a.second < b.second;
}

struct Pattern {
  PathPlan plan;
  std::uint64_t mask = 0;  // bit per q handle, then per ear (global order)
  std::vector<std::pair<int, int>> chords;
};

// Every allowable A-path through the wall visits a q handle, an ordered
// sequence of distinct ears, and a final q handle; its wall segments are
// vertex-disjoint curves, so they form non-interleaving boundary chords.
// Enumerating all such abstract patterns with allowable gamma is therefore a
// complete relaxation of the allowable-path family (A2 makes the wall
// contribute nothing to gamma).  Returned sorted by ear count.
std::optional<std::vector<Pattern>> enumerate_patterns(const SolveCtx& ctx) {
  if (!ctx.labels_uniform) return std::nullopt;
  if (ctx.total_ears > 6 || (int)ctx.q.size() > 12) return std::nullopt;
  const GroupSpec& spec = ctx.spec();
  std::vector<Pattern> out;
  std::vector<std::pair<int, int>> ear_list;  // (bar, idx) in global order
  for (size_t b = 0; b < ctx.ears.size(); ++b)
    for (size_t i = 0; i < ctx.ears[b].size(); ++i) ear_list.push_back({(int)b, (int)i});

  std::vector<std::pair<int, int>> chords;
  std::vector<EarStep> steps;
  std::uint64_t used = 0;
  bool overflow = false;

  auto norm = [](int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
  auto compatible = [&](std::pair<int, int> c) {
    for (const auto& d : chords)
      if (chords_interleave(c, d)) return false;
    return true;
  };

  std::function<void(int, int, GroupElement, std::uint64_t)> rec =
      [&](int qa, int qb, GroupElement gamma, std::uint64_t qmask) {
        if (overflow) return;
        int cur = steps.empty() ? ctx.q[qa].pos
                                : (steps.back().enter_hi
                                       ? ctx.ears[steps.back().bar][steps.back().idx].plo
                                       : ctx.ears[steps.back().bar][steps.back().idx].phi);
        // close the pattern at qb
        auto closing = norm(cur, ctx.q[qb].pos);
        if (compatible(closing) && ctx.accept[ctx.gi.idx(gamma)]) {
          Pattern p;
          p.plan = {qa, qb, steps};
          p.mask = qmask | used << ctx.q.size();
          p.chords = chords;
          p.chords.push_back(closing);
          out.push_back(std::move(p));
          if (out.size() > kPatternCap) overflow = true;
        }
        // extend with one more ear
        for (size_t ei = 0; ei < ear_list.size(); ++ei) {
          if (used >> ei & 1) continue;
          auto [b, i] = ear_list[ei];
          const EarInfo& e = ctx.ears[b][i];
          for (bool enter_hi : {false, true}) {
            auto c = norm(cur, enter_hi ? e.phi : e.plo);
            if (!compatible(c)) continue;
            chords.push_back(c);
            steps.push_back({b, i, enter_hi});
            used |= 1ull << ei;
            rec(qa, qb, add(spec, gamma, ctx.r->pbars[b].gamma), qmask);
            used &= ~(1ull << ei);
            steps.pop_back();
            chords.pop_back();
          }
        }
      };

  for (int qa = 0; qa < (int)ctx.q.size(); ++qa)
    for (int qb = qa + 1; qb < (int)ctx.q.size(); ++qb) {
      GroupElement g0 = add(spec, ctx.q[qa].gamma, ctx.q[qb].gamma);
      rec(qa, qb, g0, (1ull << qa) | (1ull << qb));
      if (overflow) return std::nullopt;
    }
  std::sort(out.begin(), out.end(), [](const Pattern& a, const Pattern& b) {
    if (a.plan.ears.size() != b.plan.ears.size()) return a.plan.ears.size() < b.plan.ears.size();
    if (a.plan.qa != b.plan.qa) return a.plan.qa < b.plan.qa;
    return a.plan.qb < b.plan.qb;
  });
  return out;
}

// Two vertex-disjoint allowable paths induce patterns on disjoint handle
// sets with mutually non-interleaving chords, so "no compatible pair" is a
// sound certificate for nu <= 1.
bool compatible_pair_exists(const std::vector<Pattern>& pats) {
  for (size_t i = 0; i < pats.size(); ++i)
    for (size_t j = i + 1; j < pats.size(); ++j) {
      if (pats[i].mask & pats[j].mask) continue;
      bool ok = true;
      for (const auto& a : pats[i].chords) {
        for (const auto& b : pats[j].chords)
          if (chords_interleave(a, b)) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      if (ok) return true;
    }
  return false;
}

// ---- witness router ---------------------------------------------------------

// Cheapest route inside the bare wall between two boundary spots, avoiding
// reserved attachment spots (other than the segment's own endpoints) and
// vertices already used by the same path.  Already occupied vertices cost
// extra so parallel tracks spread out instead of saturating one corridor.
// In soft mode vertices at capacity stay open at a prohibitive surcharge
// (plus the caller's accumulated congestion history), which lets an
// iterative negotiation discover which corridors must be kept clear; in
// hard mode they are simply closed.
std::optional<std::pair<std::vector<int>, std::vector<int>>> wall_route(
    const SolveCtx& ctx, int from, int to, const std::vector<int>& usage, int cap,
    const std::vector<char>& local, const std::vector<int>* hist = nullptr,
    bool soft = false) {
  const LabelledGraph& g = ctx.r->graph;
  int wall_v = ctx.r->wall.graph.vertex_count();
  auto allowed = [&](int v) {
    if (v >= wall_v) return false;
    if (v == from || v == to) return true;
    if (ctx.reserved[v] || local[v]) return false;
    return soft || usage[v] < cap;
  };
  if (!allowed(from) || usage[from] >= cap || usage[to] >= cap) return std::nullopt;
  std::vector<int> pv(wall_v, -2), pe(wall_v, -1), dist(wall_v, -1);
  std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>> pq;
  dist[from] = 0;
  pv[from] = -1;
  pq.push({0, from});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d != dist[v]) continue;
    if (v == to) break;
    for (auto [w, eid] : g.incident(v)) {
      if (eid >= ctx.r->wall_edge_count || !allowed(w)) continue;
      int nd = d + 1 + 6 * usage[w];
      if (hist) nd += (*hist)[w];
      if (soft && usage[w] >= cap) nd += 800 * (usage[w] - cap + 1);
      if (dist[w] >= 0 && dist[w] <= nd) continue;
      dist[w] = nd;
      pv[w] = v;
      pe[w] = eid;
      pq.push({nd, w});
    }
  }
  if (pv[to] == -2) return std::nullopt;
  std::vector<int> verts, edges;
  for (int v = to; v != -1; v = pv[v]) {
    verts.push_back(v);
    if (pe[v] >= 0) edges.push_back(pe[v]);
  }
  std::reverse(verts.begin(), verts.end());
  std::reverse(edges.begin(), edges.end());
  return std::make_pair(std::move(verts), std::move(edges));
}

// Route one planned path; inner (short-span) segments first.  On success the
// verified path is returned and its vertices are committed to `usage`.
std::optional<ApPath> route_path(const SolveCtx& ctx, const PathPlan& plan,
                                 std::vector<int>& usage, int cap,
                                 const std::vector<int>* hist = nullptr, bool soft = false) {
  const LabelledGraph& g = ctx.r->graph;
  const QInfo& A = ctx.q[plan.qa];
  const QInfo& B = ctx.q[plan.qb];
  if (usage[A.terminal] >= cap || usage[B.terminal] >= cap) return std::nullopt;

  struct Seg {
    int from, to, span;
  };
  std::vector<Seg> segs;
  std::vector<int> joins;  // ear edge ids between consecutive segments
  int cur = A.spot, cur_pos = A.pos;
  for (const auto& st : plan.ears) {
    const EarInfo& e = ctx.ears[st.bar][st.idx];
    int entry = st.enter_hi ? e.hi : e.lo;
    int entry_pos = st.enter_hi ? e.phi : e.plo;
    segs.push_back({cur, entry, std::abs(cur_pos - entry_pos)});
    joins.push_back(e.edge_id);
    cur = st.enter_hi ? e.lo : e.hi;
    cur_pos = st.enter_hi ? e.plo : e.phi;
  }
  segs.push_back({cur, B.spot, std::abs(cur_pos - B.pos)});

  std::vector<char> local(g.vertex_count(), 0);
  for (const auto& s : segs) local[s.from] = local[s.to] = 1;
  std::vector<int> order(segs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return segs[a].span != segs[b].span ? segs[a].span < segs[b].span
                                                                    : a < b; });
  std::vector<std::pair<std::vector<int>, std::vector<int>>> routed(segs.size());
  for (int i : order) {
    auto got = wall_route(ctx, segs[i].from, segs[i].to, usage, cap, local, hist, soft);
    if (!got) return std::nullopt;
    for (int v : got->first) local[v] = 1;
    routed[i] = std::move(*got);
  }

  std::vector<int> verts{A.terminal};
  std::vector<int> edges{A.edge_id};
  for (size_t i = 0; i < segs.size(); ++i) {
    verts.insert(verts.end(), routed[i].first.begin(), routed[i].first.end());
    edges.insert(edges.end(), routed[i].second.begin(), routed[i].second.end());
    if (i + 1 < segs.size()) edges.push_back(joins[i]);
  }
  verts.push_back(B.terminal);
  edges.push_back(B.edge_id);

  ApPath p = make_appath(g, verts, edges);
  if (!is_allowable(g, p, *ctx.lambda)) return std::nullopt;
  for (int v : p.vertices) ++usage[v];
  return p;
}

// Route a plan set under the shared vertex capacity.  Greedy sequential
// routing wedges when early tracks cut later spots off, so negotiate:
// soft rounds let tracks overlap beyond the capacity at a surcharge, then
// every vertex that ended up over-subscribed gets a lasting cost bump and
// the whole set reroutes.  A round that places every plan with no vertex
// over capacity is returned as-is; if negotiation never settles, one final
// hard round (capacities enforced, history kept) preserves the greedy
// behaviour as the fallback.
std::vector<ApPath> run_attempt(const SolveCtx& ctx, const std::vector<PathPlan>& plans, int cap) {
  int n = ctx.r->graph.vertex_count();
  std::vector<int> hist(n, 0);
  std::vector<ApPath> best;
  for (int round = 0; round < 12; ++round) {
    std::vector<int> usage(n, 0);
    std::vector<ApPath> out;
    for (const auto& plan : plans) {
      auto p = route_path(ctx, plan, usage, cap, &hist, true);
      if (p) out.push_back(std::move(*p));
    }
    bool legal = true;
    for (int v = 0; v < n; ++v)
      if (usage[v] > cap) {
        legal = false;
        hist[v] += 40;
      }
    if (legal && out.size() == plans.size()) return out;
    if (legal) {
      // nothing over capacity, a plan is just unroutable; pushing costs
      // around will not change that
      if (out.size() > best.size()) best = std::move(out);
      break;
    }
  }
  std::vector<int> usage(n, 0);
  std::vector<ApPath> out;
  for (const auto& plan : plans) {
    auto p = route_path(ctx, plan, usage, cap, &hist, false);
    if (p) out.push_back(std::move(*p));
  }
  return out.size() >= best.size() ? out : best;
}

// plan builders ---------------------------------------------------------------

// Single allowable path: top pair of the terminal bar (equal) or the first
// handle of each terminal bar (disjoint), through the first ear of each bar.
std::vector<PathPlan> plan_single(const SolveCtx& ctx) {
  PathPlan p;
  if (ctx.r->q_mode == QMode::equal) {
    if (ctx.nq1 < 2) return {};
    p.qa = ctx.nq1 - 1;
    p.qb = ctx.nq1 - 2;
  } else {
    if (ctx.nq1 < 1 || (int)ctx.q.size() <= ctx.nq1) return {};
    p.qa = 0;
    p.qb = ctx.nq1;
  }
  for (size_t b = 0; b < ctx.ears.size(); ++b) {
    if (ctx.ears[b].empty()) return {};
    p.ears.push_back({(int)b, 0, false});
  }
  return {p};
}

// Equal mode, one bar: k nested tongues.  Consecutive terminal pairs take the
// ears in reverse order and enter each ear at its near endpoint, which makes
// the whole family nested; routed innermost first.
std::vector<PathPlan> plan_rainbow(const SolveCtx& ctx) {
  if (ctx.r->q_mode != QMode::equal || ctx.ears.size() != 1) return {};
  int k = std::min((int)ctx.ears[0].size(), ctx.nq1 / 2);
  std::vector<PathPlan> plans;
  for (int i = k - 1; i >= 0; --i) {
    PathPlan p;
    p.qa = 2 * i + 1;
    p.qb = 2 * i;
    p.ears.push_back({0, k - 1 - i, false});
    plans.push_back(std::move(p));
  }
  return plans;
}

// Equal mode: a cycle of tongues, each consecutive terminal pair sharing one
// handle, spreading ear load round-robin; every handle is used twice, so the
// multiset meets the terminal-counting bound exactly.
std::vector<PathPlan> plan_chain(const SolveCtx& ctx) {
  if (ctx.r->q_mode != QMode::equal || ctx.nq1 < 2) return {};
  int len = ctx.nq1;
  for (const auto& es : ctx.ears) len = std::min(len, 2 * (int)es.size());
  std::vector<PathPlan> plans;
  for (int j = 0; j < len; ++j) {
    PathPlan p;
    int a = j, b = (j + 1) % ctx.nq1;
    p.qa = std::max(a, b);
    p.qb = std::min(a, b);
    for (size_t bar = 0; bar < ctx.ears.size(); ++bar)
      p.ears.push_back({(int)bar, j % (int)ctx.ears[bar].size(), false});
    plans.push_back(std::move(p));
  }
  return plans;
}

// Disjoint mode: `per` left-right paths through each usable ear column, with
// the right-hand terminals assigned in reverse so parallel tracks nest on
// that side; the top ear routes first while the middle of the wall is clear.
std::vector<PathPlan> plan_per_ear(const SolveCtx& ctx, int per) {
  if (ctx.r->q_mode != QMode::disjoint) return {};
  int nq2 = (int)ctx.q.size() - ctx.nq1;
  int ke = ctx.nq1 / per < nq2 / per ? ctx.nq1 / per : nq2 / per;
  for (const auto& es : ctx.ears) ke = std::min(ke, (int)es.size());
  std::vector<PathPlan> plans;
  for (int j = ke - 1; j >= 0; --j)
    for (int t = 0; t < per; ++t) {
      PathPlan p;
      p.qa = per * j + t;
      p.qb = ctx.nq1 + per * (ke - 1 - j) + t;
      for (size_t bar = 0; bar < ctx.ears.size(); ++bar) p.ears.push_back({(int)bar, j, false});
      plans.push_back(std::move(p));
    }
  return plans;
}

std::vector<PathPlan> doubled(std::vector<PathPlan> plans) {
  std::vector<PathPlan> out;
  for (const auto& p : plans) {
    out.push_back(p);
    out.push_back(p);
  }
  return out;
}

// exact verification of a routed multiset: valid allowable A-paths with every
// vertex multiplicity within the capacity
void verify_multiset(const SolveCtx& ctx, const std::vector<ApPath>& paths, int cap) {
  std::map<int, int> mult;
  for (const auto& p : paths) {
    ApPath chk = make_appath(ctx.r->graph, p.vertices, p.edge_ids);
    if (!is_allowable(ctx.r->graph, chk, *ctx.lambda))
      throw std::logic_error("router produced a non-allowable path");
    for (int v : p.vertices) ++mult[v];
  }
  for (const auto& [v, m] : mult)
    if (m > cap) throw std::logic_error("router exceeded a vertex capacity");
}

}  // namespace

// ---------------------------------------------------------------------------
// Exact path oracle: an allowable A-path avoiding a blocked set.

namespace {

struct Reach {
  long long G;
  std::vector<std::uint16_t> dist;  // v * G + gamma -> walk length, 0xffff if none
};

// Backward relaxation: shortest allowable *walk* from v to a terminal with
// the given remaining gamma, internal vertices non-terminal and unblocked.
// Walks over-approximate simple paths, so this is a sound pruning table.
Reach back_reach(const LabelledGraph& g, const GammaIndex& gi, const std::vector<char>& blocked) {
  Reach rc{gi.size, std::vector<std::uint16_t>((size_t)(g.vertex_count() * gi.size), 0xffff)};
  std::queue<std::pair<int, long long>> bfs;
  auto offer = [&](int v, long long ga, std::uint16_t d) {
    auto& slot = rc.dist[(size_t)(v * rc.G + ga)];
    if (slot != 0xffff) return;
    slot = d;
    bfs.push({v, ga});
  };
  for (const Edge& e : g.edges()) {
    if (blocked[e.u] || blocked[e.v]) continue;
    long long lab = gi.idx(e.label);
    if (g.is_terminal(e.v) && !g.is_terminal(e.u)) offer(e.u, lab, 1);
    if (g.is_terminal(e.u) && !g.is_terminal(e.v)) offer(e.v, lab, 1);
  }
  while (!bfs.empty()) {
    auto [v, ga] = bfs.front();
    bfs.pop();
    std::uint16_t d = rc.dist[(size_t)(v * rc.G + ga)];
    for (auto [w, eid] : g.incident(v)) {
      if (blocked[w] || g.is_terminal(w)) continue;
      offer(w, gi.add(ga, gi.idx(g.edge(eid).label)), (std::uint16_t)(d + 1));
    }
  }
  return rc;
}

struct OracleEnv {
  const LabelledGraph& g;
  const GammaIndex& gi;
  const std::vector<char>& accept;
  std::vector<long long> label_idx;
  std::vector<char> avoid;  // blocked vertices plus the current trail
  Reach static_reach;       // relaxation against the blocked set only
  bool trail_mode = false;
  long long switch_at = 0;
  std::vector<int> verts, edges;
  long long nodes = 0;
};

bool oracle_dfs(OracleEnv& env, int v, long long gamma) {
  if (++env.nodes > kOracleBudget)
    throw ExplosionError("path oracle exceeded its work budget");
  // The cheap mode prunes against walks that ignore the trail; that guides a
  // straight descent in almost every call.  If the descent starts thrashing,
  // switch to recomputing the relaxation against the trail at every node:
  // any continuation of a simple path is a walk avoiding everything already
  // used, so the stronger prune is still sound and cuts off the pockets the
  // path has sealed behind itself.
  if (!env.trail_mode && env.nodes > env.switch_at) env.trail_mode = true;
  Reach local;
  const Reach& reach = env.trail_mode
                           ? (local = back_reach(env.g, env.gi, env.avoid), local)
                           : env.static_reach;
  struct Cand {
    int w, eid, score;
    long long gamma;
  };
  std::vector<Cand> cands;
  for (auto [w, eid] : env.g.incident(v)) {
    if (env.avoid[w]) continue;
    long long ga = env.gi.add(gamma, env.label_idx[eid]);
    if (env.g.is_terminal(w)) {
      if (env.accept[ga]) {
        env.verts.push_back(w);
        env.edges.push_back(eid);
        return true;
      }
      continue;
    }
    int best = -1;
    for (long long d = 0; d < env.gi.size; ++d) {
      auto dist = reach.dist[(size_t)(w * env.gi.size + d)];
      if (dist == 0xffff || !env.accept[env.gi.add(ga, d)]) continue;
      if (best < 0 || dist < best) best = dist;
    }
    if (best < 0) continue;
    cands.push_back({w, eid, best, ga});
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Cand& a, const Cand& b) { return a.score < b.score; });
  for (const auto& c : cands) {
    env.avoid[c.w] = 1;
    env.verts.push_back(c.w);
    env.edges.push_back(c.eid);
    if (oracle_dfs(env, c.w, c.gamma)) return true;
    env.edges.pop_back();
    env.verts.pop_back();
    env.avoid[c.w] = 0;
  }
  return false;
}

std::optional<ApPath> oracle_impl(const LabelledGraph& g, const LambdaSet& lambda,
                                  const std::vector<char>& blocked) {
  GammaIndex gi(g.spec());
  std::vector<char> accept(gi.size, 0);
  for (const auto& x : lambda.elements) accept[gi.idx(x)] = 1;
  OracleEnv env{g, gi, accept, {}, {}, {}, false, 0, {}, {}, 0};
  env.label_idx.reserve(g.edge_count());
  for (const Edge& e : g.edges()) env.label_idx.push_back(gi.idx(e.label));
  for (int a : g.terminals()) {
    if (blocked[a]) continue;
    env.avoid = blocked;
    env.avoid[a] = 1;
    env.static_reach = back_reach(g, gi, env.avoid);
    env.trail_mode = false;
    env.switch_at = env.nodes + 2 * g.vertex_count();
    env.verts = {a};
    env.edges.clear();
    if (oracle_dfs(env, a, 0)) return make_appath(g, env.verts, env.edges);
  }
  return std::nullopt;
}

}  // namespace

namespace {

// Fast existence path: reroute an enumerated boundary pattern around the
// blocked set.  A routed pattern is a real verified witness; failure to
// route proves nothing, so callers must fall back to the exact oracle.
std::optional<ApPath> route_any_pattern(const SolveCtx& ctx, const std::vector<Pattern>& pats,
                                        const std::vector<char>& blocked) {
  int attempts = 0;
  for (const auto& pat : pats) {
    if (attempts >= 64) break;
    const PathPlan& plan = pat.plan;
    bool hit = blocked[ctx.q[plan.qa].terminal] || blocked[ctx.q[plan.qa].spot] ||
               blocked[ctx.q[plan.qb].terminal] || blocked[ctx.q[plan.qb].spot];
    for (const auto& st : plan.ears) {
      const EarInfo& e = ctx.ears[st.bar][st.idx];
      hit = hit || blocked[e.lo] || blocked[e.hi];
    }
    if (hit) continue;
    ++attempts;
    std::vector<int> usage(ctx.r->graph.vertex_count(), 0);
    for (size_t v = 0; v < blocked.size(); ++v)
      if (blocked[v]) usage[v] = 1;
    auto p = route_path(ctx, plan, usage, 1);
    if (p) return p;
  }
  return std::nullopt;
}

std::optional<ApPath> ribbon_oracle(const SolveCtx& ctx,
                                    const std::optional<std::vector<Pattern>>& pats,
                                    const std::vector<char>& blocked) {
  if (pats) {
    auto p = route_any_pattern(ctx, *pats, blocked);
    if (p) return p;
  }
  return oracle_impl(ctx.r->graph, *ctx.lambda, blocked);
}

}  // namespace

std::optional<ApPath> find_allowable_avoiding(const RibbonedWall& r, const LambdaSet& lambda,
                                              const std::vector<int>& blocked) {
  SolveCtx ctx = build_ctx(r, lambda);
  std::vector<char> blk(r.graph.vertex_count(), 0);
  for (int v : blocked) {
    if (v < 0 || v >= r.graph.vertex_count()) throw ValidationError("blocked vertex out of range");
    blk[v] = 1;
  }
  return ribbon_oracle(ctx, enumerate_patterns(ctx), blk);
}

// ---------------------------------------------------------------------------
// Exact cover: candidate covers closed against a duality lower bound, with an
// iterative-deepening brancher for any remaining gap.

namespace {

struct CoverSearch {
  const SolveCtx& ctx;
  const std::optional<std::vector<Pattern>>& pats;
  int budget;
  std::set<std::vector<int>> seen;
  std::vector<int> stack;
  std::vector<char> blocked;
  std::vector<int> found;

  bool rec() {
    auto p = ribbon_oracle(ctx, pats, blocked);
    if (!p) {
      found = stack;
      std::sort(found.begin(), found.end());
      return true;
    }
    if ((int)stack.size() == budget) return false;
    std::vector<int> key = stack;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) return false;
    for (int v : p->vertices) {
      stack.push_back(v);
      blocked[v] = 1;
      bool ok = rec();
      blocked[v] = 0;
      stack.pop_back();
      if (ok) return true;
    }
    return false;
  }
};

int solve_tau(const SolveCtx& ctx, const std::optional<std::vector<Pattern>>& pats, int lower,
              std::vector<int>& cover) {
  const LabelledGraph& g = ctx.r->graph;
  std::vector<char> none(g.vertex_count(), 0);
  if (!ribbon_oracle(ctx, pats, none)) {
    cover.clear();
    return 0;
  }

  // candidate covers: one endpoint per ear of a single bar; all terminal
  // spots of one side (disjoint) or all but one (equal)
  std::vector<std::vector<int>> cands;
  for (const auto& es : ctx.ears) {
    std::vector<int> c;
    for (const auto& e : es) c.push_back(e.lo);
    if (!c.empty()) cands.push_back(std::move(c));
  }
  if (ctx.r->q_mode == QMode::equal) {
    std::vector<int> c;
    for (int i = 1; i < ctx.nq1; ++i) c.push_back(ctx.q[i].spot);
    cands.push_back(std::move(c));
  } else {
    std::vector<int> c1, c2;
    for (int i = 0; i < ctx.nq1; ++i) c1.push_back(ctx.q[i].spot);
    for (int i = ctx.nq1; i < (int)ctx.q.size(); ++i) c2.push_back(ctx.q[i].spot);
    cands.push_back(std::move(c1));
    cands.push_back(std::move(c2));
  }
  std::sort(cands.begin(), cands.end(),
            [](const auto& a, const auto& b) { return a.size() < b.size(); });
  int ub = -1;
  std::vector<int> ub_cover;
  for (const auto& c : cands) {
    if (ub >= 0 && (int)c.size() >= ub) continue;
    std::vector<char> blk(g.vertex_count(), 0);
    for (int v : c) blk[v] = 1;
    if (!ribbon_oracle(ctx, pats, blk)) {
      ub = (int)c.size();
      ub_cover = c;
    }
  }

  int t = std::max(lower, 1);
  for (; ub < 0 || t < ub; ++t) {
    CoverSearch cs{ctx, pats, t, {}, {}, std::vector<char>(g.vertex_count(), 0), {}};
    if (cs.rec()) {
      cover = cs.found;
      return t;
    }
  }
  std::sort(ub_cover.begin(), ub_cover.end());
  cover = ub_cover;
  return ub;
}

}  // namespace

WallSolveResult solve_ribboned(const RibbonedWall& r, const LambdaSet& lambda, bool want_tau) {
  SolveCtx ctx = build_ctx(r, lambda);
  const GroupSpec& spec = r.graph.spec();
  WallSolveResult res;

  // ---- upper bounds
  int total_q = (int)ctx.q.size();
  int nu_up = total_q / 2;   // every path consumes two terminal handles
  int raw_up = total_q;      // terminal capacity two, two terminals per path
  std::vector<GroupElement> g;
  std::vector<BarKind> kinds;
  int min_bar = -1;
  for (const auto& bar : r.pbars) {
    g.push_back(bar.gamma);
    kinds.push_back(bar.kind);
    int n = (int)bar.handles.size();
    if (min_bar < 0 || n < min_bar) min_bar = n;
  }
  // Under A4 every allowable path must traverse an ear of every bar (its
  // gamma otherwise falls in a forbidden coset), and an ear serves at most
  // one path per unit of vertex capacity.
  bool bar_necessity =
      ctx.labels_uniform && !g.empty() && cond_a4(spec, lambda, g, r.q1.gamma, r.q2.gamma);
  if (bar_necessity) {
    nu_up = std::min(nu_up, min_bar);
    raw_up = std::min(raw_up, 2 * min_bar);
  }
  auto patterns = enumerate_patterns(ctx);
  if (patterns) {
    if (patterns->empty()) {
      nu_up = 0;
      raw_up = 0;
    } else if (!compatible_pair_exists(*patterns)) {
      nu_up = std::min(nu_up, 1);
    }
  }

  // ---- lower bounds: routed, fully verified witnesses
  std::vector<std::vector<PathPlan>> integral_attempts;
  if (r.q_mode == QMode::equal) {
    integral_attempts.push_back(plan_rainbow(ctx));
    integral_attempts.push_back(plan_single(ctx));
  } else {
    integral_attempts.push_back(plan_single(ctx));
  }
  for (const auto& plans : integral_attempts) {
    if (plans.empty()) continue;
    auto got = run_attempt(ctx, plans, 1);
    if (got.size() > res.packing.size()) res.packing = std::move(got);
  }
  // fall back on the abstract pattern list for a first witness
  if (res.packing.empty() && patterns && !patterns->empty()) {
    for (size_t i = 0; i < patterns->size() && i < 64; ++i) {
      auto got = run_attempt(ctx, {(*patterns)[i].plan}, 1);
      if (!got.empty()) {
        res.packing = std::move(got);
        break;
      }
    }
  }
  verify_multiset(ctx, res.packing, 1);
  res.nu_lower = (int)res.packing.size();

  std::vector<std::vector<PathPlan>> half_attempts;
  if (r.q_mode == QMode::equal) {
    half_attempts.push_back(plan_chain(ctx));
    half_attempts.push_back(doubled(plan_rainbow(ctx)));
    half_attempts.push_back(doubled(plan_single(ctx)));
  } else {
    half_attempts.push_back(plan_per_ear(ctx, 2));
    half_attempts.push_back(plan_per_ear(ctx, 1));
    half_attempts.push_back(doubled(plan_single(ctx)));
  }
  for (const auto& plans : half_attempts) {
    if (plans.empty()) continue;
    auto got = run_attempt(ctx, plans, 2);
    if (got.size() > res.half_packing.size()) res.half_packing = std::move(got);
  }
  // a disjoint packing doubled is always a valid half-integral multiset
  if (2 * res.packing.size() > res.half_packing.size()) {
    res.half_packing = res.packing;
    res.half_packing.insert(res.half_packing.end(), res.packing.begin(), res.packing.end());
  }
  verify_multiset(ctx, res.half_packing, 2);
  res.raw_lower = (int)res.half_packing.size();

  res.nu_upper = std::max(nu_up, res.nu_lower);
  res.raw_upper = std::max(raw_up, res.raw_lower);
  if (res.nu_lower > nu_up || res.raw_lower > raw_up)
    throw std::logic_error("packing bounds crossed; solver invariant broken");

  if (want_tau) {
    int lb = std::max(res.nu_lower, (res.raw_lower + 1) / 2);
    res.tau = solve_tau(ctx, patterns, lb, res.cover);
    if (res.tau < res.nu_lower || 2 * res.tau < res.raw_lower)
      throw std::logic_error("cover below packing; solver invariant broken");
  }
  return res;
}

// ---------------------------------------------------------------------------

std::string ribboned_to_dot(const RibbonedWall& r, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n  layout=neato;\n  node [shape=point width=0.08];\n";
  int wall_v = r.wall.graph.vertex_count();
  for (int v = 0; v < wall_v; ++v) {
    auto [file, row] = r.wall.coord[v];
    out << "  v" << v << " [pos=\"" << file * 0.5 << "," << row * 0.5 << "!\"";
    if (r.graph.degree(v) > r.wall.graph.degree(v)) out << " width=0.16 color=red";
    out << "];\n";
  }
  for (int v = wall_v; v < r.graph.vertex_count(); ++v) {
    out << "  v" << v << " [shape=circle width=0.2 style=filled fillcolor=black label=\"\"";
    for (const QBar* q : {&r.q1, &r.q2})
      for (const auto& h : q->handles)
        if (h.terminal == v) {
          auto [file, row] = r.wall.coord[h.spot];
          double x = file <= 2 ? file * 0.5 - 0.9 : file * 0.5 + 0.9;
          out << " pos=\"" << x << "," << row * 0.5 << "!\"";
        }
    out << "];\n";
  }
  const GroupSpec& spec = r.graph.spec();
  for (const Edge& e : r.graph.edges()) {
    out << "  v" << e.u << " -- v" << e.v;
    if (e.id >= r.wall_edge_count)
      out << " [color=" << (r.graph.is_terminal(e.u) || r.graph.is_terminal(e.v) ? "blue" : "red")
          << " penwidth=2 label=\"" << format_element(spec, e.label) << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace eposa
