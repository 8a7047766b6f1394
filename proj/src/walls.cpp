#include "eposa/walls.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace eposa {

namespace {

bool grid_vertex_exists(int c, int r, int i, int j) {
  if (i < 1 || i > 2 * c || j < 1 || j > r) return false;
  if (i == 1 && j == 1) return false;                  // deleted degree-1 corner
  if (r % 2 == 1 && i == 2 * c && j == r) return false;  // other corner, r odd
  if (r % 2 == 0 && i == 1 && j == r) return false;      // other corner, r even
  return true;
}

// Build a wall directly from an existence predicate over grid coordinates.
Wall build_wall(int c, int r, const GroupSpec& spec) {
  Wall w;
  w.c = c;
  w.r = r;
  w.graph = LabelledGraph(spec);
  for (int j = 1; j <= r; ++j)
    for (int i = 1; i <= 2 * c; ++i) {
      if (!grid_vertex_exists(c, r, i, j)) continue;
      int vid = w.graph.add_vertex("w_" + std::to_string(i) + "_" + std::to_string(j));
      w.coord.push_back({i, j});
      w.vid_at[{i, j}] = vid;
    }
  GroupElement id = zero(spec);
  auto vid = [&](int i, int j) -> int {
    auto it = w.vid_at.find({i, j});
    return it == w.vid_at.end() ? -1 : it->second;
  };
  for (int j = 1; j <= r; ++j)
    for (int i = 1; i <= 2 * c; ++i) {
      int a = vid(i, j);
      if (a < 0) continue;
      int right = vid(i + 1, j);
      if (right >= 0) w.graph.add_edge(a, right, id);
      if ((i + j) % 2 == 1) {
        int up = vid(i, j + 1);
        if (up >= 0) w.graph.add_edge(a, up, id);
      }
    }
  return w;
}

// Trace the boundary cycle (column 1, column c, rows 1 and r) from v11
// heading up column 1, so the corners appear as v11, v1r, vcr, vc1.
void trace_boundary(Wall& w) {
  int c = w.c, r = w.r;
  w.v11 = w.vid_at.at({2, 1});
  w.v1r = (r % 2 == 1) ? w.vid_at.at({1, r}) : w.vid_at.at({2, r});
  w.vcr = (r % 2 == 1) ? w.vid_at.at({2 * c - 1, r}) : w.vid_at.at({2 * c, r});
  w.vc1 = w.vid_at.at({2 * c, 1});

  auto in_c1 = [&](int v) { return w.coord[v].first <= 2; };
  auto in_cc = [&](int v) { return w.coord[v].first >= 2 * c - 1; };
  auto on_boundary = [&](int v) {
    return in_c1(v) || in_cc(v) || w.coord[v].second == 1 || w.coord[v].second == r;
  };
  auto boundary_edge = [&](int u, int v) {
    // edges inside column 1, inside column c, or inside row 1 / row r
    if (in_c1(u) && in_c1(v)) return true;
    if (in_cc(u) && in_cc(v)) return true;
    if (w.coord[u].second == 1 && w.coord[v].second == 1) return true;
    if (w.coord[u].second == r && w.coord[v].second == r) return true;
    return false;
  };

  auto next_of = [&](int v, int prev) -> int {
    for (const auto& [u, eid] : w.graph.incident(v)) {
      if (u == prev) continue;
      if (on_boundary(u) && boundary_edge(v, u)) return u;
    }
    throw std::logic_error("boundary trace stuck");
  };

  // first step: stay in column 1, heading away from row 1
  int start = w.v11, cur = -1;
  for (const auto& [u, eid] : w.graph.incident(start))
    if (in_c1(u) && boundary_edge(start, u) && w.coord[u].second != 1) cur = u;
  if (cur < 0) throw std::logic_error("no upward boundary step at v11");

  w.boundary.clear();
  w.boundary.push_back(start);
  int prev = start;
  while (cur != start) {
    w.boundary.push_back(cur);
    int nxt = next_of(cur, prev);
    prev = cur;
    cur = nxt;
  }
  w.boundary_pos.assign(w.graph.vertex_count(), -1);
  for (size_t p = 0; p < w.boundary.size(); ++p) w.boundary_pos[w.boundary[p]] = (int)p;

  auto pos = [&](int v) { return w.boundary_pos[v]; };
  if (!(pos(w.v11) == 0 && pos(w.v11) < pos(w.v1r) && pos(w.v1r) < pos(w.vcr) &&
        pos(w.vcr) < pos(w.vc1)))
    throw std::logic_error("boundary order violates the corner sequence");
}

}  // namespace

Wall elementary_wall(int c, int r, const GroupSpec& spec) {
  if (c < 3 || r < 3)
    throw ValidationError("elementary wall needs c, r >= 3, got (" + std::to_string(c) + "," +
                          std::to_string(r) + ")");
  Wall w = build_wall(c, r, spec);
  if (w.graph.vertex_count() != 2 * c * r - 2)
    throw std::logic_error("wall vertex count mismatch");
  for (int v = 0; v < w.graph.vertex_count(); ++v) {
    int d = w.graph.degree(v);
    if (d < 2 || d > 3) throw std::logic_error("wall degree out of range");
  }
  trace_boundary(w);
  return w;
}

const std::vector<int>& boundary_order(const Wall& w) { return w.boundary; }

std::vector<int> column_boundary(const Wall& w, int col) {
  if (col != 1 && col != w.c)
    throw ValidationError("column_boundary expects column 1 or " + std::to_string(w.c));
  int lo = (col == 1) ? 1 : 2 * w.c - 1;
  std::vector<int> out;
  for (int v : w.boundary) {
    int file = w.coord[v].first;
    if (file == lo || file == lo + 1) out.push_back(v);
  }
  return out;
}

BarKind classify_pair(std::pair<int, int> x, std::pair<int, int> y) {
  int x1 = std::min(x.first, x.second), x2 = std::max(x.first, x.second);
  int y1 = std::min(y.first, y.second), y2 = std::max(y.first, y.second);
  if (x1 == y1 || x1 == y2 || x2 == y1 || x2 == y2 || x1 == x2 || y1 == y2)
    throw ValidationError("classify_pair requires four distinct positions");
  if (x2 < y1 || y2 < x1) return BarKind::series;
  if ((x1 < y1 && y2 < x2) || (y1 < x1 && x2 < y2)) return BarKind::nested;
  return BarKind::crossing;
}

namespace {

// Maximum set of pairwise-disjoint intervals: classic greedy by right end.
std::vector<int> max_series(const std::vector<std::pair<int, int>>& iv) {
  std::vector<int> idx(iv.size());
  for (size_t i = 0; i < iv.size(); ++i) idx[i] = (int)i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return iv[a].second < iv[b].second; });
  std::vector<int> out;
  int frontier = -1;
  for (int i : idx)
    if (iv[i].first > frontier) {
      out.push_back(i);
      frontier = iv[i].second;
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Longest chain under strict containment: O(n^2) DP.
std::vector<int> max_nested(const std::vector<std::pair<int, int>>& iv) {
  size_t n = iv.size();
  std::vector<int> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = (int)i;
  // outermost first: ascending lo, descending hi
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (iv[a].first != iv[b].first) return iv[a].first < iv[b].first;
    return iv[a].second > iv[b].second;
  });
  std::vector<int> len(n, 1), pred(n, -1);
  int best = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < i; ++j) {
      bool contains = iv[idx[j]].first < iv[idx[i]].first && iv[idx[i]].second < iv[idx[j]].second;
      if (contains && len[j] + 1 > len[i]) {
        len[i] = len[j] + 1;
        pred[i] = (int)j;
      }
    }
  for (size_t i = 1; i < n; ++i)
    if (len[i] > len[best]) best = (int)i;
  std::vector<int> out;
  if (n == 0) return out;
  for (int i = best; i >= 0; i = pred[i]) out.push_back(idx[i]);
  std::sort(out.begin(), out.end());
  return out;
}

// Maximum clique in the crossing graph by branch-and-bound.
std::vector<int> max_crossing(const std::vector<std::pair<int, int>>& iv) {
  size_t n = iv.size();
  std::vector<std::vector<char>> cross(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      bool x = classify_pair(iv[i], iv[j]) == BarKind::crossing;
      cross[i][j] = cross[j][i] = x;
    }
  std::vector<int> best, cur;
  std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& cand) {
    if (cur.size() + cand.size() <= best.size()) return;
    if (cand.empty()) {
      if (cur.size() > best.size()) best = cur;
      return;
    }
    std::vector<int> cand2 = cand;
    while (!cand2.empty()) {
      if (cur.size() + cand2.size() <= best.size()) return;
      int v = cand2.front();
      cand2.erase(cand2.begin());
      cur.push_back(v);
      std::vector<int> next;
      for (int u : cand2)
        if (cross[v][u]) next.push_back(u);
      grow(next);
      cur.pop_back();
    }
  };
  std::vector<int> all(n);
  for (size_t i = 0; i < n; ++i) all[i] = (int)i;
  grow(all);
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace

std::optional<std::pair<BarKind, std::vector<int>>> extract_pure(
    const std::vector<std::pair<int, int>>& pairs, int k) {
  if (k < 1) throw ValidationError("extract_pure needs k >= 1");
  std::set<int> endpoints;
  for (const auto& [a, b] : pairs) {
    if (a == b) throw ValidationError("degenerate pair in extract_pure");
    if (!endpoints.insert(a).second || !endpoints.insert(b).second)
      throw ValidationError("pairs passed to extract_pure must be disjoint");
  }
  std::vector<std::pair<int, int>> iv;
  for (const auto& [a, b] : pairs) iv.push_back({std::min(a, b), std::max(a, b)});

  std::vector<int> s = max_series(iv);
  std::vector<int> ncl = max_nested(iv);
  std::vector<int> x = max_crossing(iv);
  BarKind kind = BarKind::series;
  std::vector<int>* pick = &s;
  if (ncl.size() > pick->size()) {
    pick = &ncl;
    kind = BarKind::nested;
  }
  if (x.size() > pick->size()) {
    pick = &x;
    kind = BarKind::crossing;
  }
  if ((int)pick->size() < k) return std::nullopt;
  return std::make_pair(kind, *pick);
}

namespace {

bool same_handle_set(const AWHandlebar& a, const AWHandlebar& b) {
  auto key = [](const AWHandlebar& h) {
    std::vector<std::pair<int, int>> k;
    for (const auto& x : h.handles) k.push_back({x.w_pos, x.tag});
    std::sort(k.begin(), k.end());
    return k;
  };
  return key(a) == key(b);
}

std::vector<AWHandle> sorted_by_pos(const AWHandlebar& q) {
  std::vector<AWHandle> v = q.handles;
  std::sort(v.begin(), v.end(), [](const AWHandle& a, const AWHandle& b) {
    return a.w_pos < b.w_pos;
  });
  return v;
}

}  // namespace

JoinedHandlebar join_handlebars(const AWHandlebar& q1, const AWHandlebar& q2, BarKind kind) {
  std::set<int> pos_seen;
  for (const AWHandlebar* q : {&q1, &q2})
    for (const auto& h : q->handles)
      if (!pos_seen.insert(h.w_pos).second && !same_handle_set(q1, q2))
        throw ValidationError("terminal handle bars share a boundary position");

  JoinedHandlebar out;
  out.kind = kind;
  if (same_handle_set(q1, q2)) {
    std::vector<AWHandle> s = sorted_by_pos(q1);
    size_t n = s.size();
    if (n < 2 || n % 2 != 0)
      throw ValidationError("joining a bar with itself needs even size >= 2");
    size_t k = n / 2;
    for (size_t i = 0; i < k; ++i) {
      AWHandle a, b;
      switch (kind) {
        case BarKind::series:
          a = s[2 * i];
          b = s[2 * i + 1];
          break;
        case BarKind::nested:
          a = s[i];
          b = s[n - 1 - i];
          break;
        case BarKind::crossing:
          a = s[i];
          b = s[k + i];
          break;
      }
      out.handles.push_back(JoinedHandle{a.w_pos, b.w_pos, a.tag, b.tag});
    }
  } else {
    if (q1.handles.size() != q2.handles.size())
      throw ValidationError("disjoint bars must have equal sizes to join");
    if (q1.handles.empty()) throw ValidationError("cannot join empty bars");
    if (kind == BarKind::series)
      throw ValidationError("series join requires q1 = q2");
    std::vector<AWHandle> u = sorted_by_pos(q1), v = sorted_by_pos(q2);
    // non-mixing: the position hulls must not overlap
    int lo1 = u.front().w_pos, hi1 = u.back().w_pos;
    int lo2 = v.front().w_pos, hi2 = v.back().w_pos;
    if (!(hi1 < lo2 || hi2 < lo1))
      throw ValidationError("bars mix: their boundary intervals overlap");
    size_t k = u.size();
    for (size_t i = 0; i < k; ++i) {
      const AWHandle& a = u[i];
      const AWHandle& b = (kind == BarKind::nested) ? v[k - 1 - i] : v[i];
      out.handles.push_back(JoinedHandle{a.w_pos, b.w_pos, a.tag, b.tag});
    }
  }
  // post-check: the declared relation really holds pairwise
  for (size_t i = 0; i < out.handles.size(); ++i)
    for (size_t j = i + 1; j < out.handles.size(); ++j) {
      BarKind got = classify_pair({out.handles[i].pos1, out.handles[i].pos2},
                                  {out.handles[j].pos1, out.handles[j].pos2});
      if (got != kind) throw std::logic_error("join produced an impure handlebar");
    }
  return out;
}

std::pair<AWHandlebar, AWHandlebar> split_handlebar(const JoinedHandlebar& p) {
  AWHandlebar q1, q2;
  for (const auto& h : p.handles) {
    if (h.tag1 < 0 || h.tag2 < 0)
      throw ValidationError("split_handlebar needs join provenance on every handle");
    q1.handles.push_back(AWHandle{h.pos1, h.tag1});
    q2.handles.push_back(AWHandle{h.pos2, h.tag2});
  }
  return {q1, q2};
}

std::pair<std::pair<int, int>, std::pair<int, int>> minimal_side_intervals(
    const std::vector<std::pair<int, int>>& handle_ends) {
  size_t n = handle_ends.size();
  if (n == 0) throw ValidationError("minimal_side_intervals needs handles");
  if (n > 20) throw ValidationError("too many handles for exact side intervals");
  long long best_cost = -1;
  std::pair<std::pair<int, int>, std::pair<int, int>> best;
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    int lo1 = 1 << 30, hi1 = -(1 << 30), lo2 = 1 << 30, hi2 = -(1 << 30);
    for (size_t i = 0; i < n; ++i) {
      int a = handle_ends[i].first, b = handle_ends[i].second;
      if (mask & (size_t(1) << i)) std::swap(a, b);
      lo1 = std::min(lo1, a);
      hi1 = std::max(hi1, a);
      lo2 = std::min(lo2, b);
      hi2 = std::max(hi2, b);
    }
    long long len1 = hi1 - lo1 + 1, len2 = hi2 - lo2 + 1;
    long long overlap = std::max(0LL, (long long)std::min(hi1, hi2) -
                                          (long long)std::max(lo1, lo2) + 1);
    long long cost = len1 + len2 - overlap;
    if (best_cost < 0 || cost < best_cost) {
      best_cost = cost;
      best = {{lo1, hi1}, {lo2, hi2}};
    }
  }
  return best;
}

namespace {

Wall extract_range(const Wall& w, int i1, int i2, int j1, int j2) {
  if (i1 < 1 || i2 > w.c || j1 < 1 || j2 > w.r || i2 - i1 + 1 < 3 || j2 - j1 + 1 < 3)
    throw ValidationError("subwall range must fit the wall and keep c', r' >= 3");
  int c2 = i2 - i1 + 1, r2 = j2 - j1 + 1;
  // Row offsets of even parity flip the brick pattern; mirror the files to
  // restore the standard orientation in local coordinates.
  bool mirror = (j1 % 2 == 0);
  std::set<std::pair<int, int>> kept;  // local (file, row)
  for (const auto& [ij, vid] : w.vid_at) {
    auto [i, j] = ij;
    if (i < 2 * i1 - 1 || i > 2 * i2 || j < j1 || j > j2) continue;
    int li = i - (2 * i1 - 2);
    if (mirror) li = 2 * c2 + 1 - li;
    kept.insert({li, j - j1 + 1});
  }
  // trim degree-1 vertices of the extracted pattern (local adjacency)
  auto local_degree = [&](std::pair<int, int> p) {
    auto [i, j] = p;
    int d = 0;
    if (kept.count({i - 1, j})) ++d;
    if (kept.count({i + 1, j})) ++d;
    if ((i + j) % 2 == 1 && kept.count({i, j + 1})) ++d;
    if ((i + j) % 2 == 0 && kept.count({i, j - 1})) ++d;
    return d;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = kept.begin(); it != kept.end();) {
      if (local_degree(*it) <= 1) {
        it = kept.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  Wall out;
  out.c = c2;
  out.r = r2;
  out.graph = LabelledGraph(w.graph.spec());
  for (const auto& [i, j] : kept) {
    int vid = out.graph.add_vertex("w_" + std::to_string(i) + "_" + std::to_string(j));
    out.coord.push_back({i, j});
    out.vid_at[{i, j}] = vid;
  }
  GroupElement id = zero(w.graph.spec());
  for (const auto& [i, j] : kept) {
    if (kept.count({i + 1, j})) out.graph.add_edge(out.vid_at[{i, j}], out.vid_at[{i + 1, j}], id);
    if ((i + j) % 2 == 1 && kept.count({i, j + 1}))
      out.graph.add_edge(out.vid_at[{i, j}], out.vid_at[{i, j + 1}], id);
  }
  if (out.graph.vertex_count() != 2 * c2 * r2 - 2)
    throw std::logic_error("subwall extraction lost vertices");
  trace_boundary(out);
  return out;
}

}  // namespace

Wall column_slice(const Wall& w, int i1, int i2) { return extract_range(w, i1, i2, 1, w.r); }

Wall compact_subwall(const Wall& w, int i1, int i2, int j1, int j2) {
  return extract_range(w, i1, i2, j1, j2);
}

Wall k_contained_subwall(const Wall& w, int k) {
  if (k < 0) throw ValidationError("k_contained_subwall needs k >= 0");
  return extract_range(w, 1 + k, w.c - k, 1 + k, w.r - k);
}

std::string wall_to_dot(const Wall& w, const std::string& name) {
  std::string out = "graph " + name + " {\n  node [shape=circle];\n";
  for (int v = 0; v < w.graph.vertex_count(); ++v) {
    out += "  \"" + w.graph.vertex_name(v) + "\"";
    if (w.boundary_pos[v] >= 0)
      out += " [shape=doublecircle, xlabel=\"" + std::to_string(w.boundary_pos[v]) + "\"]";
    out += ";\n";
  }
  for (const Edge& e : w.graph.edges())
    out += "  \"" + w.graph.vertex_name(e.u) + "\" -- \"" + w.graph.vertex_name(e.v) + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace eposa
