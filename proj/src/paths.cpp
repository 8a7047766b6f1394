#include "eposa/paths.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace eposa {

std::vector<ApPath> enumerate_allowable(const LabelledGraph& g, const LambdaSet& lambda,
                                        int cap) {
  if (cap <= 0) throw ValidationError("path cap must be positive");
  if (lambda.spec != g.spec())
    throw ValidationError("lambda set group does not match graph group");
  std::vector<ApPath> out;
  long long budget = 2000LL * cap;  // work bound on extension steps
  std::vector<int> vs, es;
  std::vector<char> used(g.vertex_count(), 0);

  std::function<void(int, GroupElement)> dfs = [&](int v, GroupElement gamma) {
    if (--budget < 0)
      throw ExplosionError("path search exceeded the work budget implied by cap " +
                           std::to_string(cap));
    for (const auto& [w, eid] : g.incident(v)) {
      if (used[w]) continue;
      GroupElement gamma2 = add(g.spec(), gamma, g.edge(eid).label);
      if (g.is_terminal(w)) {
        // record once per reversal class: smaller endpoint id first
        if (w > vs.front() && lambda.contains(gamma2)) {
          ApPath p;
          p.vertices = vs;
          p.vertices.push_back(w);
          p.edge_ids = es;
          p.edge_ids.push_back(eid);
          p.gamma = gamma2;
          out.push_back(std::move(p));
          if ((int)out.size() > cap)
            throw ExplosionError("more than " + std::to_string(cap) + " allowable paths");
        }
        continue;  // paths do not pass through terminals
      }
      used[w] = 1;
      vs.push_back(w);
      es.push_back(eid);
      dfs(w, gamma2);
      es.pop_back();
      vs.pop_back();
      used[w] = 0;
    }
  };

  for (int a : g.terminals()) {
    used[a] = 1;
    vs = {a};
    es.clear();
    dfs(a, zero(g.spec()));
    used[a] = 0;
  }
  std::sort(out.begin(), out.end(), [](const ApPath& p, const ApPath& q) {
    if (p.vertices != q.vertices) return p.vertices < q.vertices;
    return p.edge_ids < q.edge_ids;
  });
  return out;
}

namespace {

// Shared branch-and-bound state for both packing modes.
struct PackingSearch {
  const std::vector<ApPath>& paths;
  int vcap;       // per-vertex capacity (1 or 2)
  int path_max;   // per-path multiplicity bound (1 or 2)
  std::vector<int> usage;         // per-vertex current usage
  std::vector<int> mult;          // per-path chosen multiplicity
  std::vector<int> best_mult;
  int cur = 0, best = -1;

  PackingSearch(const std::vector<ApPath>& p, int nverts, int vcap_, int pmax)
      : paths(p), vcap(vcap_), path_max(pmax), usage(nverts, 0), mult(p.size(), 0),
        best_mult(p.size(), 0) {}

  bool fits(const ApPath& p) const {
    for (int v : p.vertices)
      if (usage[v] + 1 > vcap) return false;
    return true;
  }

  void apply(const ApPath& p, int delta) {
    for (int v : p.vertices) usage[v] += delta;
  }

  void run(size_t idx) {
    if (idx == paths.size()) {
      if (cur > best) {
        best = cur;
        best_mult = mult;
      }
      return;
    }
    // optimistic bound: every remaining path that still fits could be taken
    // at full multiplicity
    int head = 0;
    for (size_t j = idx; j < paths.size(); ++j)
      if (fits(paths[j])) head += path_max;
    if (cur + head <= best) return;
    // higher multiplicity first, so the greedy leaf comes first
    for (int m = path_max; m >= 0; --m) {
      bool ok = true;
      for (int v : paths[idx].vertices)
        if (usage[v] + m > vcap) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (int v : paths[idx].vertices) usage[v] += m;
      mult[idx] = m;
      cur += m;
      run(idx + 1);
      cur -= m;
      mult[idx] = 0;
      for (int v : paths[idx].vertices) usage[v] -= m;
    }
  }
};

}  // namespace

PackingResult max_packing(const LabelledGraph& g, const LambdaSet& lambda, PackingMode mode,
                          int cap) {
  std::vector<ApPath> all = enumerate_allowable(g, lambda, cap);
  int vcap = (mode == PackingMode::integral) ? 1 : 2;
  int pmax = (mode == PackingMode::integral) ? 1 : 2;
  PackingSearch search(all, g.vertex_count(), vcap, pmax);
  search.run(0);
  PackingResult res;
  res.mode = mode;
  for (size_t i = 0; i < all.size(); ++i)
    for (int t = 0; t < search.best_mult[i]; ++t) res.paths.push_back(all[i]);
  for (const ApPath& p : res.paths)
    for (int v : p.vertices) res.multiplicity[v] += 1;
  for (auto& [v, m] : res.multiplicity)
    if (m > vcap)
      throw std::logic_error("packing certificate violates capacity");  // unreachable guard
  return res;
}

LabelledGraph delete_vertices(const LabelledGraph& g, const std::vector<int>& vertices) {
  std::vector<char> drop(g.vertex_count(), 0);
  for (int v : vertices) {
    if (v < 0 || v >= g.vertex_count()) throw ValidationError("delete_vertices: bad vertex id");
    drop[v] = 1;
  }
  LabelledGraph out(g.spec());
  std::vector<int> remap(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!drop[v]) remap[v] = out.add_vertex(g.vertex_name(v), g.is_terminal(v));
  for (const Edge& e : g.edges())
    if (!drop[e.u] && !drop[e.v]) out.add_edge(remap[e.u], remap[e.v], e.label);
  return out;
}

namespace {

bool covers_all(const std::vector<ApPath>& paths, const std::vector<char>& in_cover,
                size_t* first_uncovered) {
  for (size_t i = 0; i < paths.size(); ++i) {
    bool hit = false;
    for (int v : paths[i].vertices)
      if (in_cover[v]) {
        hit = true;
        break;
      }
    if (!hit) {
      *first_uncovered = i;
      return false;
    }
  }
  return true;
}

bool cover_search(const std::vector<ApPath>& paths, std::vector<char>& in_cover, int budget,
                  std::vector<int>& chosen, std::vector<int>& best) {
  size_t idx = 0;
  if (covers_all(paths, in_cover, &idx)) {
    best = chosen;
    return true;
  }
  if (budget == 0) return false;
  // branch on the first uncovered path, trying its vertices in path order
  for (int v : paths[idx].vertices) {
    in_cover[v] = 1;
    chosen.push_back(v);
    if (cover_search(paths, in_cover, budget - 1, chosen, best)) return true;
    chosen.pop_back();
    in_cover[v] = 0;
  }
  return false;
}

}  // namespace

CoverResult min_cover(const LabelledGraph& g, const LambdaSet& lambda, int cap) {
  std::vector<ApPath> all = enumerate_allowable(g, lambda, cap);
  CoverResult res;
  std::vector<char> in_cover(g.vertex_count(), 0);
  std::vector<int> chosen, best;
  for (int t = 0;; ++t) {
    if (cover_search(all, in_cover, t, chosen, best)) {
      res.vertices = best;
      break;
    }
  }
  std::sort(res.vertices.begin(), res.vertices.end());
  res.verified = enumerate_allowable(delete_vertices(g, res.vertices), lambda, cap).empty();
  return res;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

DualityReport duality_report(const LabelledGraph& g, const LambdaSet& lambda, int cap) {
  DualityReport r;
  r.nu = (int)max_packing(g, lambda, PackingMode::integral, cap).paths.size();
  r.nu_half_raw = (int)max_packing(g, lambda, PackingMode::half_integral, cap).paths.size();
  r.tau = (int)min_cover(g, lambda, cap).vertices.size();
  r.nu_half = (r.nu_half_raw % 2 == 0) ? Rational{r.nu_half_raw / 2, 1}
                                       : Rational{r.nu_half_raw, 2};
  return r;
}

}  // namespace eposa
