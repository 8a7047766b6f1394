// Acceptance gate for the toolkit: nine end-to-end checks, one line each.
// Every check pins its own runtime budget; the binary exits nonzero when any
// check fails its assertions or its budget.

#include "eposa/encode.hpp"
#include "eposa/obstruct.hpp"
#include "eposa/paths.hpp"
#include "eposa/walls.hpp"

#include "test_util.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace eposa;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

void req(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

LambdaSet lam_of(const GroupSpec& spec, const std::vector<int>& xs) {
  std::vector<GroupElement> es;
  for (int x : xs) es.push_back({x});
  return make_lambda(spec, es);
}

LambdaSet full_lambda(const GroupSpec& spec) { return make_lambda(spec, elements_of(spec)); }

std::vector<int> canon(std::vector<int> s) {
  if (s.size() > 1 && s.back() < s.front()) std::reverse(s.begin(), s.end());
  return s;
}

using SeqSet = std::set<std::vector<int>>;

std::string seq_str(const std::vector<int>& s) {
  std::string out;
  for (int v : s) out += std::to_string(v) + " ";
  return out;
}

// ---- criterion 1: the two worked examples -----------------------------------

void c1_worked_examples() {
  GroupSpec z15 = make_spec({15});
  LambdaSet co = lam_of(z15, {1, 2, 4, 7, 8, 11, 13, 14});
  EpVerdict e2 = check_ep2(z15, co);
  req(!e2.holds && e2.witness.has_value(), "Z/15 coprime set must fail the triple condition");
  req((*e2.witness)[0] == GroupElement{0} && (*e2.witness)[1] == GroupElement{3} &&
          (*e2.witness)[2] == GroupElement{5},
      "Z/15 witness must be (0, 3, 5)");
  req(check_ep1(z15, co).holds, "Z/15 coprime set must pass the pair condition");

  GroupSpec z6 = make_spec({6});
  LambdaSet l4 = lam_of(z6, {4});
  EpVerdict e1 = check_ep1(z6, l4);
  req(!e1.holds && e1.witness.has_value(), "Z/6 {4} must fail the pair condition");
  req((*e1.witness)[0] == GroupElement{0} && (*e1.witness)[1] == GroupElement{1} &&
          (*e1.witness)[2] == GroupElement{3},
      "Z/6 witness must be (0, 1, 3)");
  req(check_ep2(z6, l4).holds, "Z/6 {4} must pass the triple condition");
}

// ---- criterion 2: singleton verdicts against the closed-form families --------

void c2_singleton_sweep() {
  long long checked = 0;
  for (const GroupSpec& spec : enumerate_abelian_groups(16)) {
    for (const GroupElement& ell : elements_of(spec)) {
      bool family = singleton_family_verdict(spec, ell);
      EpcVerdict v = check_epc(spec, make_lambda(spec, {ell}));
      if (v.satisfies != family)
        fail("singleton mismatch in " + format_group_spec(spec) + " at element " +
             format_element(spec, ell));
      ++checked;
    }
  }
  req(checked >= 100, "sweep covered too few singletons");
}

// ---- criterion 3: condition failure <=> parameters exist ---------------------

void c3_equivalence_sweep() {
  long long checked = 0;
  for (const GroupSpec& spec : enumerate_abelian_groups(8)) {
    std::vector<GroupElement> elems = elements_of(spec);
    int n = (int)elems.size();
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<GroupElement> chosen;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) chosen.push_back(elems[i]);
      LambdaSet L = make_lambda(spec, chosen);
      bool satisfies = check_epc(spec, L).satisfies;
      bool has_params = find_obstruction_params(spec, L).has_value();
      if (satisfies == has_params) {
        std::string desc;
        for (const auto& e : chosen) desc += format_element(spec, e) + " ";
        fail("equivalence broken in " + format_group_spec(spec) + " for {" + desc + "}");
      }
      ++checked;
    }
  }
  req(checked >= 1000, "sweep covered too few element sets");
}

// ---- criterion 4: figure instances, nu pinned at 1, tau growing --------------

void c4_figure_duality() {
  struct Fam {
    bool first_shape;
    GroupSpec spec;
    LambdaSet L;
    GroupElement a, b, c;
  };
  GroupSpec z6 = make_spec({6}), z15 = make_spec({15});
  std::vector<Fam> fams = {
      {true, z6, lam_of(z6, {4}), {0}, {1}, {3}},
      {false, z15, lam_of(z15, {1, 2, 4, 7, 8, 11, 13, 14}), {0}, {3}, {5}},
  };
  for (const Fam& f : fams) {
    int prev_tau = 0;
    for (int n = 2; n <= 3; ++n) {
      auto t0 = std::chrono::steady_clock::now();
      RibbonedWall r = f.first_shape ? gen_fig1a(f.spec, f.a, f.b, f.c, n, f.L)
                                     : gen_fig1b(f.spec, f.a, f.b, f.c, n, f.L);
      WallSolveResult s = solve_ribboned(r, f.L, true);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::string tag = (f.first_shape ? std::string("first") : std::string("second")) +
                        " shape, n=" + std::to_string(n);
      req(secs < 60.0, tag + " exceeded its 60s budget");
      req(s.nu_exact() && s.nu_lower == 1, tag + ": integral packing number must be exactly 1");
      req(s.tau > prev_tau, tag + ": cover size must grow strictly with n");
      prev_tau = s.tau;
    }
  }
}

// ---- criterion 5: generated irreducible instances pack to k ------------------

void c5_irreducible_packing() {
  struct Pair {
    GroupSpec spec;
    LambdaSet L;
  };
  GroupSpec z6 = make_spec({6}), z15 = make_spec({15}), z5 = make_spec({5}), z4 = make_spec({4});
  std::vector<Pair> pairs = {
      {z6, lam_of(z6, {4})},
      {z15, lam_of(z15, {1, 2, 4, 7, 8, 11, 13, 14})},
      {z5, lam_of(z5, {2})},
      {z4, lam_of(z4, {0})},
  };
  for (const Pair& pr : pairs) {
    bool satisfies = check_epc(pr.spec, pr.L).satisfies;
    auto params = satisfies ? find_irreducible_params(pr.spec, pr.L)
                            : find_obstruction_params(pr.spec, pr.L);
    std::string gname = format_group_spec(pr.spec);
    req(params.has_value(), gname + ": no instance parameters found");
    for (int k = 2; k <= 3; ++k) {
      RibbonedWall r = gen_from_params(*params, k, pr.L);
      req(check_conditions(r, pr.L).irreducible,
          gname + " k=" + std::to_string(k) + ": instance must be irreducible");
      WallSolveResult s = solve_ribboned(r, pr.L);
      req(s.raw_lower >= 2 * k,
          gname + " k=" + std::to_string(k) + ": half-integral witness must reach k");
      if (satisfies && k == 2)
        req(s.nu_lower >= k, gname + " k=2: disjoint witness must reach k");
    }
  }
}

// ---- criterion 6: the five encodings round-trip -------------------------------

LabelledGraph with_terminals(const LabelledGraph& g, const std::set<int>& term) {
  LabelledGraph out(g.spec());
  for (int v = 0; v < g.vertex_count(); ++v) out.add_vertex(g.vertex_name(v), term.count(v) > 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    out.add_edge(ed.u, ed.v, ed.label);
  }
  return out;
}

int pack_seqs(const LabelledGraph& g, const SeqSet& seqs) {
  std::vector<ApPath> dummies;
  for (const auto& s : seqs) {
    ApPath p;
    p.vertices = s;
    dummies.push_back(std::move(p));
  }
  return testutil::brute_force_packing(g, dummies, 1, 1);
}

// Target-side packing: actual allowable target paths, deduplicated by their
// own vertex sequence (parallel copies of an edge give identical sequences).
int pack_target(const Encoding& enc, const std::vector<ApPath>& tpaths) {
  SeqSet seqs;
  for (const auto& p : tpaths) seqs.insert(canon(p.vertices));
  return pack_seqs(enc.target, seqs);
}

SeqSet decode_seqs(const Encoding& enc, const std::vector<ApPath>& tpaths) {
  SeqSet out;
  for (const auto& p : tpaths) out.insert(canon(back_map_path(enc, p)));
  return out;
}

void check_round_trip(const std::string& kind, const LabelledGraph& src, const Encoding& enc,
                      const std::vector<ApPath>& tpaths, const SeqSet& want) {
  SeqSet dec = decode_seqs(enc, tpaths);
  if (dec != want) {
    for (const auto& s : dec)
      if (!want.count(s)) fail(kind + ": decoded path [" + seq_str(s) + "] has no source match");
    for (const auto& s : want)
      if (!dec.count(s)) fail(kind + ": source path [" + seq_str(s) + "] lost in the target");
  }
  int ps = pack_seqs(src, want);
  int pt = pack_target(enc, tpaths);
  if (ps != pt)
    fail(kind + ": packing numbers differ (source " + std::to_string(ps) + ", target " +
         std::to_string(pt) + ")");
}

bool is_simple(const LabelledGraph& g) {
  std::set<std::pair<int, int>> seen;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (!seen.insert({std::min(ed.u, ed.v), std::max(ed.u, ed.v)}).second) return false;
  }
  return true;
}

LabelledGraph truncate_edges(const LabelledGraph& g, int max_edges) {
  LabelledGraph out(g.spec());
  for (int v = 0; v < g.vertex_count(); ++v) out.add_vertex(g.vertex_name(v), g.is_terminal(v));
  for (int e = 0; e < g.edge_count() && e < max_edges; ++e) {
    const Edge& ed = g.edge(e);
    out.add_edge(ed.u, ed.v, ed.label);
  }
  return out;
}

template <typename F>
std::optional<std::vector<ApPath>> try_enumerate(const LabelledGraph& g, const LambdaSet& L,
                                                 F&& keep) {
  try {
    std::vector<ApPath> out = enumerate_allowable(g, L);
    if (!keep(out)) return std::nullopt;
    return out;
  } catch (const ExplosionError&) {
    return std::nullopt;
  }
}

void c6_modular_loop() {
  std::mt19937 rng(7101);
  int done = 0;
  while (done < 100) {
    testutil::Instance inst = testutil::random_instance(rng);
    if (inst.graph.vertex_count() > 8) continue;
    int m = 2 + (int)(rng() % 3);
    std::set<int> residues;
    for (int r = 0; r < m; ++r)
      if (rng() % 2) residues.insert(r);
    if (residues.empty()) residues.insert((int)(rng() % m));

    auto all = try_enumerate(inst.graph, full_lambda(inst.graph.spec()),
                             [](const std::vector<ApPath>&) { return true; });
    if (!all) continue;
    SeqSet want;
    for (const auto& p : *all)
      if (residues.count(((int)p.vertices.size() - 1) % m)) want.insert(canon(p.vertices));
    if (want.size() > 12) continue;

    Encoding enc =
        encode_modular(inst.graph, m, std::vector<int>(residues.begin(), residues.end()));
    auto tpaths = try_enumerate(enc.target, enc.lambda_target,
                                [](const std::vector<ApPath>&) { return true; });
    if (!tpaths) continue;
    check_round_trip("length classes", inst.graph, enc, *tpaths, want);
    ++done;
  }
}

void c6_edge_sets_loop() {
  std::mt19937 rng(7102);
  int done = 0;
  while (done < 100) {
    testutil::Instance inst = testutil::random_instance(rng);
    const LabelledGraph& g = inst.graph;
    if (g.vertex_count() > 8 || g.edge_count() == 0 || !is_simple(g)) continue;
    int k = 1 + (int)(rng() % 2);
    std::vector<std::vector<int>> fsets(k);
    std::vector<std::set<int>> flook(k);
    for (int i = 0; i < k; ++i) {
      for (int e = 0; e < g.edge_count(); ++e)
        if (rng() % 3 == 0) flook[i].insert(e);
      if (flook[i].empty()) flook[i].insert((int)(rng() % g.edge_count()));
      fsets[i].assign(flook[i].begin(), flook[i].end());
    }

    auto all = try_enumerate(g, full_lambda(g.spec()),
                             [](const std::vector<ApPath>&) { return true; });
    if (!all) continue;
    SeqSet want;
    for (const auto& p : *all) {
      bool hits_all = true;
      for (int i = 0; i < k && hits_all; ++i)
        hits_all = std::any_of(p.edge_ids.begin(), p.edge_ids.end(),
                               [&](int e) { return flook[i].count(e) > 0; });
      if (hits_all) want.insert(canon(p.vertices));
    }
    if (want.size() > 12) continue;

    Encoding enc = encode_edge_sets(g, fsets);
    auto tpaths = try_enumerate(enc.target, enc.lambda_target,
                                [](const std::vector<ApPath>&) { return true; });
    if (!tpaths) continue;
    check_round_trip("mandatory edges", g, enc, *tpaths, want);
    ++done;
  }
}

std::vector<int> random_subset(std::mt19937& rng, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (rng() % 3 == 0) out.push_back(v);
  if (out.empty()) out.push_back((int)(rng() % n));
  return out;
}

LambdaSet random_lambda(std::mt19937& rng, const GroupSpec& spec) {
  std::vector<GroupElement> elems = elements_of(spec), chosen;
  for (const auto& e : elems)
    if (rng() % 3 == 0) chosen.push_back(e);
  if (chosen.empty()) chosen.push_back(elems[rng() % elems.size()]);
  return make_lambda(spec, chosen);
}

void c6_ab_loop() {
  std::mt19937 rng(7103);
  int done = 0;
  while (done < 100) {
    testutil::Instance inst = testutil::random_instance(rng);
    const LabelledGraph& g = inst.graph;
    if (g.vertex_count() > 8) continue;
    std::vector<int> A = random_subset(rng, g.vertex_count());
    std::vector<int> B = random_subset(rng, g.vertex_count());
    LambdaSet L = random_lambda(rng, g.spec());
    std::set<int> aset(A.begin(), A.end()), bset(B.begin(), B.end());
    std::set<int> ab;
    ab.insert(A.begin(), A.end());
    ab.insert(B.begin(), B.end());

    LabelledGraph ref = with_terminals(g, ab);
    auto all = try_enumerate(ref, full_lambda(g.spec()),
                             [](const std::vector<ApPath>&) { return true; });
    if (!all) continue;
    SeqSet want;
    for (const auto& p : *all) {
      int f = p.vertices.front(), b = p.vertices.back();
      bool ends_ok = (aset.count(f) && bset.count(b)) || (bset.count(f) && aset.count(b));
      if (ends_ok && L.contains(p.gamma)) want.insert(canon(p.vertices));
    }
    if (want.size() > 12) continue;

    Encoding enc = encode_ab_paths(g, A, B, L);
    auto tpaths = try_enumerate(enc.target, enc.lambda_target,
                                [](const std::vector<ApPath>&) { return true; });
    if (!tpaths) continue;
    check_round_trip("endpoint split", ref, enc, *tpaths, want);
    ++done;
  }
}

// All simple paths with at least one edge, every endpoint allowed.
void all_paths_dfs(const LabelledGraph& g, std::vector<int>& verts, std::vector<int>& eids,
                   std::vector<char>& used, std::vector<std::pair<std::vector<int>, GroupElement>>& out) {
  if (verts.size() >= 2) out.push_back({verts, gamma_length(g, eids)});
  int at = verts.back();
  for (auto [w, eid] : g.incident(at)) {
    if (used[w]) continue;
    used[w] = 1;
    verts.push_back(w);
    eids.push_back(eid);
    all_paths_dfs(g, verts, eids, used, out);
    eids.pop_back();
    verts.pop_back();
    used[w] = 0;
  }
}

void c6_weak_ab_loop() {
  std::mt19937 rng(7104);
  int done = 0;
  while (done < 100) {
    testutil::Instance raw = testutil::random_instance(rng);
    if (raw.graph.vertex_count() > 6) continue;
    LabelledGraph g = truncate_edges(raw.graph, 10);
    std::vector<int> A = random_subset(rng, g.vertex_count());
    std::vector<int> B = random_subset(rng, g.vertex_count());
    LambdaSet L = random_lambda(rng, g.spec());
    std::set<int> aset(A.begin(), A.end()), bset(B.begin(), B.end());

    std::vector<std::pair<std::vector<int>, GroupElement>> walks;
    for (int v = 0; v < g.vertex_count(); ++v) {
      std::vector<int> verts{v}, eids;
      std::vector<char> used(g.vertex_count(), 0);
      used[v] = 1;
      all_paths_dfs(g, verts, eids, used, walks);
    }
    SeqSet want;
    for (const auto& [seq, gamma] : walks)
      if (aset.count(seq.front()) && bset.count(seq.back()) && L.contains(gamma))
        want.insert(canon(seq));
    if (L.contains(zero(g.spec())))
      for (int v : A)
        if (bset.count(v)) want.insert({v});
    if (want.size() > 12) continue;

    Encoding enc = encode_weak_ab(g, A, B, L);
    auto tpaths = try_enumerate(enc.target, enc.lambda_target,
                                [](const std::vector<ApPath>&) { return true; });
    if (!tpaths) continue;
    check_round_trip("weak endpoints", g, enc, *tpaths, want);
    ++done;
  }
}

void c6_h_feasible_loop() {
  std::mt19937 rng(7105);
  int done = 0;
  while (done < 100) {
    testutil::Instance inst = testutil::random_instance(rng);
    const LabelledGraph& g = inst.graph;
    if (g.vertex_count() > 8) continue;
    std::vector<int> terms;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (g.is_terminal(v)) terms.push_back(v);
    int kp = 1 + (int)(rng() % std::min<size_t>(3, terms.size()));
    std::vector<std::vector<int>> parts(kp);
    std::vector<int> part_of(g.vertex_count(), -1);
    for (int t : terms) {
      int p = (int)(rng() % kp);
      parts[p].push_back(t);
      part_of[t] = p;
    }
    if (std::any_of(parts.begin(), parts.end(),
                    [](const std::vector<int>& p) { return p.empty(); }))
      continue;
    std::vector<HEdge> hedges;
    for (int i = 0; i < kp; ++i)
      for (int j = i; j < kp; ++j)
        if (rng() % 2) hedges.push_back({i, j, random_lambda(rng, g.spec())});
    if (hedges.empty()) continue;

    auto all = try_enumerate(g, full_lambda(g.spec()),
                             [](const std::vector<ApPath>&) { return true; });
    if (!all) continue;
    SeqSet want;
    for (const auto& p : *all) {
      int pf = part_of[p.vertices.front()], pb = part_of[p.vertices.back()];
      for (const HEdge& he : hedges) {
        bool match = (he.i == std::min(pf, pb) && he.j == std::max(pf, pb)) ||
                     (he.i == std::max(pf, pb) && he.j == std::min(pf, pb));
        if (match && he.lambda.contains(p.gamma)) {
          want.insert(canon(p.vertices));
          break;
        }
      }
    }
    if (want.size() > 12) continue;

    Encoding enc = encode_h_feasible(g, parts, hedges);
    auto tpaths = try_enumerate(enc.target, enc.lambda_target,
                                [](const std::vector<ApPath>&) { return true; });
    if (!tpaths) continue;
    check_round_trip("endpoint patterns", g, enc, *tpaths, want);
    ++done;
  }
}

void c6_encodings() {
  c6_modular_loop();
  c6_edge_sets_loop();
  c6_ab_loop();
  c6_weak_ab_loop();
  c6_h_feasible_loop();
}

// ---- criterion 7: pure subsets at the cube bound ------------------------------

void c7_pure_subsets() {
  std::mt19937 rng(20260814);
  for (int k = 2; k <= 3; ++k) {
    int n = (k - 1) * (k - 1) * (k - 1) + 1;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<int> pos(2 * n);
      std::iota(pos.begin(), pos.end(), 0);
      std::shuffle(pos.begin(), pos.end(), rng);
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < n; ++i) pairs.push_back({pos[2 * i], pos[2 * i + 1]});

      auto got = extract_pure(pairs, k);
      req(got.has_value(), "no pure subset of size " + std::to_string(k) + " found at the bound");
      req((int)got->second.size() >= k, "returned pure subset is smaller than k");
      const std::vector<int>& sel = got->second;
      for (size_t a = 0; a < sel.size(); ++a)
        for (size_t b = a + 1; b < sel.size(); ++b)
          req(classify_pair(pairs[sel[a]], pairs[sel[b]]) == got->first,
              "returned subset is not pure");
    }
  }
}

// ---- criterion 8: solvers against brute force ---------------------------------

int brute_tau(const LabelledGraph& g, const std::vector<ApPath>& paths) {
  int n = g.vertex_count(), best = n;
  for (int mask = 0; mask < (1 << n); ++mask) {
    int size = __builtin_popcount((unsigned)mask);
    if (size >= best) continue;
    bool hits_all = true;
    for (const auto& p : paths) {
      bool hit = std::any_of(p.vertices.begin(), p.vertices.end(),
                             [&](int v) { return mask & (1 << v); });
      if (!hit) {
        hits_all = false;
        break;
      }
    }
    if (hits_all) best = size;
  }
  return best;
}

void c8_solver_oracle() {
  std::mt19937 rng(20240811);
  int checked = 0;
  while (checked < 200) {
    testutil::Instance inst = testutil::random_instance(rng);
    std::vector<ApPath> paths;
    try {
      paths = enumerate_allowable(inst.graph, inst.lambda);
    } catch (const ExplosionError&) {
      continue;
    }
    if (paths.size() > 12) continue;  // keep the exponential oracle cheap
    ++checked;
    int nu = (int)max_packing(inst.graph, inst.lambda, PackingMode::integral).paths.size();
    int raw = (int)max_packing(inst.graph, inst.lambda, PackingMode::half_integral).paths.size();
    req(nu == testutil::brute_force_packing(inst.graph, paths, 1, 1),
        "integral packing disagrees with brute force");
    req(raw == testutil::brute_force_packing(inst.graph, paths, 2, 2),
        "half-integral packing disagrees with brute force");
    CoverResult cover = min_cover(inst.graph, inst.lambda);
    req(cover.verified, "cover verification flag must be set");
    req((int)cover.vertices.size() == brute_tau(inst.graph, paths),
        "cover disagrees with brute force");
    req(2 * nu <= raw, "nu must be at most the half-integral value");
    req(raw <= 2 * (int)cover.vertices.size(), "half-integral value must be at most tau");
  }
}

// ---- criterion 9: invariance under boundary-preserving relabelling ------------

void c9_shift_invariance() {
  std::mt19937 rng(1234);
  int checked = 0;
  while (checked < 100) {
    testutil::Instance inst = testutil::random_instance(rng);
    const LabelledGraph& g = inst.graph;
    int m = g.spec().moduli[0];
    if (m % 2 != 0) continue;
    std::vector<int> interior;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (!g.is_terminal(v)) interior.push_back(v);
    if (interior.empty()) continue;

    LambdaSet full = full_lambda(g.spec());
    std::vector<ApPath> before;
    try {
      before = enumerate_allowable(g, full);
    } catch (const ExplosionError&) {
      continue;
    }
    std::vector<std::pair<std::vector<int>, GroupElement>> ref;
    for (const auto& p : before) ref.push_back({p.vertices, p.gamma});
    std::sort(ref.begin(), ref.end());
    ++checked;

    GroupElement delta = {m / 2};
    for (int v : interior) {
      LabelledGraph shifted = shift(g, v, delta);
      std::vector<std::pair<std::vector<int>, GroupElement>> got;
      for (const auto& p : enumerate_allowable(shifted, full)) got.push_back({p.vertices, p.gamma});
      std::sort(got.begin(), got.end());
      req(got == ref, "path multiset changed under a shift at vertex " + g.vertex_name(v));
    }
  }
}

// ---- driver -------------------------------------------------------------------

struct Criterion {
  const char* name;
  double budget_s;
  std::function<void()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> table = {
      {"worked-example fidelity", 1.0, c1_worked_examples},
      {"singleton classification sweep", 60.0, c2_singleton_sweep},
      {"condition-obstruction equivalence", 600.0, c3_equivalence_sweep},
      {"figure packings: nu = 1, tau grows", 240.0, c4_figure_duality},
      {"irreducible instances pack to k", 300.0, c5_irreducible_packing},
      {"encoding round-trips", 300.0, c6_encodings},
      {"pure subset extraction", 60.0, c7_pure_subsets},
      {"solver vs brute-force oracle", 300.0, c8_solver_oracle},
      {"shift invariance", 60.0, c9_shift_invariance},
  };

  int failures = 0;
  for (size_t i = 0; i < table.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    std::string err;
    try {
      table[i].run();
    } catch (const std::exception& e) {
      err = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = secs < table[i].budget_s;
    bool pass = err.empty() && in_budget;
    std::printf("%s  %zu  %-38s %7.2fs / %.0fs%s%s\n", pass ? "PASS" : "FAIL", i + 1,
                table[i].name, secs, table[i].budget_s, err.empty() ? "" : "  -- ",
                err.c_str());
    if (!pass && err.empty()) std::printf("            runtime budget exceeded\n");
    if (!pass) ++failures;
  }
  return failures;
}
