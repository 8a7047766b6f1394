#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eposa/obstruct.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

using namespace eposa;

namespace {

GroupElement el(int x) { return GroupElement{x}; }

LambdaSet lam(const GroupSpec& spec, std::vector<int> xs) {
  std::vector<GroupElement> es;
  for (int x : xs) es.push_back(el(x));
  return make_lambda(spec, es);
}

// independent recount of vertex multiplicities across a path multiset
std::map<int, int> multiplicities(const std::vector<ApPath>& paths) {
  std::map<int, int> m;
  for (const auto& p : paths)
    for (int v : p.vertices) ++m[v];
  return m;
}

void check_witnesses(const RibbonedWall& r, const LambdaSet& lambda, const WallSolveResult& s) {
  for (const auto& p : s.packing) {
    CHECK(is_allowable(r.graph, p, lambda));
    CHECK(is_minimally_allowable(r, p));
  }
  for (const auto& p : s.half_packing) CHECK(is_allowable(r.graph, p, lambda));
  for (const auto& [v, m] : multiplicities(s.packing)) CHECK(m <= 1);
  for (const auto& [v, m] : multiplicities(s.half_packing)) CHECK(m <= 2);
  CHECK(s.nu_lower <= s.nu_upper);
  CHECK(s.raw_lower <= s.raw_upper);
  CHECK(2 * s.nu_lower <= s.raw_upper);
  if (s.tau >= 0) {
    CHECK(s.nu_lower <= s.tau);
    CHECK(s.raw_lower <= 2 * s.tau);
    // the reported cover really blocks every allowable path
    CHECK_FALSE(find_allowable_avoiding(r, lambda, s.cover).has_value());
  }
}

}  // namespace

TEST_CASE("fig1a on Z/6 with the non-splitting singleton") {
  GroupSpec z6 = make_spec({6});
  LambdaSet L = lam(z6, {4});
  RibbonedWall r = gen_fig1a(z6, el(0), el(1), el(3), 2, L);

  CHECK(r.m() == 1);
  CHECK(r.k == 1);
  CHECK(r.q_mode == QMode::disjoint);
  CHECK((int)r.pbars[0].handles.size() == 2);
  CHECK((int)r.q1.handles.size() == 2);
  CHECK((int)r.q2.handles.size() == 2);
  CHECK(r.wall.order() >= 6);
  CHECK(r.wall.order() >= r.k * (r.m() + 2));

  // handles sit on distinct degree-2 boundary spots
  std::set<int> spots;
  for (const auto& h : r.pbars[0].handles) {
    spots.insert(h.spot_u);
    spots.insert(h.spot_v);
    CHECK(r.wall.boundary_pos[h.spot_u] < r.wall.boundary_pos[h.spot_v]);
  }
  for (const auto& h : r.q1.handles) spots.insert(h.spot);
  for (const auto& h : r.q2.handles) spots.insert(h.spot);
  CHECK(spots.size() == 8);
  for (int v : spots) CHECK(r.wall.graph.degree(v) == 2);

  ConditionFlags f = check_conditions(r, L);
  CHECK(f.a1);
  CHECK(f.a2);
  CHECK(f.a3);
  CHECK(f.a4);
  CHECK(f.a5);
  CHECK(f.a6);
  CHECK(f.a7);
  CHECK(f.irreducible);
  CHECK(f.obstruction);

  WallSolveResult s = solve_ribboned(r, L);
  check_witnesses(r, L, s);
  CHECK(s.nu_lower == 1);
  CHECK(s.nu_upper == 1);  // chord sweep: no two disjoint allowable paths
  CHECK(s.raw_lower >= 2);
  CHECK(s.tau == 2);
}

TEST_CASE("fig1b on Z/15 with the coprime-residue family") {
  GroupSpec z15 = make_spec({15});
  LambdaSet L = lam(z15, {1, 2, 4, 7, 8, 11, 13, 14});
  RibbonedWall r = gen_fig1b(z15, el(0), el(3), el(5), 2, L);

  CHECK(r.m() == 2);
  CHECK(r.k == 1);
  CHECK(r.q_mode == QMode::equal);
  CHECK((int)r.q1.handles.size() == 3);
  CHECK(r.q2.handles[0].edge_id == r.q1.handles[0].edge_id);

  ConditionFlags f = check_conditions(r, L);
  CHECK(f.obstruction);

  WallSolveResult s = solve_ribboned(r, L);
  check_witnesses(r, L, s);
  CHECK(s.nu_lower == 1);
  CHECK(s.nu_upper == 1);
  CHECK(s.tau == 2);
}

TEST_CASE("cover size grows with n on figure instances") {
  GroupSpec z6 = make_spec({6});
  LambdaSet L6 = lam(z6, {4});
  WallSolveResult a2 = solve_ribboned(gen_fig1a(z6, el(0), el(1), el(3), 2, L6), L6);
  WallSolveResult a3 = solve_ribboned(gen_fig1a(z6, el(0), el(1), el(3), 3, L6), L6);
  CHECK(a2.nu_upper == 1);
  CHECK(a3.nu_upper == 1);
  CHECK(a2.tau == 2);
  CHECK(a3.tau == 3);

  GroupSpec z15 = make_spec({15});
  LambdaSet L15 = lam(z15, {1, 2, 4, 7, 8, 11, 13, 14});
  WallSolveResult b3 = solve_ribboned(gen_fig1b(z15, el(0), el(3), el(5), 3, L15), L15);
  CHECK(b3.nu_upper == 1);
  CHECK(b3.tau == 3);
}

TEST_CASE("searched parameters round-trip through the generator, Z/6") {
  GroupSpec z6 = make_spec({6});
  LambdaSet L = lam(z6, {4});
  auto params = find_obstruction_params(z6, L);
  REQUIRE(params.has_value());
  CHECK(params->m == 1);
  CHECK(params->q_mode == QMode::disjoint);

  for (int k : {2, 3}) {
    CAPTURE(k);
    RibbonedWall r = gen_from_params(*params, k, L);
    CHECK(r.wall.order() >= k * (params->m + 2));
    ConditionFlags f = check_conditions(r, L);
    CHECK(f.obstruction);

    WallSolveResult s = solve_ribboned(r, L);
    check_witnesses(r, L, s);
    CHECK(s.nu_lower == 1);
    CHECK(s.nu_upper == 1);
    CHECK(s.raw_lower == 2 * k);  // two tracks through every ear of the bar
    CHECK(s.raw_upper == 2 * k);
    CHECK(s.tau == k);
  }
}

TEST_CASE("searched parameters round-trip through the generator, Z/15") {
  GroupSpec z15 = make_spec({15});
  LambdaSet L = lam(z15, {1, 2, 4, 7, 8, 11, 13, 14});
  auto params = find_obstruction_params(z15, L);
  REQUIRE(params.has_value());
  CHECK(params->m == 2);
  CHECK(params->q_mode == QMode::equal);

  RibbonedWall r = gen_from_params(*params, 2, L);
  ConditionFlags f = check_conditions(r, L);
  CHECK(f.obstruction);

  WallSolveResult s = solve_ribboned(r, L);
  check_witnesses(r, L, s);
  CHECK(s.nu_upper == 1);
  CHECK(s.raw_lower >= 2);  // half-integral value >= k while integral stays at one
  CHECK(s.tau >= 2);
}

TEST_CASE("two-bar chains route the full half-packing") {
  // Greedy track placement used to wedge at k = 3: the sixth chained path
  // found its terminal spot walled in by earlier tracks.  The negotiated
  // reroute must always land all 2k paths.
  GroupSpec z15 = make_spec({15});
  LambdaSet L = lam(z15, {1, 2, 4, 7, 8, 11, 13, 14});
  auto params = find_obstruction_params(z15, L);
  REQUIRE(params.has_value());
  REQUIRE(params->m == 2);
  for (int k = 2; k <= 3; ++k) {
    RibbonedWall r = gen_from_params(*params, k, L);
    WallSolveResult s = solve_ribboned(r, L);
    check_witnesses(r, L, s);
    CHECK(s.nu_upper == 1);
    CHECK(s.raw_lower == 2 * k);
  }
}

TEST_CASE("equal-mode irreducible instances pack k disjoint paths") {
  struct Case {
    std::vector<int> moduli, lambda;
  };
  for (const Case& c : {Case{{5}, {2}}, Case{{4}, {0}}}) {
    GroupSpec spec = make_spec(c.moduli);
    LambdaSet L = lam(spec, c.lambda);
    CAPTURE(c.moduli[0]);
    auto params = find_irreducible_params(spec, L);
    REQUIRE(params.has_value());
    CHECK(params->q_mode == QMode::equal);

    RibbonedWall r = gen_from_params(*params, 2, L);
    ConditionFlags f = check_conditions(r, L);
    CHECK(f.irreducible);
    CHECK_FALSE(f.a7);  // one-bar equal-mode instances never satisfy it
    CHECK_FALSE(f.obstruction);

    WallSolveResult s = solve_ribboned(r, L);
    check_witnesses(r, L, s);
    CHECK(s.nu_lower == 2);  // nested tongues through the single bar
    CHECK(s.nu_upper == 2);
    CHECK(s.raw_lower == 4);
    CHECK(s.tau == 2);
  }
}

TEST_CASE("a violated coset condition is reported") {
  GroupSpec z6 = make_spec({6});
  LambdaSet L = lam(z6, {4});
  ObstructionParams bad;
  bad.m = 1;
  bad.g = {el(2)};
  bad.kinds = {BarKind::series};
  bad.h1 = el(0);
  bad.h2 = el(2);
  bad.q_mode = QMode::disjoint;
  RibbonedWall r = gen_from_params(bad, 2, L);
  ConditionFlags f = check_conditions(r, L);
  CHECK(f.a1);
  CHECK(f.a2);
  CHECK(f.a3);        // 2 + 0 + 2 = 4 lies in the family
  CHECK_FALSE(f.a4);  // ...but so does 2*h2, an ear-free residue
  CHECK_FALSE(f.irreducible);
  CHECK_FALSE(f.obstruction);
}

TEST_CASE("minimal allowability distinguishes handle usage") {
  GroupSpec z6 = make_spec({6});
  LambdaSet L = lam(z6, {4});
  RibbonedWall r = gen_fig1a(z6, el(0), el(1), el(3), 2, L);

  WallSolveResult s = solve_ribboned(r, L, false);
  REQUIRE(s.nu_lower >= 1);
  CHECK(is_minimally_allowable(r, s.packing[0]));

  // an A-path that skips the bar entirely: allowable for {1} but not minimal
  LambdaSet direct = lam(z6, {1});
  auto p = find_allowable_avoiding(r, direct, {});
  REQUIRE(p.has_value());
  CHECK(is_allowable(r.graph, *p, direct));
  CHECK_FALSE(is_minimally_allowable(r, *p));

  ApPath junk;
  junk.vertices = {0, 2, 1};
  junk.edge_ids = {0};
  CHECK_THROWS_AS(is_minimally_allowable(r, junk), ValidationError);
}

TEST_CASE("oracle respects blocked vertices") {
  GroupSpec z6 = make_spec({6});
  LambdaSet L = lam(z6, {4});
  RibbonedWall r = gen_fig1a(z6, el(0), el(1), el(3), 2, L);

  auto p = find_allowable_avoiding(r, L, {});
  REQUIRE(p.has_value());
  CHECK(is_allowable(r.graph, *p, L));
  CHECK(is_minimally_allowable(r, *p));

  std::vector<int> all_q1;
  for (const auto& h : r.q1.handles) all_q1.push_back(h.spot);
  CHECK_FALSE(find_allowable_avoiding(r, L, all_q1).has_value());

  CHECK_THROWS_AS(find_allowable_avoiding(r, L, {-1}), ValidationError);
}

TEST_CASE("ribbon text round-trip") {
  GroupSpec z6 = make_spec({6});
  LambdaSet L = lam(z6, {4});
  auto params = find_obstruction_params(z6, L);
  REQUIRE(params.has_value());
  RibbonedWall r = gen_from_params(*params, 2, L);

  std::string text = serialize_ribboned(r);
  RibbonedWall back = parse_ribboned(text);
  CHECK(serialize_ribboned(back) == text);
  CHECK(back.k == r.k);
  CHECK(back.q_mode == r.q_mode);
  CHECK(back.m() == r.m());
  CHECK(back.wall_edge_count == r.wall_edge_count);
  for (int i = 0; i < r.m(); ++i) {
    CHECK(back.pbars[i].kind == r.pbars[i].kind);
    CHECK(back.pbars[i].gamma == r.pbars[i].gamma);
    REQUIRE(back.pbars[i].handles.size() == r.pbars[i].handles.size());
    for (size_t j = 0; j < r.pbars[i].handles.size(); ++j) {
      CHECK(back.pbars[i].handles[j].edge_id == r.pbars[i].handles[j].edge_id);
      CHECK(back.pbars[i].handles[j].spot_u == r.pbars[i].handles[j].spot_u);
      CHECK(back.pbars[i].handles[j].spot_v == r.pbars[i].handles[j].spot_v);
    }
  }
  ConditionFlags f = check_conditions(back, L);
  CHECK(f.obstruction);

  // the sidecar rides along as comments: a plain parse still sees the graph
  LabelledGraph plain = parse_lgraph(text);
  CHECK(plain.vertex_count() == r.graph.vertex_count());
  CHECK(plain.edge_count() == r.graph.edge_count());
}

TEST_CASE("ribbon parse rejects malformed sidecars") {
  GroupSpec z6 = make_spec({6});
  LambdaSet L = lam(z6, {4});
  RibbonedWall r = gen_fig1a(z6, el(0), el(1), el(3), 2, L);
  std::string text = serialize_ribboned(r);

  // missing q2 line
  std::string cut = text.substr(0, text.rfind("#!ribbon q2"));
  CHECK_THROWS_AS(parse_ribboned(cut), ValidationError);

  // a k too large for the wall
  std::string big = text;
  auto at = big.find("meta k 1");
  REQUIRE(at != std::string::npos);
  big.replace(at, 8, "meta k 9");
  CHECK_THROWS_AS(parse_ribboned(big), ValidationError);

  // handle id pointing into the wall part
  std::string wild = text;
  at = wild.find("#!ribbon pbar series");
  REQUIRE(at != std::string::npos);
  auto line_end = wild.find('\n', at);
  auto ids_at = wild.rfind(' ', line_end);
  wild.replace(ids_at + 1, line_end - ids_at - 1, "0");
  CHECK_THROWS_AS(parse_ribboned(wild), ValidationError);

  CHECK_THROWS_AS(parse_ribboned(serialize_lgraph(r.graph)), ValidationError);
}

TEST_CASE("balance check catches a shifted wall vertex") {
  GroupSpec z6 = make_spec({6});
  LambdaSet L = lam(z6, {4});
  RibbonedWall r = gen_fig1a(z6, el(0), el(1), el(3), 2, L);
  CHECK(strongly_balanced(r));

  // shifting is only defined for order-2 elements; 3 has order 2 in Z/6
  int interior = r.wall.vid_at.at({3, 2});
  RibbonedWall shifted = r;
  shifted.graph = shift(r.graph, interior, el(3));
  CHECK_FALSE(strongly_balanced(shifted));
  CHECK_FALSE(check_conditions(shifted, L).a2);
}

TEST_CASE("dot export covers the whole instance") {
  GroupSpec z6 = make_spec({6});
  LambdaSet L = lam(z6, {4});
  RibbonedWall r = gen_fig1a(z6, el(0), el(1), el(3), 2, L);
  std::string dot = ribboned_to_dot(r, "W");
  CHECK(dot.find("graph W") != std::string::npos);
  CHECK(dot.find("color=red") != std::string::npos);   // bar handles
  CHECK(dot.find("color=blue") != std::string::npos);  // terminal handles
  size_t edges = 0;
  for (size_t at = dot.find(" -- "); at != std::string::npos; at = dot.find(" -- ", at + 1))
    ++edges;
  CHECK(edges == (size_t)r.graph.edge_count());
}

TEST_CASE("generator input validation") {
  GroupSpec z6 = make_spec({6});
  LambdaSet L = lam(z6, {4});
  CHECK_THROWS_AS(gen_fig1a(z6, el(0), el(1), el(3), 1, L), ValidationError);
  CHECK_THROWS_AS(gen_fig1b(z6, el(0), el(1), el(3), 0, L), ValidationError);
  GroupSpec z4 = make_spec({4});
  CHECK_THROWS_AS(gen_fig1a(z4, GroupElement{0}, GroupElement{1}, GroupElement{3}, 2, L),
                  ValidationError);

  ObstructionParams p;
  p.m = 1;
  p.g = {el(3)};
  p.kinds = {BarKind::series};
  p.h1 = el(0);
  p.h2 = el(1);
  p.q_mode = QMode::equal;  // equal mode demands h1 == h2
  CHECK_THROWS_AS(gen_from_params(p, 2, L), ValidationError);
  p.q_mode = QMode::disjoint;
  CHECK_THROWS_AS(gen_from_params(p, 0, L), ValidationError);
}
