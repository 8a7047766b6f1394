#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eposa/lgraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

using namespace eposa;

namespace {

// Independent reference enumerator: all simple paths (as vertex/edge id
// sequences) between the given endpoints, used to check shift invariance.
std::vector<std::pair<std::vector<int>, GroupElement>> all_paths_between(
    const LabelledGraph& g, int s, int t) {
  std::vector<std::pair<std::vector<int>, GroupElement>> out;
  std::vector<int> vs = {s}, es;
  std::vector<char> used(g.vertex_count(), 0);
  used[s] = 1;
  std::function<void(int)> dfs = [&](int v) {
    if (v == t && !es.empty()) out.push_back({es, gamma_length(g, es)});
    for (auto [w, eid] : g.incident(v)) {
      if (used[w]) continue;
      used[w] = 1;
      vs.push_back(w);
      es.push_back(eid);
      dfs(w);
      es.pop_back();
      vs.pop_back();
      used[w] = 0;
    }
  };
  dfs(s);
  return out;
}

}  // namespace

TEST_CASE("construction enforces the multigraph invariants") {
  LabelledGraph g(make_spec({6}));
  int u = g.add_vertex("u", true);
  int w = g.add_vertex("w", true);
  g.add_edge(u, w, {4});
  g.add_edge(u, w, {2});  // parallel with a different label: fine
  CHECK_THROWS_AS(g.add_edge(u, w, {4}), ValidationError);  // duplicate label
  CHECK_THROWS_AS(g.add_edge(u, u, {1}), ValidationError);  // loop
  CHECK_THROWS_AS(g.add_vertex("u"), ValidationError);      // duplicate name
  CHECK(g.degree(u) == 2);
}

TEST_CASE("gamma_length sums labels") {
  LabelledGraph g(make_spec({6}));
  int a = g.add_vertex("a", true);
  int x = g.add_vertex("x");
  int b = g.add_vertex("b", true);
  int e1 = g.add_edge(a, x, {1});
  int e2 = g.add_edge(x, b, {2});
  CHECK(gamma_length(g, {e1, e2}) == GroupElement{3});
  CHECK(gamma_length(g, {}) == GroupElement{0});
  CHECK_THROWS_AS(gamma_length(g, {99}), ValidationError);
}

TEST_CASE("make_appath validates the A-path shape") {
  LabelledGraph g(make_spec({6}));
  int a = g.add_vertex("a", true);
  int x = g.add_vertex("x");
  int b = g.add_vertex("b", true);
  int e1 = g.add_edge(a, x, {1});
  int e2 = g.add_edge(x, b, {2});
  int e3 = g.add_edge(a, b, {4});

  ApPath p = make_appath(g, {a, x, b}, {e1, e2});
  CHECK(p.gamma == GroupElement{3});
  ApPath q = make_appath(g, {a, b}, {e3});  // 1-edge A-path between terminals
  CHECK(q.gamma == GroupElement{4});

  CHECK_THROWS_AS(make_appath(g, {a}, {}), ValidationError);
  CHECK_THROWS_AS(make_appath(g, {x, b}, {e2}), ValidationError);      // endpoint not in A
  CHECK_THROWS_AS(make_appath(g, {a, x, b}, {e2, e1}), ValidationError);  // edges disconnected
  LabelledGraph h(make_spec({6}));
  int ha = h.add_vertex("a", true);
  int hm = h.add_vertex("m", true);
  int hb = h.add_vertex("b", true);
  int f1 = h.add_edge(ha, hm, {0});
  int f2 = h.add_edge(hm, hb, {0});
  CHECK_THROWS_AS(make_appath(h, {ha, hm, hb}, {f1, f2}), ValidationError);  // internal terminal
}

TEST_CASE("is_allowable tests membership and spec compatibility") {
  GroupSpec z6 = make_spec({6});
  LabelledGraph g(z6);
  int a = g.add_vertex("a", true);
  int b = g.add_vertex("b", true);
  int e = g.add_edge(a, b, {4});
  ApPath p = make_appath(g, {a, b}, {e});
  CHECK(is_allowable(g, p, make_lambda(z6, {{4}})));
  CHECK(!is_allowable(g, p, make_lambda(z6, {{0}})));
  CHECK_THROWS_AS(is_allowable(g, p, make_lambda(make_spec({5}), {{0}})), ValidationError);
}

TEST_CASE("shift adds delta at the vertex and is an involution") {
  GroupSpec z4 = make_spec({4});
  LabelledGraph g(z4);
  int a = g.add_vertex("a", true);
  int x = g.add_vertex("x");
  int b = g.add_vertex("b", true);
  g.add_edge(a, x, {1});
  g.add_edge(x, b, {3});
  g.add_edge(a, b, {2});

  CHECK_THROWS_AS(shift(g, x, {1}), ValidationError);  // 2*1 != 0 in Z/4
  LabelledGraph s = shift(g, x, {2});
  CHECK(s.edge(0).label == GroupElement{3});
  CHECK(s.edge(1).label == GroupElement{1});
  CHECK(s.edge(2).label == GroupElement{2});  // not incident to x
  LabelledGraph ss = shift(s, x, {2});
  CHECK(serialize_lgraph(ss) == serialize_lgraph(g));
  LabelledGraph z = shift(g, x, {0});
  CHECK(serialize_lgraph(z) == serialize_lgraph(g));
}

TEST_CASE("shift preserves gamma-lengths of paths avoiding v as endpoint") {
  // random Z/4 graphs, delta = 2; compare all simple paths between fixed
  // endpoints != v before and after shifting
  std::mt19937 rng(7);
  GroupSpec z4 = make_spec({4});
  for (int trial = 0; trial < 20; ++trial) {
    LabelledGraph g(z4);
    int n = 6;
    for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i), i < 2);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 3 != 0) g.add_edge(i, j, {(int)(rng() % 4)});
    int v = 3;  // shifted vertex, not an endpoint below
    LabelledGraph s = shift(g, v, {2});
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        if (a == v || b == v) continue;
        auto before = all_paths_between(g, a, b);
        auto after = all_paths_between(s, a, b);
        REQUIRE(before.size() == after.size());
        for (size_t i = 0; i < before.size(); ++i) {
          CHECK(before[i].first == after[i].first);
          CHECK(before[i].second == after[i].second);
        }
      }
  }
}

TEST_CASE("text round-trip and error reporting") {
  std::string text =
      "# toy instance\n"
      "group Z6\n"
      "vertex a A\n"
      "vertex x\n"
      "vertex b A\n"
      "edge a x 1   # comment after fields\n"
      "edge x b 2\n"
      "edge a b 4\n";
  LabelledGraph g = parse_lgraph(text);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.is_terminal(g.vertex_id("a")));
  CHECK(!g.is_terminal(g.vertex_id("x")));
  CHECK(g.edge(2).label == GroupElement{4});

  // canonical serialize -> parse -> serialize is a fixed point
  std::string ser = serialize_lgraph(g);
  CHECK(serialize_lgraph(parse_lgraph(ser)) == ser);

  auto expect_line = [](const std::string& text, int line) {
    try {
      parse_lgraph(text);
      FAIL("expected parse error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("line " + std::to_string(line)) == 0);
    }
  };
  expect_line("group Z6\nvertex a A\nedge a a 1\n", 3);            // loop
  expect_line("group Z6\nvertx a\n", 2);                           // typo keyword
  expect_line("group Z6\nvertex a A\nvertex b A\nedge a b\n", 4);  // missing label
  expect_line("vertex a\n", 1);                                    // before group
  expect_line("group Z6\nvertex a A\nvertex b A\nedge a b 1\nedge b a 1\n", 5);  // dup label
  expect_line("group Z9999999999999999999\n", 1);                  // unparsable modulus
  CHECK_THROWS_AS(parse_lgraph(""), ValidationError);

  // product-group labels round-trip too
  std::string prod =
      "group Z2*Z3\nvertex a A\nvertex b A\nedge a b (1,2)\n";
  LabelledGraph pg = parse_lgraph(prod);
  CHECK(pg.edge(0).label == (GroupElement{1, 2}));
  CHECK(serialize_lgraph(parse_lgraph(serialize_lgraph(pg))) == serialize_lgraph(pg));
}

TEST_CASE("dot export marks terminals") {
  LabelledGraph g(make_spec({6}));
  g.add_vertex("a", true);
  g.add_vertex("x");
  g.add_edge(0, 1, {5});
  std::string dot = lgraph_to_dot(g);
  CHECK(dot.find("\"a\" [style=filled, fillcolor=black") != std::string::npos);
  CHECK(dot.find("\"x\";") != std::string::npos);
  CHECK(dot.find("\"a\" -- \"x\" [label=\"5\"]") != std::string::npos);
}
