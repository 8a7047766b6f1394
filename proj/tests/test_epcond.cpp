#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eposa/epcond.hpp"

#include <numeric>

using namespace eposa;

static LambdaSet singleton(const GroupSpec& spec, GroupElement e) {
  return make_lambda(spec, {e});
}

TEST_CASE("axiom checks on worked examples") {
  GroupSpec z15 = make_spec({15});
  std::vector<GroupElement> cop;
  for (int x = 1; x < 15; ++x)
    if (std::gcd(x, 15) == 1) cop.push_back({x});
  LambdaSet coprimes = make_lambda(z15, cop);
  EpVerdict v1 = check_ep1(z15, coprimes);
  CHECK(v1.holds);
  EpVerdict v2 = check_ep2(z15, coprimes);
  REQUIRE(!v2.holds);
  CHECK(*v2.witness == (std::array<GroupElement, 3>{{{0}, {3}, {5}}}));

  GroupSpec z6 = make_spec({6});
  LambdaSet l4 = singleton(z6, {4});
  EpVerdict w1 = check_ep1(z6, l4);
  REQUIRE(!w1.holds);
  CHECK(*w1.witness == (std::array<GroupElement, 3>{{{0}, {1}, {3}}}));
  CHECK(check_ep2(z6, l4).holds);

  GroupSpec z4 = make_spec({4});
  EpVerdict u1 = check_ep1(z4, singleton(z4, {1}));
  REQUIRE(!u1.holds);
  CHECK(*u1.witness == (std::array<GroupElement, 3>{{{0}, {3}, {2}}}));

  CHECK(check_epc(z4, singleton(z4, {0})).satisfies);
  GroupSpec z5 = make_spec({5});
  CHECK(check_epc(z5, singleton(z5, {2})).satisfies);

  EpcVerdict e6 = check_epc(z6, l4);
  CHECK(!e6.satisfies);
  CHECK(e6.failed_axiom == "EP1");
  EpcVerdict e15 = check_epc(z15, coprimes);
  CHECK(!e15.satisfies);
  CHECK(e15.failed_axiom == "EP2");
}

TEST_CASE("axioms agree with the singleton classification") {
  // exhaustive over all groups of order <= 9 and all singleton targets
  for (const GroupSpec& spec : enumerate_abelian_groups(9)) {
    for (const GroupElement& ell : elements_of(spec)) {
      bool expected = singleton_family_verdict(spec, ell);
      bool got = check_epc(spec, singleton(spec, ell)).satisfies;
      INFO("group ", format_group_spec(spec), " ell ", format_element(spec, ell));
      CHECK(got == expected);
    }
  }
}

TEST_CASE("condition predicates at the group level") {
  GroupSpec z6 = make_spec({6});
  LambdaSet l4 = singleton(z6, {4});
  std::vector<GroupElement> g = {{3}};
  CHECK(cond_a3(z6, l4, g, {0}, {1}));
  CHECK(!cond_a3(z6, l4, g, {0}, {0}));
  CHECK(cond_a4(z6, l4, g, {0}, {1}));
  CHECK(!cond_a4(z6, l4, g, {1}, {2}));  // b=(0,2): 2*2 = 4 lands in Lambda
  CHECK(cond_a7(z6, l4, g, {0}, {1}));
  CHECK(!cond_a7(z6, l4, std::vector<GroupElement>{{1}}, {0}, {3}));

  // A5: coefficient parity forced on non-series bars
  auto forced = a5_required_series(z6, l4, g, {0}, {1});
  // 3c + h-shifts: hits at c odd only, so nothing is forced series
  CHECK(forced.empty());
  CHECK(cond_a5(z6, l4, g, {BarKind::nested}, {0}, {1}));

  // Z/6, Lambda={0}, g=(2): 2c hits 0 at c=0 and c=3; c=0 is even => forced
  LambdaSet l0 = singleton(z6, {0});
  auto forced2 = a5_required_series(z6, l0, std::vector<GroupElement>{{2}}, {0}, {0});
  CHECK(forced2 == std::vector<int>{0});
  CHECK(cond_a5(z6, l0, {{2}}, {BarKind::series}, {0}, {0}));
  CHECK(!cond_a5(z6, l0, {{2}}, {BarKind::crossing}, {0}, {0}));

  CHECK(cond_a6({BarKind::nested, BarKind::series}));
  CHECK(!cond_a6({BarKind::nested, BarKind::crossing}));
}

TEST_CASE("obstruction parameter search reproduces known label tuples") {
  GroupSpec z6 = make_spec({6});
  auto p6 = find_obstruction_params(z6, singleton(z6, {4}));
  REQUIRE(p6.has_value());
  CHECK(p6->m == 1);
  CHECK(p6->g == std::vector<GroupElement>{{3}});
  CHECK(p6->kinds == std::vector<BarKind>{BarKind::series});
  CHECK(p6->h1 == GroupElement{0});
  CHECK(p6->h2 == GroupElement{1});
  CHECK(p6->q_mode == QMode::disjoint);

  GroupSpec z15 = make_spec({15});
  std::vector<GroupElement> cop;
  for (int x = 1; x < 15; ++x)
    if (std::gcd(x, 15) == 1) cop.push_back({x});
  auto p15 = find_obstruction_params(z15, make_lambda(z15, cop));
  REQUIRE(p15.has_value());
  CHECK(p15->m == 2);
  CHECK(p15->g == (std::vector<GroupElement>{{3}, {5}}));
  CHECK(p15->h1 == GroupElement{0});
  CHECK(p15->h2 == GroupElement{0});
  CHECK(p15->q_mode == QMode::equal);

  // groups satisfying both axioms admit no obstruction parameters
  GroupSpec z5 = make_spec({5});
  CHECK(!find_obstruction_params(z5, singleton(z5, {2})).has_value());
  GroupSpec z4 = make_spec({4});
  CHECK(!find_obstruction_params(z4, singleton(z4, {0})).has_value());
}

TEST_CASE("irreducible parameter search prefers the equal-terminal shape") {
  GroupSpec z5 = make_spec({5});
  auto p5 = find_irreducible_params(z5, singleton(z5, {2}));
  REQUIRE(p5.has_value());
  CHECK(p5->m == 1);
  CHECK(p5->g == std::vector<GroupElement>{{1}});
  CHECK(p5->h1 == GroupElement{3});
  CHECK(p5->h2 == GroupElement{3});
  CHECK(p5->q_mode == QMode::equal);
  // returned labels really satisfy A3-A5
  LambdaSet l = singleton(z5, {2});
  CHECK(cond_a3(z5, l, p5->g, p5->h1, p5->h2));
  CHECK(cond_a4(z5, l, p5->g, p5->h1, p5->h2));
  CHECK(cond_a5(z5, l, p5->g, p5->kinds, p5->h1, p5->h2));

  GroupSpec z4 = make_spec({4});
  auto p4 = find_irreducible_params(z4, singleton(z4, {0}));
  REQUIRE(p4.has_value());
  CHECK(p4->g == std::vector<GroupElement>{{2}});
  CHECK(p4->h1 == GroupElement{1});
  CHECK(p4->q_mode == QMode::equal);
}

TEST_CASE("singleton family membership") {
  GroupSpec z2 = make_spec({2});
  CHECK(singleton_family_verdict(z2, {1}));  // prime order
  GroupSpec z4 = make_spec({4});
  CHECK(singleton_family_verdict(z4, {0}));
  CHECK(singleton_family_verdict(z4, {2}));
  CHECK(!singleton_family_verdict(z4, {1}));
  GroupSpec z222 = make_spec({2, 2, 2});
  CHECK(singleton_family_verdict(z222, {0, 0, 0}));
  CHECK(!singleton_family_verdict(z222, {1, 0, 0}));
  GroupSpec z6 = make_spec({6});
  CHECK(!singleton_family_verdict(z6, {0}));
  GroupSpec z9 = make_spec({9});
  CHECK(!singleton_family_verdict(z9, {0}));  // 9 not prime, not (Z/2)^k, not Z/4
  GroupSpec trivial = make_spec({});
  CHECK(singleton_family_verdict(trivial, {}));
}
