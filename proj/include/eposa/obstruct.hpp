#pragma once
// Ribboned walls: an elementary wall dressed with handle edges (the bars
// P_1..P_m attached along the outer columns) and terminal handle bars
// (Q_1, Q_2).  Includes the Figure-style generators, the parameterized
// generator, the (A1)-(A7) condition checker, and exact solvers that work
// at wall scale: packing bounds via boundary-chord analysis and routed
// witnesses, and exact covers via an oracle-driven brancher.

#include "eposa/epcond.hpp"
#include "eposa/paths.hpp"
#include "eposa/walls.hpp"

#include <optional>
#include <vector>

namespace eposa {

// One wall handle: a labelled edge between two degree-2 boundary spots.
struct HandleRef {
  int edge_id = -1;
  int spot_u = -1, spot_v = -1;  // wall vertex ids, boundary position of u < v
};

// A wall handlebar P_i with its declared kind and common label.
struct PBar {
  std::vector<HandleRef> handles;
  BarKind kind = BarKind::series;
  GroupElement gamma;
};

// One terminal handle: a labelled edge from a fresh terminal to a spot.
struct QHandleRef {
  int edge_id = -1;
  int terminal = -1, spot = -1;
};

struct QBar {
  std::vector<QHandleRef> handles;
  GroupElement gamma;
};

struct RibbonedWall {
  Wall wall;
  LabelledGraph graph;  // wall graph (same vertex/edge ids) plus handles
  int wall_edge_count = 0;
  int k = 1;
  QMode q_mode = QMode::disjoint;
  std::vector<PBar> pbars;  // size m
  QBar q1, q2;              // equal mode: q2 shares q1's handles

  int m() const { return (int)pbars.size(); }
};

// Figure-style instance: one series bar of n handles labelled c on the upper
// left boundary, terminal bars Q_1 (n handles labelled a, left column) and
// Q_2 (n handles labelled b, right column).  Wall order max(3, 3n), all wall
// edges identity.
RibbonedWall gen_fig1a(const GroupSpec& spec, const GroupElement& a, const GroupElement& b,
                       const GroupElement& c, int n, const LambdaSet& lambda);

// Two series bars labelled b and c on disjoint left-column intervals and a
// single shared terminal bar of n+1 handles labelled a (equal mode).
RibbonedWall gen_fig1b(const GroupSpec& spec, const GroupElement& a, const GroupElement& b,
                       const GroupElement& c, int n, const LambdaSet& lambda);

// General construction from label parameters: m bars of k handles each with
// the declared kinds, terminal bars of 2k handles per mode, wall order
// max(3, k(m+2)) + slack.
RibbonedWall gen_from_params(const ObstructionParams& params, int k, const LambdaSet& lambda,
                             int order_slack = 0);

struct ConditionFlags {
  bool a1 = false, a2 = false, a3 = false, a4 = false, a5 = false, a6 = false, a7 = false;
  bool irreducible = false;  // A1-A5
  bool obstruction = false;  // irreducible and A6, A7
};

ConditionFlags check_conditions(const RibbonedWall& r, const LambdaSet& lambda);

// Wall part strongly balanced: every nail-to-nail path in the bare wall has
// identity gamma-length, verified through spanning-tree potentials.
bool strongly_balanced(const RibbonedWall& r);

// True iff p uses exactly one handle edge from each P_i and exactly one from
// each of Q_1, Q_2 (disjoint mode) or exactly two from Q_1 (equal mode).
bool is_minimally_allowable(const RibbonedWall& r, const ApPath& p);

// Text form: the graph in the standard format plus `#!ribbon` comment lines
// carrying the ribbon structure; plain graph parsers see only the graph.
std::string serialize_ribboned(const RibbonedWall& r);
RibbonedWall parse_ribboned(const std::string& text);

struct WallSolveResult {
  int nu_lower = 0, nu_upper = 0;        // integral packing bounds
  int raw_lower = 0, raw_upper = 0;      // half-integral multiset size bounds
  int tau = -1;                          // exact cover size (when computed)
  std::vector<ApPath> packing;           // disjoint witnesses (nu_lower)
  std::vector<ApPath> half_packing;      // capacity-2 witnesses (raw_lower)
  std::vector<int> cover;                // tau witness

  bool nu_exact() const { return nu_lower == nu_upper; }
  bool raw_exact() const { return raw_lower == raw_upper; }
};

// Exact-at-the-edges solver for generated instances.  Lower bounds come from
// routed, fully verified witnesses; upper bounds from handle counting (every
// allowable path must traverse each bar, certified at the group level) and,
// when the handle count is small, an exhaustive sweep over boundary-chord
// patterns proving that no two disjoint allowable paths exist.  tau is exact
// via an iterative-deepening brancher over an exact path oracle.
WallSolveResult solve_ribboned(const RibbonedWall& r, const LambdaSet& lambda,
                               bool want_tau = true);

// Exact existence oracle: an allowable A-path in G(R) avoiding `blocked`.
std::optional<ApPath> find_allowable_avoiding(const RibbonedWall& r, const LambdaSet& lambda,
                                              const std::vector<int>& blocked);

std::string ribboned_to_dot(const RibbonedWall& r, const std::string& name = "R");

}  // namespace eposa
