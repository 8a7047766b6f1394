#pragma once
// Elementary walls and the combinatorics of their boundary: the cyclic nail
// order, series/nested/crossing classification of endpoint pairs, pure
// subset extraction, and the join/split correspondence between terminal
// handle pairs and wall handles.
//
// Coordinates: vertex (i, j) lies on file i (1..2c) and row j (1..r).
// Column i is the subgraph on files {2i-1, 2i}.  The two degree-1 corners of
// the full grid pattern are deleted, leaving 2cr - 2 vertices.

#include "eposa/epcond.hpp"
#include "eposa/lgraph.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace eposa {

struct Wall {
  int c = 0, r = 0;
  LabelledGraph graph;  // identity labels, no terminals
  std::vector<std::pair<int, int>> coord;        // vid -> (file, row)
  std::map<std::pair<int, int>, int> vid_at;     // (file, row) -> vid
  int v11 = -1, v1r = -1, vcr = -1, vc1 = -1;    // corner nails
  std::vector<int> boundary;      // boundary nails in the linear order, from v11
  std::vector<int> boundary_pos;  // vid -> position in `boundary`, or -1

  int order() const { return std::min(c, r); }
};

// All labels identity; nails are all vertices (no subdivision here).
Wall elementary_wall(int c, int r, const GroupSpec& spec);

// The linear order on boundary nails: starts at v11 and meets the corners in
// the order v11, v1r, vcr, vc1.
const std::vector<int>& boundary_order(const Wall& w);

// Boundary vertices of column 1 or column c, in boundary order.
std::vector<int> column_boundary(const Wall& w, int col);

// Relation of two endpoint pairs of boundary positions: series if their
// intervals are disjoint, nested if one strictly contains the other,
// crossing if they interleave.  All four positions must be distinct.
BarKind classify_pair(std::pair<int, int> x, std::pair<int, int> y);

// Largest pure subset (indices into `pairs`) if one of size >= k exists.
// Series and nested are chain problems; crossing is a maximum clique found
// by branch-and-bound.  Ties prefer series, then nested, then crossing.
std::optional<std::pair<BarKind, std::vector<int>>> extract_pure(
    const std::vector<std::pair<int, int>>& pairs, int k);

// A terminal-to-wall handle abstracted to its boundary attachment position
// plus a caller-chosen tag identifying the underlying path.
struct AWHandle {
  int w_pos;
  int tag;
};

struct AWHandlebar {
  std::vector<AWHandle> handles;
};

struct JoinedHandle {
  int pos1 = -1, pos2 = -1;  // boundary positions of the two wall endpoints
  int tag1 = -1, tag2 = -1;  // provenance: constituent terminal handles
};

struct JoinedHandlebar {
  std::vector<JoinedHandle> handles;
  BarKind kind = BarKind::series;
};

// Pair up the terminal handles of q1 and q2 into wall handles of the target
// kind.  q1 == q2 (even size): series, nested, and crossing all achievable;
// disjoint non-mixing bars of equal size: nested and crossing only.
JoinedHandlebar join_handlebars(const AWHandlebar& q1, const AWHandlebar& q2, BarKind kind);

// Inverse of join: recovers the two terminal handle bars from provenance.
std::pair<AWHandlebar, AWHandlebar> split_handlebar(const JoinedHandlebar& p);

// Minimal pair of boundary intervals (R, R') such that every handle has one
// endpoint in each; minimizes the total covered positions.  Used for the
// non-mixing test.
std::pair<std::pair<int, int>, std::pair<int, int>> minimal_side_intervals(
    const std::vector<std::pair<int, int>>& handle_ends);

// Index-range extraction (elementary walls only).  Results are themselves
// elementary walls with local coordinates.
Wall column_slice(const Wall& w, int i1, int i2);
Wall compact_subwall(const Wall& w, int i1, int i2, int j1, int j2);
Wall k_contained_subwall(const Wall& w, int k);

// DOT export with boundary nails doubled and their order positions printed.
std::string wall_to_dot(const Wall& w, const std::string& name = "W");

}  // namespace eposa
