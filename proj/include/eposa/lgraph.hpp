#pragma once
// Group-labelled multigraphs with a terminal set A, plus A-paths and their
// gamma-lengths.  Labels are unoriented: traversing an edge adds its label
// regardless of direction.  Graphs are immutable once built; transformations
// return new graphs.

#include "eposa/epcond.hpp"
#include "eposa/group.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace eposa {

struct Edge {
  int id;
  int u, v;  // unordered endpoint pair
  GroupElement label;
};

class LabelledGraph {
 public:
  LabelledGraph() = default;  // trivial group; reassign before use
  explicit LabelledGraph(GroupSpec spec) : spec_(std::move(spec)) {}

  int add_vertex(const std::string& name, bool terminal = false);
  // Rejects loops and parallel edges that duplicate an existing label.
  int add_edge(int u, int v, const GroupElement& label);

  const GroupSpec& spec() const { return spec_; }
  int vertex_count() const { return (int)names_.size(); }
  int edge_count() const { return (int)edges_.size(); }
  const std::string& vertex_name(int v) const { return names_.at(v); }
  int vertex_id(const std::string& name) const;           // throws if unknown
  bool has_vertex(const std::string& name) const { return by_name_.count(name) > 0; }
  bool is_terminal(int v) const { return terminal_.at(v); }
  std::vector<int> terminals() const;
  const Edge& edge(int id) const;
  const std::vector<Edge>& edges() const { return edges_; }
  // (neighbor, edge id) pairs in edge-insertion order.
  const std::vector<std::pair<int, int>>& incident(int v) const { return adj_.at(v); }
  int degree(int v) const { return (int)adj_.at(v).size(); }

 private:
  GroupSpec spec_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> by_name_;
  std::vector<char> terminal_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
};

struct ApPath {
  std::vector<int> vertices;   // pairwise distinct; endpoints terminal
  std::vector<int> edge_ids;   // one fewer than vertices
  GroupElement gamma;          // sum of edge labels
};

GroupElement gamma_length(const LabelledGraph& g, const std::vector<int>& edge_ids);

// Validates the A-path invariants (>= 1 edge, terminal endpoints, internal
// vertices non-terminal, distinct vertices, consecutive edges connect) and
// fills in the gamma-length.
ApPath make_appath(const LabelledGraph& g, const std::vector<int>& vertices,
                   const std::vector<int>& edge_ids);

// Adds delta to every edge incident to v; requires 2*delta = 0.
LabelledGraph shift(const LabelledGraph& g, int v, const GroupElement& delta);

bool is_allowable(const LabelledGraph& g, const ApPath& p, const LambdaSet& lambda);

// Line-based text form:  `group Z6` / `vertex u A` / `edge u w 4`,
// `#` starts a comment.  Errors carry 1-based line numbers.
LabelledGraph parse_lgraph(const std::string& text);
std::string serialize_lgraph(const LabelledGraph& g);

// DOT export; terminals drawn as filled black nodes, edge labels printed.
std::string lgraph_to_dot(const LabelledGraph& g, const std::string& name = "G");

}  // namespace eposa
