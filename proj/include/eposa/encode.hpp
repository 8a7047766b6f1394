#pragma once
// Constraint rewrites: each operation takes an instance whose A-paths carry a
// side constraint (length class, mandatory edge/vertex sets, endpoint splits,
// endpoint patterns) and produces a plain labelled graph whose allowable
// A-paths correspond to the constrained source paths.  The correspondence is
// stated at the vertex-sequence level: back_map_path sends every allowable
// target path to a constrained source path, and every constrained source path
// arises this way (parallel copies and pendant vertices fold away).

#include "eposa/paths.hpp"

namespace eposa {

struct Encoding {
  LabelledGraph source;
  std::string constraint;  // human-readable description of the source family
  LabelledGraph target;
  LambdaSet lambda_target;
  std::vector<int> vertex_map;  // target vertex -> source vertex it stands for
  std::vector<int> edge_map;    // target edge -> source edge, -1 for added edges
};

// Source vertex sequence of a target path: map every vertex through
// vertex_map and collapse consecutive repeats (a pendant collapses onto its
// anchor, so a single-vertex source path comes back as one vertex).
std::vector<int> back_map_path(const Encoding& enc, const ApPath& target_path);

// A-paths whose edge count lies in `residues` mod m.  Target group Z/m with
// every edge relabelled 1 (m = 1 degenerates to the trivial group); parallel
// source edges fold into one copy since their labels no longer differ.
Encoding encode_modular(const LabelledGraph& g, int m, const std::vector<int>& residues);

// A-paths containing at least one edge from each F_i.  Source must be simple;
// its labels are dropped (reattach them with with_source_labels).  Target
// group (Z/2)^k: each edge gets one parallel copy per subset S of the F_i
// containing it, labelled with the sum of the subset's generators, and the
// allowed set is the single all-ones element.
Encoding encode_edge_sets(const LabelledGraph& g, const std::vector<std::vector<int>>& fsets);

// A-paths visiting at least one vertex from each U_i; the edge-set rewrite
// applied to the sets of incident edges.
Encoding encode_vertex_sets(const LabelledGraph& g, const std::vector<std::vector<int>>& usets);

// Lambda-allowable A-B-paths: one endpoint in A, the other in B, interior
// outside A u B.  Target group Gamma x (Z/2)^2; edges into A gain tag (1,0),
// edges into B tag (0,1) (both copies when the endpoint is in A n B), edges
// joining A to B tag (1,1), and edges joining A-B to A-B or B-A to B-A are
// dropped as unusable.  Terminals become A u B; the allowed set is
// Lambda x {(1,1)}.
Encoding encode_ab_paths(const LabelledGraph& g, const std::vector<int>& a_set,
                         const std::vector<int>& b_set, const LambdaSet& lambda);

// Lambda-allowable weak A-B-paths: endpoints in A and B but the interior may
// revisit A u B, and a path may be a single vertex of A n B (gamma-length 0).
// Every a in A gains a pendant terminal a' with tag (1,0), every b in B a
// pendant b' with tag (0,1); original vertices all become internal.
Encoding encode_weak_ab(const LabelledGraph& g, const std::vector<int>& a_set,
                        const std::vector<int>& b_set, const LambdaSet& lambda);

// Endpoint-pattern feasibility.  `parts` partitions the terminal set; an
// A-path from part i to part j qualifies iff some h_edge covers {i,j} (i == j
// needs a loop) and its gamma-length lies in that edge's lambda set.  Target
// group Gamma x (Z/3)^k: edges touching part i gain the i-th ternary
// generator, so the unordered endpoint pair is readable off the label sum
// (ternary tags keep g_i + g_i apart from g_i + g_j and 0).
struct HEdge {
  int i = 0, j = 0;  // part indices; i == j marks a loop
  LambdaSet lambda;  // over the source group
};
Encoding encode_h_feasible(const LabelledGraph& g, const std::vector<std::vector<int>>& parts,
                           const std::vector<HEdge>& h_edges);

// Direct-product stacking of further constraints onto an existing encoding.
// with_source_labels appends the source group: every target edge inherits the
// label of the source edge it stands for (zero for added edges) and the
// allowed set becomes the product with source_lambda -- this is how the
// edge-set rewrite extends to labelled sources.  with_modular appends Z/m the
// same way, counting only edges that stand for source edges.
Encoding with_source_labels(const Encoding& enc, const LambdaSet& source_lambda);
Encoding with_modular(const Encoding& enc, int m, const std::vector<int>& residues);

}  // namespace eposa
