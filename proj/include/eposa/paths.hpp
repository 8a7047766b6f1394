#pragma once
// Exhaustive enumeration of allowable A-paths and exact desk-scale solvers:
// maximum vertex-disjoint packing, maximum half-integral packing (vertex
// capacity 2), and minimum vertex cover of the allowable-path family.
// Everything here works over the explicitly enumerated path list, so it is
// exact but intentionally bounded by an explosion cap.

#include "eposa/lgraph.hpp"

#include <map>
#include <string>
#include <vector>

namespace eposa {

struct ExplosionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultPathCap = 200000;

// All Lambda-allowable A-paths, one per reversal class, in canonical order
// (endpoint with the smaller vertex id first; lists sorted by vertex then
// edge sequence).  Throws ExplosionError when more than `cap` allowable
// paths exist, or when the underlying simple-path search exceeds a work
// budget proportional to the cap (so empty-Lambda instances cannot spin).
std::vector<ApPath> enumerate_allowable(const LabelledGraph& g, const LambdaSet& lambda,
                                        int cap = kDefaultPathCap);

enum class PackingMode { integral, half_integral };

struct PackingResult {
  std::vector<ApPath> paths;  // half-integral: multiplicity-2 paths listed twice
  PackingMode mode = PackingMode::integral;
  std::map<int, int> multiplicity;  // per-vertex usage counts (certificate)
};

// Maximum packing by exact branch-and-bound over the enumerated list.
// Integral: vertex capacity 1; half-integral: capacity 2 with each path
// usable up to twice.  Deterministic: paths considered in canonical order,
// higher multiplicity first, first optimum kept.
PackingResult max_packing(const LabelledGraph& g, const LambdaSet& lambda, PackingMode mode,
                          int cap = kDefaultPathCap);

struct CoverResult {
  std::vector<int> vertices;
  bool verified = false;  // re-enumeration after deletion returned empty
};

// Minimum vertex set meeting every allowable A-path (vertices may be
// terminals); exact via iterative deepening on the uncovered-path brancher.
CoverResult min_cover(const LabelledGraph& g, const LambdaSet& lambda,
                      int cap = kDefaultPathCap);

struct Rational {
  long long num = 0;
  long long den = 1;
  std::string str() const;
};

struct DualityReport {
  int nu = 0;            // maximum integral packing
  int tau = 0;           // minimum cover
  int nu_half_raw = 0;   // maximum half-integral multiset size
  Rational nu_half;      // nu_half_raw / 2
};

DualityReport duality_report(const LabelledGraph& g, const LambdaSet& lambda,
                             int cap = kDefaultPathCap);

// Copy of g without the given vertices (edges incident to them dropped);
// helper for cover verification and oracle-style what-if queries.
LabelledGraph delete_vertices(const LabelledGraph& g, const std::vector<int>& vertices);

}  // namespace eposa
