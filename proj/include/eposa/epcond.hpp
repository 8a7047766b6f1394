#pragma once
// Group-level side of the packing/covering dichotomy: the two closure axioms
// (EP1)/(EP2) on a target set Lambda, and the search for label parameters
// (g_i, h_1, h_2 plus handlebar kinds) that satisfy the counterexample
// conditions (A3)-(A7) at the group level.

#include "eposa/group.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace eposa {

struct LambdaSet {
  GroupSpec spec;
  std::set<GroupElement> elements;

  bool contains(const GroupElement& x) const { return elements.count(x) > 0; }
  bool empty() const { return elements.empty(); }
};

LambdaSet make_lambda(const GroupSpec& spec, const std::vector<GroupElement>& elems);

// Verdict for one axiom; witness = lexicographically least violating (a,b,c).
struct EpVerdict {
  bool holds = false;
  std::optional<std::array<GroupElement, 3>> witness;
};

// (EP1): a+b+c in Lambda  =>  a+b in Lambda, or (2a+<c>) meets Lambda,
//                             or (2b+<c>) meets Lambda.
EpVerdict check_ep1(const GroupSpec& spec, const LambdaSet& lambda);
// (EP2): 2a+b+c in Lambda  =>  (2a+<b>) meets Lambda or (2a+<c>) meets Lambda.
EpVerdict check_ep2(const GroupSpec& spec, const LambdaSet& lambda);

struct EpcVerdict {
  bool satisfies = false;
  std::string failed_axiom;  // "EP1" or "EP2" when satisfies == false
  std::optional<std::array<GroupElement, 3>> witness;
};

// Both axioms; on failure reports the first failing axiom (EP1 checked first).
EpcVerdict check_epc(const GroupSpec& spec, const LambdaSet& lambda);

// Singleton classification: for Lambda = {ell}, the packing/covering
// dichotomy is known exactly; used as an independent cross-check.
// True iff Gamma ~ Z/p (p prime, any ell), Gamma ~ (Z/2)^k with ell = 0,
// or Gamma ~ Z/4 with ell in {0,2}.
bool singleton_family_verdict(const GroupSpec& spec, const GroupElement& ell);

enum class BarKind { series, nested, crossing };
enum class QMode { disjoint, equal };

std::string bar_kind_name(BarKind k);
BarKind parse_bar_kind(const std::string& s);

// Label-level parameters of a ribboned-wall instance.
struct ObstructionParams {
  int m = 0;
  std::vector<GroupElement> g;  // labels of the handlebars P_1..P_m
  std::vector<BarKind> kinds;   // declared kind per P_i
  GroupElement h1, h2;          // labels of the terminal handlebars
  QMode q_mode = QMode::disjoint;
};

// (A3): sum g_i + h_1 + h_2 in Lambda.
bool cond_a3(const GroupSpec& spec, const LambdaSet& lambda,
             const std::vector<GroupElement>& g, const GroupElement& h1,
             const GroupElement& h2);
// (A4): for each i and each (b1,b2) in {(0,2),(1,1),(2,0)}:
//       (<g_j : j != i> + b1 h_1 + b2 h_2) misses Lambda.
bool cond_a4(const GroupSpec& spec, const LambdaSet& lambda,
             const std::vector<GroupElement>& g, const GroupElement& h1,
             const GroupElement& h2);
// (A5): whenever sum c_i g_i + b1 h_1 + b2 h_2 lands in Lambda
//       (c_i swept over [0, 2 ord(g_i)), which exhausts all residues),
//       every non-series index must have c_i odd.
bool cond_a5(const GroupSpec& spec, const LambdaSet& lambda,
             const std::vector<GroupElement>& g, const std::vector<BarKind>& kinds,
             const GroupElement& h1, const GroupElement& h2);
// (A6): at least one declared-series handlebar.
bool cond_a6(const std::vector<BarKind>& kinds);
// (A7): vacuous unless m == 1; then (<g_1> + 2 h_j) must miss Lambda for both j.
bool cond_a7(const GroupSpec& spec, const LambdaSet& lambda,
             const std::vector<GroupElement>& g, const GroupElement& h1,
             const GroupElement& h2);

// Indices that (A5) forces to be series for the given labels: the union over
// Lambda-hitting coefficient vectors of their even positions.
std::vector<int> a5_required_series(const GroupSpec& spec, const LambdaSet& lambda,
                                    const std::vector<GroupElement>& g,
                                    const GroupElement& h1, const GroupElement& h2);

// First parameter tuple (lexicographic search: m ascending, labels ascending,
// kinds with series least, then h1, h2) satisfying (A3)-(A7).  Tuples with a
// redundant g_i (removing it leaves the generated subgroup unchanged) are
// skipped.  Returns nullopt if no tuple with m <= max_m works.
std::optional<ObstructionParams> find_obstruction_params(const GroupSpec& spec,
                                                         const LambdaSet& lambda,
                                                         int max_m = 3);

// Parameters satisfying only (A3)-(A5), for building irreducible instances on
// groups where the closure axioms hold.  Prefers the equal-terminal m = 1
// series shape (those instances carry large disjoint packings); falls back to
// the general sweep without (A6)/(A7).
std::optional<ObstructionParams> find_irreducible_params(const GroupSpec& spec,
                                                         const LambdaSet& lambda,
                                                         int max_m = 3);

}  // namespace eposa
