#pragma once
// Finite abelian groups presented as products of cyclic groups, with
// subgroup/coset machinery.  Groups here are tiny (order <= a few hundred),
// so subgroups are stored extensionally and equality tests are exact.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eposa {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Z/n_1 x ... x Z/n_r; empty moduli list = trivial group.
struct GroupSpec {
  std::vector<int> moduli;

  bool operator==(const GroupSpec& o) const { return moduli == o.moduli; }
  bool operator!=(const GroupSpec& o) const { return moduli != o.moduli; }
  long long order() const {
    long long p = 1;
    for (int m : moduli) p *= m;
    return p;
  }
};

// Componentwise-reduced residue vector; length matches its spec's moduli.
using GroupElement = std::vector<int>;

GroupSpec make_spec(std::vector<int> moduli);

GroupElement zero(const GroupSpec& spec);
GroupElement add(const GroupSpec& spec, const GroupElement& x, const GroupElement& y);
GroupElement neg(const GroupSpec& spec, const GroupElement& x);
GroupElement sub(const GroupSpec& spec, const GroupElement& x, const GroupElement& y);
// t * x for any integer t (t may be negative or exceed the order).
GroupElement mul_int(const GroupSpec& spec, long long t, const GroupElement& x);
bool is_zero(const GroupElement& x);
// Smallest t >= 1 with t*x = 0.
int element_order(const GroupSpec& spec, const GroupElement& x);

// All elements in lexicographic (canonical residue) order.
std::vector<GroupElement> elements_of(const GroupSpec& spec);

// Extensional subgroup: sorted element set plus the generators it came from.
struct Subgroup {
  GroupSpec spec;
  std::vector<GroupElement> elements;  // sorted
  std::vector<GroupElement> generators;

  bool contains(const GroupElement& x) const;
  size_t size() const { return elements.size(); }
};

Subgroup generate_subgroup(const GroupSpec& spec, const std::vector<GroupElement>& gens);

// Coset h + Gamma'; representative normalized to the least element.
struct Coset {
  GroupElement representative;  // canonical: minimum of the coset
  Subgroup subgroup;
};

Coset make_coset(const GroupSpec& spec, const GroupElement& rep, const Subgroup& sub);
Coset coset_add(const GroupSpec& spec, const Coset& h1, const Coset& h2);
bool coset_eq(const GroupSpec& spec, const Coset& h1, const Coset& h2);

// One canonical representative per isomorphism class (invariant-factor form
// d_1 | d_2 | ... ), every class of order <= max_order exactly once, sorted
// by (order, number of factors, moduli).
std::vector<GroupSpec> enumerate_abelian_groups(int max_order);

// Text forms: spec "Z6" / "Z2*Z2*Z3" ("Z1" = trivial); element "(1,0,2)",
// bare integer allowed for single-factor groups, "()" for the trivial group.
std::string format_group_spec(const GroupSpec& spec);
GroupSpec parse_group_spec(const std::string& text);
std::string format_element(const GroupSpec& spec, const GroupElement& x);
GroupElement parse_element(const GroupSpec& spec, const std::string& text);

}  // namespace eposa
