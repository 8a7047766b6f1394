#include "eposa/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace eposa {

GroupSpec make_spec(std::vector<int> moduli) {
  for (int m : moduli)
    if (m < 2) throw ValidationError("group modulus must be >= 2, got " + std::to_string(m));
  return GroupSpec{std::move(moduli)};
}

static void check_len(const GroupSpec& spec, const GroupElement& x) {
  if (x.size() != spec.moduli.size())
    throw ValidationError("element arity " + std::to_string(x.size()) +
                          " does not match group " + format_group_spec(spec));
}

GroupElement zero(const GroupSpec& spec) { return GroupElement(spec.moduli.size(), 0); }

static int checked_stoi(const std::string& s, size_t* used = nullptr) {
  try {
    return std::stoi(s, used);
  } catch (const std::exception&) {
    throw ValidationError("bad integer literal '" + s + "'");
  }
}

static int mod(long long v, int m) {
  long long r = v % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

GroupElement add(const GroupSpec& spec, const GroupElement& x, const GroupElement& y) {
  check_len(spec, x);
  check_len(spec, y);
  GroupElement z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = mod((long long)x[i] + y[i], spec.moduli[i]);
  return z;
}

GroupElement neg(const GroupSpec& spec, const GroupElement& x) {
  check_len(spec, x);
  GroupElement z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = mod(-(long long)x[i], spec.moduli[i]);
  return z;
}

GroupElement sub(const GroupSpec& spec, const GroupElement& x, const GroupElement& y) {
  return add(spec, x, neg(spec, y));
}

GroupElement mul_int(const GroupSpec& spec, long long t, const GroupElement& x) {
  check_len(spec, x);
  GroupElement z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = mod(t * x[i], spec.moduli[i]);
  return z;
}

bool is_zero(const GroupElement& x) {
  return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
}

int element_order(const GroupSpec& spec, const GroupElement& x) {
  check_len(spec, x);
  long long o = 1;
  for (size_t i = 0; i < x.size(); ++i) {
    int m = spec.moduli[i];
    int oi = m / std::gcd(x[i], m);  // order of x[i] in Z/m
    o = std::lcm(o, (long long)oi);
  }
  return static_cast<int>(o);
}

std::vector<GroupElement> elements_of(const GroupSpec& spec) {
  std::vector<GroupElement> out;
  out.reserve(static_cast<size_t>(spec.order()));
  GroupElement cur = zero(spec);
  while (true) {
    out.push_back(cur);
    // odometer increment, most significant coordinate first for lex order
    int i = static_cast<int>(cur.size()) - 1;
    for (; i >= 0; --i) {
      if (++cur[i] < spec.moduli[i]) break;
      cur[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

bool Subgroup::contains(const GroupElement& x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

Subgroup generate_subgroup(const GroupSpec& spec, const std::vector<GroupElement>& gens) {
  std::set<GroupElement> closed;
  closed.insert(zero(spec));
  std::vector<GroupElement> frontier(closed.begin(), closed.end());
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        GroupElement y = add(spec, x, g);
        if (closed.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  Subgroup s;
  s.spec = spec;
  s.elements.assign(closed.begin(), closed.end());
  s.generators = gens;
  return s;
}

Coset make_coset(const GroupSpec& spec, const GroupElement& rep, const Subgroup& sub) {
  check_len(spec, rep);
  GroupElement best = rep;
  for (const auto& s : sub.elements) best = std::min(best, add(spec, rep, s));
  return Coset{best, sub};
}

Coset coset_add(const GroupSpec& spec, const Coset& h1, const Coset& h2) {
  if (h1.subgroup.elements != h2.subgroup.elements)
    throw ValidationError("coset_add requires cosets of the same subgroup");
  return make_coset(spec, add(spec, h1.representative, h2.representative), h1.subgroup);
}

bool coset_eq(const GroupSpec& spec, const Coset& h1, const Coset& h2) {
  (void)spec;
  return h1.subgroup.elements == h2.subgroup.elements &&
         h1.representative == h2.representative;
}

static void extend_chains(int last, long long prod, int max_order,
                          std::vector<int>& chain, std::vector<GroupSpec>& out) {
  // chain holds invariant factors d_1 | d_2 | ...; extend with multiples of last.
  for (int d = std::max(last, 2); prod * d <= max_order; ++d) {
    if (d % last != 0) continue;
    chain.push_back(d);
    out.push_back(GroupSpec{chain});
    extend_chains(d, prod * d, max_order, chain, out);
    chain.pop_back();
  }
}

std::vector<GroupSpec> enumerate_abelian_groups(int max_order) {
  if (max_order < 1) throw ValidationError("max_order must be >= 1");
  std::vector<GroupSpec> out;
  out.push_back(GroupSpec{{}});  // trivial group
  std::vector<int> chain;
  extend_chains(1, 1, max_order, chain, out);
  std::sort(out.begin(), out.end(), [](const GroupSpec& a, const GroupSpec& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    if (a.moduli.size() != b.moduli.size()) return a.moduli.size() < b.moduli.size();
    return a.moduli < b.moduli;
  });
  return out;
}

std::string format_group_spec(const GroupSpec& spec) {
  if (spec.moduli.empty()) return "Z1";
  std::string s;
  for (size_t i = 0; i < spec.moduli.size(); ++i) {
    if (i) s += '*';
    s += 'Z';
    s += std::to_string(spec.moduli[i]);
  }
  return s;
}

GroupSpec parse_group_spec(const std::string& text) {
  std::vector<int> moduli;
  size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != 'Z')
      throw ValidationError("bad group spec '" + text + "': expected 'Z' at position " +
                            std::to_string(pos));
    ++pos;
    size_t start = pos;
    while (pos < text.size() && isdigit((unsigned char)text[pos])) ++pos;
    if (start == pos) throw ValidationError("bad group spec '" + text + "': missing modulus");
    int m = checked_stoi(text.substr(start, pos - start));
    if (m == 1) {
      // Z1 factors contribute nothing; allowed only as the whole spec.
      if (!(moduli.empty() && pos == text.size()))
        throw ValidationError("bad group spec '" + text + "': Z1 only valid alone");
      return GroupSpec{{}};
    }
    if (m < 1) throw ValidationError("bad group spec '" + text + "'");
    moduli.push_back(m);
    if (pos < text.size()) {
      if (text[pos] != '*')
        throw ValidationError("bad group spec '" + text + "': expected '*' at position " +
                              std::to_string(pos));
      ++pos;
      if (pos == text.size())
        throw ValidationError("bad group spec '" + text + "': trailing '*'");
    }
  }
  if (moduli.empty()) throw ValidationError("bad group spec '" + text + "': empty");
  return make_spec(moduli);
}

std::string format_element(const GroupSpec& spec, const GroupElement& x) {
  check_len(spec, x);
  if (spec.moduli.size() == 1) return std::to_string(x[0]);
  std::string s = "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(x[i]);
  }
  s += ')';
  return s;
}

GroupElement parse_element(const GroupSpec& spec, const std::string& text) {
  std::string t = text;
  // strip spaces
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  if (t.empty()) throw ValidationError("empty element literal");
  std::vector<int> vals;
  if (t.front() == '(') {
    if (t.back() != ')') throw ValidationError("bad element literal '" + text + "'");
    std::string inner = t.substr(1, t.size() - 2);
    if (!inner.empty()) {
      std::stringstream ss(inner);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw ValidationError("bad element literal '" + text + "'");
        vals.push_back(checked_stoi(tok));
      }
    }
  } else {
    // bare integer: only unambiguous for single-factor groups
    if (spec.moduli.size() != 1)
      throw ValidationError("bare integer element '" + text + "' needs a single-factor group");
    size_t used = 0;
    vals.push_back(checked_stoi(t, &used));
    if (used != t.size()) throw ValidationError("bad element literal '" + text + "'");
  }
  if (vals.size() != spec.moduli.size())
    throw ValidationError("element arity " + std::to_string(vals.size()) +
                          " does not match group " + format_group_spec(spec));
  GroupElement x(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) x[i] = mod(vals[i], spec.moduli[i]);
  return x;
}

}  // namespace eposa
