#include "eposa/epcond.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace eposa {

LambdaSet make_lambda(const GroupSpec& spec, const std::vector<GroupElement>& elems) {
  LambdaSet l;
  l.spec = spec;
  for (const auto& e : elems) {
    if (e.size() != spec.moduli.size())
      throw ValidationError("lambda element arity does not match group");
    l.elements.insert(e);
  }
  return l;
}

namespace {

// Per-group scratch: all elements, and for every c the subgroup <c>.
struct Scratch {
  std::vector<GroupElement> elems;
  std::map<GroupElement, std::vector<GroupElement>> cyclic;

  explicit Scratch(const GroupSpec& spec) {
    elems = elements_of(spec);
    for (const auto& c : elems) cyclic[c] = generate_subgroup(spec, {c}).elements;
  }
};

bool coset_hits(const GroupSpec& spec, const LambdaSet& lambda, const GroupElement& shift,
                const std::vector<GroupElement>& sub) {
  for (const auto& s : sub)
    if (lambda.contains(add(spec, shift, s))) return true;
  return false;
}

}  // namespace

EpVerdict check_ep1(const GroupSpec& spec, const LambdaSet& lambda) {
  Scratch sc(spec);
  for (const auto& a : sc.elems) {
    GroupElement a2 = add(spec, a, a);
    for (const auto& b : sc.elems) {
      GroupElement ab = add(spec, a, b);
      GroupElement b2 = add(spec, b, b);
      for (const auto& c : sc.elems) {
        if (!lambda.contains(add(spec, ab, c))) continue;
        if (lambda.contains(ab)) continue;
        const auto& sub = sc.cyclic.at(c);
        if (coset_hits(spec, lambda, a2, sub)) continue;
        if (coset_hits(spec, lambda, b2, sub)) continue;
        return EpVerdict{false, std::array<GroupElement, 3>{a, b, c}};
      }
    }
  }
  return EpVerdict{true, std::nullopt};
}

EpVerdict check_ep2(const GroupSpec& spec, const LambdaSet& lambda) {
  Scratch sc(spec);
  for (const auto& a : sc.elems) {
    GroupElement a2 = add(spec, a, a);
    for (const auto& b : sc.elems) {
      GroupElement a2b = add(spec, a2, b);
      const auto& subB = sc.cyclic.at(b);
      bool hitsB = coset_hits(spec, lambda, a2, subB);
      for (const auto& c : sc.elems) {
        if (!lambda.contains(add(spec, a2b, c))) continue;
        if (hitsB) continue;
        if (coset_hits(spec, lambda, a2, sc.cyclic.at(c))) continue;
        return EpVerdict{false, std::array<GroupElement, 3>{a, b, c}};
      }
    }
  }
  return EpVerdict{true, std::nullopt};
}

EpcVerdict check_epc(const GroupSpec& spec, const LambdaSet& lambda) {
  EpVerdict v1 = check_ep1(spec, lambda);
  if (!v1.holds) return EpcVerdict{false, "EP1", v1.witness};
  EpVerdict v2 = check_ep2(spec, lambda);
  if (!v2.holds) return EpcVerdict{false, "EP2", v2.witness};
  return EpcVerdict{true, "", std::nullopt};
}

static bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool singleton_family_verdict(const GroupSpec& spec, const GroupElement& ell) {
  long long order = spec.order();
  // Z/p for prime p: any ell.
  if (is_prime(order)) {
    // a group of prime order is cyclic regardless of presentation
    return true;
  }
  // prime-power decomposition of the presentation
  std::vector<long long> parts;
  for (int m : spec.moduli) {
    int rest = m;
    for (int p = 2; p * p <= rest; ++p)
      while (rest % p == 0) {
        long long q = p;
        while (rest % (q * p) == 0) q *= p;
        // extract the full p-part
        long long pp = 1;
        int r2 = rest;
        while (r2 % p == 0) {
          pp *= p;
          r2 /= p;
        }
        parts.push_back(pp);
        rest = r2;
      }
    if (rest > 1) parts.push_back(rest);
  }
  bool all_two = std::all_of(parts.begin(), parts.end(), [](long long p) { return p == 2; });
  if ((all_two || parts.empty()) && is_zero(ell)) return true;  // (Z/2)^k, ell = 0
  if (parts.size() == 1 && parts[0] == 4) {
    // Z/4 with ell in 2*Gamma = {0,2}
    for (const auto& t : elements_of(spec))
      if (add(spec, t, t) == ell) return true;
  }
  return false;
}

std::string bar_kind_name(BarKind k) {
  switch (k) {
    case BarKind::series: return "series";
    case BarKind::nested: return "nested";
    case BarKind::crossing: return "crossing";
  }
  return "?";
}

BarKind parse_bar_kind(const std::string& s) {
  if (s == "series") return BarKind::series;
  if (s == "nested") return BarKind::nested;
  if (s == "crossing") return BarKind::crossing;
  throw ValidationError("unknown handlebar kind '" + s + "'");
}

bool cond_a3(const GroupSpec& spec, const LambdaSet& lambda,
             const std::vector<GroupElement>& g, const GroupElement& h1,
             const GroupElement& h2) {
  GroupElement total = add(spec, h1, h2);
  for (const auto& gi : g) total = add(spec, total, gi);
  return lambda.contains(total);
}

static const int kBPairs[3][2] = {{0, 2}, {1, 1}, {2, 0}};

bool cond_a4(const GroupSpec& spec, const LambdaSet& lambda,
             const std::vector<GroupElement>& g, const GroupElement& h1,
             const GroupElement& h2) {
  for (size_t i = 0; i < g.size(); ++i) {
    std::vector<GroupElement> others;
    for (size_t j = 0; j < g.size(); ++j)
      if (j != i) others.push_back(g[j]);
    Subgroup sub = generate_subgroup(spec, others);
    for (auto [b1, b2] : kBPairs) {
      GroupElement shift = add(spec, mul_int(spec, b1, h1), mul_int(spec, b2, h2));
      for (const auto& s : sub.elements)
        if (lambda.contains(add(spec, shift, s))) return false;
    }
  }
  return true;
}

// Enumerate coefficient vectors c with c_i in [0, 2 ord(g_i)) and report, for
// every vector whose combination lands in Lambda (under some admissible
// (b1,b2) shift), the positions with even coefficient.  Sweeping two full
// periods covers every residue and both parities of each coefficient.
std::vector<int> a5_required_series(const GroupSpec& spec, const LambdaSet& lambda,
                                    const std::vector<GroupElement>& g,
                                    const GroupElement& h1, const GroupElement& h2) {
  size_t m = g.size();
  std::vector<int> limit(m);
  for (size_t i = 0; i < m; ++i) limit[i] = 2 * element_order(spec, g[i]);
  std::vector<GroupElement> shifts;
  for (auto [b1, b2] : kBPairs)
    shifts.push_back(add(spec, mul_int(spec, b1, h1), mul_int(spec, b2, h2)));

  std::vector<bool> required(m, false);
  std::vector<int> c(m, 0);
  while (true) {
    GroupElement combo = zero(spec);
    for (size_t i = 0; i < m; ++i) combo = add(spec, combo, mul_int(spec, c[i], g[i]));
    bool hit = false;
    for (const auto& sh : shifts)
      if (lambda.contains(add(spec, combo, sh))) {
        hit = true;
        break;
      }
    if (hit)
      for (size_t i = 0; i < m; ++i)
        if (c[i] % 2 == 0) required[i] = true;
    // odometer
    size_t i = 0;
    for (; i < m; ++i) {
      if (++c[i] < limit[i]) break;
      c[i] = 0;
    }
    if (i == m) break;
  }
  std::vector<int> out;
  for (size_t i = 0; i < m; ++i)
    if (required[i]) out.push_back((int)i);
  return out;
}

bool cond_a5(const GroupSpec& spec, const LambdaSet& lambda,
             const std::vector<GroupElement>& g, const std::vector<BarKind>& kinds,
             const GroupElement& h1, const GroupElement& h2) {
  for (int i : a5_required_series(spec, lambda, g, h1, h2))
    if (kinds[i] != BarKind::series) return false;
  return true;
}

bool cond_a6(const std::vector<BarKind>& kinds) {
  return std::any_of(kinds.begin(), kinds.end(),
                     [](BarKind k) { return k == BarKind::series; });
}

bool cond_a7(const GroupSpec& spec, const LambdaSet& lambda,
             const std::vector<GroupElement>& g, const GroupElement& h1,
             const GroupElement& h2) {
  if (g.size() != 1) return true;
  Subgroup sub = generate_subgroup(spec, {g[0]});
  for (const GroupElement* h : {&h1, &h2}) {
    GroupElement shift = mul_int(spec, 2, *h);
    for (const auto& s : sub.elements)
      if (lambda.contains(add(spec, shift, s))) return false;
  }
  return true;
}

namespace {

// Ordered label tuples where no g_i is redundant for the generated subgroup.
bool tuple_is_lean(const GroupSpec& spec, const std::vector<GroupElement>& g) {
  Subgroup full = generate_subgroup(spec, g);
  for (size_t i = 0; i < g.size(); ++i) {
    std::vector<GroupElement> others;
    for (size_t j = 0; j < g.size(); ++j)
      if (j != i) others.push_back(g[j]);
    if (generate_subgroup(spec, others).elements == full.elements) return false;
  }
  return true;
}

// Shared sweep over (m, g, kinds, h1, h2) in lexicographic order.
// require_obstruction toggles the (A6)/(A7) filters.
std::optional<ObstructionParams> sweep_params(const GroupSpec& spec, const LambdaSet& lambda,
                                              int max_m, bool require_obstruction) {
  std::vector<GroupElement> elems = elements_of(spec);
  std::vector<GroupElement> nonzero;
  for (const auto& e : elems)
    if (!is_zero(e)) nonzero.push_back(e);
  if (nonzero.empty()) return std::nullopt;  // trivial group: no usable bar labels

  for (int m = 1; m <= max_m; ++m) {
    std::vector<size_t> idx(m, 0);
    while (true) {
      std::vector<GroupElement> g;
      for (int i = 0; i < m; ++i) g.push_back(nonzero[idx[i]]);
      if (tuple_is_lean(spec, g)) {
        for (const auto& h1 : elems) {
          for (const auto& h2 : elems) {
            if (!cond_a3(spec, lambda, g, h1, h2)) continue;
            if (!cond_a4(spec, lambda, g, h1, h2)) continue;
            if (require_obstruction && !cond_a7(spec, lambda, g, h1, h2)) continue;
            // Kind vectors are ordered with series least, so the first
            // admissible assignment is all-series: it satisfies (A5) for any
            // forced index set and gives (A6) for free.
            std::vector<BarKind> kinds(m, BarKind::series);
            ObstructionParams p;
            p.m = m;
            p.g = g;
            p.kinds = kinds;
            p.h1 = h1;
            p.h2 = h2;
            p.q_mode = (h1 == h2) ? QMode::equal : QMode::disjoint;
            return p;
          }
        }
      }
      // odometer over tuple indices (last coordinate fastest => lex order)
      int i = m - 1;
      for (; i >= 0; --i) {
        if (++idx[i] < nonzero.size()) break;
        idx[i] = 0;
      }
      if (i < 0) break;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<ObstructionParams> find_obstruction_params(const GroupSpec& spec,
                                                         const LambdaSet& lambda,
                                                         int max_m) {
  if (lambda.empty()) return std::nullopt;
  return sweep_params(spec, lambda, max_m, true);
}

std::optional<ObstructionParams> find_irreducible_params(const GroupSpec& spec,
                                                         const LambdaSet& lambda,
                                                         int max_m) {
  if (lambda.empty()) return std::nullopt;
  // Preferred shape: single series handlebar with equal terminal bars.  Such
  // instances admit a disjoint "rainbow" packing, which is what downstream
  // packing demonstrations need.
  std::vector<GroupElement> elems = elements_of(spec);
  for (const auto& g1 : elems) {
    if (is_zero(g1)) continue;
    for (const auto& h : elems) {
      GroupElement hh = add(spec, h, h);
      if (lambda.contains(hh)) continue;                  // (A4) with m = 1
      if (!lambda.contains(add(spec, g1, hh))) continue;  // (A3)
      ObstructionParams p;
      p.m = 1;
      p.g = {g1};
      p.kinds = {BarKind::series};  // makes (A5) vacuous
      p.h1 = h;
      p.h2 = h;
      p.q_mode = QMode::equal;
      return p;
    }
  }
  return sweep_params(spec, lambda, max_m, false);
}

}  // namespace eposa
