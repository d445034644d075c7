#pragma once

// Equivariant bundle cohomology on flag varieties G/P.  A parabolic is
// given by a crossed Dynkin diagram "<Family><rank>[x,o,...]" (crossed =
// non-Levi node).  Bundles come from Levi-highest weights; cohomology is
// computed by the shifted dominantization walk, hom bundles by dualizing
// and tensoring over the Levi subsystem.  All arithmetic is exact.

#include <flagvortex/lie.hpp>

#include <bit>
#include <optional>

namespace flagvortex {

struct ParabolicDiagram {
  LieType type;
  std::vector<bool> crossed;   // size = rank
  unsigned crossed_mask = 0;   // bit i = node i+1 crossed
  unsigned levi_mask = 0;
  friend bool operator==(const ParabolicDiagram&, const ParabolicDiagram&) = default;
};

// Grammar: family letter, rank digits, '[', rank comma-separated marks
// ('o' uncrossed, 'x' crossed), ']'.  No whitespace.  At least one cross.
inline ParabolicDiagram parse_diagram(const std::string& text) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad diagram '" + text + "': " + why);
  };
  size_t pos = 0;
  if (text.empty() || text[0] < 'A' || text[0] > 'G') fail("expected family letter A..G");
  char fam = text[pos++];
  size_t digits = 0;
  int rank = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    rank = rank * 10 + (text[pos++] - '0');
    ++digits;
  }
  if (digits == 0 || digits > 2) fail("expected rank digits after the family letter");
  ParabolicDiagram d;
  d.type = make_lie_type(fam, rank);
  if (pos >= text.size() || text[pos++] != '[') fail("expected '['");
  for (int i = 0; i < rank; ++i) {
    if (i > 0) {
      if (pos >= text.size() || text[pos++] != ',') fail("expected ','");
    }
    if (pos >= text.size() || (text[pos] != 'o' && text[pos] != 'x'))
      fail("expected 'o' or 'x' at node " + std::to_string(i + 1));
    d.crossed.push_back(text[pos++] == 'x');
  }
  if (pos >= text.size() || text[pos++] != ']') fail("expected ']' after " +
                                                     std::to_string(rank) + " marks");
  if (pos != text.size()) fail("trailing characters");
  for (int i = 0; i < rank; ++i)
    (d.crossed[i] ? d.crossed_mask : d.levi_mask) |= 1u << i;
  if (d.crossed_mask == 0) fail("needs at least one crossed node");
  return d;
}

inline std::string print_diagram(const ParabolicDiagram& d) {
  std::string s;
  s += static_cast<char>(d.type.family);
  s += std::to_string(d.type.rank);
  s += '[';
  for (int i = 0; i < d.type.rank; ++i) {
    if (i) s += ',';
    s += d.crossed[i] ? 'x' : 'o';
  }
  s += ']';
  return s;
}

// A parabolic fiber: root system plus crossing data, built once and shared.
struct FlagFiber {
  RootSystemData rs;
  ParabolicDiagram diagram;
};

inline FlagFiber make_fiber(const std::string& diagram_text) {
  FlagFiber f;
  f.diagram = parse_diagram(diagram_text);
  f.rs = root_system(f.diagram.type);
  return f;
}

inline int fiber_dimension(const FlagFiber& f) {
  return static_cast<int>(f.rs.positive_roots.size() -
                          detail::subsystem_roots(f.rs, f.diagram.levi_mask).size());
}

inline bool levi_dominant(const FlagFiber& f, const WeightVector& lambda) {
  require_rank(f.rs, lambda);
  for (int i = 0; i < f.rs.type.rank; ++i)
    if (!f.diagram.crossed[i] && lambda.coords[i] < 0) return false;
  return true;
}

inline void require_levi_weight(const FlagFiber& f, const WeightVector& lambda) {
  require_integral(lambda);
  if (!levi_dominant(f, lambda))
    throw std::invalid_argument("weight " + print_weight(lambda) +
                                " is not dominant for the Levi of " +
                                print_diagram(f.diagram));
}

// Rank of the homogeneous bundle attached to the Levi-highest weight.
inline Integer levi_dimension(const FlagFiber& f, const WeightVector& lambda) {
  require_levi_weight(f, lambda);
  return detail::weyl_dim_on(f.rs, f.diagram.levi_mask, detail::to_ivec(lambda));
}

inline WeightVector levi_dual_weight(const FlagFiber& f, const WeightVector& lambda) {
  require_levi_weight(f, lambda);
  return detail::to_weight(
      detail::dual_on(f.rs, f.diagram.levi_mask, detail::to_ivec(lambda)));
}

struct BundleCohomology {
  bool vanishes = true;
  int degree = -1;          // the unique nonvanishing degree
  WeightVector weight;      // dominant highest weight of H^degree
  Integer dim = 0;
};

// H^*(G/P, V_lambda) via the shifted walk over the full Weyl group:
// singular shift = total vanishing, else exactly one degree survives.
inline BundleCohomology bundle_cohomology(const FlagFiber& f, const WeightVector& lambda) {
  require_levi_weight(f, lambda);
  auto walk = dominantize_shifted(f.rs, lambda);
  BundleCohomology out;
  if (walk.singular) return out;
  out.vanishes = false;
  out.degree = walk.w_length;
  out.weight = walk.dominant;
  for (auto& c : out.weight.coords) c -= 1;
  out.dim = weyl_dimension(f.rs, out.weight);
  return out;
}

// Levi-irreducible constituents of Hom(V_l2, V_l1) = V_l1 (x) V_l2^*.
struct HomComponent {
  WeightVector weight;
  Integer mult;
};

inline std::vector<HomComponent> hom_components(const FlagFiber& f, const WeightVector& l1,
                                                const WeightVector& l2) {
  require_levi_weight(f, l1);
  require_levi_weight(f, l2);
  auto dual2 = detail::dual_on(f.rs, f.diagram.levi_mask, detail::to_ivec(l2));
  std::vector<HomComponent> out;
  for (auto& [w, m] :
       detail::tensor_on(f.rs, f.diagram.levi_mask, detail::to_ivec(l1), dual2))
    out.push_back({detail::to_weight(w), m});
  return out;
}

struct GradedEntry {
  int degree;
  WeightVector weight;
  Integer dim;  // multiplicity-weighted dimension of the G-module
};

struct GradedCohomology {
  std::vector<GradedEntry> entries;  // sorted by (degree, weight)
  bool total_vanishing() const { return entries.empty(); }
  Integer dim_at(int degree) const {
    Integer d = 0;
    for (const auto& e : entries)
      if (e.degree == degree) d += e.dim;
    return d;
  }
};

// H^*(G/P, Hom(V_l2, V_l1)), aggregated over the hom components.
inline GradedCohomology hom_bundle_cohomology(const FlagFiber& f, const WeightVector& l1,
                                              const WeightVector& l2) {
  std::map<std::pair<int, WeightVector>, Integer> acc;
  for (const auto& comp : hom_components(f, l1, l2)) {
    auto h = bundle_cohomology(f, comp.weight);
    if (!h.vanishes) acc[{h.degree, h.weight}] += comp.mult * h.dim;
  }
  GradedCohomology out;
  for (auto& [key, dim] : acc) out.entries.push_back({key.first, key.second, dim});
  return out;
}

// Multiplicity of the trivial G-module in H^1(G/P, Hom(V_l2, V_l1)).
inline Integer invariant_multiplicity(const FlagFiber& f, const WeightVector& l1,
                                      const WeightVector& l2) {
  Integer mult = 0;
  for (const auto& comp : hom_components(f, l1, l2)) {
    auto h = bundle_cohomology(f, comp.weight);
    if (!h.vanishes && h.degree == 1 && h.dim == 1 &&
        std::all_of(h.weight.coords.begin(), h.weight.coords.end(),
                    [](const Rational& c) { return c == 0; }))
      mult += comp.mult;
  }
  return mult;
}

// Kahler class on G/P: one positive coefficient per crossed node, in
// increasing node order.  Defaults to all ones.
struct KahlerClass {
  std::vector<Rational> coeffs;
};

inline KahlerClass unit_kahler_class(const ParabolicDiagram& d) {
  KahlerClass k;
  k.coeffs.assign(static_cast<size_t>(std::popcount(d.crossed_mask)), Rational(1));
  return k;
}

inline void require_kahler(const FlagFiber& f, const KahlerClass& k) {
  if (k.coeffs.size() != static_cast<size_t>(std::popcount(f.diagram.crossed_mask)))
    throw std::invalid_argument("Kahler class needs one coefficient per crossed node");
  for (const auto& c : k.coeffs)
    if (c <= 0) throw std::invalid_argument("Kahler coefficients must be positive");
}

// Component of lambda along the crossed fundamental weights, i.e. the
// central character of the Levi: lambda = sum_j c_j alpha_j (j uncrossed)
// + sum_i z_i w_i (i crossed).  Returned in increasing node order.
inline std::vector<Rational> central_component(const FlagFiber& f,
                                               const WeightVector& lambda) {
  require_rank(f.rs, lambda);
  const int n = f.rs.type.rank;
  std::vector<int> levi_nodes, crossed_nodes;
  for (int i = 0; i < n; ++i)
    (f.diagram.crossed[i] ? crossed_nodes : levi_nodes).push_back(i);
  std::vector<Rational> c;
  if (!levi_nodes.empty()) {
    std::vector<std::vector<Rational>> a(levi_nodes.size(),
                                         std::vector<Rational>(levi_nodes.size()));
    std::vector<Rational> rhs(levi_nodes.size());
    for (size_t r = 0; r < levi_nodes.size(); ++r) {
      for (size_t s = 0; s < levi_nodes.size(); ++s)
        a[r][s] = f.rs.cartan[levi_nodes[r]][levi_nodes[s]];
      rhs[r] = lambda.coords[levi_nodes[r]];
    }
    c = detail::solve_linear(a, rhs);
  }
  std::vector<Rational> z;
  for (int i : crossed_nodes) {
    Rational zi = lambda.coords[i];
    for (size_t s = 0; s < levi_nodes.size(); ++s)
      zi -= Rational(f.rs.cartan[i][levi_nodes[s]]) * c[s];
    z.push_back(zi);
  }
  return z;
}

// Fiber slope: 2 (lambda, xi) with xi = sum of k_i w_i over crossed nodes.
// The factor 2 normalizes A1[x] so that the weight (d) has slope d * k_1.
// Since xi is orthogonal to the uncrossed simple roots this equals
// 2 (P_z lambda, xi) for the central projection P_z.
inline Rational fiber_slope(const FlagFiber& f, const WeightVector& lambda,
                            const KahlerClass& k) {
  require_rank(f.rs, lambda);
  require_kahler(f, k);
  Rational acc(0);
  size_t ki = 0;
  for (int i = 0; i < f.rs.type.rank; ++i) {
    if (!f.diagram.crossed[i]) continue;
    Rational pairing(0);
    for (int j = 0; j < f.rs.type.rank; ++j) pairing += f.rs.gram[j][i] * lambda.coords[j];
    acc += k.coeffs[ki++] * pairing;
  }
  return 2 * acc;
}

inline Rational fiber_slope(const FlagFiber& f, const WeightVector& lambda) {
  return fiber_slope(f, lambda, unit_kahler_class(f.diagram));
}

// Canonical bundle weight of G/P: minus the sum of positive roots outside
// the Levi subsystem.
inline WeightVector canonical_fiber_weight(const FlagFiber& f) {
  const int n = f.rs.type.rank;
  auto levi = detail::subsystem_roots(f.rs, f.diagram.levi_mask);
  std::set<const PositiveRoot*> levi_set(levi.begin(), levi.end());
  WeightVector k;
  k.coords.assign(n, Rational(0));
  for (const auto& r : f.rs.positive_roots) {
    if (levi_set.count(&r)) continue;
    for (int i = 0; i < n; ++i) k.coords[i] -= Rational(r.labels[i]);
  }
  return k;
}

// Sum of a (possibly reducible) P-module given as Levi-irreducible
// constituents; used by the planning layer.
struct ParabolicModule {
  std::vector<WeightVector> weights;  // one entry per irreducible constituent
};

inline void require_module(const FlagFiber& f, const ParabolicModule& m) {
  if (m.weights.empty()) throw std::invalid_argument("module needs at least one weight");
  for (const auto& w : m.weights) require_levi_weight(f, w);
}

// Common slope of the constituents; unequal slopes are a hard error.
inline Rational module_slope(const FlagFiber& f, const ParabolicModule& m,
                             const KahlerClass& k) {
  require_module(f, m);
  Rational s = fiber_slope(f, m.weights.front(), k);
  for (const auto& w : m.weights)
    if (fiber_slope(f, w, k) != s)
      throw std::invalid_argument("constituents of a module must share their slope");
  return s;
}

inline Integer module_rank(const FlagFiber& f, const ParabolicModule& m) {
  require_module(f, m);
  Integer r = 0;
  for (const auto& w : m.weights) r += levi_dimension(f, w);
  return r;
}

// Graded cohomology of Hom(M2, M1) summed over constituent pairs.
inline GradedCohomology hom_module_cohomology(const FlagFiber& f, const ParabolicModule& m1,
                                              const ParabolicModule& m2) {
  std::map<std::pair<int, WeightVector>, Integer> acc;
  for (const auto& w1 : m1.weights)
    for (const auto& w2 : m2.weights)
      for (const auto& e : hom_bundle_cohomology(f, w1, w2).entries)
        acc[{e.degree, e.weight}] += e.dim;
  GradedCohomology out;
  for (auto& [key, dim] : acc) out.entries.push_back({key.first, key.second, dim});
  return out;
}

inline Integer module_invariant_multiplicity(const FlagFiber& f, const ParabolicModule& m1,
                                             const ParabolicModule& m2) {
  Integer mult = 0;
  for (const auto& w1 : m1.weights)
    for (const auto& w2 : m2.weights) mult += invariant_multiplicity(f, w1, w2);
  return mult;
}

}  // namespace flagvortex
