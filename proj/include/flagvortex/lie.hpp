#pragma once

// Exact structure constants and weight combinatorics for the finite root
// system families A..G.  Everything operates on label vectors (coordinates
// in the fundamental-weight basis) with arbitrary-precision integer or
// rational arithmetic; nothing in this header is floating point.
//
// Conventions:
//   * cartan[i][j] = <alpha_j, alpha_i^vee>, so the label vector of the
//     simple root alpha_j is the j-th column of the Cartan matrix.
//   * The invariant form is normalized so short roots have length^2 = 2;
//     symmetrizer[i] = (alpha_i, alpha_i)/2 in {1,2,3}.
//   * Node numbering follows Bourbaki (E-series: node 2 is the fork).
//   * Public entry points take 1-based node indices, matching diagram
//     notation; internal code is 0-based.

#include <flagvortex/numeric.hpp>

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace flagvortex {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct LieType {
  Family family{Family::A};
  int rank = 1;
  friend bool operator==(const LieType&, const LieType&) = default;
};

// Validates the family letter and the rank range (B,C need rank >= 2,
// D >= 3, E in 6..8, F = 4, G = 2; desk-scale cap at rank 9).
inline LieType make_lie_type(char fam, int rank) {
  if (fam < 'A' || fam > 'G')
    throw std::invalid_argument(std::string("unknown family letter '") + fam + "'");
  Family f = static_cast<Family>(fam);
  auto bad = [&] {
    throw std::invalid_argument(std::string("rank ") + std::to_string(rank) +
                                " out of range for family " + fam);
  };
  if (rank < 1 || rank > 9) bad();
  switch (f) {
    case Family::A: break;
    case Family::B:
    case Family::C:
      if (rank < 2) bad();
      break;
    case Family::D:
      if (rank < 3) bad();
      break;
    case Family::E:
      if (rank < 6 || rank > 8) bad();
      break;
    case Family::F:
      if (rank != 4) bad();
      break;
    case Family::G:
      if (rank != 2) bad();
      break;
  }
  return LieType{f, rank};
}

struct WeightVector {
  std::vector<Rational> coords;
  WeightVector() = default;
  explicit WeightVector(std::vector<Rational> c) : coords(std::move(c)) {}
  size_t size() const { return coords.size(); }
  friend bool operator==(const WeightVector& a, const WeightVector& b) {
    return a.coords == b.coords;
  }
};

inline bool operator<(const WeightVector& a, const WeightVector& b) {
  return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                      b.coords.end());
}

inline std::string print_weight(const WeightVector& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.coords.size(); ++i) {
    if (i) s += ",";
    s += rational_str(w.coords[i]);
  }
  return s + ")";
}

inline WeightVector parse_weight(const std::string& text) {
  auto l = text.find('('), r = text.rfind(')');
  if (l == std::string::npos || r == std::string::npos || r < l)
    throw std::invalid_argument("weight must look like '(a,b,...)': " + text);
  std::vector<Rational> coords;
  std::string body = text.substr(l + 1, r - l - 1);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) coords.push_back(parse_rational(item));
  if (coords.empty()) throw std::invalid_argument("empty weight: " + text);
  return WeightVector{std::move(coords)};
}

struct PositiveRoot {
  std::vector<Integer> simple;  // coordinates in the simple-root basis
  std::vector<Integer> labels;  // <alpha, alpha_i^vee> for each node i
  Integer d_alpha;              // (alpha,alpha)/2
  int height = 0;
};

struct RootSystemData {
  LieType type;
  std::vector<std::vector<int>> cartan;
  std::vector<int> symmetrizer;
  std::vector<PositiveRoot> positive_roots;
  std::vector<std::vector<Rational>> gram;  // (w_i, w_j)
  WeightVector rho;
  unsigned all_nodes = 0;  // bitmask, bit i = node i (0-based)
};

namespace detail {

inline std::vector<std::vector<int>> cartan_matrix(LieType t) {
  int n = t.rank;
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };  // 0-based
  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 1][n - 2] = -2;  // alpha_n short
      break;
    case Family::C:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 2][n - 1] = -2;  // alpha_n long
      break;
    case Family::D:
      for (int i = 0; i + 1 < n - 1; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case Family::E:
      link(0, 2);
      link(2, 3);
      link(1, 3);
      for (int i = 3; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Family::F:
      link(0, 1);
      link(1, 2);
      link(2, 3);
      a[2][1] = -2;  // alpha_1, alpha_2 long; alpha_3, alpha_4 short
      break;
    case Family::G:
      a[0][1] = -3;  // alpha_1 short, alpha_2 long
      a[1][0] = -1;
      break;
  }
  return a;
}

inline std::vector<int> symmetrizer_vec(LieType t) {
  int n = t.rank;
  std::vector<int> d(n, 1);
  switch (t.family) {
    case Family::B:
      for (int i = 0; i + 1 < n; ++i) d[i] = 2;
      break;
    case Family::C:
      d[n - 1] = 2;
      break;
    case Family::F:
      d[0] = d[1] = 2;
      break;
    case Family::G:
      d[1] = 3;
      break;
    default:
      break;
  }
  return d;
}

// Solves M x = b over the rationals by Gaussian elimination (square M).
inline std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> m,
                                          std::vector<Rational> b) {
  const size_t n = m.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw std::logic_error("singular matrix in solve_linear");
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    for (size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational f = m[row][col] / m[col][col];
      for (size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
      b[row] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
  return x;
}

}  // namespace detail

inline RootSystemData root_system(LieType t) {
  RootSystemData rs;
  rs.type = t;
  const int n = t.rank;
  rs.cartan = detail::cartan_matrix(t);
  rs.symmetrizer = detail::symmetrizer_vec(t);
  rs.all_nodes = (n >= 32) ? ~0u : ((1u << n) - 1u);

  // Positive roots: close the simple roots under the simple reflections,
  // keeping vectors with nonnegative simple-root coordinates.
  std::set<std::vector<Integer>> seen;
  std::deque<std::vector<Integer>> queue;
  for (int i = 0; i < n; ++i) {
    std::vector<Integer> e(n, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  auto labels_of = [&](const std::vector<Integer>& simple) {
    std::vector<Integer> l(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) l[i] += Integer(rs.cartan[i][j]) * simple[j];
    return l;
  };
  while (!queue.empty()) {
    auto beta = queue.front();
    queue.pop_front();
    auto lab = labels_of(beta);
    for (int i = 0; i < n; ++i) {
      auto b2 = beta;
      b2[i] -= lab[i];
      if (std::all_of(b2.begin(), b2.end(), [](const Integer& c) { return c >= 0; }) &&
          seen.insert(b2).second)
        queue.push_back(b2);
    }
  }
  for (const auto& simple : seen) {
    PositiveRoot r;
    r.simple = simple;
    r.labels = labels_of(simple);
    Integer norm2 = 0;
    int h = 0;
    for (int i = 0; i < n; ++i) {
      norm2 += simple[i] * Integer(rs.symmetrizer[i]) * r.labels[i];
      h += simple[i].convert_to<int>();
    }
    assert(norm2 % 2 == 0);
    r.d_alpha = norm2 / 2;
    r.height = h;
    rs.positive_roots.push_back(std::move(r));
  }
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(),
            [](const PositiveRoot& a, const PositiveRoot& b) {
              if (a.height != b.height) return a.height < b.height;
              return a.simple < b.simple;
            });

  // Gram matrix of the fundamental weights: G = D A^{-1} entrywise,
  // computed column by column from A^T x = d_i e_i.
  std::vector<std::vector<Rational>> a_rat(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a_rat[i][j] = rs.cartan[i][j];
  rs.gram.assign(n, std::vector<Rational>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> rhs(n, Rational(0));
    rhs[j] = 1;
    auto col = detail::solve_linear(a_rat, rhs);  // A^{-1} e_j
    for (int i = 0; i < n; ++i) rs.gram[i][j] = Rational(rs.symmetrizer[i]) * col[i];
  }

  rs.rho.coords.assign(n, Rational(1));
  return rs;
}

// ---- pairings ------------------------------------------------------------

inline void require_rank(const RootSystemData& rs, const WeightVector& v) {
  if (static_cast<int>(v.size()) != rs.type.rank)
    throw std::invalid_argument("weight has " + std::to_string(v.size()) +
                                " coordinates, root system has rank " +
                                std::to_string(rs.type.rank));
}

inline void require_integral(const WeightVector& v) {
  for (const auto& c : v.coords)
    if (!is_integral(c))
      throw std::invalid_argument("weight " + print_weight(v) +
                                  " is not integral where integrality is required");
}

inline bool is_dominant(const WeightVector& v) {
  return std::all_of(v.coords.begin(), v.coords.end(),
                     [](const Rational& c) { return c >= 0; });
}

// (v, alpha) for a positive root alpha; equals sum_i d_i n_i v_i.
template <class Scalar>
inline Scalar pair_root(const RootSystemData& rs, const std::vector<Scalar>& v,
                        const PositiveRoot& alpha) {
  Scalar acc(0);
  for (size_t i = 0; i < v.size(); ++i)
    if (alpha.simple[i] != 0) acc += Scalar(alpha.simple[i] * Integer(rs.symmetrizer[i])) * v[i];
  return acc;
}

inline Rational inner_product(const RootSystemData& rs, const WeightVector& a,
                              const WeightVector& b) {
  require_rank(rs, a);
  require_rank(rs, b);
  Rational acc(0);
  for (int i = 0; i < rs.type.rank; ++i) {
    if (a.coords[i] == 0) continue;
    Rational row(0);
    for (int j = 0; j < rs.type.rank; ++j) row += rs.gram[i][j] * b.coords[j];
    acc += a.coords[i] * row;
  }
  return acc;
}

// ---- reflection / dominantization walks ----------------------------------

namespace detail {

template <class Scalar>
inline void reflect_at(const RootSystemData& rs, int i, std::vector<Scalar>& v) {
  Scalar vi = v[i];
  if (vi == 0) return;
  for (size_t j = 0; j < v.size(); ++j) v[j] -= vi * Scalar(rs.cartan[j][i]);
}

struct WalkResult {
  bool singular = false;
  int length = 0;
};

// Reflects v into the (mask-restricted) dominant chamber.  With
// stop_on_zero, a vanishing coordinate on a mask node anywhere along the
// walk reports the orbit as singular (zero pairing with some positive
// root of the subsystem).  The picker chooses among the negative nodes;
// for regular vectors the step count is picker-independent and equals the
// length of the unique Weyl element mapping v to the dominant chamber.
template <class Scalar, class Picker>
inline WalkResult dominantize_walk(const RootSystemData& rs, unsigned mask,
                                   std::vector<Scalar>& v, bool stop_on_zero, Picker&& pick) {
  WalkResult res;
  const int n = rs.type.rank;
  std::vector<int> negatives;
  for (long guard = 0;; ++guard) {
    if (guard > 2'000'000) throw std::logic_error("dominantize failed to terminate");
    negatives.clear();
    bool zero = false;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (v[i] == 0) zero = true;
      if (v[i] < 0) negatives.push_back(i);
    }
    if (stop_on_zero && zero) {
      res.singular = true;
      return res;
    }
    if (negatives.empty()) return res;
    reflect_at(rs, pick(negatives), v);
    ++res.length;
  }
}

template <class Scalar>
inline WalkResult dominantize_walk(const RootSystemData& rs, unsigned mask,
                                   std::vector<Scalar>& v, bool stop_on_zero) {
  return dominantize_walk(rs, mask, v, stop_on_zero,
                          [](const std::vector<int>& neg) { return neg.front(); });
}

using IVec = std::vector<Integer>;

inline IVec rho_of(const RootSystemData& rs, unsigned mask) {
  IVec r(rs.type.rank, 0);
  for (int i = 0; i < rs.type.rank; ++i)
    if (mask >> i & 1u) r[i] = 1;
  return r;
}

inline bool dominant_on(const IVec& v, unsigned mask) {
  for (size_t i = 0; i < v.size(); ++i)
    if ((mask >> i & 1u) && v[i] < 0) return false;
  return true;
}

// Positive roots supported on the mask nodes (the subsystem's positive roots).
inline std::vector<const PositiveRoot*> subsystem_roots(const RootSystemData& rs,
                                                        unsigned mask) {
  std::vector<const PositiveRoot*> out;
  for (const auto& r : rs.positive_roots) {
    bool ok = true;
    for (size_t i = 0; i < r.simple.size(); ++i)
      if (r.simple[i] != 0 && !(mask >> i & 1u)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(&r);
  }
  return out;
}

// -w0 of lambda in the subsystem: negate, then plain dominantization.
inline IVec dual_on(const RootSystemData& rs, unsigned mask, const IVec& lambda) {
  IVec v(lambda.size());
  for (size_t i = 0; i < lambda.size(); ++i) v[i] = -lambda[i];
  dominantize_walk(rs, mask, v, /*stop_on_zero=*/false);
  return v;
}

inline Rational inner_ivec(const RootSystemData& rs, const IVec& a, const IVec& b) {
  Rational acc(0);
  for (int i = 0; i < rs.type.rank; ++i) {
    if (a[i] == 0) continue;
    Rational row(0);
    for (int j = 0; j < rs.type.rank; ++j)
      if (b[j] != 0) row += rs.gram[i][j] * Rational(b[j]);
    acc += Rational(a[i]) * row;
  }
  return acc;
}

// Weyl dimension of the irreducible with mask-dominant highest weight
// lambda, relative to the subsystem (empty mask: dimension 1).
inline Integer weyl_dim_on(const RootSystemData& rs, unsigned mask, const IVec& lambda) {
  if (!dominant_on(lambda, mask))
    throw std::invalid_argument("weyl dimension needs a dominant weight");
  IVec rho = rho_of(rs, mask);
  Rational dim(1);
  for (const auto* r : subsystem_roots(rs, mask)) {
    Integer num = 0, den = 0;
    for (int i = 0; i < rs.type.rank; ++i) {
      if (r->simple[i] == 0) continue;
      Integer w = r->simple[i] * Integer(rs.symmetrizer[i]);
      num += w * (lambda[i] + rho[i]);
      den += w * rho[i];
    }
    dim *= Rational(num, den);
  }
  if (!is_integral(dim)) throw std::logic_error("weyl dimension came out non-integral");
  return numerator(dim);
}

// Full weight system of the mask-irreducible with highest weight lambda:
// Freudenthal recursion on the dominant cone, then Weyl-orbit expansion.
inline std::map<IVec, Integer> weight_system_on(const RootSystemData& rs, unsigned mask,
                                                const IVec& lambda) {
  const int n = rs.type.rank;
  if (!dominant_on(lambda, mask))
    throw std::invalid_argument("weight system needs a mask-dominant highest weight");
  std::vector<int> nodes;
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1u) nodes.push_back(i);

  std::map<IVec, Integer> full;
  if (nodes.empty()) {
    full[lambda] = 1;
    return full;
  }

  // Bounding box: lambda - w0(lambda) = sum c_i alpha_i with c >= 0.
  IVec lstar = dual_on(rs, mask, lambda);
  std::vector<std::vector<Rational>> a_sub(nodes.size(), std::vector<Rational>(nodes.size()));
  std::vector<Rational> t_sub(nodes.size());
  for (size_t r = 0; r < nodes.size(); ++r) {
    for (size_t c = 0; c < nodes.size(); ++c) a_sub[r][c] = rs.cartan[nodes[r]][nodes[c]];
    t_sub[r] = Rational(lambda[nodes[r]] + lstar[nodes[r]]);
  }
  auto cmax_rat = solve_linear(a_sub, t_sub);
  std::vector<long> cmax(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!is_integral(cmax_rat[i]) || cmax_rat[i] < 0)
      throw std::logic_error("weight box solve produced a non-integer bound");
    cmax[i] = to_integer(cmax_rat[i]).convert_to<long>();
  }

  struct Cand {
    std::vector<long> c;
    IVec mu;
    long level;
  };
  std::vector<Cand> cands;
  std::vector<long> c(nodes.size(), 0);
  IVec mu = lambda;
  long level = 0;
  // Odometer over the box; mu tracked incrementally.
  for (;;) {
    if (dominant_on(mu, mask)) cands.push_back({c, mu, level});
    size_t k = 0;
    for (; k < nodes.size(); ++k) {
      if (c[k] < cmax[k]) {
        ++c[k];
        ++level;
        for (int i = 0; i < n; ++i) mu[i] -= rs.cartan[i][nodes[k]];
        break;
      }
      level -= c[k];
      for (int i = 0; i < n; ++i) mu[i] += Integer(c[k]) * rs.cartan[i][nodes[k]];
      c[k] = 0;
    }
    if (k == nodes.size()) break;
  }
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return a.level < b.level; });

  auto roots = subsystem_roots(rs, mask);
  IVec rho = rho_of(rs, mask);
  std::map<IVec, Integer> dom_mult;
  IVec lam_rho(n), mu_rho(n);
  for (int i = 0; i < n; ++i) lam_rho[i] = lambda[i] + rho[i];

  for (const auto& cand : cands) {
    if (cand.level == 0) {
      dom_mult[cand.mu] = 1;
      continue;
    }
    Integer num = 0;
    for (const auto* alpha : roots) {
      IVec nu = cand.mu;
      std::vector<long> cr = cand.c;
      for (;;) {
        bool inside = true;
        for (size_t k = 0; k < nodes.size(); ++k) {
          cr[k] -= alpha->simple[nodes[k]].convert_to<long>();
          if (cr[k] < 0) inside = false;
        }
        if (!inside) break;
        for (int i = 0; i < n; ++i) nu[i] += alpha->labels[i];
        IVec nu_dom = nu;
        dominantize_walk(rs, mask, nu_dom, /*stop_on_zero=*/false);
        auto it = dom_mult.find(nu_dom);
        if (it != dom_mult.end() && it->second != 0)
          num += it->second * pair_root(rs, nu, *alpha);
      }
    }
    if (num == 0) continue;
    for (int i = 0; i < n; ++i) mu_rho[i] = cand.mu[i] + rho[i];
    IVec diff(n), sum(n);
    for (int i = 0; i < n; ++i) {
      diff[i] = lam_rho[i] - mu_rho[i];
      sum[i] = lam_rho[i] + mu_rho[i];
    }
    Rational den = inner_ivec(rs, sum, diff);
    if (den == 0) throw std::logic_error("freudenthal denominator vanished");
    Rational m = Rational(2 * num) / den;
    if (!is_integral(m) || m < 0) throw std::logic_error("freudenthal gave a bad multiplicity");
    dom_mult[cand.mu] = to_integer(m);
  }

  // Orbit expansion.
  for (const auto& [dom, m] : dom_mult) {
    if (m == 0) continue;
    std::set<IVec> orbit{dom};
    std::deque<IVec> queue{dom};
    while (!queue.empty()) {
      IVec w = queue.front();
      queue.pop_front();
      for (int i : nodes) {
        if (w[i] == 0) continue;
        IVec w2 = w;
        reflect_at(rs, i, w2);
        if (orbit.insert(w2).second) queue.push_back(w2);
      }
    }
    for (const auto& w : orbit) full[w] = m;
  }
  return full;
}

// Tensor decomposition of mask-irreducibles by shifted dominantization of
// l2 + (weights of l1); singular shifts cancel, signs alternate with the
// walk length.
inline std::map<IVec, Integer> tensor_on(const RootSystemData& rs, unsigned mask,
                                         const IVec& l1, const IVec& l2) {
  const int n = rs.type.rank;
  IVec rho = rho_of(rs, mask);
  // Walk the smaller weight system.
  IVec a = l1, b = l2;
  if (weyl_dim_on(rs, mask, l1) > weyl_dim_on(rs, mask, l2)) std::swap(a, b);
  auto weights = weight_system_on(rs, mask, a);
  std::map<IVec, Integer> out;
  for (const auto& [mu, m] : weights) {
    IVec t(n);
    for (int i = 0; i < n; ++i) t[i] = b[i] + mu[i] + rho[i];
    auto walk = dominantize_walk(rs, mask, t, /*stop_on_zero=*/true);
    if (walk.singular) continue;
    for (int i = 0; i < n; ++i) t[i] -= rho[i];
    out[t] += (walk.length % 2 == 0) ? m : -m;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0)
      it = out.erase(it);
    else if (it->second < 0)
      throw std::logic_error("tensor decomposition produced a negative multiplicity");
    else
      ++it;
  }
  return out;
}

inline IVec to_ivec(const WeightVector& w) {
  IVec v(w.size());
  for (size_t i = 0; i < w.size(); ++i) v[i] = to_integer(w.coords[i]);
  return v;
}

inline WeightVector to_weight(const IVec& v) {
  WeightVector w;
  w.coords.reserve(v.size());
  for (const auto& c : v) w.coords.emplace_back(c);
  return w;
}

}  // namespace detail

// ---- public operations ----------------------------------------------------

// Reflection at the simple root of `node` (1-based).
inline WeightVector simple_reflection(const RootSystemData& rs, int node, WeightVector v) {
  require_rank(rs, v);
  if (node < 1 || node > rs.type.rank)
    throw std::invalid_argument("node index " + std::to_string(node) + " out of range");
  detail::reflect_at(rs, node - 1, v.coords);
  return v;
}

struct DotDominantization {
  bool singular = false;
  WeightVector dominant;  // dominantized lambda + rho (valid when !singular)
  int w_length = 0;
};

// Walks lambda + rho into the dominant chamber. A zero coordinate anywhere
// along the walk means lambda + rho lies on a reflection wall: singular,
// i.e. total cohomology vanishing downstream.
inline DotDominantization dominantize_shifted(const RootSystemData& rs,
                                              const WeightVector& lambda) {
  require_rank(rs, lambda);
  std::vector<Rational> v = lambda.coords;
  for (auto& c : v) c += 1;
  auto walk = detail::dominantize_walk(rs, rs.all_nodes, v, /*stop_on_zero=*/true);
  DotDominantization out;
  out.singular = walk.singular;
  out.w_length = walk.length;
  if (!walk.singular) out.dominant = WeightVector{std::move(v)};
  return out;
}

inline Integer weyl_dimension(const RootSystemData& rs, const WeightVector& lambda) {
  require_rank(rs, lambda);
  require_integral(lambda);
  if (!is_dominant(lambda))
    throw std::invalid_argument("weyl_dimension needs a dominant weight, got " +
                                print_weight(lambda));
  return detail::weyl_dim_on(rs, rs.all_nodes, detail::to_ivec(lambda));
}

// Weight multiset of the irreducible with highest weight lambda.
inline std::map<WeightVector, Integer> freudenthal_weights(const RootSystemData& rs,
                                                           const WeightVector& lambda) {
  require_rank(rs, lambda);
  require_integral(lambda);
  if (!is_dominant(lambda))
    throw std::invalid_argument("freudenthal_weights needs a dominant weight");
  std::map<WeightVector, Integer> out;
  for (auto& [k, v] : detail::weight_system_on(rs, rs.all_nodes, detail::to_ivec(lambda)))
    out[detail::to_weight(k)] = v;
  return out;
}

// V_l1 (x) V_l2 as a formal sum of dominant highest weights.
inline std::map<WeightVector, Integer> klimyk_tensor(const RootSystemData& rs,
                                                     const WeightVector& l1,
                                                     const WeightVector& l2) {
  require_rank(rs, l1);
  require_rank(rs, l2);
  require_integral(l1);
  require_integral(l2);
  if (!is_dominant(l1) || !is_dominant(l2))
    throw std::invalid_argument("klimyk_tensor needs dominant weights");
  std::map<WeightVector, Integer> out;
  for (auto& [k, v] :
       detail::tensor_on(rs, rs.all_nodes, detail::to_ivec(l1), detail::to_ivec(l2)))
    out[detail::to_weight(k)] = v;
  return out;
}

// Highest weight of the dual representation, -w0(lambda).
inline WeightVector dual_weight(const RootSystemData& rs, const WeightVector& lambda) {
  require_rank(rs, lambda);
  if (!is_dominant(lambda))
    throw std::invalid_argument("dual_weight needs a dominant weight");
  std::vector<Rational> v = lambda.coords;
  for (auto& c : v) c = -c;
  detail::dominantize_walk(rs, rs.all_nodes, v, /*stop_on_zero=*/false);
  return WeightVector{std::move(v)};
}

}  // namespace flagvortex
