#pragma once

// Planning layer between the cohomology toolkit and the torus solver:
// calibration verdicts, extension dimension counts, vortex parameters
// tau_i(sigma), and the sigma-feasibility window from the integrated
// constraints.  Everything here is exact rational arithmetic.

#include <flagvortex/bbw.hpp>

#include <optional>

namespace flagvortex {

struct BaseBundleSpec {
  std::string name;
  Integer rank = 1;
  Rational degree = 0;   // with respect to the base Kahler form
  Integer h0_dim = 0;    // dim H^0(X, Hom(W2, W1)); carried on the target bundle
};

inline void validate_base_bundle(const BaseBundleSpec& w) {
  if (w.rank < 1) throw std::invalid_argument("base bundle rank must be >= 1");
  if (w.h0_dim < 0) throw std::invalid_argument("h0_dim must be nonnegative");
}

inline Rational base_slope(const BaseBundleSpec& w, const Rational& area) {
  validate_base_bundle(w);
  if (area <= 0) throw std::invalid_argument("area must be positive");
  return w.degree / (Rational(w.rank) * area);
}

struct TripleRecord {
  BaseBundleSpec w1, w2;
  Integer k = 0;          // dim H^1(F, Hom(V_rho2, V_rho1))
  Integer phi_count = 0;  // sections actually supplied
};

inline void validate_triple(const TripleRecord& t) {
  validate_base_bundle(t.w1);
  validate_base_bundle(t.w2);
  if (t.k < 0 || t.phi_count < 0)
    throw std::invalid_argument("triple counts must be nonnegative");
  if (t.phi_count > t.k * t.w1.h0_dim)
    throw std::invalid_argument("phi_count exceeds k * h0_dim");
}

struct QuadrupleRecord {
  TripleRecord triple;
  Integer beta_x_dim = 0;
  bool degenerate = false;
};

inline void validate_quadruple(const QuadrupleRecord& q) {
  validate_triple(q.triple);
  if (q.beta_x_dim < 0) throw std::invalid_argument("beta_x_dim must be nonnegative");
  bool both_vanish = (q.triple.phi_count == 0) && (q.beta_x_dim == 0);
  if (q.degenerate != both_vanish)
    throw std::invalid_argument("degenerate flag must match vanishing of both components");
}

// dim Ext^1 in the trivial-holonomy case: h0 * k, plus the base component
// when a quadruple is given.  Only meaningful under calibration.
inline Integer ext1_dimension(const TripleRecord& t, const std::optional<QuadrupleRecord>& q,
                              bool calibrated) {
  validate_triple(t);
  if (q) validate_quadruple(*q);
  if (!calibrated)
    throw std::domain_error("extension classification requires calibration");
  Integer dim = t.w1.h0_dim * t.k;
  if (q) dim += q->beta_x_dim;
  return dim;
}

struct CalibrationReport {
  Rational mu_rho1, mu_rho2, mu_rho;
  bool h0_vanishes = false;  // independent cohomology check on Hom(rho2, rho1)
  bool calibrated = false;   // mu_rho < 0 and h0_vanishes
  bool consistent = true;    // negative slope never comes with surviving H^0
};

inline CalibrationReport check_calibration(const FlagFiber& f, const ParabolicModule& rho1,
                                           const ParabolicModule& rho2,
                                           const KahlerClass& k) {
  CalibrationReport r;
  r.mu_rho1 = module_slope(f, rho1, k);
  r.mu_rho2 = module_slope(f, rho2, k);
  r.mu_rho = r.mu_rho1 - r.mu_rho2;
  r.h0_vanishes = hom_module_cohomology(f, rho1, rho2).dim_at(0) == 0;
  r.calibrated = (r.mu_rho < 0) && r.h0_vanishes;
  r.consistent = !(r.mu_rho < 0 && !r.h0_vanishes);
  return r;
}

struct InvariantCase {
  bool invariant = false;
  Integer k_invariant = 0;
};

inline InvariantCase detect_invariant_case(const FlagFiber& f, const ParabolicModule& rho1,
                                           const ParabolicModule& rho2,
                                           const KahlerClass& k) {
  InvariantCase out;
  if (rho1.weights.size() != 1 || rho2.weights.size() != 1) return out;
  auto cal = check_calibration(f, rho1, rho2, k);
  out.k_invariant = invariant_multiplicity(f, rho1.weights[0], rho2.weights[0]);
  out.invariant = cal.mu_rho < 0 && out.k_invariant == 1;
  return out;
}

struct VortexParameters {
  Rational lambda_slope;  // mu_sigma(E)
  Rational tau1, tau2;
};

// tau_i = mu_sigma(E) - mu_rho_i / sigma with
// mu_sigma(E_i) = mu_X(W_i) + mu_rho_i / sigma and rank-weighted averaging.
inline VortexParameters vortex_parameters(const Rational& mu_x1, const Rational& mu_x2,
                                          const Integer& rk_e1, const Integer& rk_e2,
                                          const Rational& mu_rho1, const Rational& mu_rho2,
                                          const Rational& sigma) {
  if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
  if (rk_e1 < 1 || rk_e2 < 1) throw std::invalid_argument("ranks must be >= 1");
  Rational m1 = mu_x1 + mu_rho1 / sigma;
  Rational m2 = mu_x2 + mu_rho2 / sigma;
  VortexParameters p;
  p.lambda_slope = (Rational(rk_e1) * m1 + Rational(rk_e2) * m2) / Rational(rk_e1 + rk_e2);
  p.tau1 = p.lambda_slope - mu_rho1 / sigma;
  p.tau2 = p.lambda_slope - mu_rho2 / sigma;
  return p;
}

// Set of sigma > 0 passing the integrated necessary conditions
// tau_1(sigma) >= mu_X(W_1), tau_2(sigma) <= mu_X(W_2) (strict for phi != 0).
// Both reduce to the sign of g(sigma) = (mu_x2 - mu_x1) + (m2 - m1)/sigma.
struct SigmaWindow {
  enum class Kind { unknown, empty, all, bounded, ray, point };
  Kind kind = Kind::unknown;
  Rational lo = 0, hi = 0;  // bounded: (0, hi); ray: (lo, inf); point: {lo}

  bool contains(const Rational& sigma) const {
    if (sigma <= 0) return false;
    switch (kind) {
      case Kind::unknown: return false;
      case Kind::empty: return false;
      case Kind::all: return true;
      case Kind::bounded: return sigma < hi;
      case Kind::ray: return sigma > lo;
      case Kind::point: return sigma == lo;
    }
    return false;
  }

  std::string str() const {
    switch (kind) {
      case Kind::unknown: return "unknown";
      case Kind::empty: return "empty";
      case Kind::all: return "(0, inf)";
      case Kind::bounded: return "(0, " + rational_str(hi) + ")";
      case Kind::ray: return "(" + rational_str(lo) + ", inf)";
      case Kind::point: return "{" + rational_str(lo) + "}";
    }
    return "unknown";
  }
};

inline SigmaWindow sigma_window(const Rational& mu_x1, const Rational& mu_x2,
                                const Rational& mu_rho1, const Rational& mu_rho2,
                                const Integer& base_rank1, const Integer& base_rank2,
                                bool phi_nonzero) {
  SigmaWindow w;
  if (base_rank1 != 1 || base_rank2 != 1) {
    w.kind = SigmaWindow::Kind::unknown;
    return w;
  }
  Rational a = mu_x2 - mu_x1;
  Rational b = mu_rho2 - mu_rho1;
  if (phi_nonzero) {
    // g(sigma) = a + b/sigma > 0 on sigma > 0.
    if (b == 0) {
      w.kind = a > 0 ? SigmaWindow::Kind::all : SigmaWindow::Kind::empty;
    } else if (b > 0) {
      if (a >= 0) {
        w.kind = SigmaWindow::Kind::all;
      } else {
        w.kind = SigmaWindow::Kind::bounded;
        w.hi = b / (-a);
      }
    } else {
      if (a <= 0) {
        w.kind = SigmaWindow::Kind::empty;
      } else {
        w.kind = SigmaWindow::Kind::ray;
        w.lo = (-b) / a;
      }
    }
  } else {
    // Split case: g(sigma) = 0 exactly.
    if (b == 0) {
      w.kind = a == 0 ? SigmaWindow::Kind::all : SigmaWindow::Kind::empty;
    } else if (a == 0) {
      w.kind = SigmaWindow::Kind::empty;
    } else {
      Rational root = (-b) / a;
      if (root > 0) {
        w.kind = SigmaWindow::Kind::point;
        w.lo = root;
      } else {
        w.kind = SigmaWindow::Kind::empty;
      }
    }
  }
  return w;
}

struct PlanInput {
  ParabolicModule rho1, rho2;
  KahlerClass kahler;  // empty coeffs = unit class
  BaseBundleSpec w1, w2;
  Rational area = 1;
  Rational sigma = 1;
  bool phi_nonzero = true;
};

struct ReductionPlan {
  ParabolicDiagram fiber;
  ParabolicModule rho1, rho2;
  Rational mu_rho1, mu_rho2, mu_rho;
  bool calibrated = false, consistent = true, h0_vanishes = false;
  Integer k = 0;  // dim H^1(F, Hom(V_rho2, V_rho1))
  Integer r_v1 = 1, r_v2 = 1;
  Rational mu_x1, mu_x2;
  Integer rk_e1 = 1, rk_e2 = 1;
  Rational sigma = 1;
  Rational lambda_slope, tau1, tau2;
  bool invariant_case = false;
  Integer k_invariant = 0;
  SigmaWindow window;
};

inline ReductionPlan build_plan(const FlagFiber& f, const PlanInput& in) {
  ReductionPlan plan;
  plan.fiber = f.diagram;
  plan.rho1 = in.rho1;
  plan.rho2 = in.rho2;
  KahlerClass k = in.kahler.coeffs.empty() ? unit_kahler_class(f.diagram) : in.kahler;

  auto cal = check_calibration(f, in.rho1, in.rho2, k);
  plan.mu_rho1 = cal.mu_rho1;
  plan.mu_rho2 = cal.mu_rho2;
  plan.mu_rho = cal.mu_rho;
  plan.calibrated = cal.calibrated;
  plan.consistent = cal.consistent;
  plan.h0_vanishes = cal.h0_vanishes;

  plan.k = hom_module_cohomology(f, in.rho1, in.rho2).dim_at(1);
  plan.r_v1 = module_rank(f, in.rho1);
  plan.r_v2 = module_rank(f, in.rho2);

  plan.mu_x1 = base_slope(in.w1, in.area);
  plan.mu_x2 = base_slope(in.w2, in.area);
  plan.rk_e1 = in.w1.rank * plan.r_v1;
  plan.rk_e2 = in.w2.rank * plan.r_v2;

  plan.sigma = in.sigma;
  auto vp = vortex_parameters(plan.mu_x1, plan.mu_x2, plan.rk_e1, plan.rk_e2, plan.mu_rho1,
                              plan.mu_rho2, in.sigma);
  plan.lambda_slope = vp.lambda_slope;
  plan.tau1 = vp.tau1;
  plan.tau2 = vp.tau2;

  auto inv = detect_invariant_case(f, in.rho1, in.rho2, k);
  plan.invariant_case = inv.invariant;
  plan.k_invariant = inv.k_invariant;

  plan.window = sigma_window(plan.mu_x1, plan.mu_x2, plan.mu_rho1, plan.mu_rho2, in.w1.rank,
                             in.w2.rank, in.phi_nonzero);
  return plan;
}

}  // namespace flagvortex
