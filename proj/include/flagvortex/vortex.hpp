#pragma once

// Coupled twisted vortex equations for a pair of line bundles on a flat
// torus.  Metrics are conformal factors e^{2 u_i} over constant-curvature
// backgrounds, sections enter through Poisson-regularized log densities
// (so the unknowns stay smooth), and the system solved is
//   r1 = 2 pi d1/A - (1/2) Lap u1 + (a1/sigma) Phi - 2 pi tau1 = 0
//   r2 = 2 pi d2/A - (1/2) Lap u2 - (a2/sigma) Phi - 2 pi tau2 = 0
// with Phi = sum_j s_j e^{2(v_j + u1 - u2)} and a_i the inverse fiber
// module ranks.  Integrating either equation pins the total section mass,
// which makes infeasibility decidable before any iteration.

#include <flagvortex/grid.hpp>
#include <flagvortex/reduction.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace flagvortex {

struct VortexPoint {
  int i = 0, j = 0;
  int mult = 1;
};

struct SectionSpec {
  std::vector<VortexPoint> divisor;
  double scale = 1.0;              // squared amplitude of the section
  std::vector<double> potential;   // optional explicit log-density (skips the divisor)
};

struct VortexProblem {
  TorusGrid grid;
  int d1 = 0, d2 = 0;
  double sigma = 1;
  double tau1 = 0, tau2 = 0;
  double a1 = 1, a2 = 1;   // inverse fiber module ranks
  double mu1 = 0, mu2 = 0;  // d_i / area
  int k_eff = 0;
  std::vector<std::vector<double>> potentials;  // v_j, mean-free
  std::vector<double> background;               // B = sum_j s_j e^{2 v_j}
  Integer h0_dim = 0;
  double gauge_scalar = 0;   // (1/a1)(mu1 - tau1) + (1/a2)(mu2 - tau2)
  bool gauge_exact = false;  // scalar known to vanish exactly (plan arithmetic)
};

inline VortexProblem make_problem(const TorusGrid& grid, int d1, int d2, double sigma,
                                  double tau1, double tau2, double a1, double a2,
                                  const std::vector<SectionSpec>& sections) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  if (!(a1 > 0) || !(a2 > 0)) throw std::invalid_argument("rank weights must be positive");
  const int m = d1 - d2;
  if (m < 0 && !sections.empty())
    throw std::invalid_argument("no holomorphic sections exist for negative degree");

  VortexProblem p;
  p.grid = grid;
  p.d1 = d1;
  p.d2 = d2;
  p.sigma = sigma;
  p.tau1 = tau1;
  p.tau2 = tau2;
  p.a1 = a1;
  p.a2 = a2;
  p.mu1 = d1 / grid.area;
  p.mu2 = d2 / grid.area;
  p.k_eff = static_cast<int>(sections.size());
  p.h0_dim = m > 0 ? m : (m == 0 ? 1 : 0);
  p.gauge_scalar = (p.mu1 - tau1) / a1 + (p.mu2 - tau2) / a2;
  p.gauge_exact = p.gauge_scalar == 0.0;

  PoissonSolver poisson(grid);
  p.background.assign(grid.size(), 0.0);
  for (const auto& s : sections) {
    if (!(s.scale > 0)) throw std::invalid_argument("section scale must be positive");
    std::vector<double> v;
    if (!s.potential.empty()) {
      if (!s.divisor.empty())
        throw std::invalid_argument("explicit potential excludes a divisor");
      if (m != 0)
        throw std::invalid_argument("explicit potential requires equal degrees");
      if (static_cast<int>(s.potential.size()) != grid.size())
        throw std::invalid_argument("potential size does not match the grid");
      v = s.potential;
    } else {
      int total = 0;
      for (const auto& pt : s.divisor) {
        if (pt.mult < 1) throw std::invalid_argument("divisor multiplicities must be >= 1");
        total += pt.mult;
      }
      if (total != m)
        throw std::invalid_argument("divisor degree does not match d1 - d2");
      std::vector<double> rhs(grid.size(), -2.0 * M_PI * m / grid.area);
      for (const auto& pt : s.divisor)
        rhs[grid.idx(pt.i, pt.j)] += 2.0 * M_PI * pt.mult / (grid.hx * grid.hy);
      v = poisson.solve(rhs);
    }
    p.potentials.push_back(v);
    for (int c = 0; c < grid.size(); ++c)
      p.background[c] += s.scale * std::exp(2.0 * v[c]);
  }
  return p;
}

// Problem assembly from a reduction plan (line-bundle base factors).
inline VortexProblem assemble_problem(const ReductionPlan& plan, const TorusGrid& grid,
                                      int d1, int d2,
                                      const std::vector<SectionSpec>& sections) {
  if (plan.rk_e1 != plan.r_v1 || plan.rk_e2 != plan.r_v2)
    throw std::invalid_argument("solver handles line bundles on the base only");
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b)); };
  if (!close(d1 / grid.area, to_double(plan.mu_x1)) ||
      !close(d2 / grid.area, to_double(plan.mu_x2)))
    throw std::invalid_argument("degrees disagree with the plan slopes");
  Integer bound = (d1 - d2 > 0 ? Integer(d1 - d2) : Integer(d1 == d2 ? 1 : 0)) * plan.k;
  if (Integer(static_cast<int>(sections.size())) > bound)
    throw std::invalid_argument("more sections than the extension space supports");

  auto p = make_problem(grid, d1, d2, to_double(plan.sigma), to_double(plan.tau1),
                        to_double(plan.tau2), 1.0 / to_double(Rational(plan.r_v1)),
                        1.0 / to_double(Rational(plan.r_v2)), sections);
  Rational exact = Rational(plan.r_v1) * (plan.mu_x1 - plan.tau1) +
                   Rational(plan.r_v2) * (plan.mu_x2 - plan.tau2);
  p.gauge_exact = exact == 0;
  if (p.gauge_exact) p.gauge_scalar = 0.0;
  return p;
}

inline std::vector<double> section_density(const VortexProblem& p,
                                           const std::vector<double>& u1,
                                           const std::vector<double>& u2) {
  std::vector<double> phi(p.grid.size());
  for (int c = 0; c < p.grid.size(); ++c)
    phi[c] = p.background[c] * std::exp(2.0 * (u1[c] - u2[c]));
  return phi;
}

struct ResidualPair {
  std::vector<double> r1, r2;
  double sup = 0, l2 = 0;
  double gauss1 = 0, gauss2 = 0;  // |grid sum of the curvature - 2 pi d_i|
};

inline ResidualPair moment_map_residual(const VortexProblem& p, const std::vector<double>& u1,
                                        const std::vector<double>& u2) {
  const auto& g = p.grid;
  if (static_cast<int>(u1.size()) != g.size() || static_cast<int>(u2.size()) != g.size())
    throw std::invalid_argument("state size does not match the grid");
  ResidualPair out;
  std::vector<double> lap1, lap2;
  g.laplacian(u1, lap1);
  g.laplacian(u2, lap2);
  auto phi = section_density(p, u1, u2);
  out.r1.resize(g.size());
  out.r2.resize(g.size());
  const double c1 = 2.0 * M_PI * p.d1 / g.area, c2 = 2.0 * M_PI * p.d2 / g.area;
  double sq = 0;
  for (int c = 0; c < g.size(); ++c) {
    out.r1[c] = c1 - 0.5 * lap1[c] + (p.a1 / p.sigma) * phi[c] - 2.0 * M_PI * p.tau1;
    out.r2[c] = c2 - 0.5 * lap2[c] - (p.a2 / p.sigma) * phi[c] - 2.0 * M_PI * p.tau2;
    out.sup = std::max({out.sup, std::abs(out.r1[c]), std::abs(out.r2[c])});
    sq += out.r1[c] * out.r1[c] + out.r2[c] * out.r2[c];
  }
  out.l2 = std::sqrt(sq * g.hx * g.hy);
  out.gauss1 = std::abs(g.integrate(lap1)) * 0.5;
  out.gauss2 = std::abs(g.integrate(lap2)) * 0.5;
  return out;
}

// Weighted functional E = (1/2) int (r1^2/a1 + r2^2/a2); critical points with
// invertible linearization are exactly the zeros of the residual.
inline double energy(const VortexProblem& p, const std::vector<double>& u1,
                     const std::vector<double>& u2) {
  auto r = moment_map_residual(p, u1, u2);
  double acc = 0;
  for (int c = 0; c < p.grid.size(); ++c)
    acc += r.r1[c] * r.r1[c] / p.a1 + r.r2[c] * r.r2[c] / p.a2;
  return 0.5 * acc * p.grid.hx * p.grid.hy;
}

struct EnergyGradient {
  std::vector<double> g1, g2;  // L^2-gradient densities
};

inline EnergyGradient energy_gradient(const VortexProblem& p, const std::vector<double>& u1,
                                      const std::vector<double>& u2) {
  auto r = moment_map_residual(p, u1, u2);
  auto phi = section_density(p, u1, u2);
  std::vector<double> lap1, lap2;
  p.grid.laplacian(r.r1, lap1);
  p.grid.laplacian(r.r2, lap2);
  EnergyGradient out;
  out.g1.resize(p.grid.size());
  out.g2.resize(p.grid.size());
  for (int c = 0; c < p.grid.size(); ++c) {
    double couple = (2.0 * phi[c] / p.sigma) * (r.r1[c] - r.r2[c]);
    out.g1[c] = -0.5 * lap1[c] / p.a1 + couple;
    out.g2[c] = -0.5 * lap2[c] / p.a2 - couple;
  }
  return out;
}

struct FeasibilityCheck {
  bool feasible = true;
  bool boundary = false;
  std::string reason;
  double phi_integral_required = 0;  // total section mass forced by integration
};

inline FeasibilityCheck check_feasibility(const VortexProblem& p, bool freeze_second = false) {
  FeasibilityCheck out;
  const double area = p.grid.area;
  const double scale = 2.0 * M_PI * area * (1.0 + std::abs(p.tau1) + std::abs(p.tau2));
  if (p.k_eff == 0) {
    bool ok1 = std::abs(p.tau1 - p.mu1) * 2.0 * M_PI * area <= 1e-12 * scale;
    bool ok2 = std::abs(p.tau2 - p.mu2) * 2.0 * M_PI * area <= 1e-12 * scale;
    if (!ok1 || (!freeze_second && !ok2)) {
      out.feasible = false;
      out.reason = "split problem requires tau equal to the bundle slope";
    }
    out.phi_integral_required = 0;
    return out;
  }
  if (!freeze_second && !p.gauge_exact && std::abs(p.gauge_scalar) * area > 1e-11 * scale) {
    out.feasible = false;
    out.reason = "integrated identities demand conflicting section masses";
    return out;
  }
  const double need1 = 2.0 * M_PI * area * (p.tau1 - p.mu1) * p.sigma / p.a1;
  const double need2 = 2.0 * M_PI * area * (p.mu2 - p.tau2) * p.sigma / p.a2;
  out.phi_integral_required = need1;
  const double tiny = 1e-12 * scale * p.sigma / std::min(p.a1, p.a2);
  auto classify = [&](double need, const char* which) {
    if (need < -tiny) {
      out.feasible = false;
      out.reason = std::string(which) + " needs negative total section mass";
      return true;
    }
    if (need <= tiny) {
      out.feasible = false;
      out.boundary = true;
      out.reason = std::string(which) + " needs vanishing section mass (window boundary)";
      return true;
    }
    return false;
  };
  if (classify(need1, "first equation")) return out;
  if (!freeze_second && classify(need2, "second equation")) return out;
  return out;
}

struct SolveOptions {
  double tol = 1e-8;
  int max_iter = 20000;
  double newton_threshold = 1e-3;
  bool freeze_second = false;  // single-equation limit: u2 pinned at zero
  bool collect_history = false;
};

struct SolverState {
  enum class Status { converged, exact, infeasible, not_converged };
  std::vector<double> u1, u2;
  double sup_residual = 0, l2_residual = 0;
  double gauss1 = 0, gauss2 = 0;
  double energy_value = 0;
  double phi_integral = 0;
  int iterations = 0;
  Status status = Status::not_converged;
  std::string certificate;
  std::vector<std::array<double, 3>> history;  // iteration, energy, sup residual
};

namespace vdetail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline void remove_joint_mean(std::vector<double>& u1, std::vector<double>& u2) {
  double m = 0;
  for (double v : u1) m += v;
  for (double v : u2) m += v;
  m /= (u1.size() + u2.size());
  for (double& v : u1) v -= m;
  for (double& v : u2) v -= m;
}

// Preconditioned CG on a caller-supplied operator, optionally projecting off
// the joint-constant gauge mode after every operation.
inline bool pcg(const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                const std::function<void(const std::vector<double>&, std::vector<double>&)>& prec,
                const std::vector<double>& rhs, std::vector<double>& x, double tol, int max_iter,
                const std::function<void(std::vector<double>&)>& project) {
  const size_t n = rhs.size();
  x.assign(n, 0.0);
  std::vector<double> r = rhs, z(n), q(n);
  project(r);
  prec(r, z);
  project(z);
  std::vector<double> d = z;
  double rz = dot(r, z);
  double r0 = std::sqrt(dot(r, r));
  if (r0 == 0) return true;
  for (int it = 0; it < max_iter; ++it) {
    apply(d, q);
    project(q);
    double dq = dot(d, q);
    if (dq <= 0) return false;
    double alpha = rz / dq;
    for (size_t i = 0; i < n; ++i) {
      x[i] += alpha * d[i];
      r[i] -= alpha * q[i];
    }
    if (std::sqrt(dot(r, r)) <= tol * r0) return true;
    prec(r, z);
    project(z);
    double rz_next = dot(r, z);
    double beta = rz_next / rz;
    rz = rz_next;
    for (size_t i = 0; i < n; ++i) d[i] = z[i] + beta * d[i];
  }
  return false;
}

}  // namespace vdetail

inline SolverState solve(const VortexProblem& p, const SolveOptions& opts = {}) {
  if (!(opts.tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const auto& g = p.grid;
  const int n = g.size();
  const bool frozen = opts.freeze_second;
  SolverState st;
  st.u1.assign(n, 0.0);
  st.u2.assign(n, 0.0);

  // With the second field pinned, the second equation is dropped from the
  // problem: the objective, the tracked residual, and the reported
  // diagnostics all restrict to the first block.  Minimising the coupled
  // functional instead would stall at a critical point that keeps the
  // irreducible second-block content.
  auto sup_of = [&](const ResidualPair& r) {
    if (!frozen) return r.sup;
    double s = 0;
    for (double v : r.r1) s = std::max(s, std::abs(v));
    return s;
  };
  auto objective = [&](const std::vector<double>& u1, const std::vector<double>& u2) {
    if (!frozen) return energy(p, u1, u2);
    auto r = moment_map_residual(p, u1, u2);
    double sq = 0;
    for (int c = 0; c < n; ++c) sq += r.r1[c] * r.r1[c];
    return 0.5 * sq * g.hx * g.hy / p.a1;
  };

  auto finalize = [&](SolverState::Status status, const std::string& note) {
    auto r = moment_map_residual(p, st.u1, st.u2);
    st.sup_residual = sup_of(r);
    if (frozen) {
      double sq = 0;
      for (int c = 0; c < n; ++c) sq += r.r1[c] * r.r1[c];
      st.l2_residual = std::sqrt(sq * g.hx * g.hy);
      st.energy_value = 0.5 * sq * g.hx * g.hy / p.a1;
    } else {
      st.l2_residual = r.l2;
      st.energy_value = energy(p, st.u1, st.u2);
    }
    st.gauss1 = r.gauss1;
    st.gauss2 = r.gauss2;
    st.phi_integral = g.integrate(section_density(p, st.u1, st.u2));
    st.status = status;
    st.certificate = note;
    return st;
  };

  auto feas = check_feasibility(p, opts.freeze_second);
  if (!feas.feasible) return finalize(SolverState::Status::infeasible, feas.reason);
  if (p.k_eff == 0) return finalize(SolverState::Status::exact, "split case: slopes match");

  auto gauge = [&](std::vector<double>& u1, std::vector<double>& u2) {
    if (!opts.freeze_second) vdetail::remove_joint_mean(u1, u2);
  };

  // Phase 1: Barzilai-Borwein flow on the residual functional with a
  // monotone safeguard.  Steps are taken in a Sobolev metric (a shifted
  // inverse Laplacian per block) so the flow conditioning stays first
  // order in the mesh; the descent property is unaffected since the
  // metric is positive definite.
  PoissonSolver poisson(g);
  auto flow_direction = [&](const std::vector<double>& u1, const std::vector<double>& u2,
                            std::vector<double>& q1, std::vector<double>& q2) {
    auto phi = section_density(p, u1, u2);
    double shift = 0;
    for (int c = 0; c < n; ++c) shift += 2.0 * phi[c] / p.sigma;
    shift = std::max(shift / n, 1e-8);
    if (frozen) {
      auto r = moment_map_residual(p, u1, u2);
      std::vector<double> lap, g1(n);
      g.laplacian(r.r1, lap);
      for (int c = 0; c < n; ++c)
        g1[c] = -0.5 * lap[c] / p.a1 + (2.0 * phi[c] / p.sigma) * r.r1[c];
      q1 = poisson.shifted_inverse(g1, shift, 0.5 / p.a1);
      q2.assign(n, 0.0);
      return;
    }
    auto eg = energy_gradient(p, u1, u2);
    q1 = poisson.shifted_inverse(eg.g1, shift, 0.5 / p.a1);
    q2 = poisson.shifted_inverse(eg.g2, shift, 0.5 / p.a2);
  };

  double e_now = objective(st.u1, st.u2);
  double sup_now = sup_of(moment_map_residual(p, st.u1, st.u2));
  const double alpha0 = 1.0;
  double alpha = alpha0;
  std::vector<double> q1, q2;
  flow_direction(st.u1, st.u2, q1, q2);
  int iter = 0;
  while (iter < opts.max_iter && sup_now >= opts.newton_threshold &&
         sup_now >= opts.tol) {
    std::vector<double> t1(n), t2(n);
    double e_try = 0;
    int halved = 0;
    for (;; ++halved) {
      if (halved > 60) return finalize(SolverState::Status::not_converged,
                                       "line search stalled in the flow phase");
      for (int c = 0; c < n; ++c) {
        t1[c] = st.u1[c] - alpha * q1[c];
        t2[c] = st.u2[c] - alpha * q2[c];
      }
      gauge(t1, t2);
      e_try = objective(t1, t2);
      if (e_try <= e_now) break;
      alpha *= 0.5;
    }
    std::vector<double> q1_next, q2_next;
    flow_direction(t1, t2, q1_next, q2_next);
    double ss = 0, sy = 0;
    for (int c = 0; c < n; ++c) {
      double s1 = t1[c] - st.u1[c], s2 = t2[c] - st.u2[c];
      ss += s1 * s1 + s2 * s2;
      sy += s1 * (q1_next[c] - q1[c]) + s2 * (q2_next[c] - q2[c]);
    }
    alpha = (sy > 0 && ss > 0) ? std::min(ss / sy, 1e6) : alpha0;
    st.u1.swap(t1);
    st.u2.swap(t2);
    q1 = std::move(q1_next);
    q2 = std::move(q2_next);
    e_now = e_try;
    sup_now = sup_of(moment_map_residual(p, st.u1, st.u2));
    ++iter;
    if (opts.collect_history)
      st.history.push_back({static_cast<double>(iter), e_now, sup_now});
  }
  st.iterations = iter;
  if (sup_now >= opts.newton_threshold && sup_now >= opts.tol)
    return finalize(SolverState::Status::not_converged, "flow budget exhausted");

  // Phase 2: damped Newton on the residual; the weighted linearization is
  // symmetric positive semidefinite with only the joint-constant kernel.
  for (int newton = 0; newton < 60; ++newton) {
    auto r = moment_map_residual(p, st.u1, st.u2);
    sup_now = sup_of(r);
    if (opts.collect_history)
      st.history.push_back({static_cast<double>(st.iterations), objective(st.u1, st.u2), sup_now});
    if (sup_now < opts.tol) return finalize(SolverState::Status::converged, "");
    auto phi = section_density(p, st.u1, st.u2);
    double shift = 0;
    for (int c = 0; c < n; ++c) shift += 2.0 * phi[c] / p.sigma;
    shift = std::max(shift / n, 1e-12);

    const size_t dim = frozen ? static_cast<size_t>(n) : 2 * static_cast<size_t>(n);
    std::vector<double> rhs(dim);
    for (int c = 0; c < n; ++c) {
      rhs[c] = -r.r1[c] / p.a1;
      if (!frozen) rhs[n + c] = -r.r2[c] / p.a2;
    }
    auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
      out.resize(dim);
      std::vector<double> v1(v.begin(), v.begin() + n), lap1;
      g.laplacian(v1, lap1);
      if (frozen) {
        for (int c = 0; c < n; ++c)
          out[c] = -0.5 * lap1[c] / p.a1 + (2.0 * phi[c] / p.sigma) * v[c];
        return;
      }
      std::vector<double> v2(v.begin() + n, v.end()), lap2;
      g.laplacian(v2, lap2);
      for (int c = 0; c < n; ++c) {
        double couple = (2.0 * phi[c] / p.sigma) * (v1[c] - v2[c]);
        out[c] = -0.5 * lap1[c] / p.a1 + couple;
        out[n + c] = -0.5 * lap2[c] / p.a2 - couple;
      }
    };
    auto prec = [&](const std::vector<double>& v, std::vector<double>& out) {
      out.resize(dim);
      std::vector<double> v1(v.begin(), v.begin() + n);
      auto s1 = poisson.shifted_inverse(v1, shift, 0.5 / p.a1);
      std::copy(s1.begin(), s1.end(), out.begin());
      if (frozen) return;
      std::vector<double> v2(v.begin() + n, v.end());
      auto s2 = poisson.shifted_inverse(v2, shift, 0.5 / p.a2);
      std::copy(s2.begin(), s2.end(), out.begin() + n);
    };
    auto project = [&](std::vector<double>& v) {
      if (frozen) return;
      double m = 0;
      for (double x : v) m += x;
      m /= v.size();
      for (double& x : v) x -= m;
    };
    std::vector<double> delta;
    if (!vdetail::pcg(apply, prec, rhs, delta, 1e-10, 20 * n, project))
      return finalize(SolverState::Status::not_converged, "inner linear solve failed");

    double t = 1.0;
    std::vector<double> n1(n), n2(n);
    for (;;) {
      for (int c = 0; c < n; ++c) {
        n1[c] = st.u1[c] + t * delta[c];
        n2[c] = frozen ? 0.0 : st.u2[c] + t * delta[n + c];
      }
      gauge(n1, n2);
      if (sup_of(moment_map_residual(p, n1, n2)) <= (1.0 - 1e-4 * t) * sup_now) break;
      t *= 0.5;
      if (t < 1e-8)
        return finalize(SolverState::Status::not_converged, "newton damping stalled");
    }
    st.u1.swap(n1);
    st.u2.swap(n2);
    ++st.iterations;
  }
  return finalize(SolverState::Status::not_converged, "newton budget exhausted");
}

// Scales the section data by eps^2 and moves tau along the matching line
// tau_i(eps) = mu_i + eps^2 (tau_i - mu_i), which preserves the integrated
// consistency identity for every eps.
inline VortexProblem scaled_problem(const VortexProblem& p, double eps) {
  VortexProblem q = p;
  const double e2 = eps * eps;
  q.tau1 = p.mu1 + e2 * (p.tau1 - p.mu1);
  q.tau2 = p.mu2 + e2 * (p.tau2 - p.mu2);
  for (double& b : q.background) b *= e2;
  q.gauge_scalar = p.gauge_scalar * e2;
  q.gauge_exact = p.gauge_exact;
  if (eps == 0.0) {
    q.k_eff = 0;
    q.potentials.clear();
    q.tau1 = p.mu1;
    q.tau2 = p.mu2;
  }
  return q;
}

struct DegenerationReport {
  std::vector<double> epsilons;
  // Sup distance to the set of split solutions.  On the torus that set is
  // the constant pairs, so the distance is half the oscillation of each
  // field (its sup distance to the best constant), not the raw sup norm:
  // the family converges to *a* split solution, generally not to the zero
  // one, because the section mass pins the mean of u1 - u2 away from zero.
  std::vector<double> distances;
  std::vector<double> residuals;
  bool exact_at_zero = false;
  bool monotone = false;
  double rate = 0;  // observed order in eps
};

inline DegenerationReport degeneration_check(const VortexProblem& p,
                                             const std::vector<double>& epsilons,
                                             const SolveOptions& opts = {}) {
  DegenerationReport rep;
  rep.epsilons = epsilons;
  for (double eps : epsilons) {
    auto q = scaled_problem(p, eps);
    auto st = solve(q, opts);
    if (st.status != SolverState::Status::converged &&
        st.status != SolverState::Status::exact)
      throw std::runtime_error("degeneration member failed to solve");
    auto half_osc = [](const std::vector<double>& u) {
      auto [lo, hi] = std::minmax_element(u.begin(), u.end());
      return 0.5 * (*hi - *lo);
    };
    double dist = std::max(half_osc(st.u1), half_osc(st.u2));
    rep.distances.push_back(dist);
    rep.residuals.push_back(st.sup_residual);
    if (eps == 0.0) rep.exact_at_zero = (st.status == SolverState::Status::exact && dist == 0.0);
  }
  rep.monotone = true;
  double rate_acc = 0;
  int rate_n = 0;
  for (size_t i = 0; i + 1 < rep.distances.size(); ++i) {
    if (rep.epsilons[i + 1] <= 0 || rep.epsilons[i] <= rep.epsilons[i + 1]) continue;
    if (rep.distances[i + 1] >= rep.distances[i]) rep.monotone = false;
    if (rep.distances[i] > 0 && rep.distances[i + 1] > 0) {
      rate_acc += std::log(rep.distances[i] / rep.distances[i + 1]) /
                  std::log(rep.epsilons[i] / rep.epsilons[i + 1]);
      ++rate_n;
    }
  }
  if (rate_n > 0) rep.rate = rate_acc / rate_n;
  return rep;
}

inline void write_history_csv(const SolverState& st, std::ostream& os) {
  os << "iteration,energy,sup_residual\n";
  for (const auto& row : st.history)
    os << static_cast<long>(row[0]) << ',' << row[1] << ',' << row[2] << '\n';
}

inline void write_field_csv(const TorusGrid& g, const std::vector<double>& f,
                            std::ostream& os) {
  if (static_cast<int>(f.size()) != g.size())
    throw std::invalid_argument("field size does not match the grid");
  os << "x,y,value\n";
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      os << g.x_of(i) << ',' << g.y_of(j) << ',' << f[i * g.ny + j] << '\n';
}

inline void write_fields_csv(const TorusGrid& g, const std::vector<double>& u1,
                             const std::vector<double>& u2, std::ostream& os) {
  if (static_cast<int>(u1.size()) != g.size() || static_cast<int>(u2.size()) != g.size())
    throw std::invalid_argument("field size does not match the grid");
  os << "x,y,u1,u2\n";
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      os << g.x_of(i) << ',' << g.y_of(j) << ',' << u1[i * g.ny + j] << ','
         << u2[i * g.ny + j] << '\n';
}

}  // namespace flagvortex
