// Acceptance gate: nine end-to-end checks, one pass/fail line each, with the
// tolerances and runtime budgets pinned below.  Exits nonzero on any failure.

#include <flagvortex/pipeline.hpp>

#include "oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace flagvortex;

namespace {

struct Checker {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

bool run_criterion(int number, const char* label, double budget_s,
                   const std::function<void(Checker&)>& body) {
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && dt > budget_s)
    c.require(false, "runtime " + fmt(dt) + "s exceeds the " + fmt(budget_s) + "s budget");
  bool ok = c.failures.empty();
  std::printf("[%s] %d  %-52s %8.3fs\n", ok ? "PASS" : "FAIL", number, label, dt);
  for (const auto& f : c.failures) std::printf("          - %s\n", f.c_str());
  return ok;
}

WeightVector wv(std::vector<int> v) {
  WeightVector w;
  for (int c : v) w.coords.emplace_back(c);
  return w;
}

ParabolicModule mod(std::vector<int> v) {
  ParabolicModule m;
  m.weights.push_back(wv(std::move(v)));
  return m;
}

WeightVector random_levi_weight(const FlagFiber& f, std::mt19937& rng) {
  WeightVector w;
  for (int i = 0; i < f.rs.type.rank; ++i) {
    int lo = f.diagram.crossed[i] ? -5 : 0;
    int hi = f.diagram.crossed[i] ? 4 : 2;
    w.coords.emplace_back(std::uniform_int_distribution<int>(lo, hi)(rng));
  }
  return w;
}

// The single-vortex plan used by criteria 6-8: a degree-one against a
// degree-zero line bundle on the unit torus, fiber modules O(-2) and O.
ReductionPlan line_pair_plan(const Rational& sigma) {
  auto fiber = make_fiber("A1[x]");
  PlanInput in;
  in.rho1.weights = {parse_weight("(-2)")};
  in.rho2.weights = {parse_weight("(0)")};
  in.w1 = {"W1", 1, Rational(1), 0};
  in.w2 = {"W2", 1, Rational(0), 1};
  in.area = 1;
  in.sigma = sigma;
  return build_plan(fiber, in);
}

std::vector<double> random_smooth(const TorusGrid& g, std::mt19937& rng, double amp = 0.2) {
  std::uniform_real_distribution<double> coef(-amp, amp);
  double a1 = coef(rng), a2 = coef(rng), a3 = coef(rng), a4 = coef(rng);
  std::vector<double> out(g.size());
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      double tx = 2.0 * M_PI * g.x_of(i) / g.lx, ty = 2.0 * M_PI * g.y_of(j) / g.ly;
      out[i * g.ny + j] = a1 * std::sin(tx) + a2 * std::cos(ty) + a3 * std::sin(tx + 2 * ty) +
                          a4 * std::cos(2 * tx - ty);
    }
  return out;
}

void criterion_1(Checker& c) {
  auto cp4 = make_fiber("A4[x,o,o,o]");
  auto flag = make_fiber("A4[x,o,x,x]");

  auto h = bundle_cohomology(cp4, wv({-2, 1, 0, 0}));
  c.require(!h.vanishes && h.degree == 1 && h.weight == wv({0, 0, 0, 0}) && h.dim == 1,
            "cotangent weight on the projective fourfold must give H^1 = trivial, dim 1");

  h = bundle_cohomology(cp4, wv({-7, 1, 0, 0}));
  c.require(!h.vanishes && h.degree == 4 && h.weight == wv({1, 0, 0, 1}) && h.dim == 24,
            "canonically twisted weight must give H^4 with highest weight (1,0,0,1), dim 24");

  h = bundle_cohomology(flag, wv({-2, 1, 0, 0}));
  c.require(!h.vanishes && h.degree == 1 && h.weight == wv({0, 0, 0, 0}) && h.dim == 1,
            "cotangent weight on the partial flag must give H^1 = trivial, dim 1");

  h = bundle_cohomology(flag, wv({1, 1, -1, 0}));
  c.require(h.vanishes, "singular shifted weight on the partial flag must vanish in all degrees");
}

void criterion_2(Checker& c) {
  const std::vector<std::string> pool = {"A5[x,o,o,x,o]", "B3[o,o,x]", "C4[x,o,o,o]",
                                         "D5[o,x,o,o,o]", "D4[x,o,o,o]"};
  std::mt19937 rng(211);
  int nontrivial = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto f = make_fiber(pool[trial % pool.size()]);
    auto lam = random_levi_weight(f, rng);
    int dim_f = fiber_dimension(f);

    auto h = bundle_cohomology(f, lam);
    auto twisted = levi_dual_weight(f, lam);
    auto kf = canonical_fiber_weight(f);
    for (int i = 0; i < f.rs.type.rank; ++i) twisted.coords[i] += kf.coords[i];
    auto hs = bundle_cohomology(f, twisted);

    if (h.vanishes != hs.vanishes) {
      c.require(false, "vanishing mismatch on " + pool[trial % pool.size()] + " at weight " +
                           print_weight(lam));
      return;
    }
    if (h.vanishes) continue;
    ++nontrivial;
    if (hs.degree != dim_f - h.degree || hs.dim != h.dim) {
      c.require(false, "degree/dimension mismatch on " + pool[trial % pool.size()] +
                           " at weight " + print_weight(lam));
      return;
    }
  }
  c.require(nontrivial >= 30,
            "only " + std::to_string(nontrivial) + " of 200 draws were nonvanishing");
}

void criterion_3(Checker& c) {
  const std::vector<std::string> pool = {"A1[x]", "A2[x,o]", "A3[o,x,o]", "B2[x,o]", "G2[o,x]"};
  std::mt19937 rng(223);
  int negative_slope = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto f = make_fiber(pool[trial % pool.size()]);
    WeightVector a, b;
    for (int i = 0; i < f.rs.type.rank; ++i) {
      int lo = f.diagram.crossed[i] ? -4 : 0;
      a.coords.emplace_back(std::uniform_int_distribution<int>(lo, 3)(rng));
      b.coords.emplace_back(std::uniform_int_distribution<int>(lo, 3)(rng));
    }
    ParabolicModule r1, r2;
    r1.weights.push_back(a);
    r2.weights.push_back(b);
    auto cal = check_calibration(f, r1, r2, unit_kahler_class(f.diagram));
    if (cal.mu_rho < 0) ++negative_slope;
    if (!cal.consistent) {
      c.require(false, "negative relative slope with surviving H^0 on " +
                           pool[trial % pool.size()] + " at " + print_weight(a) + " vs " +
                           print_weight(b));
      return;
    }
  }
  c.require(negative_slope >= 40, "only " + std::to_string(negative_slope) +
                                      " of 200 draws exercised the negative-slope branch");
}

void criterion_4(Checker& c) {
  auto p1 = make_fiber("A1[x]");
  for (int k = 2; k <= 8; ++k) {
    auto h = bundle_cohomology(p1, wv({-k}));
    int oracle = oracles::cech_h1_dim(-k);
    bool dims_ok = !h.vanishes && h.degree == 1 && h.dim == oracle && oracle == k - 1;
    if (!dims_ok) {
      c.require(false, "H^1(O(-" + std::to_string(k) + ")) disagrees with the Cech oracle");
      continue;
    }
    auto chart = make_chart(k, 128);
    auto basis = build_harmonic_basis(chart);
    c.require(basis.count() == oracle,
              "harmonic basis count at twist " + std::to_string(k) + " is " +
                  std::to_string(basis.count()) + ", oracle says " + std::to_string(oracle));
    double harm = max_harmonicity_residual(chart, basis);
    c.require(harm < 1e-6, "harmonicity residual " + fmt(harm) + " at twist " +
                               std::to_string(k) + " exceeds 1e-6");
  }
}

void criterion_5(Checker& c) {
  for (int k : {2, 3})
    for (double sigma : {0.5, 1.0, 4.0}) {
      auto v = verify_fiber(k, sigma, 96, 1000 + 17 * k + static_cast<int>(4 * sigma));
      std::string tag = "k=" + std::to_string(k) + ", sigma=" + fmt(sigma);
      c.require(v.basis_count == k - 1, "basis dimension off at " + tag);
      c.require(v.pointwise_residual < 1e-6,
                "contraction identity residual " + fmt(v.pointwise_residual) + " at " + tag);
      c.require(v.phi_residual < 1e-6,
                "coupling expansion residual " + fmt(v.phi_residual) + " at " + tag);
      c.require(v.perturbation_integral < 1e-8,
                "perturbation fiber integral " + fmt(v.perturbation_integral) + " at " + tag);
    }
}

void criterion_6(Checker& c) {
  auto plan = line_pair_plan(1);
  c.require(plan.window.contains(plan.sigma), "sigma = 1 must lie inside the computed window");

  auto g = make_grid(64);
  auto p = assemble_problem(plan, g, 1, 0, {SectionSpec{{{32, 32, 1}}, 1.0, {}}});
  auto st = solve(p);
  c.require(st.status == SolverState::Status::converged, "64x64 solve did not converge");
  c.require(st.sup_residual < 1e-8, "sup residual " + fmt(st.sup_residual) + " exceeds 1e-8");
  c.require(st.gauss1 < 1e-6 && st.gauss2 < 1e-6,
            "integrated curvature gaps " + fmt(st.gauss1) + ", " + fmt(st.gauss2) +
                " exceed 1e-6");

  // Gradient of the residual energy against central differences, once per
  // cell on a coarse grid and along random directions on the solve grid.
  std::mt19937 rng(631);
  const double h = 1e-5;
  {
    auto gc = make_grid(12);
    auto pc = assemble_problem(plan, gc, 1, 0, {SectionSpec{{{6, 6, 1}}, 1.0, {}}});
    auto u1 = random_smooth(gc, rng), u2 = random_smooth(gc, rng);
    auto grad = energy_gradient(pc, u1, u2);
    const double cell = gc.hx * gc.hy;
    double worst = 0;
    for (int cidx = 0; cidx < gc.size(); ++cidx) {
      auto up = u1, dn = u1;
      up[cidx] += h;
      dn[cidx] -= h;
      double fd = (energy(pc, up, u2) - energy(pc, dn, u2)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - grad.g1[cidx] * cell) / (1.0 + std::abs(fd)));
      up = u2;
      dn = u2;
      up[cidx] += h;
      dn[cidx] -= h;
      fd = (energy(pc, u1, up) - energy(pc, u1, dn)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - grad.g2[cidx] * cell) / (1.0 + std::abs(fd)));
    }
    c.require(worst < 1e-6, "per-cell gradient error " + fmt(worst) + " exceeds 1e-6 relative");
  }
  {
    auto u1 = random_smooth(g, rng), u2 = random_smooth(g, rng);
    auto grad = energy_gradient(p, u1, u2);
    const double cell = g.hx * g.hy;
    double worst = 0;
    for (int dir = 0; dir < 4; ++dir) {
      auto v1 = random_smooth(g, rng), v2 = random_smooth(g, rng);
      double pairing = 0;
      for (int cidx = 0; cidx < g.size(); ++cidx)
        pairing += (grad.g1[cidx] * v1[cidx] + grad.g2[cidx] * v2[cidx]) * cell;
      auto a1 = u1, a2 = u2, b1 = u1, b2 = u2;
      for (int cidx = 0; cidx < g.size(); ++cidx) {
        a1[cidx] += h * v1[cidx];
        a2[cidx] += h * v2[cidx];
        b1[cidx] -= h * v1[cidx];
        b2[cidx] -= h * v2[cidx];
      }
      double fd = (energy(p, a1, a2) - energy(p, b1, b2)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - pairing) / (1.0 + std::abs(fd)));
    }
    c.require(worst < 1e-6,
              "directional gradient error " + fmt(worst) + " exceeds 1e-6 relative");
  }
}

void criterion_7(Checker& c) {
  auto g = make_grid(32);
  auto p = assemble_problem(line_pair_plan(1), g, 1, 0, {SectionSpec{{{16, 16, 1}}, 1.0, {}}});
  auto rep = degeneration_check(p, {1.0, 0.5, 0.25, 0.125, 0.0});
  c.require(rep.monotone, "split distance is not monotone in the coupling scale");
  c.require(rep.exact_at_zero, "zero coupling must solve exactly as the split problem");
  for (size_t i = 0; i < rep.residuals.size(); ++i)
    c.require(rep.residuals[i] < 1e-8, "family member " + std::to_string(i) +
                                           " residual " + fmt(rep.residuals[i]) +
                                           " exceeds 1e-8");
  c.require(rep.distances.front() > 1e-3,
            "full-coupling member is already split; the family is degenerate");
}

void criterion_8(Checker& c) {
  auto g = make_grid(32);
  SectionSpec vortex{{{16, 16, 1}}, 1.0, {}};

  auto outside = assemble_problem(line_pair_plan(4), g, 1, 0, {vortex});
  auto st = solve(outside);
  c.require(st.status == SolverState::Status::infeasible,
            "sigma outside the window must be rejected");
  c.require(st.iterations == 0, "the certificate must be issued without iterating");
  c.require(!st.certificate.empty(), "infeasible run carries no certificate text");

  auto boundary = check_feasibility(assemble_problem(line_pair_plan(2), g, 1, 0, {vortex}));
  c.require(!boundary.feasible && boundary.boundary,
            "the window endpoint must classify as boundary, not interior");

  // Sweep endpoints against the closed-form window, to one grid step.
  auto cfg = load_pipeline_config(std::string(FLAGVORTEX_CONFIG_DIR) + "/torus_sigma_sweep.cfg");
  auto plan = build_plan(make_fiber(cfg.diagram), pipedetail::plan_input(cfg));
  c.require(plan.window.kind == SigmaWindow::Kind::bounded, "sweep plan window must be bounded");
  auto rep = run_pipeline(cfg, stages_for_verb("sweep"));
  auto doc = nlohmann::json::parse(rep.machine_text());
  c.require(doc["sweep"]["window_agrees"] == true,
            "per-point feasibility disagrees with the closed-form window");
  Rational step = (cfg.sweep->hi - cfg.sweep->lo) / (cfg.sweep->points - 1);
  Rational first = parse_rational(doc["sweep"]["first_feasible"].get<std::string>());
  Rational last = parse_rational(doc["sweep"]["last_feasible"].get<std::string>());
  c.require(first > plan.window.lo && first - plan.window.lo <= step,
            "first feasible point " + rational_str(first) + " misses the window edge " +
                rational_str(plan.window.lo) + " by more than one step");
  c.require(last < plan.window.hi && plan.window.hi - last <= step,
            "last feasible point " + rational_str(last) + " misses the window edge " +
                rational_str(plan.window.hi) + " by more than one step");
}

void criterion_9(Checker& c) {
  auto fiber = make_fiber("A4[x,o,o,o]");
  PlanInput in;
  in.rho1.weights = {parse_weight("(-2,1,0,0)")};
  in.rho2.weights = {parse_weight("(0,0,0,0)")};
  in.w1 = {"W1", 1, Rational(1), 1};
  in.w2 = {"W2", 1, Rational(0), 1};
  in.area = 1;
  in.sigma = 1;
  auto plan = build_plan(fiber, in);

  const Rational lo(1, 10), hi(10);
  for (int i = 0; i < 100; ++i) {
    Rational sigma = lo + (hi - lo) * Rational(i, 99);
    auto vp = vortex_parameters(plan.mu_x1, plan.mu_x2, plan.rk_e1, plan.rk_e2, plan.mu_rho1,
                                plan.mu_rho2, sigma);
    Rational lhs = Rational(plan.rk_e1 + plan.rk_e2) * vp.lambda_slope;
    Rational rhs = Rational(plan.rk_e1) * (vp.tau1 + plan.mu_rho1 / sigma) +
                   Rational(plan.rk_e2) * (vp.tau2 + plan.mu_rho2 / sigma);
    if (lhs != rhs) {
      c.require(false, "rank-weighted slope identity fails at sigma = " + rational_str(sigma));
      return;
    }
  }
}

}  // namespace

int main() {
  int passed = 0;
  passed += run_criterion(1, "exact cohomology regression vectors", 1.0, criterion_1);
  passed += run_criterion(2, "duality property over random diagrams", 30.0, criterion_2);
  passed += run_criterion(3, "slope-sign calibration consistency", 30.0, criterion_3);
  passed += run_criterion(4, "projective-line basis against the Cech oracle", 0.0, criterion_4);
  passed += run_criterion(5, "fiber contraction and expansion identities", 60.0, criterion_5);
  passed += run_criterion(6, "single-vortex solve and gradient check", 60.0, criterion_6);
  passed += run_criterion(7, "split degeneration of the coupled system", 0.0, criterion_7);
  passed += run_criterion(8, "infeasibility certificates and sweep endpoints", 0.0, criterion_8);
  passed += run_criterion(9, "exact rank-weighted slope identity on a sweep", 0.0, criterion_9);
  std::printf("%d/9 criteria passed\n", passed);
  return passed == 9 ? 0 : 1;
}
