#pragma once

// Stage orchestration: cohomology -> calibration -> plan -> torus solve,
// plus the twist-verification and sigma-sweep stages.  Each stage appends
// one section to the report; findings decide the process exit status.

#include <flagvortex/config.hpp>
#include <flagvortex/fiber.hpp>
#include <flagvortex/report.hpp>
#include <flagvortex/version.hpp>
#include <flagvortex/vortex.hpp>

#include <cstdlib>
#include <fstream>
#include <thread>

namespace flagvortex {

struct StageSet {
  bool cohomology = false;
  bool calibration = false;
  bool plan = false;
  bool solve = false;
  bool fiber = false;
  bool sweep = false;
};

inline StageSet stages_for_verb(const std::string& verb) {
  StageSet s;
  if (verb == "bbw") {
    s.cohomology = true;
  } else if (verb == "calibrate") {
    s.cohomology = s.calibration = true;
  } else if (verb == "plan") {
    s.cohomology = s.calibration = s.plan = true;
  } else if (verb == "solve") {
    s.cohomology = s.calibration = s.plan = s.solve = true;
  } else if (verb == "verify-fiber") {
    s.fiber = true;
  } else if (verb == "sweep") {
    s.cohomology = s.calibration = s.plan = s.sweep = true;
  } else {
    throw ConfigError("unknown verb '" + verb + "'");
  }
  return s;
}

namespace pipedetail {

inline KahlerClass kahler_from(const PipelineConfig& cfg, const FlagFiber& f) {
  if (cfg.kahler.empty()) return unit_kahler_class(f.diagram);
  KahlerClass k;
  k.coeffs = cfg.kahler;
  require_kahler(f, k);
  return k;
}

inline ParabolicModule rho2_or_trivial(const PipelineConfig& cfg, const FlagFiber& f) {
  if (!cfg.rho2.weights.empty()) return cfg.rho2;
  ParabolicModule m;
  WeightVector zero;
  zero.coords.assign(f.rs.type.rank, Rational(0));
  m.weights.push_back(zero);
  return m;
}

inline PlanInput plan_input(const PipelineConfig& cfg) {
  if (cfg.rho2.weights.empty())
    throw ConfigError("config section [fiber]: rho2 is required beyond the bbw stage");
  PlanInput in;
  in.rho1 = cfg.rho1;
  in.rho2 = cfg.rho2;
  in.kahler.coeffs = cfg.kahler;
  in.w1 = cfg.w1;
  in.w2 = cfg.w2;
  in.area = cfg.lx * cfg.ly;
  in.sigma = cfg.sigma;
  in.phi_nonzero = cfg.phi_nonzero;
  return in;
}

inline const char* status_str(SolverState::Status s) {
  switch (s) {
    case SolverState::Status::converged: return "converged";
    case SolverState::Status::exact: return "exact";
    case SolverState::Status::infeasible: return "infeasible";
    case SolverState::Status::not_converged: return "not_converged";
  }
  return "not_converged";
}

inline std::vector<SectionSpec> grid_sections(const PipelineConfig& cfg, const TorusGrid& g) {
  std::vector<SectionSpec> out;
  for (const auto& sc : cfg.sections) {
    SectionSpec s;
    s.scale = sc.scale;
    for (const auto& pt : sc.divisor) {
      int i = static_cast<int>(std::lround(pt.x / g.hx)) % g.nx;
      int j = static_cast<int>(std::lround(pt.y / g.hy)) % g.ny;
      s.divisor.push_back({i, j, pt.mult});
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline int sweep_threads() {
  const char* env = std::getenv("FLAGVORTEX_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  if (n < 1) return 1;
  return n > 16 ? 16 : n;
}

// sigma grid lo..hi inclusive, exact arithmetic.
inline std::vector<Rational> sigma_grid(const SweepSpec& sw) {
  std::vector<Rational> out;
  if (sw.points == 1 || sw.hi == sw.lo) {
    out.push_back(sw.lo);
    return out;
  }
  for (int i = 0; i < sw.points; ++i)
    out.push_back(sw.lo + (sw.hi - sw.lo) * Rational(i) / Rational(sw.points - 1));
  return out;
}

template <class Fn>
void run_stage(Report& rep, const char* name, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("stage '") + name + "': " + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("stage '") + name + "': " + e.what());
  } catch (const std::exception& e) {
    rep.add_finding(Severity::error, name, e.what());
  }
}

}  // namespace pipedetail

inline Report run_pipeline(const PipelineConfig& cfg, const StageSet& stages) {
  using pipedetail::run_stage;
  Report rep;
  rep.machine["provenance"] = Json{{"tool", "flagvortex"},
                                   {"version", version_string()},
                                   {"config_hash", repdetail::hex64(fnv1a(cfg.raw_text))},
                                   {"seed", cfg.seed}};

  FlagFiber fiber;
  try {
    fiber = make_fiber(cfg.diagram);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("field 'diagram': ") + e.what());
  }

  if (stages.cohomology) run_stage(rep, "cohomology", [&] {
    Json sec;
    sec["fiber"] = print_diagram(fiber.diagram);
    sec["fiber_dimension"] = fiber_dimension(fiber);
    Json mods = Json::array();
    auto module_json = [&](const char* name, const ParabolicModule& m) {
      Json mj;
      mj["name"] = name;
      Json ws = Json::array();
      bool all_vanish = true;
      for (const auto& w : m.weights) {
        Json wj;
        wj["weight"] = print_weight(w);
        auto h = bundle_cohomology(fiber, w);
        wj["vanishes"] = h.vanishes;
        if (!h.vanishes) {
          all_vanish = false;
          wj["degree"] = h.degree;
          wj["highest_weight"] = print_weight(h.weight);
          wj["dim"] = exact_entry(h.dim);
        }
        ws.push_back(std::move(wj));
      }
      mj["weights"] = std::move(ws);
      mj["total_vanishing"] = all_vanish;
      mods.push_back(std::move(mj));
    };
    module_json("rho1", cfg.rho1);
    if (!cfg.rho2.weights.empty()) module_json("rho2", cfg.rho2);
    sec["modules"] = std::move(mods);
    if (!cfg.rho2.weights.empty()) {
      auto hom = hom_module_cohomology(fiber, cfg.rho1, cfg.rho2);
      Json hj;
      hj["total_vanishing"] = hom.total_vanishing();
      Json entries = Json::array();
      for (const auto& e : hom.entries)
        entries.push_back(Json{{"degree", e.degree},
                               {"highest_weight", print_weight(e.weight)},
                               {"dim", exact_entry(e.dim)}});
      hj["entries"] = std::move(entries);
      sec["hom"] = std::move(hj);
    }
    rep.machine["cohomology"] = std::move(sec);
  });

  if (stages.calibration) run_stage(rep, "calibration", [&] {
    if (cfg.rho2.weights.empty())
      throw ConfigError("config section [fiber]: rho2 is required for calibration");
    auto k = pipedetail::kahler_from(cfg, fiber);
    auto cal = check_calibration(fiber, cfg.rho1, cfg.rho2, k);
    auto inv = detect_invariant_case(fiber, cfg.rho1, cfg.rho2, k);
    Json sec;
    sec["mu_rho1"] = exact_entry(cal.mu_rho1);
    sec["mu_rho2"] = exact_entry(cal.mu_rho2);
    sec["mu_rho"] = exact_entry(cal.mu_rho);
    sec["h0_vanishes"] = cal.h0_vanishes;
    sec["calibrated"] = cal.calibrated;
    sec["consistent"] = cal.consistent;
    sec["invariant_case"] = inv.invariant;
    sec["k_invariant"] = exact_entry(inv.k_invariant);
    rep.machine["calibration"] = std::move(sec);
    if (!cal.consistent)
      rep.add_finding(Severity::inconsistency, "calibration",
                      "negative relative slope with surviving global homomorphisms");
    else if (!cal.calibrated)
      rep.add_finding(Severity::info, "calibration", "module pair is not calibrated");
  });

  ReductionPlan plan;
  bool have_plan = false;
  if (stages.plan) run_stage(rep, "plan", [&] {
    plan = build_plan(fiber, pipedetail::plan_input(cfg));
    have_plan = true;
    Json sec;
    sec["k"] = exact_entry(plan.k);
    sec["r_v1"] = exact_entry(plan.r_v1);
    sec["r_v2"] = exact_entry(plan.r_v2);
    sec["rk_e1"] = exact_entry(plan.rk_e1);
    sec["rk_e2"] = exact_entry(plan.rk_e2);
    sec["mu_x1"] = exact_entry(plan.mu_x1);
    sec["mu_x2"] = exact_entry(plan.mu_x2);
    sec["sigma"] = exact_entry(plan.sigma);
    sec["lambda_slope"] = exact_entry(plan.lambda_slope);
    sec["tau1"] = exact_entry(plan.tau1);
    sec["tau2"] = exact_entry(plan.tau2);
    sec["window"] = plan.window.str();
    sec["sigma_in_window"] = plan.window.contains(plan.sigma);
    sec["phi_nonzero"] = cfg.phi_nonzero;
    Rational lhs = Rational(plan.rk_e1 + plan.rk_e2) * plan.lambda_slope;
    Rational rhs = Rational(plan.rk_e1) * (plan.tau1 + plan.mu_rho1 / plan.sigma) +
                   Rational(plan.rk_e2) * (plan.tau2 + plan.mu_rho2 / plan.sigma);
    sec["tau_identity"] = lhs == rhs ? "exact" : "violated";
    if (lhs != rhs)
      rep.add_finding(Severity::inconsistency, "plan",
                      "rank-weighted slope identity violated at sigma = " +
                          rational_str(plan.sigma));
    if (plan.calibrated) {
      TripleRecord t{cfg.w1, cfg.w2, plan.k, Integer(cfg.sections.size())};
      sec["ext1_dim"] = exact_entry(ext1_dimension(t, std::nullopt, true));
    } else {
      sec["ext1_dim"] = nullptr;
    }
    rep.machine["plan"] = std::move(sec);
  });

  if (stages.solve) run_stage(rep, "solver", [&] {
    if (cfg.mode != BaseMode::torus)
      throw ConfigError("solve stage needs [base] mode = torus");
    if (!have_plan) {
      plan = build_plan(fiber, pipedetail::plan_input(cfg));
      have_plan = true;
    }
    auto grid = make_grid(cfg.grid, cfg.grid, to_double(cfg.lx), to_double(cfg.ly));
    auto problem = assemble_problem(plan, grid, cfg.d1, cfg.d2,
                                    pipedetail::grid_sections(cfg, grid));
    SolveOptions opts;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.collect_history = !cfg.history_csv.empty();
    auto st = solve(problem, opts);
    auto feas = check_feasibility(problem);

    Json sec;
    sec["grid"] = cfg.grid;
    sec["status"] = pipedetail::status_str(st.status);
    sec["certificate"] = st.certificate;
    sec["iterations"] = st.iterations;
    sec["sup_residual"] = measured_entry(st.sup_residual, cfg.tol);
    sec["l2_residual"] = measured_entry(st.l2_residual, cfg.tol);
    sec["gauss_gap1"] = measured_entry(st.gauss1, 1e-6);
    sec["gauss_gap2"] = measured_entry(st.gauss2, 1e-6);
    sec["energy"] = measured_entry(st.energy_value, cfg.tol);
    sec["phi_integral"] = measured_entry(st.phi_integral, 1e-6);
    sec["phi_integral_required"] = measured_entry(feas.phi_integral_required, 1e-6);
    rep.machine["solver"] = std::move(sec);

    switch (st.status) {
      case SolverState::Status::converged:
        break;
      case SolverState::Status::exact:
        rep.add_finding(Severity::info, "solver", "split problem solved exactly");
        break;
      case SolverState::Status::infeasible:
        rep.add_finding(Severity::info, "solver", "infeasible: " + st.certificate);
        break;
      case SolverState::Status::not_converged:
        rep.add_finding(Severity::error, "solver", "no convergence: " + st.certificate);
        break;
    }
    if (st.status == SolverState::Status::converged &&
        (st.gauss1 > 1e-6 || st.gauss2 > 1e-6))
      rep.add_finding(Severity::inconsistency, "solver",
                      "integrated curvature misses its topological value");

    auto dump = [&](const std::string& path, auto&& writer) {
      if (path.empty()) return;
      std::ofstream os(path, std::ios::binary);
      if (!os) {
        rep.add_finding(Severity::error, "solver", "cannot write '" + path + "'");
        return;
      }
      writer(os);
    };
    dump(cfg.history_csv, [&](std::ostream& os) { write_history_csv(st, os); });
    dump(cfg.field_csv, [&](std::ostream& os) { write_fields_csv(grid, st.u1, st.u2, os); });
  });

  if (stages.fiber) run_stage(rep, "fiber", [&] {
    if (fiber.rs.type.family != Family::A || fiber.rs.type.rank != 1)
      throw ConfigError("verify-fiber needs an A1[x] fiber");
    if (cfg.rho1.weights.size() != 1 || cfg.rho2.weights.size() > 1)
      throw ConfigError("verify-fiber expects single-weight modules");
    auto rho2 = pipedetail::rho2_or_trivial(cfg, fiber);
    Rational tw = rho2.weights[0].coords[0] - cfg.rho1.weights[0].coords[0];
    if (!is_integral(tw) || tw < 0)
      throw ConfigError("verify-fiber needs rho2 - rho1 to be a nonnegative integer twist");
    int k_twist = static_cast<int>(to_integer(tw));

    auto hom = hom_module_cohomology(fiber, cfg.rho1, rho2);
    Integer bbw_dim = hom.dim_at(1);
    auto v = verify_fiber(k_twist, to_double(cfg.sigma), cfg.fiber_nodes, cfg.seed);

    Json sec;
    sec["k"] = k_twist;
    sec["sigma"] = exact_entry(cfg.sigma);
    sec["nodes_per_chart"] = cfg.fiber_nodes;
    sec["basis_dim"] = v.basis_count;
    sec["bbw_dim"] = exact_entry(bbw_dim);
    bool dims_match = Integer(v.basis_count) == bbw_dim;
    sec["dims_match"] = dims_match;
    sec["volume_error"] = measured_entry(v.volume_error, 1e-10);
    sec["gram_offdiagonal"] = measured_entry(v.gram_offdiagonal, 1e-10);
    sec["harmonicity"] = measured_entry(v.harmonicity, 1e-6);
    sec["pointwise_residual"] = measured_entry(v.pointwise_residual, 1e-6);
    sec["phi_residual"] = measured_entry(v.phi_residual, 1e-6);
    sec["perturbation_integral"] = measured_entry(v.perturbation_integral, 1e-8);
    sec["density_nonnegative"] = v.min_density >= -1e-12;
    rep.machine["fiber"] = std::move(sec);

    auto check = [&](const char* what, double value, double tol) {
      if (value > tol)
        rep.add_finding(Severity::inconsistency, "fiber",
                        std::string(what) + " exceeds its tolerance");
    };
    if (!dims_match)
      rep.add_finding(Severity::inconsistency, "fiber",
                      "harmonic basis dimension disagrees with the cohomology dimension");
    check("volume error", v.volume_error, 1e-10);
    check("gram off-diagonal", v.gram_offdiagonal, 1e-10);
    check("harmonicity residual", v.harmonicity, 1e-6);
    check("contraction identity residual", v.pointwise_residual, 1e-6);
    check("coupling expansion residual", v.phi_residual, 1e-6);
    check("perturbation integral", v.perturbation_integral, 1e-8);
    if (v.min_density < -1e-12)
      rep.add_finding(Severity::inconsistency, "fiber", "contraction density goes negative");
  });

  if (stages.sweep) run_stage(rep, "sweep", [&] {
    if (!cfg.sweep)
      throw ConfigError("sweep stage needs sweep_lo/sweep_hi in [sigma]");
    if (!have_plan) {
      plan = build_plan(fiber, pipedetail::plan_input(cfg));
      have_plan = true;
    }
    auto sigmas = pipedetail::sigma_grid(*cfg.sweep);
    const int rows = static_cast<int>(sigmas.size());
    const bool do_solve = cfg.sweep->solve && cfg.mode == BaseMode::torus;

    struct Row {
      Rational sigma, tau1, tau2;
      std::string feasible;
      bool identity_exact = true;
      double residual = -1;  // <0: no solve ran
      std::string status;
    };
    std::vector<Row> table(rows);
    bool window_agrees = true;
    for (int i = 0; i < rows; ++i) {
      Row& row = table[i];
      row.sigma = sigmas[i];
      auto vp = vortex_parameters(plan.mu_x1, plan.mu_x2, plan.rk_e1, plan.rk_e2, plan.mu_rho1,
                                  plan.mu_rho2, row.sigma);
      row.tau1 = vp.tau1;
      row.tau2 = vp.tau2;
      // Integral-sign feasibility, independent of the closed-form window.
      Rational f1 = vp.tau1 - plan.mu_x1;
      Rational f2 = plan.mu_x2 - vp.tau2;
      if (cfg.phi_nonzero)
        row.feasible = (f1 > 0 && f2 > 0) ? "yes" : ((f1 == 0 || f2 == 0) ? "boundary" : "no");
      else
        row.feasible = (f1 == 0 && f2 == 0) ? "yes" : "no";
      Rational lhs = Rational(plan.rk_e1 + plan.rk_e2) * vp.lambda_slope;
      Rational rhs = Rational(plan.rk_e1) * (vp.tau1 + plan.mu_rho1 / row.sigma) +
                     Rational(plan.rk_e2) * (vp.tau2 + plan.mu_rho2 / row.sigma);
      row.identity_exact = lhs == rhs;
      bool in_window = plan.window.contains(row.sigma);
      if (in_window != (row.feasible == "yes")) window_agrees = false;
    }

    if (do_solve) {
      auto grid = make_grid(cfg.grid, cfg.grid, to_double(cfg.lx), to_double(cfg.ly));
      auto worker = [&](int from, int to) {
        for (int i = from; i < to; ++i) {
          if (table[i].feasible != "yes") continue;
          PlanInput in = pipedetail::plan_input(cfg);
          in.sigma = table[i].sigma;
          auto local = build_plan(fiber, in);
          auto problem = assemble_problem(local, grid, cfg.d1, cfg.d2,
                                          pipedetail::grid_sections(cfg, grid));
          SolveOptions opts;
          opts.tol = cfg.tol;
          opts.max_iter = cfg.max_iter;
          auto st = solve(problem, opts);
          table[i].residual = st.sup_residual;
          table[i].status = pipedetail::status_str(st.status);
        }
      };
      int threads = std::min(pipedetail::sweep_threads(), rows);
      if (threads <= 1) {
        worker(0, rows);
      } else {
        std::vector<std::thread> pool;
        int chunk = (rows + threads - 1) / threads;
        for (int t = 0; t < threads; ++t)
          pool.emplace_back(worker, t * chunk, std::min(rows, (t + 1) * chunk));
        for (auto& th : pool) th.join();
      }
    }

    Json sec;
    sec["window"] = plan.window.str();
    sec["points"] = rows;
    sec["solved"] = do_solve;
    sec["window_agrees"] = window_agrees;
    Json rows_json = Json::array();
    std::string first_feasible, last_feasible;
    bool identities_exact = true;
    for (const auto& row : table) {
      Json rj;
      rj["sigma"] = rational_str(row.sigma);
      rj["tau1"] = rational_str(row.tau1);
      rj["tau2"] = rational_str(row.tau2);
      rj["feasible"] = row.feasible;
      if (row.residual >= 0) {
        rj["residual"] = measured_entry(row.residual, cfg.tol);
        rj["status"] = row.status;
        if (row.status != "converged" && row.status != "exact")
          rep.add_finding(Severity::error, "sweep",
                          "no convergence at sigma = " + rational_str(row.sigma));
      } else {
        rj["residual"] = nullptr;
      }
      rows_json.push_back(std::move(rj));
      identities_exact = identities_exact && row.identity_exact;
      if (row.feasible == "yes") {
        if (first_feasible.empty()) first_feasible = rational_str(row.sigma);
        last_feasible = rational_str(row.sigma);
      }
    }
    sec["tau_identity"] = identities_exact ? "exact" : "violated";
    sec["first_feasible"] = first_feasible.empty() ? Json(nullptr) : Json(first_feasible);
    sec["last_feasible"] = last_feasible.empty() ? Json(nullptr) : Json(last_feasible);
    sec["rows"] = std::move(rows_json);
    rep.machine["sweep"] = std::move(sec);

    if (!identities_exact)
      rep.add_finding(Severity::inconsistency, "sweep", "rank-weighted slope identity violated");
    if (!window_agrees)
      rep.add_finding(Severity::inconsistency, "sweep",
                      "feasibility column disagrees with the closed-form window");

    if (!cfg.sweep_csv.empty()) {
      std::ofstream os(cfg.sweep_csv, std::ios::binary);
      if (!os) {
        rep.add_finding(Severity::error, "sweep", "cannot write '" + cfg.sweep_csv + "'");
      } else {
        os << "sigma,tau1,tau2,feasible,residual\n";
        for (const auto& row : table) {
          os << rational_str(row.sigma) << ',' << rational_str(row.tau1) << ','
             << rational_str(row.tau2) << ',' << row.feasible << ',';
          if (row.residual >= 0) os << row.residual;
          os << '\n';
        }
      }
    }
  });

  return rep;
}

}  // namespace flagvortex
