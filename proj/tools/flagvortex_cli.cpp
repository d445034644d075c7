// Command-line front end.  Each verb maps to a stage set of the pipeline;
// the machine report goes to --out (or the [output] report path), the
// human rendering to stdout.  Exit status: 0 clean, 1 when the report has
// findings at inconsistency level or above, 2 on configuration errors.

#include <flagvortex/pipeline.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using namespace flagvortex;

  CLI::App app{"flag-fiber cohomology, reduction planning, and torus vortex toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::uint64_t seed = 0;
  double tol = 0;
  int grid = 0;

  const std::pair<const char*, const char*> verbs[] = {
      {"bbw", "cohomology of the configured modules"},
      {"calibrate", "slope and vanishing checks for the module pair"},
      {"plan", "vortex parameters, window, and extension count"},
      {"solve", "torus vortex solve at the configured sigma"},
      {"verify-fiber", "numerical check of the fiber reduction identities"},
      {"sweep", "tau table and feasibility across a sigma range"},
  };
  for (const auto& [name, desc] : verbs) {
    auto* cmd = app.add_subcommand(name, desc);
    cmd->add_option("--config", config_path, "configuration file")->required();
    cmd->add_option("--out", out_path, "write the machine report to this path");
    cmd->add_option("--seed", seed, "override the configured random seed");
    cmd->add_option("--tol", tol, "override the solver tolerance");
    cmd->add_option("--grid", grid, "override the grid resolution / chart nodes");
  }

  CLI11_PARSE(app, argc, argv);
  auto* sub = app.get_subcommands().front();
  const std::string verb = sub->get_name();

  try {
    auto cfg = load_pipeline_config(config_path);
    if (sub->count("--seed")) cfg.seed = seed;
    if (sub->count("--tol")) {
      if (!(tol > 0)) throw ConfigError("--tol must be positive");
      cfg.tol = tol;
    }
    if (sub->count("--grid")) {
      if (grid < (verb == "verify-fiber" ? 8 : 4))
        throw ConfigError("--grid is too small for the '" + verb + "' stage");
      cfg.grid = grid;
      cfg.fiber_nodes = grid;
    }
    if (sub->count("--out")) cfg.report_path = out_path;

    auto rep = run_pipeline(cfg, stages_for_verb(verb));

    if (!cfg.report_path.empty()) {
      std::ofstream os(cfg.report_path, std::ios::binary);
      if (!os) {
        std::cerr << "error: cannot write report to '" << cfg.report_path << "'\n";
        return 2;
      }
      os << rep.machine_text();
    }
    std::cout << rep.human_text();
    return rep.exit_status();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
