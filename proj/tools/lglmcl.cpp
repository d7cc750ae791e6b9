#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "lglmcl/app.hpp"
#include "lglmcl/checks.hpp"

using namespace lglmcl;

namespace {

struct RunFlags {
  std::string config_file;
  std::string case_name, pipeline, pressure, entropy, flux, out;
  std::optional<int> degree, elements, dim;
  std::optional<double> cfl, t_final, gamma;
  std::vector<double> snapshots;
  bool audit = false;
  bool full_scale = false;
};

void add_run_options(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_file, "key = value configuration file");
  cmd->add_option("--case", f.case_name, "density_wave | khi | sedov | jet | custom");
  cmd->add_option("--n", f.degree, "polynomial degree");
  cmd->add_option("--elements", f.elements, "elements per direction");
  cmd->add_option("--dim", f.dim, "1 or 2 (density_wave and custom only)");
  cmd->add_option("--cfl", f.cfl, "CFL number in (0, 1]");
  cmd->add_option("--t-final", f.t_final, "final time");
  cmd->add_option("--gamma", f.gamma, "ratio of specific heats");
  cmd->add_option("--pipeline", f.pipeline, "off | fv | global | A | B | C");
  cmd->add_option("--pressure", f.pressure, "sharp | cautious");
  cmd->add_option("--entropy-limiter", f.entropy, "on | off");
  cmd->add_option("--volume-flux", f.flux, "central | ranocha | chandrashekar");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--snapshots", f.snapshots, "snapshot times")->delimiter(',');
  cmd->add_flag("--audit", f.audit, "audit every limited interface at every stage");
  cmd->add_flag("--full-scale", f.full_scale, "benchmark-scale mesh and end time");
}

RunConfig build_config(const RunFlags& f) {
  RunConfig cfg = f.config_file.empty() ? RunConfig{} : load_config(f.config_file);
  auto set = [&](const char* key, const std::string& v) {
    if (!v.empty()) set_config_value(cfg, key, v);
  };
  set("case", f.case_name);
  set("pipeline", f.pipeline);
  set("pressure", f.pressure);
  set("entropy_limiter", f.entropy);
  set("volume_flux", f.flux);
  set("out", f.out);
  if (f.degree) cfg.degree = *f.degree;
  if (f.elements) cfg.elements = *f.elements;
  if (f.dim) cfg.dim = *f.dim;
  if (f.cfl) cfg.cfl = *f.cfl;
  if (f.t_final) cfg.t_final = *f.t_final;
  if (f.gamma) cfg.gamma = *f.gamma;
  if (!f.snapshots.empty()) cfg.snapshot_times = f.snapshots;
  if (f.audit) cfg.audit = true;
  if (f.full_scale) cfg.full_scale = true;
  cfg.resolve();
  return cfg;
}

int do_run(const RunFlags& f) {
  const RunConfig cfg = build_config(f);
  const RunResult r = run(cfg);
  std::cout << std::setprecision(6) << "steps " << r.steps << "  t " << r.t << "\n"
            << "rho in [" << r.min_rho << ", " << r.max_rho << "], p in [" << r.min_p << ", "
            << r.max_p << "]\n";
  if (!r.l2_errors.empty()) {
    std::cout << "L2 errors:";
    for (double e : r.l2_errors) std::cout << ' ' << e;
    std::cout << "\n";
  }
  if (!cfg.out_dir.empty()) std::cout << "outputs in " << cfg.out_dir << "\n";
  return 0;
}

int do_convergence(const RunFlags& f, const std::vector<int>& ladder) {
  RunFlags g = f;
  if (g.case_name.empty() && g.config_file.empty()) g.case_name = "density_wave";
  g.out.clear();
  const RunConfig cfg = build_config(g);
  std::cout << "case " << to_string(cfg.case_name) << ", N = " << *cfg.degree << ", pipeline "
            << to_string(cfg.pipeline) << ", volume flux " << to_string(*cfg.volume_flux)
            << ", CFL " << cfg.cfl << ", t = " << *cfg.t_final << "\n";
  print_convergence(std::cout, convergence(cfg, ladder));
  return 0;
}

int do_check(unsigned seed) {
  int failures = 0;
  for (const auto& c : run_invariant_checks(seed)) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  (" << std::setprecision(3)
              << c.value << " <= " << c.tolerance << ")\n";
    failures += !c.passed;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LGL-DGSEM solver for the Euler equations with monolithic convex limiting"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "run one simulation");
  add_run_options(run_cmd, run_flags);

  RunFlags conv_flags;
  std::vector<int> ladder{4, 8, 16, 32};
  auto* conv_cmd = app.add_subcommand("convergence", "mesh refinement study with EOC table");
  add_run_options(conv_cmd, conv_flags);
  conv_cmd->add_option("--ladder", ladder, "elements per direction per level")->delimiter(',');

  unsigned seed = 12345;
  auto* check_cmd = app.add_subcommand("check", "run the invariant suite");
  check_cmd->add_option("--seed", seed, "random seed for the property checks");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return do_run(run_flags);
    if (*conv_cmd) return do_convergence(conv_flags, ladder);
    if (*check_cmd) return do_check(seed);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
