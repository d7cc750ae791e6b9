#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lglmcl/euler.hpp"
#include "lglmcl/limiter.hpp"
#include "lglmcl/mesh.hpp"
#include "lglmcl/semidisc.hpp"

namespace lglmcl {

enum class CaseName { density_wave, khi, sedov, jet, custom };

CaseName parse_case(std::string_view name);
std::string_view to_string(CaseName c);

/// Left/right primitive states of the custom Riemann problem (1D or planar 2D).
struct RiemannData {
  double rho_left = 1.0, v_left = 0.0, p_left = 1.0;
  double rho_right = 0.125, v_right = 0.0, p_right = 0.1;
  double x0 = 0.5;
};

/// Run parameters. Unset optionals take the case default in resolve().
///
/// Text form, one `key = value` per line, `#` starts a comment:
///   case, dim, degree, elements, gamma, cfl, t_final, pipeline, pressure,
///   entropy_limiter, volume_flux, out, snapshot_times (comma separated),
///   diagnostics_every, audit, full_scale,
///   rho_left, v_left, p_left, rho_right, v_right, p_right, x0.
struct RunConfig {
  CaseName case_name = CaseName::density_wave;
  std::optional<int> dim;
  std::optional<int> degree;
  std::optional<int> elements;
  std::optional<double> gamma;
  double cfl = 0.9;
  std::optional<double> t_final;
  Pipeline pipeline = Pipeline::C;
  PressureMode pressure = PressureMode::sharp;
  std::optional<bool> entropy_limiter;
  std::optional<VolumeFlux> volume_flux;
  std::string out_dir;
  std::vector<double> snapshot_times;
  int diagnostics_every = 1;
  /// Audit every limited interface and every stage; violations abort the run.
  bool audit = false;
  /// Large benchmark resolution and end time instead of the quick defaults.
  bool full_scale = false;
  RiemannData riemann;

  /// Fills every unset optional from the case defaults and validates.
  /// Throws ConfigError.
  void resolve();
  void validate() const;

  LimiterConfig limiter() const;
};

/// Parses `key = value` text. Unknown keys, duplicate keys and malformed
/// values raise ConfigError naming the line.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
/// Applies one key/value pair; throws ConfigError on unknown keys.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);
/// Resolved configuration in the same grammar as parse_config accepts.
std::string format_config(const RunConfig& cfg);

template <int Dim>
struct CaseSetup {
  Mesh<Dim> mesh;
  GasModel gas;
  std::function<State<Dim>(const Point<Dim>&)> initial;
  /// Exact solution at (t, x), when known.
  std::function<State<Dim>(double, const Point<Dim>&)> exact;
};

/// Builds the case for a resolved configuration. Throws ConfigError if the case
/// does not exist in `Dim` dimensions.
template <int Dim>
CaseSetup<Dim> builtin_case(const RunConfig& cfg);

/// sqrt( sum_e sum_n J w_n (u - u_exact)^2 / |Omega| ) per conserved variable.
template <int Dim>
State<Dim> l2_error(const Discretization<Dim>& disc, const Field<Dim>& u,
                    const std::function<State<Dim>(const Point<Dim>&)>& exact);

/// EOC_k = log2(err_{k-1} / err_k) for factor-two refinements; NaN where an
/// error is zero or the mesh counts are not successive doublings.
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<int>& mesh_counts);
/// Mean over the finite entries of eoc(); NaN if there are none.
double mean_eoc(const std::vector<double>& orders);

/// One diagnostics record. Factor means are ordered like InterfaceFactors
/// followed by the product of all factors.
struct DiagnosticsRow {
  double t = 0.0;
  double dt = 0.0;
  std::vector<double> alpha_mean;
  double min_rho = 0.0;
  double max_rho = 0.0;
  double min_p = 0.0;
  double max_p = 0.0;
  std::vector<double> totals;
};

struct RunResult {
  long steps = 0;
  double t = 0.0;
  /// Extrema of the final solution.
  double min_rho = 0.0, max_rho = 0.0, min_p = 0.0, max_p = 0.0;
  /// Extrema over every stage of every step.
  double run_min_rho = 0.0, run_min_p = 0.0;
  std::vector<double> initial_totals;
  std::vector<double> final_totals;
  /// sum_e sum_n J w |u| of the initial data, per variable.
  std::vector<double> initial_abs_totals;
  /// Rows taken at t = 0, at each snapshot time and at the final time.
  std::vector<DiagnosticsRow> outputs;
  /// Worst audit over every right-hand-side evaluation (audit mode only).
  InterfaceAudit audit;
  /// Per-variable L2 error against the exact solution at the final time.
  std::vector<double> l2_errors;
  std::vector<std::string> factor_names;
};

/// Runs a resolved configuration. Writes manifest.txt, diagnostics.csv,
/// snapshot_XXXX.dat and summary.txt into cfg.out_dir when it is non-empty.
RunResult run(const RunConfig& cfg);

/// Convergence ladder on a case with an exact solution.
struct ConvergenceTable {
  std::vector<int> elements;
  std::vector<std::string> variables;
  /// errors[variable][level]
  std::vector<std::vector<double>> errors;
  std::vector<std::vector<double>> orders;
  std::vector<double> mean_orders;
  std::vector<long> steps;
};

ConvergenceTable convergence(const RunConfig& base, const std::vector<int>& ladder);
void print_convergence(std::ostream& os, const ConvergenceTable& table);

}  // namespace lglmcl
