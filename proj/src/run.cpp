#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "lglmcl/app.hpp"
#include "lglmcl/timeint.hpp"

namespace lglmcl {

template <int Dim>
State<Dim> l2_error(const Discretization<Dim>& disc, const Field<Dim>& u,
                    const std::function<State<Dim>(const Point<Dim>&)>& exact) {
  State<Dim> sum{};
  const int npe = disc.nodes_per_element();
  for (int e = 0; e < disc.mesh().num_elements(); ++e)
    for (int n = 0; n < npe; ++n) {
      const State<Dim> diff = u[static_cast<std::size_t>(e) * npe + n] - exact(disc.node_position(e, n));
      for (int q = 0; q < State<Dim>::kNumEq; ++q) sum[q] += disc.mass(n) * diff[q] * diff[q];
    }
  for (int q = 0; q < State<Dim>::kNumEq; ++q) sum[q] = std::sqrt(sum[q] / disc.mesh().measure());
  return sum;
}

template State<1> l2_error<1>(const Discretization<1>&, const Field<1>&,
                              const std::function<State<1>(const Point<1>&)>&);
template State<2> l2_error<2>(const Discretization<2>&, const Field<2>&,
                              const std::function<State<2>(const Point<2>&)>&);

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<int>& mesh_counts) {
  if (errors.size() != mesh_counts.size())
    throw ConfigError("eoc: error and mesh-count lists differ in length");
  std::vector<double> out;
  for (std::size_t k = 1; k < errors.size(); ++k) {
    const bool doubled = mesh_counts[k] == 2 * mesh_counts[k - 1];
    if (!doubled || !(errors[k] > 0.0) || !(errors[k - 1] > 0.0))
      out.push_back(std::numeric_limits<double>::quiet_NaN());
    else
      out.push_back(std::log2(errors[k - 1] / errors[k]));
  }
  return out;
}

double mean_eoc(const std::vector<double>& orders) {
  double sum = 0.0;
  int count = 0;
  for (double o : orders)
    if (std::isfinite(o)) {
      sum += o;
      ++count;
    }
  return count ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

namespace {

template <int Dim>
std::vector<std::string> variable_names() {
  if constexpr (Dim == 1) return {"rho", "rho_v1", "rho_E"};
  else return {"rho", "rho_v1", "rho_v2", "rho_E"};
}

template <int Dim>
std::vector<std::string> factor_names() {
  std::vector<std::string> n{"alpha_rho", "alpha_v1"};
  if constexpr (Dim == 2) n.push_back("alpha_v2");
  n.insert(n.end(), {"alpha_E", "alpha_p", "alpha_s", "alpha_all"});
  return n;
}

template <int Dim>
std::vector<double> to_vector(const State<Dim>& s) {
  return {s.q.begin(), s.q.end()};
}

struct Extrema {
  double min_rho = std::numeric_limits<double>::infinity();
  double max_rho = -std::numeric_limits<double>::infinity();
  double min_p = std::numeric_limits<double>::infinity();
  double max_p = -std::numeric_limits<double>::infinity();
};

template <int Dim>
Extrema extrema(const Field<Dim>& u, const GasModel& gas) {
  Extrema x;
  for (const auto& s : u) {
    const double p = pressure(s, gas);
    x.min_rho = std::min(x.min_rho, s.rho());
    x.max_rho = std::max(x.max_rho, s.rho());
    x.min_p = std::min(x.min_p, p);
    x.max_p = std::max(x.max_p, p);
  }
  return x;
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

template <int Dim>
class Runner {
 public:
  Runner(const RunConfig& cfg, RunResult& result)
      : cfg_(cfg),
        result_(result),
        setup_(builtin_case<Dim>(cfg)),
        disc_(setup_.mesh, *cfg.degree, setup_.gas, *cfg.volume_flux, cfg.limiter()) {}

  void execute() {
    result_.factor_names = factor_names<Dim>();
    open_outputs();
    try {
      loop();
    } catch (const std::exception& e) {
      if (diag_) diag_.flush();
      write_summary("failed", e.what());
      throw;
    }
    write_summary("completed", "");
  }

 private:
  void open_outputs() {
    if (cfg_.out_dir.empty()) return;
    std::filesystem::create_directories(cfg_.out_dir);
    std::ofstream manifest(path("manifest.txt"));
    manifest << "# resolved run configuration; loadable with `lglmcl run --config`\n"
             << format_config(cfg_);
    diag_.open(path("diagnostics.csv"));
    diag_ << "t,dt";
    for (const auto& n : factor_names<Dim>()) diag_ << ',' << n;
    diag_ << ",min_rho,min_p,max_p";
    for (const auto& n : variable_names<Dim>()) diag_ << ",total_" << n;
    diag_ << '\n';
  }

  std::string path(const std::string& name) const {
    return (std::filesystem::path(cfg_.out_dir) / name).string();
  }

  /// Right-hand side with optional factor capture and audit.
  void rhs(const Field<Dim>& u, Field<Dim>& dudt, NodalFactors<Dim>* factors) {
    RhsExtras<Dim> extras;
    extras.factors = factors;
    InterfaceAudit audit;
    if (cfg_.audit) extras.audit = &audit;
    disc_.assemble_rhs(u, dudt, extras);
    if (cfg_.audit) {
      result_.audit.merge(audit);
      const double worst = std::max({audit.bounds, audit.pressure, audit.tadmor});
      if (worst > 1e-10) {
        std::ostringstream os;
        os << "audit failed at step " << tc_.step << ", t = " << num(tc_.t)
           << ": bounds " << audit.bounds << ", pressure " << audit.pressure << ", tadmor "
           << audit.tadmor;
        throw InvariantViolation(os.str());
      }
    }
  }

  std::vector<double> factor_means(const NodalFactors<Dim>& f) const {
    std::vector<double> means;
    std::vector<double> nodal(f.values.size());
    for (int c = 0; c < NodalFactors<Dim>::kCount; ++c) {
      for (std::size_t i = 0; i < nodal.size(); ++i) nodal[i] = f.values[i][c];
      means.push_back(disc_.mean(nodal));
    }
    return means;
  }

  DiagnosticsRow make_row(const Field<Dim>& u, double t, double dt,
                          const NodalFactors<Dim>& f) const {
    DiagnosticsRow r;
    r.t = t;
    r.dt = dt;
    r.alpha_mean = factor_means(f);
    const Extrema x = extrema(u, disc_.gas());
    r.min_rho = x.min_rho;
    r.max_rho = x.max_rho;
    r.min_p = x.min_p;
    r.max_p = x.max_p;
    r.totals = to_vector(disc_.totals(u));
    return r;
  }

  void write_row(const DiagnosticsRow& r) {
    if (!diag_) return;
    diag_ << num(r.t) << ',' << num(r.dt);
    for (double a : r.alpha_mean) diag_ << ',' << num(a);
    diag_ << ',' << num(r.min_rho) << ',' << num(r.min_p) << ',' << num(r.max_p);
    for (double a : r.totals) diag_ << ',' << num(a);
    diag_ << '\n';
  }

  /// Output record plus snapshot file at the current time.
  void output(const Field<Dim>& u) {
    NodalFactors<Dim> f;
    Field<Dim> scratch;
    rhs(u, scratch, &f);
    result_.outputs.push_back(make_row(u, tc_.t, 0.0, f));
    if (cfg_.out_dir.empty()) return;
    std::ostringstream name;
    name << "snapshot_" << std::setw(4) << std::setfill('0') << snapshot_index_++ << ".dat";
    std::ofstream os(path(name.str()));
    os << "# t = " << num(tc_.t) << ", dim = " << Dim << ", degree = " << disc_.degree()
       << ", elements = " << *cfg_.elements << ", nodes = " << u.size() << "\n# x";
    if constexpr (Dim == 2) os << " y";
    for (const auto& n : variable_names<Dim>()) os << ' ' << n;
    os << " p";
    for (const auto& n : factor_names<Dim>()) os << ' ' << n;
    os << '\n';
    const int npe = disc_.nodes_per_element();
    for (int e = 0; e < disc_.mesh().num_elements(); ++e)
      for (int n = 0; n < npe; ++n) {
        const std::size_t i = static_cast<std::size_t>(e) * npe + n;
        const auto x = disc_.node_position(e, n);
        for (int d = 0; d < Dim; ++d) os << num(x[d]) << ' ';
        for (int q = 0; q < State<Dim>::kNumEq; ++q) os << num(u[i][q]) << ' ';
        os << num(pressure(u[i], disc_.gas()));
        for (double a : f.values[i]) os << ' ' << num(a);
        os << '\n';
      }
  }

  void loop() {
    tc_.cfl = cfg_.cfl;
    tc_.t_final = *cfg_.t_final;
    tc_.validate();

    Field<Dim> u = disc_.interpolate(setup_.initial);
    disc_.check_admissible(u, "initial condition");
    result_.initial_totals = to_vector(disc_.totals(u));
    {
      std::vector<double> abs_tot(State<Dim>::kNumEq, 0.0);
      const int npe = disc_.nodes_per_element();
      for (std::size_t i = 0; i < u.size(); ++i)
        for (int q = 0; q < State<Dim>::kNumEq; ++q)
          abs_tot[q] += disc_.mass(static_cast<int>(i % npe)) * std::abs(u[i][q]);
      result_.initial_abs_totals = abs_tot;
    }
    Extrema running = extrema(u, disc_.gas());
    output(u);

    std::vector<double> stops;
    for (double t : cfg_.snapshot_times)
      if (t < tc_.t_final) stops.push_back(t);
    std::sort(stops.begin(), stops.end());
    stops.push_back(tc_.t_final);
    std::size_t next_stop = 0;

    NodalFactors<Dim> factors;
    int rhs_calls = 0;
    bool capture = false;
    const RhsFunction<State<Dim>> rhs_fn = [&](const Field<Dim>& in, Field<Dim>& out) {
      rhs(in, out, capture && rhs_calls == 0 ? &factors : nullptr);
      ++rhs_calls;
    };
    const StageCheck<State<Dim>> check = [&](int stage, const Field<Dim>& s) {
      const std::string where =
          "step " + std::to_string(tc_.step + 1) + " stage " + std::to_string(stage);
      disc_.check_admissible(s, where.c_str());
      const Extrema x = extrema(s, disc_.gas());
      running.min_rho = std::min(running.min_rho, x.min_rho);
      running.min_p = std::min(running.min_p, x.min_p);
    };

    while (next_stop < stops.size()) {
      const double target = stops[next_stop];
      const double proposed = disc_.compute_dt(u, tc_.cfl);
      tc_.dt = tc_.clip(proposed, target);
      const bool landing = tc_.dt == target - tc_.t;

      capture = diag_.is_open() && tc_.step % cfg_.diagnostics_every == 0;
      rhs_calls = 0;
      const Field<Dim> before = capture ? u : Field<Dim>{};
      step_ssprk3<State<Dim>>(u, tc_.dt, rhs_fn, check);
      if (capture) write_row(make_row(before, tc_.t, tc_.dt, factors));

      ++tc_.step;
      tc_.t = landing ? target : tc_.t + tc_.dt;
      if (landing) {
        ++next_stop;
        output(u);
      }
    }

    const Extrema fin = extrema(u, disc_.gas());
    result_.steps = tc_.step;
    result_.t = tc_.t;
    result_.min_rho = fin.min_rho;
    result_.max_rho = fin.max_rho;
    result_.min_p = fin.min_p;
    result_.max_p = fin.max_p;
    result_.run_min_rho = running.min_rho;
    result_.run_min_p = running.min_p;
    result_.final_totals = to_vector(disc_.totals(u));
    if (setup_.exact) {
      const double t = tc_.t;
      const auto exact = setup_.exact;
      result_.l2_errors = to_vector(
          l2_error<Dim>(disc_, u, [&](const Point<Dim>& x) { return exact(t, x); }));
    }
    if (diag_) {
      const auto& last = result_.outputs.back();
      write_row(last);
    }
  }

  void write_summary(const std::string& status, const std::string& error) {
    if (cfg_.out_dir.empty()) return;
    std::ofstream os(path("summary.txt"));
    os << "status = " << status << "\n";
    if (!error.empty()) os << "error = " << error << "\n";
    os << "steps = " << tc_.step << "\nt = " << num(tc_.t) << "\n";
    if (status == "completed") {
      os << "rho_min = " << num(result_.min_rho) << "\nrho_max = " << num(result_.max_rho)
         << "\np_min = " << num(result_.min_p) << "\np_max = " << num(result_.max_p)
         << "\nrun_rho_min = " << num(result_.run_min_rho)
         << "\nrun_p_min = " << num(result_.run_min_p) << "\n";
      const auto names = variable_names<Dim>();
      for (std::size_t q = 0; q < names.size(); ++q) {
        os << "total_" << names[q] << "_initial = " << num(result_.initial_totals[q]) << "\n";
        os << "total_" << names[q] << "_final = " << num(result_.final_totals[q]) << "\n";
      }
      for (std::size_t q = 0; q < result_.l2_errors.size(); ++q)
        os << "l2_error_" << names[q] << " = " << num(result_.l2_errors[q]) << "\n";
      if (cfg_.audit)
        os << "audit_bounds = " << num(result_.audit.bounds)
           << "\naudit_pressure = " << num(result_.audit.pressure)
           << "\naudit_tadmor = " << num(result_.audit.tadmor) << "\n";
    }
  }

  const RunConfig& cfg_;
  RunResult& result_;
  CaseSetup<Dim> setup_;
  Discretization<Dim> disc_;
  TimeControl tc_;
  std::ofstream diag_;
  int snapshot_index_ = 0;
};

}  // namespace

RunResult run(const RunConfig& config) {
  RunConfig cfg = config;
  cfg.resolve();
  RunResult result;
  if (*cfg.dim == 1) {
    Runner<1> r(cfg, result);
    r.execute();
  } else {
    Runner<2> r(cfg, result);
    r.execute();
  }
  return result;
}

ConvergenceTable convergence(const RunConfig& base, const std::vector<int>& ladder) {
  ConvergenceTable table;
  table.elements = ladder;
  for (int ne : ladder) {
    RunConfig cfg = base;
    cfg.elements = ne;
    cfg.out_dir.clear();
    cfg.snapshot_times.clear();
    cfg.resolve();
    const RunResult r = run(cfg);
    if (r.l2_errors.empty())
      throw ConfigError(std::string(to_string(cfg.case_name)) + " has no exact solution");
    if (table.variables.empty()) {
      table.variables = *cfg.dim == 1 ? variable_names<1>() : variable_names<2>();
      table.errors.resize(table.variables.size());
    }
    for (std::size_t q = 0; q < r.l2_errors.size(); ++q) table.errors[q].push_back(r.l2_errors[q]);
    table.steps.push_back(r.steps);
  }
  for (const auto& errs : table.errors) {
    table.orders.push_back(eoc(errs, ladder));
    table.mean_orders.push_back(mean_eoc(table.orders.back()));
  }
  return table;
}

void print_convergence(std::ostream& os, const ConvergenceTable& t) {
  auto eoc_cell = [](double v) {
    std::ostringstream s;
    if (std::isfinite(v)) s << std::fixed << std::setprecision(2) << v;
    else s << "-";
    return s.str();
  };
  os << std::left << std::setw(6) << "N_e";
  for (const auto& v : t.variables) os << std::setw(12) << ("L2 " + v) << std::setw(7) << "EOC";
  os << '\n';
  for (std::size_t k = 0; k < t.elements.size(); ++k) {
    os << std::setw(6) << t.elements[k];
    for (std::size_t q = 0; q < t.variables.size(); ++q) {
      std::ostringstream e;
      e << std::scientific << std::setprecision(2) << t.errors[q][k];
      os << std::setw(12) << e.str() << std::setw(7)
         << (k == 0 ? std::string("-") : eoc_cell(t.orders[q][k - 1]));
    }
    os << '\n';
  }
  os << std::setw(6) << "mean";
  for (std::size_t q = 0; q < t.variables.size(); ++q)
    os << std::setw(12) << "" << std::setw(7) << eoc_cell(t.mean_orders[q]);
  os << '\n';
}

}  // namespace lglmcl
