#include "lglmcl/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lglmcl/app.hpp"
#include "lglmcl/timeint.hpp"

namespace lglmcl {

namespace {

CheckResult at_most(std::string name, double value, double tol) {
  return {std::move(name), value <= tol, value, tol};
}

double sbp_defect() {
  double worst = 0.0;
  for (int n = 1; n <= 7; ++n) {
    const OperatorSet& ops = cached_operators(n);
    const std::size_t m = ops.num_nodes();
    for (std::size_t i = 0; i < m; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        worst = std::max(worst, std::abs(ops.Q(i, j) + ops.Q(j, i) - ops.B(i, j)));
        worst = std::max(worst, std::abs(ops.S(i, j) + ops.S(j, i)));
        row += ops.D(i, j);
      }
      worst = std::max(worst, std::abs(row));
    }
  }
  return worst;
}

State<2> random_state(std::mt19937& rng, const GasModel& gas) {
  std::uniform_real_distribution<double> log_rho(-2.0, 2.0), vel(-3.0, 3.0), log_p(-2.0, 2.0);
  Primitive<2> w;
  w.rho = std::exp(log_rho(rng));
  w.v = {vel(rng), vel(rng)};
  w.p = std::exp(log_p(rng));
  return from_primitive(w, gas);
}

/// Worst Tadmor residual ([[v]]^T f - [[Psi]]) / scale over random pairs.
double tadmor_residual(VolumeFlux kind, bool rusanov, std::mt19937& rng, bool absolute) {
  const GasModel gas;
  double worst = -1e300;
  for (int k = 0; k < 1000; ++k) {
    const State<2> a = random_state(rng, gas);
    const State<2> b = random_state(rng, gas);
    const int dir = k % 2;
    const State<2> f = rusanov ? rusanov_flux(a, b, dir, gas).flux : two_point_flux(a, b, dir, kind, gas);
    const State<2> dv = entropy_variables(b, gas) - entropy_variables(a, gas);
    const double dpsi = entropy_potential(b, dir, gas) - entropy_potential(a, dir, gas);
    const double scale = std::abs(dot(dv, f)) + std::abs(dpsi) + 1.0;
    const double r = (dot(dv, f) - dpsi) / scale;
    worst = std::max(worst, absolute ? std::abs(r) : r);
  }
  return worst;
}

double free_stream_deviation(Pipeline p) {
  RunConfig cfg;
  cfg.case_name = CaseName::density_wave;
  cfg.elements = 8;
  cfg.degree = 4;
  cfg.pipeline = p;
  cfg.resolve();
  const GasModel gas{*cfg.gamma};
  Discretization<2> disc(make_box<2>(8, -1.0, 1.0, Periodic{}), 4, gas, *cfg.volume_flux,
                         cfg.limiter());
  const State<2> c = from_primitive(Primitive<2>{1.3, {0.4, -0.7}, 2.1}, gas);
  Field<2> u(disc.num_nodes(), c);
  const double dt = disc.compute_dt(u, 0.9);
  const RhsFunction<State<2>> rhs = [&](const Field<2>& in, Field<2>& out) {
    disc.assemble_rhs(in, out);
  };
  for (int s = 0; s < 100; ++s) step_ssprk3<State<2>>(u, dt, rhs);
  double dev = 0.0;
  for (const auto& s : u)
    for (int q = 0; q < 4; ++q) dev = std::max(dev, std::abs(s[q] - c[q]));
  return dev;
}

double conservation_drift() {
  RunConfig cfg;
  cfg.case_name = CaseName::khi;
  cfg.elements = 8;
  cfg.t_final = 0.2;
  cfg.pipeline = Pipeline::C;
  const RunResult r = run(cfg);
  double worst = 0.0;
  for (std::size_t q = 0; q < r.final_totals.size(); ++q)
    worst = std::max(worst, std::abs(r.final_totals[q] - r.initial_totals[q]) /
                                r.initial_abs_totals[q]);
  return worst;
}

double cfl_scaling_defect() {
  RunConfig cfg;
  cfg.case_name = CaseName::sedov;
  cfg.elements = 8;
  cfg.resolve();
  const CaseSetup<2> setup = builtin_case<2>(cfg);
  const Discretization<2> disc(setup.mesh, *cfg.degree, setup.gas, *cfg.volume_flux,
                               cfg.limiter());
  const Field<2> u = disc.interpolate(setup.initial);
  const double a = disc.compute_dt(u, 0.9);
  const double b = disc.compute_dt(u, 0.45);
  return std::abs(a / b - 2.0);
}

}  // namespace

std::vector<CheckResult> run_invariant_checks(unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<CheckResult> out;
  out.push_back(at_most("SBP identities, degrees 1-7", sbp_defect(), 1e-13));
  out.push_back(at_most("ranocha flux entropy conservation",
                        tadmor_residual(VolumeFlux::ranocha, false, rng, true), 1e-11));
  out.push_back(at_most("chandrashekar flux entropy conservation",
                        tadmor_residual(VolumeFlux::chandrashekar, false, rng, true), 1e-11));
  out.push_back(at_most("rusanov flux entropy stability",
                        tadmor_residual(VolumeFlux::central, true, rng, false), 1e-12));
  for (Pipeline p : {Pipeline::off, Pipeline::global_only, Pipeline::A, Pipeline::B, Pipeline::C})
    out.push_back(at_most("free stream, pipeline " + std::string(to_string(p)),
                          free_stream_deviation(p), 1e-12));
  out.push_back(at_most("conservation, periodic khi", conservation_drift(), 1e-11));
  out.push_back(at_most("step size proportional to CFL", cfl_scaling_defect(), 1e-14));
  return out;
}

}  // namespace lglmcl
