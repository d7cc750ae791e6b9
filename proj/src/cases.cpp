#include <cmath>
#include <numbers>

#include "lglmcl/app.hpp"

namespace lglmcl {

namespace {

template <int Dim>
State<Dim> prim(double rho, std::array<double, Dim> v, double p, const GasModel& gas) {
  Primitive<Dim> w;
  w.rho = rho;
  w.v = v;
  w.p = p;
  return from_primitive(w, gas);
}

template <int Dim>
CaseSetup<Dim> density_wave(const RunConfig& cfg, const GasModel& gas) {
  CaseSetup<Dim> s;
  s.gas = gas;
  s.mesh = make_box<Dim>(*cfg.elements, -1.0, 1.0, Periodic{});
  std::array<double, Dim> v{};
  v[0] = 0.1;
  if constexpr (Dim == 2) v[1] = 0.2;
  s.exact = [gas, v](double t, const Point<Dim>& x) {
    double phase = 0.0;
    for (int d = 0; d < Dim; ++d) phase += x[d] - v[d] * t;
    const double rho = 2.0 + 0.98 * std::sin(2.0 * std::numbers::pi * phase);
    return prim<Dim>(rho, v, 20.0, gas);
  };
  s.initial = [exact = s.exact](const Point<Dim>& x) { return exact(0.0, x); };
  return s;
}

CaseSetup<2> khi(const RunConfig& cfg, const GasModel& gas) {
  CaseSetup<2> s;
  s.gas = gas;
  s.mesh = make_box<2>(*cfg.elements, -1.0, 1.0, Periodic{});
  s.initial = [gas](const Point<2>& x) {
    const double b = std::tanh(15.0 * x[1] + 7.5) - std::tanh(15.0 * x[1] - 7.5);
    const double rho = 0.5 + 0.75 * b;
    const std::array<double, 2> v{0.5 * (b - 1.0), 0.1 * std::sin(2.0 * std::numbers::pi * x[0])};
    return prim<2>(rho, v, 1.0, gas);
  };
  return s;
}

CaseSetup<2> sedov(const RunConfig& cfg, const GasModel& gas) {
  CaseSetup<2> s;
  s.gas = gas;
  s.mesh = make_box<2>(*cfg.elements, -2.0, 2.0, Periodic{});
  const double r0 = 0.21875;
  const double p_in = (gas.gamma - 1.0) * 1.0 / (std::numbers::pi * r0 * r0);
  s.initial = [gas, r0, p_in](const Point<2>& x) {
    const double r = std::hypot(x[0], x[1]);
    return prim<2>(1.0, {0.0, 0.0}, r >= r0 ? 1e-5 : p_in, gas);
  };
  return s;
}

CaseSetup<2> jet(const RunConfig& cfg, const GasModel& gas) {
  CaseSetup<2> s;
  s.gas = gas;
  s.mesh = make_box<2>(*cfg.elements, -0.5, 0.5, Periodic{});
  const State<2> ambient = prim<2>(0.5, {0.0, 0.0}, 0.4127, gas);
  const State<2> inflow = prim<2>(5.0, {800.0, 0.0}, 0.4127, gas);
  s.initial = [ambient](const Point<2>&) { return ambient; };
  s.mesh.boundary[face_index(0, 0)] = Inflow<2>{[ambient, inflow](const Point<2>& x) {
    return std::abs(x[1]) <= 0.05 ? inflow : ambient;
  }};
  s.mesh.boundary[face_index(0, 1)] = Outflow{};
  s.mesh.validate();
  return s;
}

template <int Dim>
CaseSetup<Dim> custom(const RunConfig& cfg, const GasModel& gas) {
  CaseSetup<Dim> s;
  s.gas = gas;
  s.mesh = make_box<Dim>(*cfg.elements, 0.0, 1.0, Periodic{});
  s.mesh.boundary[face_index(0, 0)] = Outflow{};
  s.mesh.boundary[face_index(0, 1)] = Outflow{};
  s.mesh.validate();
  const RiemannData r = cfg.riemann;
  std::array<double, Dim> vl{}, vr{};
  vl[0] = r.v_left;
  vr[0] = r.v_right;
  const State<Dim> left = prim<Dim>(r.rho_left, vl, r.p_left, gas);
  const State<Dim> right = prim<Dim>(r.rho_right, vr, r.p_right, gas);
  s.initial = [left, right, x0 = r.x0](const Point<Dim>& x) { return x[0] < x0 ? left : right; };
  return s;
}

}  // namespace

template <int Dim>
CaseSetup<Dim> builtin_case(const RunConfig& cfg) {
  cfg.validate();
  if (*cfg.dim != Dim) throw ConfigError("case dimension does not match the requested solver");
  const GasModel gas{*cfg.gamma};
  switch (cfg.case_name) {
    case CaseName::density_wave: return density_wave<Dim>(cfg, gas);
    case CaseName::custom: return custom<Dim>(cfg, gas);
    case CaseName::khi:
    case CaseName::sedov:
    case CaseName::jet:
      if constexpr (Dim == 2) {
        if (cfg.case_name == CaseName::khi) return khi(cfg, gas);
        if (cfg.case_name == CaseName::sedov) return sedov(cfg, gas);
        return jet(cfg, gas);
      }
      break;
  }
  throw ConfigError(std::string(to_string(cfg.case_name)) + " is not available in " +
                    std::to_string(Dim) + "D");
}

template CaseSetup<1> builtin_case<1>(const RunConfig&);
template CaseSetup<2> builtin_case<2>(const RunConfig&);

}  // namespace lglmcl
