#include "lglmcl/euler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

namespace lglmcl {

namespace {

template <int Dim>
[[noreturn]] void throw_invalid(const char* what, const State<Dim>& u) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": state (";
  for (int k = 0; k < State<Dim>::kNumEq; ++k) os << (k ? ", " : "") << u[k];
  os << ")";
  throw InvalidStateError(os.str());
}

template <int Dim>
void require_positive_density(const State<Dim>& u) {
  if (!(u.rho() > 0.0) || !std::isfinite(u.rho())) throw_invalid("non-positive density", u);
}

template <int Dim>
double kinetic_energy_density(const State<Dim>& u) {
  double m2 = 0.0;
  for (int d = 0; d < Dim; ++d) m2 += u.momentum(d) * u.momentum(d);
  return 0.5 * m2 / u.rho();
}

// Primitive data shared by the two-point fluxes.
template <int Dim>
struct Prim {
  double rho;
  std::array<double, Dim> v;
  double p;
};

template <int Dim>
Prim<Dim> admissible_primitive(const State<Dim>& u, const GasModel& gas) {
  require_positive_density(u);
  Prim<Dim> w{};
  w.rho = u.rho();
  for (int d = 0; d < Dim; ++d) w.v[d] = u.momentum(d) / w.rho;
  w.p = (gas.gamma - 1.0) * (u.energy() - kinetic_energy_density(u));
  if (!(w.p > 0.0) || !std::isfinite(w.p)) throw_invalid("non-positive pressure", u);
  return w;
}

}  // namespace

void GasModel::validate() const {
  if (!(gamma > 1.0 && gamma <= 3.0))
    throw ConfigError("gamma must lie in (1, 3], got " + std::to_string(gamma));
}

template <int Dim>
State<Dim> from_primitive(const Primitive<Dim>& w, const GasModel& gas) {
  State<Dim> u;
  u[0] = w.rho;
  double v2 = 0.0;
  for (int d = 0; d < Dim; ++d) {
    u[1 + d] = w.rho * w.v[d];
    v2 += w.v[d] * w.v[d];
  }
  u[State<Dim>::kEnergy] = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * v2;
  return u;
}

template <int Dim>
Primitive<Dim> to_primitive(const State<Dim>& u, const GasModel& gas) {
  require_positive_density(u);
  Primitive<Dim> w;
  w.rho = u.rho();
  for (int d = 0; d < Dim; ++d) w.v[d] = u.momentum(d) / u.rho();
  w.p = pressure(u, gas);
  return w;
}

template <int Dim>
double internal_energy_density(const State<Dim>& u) {
  return u.energy() - kinetic_energy_density(u);
}

template <int Dim>
double pressure(const State<Dim>& u, const GasModel& gas) {
  require_positive_density(u);
  return (gas.gamma - 1.0) * internal_energy_density(u);
}

template <int Dim>
bool is_admissible(const State<Dim>& u, const GasModel& gas) {
  for (double v : u.q)
    if (!std::isfinite(v)) return false;
  if (!(u.rho() > 0.0)) return false;
  return (gas.gamma - 1.0) * internal_energy_density(u) > 0.0;
}

template <int Dim>
State<Dim> physical_flux(const State<Dim>& u, int dir, const GasModel& gas) {
  const double p = pressure(u, gas);
  const double vd = u.momentum(dir) / u.rho();
  State<Dim> f;
  f[0] = u.momentum(dir);
  for (int d = 0; d < Dim; ++d) f[1 + d] = u.momentum(d) * vd;
  f[1 + dir] += p;
  f[State<Dim>::kEnergy] = vd * (u.energy() + p);
  return f;
}

template <int Dim>
double max_wave_speed(const State<Dim>& ul, const State<Dim>& ur, int dir, const GasModel& gas) {
  const auto wl = admissible_primitive(ul, gas);
  const auto wr = admissible_primitive(ur, gas);
  const double cl = std::sqrt(gas.gamma * wl.p / wl.rho);
  const double cr = std::sqrt(gas.gamma * wr.p / wr.rho);
  return std::max(std::abs(wl.v[dir]) + cl, std::abs(wr.v[dir]) + cr);
}

template <int Dim>
double entropy(const State<Dim>& u, const GasModel& gas) {
  const auto w = admissible_primitive(u, gas);
  const double s = std::log(w.p) - gas.gamma * std::log(w.rho);
  return -w.rho * s / (gas.gamma - 1.0);
}

template <int Dim>
State<Dim> entropy_variables(const State<Dim>& u, const GasModel& gas) {
  const auto w = admissible_primitive(u, gas);
  const double s = std::log(w.p) - gas.gamma * std::log(w.rho);
  const double beta = 0.5 * w.rho / w.p;
  double v2 = 0.0;
  for (int d = 0; d < Dim; ++d) v2 += w.v[d] * w.v[d];
  State<Dim> v;
  v[0] = (gas.gamma - s) / (gas.gamma - 1.0) - beta * v2;
  for (int d = 0; d < Dim; ++d) v[1 + d] = 2.0 * beta * w.v[d];
  v[State<Dim>::kEnergy] = -2.0 * beta;
  return v;
}

template <int Dim>
double entropy_potential(const State<Dim>& u, int dir, const GasModel& gas) {
  const State<Dim> v = entropy_variables(u, gas);
  const State<Dim> f = physical_flux(u, dir, gas);
  const double vd = u.momentum(dir) / u.rho();
  return dot(v, f) - vd * entropy(u, gas);
}

double log_mean(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    std::ostringstream os;
    os << "logarithmic mean of non-positive arguments " << a << ", " << b;
    throw InvalidStateError(os.str());
  }
  if (a > b) std::swap(a, b);
  const double f = (b - a) / (a + b);
  const double u = f * f;
  if (u < 1e-4) return 0.5 * (a + b) / (1.0 + u / 3.0 + u * u / 5.0 + u * u * u / 7.0);
  return (b - a) / std::log(b / a);
}

VolumeFlux parse_volume_flux(std::string_view name) {
  if (name == "central") return VolumeFlux::central;
  if (name == "ranocha") return VolumeFlux::ranocha;
  if (name == "chandrashekar") return VolumeFlux::chandrashekar;
  throw ConfigError("unknown volume flux '" + std::string(name) + "'");
}

std::string_view to_string(VolumeFlux kind) {
  switch (kind) {
    case VolumeFlux::central: return "central";
    case VolumeFlux::ranocha: return "ranocha";
    case VolumeFlux::chandrashekar: return "chandrashekar";
  }
  return "?";
}

namespace {

// Entropy-conservative, kinetic-energy- and pressure-equilibrium-preserving flux
// of Ranocha: log means of rho and rho/p.
template <int Dim>
State<Dim> ranocha_flux(const Prim<Dim>& l, const Prim<Dim>& r, int dir, const GasModel& gas) {
  const double rho_mean = log_mean(l.rho, r.rho);
  const double inv_rho_p_mean = 1.0 / log_mean(l.rho / l.p, r.rho / r.p);
  const double p_avg = 0.5 * (l.p + r.p);
  double vel_prod = 0.0;
  std::array<double, Dim> v_avg{};
  for (int d = 0; d < Dim; ++d) {
    v_avg[d] = 0.5 * (l.v[d] + r.v[d]);
    vel_prod += 0.5 * (l.v[d] * r.v[d]);
  }
  State<Dim> f;
  f[0] = rho_mean * v_avg[dir];
  for (int d = 0; d < Dim; ++d) f[1 + d] = f[0] * v_avg[d];
  f[1 + dir] += p_avg;
  f[State<Dim>::kEnergy] = f[0] * (vel_prod + inv_rho_p_mean / (gas.gamma - 1.0)) +
                           0.5 * (l.p * r.v[dir] + r.p * l.v[dir]);
  return f;
}

// Entropy-conservative, kinetic-energy-preserving flux of Chandrashekar:
// log means of rho and beta = rho / (2p).
template <int Dim>
State<Dim> chandrashekar_flux(const Prim<Dim>& l, const Prim<Dim>& r, int dir,
                              const GasModel& gas) {
  const double beta_l = 0.5 * l.rho / l.p;
  const double beta_r = 0.5 * r.rho / r.p;
  const double rho_mean = log_mean(l.rho, r.rho);
  const double beta_mean = log_mean(beta_l, beta_r);
  const double rho_avg = 0.5 * (l.rho + r.rho);
  const double beta_avg = 0.5 * (beta_l + beta_r);
  const double p_mean = 0.5 * rho_avg / beta_avg;
  double v2_avg = 0.0;
  std::array<double, Dim> v_avg{};
  for (int d = 0; d < Dim; ++d) {
    v_avg[d] = 0.5 * (l.v[d] + r.v[d]);
    v2_avg += 0.5 * (l.v[d] * l.v[d] + r.v[d] * r.v[d]);
  }
  State<Dim> f;
  f[0] = rho_mean * v_avg[dir];
  for (int d = 0; d < Dim; ++d) f[1 + d] = f[0] * v_avg[d];
  f[1 + dir] += p_mean;
  double e = f[0] * 0.5 * (1.0 / ((gas.gamma - 1.0) * beta_mean) - v2_avg);
  for (int d = 0; d < Dim; ++d) e += f[1 + d] * v_avg[d];
  f[State<Dim>::kEnergy] = e;
  return f;
}

}  // namespace

template <int Dim>
State<Dim> two_point_flux(const State<Dim>& ul, const State<Dim>& ur, int dir, VolumeFlux kind,
                          const GasModel& gas) {
  switch (kind) {
    case VolumeFlux::central:
      return 0.5 * (physical_flux(ul, dir, gas) + physical_flux(ur, dir, gas));
    case VolumeFlux::ranocha:
      return ranocha_flux(admissible_primitive(ul, gas), admissible_primitive(ur, gas), dir, gas);
    case VolumeFlux::chandrashekar:
      return chandrashekar_flux(admissible_primitive(ul, gas), admissible_primitive(ur, gas), dir,
                                gas);
  }
  throw ConfigError("unhandled volume flux kind");
}

template <int Dim>
RusanovFlux<Dim> rusanov_flux(const State<Dim>& ul, const State<Dim>& ur, int dir,
                              const GasModel& gas) {
  RusanovFlux<Dim> out;
  out.lambda = max_wave_speed(ul, ur, dir, gas);
  const State<Dim> fl = physical_flux(ul, dir, gas);
  const State<Dim> fr = physical_flux(ur, dir, gas);
  for (int k = 0; k < State<Dim>::kNumEq; ++k)
    out.flux[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * out.lambda * (ur[k] - ul[k]);
  return out;
}

#define LGLMCL_INSTANTIATE_EULER(D)                                                          \
  template State<D> from_primitive<D>(const Primitive<D>&, const GasModel&);                 \
  template Primitive<D> to_primitive<D>(const State<D>&, const GasModel&);                   \
  template double internal_energy_density<D>(const State<D>&);                               \
  template double pressure<D>(const State<D>&, const GasModel&);                             \
  template bool is_admissible<D>(const State<D>&, const GasModel&);                          \
  template State<D> physical_flux<D>(const State<D>&, int, const GasModel&);                 \
  template double max_wave_speed<D>(const State<D>&, const State<D>&, int, const GasModel&); \
  template double entropy<D>(const State<D>&, const GasModel&);                              \
  template State<D> entropy_variables<D>(const State<D>&, const GasModel&);                  \
  template double entropy_potential<D>(const State<D>&, int, const GasModel&);               \
  template State<D> two_point_flux<D>(const State<D>&, const State<D>&, int, VolumeFlux,     \
                                      const GasModel&);                                      \
  template RusanovFlux<D> rusanov_flux<D>(const State<D>&, const State<D>&, int, const GasModel&);

LGLMCL_INSTANTIATE_EULER(1)
LGLMCL_INSTANTIATE_EULER(2)

#undef LGLMCL_INSTANTIATE_EULER

}  // namespace lglmcl
