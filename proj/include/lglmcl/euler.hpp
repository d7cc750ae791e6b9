#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "lglmcl/error.hpp"

namespace lglmcl {

/// Conserved variables (rho, rho v_1 [, rho v_2], rho E) at one node.
/// The same vector type carries fluxes, entropy variables and increments.
template <int Dim>
struct State {
  static_assert(Dim == 1 || Dim == 2, "only 1D and 2D are supported");
  static constexpr int kNumEq = Dim + 2;
  static constexpr int kEnergy = Dim + 1;

  std::array<double, kNumEq> q{};

  double& operator[](int k) { return q[k]; }
  double operator[](int k) const { return q[k]; }

  double rho() const { return q[0]; }
  double momentum(int d) const { return q[1 + d]; }
  double energy() const { return q[kEnergy]; }

  State& operator+=(const State& o) {
    for (int k = 0; k < kNumEq; ++k) q[k] += o.q[k];
    return *this;
  }
  State& operator-=(const State& o) {
    for (int k = 0; k < kNumEq; ++k) q[k] -= o.q[k];
    return *this;
  }
  State& operator*=(double s) {
    for (auto& v : q) v *= s;
    return *this;
  }
  friend State operator+(State a, const State& b) { return a += b; }
  friend State operator-(State a, const State& b) { return a -= b; }
  friend State operator*(State a, double s) { return a *= s; }
  friend State operator*(double s, State a) { return a *= s; }
  friend bool operator==(const State&, const State&) = default;
};

template <int Dim>
double dot(const State<Dim>& a, const State<Dim>& b) {
  double s = 0.0;
  for (int k = 0; k < State<Dim>::kNumEq; ++k) s += a[k] * b[k];
  return s;
}

/// Calorically perfect gas, p = (gamma - 1) rho e.
struct GasModel {
  double gamma = 1.4;

  /// Accepts gamma in (1, 3]; throws ConfigError otherwise.
  void validate() const;
};

template <int Dim>
struct Primitive {
  double rho = 1.0;
  std::array<double, Dim> v{};
  double p = 1.0;
};

template <int Dim>
State<Dim> from_primitive(const Primitive<Dim>& w, const GasModel& gas);

template <int Dim>
Primitive<Dim> to_primitive(const State<Dim>& u, const GasModel& gas);

/// rho e = rho E - |rho v|^2 / (2 rho). No sign guarantee.
template <int Dim>
double internal_energy_density(const State<Dim>& u);

/// p = (gamma - 1)(rho E - |rho v|^2 / (2 rho)). Throws InvalidStateError if rho <= 0.
template <int Dim>
double pressure(const State<Dim>& u, const GasModel& gas);

/// rho > 0 and p > 0, both strict, and every component finite.
template <int Dim>
bool is_admissible(const State<Dim>& u, const GasModel& gas);

template <int Dim>
State<Dim> physical_flux(const State<Dim>& u, int dir, const GasModel& gas);

/// max(|v_l| + c_l, |v_r| + c_r) along `dir`.
template <int Dim>
double max_wave_speed(const State<Dim>& ul, const State<Dim>& ur, int dir, const GasModel& gas);

/// Mathematical entropy S = -rho s / (gamma - 1), s = ln(p rho^-gamma).
template <int Dim>
double entropy(const State<Dim>& u, const GasModel& gas);

/// dS/du = ((gamma - s)/(gamma - 1) - beta |v|^2, 2 beta v, -2 beta), beta = rho / (2p).
template <int Dim>
State<Dim> entropy_variables(const State<Dim>& u, const GasModel& gas);

/// Psi_d = v^T f_d(u) - v_d S(u), evaluated from its definition.
template <int Dim>
double entropy_potential(const State<Dim>& u, int dir, const GasModel& gas);

/// Logarithmic mean (a - b) / (ln a - ln b) with the series branch near a = b.
double log_mean(double a, double b);

enum class VolumeFlux { central, ranocha, chandrashekar };

VolumeFlux parse_volume_flux(std::string_view name);
std::string_view to_string(VolumeFlux kind);

/// Symmetric, consistent two-point volume flux f*(u_l, u_r) along `dir`.
template <int Dim>
State<Dim> two_point_flux(const State<Dim>& ul, const State<Dim>& ur, int dir, VolumeFlux kind,
                          const GasModel& gas);

template <int Dim>
struct RusanovFlux {
  State<Dim> flux;
  double lambda = 0.0;
};

/// Local Lax-Friedrichs flux from the left (lower) state to the right (upper) state:
/// (f_l + f_r)/2 - lambda/2 (u_r - u_l).
template <int Dim>
RusanovFlux<Dim> rusanov_flux(const State<Dim>& ul, const State<Dim>& ur, int dir,
                              const GasModel& gas);

}  // namespace lglmcl
