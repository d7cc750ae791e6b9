#pragma once

// Reference implementations used only by the tests. They are written directly
// from the textbook formulas and share no kernels with the library beyond the
// pointwise physics (physical flux, wave speed, two-point flux).

#include <cmath>
#include <random>
#include <vector>

#include "lglmcl/basis.hpp"
#include "lglmcl/euler.hpp"
#include "lglmcl/semidisc.hpp"

namespace oracle {

using namespace lglmcl;

/// Lagrange derivative l'_j(x_i) from the product formula.
inline std::vector<std::vector<double>> lagrange_derivative(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        double prod = 1.0 / (x[j] - x[k]);
        for (std::size_t m = 0; m < n; ++m)
          if (m != j && m != k) prod *= (x[i] - x[m]) / (x[j] - x[m]);
        sum += prod;
      }
      d[i][j] = sum;
    }
  return d;
}

template <int Dim>
State<Dim> random_state(std::mt19937& rng, const GasModel& gas, double spread = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Primitive<Dim> w;
  w.rho = std::exp(spread * u(rng));
  for (int d = 0; d < Dim; ++d) w.v[d] = 2.0 * spread * u(rng);
  w.p = std::exp(spread * u(rng));
  return from_primitive(w, gas);
}

template <int Dim>
State<Dim> rusanov(const State<Dim>& a, const State<Dim>& b, int dir, const GasModel& gas) {
  const double lam = max_wave_speed(a, b, dir, gas);
  return 0.5 * (physical_flux(a, dir, gas) + physical_flux(b, dir, gas)) - (0.5 * lam) * (b - a);
}

/// Data of one element and its outer traces, in the library's node layout.
template <int Dim>
struct ElementData {
  int degree = 0;
  std::vector<State<Dim>> u;                         // (N+1)^Dim nodes
  std::vector<std::array<State<Dim>, 2>> outer[Dim]; // per direction, per line: lower/upper
  std::array<double, Dim> jac{};                     // dx_d / 2
};

template <int Dim>
int node_index(int n1, int dir, int k, int line) {
  if constexpr (Dim == 1) return k;
  else return dir == 0 ? k + n1 * line : line + n1 * k;
}

/// Strong-form DGSEM:  du_i/dt = -1/J_d [ sum_j D_ij f(u_j) + boundary corrections ].
/// With `split` the volume term is  sum_j 2 D_ij f*(u_i, u_j)  instead.
template <int Dim>
std::vector<State<Dim>> dgsem(const ElementData<Dim>& el, const GasModel& gas, bool split,
                              VolumeFlux kind) {
  const OperatorSet& ops = cached_operators(el.degree);
  const auto D = lagrange_derivative(ops.nodes);
  const int n1 = el.degree + 1;
  const int lines = static_cast<int>(el.u.size()) / n1;
  std::vector<State<Dim>> out(el.u.size());
  for (int dir = 0; dir < Dim; ++dir)
    for (int line = 0; line < lines; ++line)
      for (int i = 0; i < n1; ++i) {
        const State<Dim>& ui = el.u[node_index<Dim>(n1, dir, i, line)];
        State<Dim> vol{};
        for (int j = 0; j < n1; ++j) {
          const State<Dim>& uj = el.u[node_index<Dim>(n1, dir, j, line)];
          vol += split ? (2.0 * D[i][j]) * two_point_flux(ui, uj, dir, kind, gas)
                       : D[i][j] * physical_flux(uj, dir, gas);
        }
        const auto& o = el.outer[dir][line];
        if (i == 0)
          vol -= (1.0 / ops.weights[0]) * (rusanov(o[0], ui, dir, gas) - physical_flux(ui, dir, gas));
        if (i == n1 - 1)
          vol += (1.0 / ops.weights[i]) * (rusanov(ui, o[1], dir, gas) - physical_flux(ui, dir, gas));
        out[node_index<Dim>(n1, dir, i, line)] -= (1.0 / el.jac[dir]) * vol;
      }
  return out;
}

/// First-order subcell finite volumes on the LGL subgrid with Rusanov fluxes.
template <int Dim>
std::vector<State<Dim>> subcell_fv(const ElementData<Dim>& el, const GasModel& gas) {
  const OperatorSet& ops = cached_operators(el.degree);
  const int n1 = el.degree + 1;
  const int lines = static_cast<int>(el.u.size()) / n1;
  std::vector<State<Dim>> out(el.u.size());
  for (int dir = 0; dir < Dim; ++dir)
    for (int line = 0; line < lines; ++line)
      for (int i = 0; i < n1; ++i) {
        const auto& o = el.outer[dir][line];
        const State<Dim>& ui = el.u[node_index<Dim>(n1, dir, i, line)];
        const State<Dim>& left = i == 0 ? o[0] : el.u[node_index<Dim>(n1, dir, i - 1, line)];
        const State<Dim>& right = i == n1 - 1 ? o[1] : el.u[node_index<Dim>(n1, dir, i + 1, line)];
        const State<Dim> diff = rusanov(ui, right, dir, gas) - rusanov(left, ui, dir, gas);
        out[node_index<Dim>(n1, dir, i, line)] -= (1.0 / (el.jac[dir] * ops.weights[i])) * diff;
      }
  return out;
}

/// Low-order update written as  sum_j lambda_ij (bar_ij - u_i) / (J_d w_i).
template <int Dim>
std::vector<State<Dim>> bar_state_form(const ElementData<Dim>& el, const GasModel& gas) {
  const OperatorSet& ops = cached_operators(el.degree);
  const int n1 = el.degree + 1;
  const int lines = static_cast<int>(el.u.size()) / n1;
  std::vector<State<Dim>> out(el.u.size());
  auto bar = [&](const State<Dim>& a, const State<Dim>& b, int dir, double& lam) {
    lam = max_wave_speed(a, b, dir, gas);
    return 0.5 * (a + b) - (0.5 / lam) * (physical_flux(b, dir, gas) - physical_flux(a, dir, gas));
  };
  for (int dir = 0; dir < Dim; ++dir)
    for (int line = 0; line < lines; ++line)
      for (int i = 0; i < n1; ++i) {
        const auto& o = el.outer[dir][line];
        const State<Dim>& ui = el.u[node_index<Dim>(n1, dir, i, line)];
        const State<Dim>& left = i == 0 ? o[0] : el.u[node_index<Dim>(n1, dir, i - 1, line)];
        const State<Dim>& right = i == n1 - 1 ? o[1] : el.u[node_index<Dim>(n1, dir, i + 1, line)];
        double lam_l = 0.0, lam_r = 0.0;
        const State<Dim> bl = bar(left, ui, dir, lam_l);
        const State<Dim> br = bar(ui, right, dir, lam_r);
        out[node_index<Dim>(n1, dir, i, line)] +=
            (1.0 / (el.jac[dir] * ops.weights[i])) * (lam_l * (bl - ui) + lam_r * (br - ui));
      }
  return out;
}

/// Random element with moderately varying admissible states.
template <int Dim>
ElementData<Dim> random_element(int degree, std::mt19937& rng, const GasModel& gas) {
  ElementData<Dim> el;
  el.degree = degree;
  const int n1 = degree + 1;
  int npe = 1;
  for (int d = 0; d < Dim; ++d) npe *= n1;
  el.u.resize(npe);
  for (auto& s : el.u) s = random_state<Dim>(rng, gas, 0.5);
  std::uniform_real_distribution<double> h(0.05, 0.5);
  for (int d = 0; d < Dim; ++d) {
    el.jac[d] = h(rng);
    el.outer[d].resize(npe / n1);
    for (auto& o : el.outer[d]) o = {random_state<Dim>(rng, gas, 0.5), random_state<Dim>(rng, gas, 0.5)};
  }
  return el;
}

template <int Dim>
double max_diff(const std::vector<State<Dim>>& a, const std::vector<State<Dim>>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int q = 0; q < State<Dim>::kNumEq; ++q) m = std::max(m, std::abs(a[i][q] - b[i][q]));
  return m;
}

template <int Dim>
double max_abs(const std::vector<State<Dim>>& a) {
  double m = 0.0;
  for (const auto& s : a)
    for (int q = 0; q < State<Dim>::kNumEq; ++q) m = std::max(m, std::abs(s[q]));
  return m;
}

}  // namespace oracle
