#include "lglmcl/semidisc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace lglmcl {

template <int Dim>
void subcell_dg_fluxes(std::span<const State<Dim>> nodes, const State<Dim>& outer_lower,
                       const State<Dim>& outer_upper, const OperatorSet& ops, int dir,
                       VolumeFlux kind, const GasModel& gas, std::span<State<Dim>> out) {
  const int n1 = static_cast<int>(nodes.size());
  out[0] = rusanov_flux(outer_lower, nodes[0], dir, gas).flux;
  out[n1] = rusanov_flux(nodes[n1 - 1], outer_upper, dir, gas).flux;

  // row[l] = sum_m S_lm f*(u_l, u_m); S is skew so each pair is evaluated once.
  std::array<State<Dim>, kMaxDegree + 1> row{};
  for (int l = 0; l < n1; ++l) {
    for (int m = l + 1; m < n1; ++m) {
      const State<Dim> f = two_point_flux(nodes[l], nodes[m], dir, kind, gas);
      row[l] += ops.S(l, m) * f;
      row[m] += ops.S(m, l) * f;
    }
  }
  State<Dim> partial{};
  for (int k = 1; k < n1; ++k) {
    partial += row[k - 1];
    out[k] = partial;
  }
}

template <int Dim>
void subcell_fv_fluxes(std::span<const State<Dim>> nodes, const State<Dim>& outer_lower,
                       const State<Dim>& outer_upper, int dir, const GasModel& gas,
                       std::span<State<Dim>> flux, std::span<double> lambda) {
  const int n1 = static_cast<int>(nodes.size());
  for (int k = 0; k <= n1; ++k) {
    const State<Dim>& a = k == 0 ? outer_lower : nodes[k - 1];
    const State<Dim>& b = k == n1 ? outer_upper : nodes[k];
    const RusanovFlux<Dim> r = rusanov_flux(a, b, dir, gas);
    flux[k] = r.flux;
    lambda[k] = r.lambda;
  }
}

template <int Dim>
void bar_states(std::span<const State<Dim>> nodes, const State<Dim>& outer_lower,
                const State<Dim>& outer_upper, std::span<const double> lambda, int dir,
                const GasModel& gas, std::span<State<Dim>> out) {
  const int n1 = static_cast<int>(nodes.size());
  for (int k = 0; k <= n1; ++k) {
    const State<Dim>& a = k == 0 ? outer_lower : nodes[k - 1];
    const State<Dim>& b = k == n1 ? outer_upper : nodes[k];
    const State<Dim> fa = physical_flux(a, dir, gas);
    const State<Dim> fb = physical_flux(b, dir, gas);
    for (int q = 0; q < State<Dim>::kNumEq; ++q)
      out[k][q] = 0.5 * (a[q] + b[q]) - (fb[q] - fa[q]) / (2.0 * lambda[k]);
  }
}

template <int Dim>
void line_interfaces(std::span<const State<Dim>> nodes, const State<Dim>& outer_lower,
                     const State<Dim>& outer_upper, const OperatorSet& ops, int dir,
                     VolumeFlux kind, const GasModel& gas, std::span<Interface<Dim>> out) {
  constexpr int kBuf = kMaxDegree + 2;
  const int n_ifc = static_cast<int>(nodes.size()) + 1;
  std::array<State<Dim>, kBuf> dg;
  std::array<State<Dim>, kBuf> fv;
  std::array<State<Dim>, kBuf> bar;
  std::array<double, kBuf> lambda;
  const std::span<State<Dim>> dg_s(dg.data(), n_ifc);
  const std::span<State<Dim>> fv_s(fv.data(), n_ifc);
  const std::span<State<Dim>> bar_s(bar.data(), n_ifc);
  const std::span<double> lambda_s(lambda.data(), n_ifc);

  subcell_dg_fluxes<Dim>(nodes, outer_lower, outer_upper, ops, dir, kind, gas, dg_s);
  subcell_fv_fluxes<Dim>(nodes, outer_lower, outer_upper, dir, gas, fv_s, lambda_s);
  bar_states<Dim>(nodes, outer_lower, outer_upper, lambda_s, dir, gas, bar_s);
  for (int k = 0; k < n_ifc; ++k) {
    Interface<Dim>& ifc = out[k];
    ifc.lambda = lambda[k];
    ifc.fv = fv[k];
    ifc.dg = dg[k];
    ifc.bar = bar[k];
    ifc.antidiffusive = fv[k] - dg[k];
    ifc.limited = ifc.antidiffusive;
  }
}

// ---------------------------------------------------------------------------

template <int Dim>
Discretization<Dim>::Discretization(Mesh<Dim> mesh, int degree, GasModel gas,
                                    VolumeFlux volume_flux, LimiterConfig limiter)
    : mesh_(std::move(mesh)),
      ops_(nullptr),
      gas_(gas),
      volume_flux_(volume_flux),
      limiter_(limiter),
      nodes_per_element_(1) {
  if (degree < 1 || degree > kMaxDegree)
    throw ConfigError("polynomial degree must lie in [1, " + std::to_string(kMaxDegree) +
                      "], got " + std::to_string(degree));
  mesh_.validate();
  gas_.validate();
  ops_ = &cached_operators(degree);
  for (int d = 0; d < Dim; ++d) nodes_per_element_ *= degree + 1;
}

template <int Dim>
std::array<int, Dim> Discretization<Dim>::node_coords(int n) const {
  std::array<int, Dim> c{};
  for (int d = 0; d < Dim; ++d) {
    c[d] = n % nodes_1d();
    n /= nodes_1d();
  }
  return c;
}

template <int Dim>
Point<Dim> Discretization<Dim>::node_position(int e, int n) const {
  const auto ce = mesh_.element_coords(e);
  const auto cn = node_coords(n);
  Point<Dim> x{};
  for (int d = 0; d < Dim; ++d) {
    const double h = mesh_.element_size(d);
    x[d] = mesh_.lower[d] + h * (ce[d] + 0.5 * (ops_->nodes[cn[d]] + 1.0));
  }
  return x;
}

template <int Dim>
double Discretization<Dim>::node_weight(int n) const {
  const auto cn = node_coords(n);
  double w = 1.0;
  for (int d = 0; d < Dim; ++d) w *= ops_->weights[cn[d]];
  return w;
}

template <int Dim>
Field<Dim> Discretization<Dim>::interpolate(
    const std::function<State<Dim>(const Point<Dim>&)>& fn) const {
  Field<Dim> u(num_nodes());
  for (int e = 0; e < mesh_.num_elements(); ++e)
    for (int n = 0; n < nodes_per_element_; ++n)
      u[static_cast<std::size_t>(e) * nodes_per_element_ + n] = fn(node_position(e, n));
  return u;
}

template <int Dim>
int Discretization<Dim>::line_node(int dir, int k, int line) const {
  if constexpr (Dim == 1) {
    return k;
  } else {
    return dir == 0 ? k + nodes_1d() * line : line + nodes_1d() * k;
  }
}

template <int Dim>
State<Dim> Discretization<Dim>::outer_trace(const Field<Dim>& u, int e, int dir, int side,
                                           int line) const {
  const int last = degree();
  auto c = mesh_.element_coords(e);
  c[dir] += side == 0 ? -1 : 1;
  const bool inside = c[dir] >= 0 && c[dir] < mesh_.elements[dir];
  const auto& bc = mesh_.boundary[face_index(dir, side)];
  if (inside || std::holds_alternative<Periodic>(bc)) {
    c[dir] = (c[dir] + mesh_.elements[dir]) % mesh_.elements[dir];
    const int neighbor = mesh_.element_index(c);
    const int k_out = side == 0 ? last : 0;
    return u[static_cast<std::size_t>(neighbor) * nodes_per_element_ + line_node(dir, k_out, line)];
  }
  const int n_in = line_node(dir, side == 0 ? 0 : last, line);
  return apply_boundary<Dim>(bc, u[static_cast<std::size_t>(e) * nodes_per_element_ + n_in],
                        node_position(e, n_in));
}

namespace {

template <int Dim>
[[noreturn]] void throw_at(const char* what, const char* context, int e, int n,
                           const State<Dim>& u) {
  std::ostringstream os;
  os.precision(17);
  os << context << ": " << what << " at element " << e << ", node " << n << " (";
  for (int k = 0; k < State<Dim>::kNumEq; ++k) os << (k ? ", " : "") << u[k];
  os << ")";
  throw InvalidStateError(os.str());
}

}  // namespace

template <int Dim>
void Discretization<Dim>::check_admissible(const Field<Dim>& u, const char* context) const {
  for (int e = 0; e < mesh_.num_elements(); ++e)
    for (int n = 0; n < nodes_per_element_; ++n) {
      const auto& s = u[static_cast<std::size_t>(e) * nodes_per_element_ + n];
      if (!is_admissible(s, gas_)) throw_at("inadmissible state", context, e, n, s);
    }
}

template <int Dim>
void Discretization<Dim>::assemble_rhs(const Field<Dim>& u, Field<Dim>& dudt,
                                       const RhsExtras<Dim>& extras) const {
  constexpr int kNumEq = State<Dim>::kNumEq;
  using Factors = InterfaceFactors<Dim>;
  const int n1 = nodes_1d();
  const int npe = nodes_per_element_;
  const int lines = npe / n1;
  const int n_ifc = n1 + 1;
  const bool want_bounds = limiter_.limits_density_locally();
  const bool want_entropy = limiter_.applies_entropy_fix();
  const bool limiting = limiter_.applies_pressure_fix();
  const double nodal_share = 1.0 / (2.0 * Dim);

  dudt.assign(u.size(), State<Dim>{});
  if (extras.factors) {
    extras.factors->values.assign(u.size(), {});
  }

  // Element workspace, reused across elements.
  std::vector<Interface<Dim>> ifc(static_cast<std::size_t>(Dim) * lines * n_ifc);
  std::vector<NodeBounds<Dim>> bounds(npe);
  std::vector<State<Dim>> ent_v(want_entropy ? npe : 0);
  std::vector<double> ent_psi(want_entropy ? static_cast<std::size_t>(Dim) * npe : 0);
  std::array<State<Dim>, kMaxDegree + 1> line_states;
  std::vector<std::array<State<Dim>, 2>> outer(static_cast<std::size_t>(Dim) * lines);

  auto ifc_at = [&](int dir, int line, int k) -> Interface<Dim>& {
    return ifc[(static_cast<std::size_t>(dir) * lines + line) * n_ifc + k];
  };

  for (int e = 0; e < mesh_.num_elements(); ++e) {
    const State<Dim>* ue = u.data() + static_cast<std::size_t>(e) * npe;
    State<Dim>* de = dudt.data() + static_cast<std::size_t>(e) * npe;
    for (int n = 0; n < npe; ++n)
      if (!is_admissible(ue[n], gas_)) throw_at("inadmissible state", "rhs", e, n, ue[n]);

    // Interface data along every line in every direction.
    for (int dir = 0; dir < Dim; ++dir) {
      for (int line = 0; line < lines; ++line) {
        for (int k = 0; k < n1; ++k) line_states[k] = ue[line_node(dir, k, line)];
        auto& out = outer[static_cast<std::size_t>(dir) * lines + line];
        out[0] = outer_trace(u, e, dir, 0, line);
        out[1] = outer_trace(u, e, dir, 1, line);
        for (int s = 0; s < 2; ++s)
          if (!is_admissible(out[s], gas_))
            throw_at("inadmissible outer trace", "rhs", e, line_node(dir, s == 0 ? 0 : n1 - 1, line),
                     out[s]);
        line_interfaces<Dim>(std::span<const State<Dim>>(line_states.data(), n1), out[0], out[1],
                             *ops_, dir, volume_flux_, gas_,
                             std::span<Interface<Dim>>(&ifc_at(dir, line, 0), n_ifc));
        // Surface fluxes coincide, so the element-boundary antidiffusive flux vanishes.
        ifc_at(dir, line, 0).antidiffusive = State<Dim>{};
        ifc_at(dir, line, n1).antidiffusive = State<Dim>{};
      }
    }

    // Local bounds from the node values and every adjacent bar state.
    if (want_bounds || extras.audit) {
      for (int n = 0; n < npe; ++n) bounds[n] = bounds_at(ue[n]);
      for (int dir = 0; dir < Dim; ++dir)
        for (int line = 0; line < lines; ++line)
          for (int k = 0; k < n_ifc; ++k) {
            const State<Dim>& bar = ifc_at(dir, line, k).bar;
            if (k > 0) include_in_bounds(bounds[line_node(dir, k - 1, line)], bar);
            if (k < n1) include_in_bounds(bounds[line_node(dir, k, line)], bar);
          }
    }

    if (want_entropy) {
      for (int n = 0; n < npe; ++n) {
        ent_v[n] = entropy_variables(ue[n], gas_);
        for (int dir = 0; dir < Dim; ++dir)
          ent_psi[static_cast<std::size_t>(dir) * npe + n] = entropy_potential(ue[n], dir, gas_);
      }
    }

    auto* nodal = extras.factors ? extras.factors->values.data() + static_cast<std::size_t>(e) * npe
                                 : nullptr;
    auto add_nodal = [&](int n, const Factors& f) {
      if (!nodal) return;
      double combined = 1.0;
      for (int q = 0; q < Factors::kCount; ++q) {
        nodal[n][q] += nodal_share * f.alpha[q];
        combined *= f.alpha[q];
      }
      nodal[n][NodalFactors<Dim>::kCombined] += nodal_share * combined;
    };

    for (int dir = 0; dir < Dim; ++dir) {
      const double jac = mesh_.jacobian(dir);
      for (int line = 0; line < lines; ++line) {
        const auto& out = outer[static_cast<std::size_t>(dir) * lines + line];
        for (int k = 0; k < n_ifc; ++k) {
          Interface<Dim>& f = ifc_at(dir, line, k);
          const bool boundary = k == 0 || k == n1;
          const int lo = boundary && k == 0 ? -1 : line_node(dir, k - 1, line);
          const int hi = boundary && k == n1 ? -1 : line_node(dir, k, line);

          EntropyPair<Dim> pair;
          const bool audit_entropy = extras.audit && want_entropy;
          if (want_entropy && (!boundary || audit_entropy)) {
            if (lo >= 0) {
              pair.v_lower = ent_v[lo];
              pair.psi_lower = ent_psi[static_cast<std::size_t>(dir) * npe + lo];
            } else {
              pair.v_lower = entropy_variables(out[0], gas_);
              pair.psi_lower = entropy_potential(out[0], dir, gas_);
            }
            if (hi >= 0) {
              pair.v_upper = ent_v[hi];
              pair.psi_upper = ent_psi[static_cast<std::size_t>(dir) * npe + hi];
            } else {
              pair.v_upper = entropy_variables(out[1], gas_);
              pair.psi_upper = entropy_potential(out[1], dir, gas_);
            }
          }

          Factors factors;
          if (boundary) {
            f.limited = State<Dim>{};
          } else if (limiter_.pipeline == Pipeline::off) {
            f.limited = f.antidiffusive;
          } else {
            const NodeBounds<Dim>& b_lo = bounds[lo];
            const NodeBounds<Dim>& b_hi = bounds[hi];
            factors = apply_pipeline(f, b_lo, b_hi, want_entropy ? &pair : nullptr, limiter_);
          }

          if (extras.audit && (limiting || want_entropy)) {
            const NodeBounds<Dim> own_lo = lo >= 0 ? bounds[lo] : bounds_at(f.bar);
            const NodeBounds<Dim> own_hi = hi >= 0 ? bounds[hi] : bounds_at(f.bar);
            extras.audit->merge(
                audit_interface(f, own_lo, own_hi, want_entropy ? &pair : nullptr, limiter_));
          }

          const State<Dim> flux = f.hybrid_flux();
          for (int q = 0; q < kNumEq; ++q) {
            if (!std::isfinite(flux[q])) {
              std::ostringstream os;
              os << "rhs: non-finite flux at element " << e << ", direction " << dir << ", line "
                 << line << ", interface " << k;
              throw SolverError(os.str());
            }
          }
          if (lo >= 0) {
            de[lo] -= flux * (1.0 / (jac * ops_->weights[k - 1]));
            add_nodal(lo, factors);
          }
          if (hi >= 0) {
            de[hi] += flux * (1.0 / (jac * ops_->weights[k]));
            add_nodal(hi, factors);
          }
        }
      }
    }
  }
}

template <int Dim>
double Discretization<Dim>::compute_dt(const Field<Dim>& u, double cfl) const {
  const int n1 = nodes_1d();
  const int npe = nodes_per_element_;
  const int lines = npe / n1;
  std::vector<double> rate(npe);
  std::array<double, kMaxDegree + 2> lambda{};
  double max_rate = 0.0;
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    const State<Dim>* ue = u.data() + static_cast<std::size_t>(e) * npe;
    std::fill(rate.begin(), rate.end(), 0.0);
    for (int dir = 0; dir < Dim; ++dir) {
      const double jac = mesh_.jacobian(dir);
      for (int line = 0; line < lines; ++line) {
        const State<Dim> lower = outer_trace(u, e, dir, 0, line);
        const State<Dim> upper = outer_trace(u, e, dir, 1, line);
        for (int k = 0; k <= n1; ++k) {
          const State<Dim>& a = k == 0 ? lower : ue[line_node(dir, k - 1, line)];
          const State<Dim>& b = k == n1 ? upper : ue[line_node(dir, k, line)];
          lambda[k] = max_wave_speed(a, b, dir, gas_);
          if (!std::isfinite(lambda[k])) {
            std::ostringstream os;
            os << "compute_dt: non-finite wave speed at element " << e;
            throw SolverError(os.str());
          }
        }
        for (int k = 0; k < n1; ++k)
          rate[line_node(dir, k, line)] += (lambda[k] + lambda[k + 1]) / (jac * ops_->weights[k]);
      }
    }
    for (double r : rate) max_rate = std::max(max_rate, r);
  }
  if (!(max_rate > 0.0)) throw SolverError("compute_dt: zero wave speed everywhere");
  return cfl / max_rate;
}

template <int Dim>
State<Dim> Discretization<Dim>::totals(const Field<Dim>& u) const {
  State<Dim> sum{};
  for (int e = 0; e < mesh_.num_elements(); ++e)
    for (int n = 0; n < nodes_per_element_; ++n)
      sum += mass(n) * u[static_cast<std::size_t>(e) * nodes_per_element_ + n];
  return sum;
}

template <int Dim>
double Discretization<Dim>::mean(std::span<const double> nodal) const {
  double sum = 0.0;
  for (int e = 0; e < mesh_.num_elements(); ++e)
    for (int n = 0; n < nodes_per_element_; ++n)
      sum += mass(n) * nodal[static_cast<std::size_t>(e) * nodes_per_element_ + n];
  return sum / mesh_.measure();
}

#define LGLMCL_INSTANTIATE_SEMIDISC(D)                                                          \
  template void subcell_dg_fluxes<D>(std::span<const State<D>>, const State<D>&,                \
                                     const State<D>&, const OperatorSet&, int, VolumeFlux,      \
                                     const GasModel&, std::span<State<D>>);                     \
  template void subcell_fv_fluxes<D>(std::span<const State<D>>, const State<D>&,                \
                                     const State<D>&, int, const GasModel&,                     \
                                     std::span<State<D>>, std::span<double>);                   \
  template void bar_states<D>(std::span<const State<D>>, const State<D>&, const State<D>&,      \
                              std::span<const double>, int, const GasModel&,                    \
                              std::span<State<D>>);                                             \
  template void line_interfaces<D>(std::span<const State<D>>, const State<D>&, const State<D>&, \
                                   const OperatorSet&, int, VolumeFlux, const GasModel&,        \
                                   std::span<Interface<D>>);                                    \
  template class Discretization<D>;

LGLMCL_INSTANTIATE_SEMIDISC(1)
LGLMCL_INSTANTIATE_SEMIDISC(2)

#undef LGLMCL_INSTANTIATE_SEMIDISC

}  // namespace lglmcl
