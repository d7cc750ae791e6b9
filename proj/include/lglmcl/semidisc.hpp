#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "lglmcl/basis.hpp"
#include "lglmcl/euler.hpp"
#include "lglmcl/limiter.hpp"
#include "lglmcl/mesh.hpp"

namespace lglmcl {

/// Highest polynomial degree supported by the fixed-size line buffers.
inline constexpr int kMaxDegree = 15;

/// Nodal states of all elements, element-major: index = e * nodes_per_element + n.
/// Within an element the node (i, j) has index i + (N+1) j.
template <int Dim>
using Field = std::vector<State<Dim>>;

// ---------------------------------------------------------------------------
// Line kernels. A line holds the N+1 nodes of one element along `dir` plus the
// two outer traces; it has N+2 interfaces, interface k joining node k-1 (lower)
// and node k (upper), where nodes -1 and N+1 are the outer traces.
// ---------------------------------------------------------------------------

/// High-order subcell fluxes: Rusanov surface fluxes at k = 0 and k = N+1, and
/// the partial sums  sum_{l<k} sum_m S_lm f*(u_l, u_m)  in between.
template <int Dim>
void subcell_dg_fluxes(std::span<const State<Dim>> nodes, const State<Dim>& outer_lower,
                       const State<Dim>& outer_upper, const OperatorSet& ops, int dir,
                       VolumeFlux kind, const GasModel& gas, std::span<State<Dim>> out);

/// Rusanov flux and wave speed at each of the N+2 interfaces.
template <int Dim>
void subcell_fv_fluxes(std::span<const State<Dim>> nodes, const State<Dim>& outer_lower,
                       const State<Dim>& outer_upper, int dir, const GasModel& gas,
                       std::span<State<Dim>> flux, std::span<double> lambda);

/// Low-order bar states  (u_a + u_b)/2 - (f_b - f_a)/(2 lambda)  per interface.
template <int Dim>
void bar_states(std::span<const State<Dim>> nodes, const State<Dim>& outer_lower,
                const State<Dim>& outer_upper, std::span<const double> lambda, int dir,
                const GasModel& gas, std::span<State<Dim>> out);

/// All interface data of one line (fv, dg, antidiffusive, bar, lambda); the
/// limited flux is initialised to the unlimited antidiffusive flux.
template <int Dim>
void line_interfaces(std::span<const State<Dim>> nodes, const State<Dim>& outer_lower,
                     const State<Dim>& outer_upper, const OperatorSet& ops, int dir,
                     VolumeFlux kind, const GasModel& gas, std::span<Interface<Dim>> out);

// ---------------------------------------------------------------------------
// Whole-mesh operator.
// ---------------------------------------------------------------------------

/// Per-node limiting factors (averaged over the node's 2*Dim interfaces) in the
/// layout of InterfaceFactors, followed by their product.
template <int Dim>
struct NodalFactors {
  static constexpr int kCount = InterfaceFactors<Dim>::kCount + 1;
  static constexpr int kCombined = InterfaceFactors<Dim>::kCount;
  std::vector<std::array<double, kCount>> values;
};

/// Optional outputs of one right-hand-side evaluation.
template <int Dim>
struct RhsExtras {
  NodalFactors<Dim>* factors = nullptr;
  /// When set, every interface (element boundaries included) is audited.
  InterfaceAudit* audit = nullptr;
};

template <int Dim>
class Discretization {
 public:
  Discretization(Mesh<Dim> mesh, int degree, GasModel gas, VolumeFlux volume_flux,
                 LimiterConfig limiter);

  const Mesh<Dim>& mesh() const { return mesh_; }
  const OperatorSet& ops() const { return *ops_; }
  const GasModel& gas() const { return gas_; }
  VolumeFlux volume_flux() const { return volume_flux_; }
  const LimiterConfig& limiter() const { return limiter_; }
  void set_limiter(const LimiterConfig& l) { limiter_ = l; }

  int degree() const { return ops_->degree; }
  int nodes_1d() const { return ops_->degree + 1; }
  int nodes_per_element() const { return nodes_per_element_; }
  std::size_t num_nodes() const {
    return static_cast<std::size_t>(mesh_.num_elements()) * nodes_per_element_;
  }

  /// Reference-to-element node index along each direction.
  std::array<int, Dim> node_coords(int n) const;
  Point<Dim> node_position(int e, int n) const;
  /// Quadrature weight prod_d w_{i_d} of a node (reference measure).
  double node_weight(int n) const;
  /// Diagonal mass entry J prod_d w_{i_d}.
  double mass(int n) const { return mesh_.jacobian() * node_weight(n); }

  Field<Dim> interpolate(const std::function<State<Dim>(const Point<Dim>&)>& fn) const;

  /// State across the face of element `e` for the face node on `line`
  /// (the index of the node in the other direction; 0 in 1D).
  State<Dim> outer_trace(const Field<Dim>& u, int e, int dir, int side, int line) const;

  /// du/dt for every node using the limited hybrid fluxes. Throws
  /// InvalidStateError naming element and node for inadmissible input, and
  /// SolverError for non-finite fluxes.
  void assemble_rhs(const Field<Dim>& u, Field<Dim>& dudt,
                    const RhsExtras<Dim>& extras = {}) const;

  /// CFL * min over nodes of 1 / sum_d (lambda_lower + lambda_upper) / (J_d w_{i_d}).
  double compute_dt(const Field<Dim>& u, double cfl) const;

  /// Throws InvalidStateError naming the first inadmissible node.
  void check_admissible(const Field<Dim>& u, const char* context) const;

  /// Integral of each conserved variable, sum_e sum_n J w_n u_n.
  State<Dim> totals(const Field<Dim>& u) const;

  /// Weighted mean of a nodal scalar, sum J w a / |Omega|.
  double mean(std::span<const double> nodal) const;

 private:
  int line_node(int dir, int k, int line) const;

  Mesh<Dim> mesh_;
  const OperatorSet* ops_;
  GasModel gas_;
  VolumeFlux volume_flux_;
  LimiterConfig limiter_;
  int nodes_per_element_;
};

}  // namespace lglmcl
