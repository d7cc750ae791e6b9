#pragma once

#include <array>
#include <limits>
#include <string_view>

#include "lglmcl/euler.hpp"

namespace lglmcl {

// Sign convention used throughout: an interface joins a "lower" node a and an
// "upper" node b (b follows a in the coordinate direction). The directional
// flux is positive from a to b. The antidiffusive flux is stored as
//   dF = f_FV - f_DG,
// so that the limited bar state seen by the lower node is  bar + dF_lim / lambda
// and the one seen by the upper node is                     bar - dF_lim / lambda,
// and the hybrid flux is f = f_FV - dF_lim.

/// Which correction stages run and in which order.
///   off          unlimited high-order scheme (dF_lim = dF)
///   low_order    pure subcell finite volumes (dF_lim = 0)
///   global_only  rho >= 0 clamp, then pressure fix
///   A            rho, then sequential v_d and E, then pressure fix
///   B            rho, its effective factor applied to all components, then pressure fix
///   C            B's density step, then sequential v_d and E, then pressure fix
/// The entropy fix, when enabled, always runs last.
enum class Pipeline { off, low_order, global_only, A, B, C };
enum class PressureMode { sharp, cautious };

Pipeline parse_pipeline(std::string_view name);
std::string_view to_string(Pipeline p);
PressureMode parse_pressure_mode(std::string_view name);
std::string_view to_string(PressureMode m);

struct LimiterConfig {
  Pipeline pipeline = Pipeline::C;
  PressureMode pressure_mode = PressureMode::sharp;
  bool entropy_limiter = true;
  /// Division guard of the effective-factor and entropy-fix formulas.
  double epsilon = 1e-100;

  bool limits_density_locally() const;
  bool limits_sequentially() const;
  bool applies_pressure_fix() const;
  bool applies_entropy_fix() const;
};

/// Bounds of the controlled scalars at one node, indexed like the state:
/// 0 -> rho, 1..Dim -> v_d, Dim+1 -> E (specific total energy).
template <int Dim>
struct NodeBounds {
  static constexpr int kCount = Dim + 2;
  std::array<double, kCount> min{};
  std::array<double, kCount> max{};
};

/// rho, v_d = (rho v_d)/rho and E = (rho E)/rho of a state.
template <int Dim>
std::array<double, Dim + 2> controlled_quantities(const State<Dim>& u);

/// Bounds collapsed onto the node value (the (i,i) "bar state" of the stencil).
template <int Dim>
NodeBounds<Dim> bounds_at(const State<Dim>& u);

/// Widen `b` so that it contains the quantities of `bar`.
template <int Dim>
void include_in_bounds(NodeBounds<Dim>& b, const State<Dim>& bar);

/// Everything known about one subcell interface.
template <int Dim>
struct Interface {
  double lambda = 0.0;
  State<Dim> fv;              ///< low-order Rusanov flux
  State<Dim> dg;              ///< high-order flux-differencing flux
  State<Dim> antidiffusive;   ///< fv - dg
  State<Dim> limited;         ///< limited antidiffusive flux
  State<Dim> bar;             ///< low-order bar state

  /// Hybrid flux entering the nodal update.
  State<Dim> hybrid_flux() const { return fv - limited; }
};

/// Entropy variables and potentials of the two end nodes along the interface direction.
template <int Dim>
struct EntropyPair {
  State<Dim> v_lower;
  State<Dim> v_upper;
  double psi_lower = 0.0;
  double psi_upper = 0.0;
};

/// Effective factors of one interface, each in [0, 1].
/// Layout: [0] rho, [1..Dim] v_d, [Dim+1] E, [Dim+2] pressure fix, [Dim+3] entropy fix.
template <int Dim>
struct InterfaceFactors {
  static constexpr int kCount = Dim + 4;
  static constexpr int kPressure = Dim + 2;
  static constexpr int kEntropy = Dim + 3;
  std::array<double, kCount> alpha;

  InterfaceFactors() { alpha.fill(1.0); }
};

/// Clamp of one antidiffusive component so that bar +- dF/lambda stays in
/// [min_lower, max_lower] on the lower side and [min_upper, max_upper] on the
/// upper side. The result has the sign of `df` and no larger magnitude.
double limit_conservative(double df, double bar, double lambda, double min_lower,
                          double max_lower, double min_upper, double max_upper);

struct SequentialResult {
  double flux = 0.0;       ///< limited antidiffusive flux of rho*phi
  double g = 0.0;          ///< auxiliary flux before limiting
  double g_limited = 0.0;  ///< auxiliary flux after limiting
};

/// Product-rule limiter for phi = (rho phi)/rho. `df_rho_lim` is the already
/// limited density flux. Keeps
///   rho_lim_side * phi_min_side <= (rho phi)_lim_side <= rho_lim_side * phi_max_side
/// on both sides of the interface.
SequentialResult limit_sequential(double df_rhophi, double df_rho_lim, double bar_rho,
                                  double bar_rhophi, double lambda, double phi_min_lower,
                                  double phi_max_lower, double phi_min_upper,
                                  double phi_max_upper);

/// Coefficients of the quadratic pressure constraint A a^2 +- B a <= Q for the
/// scaled bar state w = lambda * bar and increment dF.
struct PressureCoefficients {
  double a = 0.0;
  double b = 0.0;
  double q = 0.0;
};

template <int Dim>
PressureCoefficients pressure_coefficients(const State<Dim>& df, const State<Dim>& bar,
                                           double lambda);

/// Synchronized factor alpha_p = min(1, Q / P) with the sharp P = max(0, A) + |B|
/// or the cautious upper bound of P.
template <int Dim>
double pressure_factor(const State<Dim>& df, const State<Dim>& bar, double lambda,
                       PressureMode mode);

/// Factor alpha_s such that [[v]]^T (f_FV - alpha_s dF) <= [[Psi]] (Tadmor).
template <int Dim>
double entropy_factor(const State<Dim>& df, const State<Dim>& fv, const EntropyPair<Dim>& ent,
                      double epsilon);

/// Ratio (limited + eps sgn(raw)) / (raw + eps sgn(raw)) clamped to [0, 1];
/// 1 when |raw| <= zero_tol.
double effective_factor(double limited, double raw, double epsilon, double zero_tol);

/// Runs the configured stages on one interior interface and writes
/// `ifc.limited`. Bounds must contain the low-order bar state (they do when
/// built by bounds_at/include_in_bounds). `entropy` may be null when the entropy
/// fix is disabled. No time-step information enters: the limited flux is a
/// function of the solution snapshot only.
template <int Dim>
InterfaceFactors<Dim> apply_pipeline(Interface<Dim>& ifc, const NodeBounds<Dim>& lower,
                                     const NodeBounds<Dim>& upper,
                                     const EntropyPair<Dim>* entropy,
                                     const LimiterConfig& config);

/// Worst violations found on a limited interface; all are <= 0 when satisfied
/// (bounds use slack 1e-10 * max(1, |phi_max|) inside the check).
struct InterfaceAudit {
  double bounds = -std::numeric_limits<double>::infinity();
  double pressure = -std::numeric_limits<double>::infinity();
  double tadmor = -std::numeric_limits<double>::infinity();

  void merge(const InterfaceAudit& o);
};

template <int Dim>
InterfaceAudit audit_interface(const Interface<Dim>& ifc, const NodeBounds<Dim>& lower,
                               const NodeBounds<Dim>& upper, const EntropyPair<Dim>* entropy,
                               const LimiterConfig& config);

}  // namespace lglmcl
