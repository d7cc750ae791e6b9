#include "lglmcl/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace lglmcl {

Pipeline parse_pipeline(std::string_view name) {
  if (name == "off") return Pipeline::off;
  if (name == "fv" || name == "low_order") return Pipeline::low_order;
  if (name == "global" || name == "global_only") return Pipeline::global_only;
  if (name == "A") return Pipeline::A;
  if (name == "B") return Pipeline::B;
  if (name == "C") return Pipeline::C;
  throw ConfigError("unknown limiter pipeline '" + std::string(name) + "'");
}

std::string_view to_string(Pipeline p) {
  switch (p) {
    case Pipeline::off: return "off";
    case Pipeline::low_order: return "fv";
    case Pipeline::global_only: return "global";
    case Pipeline::A: return "A";
    case Pipeline::B: return "B";
    case Pipeline::C: return "C";
  }
  return "?";
}

PressureMode parse_pressure_mode(std::string_view name) {
  if (name == "sharp") return PressureMode::sharp;
  if (name == "cautious") return PressureMode::cautious;
  throw ConfigError("unknown pressure mode '" + std::string(name) + "'");
}

std::string_view to_string(PressureMode m) {
  return m == PressureMode::sharp ? "sharp" : "cautious";
}

bool LimiterConfig::limits_density_locally() const {
  return pipeline == Pipeline::A || pipeline == Pipeline::B || pipeline == Pipeline::C;
}

bool LimiterConfig::limits_sequentially() const {
  return pipeline == Pipeline::A || pipeline == Pipeline::C;
}

bool LimiterConfig::applies_pressure_fix() const {
  return pipeline == Pipeline::global_only || limits_density_locally();
}

bool LimiterConfig::applies_entropy_fix() const {
  return entropy_limiter && applies_pressure_fix();
}

template <int Dim>
std::array<double, Dim + 2> controlled_quantities(const State<Dim>& u) {
  std::array<double, Dim + 2> phi;
  phi[0] = u.rho();
  for (int k = 1; k < Dim + 2; ++k) phi[k] = u[k] / u.rho();
  return phi;
}

template <int Dim>
NodeBounds<Dim> bounds_at(const State<Dim>& u) {
  NodeBounds<Dim> b;
  b.min = controlled_quantities(u);
  b.max = b.min;
  return b;
}

template <int Dim>
void include_in_bounds(NodeBounds<Dim>& b, const State<Dim>& bar) {
  const auto phi = controlled_quantities(bar);
  for (int k = 0; k < NodeBounds<Dim>::kCount; ++k) {
    b.min[k] = std::min(b.min[k], phi[k]);
    b.max[k] = std::max(b.max[k], phi[k]);
  }
}

namespace {

[[noreturn]] void throw_infeasible(const char* stage, double bound) {
  std::ostringstream os;
  os.precision(17);
  os << stage << ": infeasible bounds, bar state lies outside by " << bound;
  throw InvariantViolation(os.str());
}

}  // namespace

double limit_conservative(double df, double bar, double lambda, double min_lower,
                          double max_lower, double min_upper, double max_upper) {
  if (df >= 0.0) {
    const double plus = lambda * std::min(max_lower - bar, bar - min_upper);
    if (plus < 0.0) throw_infeasible("conservative limiter", plus);
    return std::min(df, plus);
  }
  const double minus = lambda * std::max(min_lower - bar, bar - max_upper);
  if (minus > 0.0) throw_infeasible("conservative limiter", minus);
  return std::max(df, minus);
}

SequentialResult limit_sequential(double df_rhophi, double df_rho_lim, double bar_rho,
                                  double bar_rhophi, double lambda, double phi_min_lower,
                                  double phi_max_lower, double phi_min_upper,
                                  double phi_max_upper) {
  // lambda times the limited density bar state on each side.
  const double rho_lower = lambda * bar_rho + df_rho_lim;
  const double rho_upper = lambda * bar_rho - df_rho_lim;
  if (!(rho_lower > 0.0) || !(rho_upper > 0.0)) {
    std::ostringstream os;
    os << "sequential limiter: limited density bar state not positive (" << rho_lower / lambda
       << ", " << rho_upper / lambda << ")";
    throw InvariantViolation(os.str());
  }
  const double phi = bar_rhophi / bar_rho;

  SequentialResult r;
  r.g = df_rhophi - df_rho_lim * phi;
  if (r.g >= 0.0) {
    const double plus =
        std::min(rho_lower * (phi_max_lower - phi), rho_upper * (phi - phi_min_upper));
    if (plus < 0.0) throw_infeasible("sequential limiter", plus);
    r.g_limited = std::min(r.g, plus);
  } else {
    const double minus =
        std::max(rho_lower * (phi_min_lower - phi), rho_upper * (phi - phi_max_upper));
    if (minus > 0.0) throw_infeasible("sequential limiter", minus);
    r.g_limited = std::max(r.g, minus);
  }
  r.flux = r.g_limited + df_rho_lim * phi;
  return r;
}

template <int Dim>
PressureCoefficients pressure_coefficients(const State<Dim>& df, const State<Dim>& bar,
                                           double lambda) {
  constexpr int kE = State<Dim>::kEnergy;
  const double w_rho = lambda * bar[0];
  const double w_e = lambda * bar[kE];
  PressureCoefficients c;
  double dm2 = 0.0;
  double wm2 = 0.0;
  double wm_dm = 0.0;
  for (int d = 0; d < Dim; ++d) {
    const double wm = lambda * bar[1 + d];
    dm2 += df[1 + d] * df[1 + d];
    wm2 += wm * wm;
    wm_dm += wm * df[1 + d];
  }
  c.a = 0.5 * dm2 - df[0] * df[kE];
  c.b = wm_dm - w_rho * df[kE] - w_e * df[0];
  c.q = w_rho * w_e - 0.5 * wm2;
  return c;
}

template <int Dim>
double pressure_factor(const State<Dim>& df, const State<Dim>& bar, double lambda,
                       PressureMode mode) {
  constexpr int kE = State<Dim>::kEnergy;
  const PressureCoefficients c = pressure_coefficients(df, bar, lambda);
  double p = std::max(0.0, c.a);
  if (mode == PressureMode::sharp) {
    p += std::abs(c.b);
  } else {
    double wm2 = 0.0;
    double dm2 = 0.0;
    for (int d = 0; d < Dim; ++d) {
      wm2 += lambda * bar[1 + d] * lambda * bar[1 + d];
      dm2 += df[1 + d] * df[1 + d];
    }
    p += std::sqrt(wm2) * std::sqrt(dm2) + std::abs(lambda * bar[0] * df[kE]) +
         std::abs(lambda * bar[kE] * df[0]);
  }
  if (p > c.q) return std::max(0.0, c.q / p);
  return 1.0;
}

template <int Dim>
double entropy_factor(const State<Dim>& df, const State<Dim>& fv, const EntropyPair<Dim>& ent,
                      double epsilon) {
  const State<Dim> jump_v = ent.v_upper - ent.v_lower;
  const double jump_psi = ent.psi_upper - ent.psi_lower;
  const double low_order = dot(jump_v, fv);
  const double correction = -dot(jump_v, df);
  if (low_order + correction > jump_psi) {
    const double alpha = (jump_psi - low_order + epsilon) / (correction + epsilon);
    return std::clamp(alpha, 0.0, 1.0);
  }
  return 1.0;
}

double effective_factor(double limited, double raw, double epsilon, double zero_tol) {
  if (std::abs(raw) <= zero_tol) return 1.0;
  const double s = raw > 0.0 ? epsilon : -epsilon;
  return std::clamp((limited + s) / (raw + s), 0.0, 1.0);
}

namespace {

constexpr double kZeroRel = 1e-14;

template <int Dim>
double flux_scale(const Interface<Dim>& ifc, int k) {
  return kZeroRel * (std::abs(ifc.fv[k]) + ifc.lambda * std::abs(ifc.bar[k]));
}

// Sequential stage for v_d and E, starting from `input` (raw or density-scaled).
template <int Dim>
void sequential_stage(const Interface<Dim>& ifc, const State<Dim>& input,
                      const NodeBounds<Dim>& lower, const NodeBounds<Dim>& upper,
                      const LimiterConfig& config, State<Dim>& lim,
                      InterfaceFactors<Dim>& factors) {
  for (int k = 1; k < State<Dim>::kNumEq; ++k) {
    const SequentialResult r =
        limit_sequential(input[k], lim[0], ifc.bar[0], ifc.bar[k], ifc.lambda, lower.min[k],
                         lower.max[k], upper.min[k], upper.max[k]);
    lim[k] = r.flux;
    factors.alpha[k] = effective_factor(r.g_limited, r.g, config.epsilon, flux_scale(ifc, k));
  }
}

}  // namespace

template <int Dim>
InterfaceFactors<Dim> apply_pipeline(Interface<Dim>& ifc, const NodeBounds<Dim>& lower,
                                     const NodeBounds<Dim>& upper,
                                     const EntropyPair<Dim>* entropy,
                                     const LimiterConfig& config) {
  constexpr int kNumEq = State<Dim>::kNumEq;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  InterfaceFactors<Dim> factors;
  const State<Dim>& df = ifc.antidiffusive;
  State<Dim> lim = df;

  switch (config.pipeline) {
    case Pipeline::off:
      ifc.limited = df;
      return factors;
    case Pipeline::low_order:
      ifc.limited = State<Dim>{};
      for (int k = 0; k < kNumEq; ++k)
        factors.alpha[k] = effective_factor(0.0, df[k], config.epsilon, flux_scale(ifc, k));
      factors.alpha[InterfaceFactors<Dim>::kPressure] = 0.0;
      factors.alpha[InterfaceFactors<Dim>::kEntropy] = 0.0;
      return factors;
    case Pipeline::global_only:
      lim[0] = limit_conservative(df[0], ifc.bar[0], ifc.lambda, 0.0, kInf, 0.0, kInf);
      factors.alpha[0] = effective_factor(lim[0], df[0], config.epsilon, flux_scale(ifc, 0));
      break;
    case Pipeline::A:
      lim[0] = limit_conservative(df[0], ifc.bar[0], ifc.lambda, lower.min[0], lower.max[0],
                                  upper.min[0], upper.max[0]);
      factors.alpha[0] = effective_factor(lim[0], df[0], config.epsilon, flux_scale(ifc, 0));
      sequential_stage(ifc, df, lower, upper, config, lim, factors);
      break;
    case Pipeline::B:
    case Pipeline::C: {
      lim[0] = limit_conservative(df[0], ifc.bar[0], ifc.lambda, lower.min[0], lower.max[0],
                                  upper.min[0], upper.max[0]);
      const double alpha_rho =
          effective_factor(lim[0], df[0], config.epsilon, flux_scale(ifc, 0));
      factors.alpha[0] = alpha_rho;
      for (int k = 1; k < kNumEq; ++k) {
        lim[k] = alpha_rho * df[k];
        factors.alpha[k] = alpha_rho;
      }
      if (config.pipeline == Pipeline::C) {
        const State<Dim> scaled = lim;
        sequential_stage(ifc, scaled, lower, upper, config, lim, factors);
      }
      break;
    }
  }

  const double alpha_p = pressure_factor(lim, ifc.bar, ifc.lambda, config.pressure_mode);
  if (alpha_p < 1.0) lim *= alpha_p;
  factors.alpha[InterfaceFactors<Dim>::kPressure] = alpha_p;

  if (config.entropy_limiter && entropy != nullptr) {
    const double alpha_s = entropy_factor(lim, ifc.fv, *entropy, config.epsilon);
    if (alpha_s < 1.0) lim *= alpha_s;
    factors.alpha[InterfaceFactors<Dim>::kEntropy] = alpha_s;
  }

  ifc.limited = lim;
  return factors;
}

void InterfaceAudit::merge(const InterfaceAudit& o) {
  bounds = std::max(bounds, o.bounds);
  pressure = std::max(pressure, o.pressure);
  tadmor = std::max(tadmor, o.tadmor);
}

namespace {

double excess(double value, double lo, double hi) {
  const double scale = std::max(1.0, std::abs(hi));
  return std::max(lo - value, value - hi) / scale;
}

}  // namespace

template <int Dim>
InterfaceAudit audit_interface(const Interface<Dim>& ifc, const NodeBounds<Dim>& lower,
                               const NodeBounds<Dim>& upper, const EntropyPair<Dim>* entropy,
                               const LimiterConfig& config) {
  constexpr int kE = State<Dim>::kEnergy;
  InterfaceAudit audit;
  const State<Dim> side[2] = {ifc.bar + ifc.limited * (1.0 / ifc.lambda),
                              ifc.bar - ifc.limited * (1.0 / ifc.lambda)};
  const NodeBounds<Dim>* bounds[2] = {&lower, &upper};

  for (int s = 0; s < 2; ++s) {
    const State<Dim>& u = side[s];
    const auto phi = controlled_quantities(u);
    if (config.limits_density_locally()) {
      audit.bounds = std::max(audit.bounds, excess(phi[0], bounds[s]->min[0], bounds[s]->max[0]));
    } else if (config.pipeline == Pipeline::global_only) {
      audit.bounds = std::max(audit.bounds, -u.rho());
    }
    if (config.limits_sequentially()) {
      for (int k = 1; k < NodeBounds<Dim>::kCount; ++k)
        audit.bounds =
            std::max(audit.bounds, excess(phi[k], bounds[s]->min[k], bounds[s]->max[k]));
    }
    if (config.applies_pressure_fix()) {
      double m2 = 0.0;
      for (int d = 0; d < Dim; ++d) m2 += u.momentum(d) * u.momentum(d);
      const double value = u.rho() * u[kE] - 0.5 * m2;
      const double scale = std::abs(u.rho() * u[kE]) + 0.5 * m2 + 1e-300;
      audit.pressure = std::max(audit.pressure, -value / scale);
    }
  }

  if (config.applies_entropy_fix() && entropy != nullptr) {
    const State<Dim> f = ifc.hybrid_flux();
    const State<Dim> jump_v = entropy->v_upper - entropy->v_lower;
    const double jump_psi = entropy->psi_upper - entropy->psi_lower;
    // Magnitude of the entropy fluxes involved, not of their (possibly vanishing) jumps.
    double scale = std::abs(entropy->psi_lower) + std::abs(entropy->psi_upper) + 1e-300;
    for (int k = 0; k < State<Dim>::kNumEq; ++k)
      scale += (std::abs(entropy->v_lower[k]) + std::abs(entropy->v_upper[k])) *
               (std::abs(f[k]) + ifc.lambda * std::abs(ifc.bar[k]));
    audit.tadmor = (dot(jump_v, f) - jump_psi) / scale;
  }
  return audit;
}

#define LGLMCL_INSTANTIATE_LIMITER(D)                                                            \
  template std::array<double, D + 2> controlled_quantities<D>(const State<D>&);                  \
  template NodeBounds<D> bounds_at<D>(const State<D>&);                                          \
  template void include_in_bounds<D>(NodeBounds<D>&, const State<D>&);                           \
  template PressureCoefficients pressure_coefficients<D>(const State<D>&, const State<D>&,       \
                                                         double);                                \
  template double pressure_factor<D>(const State<D>&, const State<D>&, double, PressureMode);    \
  template double entropy_factor<D>(const State<D>&, const State<D>&, const EntropyPair<D>&,     \
                                    double);                                                     \
  template InterfaceFactors<D> apply_pipeline<D>(Interface<D>&, const NodeBounds<D>&,            \
                                                 const NodeBounds<D>&, const EntropyPair<D>*,    \
                                                 const LimiterConfig&);                          \
  template InterfaceAudit audit_interface<D>(const Interface<D>&, const NodeBounds<D>&,          \
                                             const NodeBounds<D>&, const EntropyPair<D>*,        \
                                             const LimiterConfig&);

LGLMCL_INSTANTIATE_LIMITER(1)
LGLMCL_INSTANTIATE_LIMITER(2)

#undef LGLMCL_INSTANTIATE_LIMITER

}  // namespace lglmcl
