#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lglmcl/error.hpp"

namespace lglmcl {

struct TimeControl {
  double cfl = 0.9;
  double t_final = 1.0;
  double t = 0.0;
  long step = 0;
  double dt = 0.0;

  /// Throws ConfigError unless 0 < cfl <= 1 and t_final > 0.
  void validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0))
      throw ConfigError("CFL number must lie in (0, 1], got " + std::to_string(cfl));
    if (!(t_final > 0.0 && std::isfinite(t_final)))
      throw ConfigError("final time must be positive, got " + std::to_string(t_final));
  }

  /// Clips a proposed step so that it lands exactly on `t_stop`.
  double clip(double proposed, double t_stop) const {
    if (!(proposed > 0.0) || !std::isfinite(proposed))
      throw SolverError("time step must be positive and finite, got " + std::to_string(proposed));
    const double remaining = t_stop - t;
    // Avoid a sliver step when the remainder is within roundoff of a full step.
    if (proposed >= remaining * (1.0 - 1e-12)) return remaining;
    return proposed;
  }
};

/// du/dt = L(u) evaluated into `out`.
template <typename T>
using RhsFunction = std::function<void(const std::vector<T>&, std::vector<T>&)>;

/// Called after every stage with the stage index (1..3) and the stage solution;
/// throws to abort the step.
template <typename T>
using StageCheck = std::function<void(int, const std::vector<T>&)>;

/// Three-stage, third-order strong-stability-preserving Runge-Kutta step
/// (Shu-Osher form). Each stage is a convex combination of forward-Euler steps.
template <typename T>
void step_ssprk3(std::vector<T>& u, double dt, const RhsFunction<T>& rhs,
                 const StageCheck<T>& check = {}) {
  const std::size_t n = u.size();
  std::vector<T> k(n);
  std::vector<T> stage(n);

  rhs(u, k);
  for (std::size_t i = 0; i < n; ++i) stage[i] = u[i] + dt * k[i];
  if (check) check(1, stage);

  rhs(stage, k);
  for (std::size_t i = 0; i < n; ++i) stage[i] = 0.75 * u[i] + 0.25 * (stage[i] + dt * k[i]);
  if (check) check(2, stage);

  rhs(stage, k);
  for (std::size_t i = 0; i < n; ++i)
    stage[i] = (1.0 / 3.0) * u[i] + (2.0 / 3.0) * (stage[i] + dt * k[i]);
  if (check) check(3, stage);

  u.swap(stage);
}

}  // namespace lglmcl
