#pragma once

#include <array>
#include <functional>
#include <variant>

#include "lglmcl/euler.hpp"

namespace lglmcl {

template <int Dim>
using Point = std::array<double, Dim>;

struct Periodic {};

/// Zero-gradient outflow: the outer state copies the inner trace.
struct Outflow {};

/// Dirichlet state prescribed as a function of the boundary position.
template <int Dim>
struct Inflow {
  std::function<State<Dim>(const Point<Dim>&)> state;
};

template <int Dim>
using BoundaryCondition = std::variant<Periodic, Outflow, Inflow<Dim>>;

/// Face numbering: 2*dir + side, side 0 at the lower coordinate, 1 at the upper.
constexpr int face_index(int dir, int side) { return 2 * dir + side; }

/// Uniform Cartesian box [lower, upper] with `elements[d]` elements along d.
template <int Dim>
struct Mesh {
  std::array<int, Dim> elements{};
  Point<Dim> lower{};
  Point<Dim> upper{};
  std::array<BoundaryCondition<Dim>, 2 * Dim> boundary{};

  /// Throws ConfigError on non-positive sizes or unpaired periodic faces.
  void validate() const;

  int num_elements() const;
  double element_size(int dir) const { return (upper[dir] - lower[dir]) / elements[dir]; }
  /// Jacobian of the reference-to-physical map along one direction, dx/2.
  double jacobian(int dir) const { return 0.5 * element_size(dir); }
  /// Volume Jacobian J = prod_d dx_d / 2.
  double jacobian() const;
  double measure() const;

  std::array<int, Dim> element_coords(int e) const;
  int element_index(const std::array<int, Dim>& c) const;
};

/// Builds a box with the same condition on every face.
template <int Dim>
Mesh<Dim> make_box(int elements_per_dir, double lo, double hi, BoundaryCondition<Dim> bc);

/// Outer state for a face node. `inner` is this element's trace at the face,
/// `position` the physical location of the face node.
template <int Dim>
State<Dim> apply_boundary(const BoundaryCondition<Dim>& bc, const State<Dim>& inner,
                          const Point<Dim>& position);

}  // namespace lglmcl
