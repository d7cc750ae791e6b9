#include "lglmcl/mesh.hpp"

#include <string>

namespace lglmcl {

template <int Dim>
void Mesh<Dim>::validate() const {
  for (int d = 0; d < Dim; ++d) {
    if (elements[d] < 1)
      throw ConfigError("mesh needs at least one element along direction " + std::to_string(d));
    if (!(upper[d] > lower[d])) throw ConfigError("mesh box is empty along direction " +
                                                  std::to_string(d));
    const bool lo_periodic = std::holds_alternative<Periodic>(boundary[face_index(d, 0)]);
    const bool hi_periodic = std::holds_alternative<Periodic>(boundary[face_index(d, 1)]);
    if (lo_periodic != hi_periodic)
      throw ConfigError("periodic boundary must be set on both faces of direction " +
                        std::to_string(d));
    for (int side = 0; side < 2; ++side) {
      if (const auto* in = std::get_if<Inflow<Dim>>(&boundary[face_index(d, side)]); in && !in->state)
        throw ConfigError("inflow boundary without a state");
    }
  }
}

template <int Dim>
int Mesh<Dim>::num_elements() const {
  int n = 1;
  for (int d = 0; d < Dim; ++d) n *= elements[d];
  return n;
}

template <int Dim>
double Mesh<Dim>::jacobian() const {
  double j = 1.0;
  for (int d = 0; d < Dim; ++d) j *= jacobian(d);
  return j;
}

template <int Dim>
double Mesh<Dim>::measure() const {
  double m = 1.0;
  for (int d = 0; d < Dim; ++d) m *= upper[d] - lower[d];
  return m;
}

template <int Dim>
std::array<int, Dim> Mesh<Dim>::element_coords(int e) const {
  std::array<int, Dim> c{};
  for (int d = 0; d < Dim; ++d) {
    c[d] = e % elements[d];
    e /= elements[d];
  }
  return c;
}

template <int Dim>
int Mesh<Dim>::element_index(const std::array<int, Dim>& c) const {
  int e = 0;
  for (int d = Dim - 1; d >= 0; --d) e = e * elements[d] + c[d];
  return e;
}

template <int Dim>
Mesh<Dim> make_box(int elements_per_dir, double lo, double hi, BoundaryCondition<Dim> bc) {
  Mesh<Dim> m;
  m.elements.fill(elements_per_dir);
  m.lower.fill(lo);
  m.upper.fill(hi);
  m.boundary.fill(bc);
  m.validate();
  return m;
}

template <int Dim>
State<Dim> apply_boundary(const BoundaryCondition<Dim>& bc, const State<Dim>& inner,
                          const Point<Dim>& position) {
  if (std::holds_alternative<Outflow>(bc)) return inner;
  if (const auto* in = std::get_if<Inflow<Dim>>(&bc)) return in->state(position);
  throw InvariantViolation("periodic faces are resolved by neighbour lookup, not by a boundary state");
}

template struct Mesh<1>;
template struct Mesh<2>;
template Mesh<1> make_box<1>(int, double, double, BoundaryCondition<1>);
template Mesh<2> make_box<2>(int, double, double, BoundaryCondition<2>);
template State<1> apply_boundary<1>(const BoundaryCondition<1>&, const State<1>&, const Point<1>&);
template State<2> apply_boundary<2>(const BoundaryCondition<2>&, const State<2>&, const Point<2>&);

}  // namespace lglmcl
