#include <cmath>
#include <random>

#include "doctest.h"
#include "lglmcl/euler.hpp"
#include "oracles.hpp"

using namespace lglmcl;

namespace {

const GasModel kAir{1.4};
const GasModel kMono{5.0 / 3.0};

State<2> prim2(double rho, double v1, double v2, double p, const GasModel& gas = kAir) {
  return from_primitive(Primitive<2>{rho, {v1, v2}, p}, gas);
}

/// Central-difference gradient of the entropy with respect to u.
template <int Dim>
State<Dim> entropy_gradient_fd(const State<Dim>& u, const GasModel& gas) {
  State<Dim> g;
  for (int k = 0; k < State<Dim>::kNumEq; ++k) {
    const double h = 1e-6 * std::max(1.0, std::abs(u[k]));
    State<Dim> up = u, dn = u;
    up[k] += h;
    dn[k] -= h;
    g[k] = (entropy(up, gas) - entropy(dn, gas)) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("gas model validation") {
  CHECK_NOTHROW(GasModel{1.4}.validate());
  CHECK_THROWS_AS(GasModel{1.0}.validate(), ConfigError);
  CHECK_THROWS_AS(GasModel{3.5}.validate(), ConfigError);
}

TEST_CASE("pressure from conserved variables") {
  State<1> u;
  u.q = {1.0, 0.0, 2.5};
  CHECK(pressure(u, kAir) == doctest::Approx(1.0));

  const State<2> ambient = prim2(1.0, 0.0, 0.0, 1e-5);
  CHECK(ambient.energy() == doctest::Approx(2.5e-5));
  CHECK(std::abs(pressure(ambient, kAir) - 1e-5) < 1e-20);

  const State<2> jet = prim2(5.0, 800.0, 0.0, 0.4127, kMono);
  CHECK(std::abs(jet.energy() - 1600000.61905) < 1e-5);
  CHECK(std::abs(pressure(jet, kMono) - 0.4127) < 1e-9);

  State<1> bad;
  bad.q = {0.0, 0.0, 1.0};
  CHECK_THROWS_AS(pressure(bad, kAir), InvalidStateError);
}

TEST_CASE("admissibility") {
  CHECK(is_admissible(prim2(1.0, 2.0, 3.0, 0.5), kAir));
  State<2> u = prim2(1.0, 2.0, 0.0, 0.5);
  u[3] = 1.9;  // kinetic energy 2.0 exceeds total energy
  CHECK_FALSE(is_admissible(u, kAir));
  u = prim2(1.0, 0.0, 0.0, 1.0);
  u[1] = std::nan("");
  CHECK_FALSE(is_admissible(u, kAir));
}

TEST_CASE("physical flux") {
  State<1> u = from_primitive(Primitive<1>{1.0, {1.0}, 1.0}, kAir);
  CHECK(u.energy() == doctest::Approx(3.0));
  const State<1> f = physical_flux(u, 0, kAir);
  CHECK(f[0] == doctest::Approx(1.0));
  CHECK(f[1] == doctest::Approx(2.0));
  CHECK(f[2] == doctest::Approx(4.0));

  const State<2> rest = prim2(2.0, 0.0, 0.0, 3.0);
  for (int d = 0; d < 2; ++d) {
    const State<2> g = physical_flux(rest, d, kAir);
    CHECK(g[0] == 0.0);
    CHECK(g[1 + d] == doctest::Approx(3.0));
    CHECK(g[2 - d] == 0.0);
    CHECK(g[3] == 0.0);
  }
  const State<2> g = physical_flux(prim2(1.0, 0.7, 0.0, 2.0), 1, kAir);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.0);
  CHECK(g[2] == doctest::Approx(2.0));
  CHECK(g[3] == 0.0);
}

TEST_CASE("wave speed and jet Mach numbers") {
  const State<2> rest = prim2(1.0, 0.0, 0.0, 1.0);
  CHECK(max_wave_speed(rest, rest, 0, kAir) == doctest::Approx(std::sqrt(1.4)));
  const double c_jet = std::sqrt(5.0 / 3.0 * 0.4127 / 5.0);
  CHECK(c_jet == doctest::Approx(0.370899).epsilon(1e-5));
  CHECK(800.0 / c_jet == doctest::Approx(2156.91).epsilon(1e-5));
  const double c_amb = std::sqrt(5.0 / 3.0 * 0.4127 / 0.5);
  CHECK(800.0 / c_amb == doctest::Approx(682.08).epsilon(1e-5));
  const State<2> jet = prim2(5.0, 800.0, 0.0, 0.4127, kMono);
  CHECK(max_wave_speed(jet, jet, 0, kMono) == doctest::Approx(800.0 + c_jet));
  State<2> bad = rest;
  bad[0] = -1.0;
  CHECK_THROWS_AS(max_wave_speed(bad, rest, 0, kAir), InvalidStateError);
}

TEST_CASE("entropy variables") {
  const State<2> u = prim2(1.0, 0.0, 0.0, 1.0);
  const State<2> v = entropy_variables(u, kAir);
  CHECK(v[0] == doctest::Approx(3.5));
  CHECK(v[1] == 0.0);
  CHECK(v[2] == 0.0);
  CHECK(v[3] == doctest::Approx(-1.0));

  std::mt19937 rng(7);
  for (int k = 0; k < 50; ++k) {
    const State<2> s = oracle::random_state<2>(rng, kAir);
    const State<2> fd = entropy_gradient_fd(s, kAir);
    const State<2> an = entropy_variables(s, kAir);
    for (int q = 0; q < 4; ++q) CHECK(std::abs(fd[q] - an[q]) < 1e-6 * (1.0 + std::abs(an[q])));
  }
  State<1> vacuum_p;
  vacuum_p.q = {1.0, 0.0, 0.0};
  CHECK_THROWS_AS(entropy_variables(vacuum_p, kAir), InvalidStateError);
}

TEST_CASE("entropy potential equals the mass flux") {
  CHECK(entropy_potential(prim2(1.3, 0.0, 0.0, 2.0), 0, kAir) == 0.0);
  const State<1> u1 = from_primitive(Primitive<1>{1.0, {1.0}, 1.0}, kAir);
  CHECK(std::abs(entropy_potential(u1, 0, kAir) - 1.0) < 1e-12);
  std::mt19937 rng(11);
  for (int k = 0; k < 200; ++k) {
    const State<2> s = oracle::random_state<2>(rng, kAir);
    for (int d = 0; d < 2; ++d)
      CHECK(std::abs(entropy_potential(s, d, kAir) - s.momentum(d)) <
            1e-12 * (1.0 + std::abs(entropy(s, kAir))));
  }
}

TEST_CASE("logarithmic mean") {
  CHECK(log_mean(2.0, 2.0) == doctest::Approx(2.0));
  CHECK(log_mean(1.0, std::exp(1.0)) == doctest::Approx(std::exp(1.0) - 1.0));
  CHECK(log_mean(3.0, 5.0) == log_mean(5.0, 3.0));
  // Continuity across the series branch.
  for (double eps : {1e-3, 1e-4, 1e-5, 1e-8}) {
    const double a = 1.7, b = 1.7 * (1.0 + eps);
    const double direct = (a - b) / (std::log(a) - std::log(b));
    CHECK(std::abs(log_mean(a, b) - direct) < 1e-7 * direct);
  }
  CHECK_THROWS_AS(log_mean(0.0, 1.0), InvalidStateError);
  CHECK_THROWS_AS(log_mean(1.0, -2.0), InvalidStateError);
}

TEST_CASE("volume flux names") {
  CHECK(parse_volume_flux("ranocha") == VolumeFlux::ranocha);
  CHECK(to_string(VolumeFlux::chandrashekar) == "chandrashekar");
  CHECK_THROWS_AS(parse_volume_flux("roe"), ConfigError);
}

TEST_CASE("two-point fluxes are consistent and symmetric") {
  std::mt19937 rng(5);
  for (VolumeFlux kind : {VolumeFlux::central, VolumeFlux::ranocha, VolumeFlux::chandrashekar})
    for (int k = 0; k < 100; ++k) {
      const State<2> a = oracle::random_state<2>(rng, kAir);
      const State<2> b = oracle::random_state<2>(rng, kAir);
      for (int d = 0; d < 2; ++d) {
        const State<2> faa = two_point_flux(a, a, d, kind, kAir);
        const State<2> f = physical_flux(a, d, kAir);
        const State<2> fab = two_point_flux(a, b, d, kind, kAir);
        const State<2> fba = two_point_flux(b, a, d, kind, kAir);
        for (int q = 0; q < 4; ++q) {
          CHECK(std::abs(faa[q] - f[q]) < 1e-12 * (1.0 + std::abs(f[q])));
          CHECK(std::abs(fab[q] - fba[q]) < 1e-12 * (1.0 + std::abs(fab[q])));
        }
      }
    }
}

TEST_CASE("central flux is the average of physical fluxes") {
  const State<2> a = prim2(1.0, 0.3, -0.2, 1.0), b = prim2(0.4, -0.1, 0.5, 0.3);
  const State<2> f = two_point_flux(a, b, 0, VolumeFlux::central, kAir);
  const State<2> ref = 0.5 * (physical_flux(a, 0, kAir) + physical_flux(b, 0, kAir));
  for (int q = 0; q < 4; ++q) CHECK(f[q] == doctest::Approx(ref[q]));
}

TEST_CASE("entropy conservative fluxes satisfy Tadmor's equality") {
  std::mt19937 rng(13);
  for (VolumeFlux kind : {VolumeFlux::ranocha, VolumeFlux::chandrashekar})
    for (int k = 0; k < 200; ++k) {
      const State<2> a = oracle::random_state<2>(rng, kAir, 1.5);
      const State<2> b = oracle::random_state<2>(rng, kAir, 1.5);
      const int d = k % 2;
      const State<2> f = two_point_flux(a, b, d, kind, kAir);
      const State<2> dv = entropy_variables(b, kAir) - entropy_variables(a, kAir);
      const double dpsi = b.momentum(d) - a.momentum(d);
      const double scale = std::abs(dot(dv, f)) + std::abs(dpsi) + 1.0;
      CHECK(std::abs(dot(dv, f) - dpsi) <= 1e-11 * scale);
    }
}

TEST_CASE("rusanov flux") {
  const State<1> l = from_primitive(Primitive<1>{1.0, {0.0}, 1.0}, kAir);
  const State<1> r = from_primitive(Primitive<1>{0.125, {0.0}, 0.1}, kAir);
  const RusanovFlux<1> f = rusanov_flux(l, r, 0, kAir);
  const double lam = std::max(std::sqrt(1.4), std::sqrt(1.4 * 0.1 / 0.125));
  CHECK(f.lambda == doctest::Approx(lam));
  CHECK(f.flux[0] == doctest::Approx(-0.5 * lam * (0.125 - 1.0)));
  CHECK(f.flux[1] == doctest::Approx(0.5 * (1.0 + 0.1)));
  CHECK(f.flux[2] == doctest::Approx(-0.5 * lam * (0.1 / 0.4 - 1.0 / 0.4)));

  const RusanovFlux<1> same = rusanov_flux(l, l, 0, kAir);
  const State<1> exact = physical_flux(l, 0, kAir);
  for (int q = 0; q < 3; ++q) CHECK(same.flux[q] == doctest::Approx(exact[q]));
}

TEST_CASE("rusanov flux is entropy stable on moderate pairs") {
  std::mt19937 rng(17);
  for (int k = 0; k < 500; ++k) {
    const State<2> a = oracle::random_state<2>(rng, kAir, 1.5);
    const State<2> b = oracle::random_state<2>(rng, kAir, 1.5);
    const int d = k % 2;
    const State<2> f = rusanov_flux(a, b, d, kAir).flux;
    const State<2> dv = entropy_variables(b, kAir) - entropy_variables(a, kAir);
    const double dpsi = b.momentum(d) - a.momentum(d);
    const double scale = std::abs(dot(dv, f)) + std::abs(dpsi) + 1.0;
    CHECK(dot(dv, f) <= dpsi + 1e-12 * scale);
  }
}
