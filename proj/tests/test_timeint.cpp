#include <cmath>

#include "doctest.h"
#include "lglmcl/timeint.hpp"

using namespace lglmcl;

TEST_CASE("zero right-hand side leaves the solution unchanged") {
  std::vector<double> u{1.0, -2.0, 3.5};
  const auto before = u;
  step_ssprk3<double>(u, 0.3, [](const std::vector<double>& in, std::vector<double>& out) {
    out.assign(in.size(), 0.0);
  });
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(u[i] - before[i]) <= 1e-15 * std::abs(before[i]));
}

TEST_CASE("linear decay matches the third-order stability polynomial") {
  std::vector<double> u{1.0};
  const double h = 0.1;
  step_ssprk3<double>(u, h, [](const std::vector<double>& in, std::vector<double>& out) {
    out.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = -in[i];
  });
  const double poly = 1.0 - h + h * h / 2.0 - h * h * h / 6.0;
  CHECK(std::abs(u[0] - poly) < 1e-15);
  CHECK(std::abs(u[0] - std::exp(-h)) < 1e-5);
  CHECK(std::abs(u[0] - 0.9048333333333333) < 1e-15);
}

TEST_CASE("third order convergence on a nonlinear ODE") {
  // u' = u^2, u(0) = 1, exact 1 / (1 - t).
  auto solve = [](int steps) {
    std::vector<double> u{1.0};
    const double h = 0.5 / steps;
    for (int s = 0; s < steps; ++s)
      step_ssprk3<double>(u, h, [](const std::vector<double>& in, std::vector<double>& out) {
        out = {in[0] * in[0]};
      });
    return std::abs(u[0] - 2.0);
  };
  const double rate = std::log2(solve(40) / solve(80));
  CHECK(rate == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("stage check sees every stage and can abort") {
  std::vector<double> u{1.0};
  std::vector<int> seen;
  const RhsFunction<double> rhs = [](const std::vector<double>& in, std::vector<double>& out) {
    out = {-in[0]};
  };
  step_ssprk3<double>(u, 0.1, rhs, [&](int s, const std::vector<double>&) { seen.push_back(s); });
  CHECK(seen == std::vector<int>{1, 2, 3});

  std::vector<double> v{1.0};
  CHECK_THROWS_AS(step_ssprk3<double>(v, 0.1, rhs,
                                      [](int s, const std::vector<double>&) {
                                        if (s == 2) throw InvalidStateError("stage 2");
                                      }),
                  InvalidStateError);
  CHECK(v[0] == 1.0);
}

TEST_CASE("time control clips onto stop times") {
  TimeControl tc;
  tc.t = 0.95;
  CHECK(tc.clip(0.1, 1.0) == doctest::Approx(0.05));
  CHECK(tc.clip(0.01, 1.0) == 0.01);
  CHECK_THROWS_AS(tc.clip(0.0, 1.0), SolverError);
  CHECK_THROWS_AS(tc.clip(std::nan(""), 1.0), SolverError);
  tc.cfl = 1.5;
  CHECK_THROWS_AS(tc.validate(), ConfigError);
}
