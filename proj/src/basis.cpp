#include "lglmcl/basis.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "lglmcl/error.hpp"

namespace lglmcl {

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double p_prev = 1.0;
  double p = x;
  for (int k = 2; k <= n; ++k) {
    const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
    p_prev = p;
    p = p_next;
  }
  return p;
}

LglRule compute_lgl(int degree) {
  if (degree < 1)
    throw ConfigError("LGL rule needs degree >= 1, got " + std::to_string(degree));

  const int n = degree;
  LglRule rule;
  rule.nodes.resize(n + 1);
  rule.weights.resize(n + 1);

  // Newton iteration for the zeros of (1 - x^2) P_N'(x), which is proportional
  // to x P_N - P_{N-1}; started from the Chebyshev-Lobatto points.
  constexpr double kTol = 1e-15;
  constexpr int kMaxIter = 50;
  for (int i = 0; i <= n; ++i) {
    double x = -std::cos(std::numbers::pi * i / n);
    for (int it = 0; it < kMaxIter; ++it) {
      const double p_n = legendre(n, x);
      const double p_nm1 = legendre(n - 1, x);
      const double dx = (x * p_n - p_nm1) / ((n + 1) * p_n);
      x -= dx;
      if (std::abs(dx) <= kTol) break;
    }
    rule.nodes[i] = x;
  }
  rule.nodes.front() = -1.0;
  rule.nodes.back() = 1.0;
  // Symmetrize so that x_i = -x_{N-i} exactly.
  for (int i = 0; i <= n / 2; ++i) {
    const double a = 0.5 * (rule.nodes[n - i] - rule.nodes[i]);
    rule.nodes[i] = -a;
    rule.nodes[n - i] = a;
  }
  if (n % 2 == 0) rule.nodes[n / 2] = 0.0;

  for (int i = 0; i <= n; ++i) {
    const double p = legendre(n, rule.nodes[i]);
    rule.weights[i] = 2.0 / (n * (n + 1.0) * p * p);
  }
  return rule;
}

OperatorSet build_operators(int degree) {
  LglRule rule = compute_lgl(degree);
  const std::size_t m = rule.nodes.size();
  const auto& x = rule.nodes;

  // Barycentric weights.
  std::vector<double> bary(m, 1.0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k)
      if (k != j) bary[j] /= (x[j] - x[k]);

  OperatorSet ops;
  ops.degree = degree;
  ops.D = DenseMatrix(m);
  for (std::size_t i = 0; i < m; ++i) {
    double diag = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      ops.D(i, j) = (bary[j] / bary[i]) / (x[i] - x[j]);
      diag -= ops.D(i, j);
    }
    ops.D(i, i) = diag;
  }

  ops.Q = DenseMatrix(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) ops.Q(i, j) = rule.weights[i] * ops.D(i, j);

  ops.B = DenseMatrix(m);
  ops.B(0, 0) = -1.0;
  ops.B(m - 1, m - 1) = 1.0;

  ops.S = DenseMatrix(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) ops.S(i, j) = ops.Q(i, j) - ops.Q(j, i);

  ops.nodes = std::move(rule.nodes);
  ops.weights = std::move(rule.weights);
  return ops;
}

const OperatorSet& cached_operators(int degree) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const OperatorSet>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[degree];
  if (!slot) slot = std::make_unique<const OperatorSet>(build_operators(degree));
  return *slot;
}

}  // namespace lglmcl
