#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace lglmcl {

/// Small dense row-major matrix for the (N+1)x(N+1) element operators.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  DenseMatrix transpose() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Legendre-Gauss-Lobatto nodes/weights and the SBP operators of one degree.
///
///   D_ij = l'_j(xi_i)          strong-form differentiation matrix
///   Q_ij = w_i l'_j(xi_i)      weak-form derivative matrix
///   B    = diag(-1, 0, ..., 0, 1)
///   S    = Q - Q^T             skew-symmetric volume operator (= 2Q - B)
///
/// Q + Q^T = B holds to roundoff (summation by parts).
struct OperatorSet {
  int degree = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  DenseMatrix D;
  DenseMatrix Q;
  DenseMatrix B;
  DenseMatrix S;

  std::size_t num_nodes() const { return nodes.size(); }
};

struct LglRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Legendre polynomial P_n(x) by the three-term recurrence.
double legendre(int n, double x);

/// LGL nodes (roots of (1 - x^2) P_N'(x)) and weights 2 / (N (N+1) P_N(x_i)^2).
/// Throws ConfigError for degree < 1.
LglRule compute_lgl(int degree);

OperatorSet build_operators(int degree);

/// Operators for `degree`, built once and shared read-only afterwards.
const OperatorSet& cached_operators(int degree);

}  // namespace lglmcl
