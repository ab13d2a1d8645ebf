#include "sobofit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "sobofit/error.hpp"

namespace sobofit {

double SolveResult::condition_estimate() const {
  if (pivots.empty()) return 1.0;
  double lo = std::abs(pivots.front());
  double hi = lo;
  for (double p : pivots) {
    lo = std::min(lo, std::abs(p));
    hi = std::max(hi, std::abs(p));
  }
  return hi / lo;
}

namespace {

[[noreturn]] void throw_singular(std::size_t index, double relative) {
  throw SingularSystem("singular normal equations: relative pivot " + std::to_string(relative) +
                           " at index " + std::to_string(index),
                       index);
}

// Square-root-free Cholesky (A = L D L^T, L unit lower triangular).
// Returns nullopt when a nonpositive pivot is met.
std::optional<SolveResult> try_ldlt(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd d(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double djj = a(j, j);
    for (Eigen::Index m = 0; m < j; ++m) djj -= l(j, m) * l(j, m) * d(m);
    if (!(djj > 0.0)) return std::nullopt;
    if (djj < kSingularPivotTolerance * std::abs(a(j, j))) {
      throw_singular(static_cast<std::size_t>(j), djj / std::abs(a(j, j)));
    }
    d(j) = djj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (Eigen::Index m = 0; m < j; ++m) v -= l(i, m) * l(j, m) * d(m);
      l(i, j) = v / djj;
    }
  }

  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = b(i) - l.row(i).head(i).dot(y.head(i));
  Eigen::VectorXd x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    x(i) = y(i) / d(i) - l.col(i).tail(n - i - 1).dot(x.tail(n - i - 1));
  }
  return SolveResult{std::move(x), SolveMethod::ldlt, std::vector<double>(d.data(), d.data() + n)};
}

SolveResult eliminate(Eigen::MatrixXd a, Eigen::VectorXd b) {
  const Eigen::Index n = a.rows();
  const double scale = a.cwiseAbs().maxCoeff();
  std::vector<double> pivots(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    a.col(k).tail(n - k).cwiseAbs().maxCoeff(&p);
    p += k;
    const double relative = scale > 0.0 ? std::abs(a(p, k)) / scale : 0.0;
    if (relative < kSingularPivotTolerance) throw_singular(static_cast<std::size_t>(k), relative);
    a.row(k).swap(a.row(p));
    std::swap(b(k), b(p));
    pivots[static_cast<std::size_t>(k)] = a(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      a.row(i).tail(n - k) -= f * a.row(k).tail(n - k);
      b(i) -= f * b(k);
    }
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    x(i) = (b(i) - a.row(i).tail(n - i - 1).dot(x.tail(n - i - 1))) / a(i, i);
  }
  return SolveResult{std::move(x), SolveMethod::pivoted_elimination, std::move(pivots)};
}

}  // namespace

SolveResult solve_symmetric(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw InvalidArgument("solve_symmetric: dimension mismatch");
  }
  if (a.rows() == 0) return SolveResult{Eigen::VectorXd(0), SolveMethod::ldlt, {}};
  if (auto r = try_ldlt(a, b)) return std::move(*r);
  return eliminate(a, b);
}

}  // namespace sobofit
