#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "sobofit/affine.hpp"
#include "sobofit/linalg.hpp"
#include "sobofit/polynomial.hpp"
#include "sobofit/target.hpp"

namespace sobofit {

/// Nonnegative weight per (segment, derivative order). Orders past the end
/// of a segment's row weigh zero.
class WeightTable {
 public:
  /// rows[s][k] weighs the order-k residual on segment s.
  explicit WeightTable(std::vector<std::vector<double>> rows);

  /// One weight per order, shared by every segment.
  static WeightTable broadcast(const std::vector<double>& per_order, std::size_t segments);

  double operator()(std::size_t segment, unsigned order) const noexcept;
  std::size_t segment_count() const noexcept { return rows_.size(); }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }

  // Largest order with a positive weight; 0 when nothing is positive.
  unsigned max_order() const noexcept;

  WeightTable scaled(double factor) const;

 private:
  std::vector<std::vector<double>> rows_;
};

/// A target, its weights and the degree of the fitted polynomial.
///
/// Construction enforces what makes the cost strictly convex: the weight
/// table covers every segment, some segment has a positive order-0 weight
/// and no weight sits on an order above the fit degree.
class SobolevObjective {
 public:
  SobolevObjective(PiecewiseTarget target, WeightTable weights, unsigned degree);

  const PiecewiseTarget& target() const noexcept { return target_; }
  const WeightTable& weights() const noexcept { return weights_; }
  unsigned degree() const noexcept { return degree_; }

 private:
  PiecewiseTarget target_;
  WeightTable weights_;
  unsigned degree_;
};

/// F(c) = c^T G c - 2 c^T r + s over monomial coefficients c.
struct QuadraticForm {
  Eigen::MatrixXd gram;
  Eigen::VectorXd rhs;
  double constant = 0.0;

  double value(const Eigen::VectorXd& c) const;
};

/// The same cost expressed in the original variable x and in the unit
/// variable t with x = map.from_unit(t).
struct Assembly {
  QuadraticForm raw;
  QuadraticForm unit;
  AffineMap map;
};

/// Rewrites an objective in the variable t = map.to_unit(x). Order-k weights pick up ((hi - lo) / 2)^(1 - 2k) so that the cost
/// of q(t) equals the original cost of q(map.to_unit(x)).
SobolevObjective to_unit_variable(const SobolevObjective& obj, const AffineMap& map);

/// Closed-form Gram matrix, right-hand side and self-energy in one basis.
QuadraticForm assemble_form(const SobolevObjective& obj);

/// Both raw and unit-variable forms. The unit variable spans the segments
/// that carry a positive weight.
Assembly assemble(const SobolevObjective& obj);

/// Minimizer of a positive definite form.
Eigen::VectorXd solve(const QuadraticForm& form);

struct FitResult {
  Polynomial poly;
  Polynomial unit_poly;  // the same fit in the unit variable
  double cost;
  double gram_condition_estimate;
  SolveMethod method;
  std::vector<double> pivots;
  Assembly form;
};

FitResult fit(const SobolevObjective& obj);

/// Sum over segments and orders of weight * integral of the squared
/// order-k residual, evaluated exactly. p may exceed the objective degree.
double weighted_cost(const PiecewiseTarget& target, const WeightTable& weights, const Polynomial& p);

double cost_value(const SobolevObjective& obj, const Polynomial& p);

/// Replaces the sampled function by its degree-n discrete least-squares
/// surrogate and fits a degree-m polynomial against that surrogate.
FitResult fit_final(const SampleSet& s, unsigned m, unsigned n, const WeightTable& weights);

}  // namespace sobofit
