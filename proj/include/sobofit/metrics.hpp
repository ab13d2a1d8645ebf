#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sobofit/polynomial.hpp"
#include "sobofit/sobolev.hpp"
#include "sobofit/target.hpp"

namespace sobofit {

inline constexpr std::size_t kDefaultGridPoints = 4001;

struct ErrorReport {
  // l2_sq_by_order[k] = sum over segments of the unweighted integral of
  // (D^k f - D^k p)^2.
  std::vector<double> l2_sq_by_order;
  // Largest |f - p| over a uniform grid per segment, a lower bound on the
  // true sup norm.
  double linf_grid = 0.0;
  double linf_argmax = 0.0;
  std::size_t grid_points = 0;
  double total_weighted_cost = 0.0;
};

/// Orders 0 through max(1, weights.max_order()) are always reported.
ErrorReport error_report(const PiecewiseTarget& target, const Polynomial& p, const WeightTable& weights,
                         std::size_t grid_points = kDefaultGridPoints);

struct LabeledFit {
  std::string label;
  Polynomial poly;
};

struct ComparisonRow {
  std::string label;
  ErrorReport report;
};

std::vector<ComparisonRow> compare(const PiecewiseTarget& target, const std::vector<LabeledFit>& fits,
                                   const WeightTable& weights, std::size_t grid_points = kDefaultGridPoints);

}  // namespace sobofit
