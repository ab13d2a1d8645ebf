#include "sobofit/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sobofit/error.hpp"

namespace sobofit {

ErrorReport error_report(const PiecewiseTarget& target, const Polynomial& p, const WeightTable& weights,
                         std::size_t grid_points) {
  if (grid_points < 2) throw InvalidArgument("grid_points must be at least 2");
  ErrorReport rep;
  rep.grid_points = grid_points;

  const unsigned top = std::max(1u, weights.max_order());
  rep.l2_sq_by_order.assign(top + 1, 0.0);
  for (unsigned k = 0; k <= top; ++k) {
    std::vector<double> unit_row(k + 1, 0.0);
    unit_row[k] = 1.0;
    rep.l2_sq_by_order[k] = weighted_cost(target, WeightTable::broadcast(unit_row, target.size()), p);
  }

  bool first = true;
  for (const auto& seg : target.segments()) {
    const double step = (seg.hi - seg.lo) / static_cast<double>(grid_points - 1);
    for (std::size_t i = 0; i < grid_points; ++i) {
      const double x = i + 1 == grid_points ? seg.hi : seg.lo + step * static_cast<double>(i);
      const double err = std::abs(seg.poly(x) - p(x));
      if (first || err > rep.linf_grid) {
        rep.linf_grid = err;
        rep.linf_argmax = x;
        first = false;
      }
    }
  }

  rep.total_weighted_cost = weighted_cost(target, weights, p);
  return rep;
}

std::vector<ComparisonRow> compare(const PiecewiseTarget& target, const std::vector<LabeledFit>& fits,
                                   const WeightTable& weights, std::size_t grid_points) {
  if (fits.empty()) throw InvalidArgument("compare needs at least one fit");
  std::vector<ComparisonRow> rows;
  rows.reserve(fits.size());
  for (const auto& f : fits) rows.push_back({f.label, error_report(target, f.poly, weights, grid_points)});
  return rows;
}

}  // namespace sobofit
