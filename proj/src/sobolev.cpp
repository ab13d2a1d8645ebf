#include "sobofit/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "sobofit/error.hpp"

namespace sobofit {

WeightTable::WeightTable(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
  for (std::size_t s = 0; s < rows_.size(); ++s) {
    for (std::size_t k = 0; k < rows_[s].size(); ++k) {
      const double w = rows_[s][k];
      if (!std::isfinite(w) || w < 0.0) {
        throw InvalidObjective("weight for segment " + std::to_string(s) + " order " + std::to_string(k) +
                               " must be a finite number no less than zero");
      }
    }
  }
}

WeightTable WeightTable::broadcast(const std::vector<double>& per_order, std::size_t segments) {
  return WeightTable(std::vector<std::vector<double>>(segments, per_order));
}

double WeightTable::operator()(std::size_t segment, unsigned order) const noexcept {
  if (segment >= rows_.size() || order >= rows_[segment].size()) return 0.0;
  return rows_[segment][order];
}

unsigned WeightTable::max_order() const noexcept {
  unsigned best = 0;
  for (const auto& row : rows_) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] > 0.0) best = std::max(best, static_cast<unsigned>(k));
    }
  }
  return best;
}

WeightTable WeightTable::scaled(double factor) const {
  auto rows = rows_;
  for (auto& row : rows) {
    for (double& w : row) w *= factor;
  }
  return WeightTable(std::move(rows));
}

SobolevObjective::SobolevObjective(PiecewiseTarget target, WeightTable weights, unsigned degree)
    : target_(std::move(target)), weights_(std::move(weights)), degree_(degree) {
  if (weights_.segment_count() != target_.size()) {
    throw InvalidObjective("weight table has " + std::to_string(weights_.segment_count()) +
                           " rows but the target has " + std::to_string(target_.size()) + " segments");
  }
  bool any_value_weight = false;
  for (std::size_t s = 0; s < target_.size(); ++s) any_value_weight |= weights_(s, 0) > 0.0;
  if (!any_value_weight) throw InvalidObjective("all order-0 weights are zero");
  if (weights_.max_order() > degree_) {
    throw InvalidObjective("derivative order " + std::to_string(weights_.max_order()) +
                           " is weighted but the fit degree is " + std::to_string(degree_));
  }
}

double QuadraticForm::value(const Eigen::VectorXd& c) const {
  return c.dot(gram * c) - 2.0 * c.dot(rhs) + constant;
}

SobolevObjective to_unit_variable(const SobolevObjective& obj, const AffineMap& map) {
  std::vector<Segment> segs;
  segs.reserve(obj.target().size());
  for (const auto& seg : obj.target().segments()) {
    segs.emplace_back(map.to_unit(seg.lo), map.to_unit(seg.hi), map.to_unit(seg.poly));
  }
  auto rows = obj.weights().rows();
  for (auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      row[k] *= std::pow(map.half_width, 1.0 - 2.0 * static_cast<double>(k));
    }
  }
  return SobolevObjective(PiecewiseTarget(std::move(segs)), WeightTable(std::move(rows)), obj.degree());
}

namespace {

Polynomial monomial(std::size_t power) {
  std::vector<double> c(power + 1, 0.0);
  c[power] = 1.0;
  return Polynomial(std::move(c));
}

double monomial_integral(std::size_t power, double lo, double hi) {
  const double e = static_cast<double>(power + 1);
  return (std::pow(hi, e) - std::pow(lo, e)) / e;
}

}  // namespace

QuadraticForm assemble_form(const SobolevObjective& obj) {
  const std::size_t n = obj.degree() + 1;
  QuadraticForm form{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n), 0.0};
  const auto& segs = obj.target().segments();
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const auto& seg = segs[s];
    for (unsigned k = 0; k <= obj.degree(); ++k) {
      const double w = obj.weights()(s, k);
      if (w == 0.0) continue;
      const Polynomial target_k = derivative(seg.poly, k);
      for (std::size_t i = k; i < n; ++i) {
        const double fi = falling_factorial(static_cast<unsigned>(i), k);
        for (std::size_t j = i; j < n; ++j) {
          const double fj = falling_factorial(static_cast<unsigned>(j), k);
          form.gram(i, j) += w * fi * fj * monomial_integral(i + j - 2 * k, seg.lo, seg.hi);
        }
        form.rhs(i) += w * fi * definite_integral(target_k * monomial(i - k), seg.lo, seg.hi);
      }
      form.constant += w * definite_integral(target_k * target_k, seg.lo, seg.hi);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) form.gram(i, j) = form.gram(j, i);
  }
  return form;
}

namespace {

// Extent of the segments that carry some positive weight; segments with an
// all-zero row contribute nothing and would only dilute the unit interval.
AffineMap weighted_extent(const SobolevObjective& obj) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t s = 0; s < obj.target().size(); ++s) {
    const auto& row = obj.weights().rows()[s];
    if (std::none_of(row.begin(), row.end(), [](double w) { return w > 0.0; })) continue;
    lo = any ? std::min(lo, obj.target()[s].lo) : obj.target()[s].lo;
    hi = any ? std::max(hi, obj.target()[s].hi) : obj.target()[s].hi;
    any = true;
  }
  return AffineMap::onto_unit(lo, hi);
}

}  // namespace

Assembly assemble(const SobolevObjective& obj) {
  const auto map = weighted_extent(obj);
  return Assembly{assemble_form(obj), assemble_form(to_unit_variable(obj, map)), map};
}

Eigen::VectorXd solve(const QuadraticForm& form) { return solve_symmetric(form.gram, form.rhs).x; }

FitResult fit(const SobolevObjective& obj) {
  auto forms = assemble(obj);
  auto solved = solve_symmetric(forms.unit.gram, forms.unit.rhs);
  Polynomial unit_poly(std::vector<double>(solved.x.data(), solved.x.data() + solved.x.size()));
  // Integrating the residual directly avoids the cancellation in
  // c^T G c - 2 c^T r + s when the minimum is near zero.
  const double cost = cost_value(to_unit_variable(obj, forms.map), unit_poly);
  Polynomial poly = forms.map.from_unit(unit_poly);
  const double cond = solved.condition_estimate();
  return FitResult{std::move(poly), std::move(unit_poly), cost, cond, solved.method,
                   std::move(solved.pivots), std::move(forms)};
}

double weighted_cost(const PiecewiseTarget& target, const WeightTable& weights, const Polynomial& p) {
  double total = 0.0;
  for (std::size_t s = 0; s < target.size(); ++s) {
    const auto& seg = target[s];
    // Integrate in the segment-local variable on [-1, 1] to keep the
    // squared residual's coefficients moderate.
    const auto local = AffineMap::onto_unit(seg.lo, seg.hi);
    const Polynomial residual = local.to_unit(seg.poly - p);
    const std::size_t orders = s < weights.segment_count() ? weights.rows()[s].size() : 0;
    for (unsigned k = 0; k < orders; ++k) {
      const double w = weights(s, k);
      if (w == 0.0) continue;
      const Polynomial rk = derivative(residual, k);
      const double jacobian = std::pow(local.half_width, 1.0 - 2.0 * static_cast<double>(k));
      total += w * jacobian * definite_integral(rk * rk, -1.0, 1.0);
    }
  }
  return total;
}

double cost_value(const SobolevObjective& obj, const Polynomial& p) {
  return weighted_cost(obj.target(), obj.weights(), p);
}

FitResult fit_final(const SampleSet& s, unsigned m, unsigned n, const WeightTable& weights) {
  if (n < m) {
    throw InvalidArgument("surrogate degree " + std::to_string(n) + " is below the fit degree " +
                          std::to_string(m));
  }
  return fit(SobolevObjective(surrogate(s, n), weights, m));
}

}  // namespace sobofit
