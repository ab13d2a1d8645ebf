#include "sobofit/target.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "sobofit/affine.hpp"
#include "sobofit/error.hpp"

namespace sobofit {

Segment::Segment(double lo_, double hi_, Polynomial poly_) : lo(lo_), hi(hi_), poly(std::move(poly_)) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidDomain("segment [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        "] must satisfy lo < hi with finite endpoints");
  }
}

PiecewiseTarget::PiecewiseTarget(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw InvalidDomain("target needs at least one segment");
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    if (segments_[i - 1].hi > segments_[i].lo) {
      throw InvalidDomain("segments " + std::to_string(i - 1) + " and " + std::to_string(i) +
                          " overlap or are out of order");
    }
  }
}

PiecewiseTarget PiecewiseTarget::restricted(const std::vector<std::size_t>& keep) const {
  std::vector<Segment> out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), i) != keep.end()) out.push_back(segments_[i]);
  }
  return PiecewiseTarget(std::move(out));
}

namespace {

void require_straddles_zero(double lo, double hi) {
  if (!(lo < 0.0 && 0.0 < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidDomain("domain [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        "] must contain 0 in its interior");
  }
}

}  // namespace

PiecewiseTarget relu_target(double lo, double hi) {
  require_straddles_zero(lo, hi);
  return PiecewiseTarget({Segment(lo, 0.0, Polynomial{0.0}), Segment(0.0, hi, Polynomial{0.0, 1.0})});
}

PiecewiseTarget abs_target(double lo, double hi) {
  require_straddles_zero(lo, hi);
  return PiecewiseTarget({Segment(lo, 0.0, Polynomial{0.0, -1.0}), Segment(0.0, hi, Polynomial{0.0, 1.0})});
}

std::optional<double> eval_target(const PiecewiseTarget& t, double x) {
  const auto& segs = t.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const bool last = i + 1 == segs.size();
    if (x >= segs[i].lo && (x < segs[i].hi || (last && x == segs[i].hi))) return segs[i].poly(x);
  }
  return std::nullopt;
}

SampleSet::SampleSet(std::vector<double> xs, std::vector<double> ys)
    : SampleSet(xs, ys, xs.empty() ? 0.0 : xs.front(), xs.empty() ? 0.0 : xs.back()) {}

SampleSet::SampleSet(std::vector<double> xs, std::vector<double> ys, double domain_lo, double domain_hi)
    : xs_(std::move(xs)), ys_(std::move(ys)), domain_lo_(domain_lo), domain_hi_(domain_hi) {
  if (xs_.size() != ys_.size()) throw InvalidArgument("sample x and y counts differ");
  if (xs_.size() < 2) throw InsufficientSamples("need at least 2 samples");
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) throw InvalidArgument("sample is not finite");
    if (i > 0 && !(xs_[i - 1] < xs_[i])) throw InvalidArgument("sample abscissae must be strictly increasing");
  }
  if (!(domain_lo_ < domain_hi_)) throw InvalidDomain("sample domain must satisfy lo < hi");
  if (xs_.front() < domain_lo_ || xs_.back() > domain_hi_) {
    throw InvalidDomain("samples lie outside the declared domain");
  }
}

Polynomial discrete_polyfit(const SampleSet& s, unsigned degree) {
  if (degree > kMaxSurrogateDegree) {
    throw InvalidArgument("fit degree " + std::to_string(degree) + " exceeds the cap of " +
                          std::to_string(kMaxSurrogateDegree));
  }
  const std::size_t cols = degree + 1;
  if (s.size() < cols) {
    throw InsufficientSamples(std::to_string(s.size()) + " samples cannot determine a degree-" +
                              std::to_string(degree) + " polynomial");
  }
  const auto map = AffineMap::onto_unit(s.domain_lo(), s.domain_hi());

  Eigen::MatrixXd v(s.size(), cols);
  Eigen::VectorXd y(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = map.to_unit(s.xs()[i]);
    double pw = 1.0;
    for (std::size_t j = 0; j < cols; ++j, pw *= t) v(i, j) = pw;
    y(i) = s.ys()[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
  qr.setThreshold(1e-12);
  if (qr.rank() < static_cast<Eigen::Index>(cols)) {
    throw SingularFit("rank-deficient sample matrix (rank " + std::to_string(qr.rank()) + " < " +
                      std::to_string(cols) + ")");
  }
  const Eigen::VectorXd c = qr.solve(y);
  return map.from_unit(Polynomial(std::vector<double>(c.data(), c.data() + c.size())));
}

PiecewiseTarget surrogate(const SampleSet& s, unsigned n) {
  return PiecewiseTarget({Segment(s.domain_lo(), s.domain_hi(), discrete_polyfit(s, n))});
}

unsigned default_surrogate_degree(unsigned m) {
  return std::min(std::max(3 * m, m + 10), kMaxSurrogateDegree);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace sobofit
