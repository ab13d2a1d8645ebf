#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sobofit/polynomial.hpp"

namespace sobofit {

/// Highest degree accepted for discrete fits and surrogates.
inline constexpr unsigned kMaxSurrogateDegree = 24;

/// Default number of uniform samples for smooth built-in activations.
inline constexpr std::size_t kDefaultSampleCount = 10001;

/// The restriction of a target function to [lo, hi].
struct Segment {
  double lo;
  double hi;
  Polynomial poly;

  Segment(double lo, double hi, Polynomial poly);
};

/// Ordered, non-overlapping segments. Gaps between segments are allowed and
/// mean "not part of the objective".
class PiecewiseTarget {
 public:
  explicit PiecewiseTarget(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }
  const Segment& operator[](std::size_t i) const { return segments_[i]; }

  double lo() const noexcept { return segments_.front().lo; }
  double hi() const noexcept { return segments_.back().hi; }

  /// Keeps only the listed segments, in their original order.
  PiecewiseTarget restricted(const std::vector<std::size_t>& keep) const;

 private:
  std::vector<Segment> segments_;
};

PiecewiseTarget relu_target(double lo, double hi);
PiecewiseTarget abs_target(double lo, double hi);

/// Value of the segment owning x. Segments own their left endpoint and the
/// last segment also owns its right one. Empty in gaps and outside.
std::optional<double> eval_target(const PiecewiseTarget& t, double x);

/// Sampled function values on a strictly increasing abscissa.
class SampleSet {
 public:
  SampleSet(std::vector<double> xs, std::vector<double> ys);
  SampleSet(std::vector<double> xs, std::vector<double> ys, double domain_lo, double domain_hi);

  /// `count` uniform samples of `f` on [lo, hi], endpoints included.
  template <class F>
  static SampleSet uniform(F&& f, double lo, double hi, std::size_t count = kDefaultSampleCount) {
    std::vector<double> xs(count), ys(count);
    for (std::size_t i = 0; i < count; ++i) {
      xs[i] = i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
      ys[i] = f(xs[i]);
    }
    return SampleSet(std::move(xs), std::move(ys), lo, hi);
  }

  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<double>& ys() const noexcept { return ys_; }
  std::size_t size() const noexcept { return xs_.size(); }
  double domain_lo() const noexcept { return domain_lo_; }
  double domain_hi() const noexcept { return domain_hi_; }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  double domain_lo_;
  double domain_hi_;
};

/// Discrete least-squares polynomial of at most `degree`, fitted in the
/// variable rescaled onto [-1, 1] and returned in the original variable.
Polynomial discrete_polyfit(const SampleSet& s, unsigned degree);

/// Single-segment target over the sample domain whose polynomial is the
/// degree-n discrete fit. Used to stand in for targets whose derivatives
/// are awkward to integrate.
PiecewiseTarget surrogate(const SampleSet& s, unsigned n);

/// max(3m, m + 10), clamped to kMaxSurrogateDegree.
unsigned default_surrogate_degree(unsigned m);

double sigmoid(double x);

}  // namespace sobofit
