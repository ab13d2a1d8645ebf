#pragma once

#include "sobofit/polynomial.hpp"

namespace sobofit {

/// Affine change of variable taking [lo, hi] onto [-1, 1]:
/// x = center + half_width * t.
struct AffineMap {
  double center;
  double half_width;

  static AffineMap onto_unit(double lo, double hi) {
    return AffineMap{0.5 * (lo + hi), 0.5 * (hi - lo)};
  }

  double to_unit(double x) const { return (x - center) / half_width; }
  double from_unit(double t) const { return center + half_width * t; }

  // p(x) -> q(t) = p(center + half_width t)
  Polynomial to_unit(const Polynomial& p) const { return compose_affine(p, center, half_width); }
  // q(t) -> p(x) = q((x - center) / half_width)
  Polynomial from_unit(const Polynomial& q) const {
    return compose_affine(q, -center / half_width, 1.0 / half_width);
  }
};

}  // namespace sobofit
