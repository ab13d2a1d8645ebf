#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sobofit {

/// Dense real polynomial, coefficients in ascending degree order.
///
/// The coefficient vector is never empty: the zero polynomial is stored as
/// the single coefficient 0. Trailing coefficients that compare equal to 0.0
/// are dropped on construction, so degree() is exact and deterministic.
/// Non-finite coefficients are rejected with InvalidArgument.
class Polynomial {
 public:
  Polynomial();
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

  // Coefficient of x^i; zero beyond the stored degree.
  double operator[](std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : 0.0;
  }

  // Horner evaluation.
  double operator()(double x) const noexcept;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

double eval(const Polynomial& p, double x);

/// k-th derivative. k greater than the degree gives the zero polynomial.
Polynomial derivative(const Polynomial& p, unsigned k = 1);

/// The antiderivative vanishing at 0.
Polynomial antiderivative(const Polynomial& p);

Polynomial operator+(const Polynomial& p, const Polynomial& q);
Polynomial operator-(const Polynomial& p, const Polynomial& q);
Polynomial operator*(const Polynomial& p, const Polynomial& q);
Polynomial operator*(double s, const Polynomial& p);

/// Closed-form integral of p over [lo, hi].
double definite_integral(const Polynomial& p, double lo, double hi);

/// Returns q with q(t) = p(shift + scale * t), expanded binomially.
Polynomial compose_affine(const Polynomial& p, double shift, double scale);

/// i! / (i - k)!, the factor x^i picks up under k-fold differentiation.
/// Zero when k > i.
double falling_factorial(unsigned i, unsigned k);

}  // namespace sobofit
