#include "sobofit/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "sobofit/error.hpp"

namespace sobofit {

namespace {

std::vector<double> normalized(std::vector<double> c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.empty()) c.push_back(0.0);
  return c;
}

}  // namespace

Polynomial::Polynomial() : coeffs_{0.0} {}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(normalized(std::move(coeffs))) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw InvalidArgument("polynomial coefficient is not finite");
  }
}

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : Polynomial(std::vector<double>(coeffs)) {}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double eval(const Polynomial& p, double x) { return p(x); }

double falling_factorial(unsigned i, unsigned k) {
  if (k > i) return 0.0;
  double f = 1.0;
  for (unsigned j = 0; j < k; ++j) f *= static_cast<double>(i - j);
  return f;
}

Polynomial derivative(const Polynomial& p, unsigned k) {
  // One order at a time, so derivative(derivative(p, j), k) performs the
  // same multiplications as derivative(p, j + k) and matches it bit for bit.
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  for (unsigned step = 0; step < k && c.size() > 1; ++step) {
    for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = static_cast<double>(i) * c[i];
    c.pop_back();
  }
  if (k >= p.size()) return Polynomial{};
  return Polynomial(std::move(c));
}

Polynomial antiderivative(const Polynomial& p) {
  std::vector<double> out(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  std::vector<double> out(std::max(p.size(), q.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p[i] + q[i];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) {
  std::vector<double> out(std::max(p.size(), q.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p[i] - q[i];
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  std::vector<double> out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  }
  return Polynomial(std::move(out));
}

Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> out(p.coeffs().begin(), p.coeffs().end());
  for (double& c : out) c *= s;
  return Polynomial(std::move(out));
}

double definite_integral(const Polynomial& p, double lo, double hi) {
  // Powers are built incrementally: lo^(i+1), hi^(i+1).
  double lo_pow = lo;
  double hi_pow = hi;
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += p[i] * (hi_pow - lo_pow) / static_cast<double>(i + 1);
    lo_pow *= lo;
    hi_pow *= hi;
  }
  return sum;
}

Polynomial compose_affine(const Polynomial& p, double shift, double scale) {
  const Polynomial inner{shift, scale};
  Polynomial acc{p[p.degree()]};
  for (std::size_t i = p.degree(); i-- > 0;) acc = acc * inner + Polynomial{p[i]};
  return acc;
}

}  // namespace sobofit
