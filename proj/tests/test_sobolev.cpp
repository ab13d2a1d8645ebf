#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "random_objective.hpp"
#include "sobofit/error.hpp"
#include "sobofit/sobolev.hpp"

using namespace sobofit;
using testing_support::as_eigen;
using testing_support::as_vector;
using testing_support::random_objective;

namespace {

SobolevObjective relu_objective(std::vector<double> per_order) {
  return SobolevObjective(relu_target(-8, 8), WeightTable::broadcast(per_order, 2), 2);
}

SobolevObjective endpoints_objective() {
  const PiecewiseTarget t({Segment(-6, -3, Polynomial{0}), Segment(3, 6, Polynomial{0, 1})});
  return SobolevObjective(t, WeightTable::broadcast({1, 1}, 2), 2);
}

bool rel_close(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

}  // namespace

TEST_CASE("weight table") {
  const auto w = WeightTable::broadcast({1, 0, 2}, 3);
  CHECK(w.segment_count() == 3);
  CHECK(w(2, 2) == 2);
  CHECK(w(0, 5) == 0);
  CHECK(w(9, 0) == 0);
  CHECK(w.max_order() == 2);
  CHECK(WeightTable::broadcast({1, 0, 0}, 1).max_order() == 0);
  CHECK(w.scaled(3)(1, 2) == 6);
  CHECK_THROWS_AS(WeightTable(std::vector<std::vector<double>>{{1, -0.5}}), InvalidObjective);
  CHECK_THROWS_AS(WeightTable(std::vector<std::vector<double>>{{NAN}}), InvalidObjective);
}

TEST_CASE("objective invariants") {
  CHECK_THROWS_WITH_AS(SobolevObjective(relu_target(-8, 8), WeightTable::broadcast({0, 1}, 2), 2),
                       "all order-0 weights are zero", InvalidObjective);
  CHECK_THROWS_AS(SobolevObjective(relu_target(-8, 8), WeightTable::broadcast({1, 1, 1}, 2), 1), InvalidObjective);
  CHECK_THROWS_AS(SobolevObjective(relu_target(-8, 8), WeightTable::broadcast({1}, 1), 2), InvalidObjective);
  // Only one segment carries an order-0 weight: still valid.
  CHECK_NOTHROW(SobolevObjective(relu_target(-8, 8), WeightTable({{0, 1}, {1, 1}}), 2));
  // Zero weights above the degree are harmless.
  CHECK_NOTHROW(SobolevObjective(relu_target(-8, 8), WeightTable::broadcast({1, 0, 0, 0}, 2), 1));
}

TEST_CASE("raw-basis assembly reproduces the printed ReLU expansion") {
  const auto form = assemble(relu_objective({1, 1})).raw;
  const Eigen::Matrix3d g = form.gram;
  CHECK(g(0, 0) == doctest::Approx(16).epsilon(1e-14));
  CHECK(g(1, 1) == doctest::Approx(1072.0 / 3).epsilon(1e-14));
  CHECK(g(2, 2) == doctest::Approx(217088.0 / 15).epsilon(1e-14));
  CHECK(g(0, 2) == doctest::Approx(1024.0 / 3).epsilon(1e-14));
  CHECK(g(0, 1) == 0.0);
  CHECK(g(1, 2) == 0.0);
  CHECK((g - g.transpose()).norm() == 0.0);
  CHECK(form.rhs(0) == doctest::Approx(32).epsilon(1e-14));
  CHECK(form.rhs(1) == doctest::Approx(536.0 / 3).epsilon(1e-14));
  CHECK(form.rhs(2) == doctest::Approx(1088).epsilon(1e-14));
  CHECK(form.constant == doctest::Approx(536.0 / 3).epsilon(1e-14));

  // Printed: 14472.53a^2 + 357.3b^2 + 16c^2 + 682.6ac - 357.3b + 178.6 - 64c - 2176a
  CHECK(rel_close(g(2, 2), 14472.0 + 8.0 / 15, 1e-6));
  CHECK(rel_close(g(1, 1), 357.0 + 1.0 / 3, 1e-6));
  CHECK(rel_close(g(0, 0), 16, 1e-6));
  CHECK(rel_close(2 * g(0, 2), 682.0 + 2.0 / 3, 1e-6));
  CHECK(rel_close(-2 * form.rhs(1), -(357.0 + 1.0 / 3), 1e-6));
  CHECK(rel_close(form.constant, 178.0 + 2.0 / 3, 1e-6));
  CHECK(rel_close(-2 * form.rhs(0), -64, 1e-6));
  CHECK(rel_close(-2 * form.rhs(2), -2176, 1e-6));
}

TEST_CASE("single L2 weight reduces to the plain Gram matrix") {
  const auto t = relu_target(-8, 8);
  const auto form = assemble_form(SobolevObjective(t, WeightTable({{0, 0}, {1}}), 3));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double want = std::pow(8.0, i + j + 1) / (i + j + 1);
      CHECK(form.gram(i, j) == doctest::Approx(want).epsilon(1e-14));
    }
  }
}

TEST_CASE("endpoints assembly matches quadrature, not the printed cross terms") {
  const auto obj = endpoints_objective();
  const auto form = assemble(obj).raw;
  CHECK(form.gram(2, 2) == doctest::Approx(3517.2).epsilon(1e-12));
  CHECK(form.gram(1, 1) == doctest::Approx(132).epsilon(1e-12));
  CHECK(form.gram(0, 0) == doctest::Approx(6).epsilon(1e-12));
  CHECK(form.rhs(0) == doctest::Approx(13.5).epsilon(1e-12));
  CHECK(form.rhs(1) == doctest::Approx(66).epsilon(1e-12));
  CHECK(form.rhs(2) == doctest::Approx(330.75).epsilon(1e-12));
  CHECK(form.constant == doctest::Approx(66).epsilon(1e-12));

  // Every entry against Simpson quadrature of its defining integral.
  auto basis_k = [](int i, unsigned k, double x) {
    std::vector<double> e(static_cast<std::size_t>(i) + 1, 0.0);
    e.back() = 1.0;
    return oracle::term_sum(oracle::differentiate(e, k), x);
  };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double quad = 0;
      for (const auto& seg : obj.target().segments()) {
        for (unsigned k = 0; k < 2; ++k) {
          quad += oracle::simpson([&](double x) { return basis_k(i, k, x) * basis_k(j, k, x); }, seg.lo, seg.hi);
        }
      }
      CHECK(form.gram(i, j) == doctest::Approx(quad).epsilon(1e-8));
    }
    double quad_r = 0;
    for (const auto& seg : obj.target().segments()) {
      const std::vector<double> f(seg.poly.coeffs().begin(), seg.poly.coeffs().end());
      for (unsigned k = 0; k < 2; ++k) {
        const auto fk = oracle::differentiate(f, k);
        quad_r += oracle::simpson([&](double x) { return oracle::term_sum(fk, x) * basis_k(i, k, x); }, seg.lo, seg.hi);
      }
    }
    CHECK(form.rhs(i) == doctest::Approx(quad_r).epsilon(1e-8));
  }
  // Odd moments cancel over the symmetric pair of segments.
  CHECK(form.gram(0, 1) == doctest::Approx(0).epsilon(1e-12));
  CHECK(std::abs(form.gram(1, 2)) < 1e-9);
}

TEST_CASE("solve") {
  QuadraticForm fb{Eigen::MatrixXd::Constant(1, 1, 1072.0 / 3), Eigen::VectorXd::Constant(1, 536.0 / 3), 0};
  CHECK(solve(fb)(0) == 0.5);

  const Eigen::VectorXd r = (Eigen::VectorXd(3) << 1, -2, 3).finished();
  CHECK((solve(QuadraticForm{Eigen::MatrixXd::Identity(3, 3), r, 0}) - r).norm() == 0);

  const auto c = solve(assemble(relu_objective({1, 1})).raw);
  CHECK(c(0) == doctest::Approx(0.7974683544).epsilon(1e-9));
  CHECK(c(1) == 0.5);
  CHECK(c(2) == doctest::Approx(0.0563686709).epsilon(1e-8));
}

TEST_CASE("fit reproduces the exact ReLU polynomials") {
  const auto lg = fit(relu_objective({1, 1}));
  CHECK(std::abs(lg.poly[0] - 0.7974683544) < 1e-8);
  CHECK(std::abs(lg.poly[1] - 0.5) < 1e-8);
  CHECK(std::abs(lg.poly[2] - 0.0563686709) < 1e-8);
  CHECK(std::abs(lg.poly[0] - 63.0 / 79) < 1e-14);
  CHECK(std::abs(lg.poly[2] - 285.0 / 5056) < 1e-15);
  CHECK(lg.method == SolveMethod::ldlt);
  CHECK(lg.gram_condition_estimate >= 1.0);

  const auto ls = fit(relu_objective({1, 0}));
  CHECK(std::abs(ls.poly[0] - 0.75) < 1e-12);
  CHECK(std::abs(ls.poly[1] - 0.5) < 1e-12);
  CHECK(std::abs(ls.poly[2] - 0.05859375) < 1e-12);

  const auto sc = fit(endpoints_objective());
  CHECK(std::abs(sc.poly[0] - 1.1110537229) < 1e-8);
  CHECK(std::abs(sc.poly[1] - 0.5) < 1e-8);
  CHECK(std::abs(sc.poly[2] - 0.054235537) < 1e-8);
}

TEST_CASE("fit cost equals the closed-form cost and the quadratic form") {
  const auto obj = relu_objective({1, 1});
  const auto r = fit(obj);
  // exact minimum from symbolic integration: 2.48523206751054852...
  CHECK(r.cost == doctest::Approx(2.4852320675105485).epsilon(1e-12));
  CHECK(cost_value(obj, r.poly) == doctest::Approx(r.cost).epsilon(1e-9));
  CHECK(r.form.raw.value(as_eigen(r.poly, 3)) == doctest::Approx(r.cost).epsilon(1e-9));
  CHECK(r.form.unit.value(as_eigen(r.unit_poly, 3)) == doctest::Approx(r.cost).epsilon(1e-12));
}

TEST_CASE("cost_value") {
  const auto l2 = relu_objective({1});
  const auto ls = fit(l2);
  const double quad = oracle::simpson([&](double x) { return std::pow(std::max(0.0, x) - ls.poly(x), 2); }, -8, 0) +
                      oracle::simpson([&](double x) { return std::pow(std::max(0.0, x) - ls.poly(x), 2); }, 0, 8);
  CHECK(cost_value(l2, ls.poly) == doctest::Approx(quad).epsilon(1e-8));
  CHECK(cost_value(l2, ls.poly) == doctest::Approx(4.0 / 3).epsilon(1e-12));

  const Polynomial q{0.2, -1, 0.3};
  const SobolevObjective exact(PiecewiseTarget({Segment(-2, 1, q), Segment(1, 4, q)}), WeightTable::broadcast({1, 2, 3}, 2),
                               2);
  CHECK(cost_value(exact, q) == 0.0);

  // Candidates above the objective degree are allowed.
  CHECK(cost_value(l2, Polynomial{0, 0, 0, 0, 1}) > 0);

  std::mt19937_64 rng(23);
  const auto lg_obj = relu_objective({1, 1});
  const auto lg = fit(lg_obj);
  for (int i = 0; i < 20; ++i) {
    const Polynomial dir(oracle::random_coeffs(rng, 3));
    CHECK(cost_value(lg_obj, lg.poly + 1e-3 * dir) > cost_value(lg_obj, lg.poly));
  }
}

TEST_CASE("fit_final") {
  const auto relu = SampleSet::uniform([](double x) { return std::max(0.0, x); }, -8, 8, 16001);
  const auto r = fit_final(relu, 2, 2, WeightTable::broadcast({1}, 1));
  const auto d = discrete_polyfit(relu, 2);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(r.poly[i] - d[i]) < 1e-6);

  const auto cube = SampleSet::uniform([](double x) { return x * x * x; }, -1, 1, 201);
  for (const auto& w : {std::vector<double>{1}, std::vector<double>{1, 1}, std::vector<double>{0.5, 2, 0, 3}}) {
    const auto c = fit_final(cube, 3, 5, WeightTable::broadcast(w, 1));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(c.poly[i] - (i == 3 ? 1.0 : 0.0)) < 1e-8);
  }

  CHECK_THROWS_AS(fit_final(cube, 3, 2, WeightTable::broadcast({1}, 1)), InvalidArgument);
  CHECK_THROWS_AS(fit_final(cube, 1, 5, WeightTable::broadcast({1, 1, 1}, 1)), InvalidObjective);
}

TEST_CASE("unit-variable objective has the same cost") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const auto obj = random_objective(rng, 6);
    const auto map = AffineMap::onto_unit(obj.target().lo(), obj.target().hi());
    const auto unit = to_unit_variable(obj, map);
    const auto p = testing_support::random_poly_on(rng, obj.degree() + 1, testing_support::domain_half_width(obj));
    CHECK(cost_value(unit, map.to_unit(p)) == doctest::Approx(cost_value(obj, p)).epsilon(1e-9));
  }
}

TEST_CASE("property: Gram symmetry, positive pivots, form identity") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto obj = random_objective(rng, 8);
    const auto a = assemble(obj);
    CHECK((a.raw.gram - a.raw.gram.transpose()).norm() == 0.0);
    CHECK((a.unit.gram - a.unit.gram.transpose()).norm() == 0.0);
    const auto r = fit(obj);
    CHECK(r.method == SolveMethod::ldlt);
    for (double p : r.pivots) CHECK(p > 0);

    const std::size_t n = obj.degree() + 1;
    const auto p = testing_support::random_poly_on(rng, n, testing_support::domain_half_width(obj));
    const double direct = cost_value(obj, p);
    CHECK(a.raw.value(as_eigen(p, n)) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("property: stationarity, scaling invariance, exact reproduction") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const auto obj = random_objective(rng, 6);
    const auto r = fit(obj);
    const auto map = r.form.map;
    const auto unit = to_unit_variable(obj, map);
    const auto grad = oracle::central_gradient(
        [&](const std::vector<double>& c) { return cost_value(unit, Polynomial(c)); }, as_vector(as_eigen(r.unit_poly, obj.degree() + 1)),
        1e-5);
    double inf = 0;
    for (double g : grad) inf = std::max(inf, std::abs(g));
    CHECK(inf < 1e-5 * (1 + std::abs(r.cost)));

    const double t = 0.25 + trial;
    const auto scaled = fit(SobolevObjective(obj.target(), obj.weights().scaled(t), obj.degree()));
    for (std::size_t i = 0; i <= obj.degree(); ++i) CHECK(std::abs(scaled.poly[i] - r.poly[i]) < 1e-9);
    CHECK(scaled.cost == doctest::Approx(t * r.cost).epsilon(1e-9).scale(1e-12));

    const auto q = testing_support::random_poly_on(rng, obj.degree() + 1, testing_support::domain_half_width(obj));
    std::vector<Segment> segs;
    for (const auto& s : obj.target().segments()) segs.emplace_back(s.lo, s.hi, q);
    const auto same = fit(SobolevObjective(PiecewiseTarget(std::move(segs)), obj.weights(), obj.degree()));
    for (std::size_t i = 0; i <= obj.degree(); ++i) CHECK(std::abs(same.poly[i] - q[i]) < 1e-8);
  }
}

TEST_CASE("property: agreement with the dense-grid oracle") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    const auto obj = random_objective(rng, 4);
    const auto r = fit(obj);
    const auto want = oracle::grid_sobolev_fit(testing_support::grid_segments(obj), obj.degree());
    for (std::size_t i = 0; i <= obj.degree(); ++i) CHECK(std::abs(r.poly[i] - want[i]) < 1e-4);
  }
}

TEST_CASE("numerically singular objectives raise SingularSystem") {
  // The monomial Gram matrix on [-1, 1] at degree 24 has a relative pivot
  // near 3e-13.
  const PiecewiseTarget t({Segment(-1, 1, Polynomial{0, 1})});
  try {
    fit(SobolevObjective(t, WeightTable::broadcast({1}, 1), 24));
    FAIL("expected SingularSystem");
  } catch (const SingularSystem& e) {
    CHECK(e.pivot_index() > 15);
  }
  CHECK_NOTHROW(fit(SobolevObjective(t, WeightTable::broadcast({1}, 1), 12)));
}
