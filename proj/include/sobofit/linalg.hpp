#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace sobofit {

/// Relative pivot below which a system is declared singular.
inline constexpr double kSingularPivotTolerance = 1e-12;

enum class SolveMethod { ldlt, pivoted_elimination };

struct SolveResult {
  Eigen::VectorXd x;
  SolveMethod method;
  // Diagonal pivots of the factorization that produced x: D of L D L^T, or
  // the eliminated diagonal after row pivoting.
  std::vector<double> pivots;

  double condition_estimate() const;
};

/// Solves A x = b for symmetric A. Tries an L D L^T factorization first; a nonpositive pivot
/// switches to Gaussian elimination with partial row pivoting. A pivot whose
/// magnitude relative to its scale falls below kSingularPivotTolerance
/// raises SingularSystem with that pivot's index.
SolveResult solve_symmetric(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace sobofit
