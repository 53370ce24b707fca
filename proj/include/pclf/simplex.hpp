#pragma once

#include <Eigen/Dense>

namespace pclf {

struct Phase1Options {
  double pivot_eps = 1e-7;
  /// Residual sum of artificials, relative to max(1, |b|_inf), accepted as zero;
  /// the returned point satisfies C y <= b + tol max(1, |b|_inf) max(1, |y|_inf).
  double feasibility_tol = 1e-9;
  long max_pivots = 1'000'000;
};

struct Phase1Result {
  bool feasible = false;
  Eigen::VectorXd y;  ///< a point with y >= 0, C y <= b (only when feasible)
  long pivots = 0;
};

/// Decides whether {y >= 0 : C y <= b} is nonempty with a dense phase-1
/// simplex tableau. Pricing is Dantzig's, switching to Bland's rule during runs
/// of degenerate pivots; the ratio test is two-pass (Harris). The tableau is
/// refactored from the data when it drifts. Throws SolverError past max_pivots.
Phase1Result phase1(const Eigen::MatrixXd& C, const Eigen::VectorXd& b,
                    const Phase1Options& options = {});

}  // namespace pclf
