#include "pclf/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pclf/errors.hpp"

namespace pclf {

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kHarrisSlack = 1e-9;
constexpr long kRefactorEvery = 50;
constexpr long kDegenerateRun = 50;

}  // namespace

Phase1Result phase1(const Eigen::MatrixXd& C, const Eigen::VectorXd& b, const Phase1Options& options) {
  const Eigen::Index m = C.rows();
  const Eigen::Index k = C.cols();
  if (b.size() != m) throw InputError("phase1: right-hand side has the wrong length");
  if (!C.allFinite() || !b.allFinite()) throw InputError("phase1: non-finite constraint data");

  Phase1Result result;
  result.y = Eigen::VectorXd::Zero(k);
  if (m == 0 || (b.array() >= 0.0).all()) {
    result.feasible = true;
    return result;
  }

  // Columns: structural [0, k), slacks [k, k+m), artificials [k+m, k+m+p), rhs last.
  Eigen::Index p = 0;
  for (Eigen::Index r = 0; r < m; ++r) {
    if (b(r) < 0.0) ++p;
  }
  const Eigen::Index n_cols = k + m + p;
  const Eigen::Index rhs = n_cols;

  // The starting basis is the identity, so `original` is also the first tableau.
  Tableau original = Tableau::Zero(m, n_cols + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  std::vector<bool> is_artificial(static_cast<std::size_t>(n_cols), false);
  Eigen::Index next_art = k + m;
  for (Eigen::Index r = 0; r < m; ++r) {
    const double sign = b(r) < 0.0 ? -1.0 : 1.0;
    original.row(r).head(k) = sign * C.row(r);
    original(r, k + r) = sign;
    original(r, rhs) = sign * b(r);
    if (sign < 0.0) {
      original(r, next_art) = 1.0;
      is_artificial[static_cast<std::size_t>(next_art)] = true;
      basis[static_cast<std::size_t>(r)] = next_art++;
    } else {
      basis[static_cast<std::size_t>(r)] = k + r;
    }
  }
  Tableau T = original;
  Eigen::RowVectorXd cost(n_cols + 1);

  // Reduced costs of "minimize sum of artificials" for the current basis.
  auto reprice = [&] {
    cost.setZero();
    for (Eigen::Index r = 0; r < m; ++r) {
      if (is_artificial[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])]) cost -= T.row(r);
    }
    for (Eigen::Index j = k + m; j < n_cols; ++j) cost(j) = 0.0;
  };
  // Rebuilds the tableau from the original data to shed accumulated rounding.
  auto refactor = [&] {
    Eigen::MatrixXd B(m, m);
    for (Eigen::Index r = 0; r < m; ++r) B.col(r) = original.col(basis[static_cast<std::size_t>(r)]);
    T = Eigen::PartialPivLU<Eigen::MatrixXd>(B).solve(Eigen::MatrixXd(original));
    for (Eigen::Index r = 0; r < m; ++r) {
      T(r, rhs) = std::max(0.0, T(r, rhs));
    }
    reprice();
  };
  // Does the basic solution still reproduce the right-hand side?
  auto drifted = [&](double tol) {
    Eigen::VectorXd lhs = -original.col(rhs);
    for (Eigen::Index r = 0; r < m; ++r) lhs += T(r, rhs) * original.col(basis[static_cast<std::size_t>(r)]);
    return lhs.cwiseAbs().maxCoeff() > tol;
  };
  reprice();

  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  const double done = options.feasibility_tol * scale;
  std::vector<bool> banned(static_cast<std::size_t>(n_cols), false);
  bool fresh = true;

  // Dantzig pricing (most negative reduced cost); Bland (first improving column)
  // while a run of degenerate pivots lasts, which rules out cycling.
  std::vector<bool> skipped(static_cast<std::size_t>(n_cols), false);
  auto entering = [&](bool bland) {
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < n_cols; ++j) {
      const auto u = static_cast<std::size_t>(j);
      if (banned[u] || skipped[u] || cost(j) >= -options.pivot_eps) continue;
      if (bland) return j;
      if (best < 0 || cost(j) < cost(best)) best = j;
    }
    return best;
  };
  // Two-pass (Harris) ratio test: among rows whose ratio is within the feasibility
  // tolerance of the minimum, pivot on the largest entry to keep the basis well
  // conditioned. Remaining ties go to the smallest basic index.
  auto leaving = [&](Eigen::Index enter) {
    double bound = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < m; ++r) {
      const double a = T(r, enter);
      if (a > options.pivot_eps) bound = std::min(bound, (T(r, rhs) + kHarrisSlack) / a);
    }
    Eigen::Index leave = -1;
    for (Eigen::Index r = 0; r < m; ++r) {
      const double a = T(r, enter);
      if (a <= options.pivot_eps || T(r, rhs) / a > bound) continue;
      if (leave < 0 || a > T(leave, enter) ||
          (a == T(leave, enter) && basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
        leave = r;
      }
    }
    return leave;
  };

  long degenerate_run = 0;
  while (true) {
    // Columns no row can pivot on improve only by rounding noise and are passed over.
    const bool bland = degenerate_run >= kDegenerateRun;
    std::fill(skipped.begin(), skipped.end(), false);
    Eigen::Index enter = -cost(rhs) > done ? entering(bland) : Eigen::Index{-1};
    Eigen::Index leave = enter < 0 ? -1 : leaving(enter);
    while (enter >= 0 && leave < 0 && fresh) {
      skipped[static_cast<std::size_t>(enter)] = true;
      enter = entering(bland);
      leave = enter < 0 ? -1 : leaving(enter);
    }
    if (leave < 0) {
      // An infeasible verdict is only given on a fresh factorization.
      if (!fresh && (-cost(rhs) > done || drifted(1e-3 * done))) {
        refactor();
        fresh = true;
        continue;
      }
      break;
    }
    degenerate_run = T(leave, rhs) <= kHarrisSlack ? degenerate_run + 1 : 0;

    if (++result.pivots > options.max_pivots) {
      throw SolverError("phase1: pivot cap of " + std::to_string(options.max_pivots) + " exceeded");
    }

    T.row(leave) /= T(leave, enter);
    for (Eigen::Index r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double f = T(r, enter);
      if (f != 0.0) T.row(r) -= f * T.row(leave);
    }
    const double f = cost(enter);
    cost -= f * T.row(leave);

    const Eigen::Index left = basis[static_cast<std::size_t>(leave)];
    if (is_artificial[static_cast<std::size_t>(left)]) banned[static_cast<std::size_t>(left)] = true;
    basis[static_cast<std::size_t>(leave)] = enter;
    T.col(rhs) = T.col(rhs).cwiseMax(0.0);
    fresh = false;
    if (result.pivots % kRefactorEvery == 0 && drifted(0.1 * done)) {
      refactor();
      fresh = true;
    }
  }

  for (Eigen::Index r = 0; r < m; ++r) {
    const Eigen::Index j = basis[static_cast<std::size_t>(r)];
    if (j < k) result.y(j) = std::max(0.0, T(r, rhs));
  }
  // The point itself is the verdict.
  const double slack = done * std::max(1.0, result.y.cwiseAbs().maxCoeff());
  result.feasible = ((C * result.y - b).array() <= slack).all();
  if (!result.feasible) result.y.setZero();
  return result;
}

}  // namespace pclf
