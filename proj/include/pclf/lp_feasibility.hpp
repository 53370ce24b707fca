#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pclf/copositive.hpp"
#include "pclf/graph.hpp"
#include "pclf/simplex.hpp"

namespace pclf {

inline constexpr double kDefaultBisectionTol = 1e-6;

/// Is there a certificate of the given flavor for g at rate gamma?
///
/// Node vectors are normalized to v_s >= 1. Every edge (a, b, i) contributes
/// the n rows B y_scaled - gamma y_bound <= gamma - B 1 in y = v - 1, where
/// (B, scaled, bound) is (A_i', b, a) for primal and (A_i, a, b) for dual.
/// Rows are sorted by (scaled, bound, label), so primal on (g, A) and dual on
/// (transpose(g), A') build the same tableau.
std::optional<Certificate> feasible(const LabeledGraph& g, const MatrixSet& A, Flavor flavor,
                                    double gamma, const Phase1Options& options = {});

/// max_i max(largest row sum, largest column sum) of A_i; all-ones vectors certify it.
double gamma_ceiling(const MatrixSet& A);

struct BisectionStep {
  double gamma = 0.0;
  bool feasible = false;

  friend bool operator==(const BisectionStep&, const BisectionStep&) = default;
};

struct RhoBound {
  double gamma_star = 0.0;  ///< midpoint of the final bracket
  double lower = 0.0;       ///< largest gamma found infeasible (or 0)
  double upper = 0.0;       ///< smallest gamma found feasible
  Certificate certificate;  ///< witness at `upper`
  std::vector<BisectionStep> trace;
  std::vector<std::string> warnings;
};

/// Bisection for the smallest feasible gamma on [0, gamma_ceiling(A)] to width tol.
RhoBound rho_bound(const LabeledGraph& g, const MatrixSet& A, Flavor flavor,
                   double tol = kDefaultBisectionTol, const Phase1Options& options = {});

}  // namespace pclf
