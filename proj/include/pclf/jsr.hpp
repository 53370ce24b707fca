#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pclf/copositive.hpp"
#include "pclf/graph.hpp"
#include "pclf/lp_feasibility.hpp"

namespace pclf {

/// Largest number of products brute_force_bounds will form.
inline constexpr std::size_t kMaxProducts = 1'000'000;
/// Default cap on De Bruijn graph size in the hierarchy (2^7 nodes: l <= 8 for M = 2).
inline constexpr std::size_t kDefaultHierarchyNodes = 128;

/// Perron root of a square nonnegative matrix, from norms of repeated squares
/// rho(A) = lim |A^(2^k)|^(1/2^k) with the scale carried in log space.
double spectral_radius(const Eigen::MatrixXd& A, double tol = 1e-12);

struct ProductBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// lower = max over products P of length k <= K of rho(P)^(1/k);
/// upper = min over k <= K of max over products of |P|_inf^(1/k).
/// Throws CapExceeded when M + M^2 + ... + M^K > kMaxProducts.
ProductBounds brute_force_bounds(const MatrixSet& A, int K);

struct HierarchyRow {
  std::string step;  ///< "(l)" or "(l)ᵈ"
  Flavor kind = Flavor::dual;
  int level = 0;
  std::size_t graph_size = 0;
  double rho = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct HierarchyReport {
  std::vector<HierarchyRow> rows;
  double lower = 0.0;
  double upper = 0.0;
  double epsilon = 0.0;
  bool stable = false;    ///< upper < 1
  bool unstable = false;  ///< lower > 1
};

/// For l = 1, 2, ...: step (l) is the dual bound on de_bruijn(M, l) and step
/// (l)ᵈ the primal bound on its transpose. After each step
///   lower <- max(lower, n^(-1/l) rho),  upper <- min(upper, rho)
/// and the loop stops once upper - lower < epsilon or l > l_max.
/// The two steps of a level are solved concurrently.
HierarchyReport hierarchy(const MatrixSet& A, double epsilon, int l_max,
                          std::size_t max_nodes = kDefaultHierarchyNodes,
                          double tol = kDefaultBisectionTol);

/// Samples x >= 0 and checks V(A_i x) <= gamma V(x) for every mode, where V is
/// the min of the node duals (dual certificate, g complete) or the max of the
/// node primals (primal certificate, g co-complete).
bool common_function_check(const LabeledGraph& g, const MatrixSet& A, const Certificate& cert,
                           int samples, std::uint64_t seed = 1);

}  // namespace pclf
