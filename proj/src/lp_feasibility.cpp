#include "pclf/lp_feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace pclf {

namespace {

struct Block {
  std::size_t scaled;
  std::size_t bound;
  int label;
};

void check_inputs(const LabeledGraph& g, const MatrixSet& A) {
  if (g.alphabet_size() != A.size()) {
    throw InputError("graph alphabet has " + std::to_string(g.alphabet_size()) +
                     " labels but the matrix set has " + std::to_string(A.size()) + " modes");
  }
}

}  // namespace

double gamma_ceiling(const MatrixSet& A) {
  double hi = 0.0;
  // Plain loops: the sums of A and A' must round identically.
  for (const auto& M : A.matrices()) {
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      double row = 0.0;
      double col = 0.0;
      for (Eigen::Index j = 0; j < M.cols(); ++j) {
        row += M(i, j);
        col += M(j, i);
      }
      hi = std::max({hi, row, col});
    }
  }
  return hi;
}

std::optional<Certificate> feasible(const LabeledGraph& g, const MatrixSet& A, Flavor flavor,
                                    double gamma, const Phase1Options& options) {
  check_inputs(g, A);
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InputError("gamma must be finite and >= 0");

  std::vector<Block> blocks;
  blocks.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    if (flavor == Flavor::primal) {
      blocks.push_back({e.dest, e.source, e.label});
    } else {
      blocks.push_back({e.source, e.dest, e.label});
    }
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) {
    return std::tie(x.scaled, x.bound, x.label) < std::tie(y.scaled, y.bound, y.label);
  });

  std::vector<Eigen::MatrixXd> effective;
  for (const auto& M : A.matrices()) {
    effective.push_back(flavor == Flavor::primal ? Eigen::MatrixXd(M.transpose()) : M);
  }

  const Eigen::Index n = A.dimension();
  const auto rows = static_cast<Eigen::Index>(blocks.size()) * n;
  const auto cols = static_cast<Eigen::Index>(g.node_count()) * n;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b(rows);
  Eigen::Index row = 0;
  for (const Block& blk : blocks) {
    const Eigen::MatrixXd& B = effective[static_cast<std::size_t>(blk.label - 1)];
    const auto sc = static_cast<Eigen::Index>(blk.scaled) * n;
    const auto bd = static_cast<Eigen::Index>(blk.bound) * n;
    for (Eigen::Index r = 0; r < n; ++r, ++row) {
      double row_sum = 0.0;
      for (Eigen::Index c = 0; c < n; ++c) {
        C(row, sc + c) += B(r, c);
        row_sum += B(r, c);
      }
      C(row, bd + r) -= gamma;
      b(row) = gamma - row_sum;
    }
  }

  const Phase1Result lp = phase1(C, b, options);
  if (!lp.feasible) return std::nullopt;

  Certificate cert{flavor, gamma, {}};
  for (std::size_t s = 0; s < g.node_count(); ++s) {
    const auto off = static_cast<Eigen::Index>(s) * n;
    cert.vectors.emplace(g.node(s), PositiveVector(lp.y.segment(off, n).array() + 1.0));
  }
  return cert;
}

RhoBound rho_bound(const LabeledGraph& g, const MatrixSet& A, Flavor flavor, double tol,
                   const Phase1Options& options) {
  check_inputs(g, A);
  if (!(tol > 0.0)) throw InputError("bisection tolerance must be positive");

  RhoBound out;
  if (!is_path_complete(g)) {
    out.warnings.push_back("graph is not path-complete; the value does not bound the JSR");
  }

  double lo = 0.0;
  double hi = gamma_ceiling(A);
  auto cert = feasible(g, A, flavor, hi, options);
  out.trace.push_back({hi, cert.has_value()});
  if (!cert) throw SolverError("LP infeasible at the starting ceiling " + std::to_string(hi));
  out.certificate = std::move(*cert);

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    auto trial = feasible(g, A, flavor, mid, options);
    out.trace.push_back({mid, trial.has_value()});
    if (trial) {
      hi = mid;
      out.certificate = std::move(*trial);
    } else {
      lo = mid;
    }
  }
  out.lower = lo;
  out.upper = hi;
  out.gamma_star = 0.5 * (lo + hi);
  return out;
}

}  // namespace pclf
