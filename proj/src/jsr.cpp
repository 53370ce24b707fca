#include "pclf/jsr.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>

#include "pclf/lifts.hpp"

namespace pclf {

double spectral_radius(const Eigen::MatrixXd& A, double tol) {
  if (A.rows() != A.cols()) throw InputError("spectral_radius needs a square matrix");
  if (A.size() == 0) throw InputError("spectral_radius of an empty matrix");
  if ((A.array() < 0.0).any()) throw InputError("spectral_radius expects a nonnegative matrix");

  // Invariant: A^(2^k) = exp(log_scale) * B.
  Eigen::MatrixXd B = A;
  double log_scale = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  double estimate = 0.0;
  double power = 1.0;
  for (int k = 0; k < 64; ++k) {
    const double norm = B.cwiseAbs().rowwise().sum().maxCoeff();
    if (norm == 0.0) return 0.0;
    B /= norm;
    log_scale += std::log(norm);
    estimate = std::exp(log_scale / power);
    if (std::abs(estimate - previous) <= tol * std::max(1.0, estimate)) return estimate;
    previous = estimate;
    B = B * B;
    log_scale *= 2.0;
    power *= 2.0;
  }
  return estimate;
}

namespace {

struct ProductWalk {
  const MatrixSet& A;
  int K;
  std::vector<double> max_norm;  // per length
  double lower = 0.0;

  void visit(const Eigen::MatrixXd& P, int length) {
    const double inf_norm = P.rowwise().sum().maxCoeff();
    max_norm[static_cast<std::size_t>(length)] = std::max(max_norm[static_cast<std::size_t>(length)], inf_norm);
    lower = std::max(lower, std::pow(spectral_radius(P), 1.0 / length));
    if (length == K) return;
    for (const auto& M : A.matrices()) visit(M * P, length + 1);
  }
};

}  // namespace

ProductBounds brute_force_bounds(const MatrixSet& A, int K) {
  if (K < 1) throw InputError("product depth K must be >= 1");
  double count = 0.0;
  double layer = 1.0;
  for (int k = 1; k <= K; ++k) {
    layer *= A.size();
    count += layer;
  }
  if (count > static_cast<double>(kMaxProducts)) {
    throw CapExceeded("brute force at depth " + std::to_string(K) + " needs " +
                      std::to_string(static_cast<long long>(count)) + " products (cap " +
                      std::to_string(kMaxProducts) + ")");
  }

  ProductWalk walk{A, K, std::vector<double>(static_cast<std::size_t>(K) + 1, 0.0), 0.0};
  for (const auto& M : A.matrices()) walk.visit(M, 1);

  ProductBounds out;
  out.lower = walk.lower;
  out.upper = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= K; ++k) {
    out.upper = std::min(out.upper, std::pow(walk.max_norm[static_cast<std::size_t>(k)], 1.0 / k));
  }
  return out;
}

HierarchyReport hierarchy(const MatrixSet& A, double epsilon, int l_max, std::size_t max_nodes,
                          double tol) {
  if (!(epsilon > 0.0) && l_max < 1) throw InputError("hierarchy needs epsilon > 0 or l_max >= 1");

  HierarchyReport report;
  report.epsilon = epsilon;
  report.lower = 0.0;
  report.upper = std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(A.dimension());
  const int M = A.size();

  auto record = [&](std::string step, Flavor kind, int level, std::size_t size, double rho) {
    report.lower = std::max(report.lower, std::pow(n, -1.0 / level) * rho);
    report.upper = std::min(report.upper, rho);
    report.rows.push_back({std::move(step), kind, level, size, rho, report.lower, report.upper});
    return report.upper - report.lower < epsilon;
  };

  for (int l = 1; l_max < 1 || l <= l_max; ++l) {
    double size = std::pow(static_cast<double>(M), l - 1);
    if (size > static_cast<double>(max_nodes)) {
      throw CapExceeded("De Bruijn graph at level " + std::to_string(l) + " has " +
                        std::to_string(static_cast<long long>(size)) + " nodes (cap " +
                        std::to_string(max_nodes) + ")");
    }
    const LabeledGraph db = de_bruijn(M, l);
    const LabeledGraph db_t = transpose(db);
    auto dual_step = std::async(std::launch::async, [&] { return rho_bound(db, A, Flavor::dual, tol); });
    auto primal_step = std::async(std::launch::async, [&] { return rho_bound(db_t, A, Flavor::primal, tol); });
    const double rho_dual = dual_step.get().gamma_star;
    const double rho_primal = primal_step.get().gamma_star;

    const std::string tag = std::to_string(l);
    if (record("(" + tag + ")", Flavor::dual, l, db.node_count(), rho_dual)) break;
    if (record("(" + tag + ")ᵈ", Flavor::primal, l, db_t.node_count(), rho_primal)) break;
  }

  report.stable = report.upper < 1.0;
  report.unstable = report.lower > 1.0;
  return report;
}

namespace {

double combined_value(const Certificate& cert, const std::vector<const PositiveVector*>& vs,
                      const Eigen::VectorXd& x) {
  if (cert.flavor == Flavor::dual) {
    double v = std::numeric_limits<double>::infinity();
    for (const auto* p : vs) v = std::min(v, dual_eval(*p, x));
    return v;
  }
  double v = 0.0;
  for (const auto* p : vs) v = std::max(v, primal_eval(*p, x));
  return v;
}

}  // namespace

bool common_function_check(const LabeledGraph& g, const MatrixSet& A, const Certificate& cert,
                           int samples, std::uint64_t seed) {
  if (samples < 0) throw InputError("sample count must be >= 0");
  const CompletenessFlags flags = completeness_flags(g);
  if (cert.flavor == Flavor::dual && !flags.complete) {
    throw InputError("min of duals needs a complete graph");
  }
  if (cert.flavor == Flavor::primal && !flags.co_complete) {
    throw InputError("max of primals needs a co-complete graph");
  }
  if (!verify_certificate(g, A, cert).ok) throw InputError("certificate does not verify on the graph");

  std::vector<const PositiveVector*> vs;
  for (const NodeId& s : g.nodes()) vs.push_back(&cert.at(s));

  const Eigen::Index n = A.dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto holds = [&](const Eigen::VectorXd& x) {
    const double base = combined_value(cert, vs, x);
    for (const auto& M : A.matrices()) {
      const double image = combined_value(cert, vs, M * x);
      if (image > cert.gamma * base * (1.0 + 1e-9) + 1e-12) return false;
    }
    return true;
  };

  for (Eigen::Index k = 0; k < n; ++k) {
    if (!holds(Eigen::VectorXd::Unit(n, k))) return false;
  }
  Eigen::VectorXd x(n);
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index k = 0; k < n; ++k) x(k) = unit(rng);
    if (!holds(x)) return false;
  }
  return true;
}

}  // namespace pclf
