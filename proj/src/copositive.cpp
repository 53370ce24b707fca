#include "pclf/copositive.hpp"

#include <algorithm>
#include <cmath>

namespace pclf {

std::string_view to_string(Flavor flavor) { return flavor == Flavor::primal ? "primal" : "dual"; }

Flavor parse_flavor(std::string_view text) {
  if (text == "primal") return Flavor::primal;
  if (text == "dual") return Flavor::dual;
  throw InputError("unknown flavor \"" + std::string(text) + "\" (expected primal or dual)");
}

PositiveVector::PositiveVector(Eigen::VectorXd entries) : v_(std::move(entries)) {
  if (v_.size() == 0) throw InputError("positive vector must have dimension >= 1");
  for (Eigen::Index i = 0; i < v_.size(); ++i) {
    if (!(v_(i) > 0.0) || !std::isfinite(v_(i))) {
      throw InputError("positive vector entry " + std::to_string(i) + " is not strictly positive");
    }
  }
}

PositiveVector operator+(const PositiveVector& a, const PositiveVector& b) {
  if (a.size() != b.size()) throw InputError("dimension mismatch in vector sum");
  return PositiveVector(a.v_ + b.v_);
}

PositiveVector operator*(double lambda, const PositiveVector& v) {
  if (!(lambda > 0.0)) throw InputError("scaling factor must be positive");
  return PositiveVector(lambda * v.v_);
}

MatrixSet::MatrixSet(std::vector<Eigen::MatrixXd> matrices) : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw InputError("a matrix set needs at least one matrix");
  n_ = matrices_.front().rows();
  if (n_ < 1) throw InputError("matrices must have dimension >= 1");
  for (std::size_t k = 0; k < matrices_.size(); ++k) {
    const auto& A = matrices_[k];
    if (A.rows() != n_ || A.cols() != n_) {
      throw InputError("matrix " + std::to_string(k + 1) + " is " + std::to_string(A.rows()) + "x" +
                       std::to_string(A.cols()) + ", expected " + std::to_string(n_) + "x" +
                       std::to_string(n_));
    }
    if (!A.allFinite() || (A.array() < 0.0).any()) {
      throw InputError("matrix " + std::to_string(k + 1) + " has a negative or non-finite entry");
    }
  }
}

const Eigen::MatrixXd& MatrixSet::mode(int label) const {
  if (label < 1 || label > size()) {
    throw InputError("mode " + std::to_string(label) + " outside 1.." + std::to_string(size()));
  }
  return matrices_[static_cast<std::size_t>(label - 1)];
}

MatrixSet MatrixSet::transposed() const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(matrices_.size());
  for (const auto& A : matrices_) out.push_back(A.transpose());
  return MatrixSet(std::move(out));
}

const PositiveVector& Certificate::at(const NodeId& node) const {
  auto it = vectors.find(node);
  if (it == vectors.end()) throw InputError("certificate has no vector for node " + node.to_string());
  return it->second;
}

PositiveVector vee(const PositiveVector& v, const PositiveVector& w) {
  if (v.size() != w.size()) throw InputError("dimension mismatch in vee");
  return PositiveVector(v.entries().cwiseMin(w.entries()));
}

double edge_excess(Flavor flavor, const Eigen::MatrixXd& A, const PositiveVector& v_a,
                   const PositiveVector& v_b, double gamma) {
  if (A.rows() != A.cols() || A.rows() != v_a.size() || v_a.size() != v_b.size()) {
    throw InputError("dimension mismatch in edge inequality");
  }
  if (flavor == Flavor::primal) {
    return (A.transpose() * v_b.entries() - gamma * v_a.entries()).maxCoeff();
  }
  return (A * v_a.entries() - gamma * v_b.entries()).maxCoeff();
}

bool edge_holds(Flavor flavor, const Eigen::MatrixXd& A, const PositiveVector& v_a,
                const PositiveVector& v_b, double gamma, double tol) {
  return edge_excess(flavor, A, v_a, v_b, gamma) <= tol;
}

VerificationReport verify_certificate(const LabeledGraph& g, const MatrixSet& A,
                                      const Certificate& cert, double tol) {
  if (g.alphabet_size() != A.size()) {
    throw InputError("graph alphabet has " + std::to_string(g.alphabet_size()) +
                     " labels but the matrix set has " + std::to_string(A.size()) + " modes");
  }
  for (const NodeId& s : g.nodes()) {
    if (cert.at(s).size() != A.dimension()) {
      throw InputError("certificate vector for " + s.to_string() + " has dimension " +
                       std::to_string(cert.at(s).size()) + ", matrices are " +
                       std::to_string(A.dimension()) + "x" + std::to_string(A.dimension()));
    }
  }
  VerificationReport report;
  for (const Edge& e : g.edges()) {
    const double excess =
        edge_excess(cert.flavor, A.mode(e.label), cert.at(g.node(e.source)), cert.at(g.node(e.dest)), cert.gamma);
    if (excess > tol) {
      report.ok = false;
      report.violations.push_back({{g.node(e.source), g.node(e.dest), e.label}, excess});
    }
  }
  return report;
}

bool transport_supported(Flavor flavor, LiftKind kind) {
  switch (kind) {
    case LiftKind::sum:
      return true;
    case LiftKind::max:
      return flavor == Flavor::dual;
    case LiftKind::min:
    case LiftKind::comp:
    case LiftKind::backcomp:
      return flavor == Flavor::primal;
  }
  return false;
}

namespace {

PositiveVector floored(const Eigen::VectorXd& v, const NodeId& node) {
  if (v.minCoeff() < kPositivityFloor) {
    throw InputError("transported vector for " + node.to_string() +
                     " has an entry below the positivity floor");
  }
  return PositiveVector(v);
}

// A^{-1} when it exists and is entrywise nonnegative (A monomial).
Eigen::MatrixXd nonnegative_inverse(const Eigen::MatrixXd& A, int label) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) {
    throw InputError("backward composition transport: A_" + std::to_string(label) + " is singular");
  }
  Eigen::MatrixXd inverse = lu.inverse();
  const double scale = std::max(1.0, inverse.cwiseAbs().maxCoeff());
  if ((inverse.array() < -1e-12 * scale).any()) {
    throw InputError("backward composition transport: A_" + std::to_string(label) +
                     " has no nonnegative inverse (copositive norms need a monomial matrix)");
  }
  return inverse.cwiseMax(0.0);
}

}  // namespace

Certificate transport_certificate(const Certificate& cert, const LiftSpec& lift,
                                  const LabeledGraph& g, const MatrixSet& A) {
  if (!transport_supported(cert.flavor, lift.kind)) {
    throw InputError("unsupported combination: " + std::string(to_string(cert.flavor)) +
                     " certificate through the " + to_string(lift) + " lift");
  }
  if (!verify_certificate(g, A, cert).ok) {
    throw InputError("certificate does not verify on the input graph");
  }

  const LabeledGraph lifted = apply_lift(g, lift);
  Certificate out{cert.flavor, cert.gamma, {}};

  std::vector<Eigen::MatrixXd> inverses;
  if (lift.kind == LiftKind::backcomp) {
    for (int i = 1; i <= A.size(); ++i) inverses.push_back(nonnegative_inverse(A.mode(i), i));
  }

  for (const NodeId& node : lifted.nodes()) {
    switch (lift.kind) {
      case LiftKind::sum: {
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(A.dimension());
        for (const NodeId& m : node.members()) sum += cert.at(m).entries();
        out.vectors.emplace(node, floored(sum, node));
        break;
      }
      case LiftKind::max:
      case LiftKind::min: {
        Eigen::VectorXd joined = cert.at(node.members().front()).entries();
        for (const NodeId& m : node.members()) joined = joined.cwiseMin(cert.at(m).entries());
        out.vectors.emplace(node, floored(joined, node));
        break;
      }
      case LiftKind::comp:
        out.vectors.emplace(node, floored(A.mode(node.label()).transpose() * cert.at(node.base()).entries(), node));
        break;
      case LiftKind::backcomp:
        out.vectors.emplace(
            node, floored(inverses[static_cast<std::size_t>(node.label() - 1)].transpose() *
                              cert.at(node.base()).entries(),
                          node));
        break;
    }
  }
  return out;
}

}  // namespace pclf
