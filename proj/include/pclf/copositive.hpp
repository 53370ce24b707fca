#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pclf/errors.hpp"
#include "pclf/graph.hpp"
#include "pclf/lifts.hpp"

namespace pclf {

/// Default absolute slack for edge inequalities.
inline constexpr double kDefaultSlack = 1e-9;
/// Smallest entry a transported vector may have and still count as positive.
inline constexpr double kPositivityFloor = 1e-12;

/// Which copositive template a certificate lives in.
///   primal: g_v(x) = v'x
///   dual:   g*_v(x) = max_i x_i / v_i
enum class Flavor { primal, dual };

std::string_view to_string(Flavor flavor);
Flavor parse_flavor(std::string_view text);

/// A vector with strictly positive entries; the parameter of a copositive norm.
class PositiveVector {
 public:
  explicit PositiveVector(Eigen::VectorXd entries);
  static PositiveVector ones(Eigen::Index n) { return PositiveVector(Eigen::VectorXd::Ones(n)); }

  Eigen::Index size() const noexcept { return v_.size(); }
  const Eigen::VectorXd& entries() const noexcept { return v_; }
  double operator[](Eigen::Index i) const { return v_(i); }

  friend PositiveVector operator+(const PositiveVector& a, const PositiveVector& b);
  friend PositiveVector operator*(double lambda, const PositiveVector& v);
  friend bool operator==(const PositiveVector& a, const PositiveVector& b) { return a.v_ == b.v_; }

 private:
  Eigen::VectorXd v_;
};

/// The modes A_1..A_M of a positive linear switching system.
class MatrixSet {
 public:
  explicit MatrixSet(std::vector<Eigen::MatrixXd> matrices);

  Eigen::Index dimension() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(matrices_.size()); }
  /// A_label, 1-based as in the graph alphabet.
  const Eigen::MatrixXd& mode(int label) const;
  const std::vector<Eigen::MatrixXd>& matrices() const noexcept { return matrices_; }

  MatrixSet transposed() const;

 private:
  Eigen::Index n_ = 0;
  std::vector<Eigen::MatrixXd> matrices_;
};

/// One positive vector per graph node plus the decay rate they certify.
struct Certificate {
  Flavor flavor = Flavor::dual;
  double gamma = 0.0;
  std::map<NodeId, PositiveVector> vectors;

  const PositiveVector& at(const NodeId& node) const;
};

namespace detail {
template <typename Derived>
void check_evaluation_point(const PositiveVector& v, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != v.size()) {
    throw InputError("dimension mismatch: vector of size " + std::to_string(v.size()) +
                     ", point of size " + std::to_string(x.size()));
  }
  if ((x.array() < 0.0).any()) throw InputError("copositive norms are evaluated on x >= 0 only");
}
}  // namespace detail

/// g_v(x) = v'x on the nonnegative orthant.
template <typename Derived>
double primal_eval(const PositiveVector& v, const Eigen::MatrixBase<Derived>& x) {
  detail::check_evaluation_point(v, x);
  return v.entries().dot(x.template cast<double>());
}

/// g*_v(x) = max_i x_i / v_i on the nonnegative orthant.
template <typename Derived>
double dual_eval(const PositiveVector& v, const Eigen::MatrixBase<Derived>& x) {
  detail::check_evaluation_point(v, x);
  return (x.template cast<double>().array() / v.entries().array()).maxCoeff();
}

/// Componentwise minimum. g*_{v∨w} = max(g*_v, g*_w).
PositiveVector vee(const PositiveVector& v, const PositiveVector& w);

/// Does the edge (a, b, i) inequality V_b(A x) <= gamma V_a(x) hold for all x >= 0?
///
///   primal: A' v_b <= gamma v_a + tol   (componentwise)
///   dual:   A  v_a <= gamma v_b + tol
///
/// Hence edge_holds(primal, A, va, vb) == edge_holds(dual, A', vb, va).
bool edge_holds(Flavor flavor, const Eigen::MatrixXd& A, const PositiveVector& v_a,
                const PositiveVector& v_b, double gamma, double tol = kDefaultSlack);

/// Largest componentwise excess of the edge inequality (<= 0 when it holds exactly).
double edge_excess(Flavor flavor, const Eigen::MatrixXd& A, const PositiveVector& v_a,
                   const PositiveVector& v_b, double gamma);

struct EdgeViolation {
  LabeledEdge edge;
  double excess = 0.0;
};

struct VerificationReport {
  bool ok = true;
  std::vector<EdgeViolation> violations;
};

/// Applies edge_holds to every edge of g. Throws InputError when a node has no
/// vector, the dimensions disagree, or the alphabets differ.
VerificationReport verify_certificate(const LabeledGraph& g, const MatrixSet& A,
                                      const Certificate& cert, double tol = kDefaultSlack);

/// Builds a certificate for the lifted graph from one for g, at the same gamma.
///
///   sum(T), both flavors      multiset node -> sum of member vectors
///   max,    dual only         subset node   -> ∨ of member vectors
///   min,    primal only       subset node   -> ∨ of member vectors
///   comp,   primal only       s∘i           -> A_i' v_s
///   backcomp, primal only     s∘i           -> A_i^{-T} v_s  (A_i monomial)
///
/// Throws InputError for an unsupported flavor/lift pair, a certificate that
/// does not verify on g, a transported entry below kPositivityFloor, or a
/// matrix without a nonnegative inverse (backcomp).
Certificate transport_certificate(const Certificate& cert, const LiftSpec& lift,
                                  const LabeledGraph& g, const MatrixSet& A);

/// Whether transport_certificate supports the pair.
bool transport_supported(Flavor flavor, LiftKind kind);

}  // namespace pclf
