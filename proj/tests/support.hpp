#pragma once

// Shared generators and brute-force oracles for the test binaries.

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pclf/copositive.hpp"
#include "pclf/graph.hpp"
#include "pclf/io.hpp"
#include "pclf/jsr.hpp"

namespace pclf::testing {

inline std::string data_path(const std::string& name) { return std::string(PCLF_DATA_DIR) + "/" + name; }

inline LabeledGraph load_graph(const std::string& name) { return graph_from_json(load_json_file(data_path(name))); }
inline MatrixSet load_matrices(const std::string& name) {
  return matrices_from_json(load_json_file(data_path(name)));
}

inline std::vector<NodeId> atoms(int n) {
  std::vector<NodeId> out;
  for (int k = 0; k < n; ++k) out.push_back(NodeId::atom(std::string(1, static_cast<char>('a' + k))));
  return out;
}

/// Graph on atoms a, b, ... whose edge (s, d, label) is present when bit
/// ((label-1)*n + s)*n + d of `mask` is set.
inline LabeledGraph graph_from_mask(int n, int M, std::uint64_t mask) {
  const auto nodes = atoms(n);
  std::vector<LabeledEdge> edges;
  for (int label = 1; label <= M; ++label) {
    for (int s = 0; s < n; ++s) {
      for (int d = 0; d < n; ++d) {
        if (mask >> (((label - 1) * n + s) * n + d) & 1u) edges.push_back({nodes[s], nodes[d], label});
      }
    }
  }
  return make_graph(M, nodes, edges);
}

/// Independent path-completeness oracle: walks every word of length `length`
/// and tracks the set of nodes a path labelled by the prefix can end in.
inline bool words_all_covered(const LabeledGraph& g, int length) {
  const std::size_t n = g.node_count();
  std::function<bool(std::vector<bool>, int)> walk = [&](std::vector<bool> ends, int depth) {
    if (depth == length) return true;
    for (int label = 1; label <= g.alphabet_size(); ++label) {
      std::vector<bool> next(n, false);
      bool any = false;
      for (const Edge& e : g.edges()) {
        if (e.label == label && ends[e.source]) {
          next[e.dest] = true;
          any = true;
        }
      }
      if (!any || !walk(next, depth + 1)) return false;
    }
    return true;
  };
  return walk(std::vector<bool>(n, true), 0);
}

/// Random path-complete graph with 1..max_nodes atoms on exactly M labels.
inline LabeledGraph random_path_complete_on(std::mt19937_64& rng, int max_nodes, int M) {
  std::uniform_int_distribution<int> nd(1, max_nodes);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const int n = nd(rng);
    const double density = 0.2 + 0.5 * u(rng);
    const auto nodes = atoms(n);
    std::vector<LabeledEdge> edges;
    for (int label = 1; label <= M; ++label) {
      for (int s = 0; s < n; ++s) {
        for (int d = 0; d < n; ++d) {
          if (u(rng) < density) edges.push_back({nodes[s], nodes[d], label});
        }
      }
    }
    LabeledGraph g = make_graph(M, nodes, edges);
    if (is_path_complete(g)) return g;
  }
}

/// Random path-complete graph with 1..max_nodes atoms and 1..max_labels labels.
inline LabeledGraph random_path_complete(std::mt19937_64& rng, int max_nodes, int max_labels) {
  std::uniform_int_distribution<int> md(1, max_labels);
  return random_path_complete_on(rng, max_nodes, md(rng));
}

/// Same graph with its atoms renamed by a random permutation (names prefixed "x").
inline LabeledGraph shuffled_copy(const LabeledGraph& g, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(g.node_count());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<NodeId> names;
  for (std::size_t k = 0; k < perm.size(); ++k) names.push_back(NodeId::atom("x" + std::to_string(perm[k])));
  std::vector<LabeledEdge> edges;
  for (const Edge& e : g.edges()) edges.push_back({names[e.source], names[e.dest], e.label});
  return make_graph(g.alphabet_size(), names, edges);
}

inline Eigen::MatrixXd random_nonnegative(std::mt19937_64& rng, Eigen::Index n, double zero_prob = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) A(r, c) = u(rng) < zero_prob ? 0.0 : u(rng);
  }
  return A;
}

inline MatrixSet random_set(std::mt19937_64& rng, int M, Eigen::Index n, double zero_prob = 0.0) {
  std::vector<Eigen::MatrixXd> mats;
  for (int k = 0; k < M; ++k) mats.push_back(random_nonnegative(rng, n, zero_prob));
  return MatrixSet(std::move(mats));
}

/// Positive diagonal times permutation.
inline Eigen::MatrixXd random_monomial(std::mt19937_64& rng, Eigen::Index n) {
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_real_distribution<double> u(0.3, 1.5);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) A(r, perm[static_cast<std::size_t>(r)]) = u(rng);
  return A;
}

/// Uniform [0,1] entries, scaled so the depth-6 brute-force upper bound lies in [0.5, 2].
inline MatrixSet scaled_random_set(std::mt19937_64& rng, int M, Eigen::Index n) {
  std::uniform_real_distribution<double> target(0.5, 2.0);
  MatrixSet raw = random_set(rng, M, n);
  const double scale = target(rng) / brute_force_bounds(raw, 6).upper;
  std::vector<Eigen::MatrixXd> mats;
  for (const auto& A : raw.matrices()) mats.push_back(scale * A);
  return MatrixSet(std::move(mats));
}

/// Matrices whose column i is all ones: A_i = 1 e_i'.
inline MatrixSet ones_column_set(int n) {
  std::vector<Eigen::MatrixXd> mats;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    A.col(i).setOnes();
    mats.push_back(A);
  }
  return MatrixSet(std::move(mats));
}

/// Largest |eigenvalue| from a general eigensolver, the reference for spectral_radius.
inline double eigen_spectral_radius(const Eigen::MatrixXd& A) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace pclf::testing
