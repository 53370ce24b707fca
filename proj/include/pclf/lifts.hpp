#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pclf/graph.hpp"

namespace pclf {

/// Largest input node count accepted by the power-set lifts (2^12 - 1 lifted nodes).
inline constexpr std::size_t kMaxPowerSetNodes = 12;
/// Largest node count any lift may produce.
inline constexpr std::size_t kMaxLiftedNodes = 4095;

/// T-sum lift: nodes are the multisets of size T over S; (A, B, i) is an edge
/// when A and B can be paired up so that every pair is an i-edge of g.
LabeledGraph sum_lift(const LabeledGraph& g, int T);

/// Max lift: nodes are nonempty subsets; (A, B, i) iff every b in B has an i-predecessor in A.
LabeledGraph max_lift(const LabeledGraph& g);

/// Min lift: nodes are nonempty subsets; (A, B, i) iff every a in A has an i-successor in B.
LabeledGraph min_lift(const LabeledGraph& g);

/// Composition lift: nodes s∘i; edge (a∘j, b∘i, j) for every (a, b, i) in E and every j.
/// Appends a warning when g is not strongly connected and edge-minimal.
LabeledGraph composition_lift(const LabeledGraph& g, std::vector<std::string>* warnings = nullptr);

/// Backward composition lift: nodes s∘i; edge (a∘i, b∘j, j) for every (a, b, i) in E and every j.
///
/// This is the edge rule under which W_{s∘i} = V_s ∘ f_i^{-1} satisfies
/// every lifted inequality whenever V does on g.
LabeledGraph backward_composition_lift(const LabeledGraph& g,
                                       std::vector<std::string>* warnings = nullptr);

/// De Bruijn graph of order l-1 on M letters: nodes are words of length l-1,
/// edges ((i1..i_{l-1}), (i2..i_{l-1}, j), j).
LabeledGraph de_bruijn(int alphabet_size, int l);

enum class LiftKind { sum, max, min, comp, backcomp };

/// A lift and its parameter (T for the sum lift).
struct LiftSpec {
  LiftKind kind = LiftKind::sum;
  int T = 1;
};

/// "sum:T", "max", "min", "comp", "backcomp". Throws InputError.
LiftSpec parse_lift_spec(std::string_view text);
std::string to_string(const LiftSpec& lift);

LabeledGraph apply_lift(const LabeledGraph& g, const LiftSpec& lift,
                        std::vector<std::string>* warnings = nullptr);

/// Nodes of a lift that carry an embedded copy of g: T-fold copies {s,...,s}
/// for the sum lift, singletons {s} for max/min lifts.
std::vector<NodeId> diagonal_nodes(const LabeledGraph& g, int T);

}  // namespace pclf
