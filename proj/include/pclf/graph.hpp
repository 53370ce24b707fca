#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pclf/node_id.hpp"

namespace pclf {

/// Edge given by node identities, as accepted by make_graph().
struct LabeledEdge {
  NodeId source;
  NodeId dest;
  int label;
};

/// Edge stored by node index into LabeledGraph::nodes().
struct Edge {
  std::size_t source;
  std::size_t dest;
  int label;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed multigraph with edges labeled over the alphabet {1, ..., M}.
///
/// Nodes are stored in canonical (sorted) order and edges are sorted and
/// duplicate-free, so two graphs built from the same data compare equal no
/// matter the insertion order. Immutable once built.
class LabeledGraph {
 public:
  int alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const NodeId& node(std::size_t index) const { return nodes_.at(index); }
  std::optional<std::size_t> index_of(const NodeId& id) const;

  /// Destinations of the edges leaving `node` with `label`, sorted.
  const std::vector<std::size_t>& successors(std::size_t node, int label) const;
  /// Sources of the edges entering `node` with `label`, sorted.
  const std::vector<std::size_t>& predecessors(std::size_t node, int label) const;

  bool has_edge(std::size_t source, std::size_t dest, int label) const;
  std::vector<LabeledEdge> labeled_edges() const;

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.alphabet_size_ == b.alphabet_size_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  friend LabeledGraph make_graph(int, std::vector<NodeId>, const std::vector<LabeledEdge>&);

  int alphabet_size_ = 1;
  std::vector<NodeId> nodes_;
  std::vector<Edge> edges_;
  std::map<NodeId, std::size_t> index_;
  // [label-1][node] -> sorted neighbour indices
  std::vector<std::vector<std::vector<std::size_t>>> succ_;
  std::vector<std::vector<std::vector<std::size_t>>> pred_;
};

/// Validates and canonicalizes a graph. Duplicate nodes and edges collapse.
/// Throws InputError for M < 1, an empty node set, an unknown endpoint or a
/// label outside 1..M.
LabeledGraph make_graph(int alphabet_size, std::vector<NodeId> nodes,
                        const std::vector<LabeledEdge>& edges);

/// The graph with one node `a` and one self-loop per label.
LabeledGraph common_lyapunov_graph(int alphabet_size);

/// Every finite word over the alphabet labels a path in `g`.
///
/// Subset construction from the full node set; the graph is path-complete
/// iff the empty set is unreachable.
bool is_path_complete(const LabeledGraph& g);

struct CompletenessFlags {
  bool complete = false;     ///< every (node, label) has an outgoing edge
  bool co_complete = false;  ///< every (node, label) has an incoming edge
};
CompletenessFlags completeness_flags(const LabeledGraph& g);

/// Same nodes, every edge reversed.
LabeledGraph transpose(const LabeledGraph& g);

/// Subgraph induced by `nodes` (which must belong to g).
LabeledGraph induced_subgraph(const LabeledGraph& g, const std::vector<NodeId>& nodes);

/// Strongly connected components (labels ignored), each sorted canonically,
/// listed in topological order of the condensation (sources first).
std::vector<std::vector<NodeId>> strongly_connected_components(const LabeledGraph& g);

/// Induced subgraphs of the SCCs that are path-complete, in SCC order.
std::vector<LabeledGraph> path_complete_components(const LabeledGraph& g);

struct MinimalityReport {
  bool strongly_connected = false;
  bool edge_minimal = false;
  std::string diagnostic;  ///< set when the check could not be carried out as stated
};

/// Checks the "one SCC, no removable edge" assumption used by the
/// composition lift. A graph that is not path-complete reports
/// edge_minimal = false with a diagnostic.
MinimalityReport check_assumption_minimal(const LabeledGraph& g);

/// Total map from the nodes of h to the nodes of g preserving labeled edges.
using SimulationMap = std::map<NodeId, NodeId>;

/// Searches for R with (R(a), R(b), i) in E(g) for every edge (a, b, i) of h.
///
/// Exhaustive backtracking in canonical node order, pruning as soon as an
/// h-edge with both endpoints assigned is violated; the first map found in
/// lexicographic order is returned, so the witness is deterministic.
/// Throws InputError on alphabet mismatch.
std::optional<SimulationMap> find_simulation(const LabeledGraph& g, const LabeledGraph& h);

/// Checks the simulation property of `map` directly.
bool is_simulation(const LabeledGraph& g, const LabeledGraph& h, const SimulationMap& map);

/// Bijection from the nodes of h to the nodes of g mapping E(h) exactly onto E(g).
std::optional<SimulationMap> find_isomorphism(const LabeledGraph& g, const LabeledGraph& h);

}  // namespace pclf
