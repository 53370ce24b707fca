#include "pclf/lifts.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <functional>

#include "pclf/errors.hpp"

namespace pclf {

namespace {

// Kuhn's augmenting-path matching; true iff every left vertex is matched.
bool has_perfect_matching(const std::vector<std::vector<bool>>& compatible) {
  const std::size_t n = compatible.size();
  std::vector<std::size_t> match_right(n, n);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t left,
                                                                     std::vector<bool>& seen) {
    for (std::size_t right = 0; right < n; ++right) {
      if (!compatible[left][right] || seen[right]) continue;
      seen[right] = true;
      if (match_right[right] == n || augment(match_right[right], seen)) {
        match_right[right] = left;
        return true;
      }
    }
    return false;
  };
  for (std::size_t left = 0; left < n; ++left) {
    std::vector<bool> seen(n, false);
    if (!augment(left, seen)) return false;
  }
  return true;
}

// All multisets of size T over {0..n-1} as nondecreasing index tuples.
std::vector<std::vector<std::size_t>> multisets(std::size_t n, int T) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current(static_cast<std::size_t>(T), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
    if (pos == current.size()) {
      out.push_back(current);
      return;
    }
    for (std::size_t k = from; k < n; ++k) {
      current[pos] = k;
      rec(pos + 1, k);
    }
  };
  rec(0, 0);
  return out;
}

void check_power_set_size(const LabeledGraph& g, const char* what) {
  if (g.node_count() > kMaxPowerSetNodes) {
    throw CapExceeded(std::string(what) + ": input has " + std::to_string(g.node_count()) +
                      " nodes, the power-set lifts accept at most " +
                      std::to_string(kMaxPowerSetNodes));
  }
}

NodeId subset_node(const LabeledGraph& g, std::uint32_t mask) {
  std::vector<NodeId> members;
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (mask & (std::uint32_t{1} << k)) members.push_back(g.node(k));
  }
  return NodeId::subset(std::move(members));
}

std::vector<NodeId> all_subset_nodes(const LabeledGraph& g) {
  const std::uint32_t full = (std::uint32_t{1} << g.node_count()) - 1;
  std::vector<NodeId> nodes;
  for (std::uint32_t mask = 1; mask <= full; ++mask) nodes.push_back(subset_node(g, mask));
  return nodes;
}

// For each label and node: bitmask of successors (or predecessors).
std::vector<std::vector<std::uint32_t>> neighbour_masks(const LabeledGraph& g, bool forward) {
  std::vector<std::vector<std::uint32_t>> masks(static_cast<std::size_t>(g.alphabet_size()),
                                                std::vector<std::uint32_t>(g.node_count(), 0));
  for (const Edge& e : g.edges()) {
    auto& row = masks[static_cast<std::size_t>(e.label - 1)];
    if (forward) {
      row[e.source] |= std::uint32_t{1} << e.dest;
    } else {
      row[e.dest] |= std::uint32_t{1} << e.source;
    }
  }
  return masks;
}

void warn_if_not_minimal(const LabeledGraph& g, std::vector<std::string>* warnings,
                         const char* lift) {
  if (warnings == nullptr) return;
  const MinimalityReport report = check_assumption_minimal(g);
  if (!report.strongly_connected) {
    warnings->push_back(std::string(lift) + ": input graph is not strongly connected");
  }
  if (!report.edge_minimal) {
    warnings->push_back(std::string(lift) + ": input graph is not edge-minimal" +
                        (report.diagnostic.empty() ? "" : " (" + report.diagnostic + ")"));
  }
}

}  // namespace

LabeledGraph sum_lift(const LabeledGraph& g, int T) {
  if (T < 1) throw InputError("sum lift needs T >= 1");
  // C(n+T-1, T) lifted nodes; refuse anything past the power-set cap.
  double count = 1.0;
  for (int k = 1; k <= T; ++k) count = count * static_cast<double>(g.node_count() + static_cast<std::size_t>(k) - 1) / k;
  if (count > static_cast<double>(kMaxLiftedNodes)) {
    throw CapExceeded("sum lift would have " + std::to_string(static_cast<long long>(count)) +
                      " nodes (cap " + std::to_string(kMaxLiftedNodes) + ")");
  }
  const auto tuples = multisets(g.node_count(), T);
  const auto t = static_cast<std::size_t>(T);

  std::vector<NodeId> nodes;
  nodes.reserve(tuples.size());
  for (const auto& tuple : tuples) {
    std::vector<NodeId> members;
    for (std::size_t k : tuple) members.push_back(g.node(k));
    nodes.push_back(NodeId::multiset(std::move(members)));
  }

  std::vector<LabeledEdge> edges;
  std::vector<std::vector<bool>> compatible(t, std::vector<bool>(t, false));
  for (int label = 1; label <= g.alphabet_size(); ++label) {
    for (std::size_t a = 0; a < tuples.size(); ++a) {
      for (std::size_t b = 0; b < tuples.size(); ++b) {
        for (std::size_t x = 0; x < t; ++x) {
          for (std::size_t y = 0; y < t; ++y) {
            compatible[x][y] = g.has_edge(tuples[a][x], tuples[b][y], label);
          }
        }
        if (has_perfect_matching(compatible)) edges.push_back({nodes[a], nodes[b], label});
      }
    }
  }
  return make_graph(g.alphabet_size(), std::move(nodes), edges);
}

LabeledGraph max_lift(const LabeledGraph& g) {
  check_power_set_size(g, "max lift");
  const std::uint32_t full = (std::uint32_t{1} << g.node_count()) - 1;
  const auto succ = neighbour_masks(g, true);
  const auto ids = all_subset_nodes(g);

  std::vector<LabeledEdge> edges;
  for (int label = 1; label <= g.alphabet_size(); ++label) {
    const auto& row = succ[static_cast<std::size_t>(label - 1)];
    for (std::uint32_t a = 1; a <= full; ++a) {
      std::uint32_t post = 0;
      for (std::size_t k = 0; k < g.node_count(); ++k) {
        if (a & (std::uint32_t{1} << k)) post |= row[k];
      }
      // Every nonempty B contained in post(A).
      for (std::uint32_t b = post; b != 0; b = (b - 1) & post) {
        edges.push_back({ids[a - 1], ids[b - 1], label});
      }
    }
  }
  return make_graph(g.alphabet_size(), ids, edges);
}

LabeledGraph min_lift(const LabeledGraph& g) {
  check_power_set_size(g, "min lift");
  const std::uint32_t full = (std::uint32_t{1} << g.node_count()) - 1;
  const auto pred = neighbour_masks(g, false);
  const auto ids = all_subset_nodes(g);

  std::vector<LabeledEdge> edges;
  for (int label = 1; label <= g.alphabet_size(); ++label) {
    const auto& row = pred[static_cast<std::size_t>(label - 1)];
    for (std::uint32_t b = 1; b <= full; ++b) {
      // Nodes with at least one i-successor in B.
      std::uint32_t pre = 0;
      for (std::size_t k = 0; k < g.node_count(); ++k) {
        if (b & (std::uint32_t{1} << k)) pre |= row[k];
      }
      for (std::uint32_t a = pre; a != 0; a = (a - 1) & pre) {
        edges.push_back({ids[a - 1], ids[b - 1], label});
      }
    }
  }
  return make_graph(g.alphabet_size(), ids, edges);
}

namespace {

std::vector<NodeId> composition_nodes(const LabeledGraph& g) {
  std::vector<NodeId> nodes;
  for (const NodeId& s : g.nodes()) {
    for (int i = 1; i <= g.alphabet_size(); ++i) nodes.push_back(NodeId::comp(s, i));
  }
  return nodes;
}

}  // namespace

LabeledGraph composition_lift(const LabeledGraph& g, std::vector<std::string>* warnings) {
  warn_if_not_minimal(g, warnings, "composition lift");
  std::vector<LabeledEdge> edges;
  for (const Edge& e : g.edges()) {
    for (int j = 1; j <= g.alphabet_size(); ++j) {
      edges.push_back({NodeId::comp(g.node(e.source), j), NodeId::comp(g.node(e.dest), e.label), j});
    }
  }
  return make_graph(g.alphabet_size(), composition_nodes(g), edges);
}

LabeledGraph backward_composition_lift(const LabeledGraph& g, std::vector<std::string>* warnings) {
  warn_if_not_minimal(g, warnings, "backward composition lift");
  std::vector<LabeledEdge> edges;
  for (const Edge& e : g.edges()) {
    for (int j = 1; j <= g.alphabet_size(); ++j) {
      edges.push_back({NodeId::comp(g.node(e.source), e.label), NodeId::comp(g.node(e.dest), j), j});
    }
  }
  return make_graph(g.alphabet_size(), composition_nodes(g), edges);
}

LabeledGraph de_bruijn(int alphabet_size, int l) {
  if (alphabet_size < 1) throw InputError("De Bruijn graph needs M >= 1");
  if (l < 1) throw InputError("De Bruijn graph needs l >= 1");
  const auto length = static_cast<std::size_t>(l - 1);

  std::vector<std::vector<int>> words{{}};
  for (std::size_t k = 0; k < length; ++k) {
    std::vector<std::vector<int>> longer;
    for (const auto& w : words) {
      for (int i = 1; i <= alphabet_size; ++i) {
        auto x = w;
        x.push_back(i);
        longer.push_back(std::move(x));
      }
    }
    words = std::move(longer);
  }

  std::vector<NodeId> nodes;
  std::vector<LabeledEdge> edges;
  for (const auto& w : words) {
    nodes.push_back(NodeId::word(w));
    for (int j = 1; j <= alphabet_size; ++j) {
      std::vector<int> shifted(w.begin() + (w.empty() ? 0 : 1), w.end());
      if (!w.empty()) shifted.push_back(j);
      edges.push_back({NodeId::word(w), NodeId::word(std::move(shifted)), j});
    }
  }
  return make_graph(alphabet_size, std::move(nodes), edges);
}

LiftSpec parse_lift_spec(std::string_view text) {
  if (text == "max") return {LiftKind::max, 1};
  if (text == "min") return {LiftKind::min, 1};
  if (text == "comp") return {LiftKind::comp, 1};
  if (text == "backcomp") return {LiftKind::backcomp, 1};
  if (text.starts_with("sum:")) {
    const std::string_view digits = text.substr(4);
    int T = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), T);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && T >= 1) return {LiftKind::sum, T};
  }
  throw InputError("unknown lift \"" + std::string(text) +
                   "\" (expected sum:T, max, min, comp or backcomp)");
}

std::string to_string(const LiftSpec& lift) {
  switch (lift.kind) {
    case LiftKind::sum:
      return "sum:" + std::to_string(lift.T);
    case LiftKind::max:
      return "max";
    case LiftKind::min:
      return "min";
    case LiftKind::comp:
      return "comp";
    case LiftKind::backcomp:
      return "backcomp";
  }
  return "?";
}

LabeledGraph apply_lift(const LabeledGraph& g, const LiftSpec& lift, std::vector<std::string>* warnings) {
  switch (lift.kind) {
    case LiftKind::sum:
      return sum_lift(g, lift.T);
    case LiftKind::max:
      return max_lift(g);
    case LiftKind::min:
      return min_lift(g);
    case LiftKind::comp:
      return composition_lift(g, warnings);
    case LiftKind::backcomp:
      return backward_composition_lift(g, warnings);
  }
  throw InputError("unknown lift kind");
}

std::vector<NodeId> diagonal_nodes(const LabeledGraph& g, int T) {
  if (T < 1) throw InputError("diagonal_nodes needs T >= 1");
  std::vector<NodeId> out;
  for (const NodeId& s : g.nodes()) {
    out.push_back(NodeId::multiset(std::vector<NodeId>(static_cast<std::size_t>(T), s)));
  }
  return out;
}

}  // namespace pclf
