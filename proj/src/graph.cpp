#include "pclf/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <set>

#include "pclf/errors.hpp"

namespace pclf {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits empty_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }

void set_bit(Bits& bits, std::size_t k) { bits[k / 64] |= std::uint64_t{1} << (k % 64); }

bool test_bit(const Bits& bits, std::size_t k) { return (bits[k / 64] >> (k % 64)) & 1U; }

bool none(const Bits& bits) {
  return std::all_of(bits.begin(), bits.end(), [](std::uint64_t w) { return w == 0; });
}

// Per-label adjacency as an edge-existence lookup.
bool contains_sorted(const std::vector<std::size_t>& v, std::size_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

std::optional<std::size_t> LabeledGraph::index_of(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::size_t>& LabeledGraph::successors(std::size_t node, int label) const {
  return succ_.at(static_cast<std::size_t>(label - 1)).at(node);
}

const std::vector<std::size_t>& LabeledGraph::predecessors(std::size_t node, int label) const {
  return pred_.at(static_cast<std::size_t>(label - 1)).at(node);
}

bool LabeledGraph::has_edge(std::size_t source, std::size_t dest, int label) const {
  if (label < 1 || label > alphabet_size_ || source >= nodes_.size()) return false;
  return contains_sorted(successors(source, label), dest);
}

std::vector<LabeledEdge> LabeledGraph::labeled_edges() const {
  std::vector<LabeledEdge> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back({nodes_[e.source], nodes_[e.dest], e.label});
  return out;
}

LabeledGraph make_graph(int alphabet_size, std::vector<NodeId> nodes,
                        const std::vector<LabeledEdge>& edges) {
  if (alphabet_size < 1) throw InputError("alphabet size must be at least 1");
  if (nodes.empty()) throw InputError("a graph needs at least one node");

  LabeledGraph g;
  g.alphabet_size_ = alphabet_size;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  g.nodes_ = std::move(nodes);
  for (std::size_t k = 0; k < g.nodes_.size(); ++k) g.index_.emplace(g.nodes_[k], k);

  g.edges_.reserve(edges.size());
  for (const LabeledEdge& e : edges) {
    if (e.label < 1 || e.label > alphabet_size) {
      throw InputError("edge (" + e.source.to_string() + ", " + e.dest.to_string() + ", " +
                       std::to_string(e.label) + "): label out of range 1.." +
                       std::to_string(alphabet_size));
    }
    auto s = g.index_of(e.source);
    auto d = g.index_of(e.dest);
    if (!s) throw InputError("edge references unknown node " + e.source.to_string());
    if (!d) throw InputError("edge references unknown node " + e.dest.to_string());
    g.edges_.push_back({*s, *d, e.label});
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  const std::size_t n = g.nodes_.size();
  const auto labels = static_cast<std::size_t>(alphabet_size);
  g.succ_.assign(labels, std::vector<std::vector<std::size_t>>(n));
  g.pred_.assign(labels, std::vector<std::vector<std::size_t>>(n));
  for (const Edge& e : g.edges_) {
    g.succ_[static_cast<std::size_t>(e.label - 1)][e.source].push_back(e.dest);
    g.pred_[static_cast<std::size_t>(e.label - 1)][e.dest].push_back(e.source);
  }
  for (auto& per_label : g.pred_) {
    for (auto& list : per_label) std::sort(list.begin(), list.end());
  }
  return g;
}

LabeledGraph common_lyapunov_graph(int alphabet_size) {
  if (alphabet_size < 1) throw InputError("alphabet size must be at least 1");
  const NodeId a = NodeId::atom("a");
  std::vector<LabeledEdge> edges;
  for (int i = 1; i <= alphabet_size; ++i) edges.push_back({a, a, i});
  return make_graph(alphabet_size, {a}, edges);
}

bool is_path_complete(const LabeledGraph& g) {
  const std::size_t n = g.node_count();
  Bits start = empty_bits(n);
  for (std::size_t k = 0; k < n; ++k) set_bit(start, k);

  std::set<Bits> seen{start};
  std::queue<Bits> frontier;
  frontier.push(start);
  while (!frontier.empty()) {
    const Bits current = std::move(frontier.front());
    frontier.pop();
    for (int label = 1; label <= g.alphabet_size(); ++label) {
      Bits next = empty_bits(n);
      for (std::size_t a = 0; a < n; ++a) {
        if (!test_bit(current, a)) continue;
        for (std::size_t b : g.successors(a, label)) set_bit(next, b);
      }
      if (none(next)) return false;
      if (seen.insert(next).second) frontier.push(std::move(next));
    }
  }
  return true;
}

CompletenessFlags completeness_flags(const LabeledGraph& g) {
  CompletenessFlags flags{true, true};
  for (std::size_t s = 0; s < g.node_count(); ++s) {
    for (int label = 1; label <= g.alphabet_size(); ++label) {
      if (g.successors(s, label).empty()) flags.complete = false;
      if (g.predecessors(s, label).empty()) flags.co_complete = false;
    }
  }
  return flags;
}

LabeledGraph transpose(const LabeledGraph& g) {
  std::vector<LabeledEdge> edges;
  edges.reserve(g.edges().size());
  for (const Edge& e : g.edges()) edges.push_back({g.node(e.dest), g.node(e.source), e.label});
  return make_graph(g.alphabet_size(), g.nodes(), edges);
}

LabeledGraph induced_subgraph(const LabeledGraph& g, const std::vector<NodeId>& nodes) {
  std::vector<bool> keep(g.node_count(), false);
  for (const NodeId& id : nodes) {
    auto k = g.index_of(id);
    if (!k) throw InputError("induced_subgraph: unknown node " + id.to_string());
    keep[*k] = true;
  }
  std::vector<LabeledEdge> edges;
  for (const Edge& e : g.edges()) {
    if (keep[e.source] && keep[e.dest]) edges.push_back({g.node(e.source), g.node(e.dest), e.label});
  }
  return make_graph(g.alphabet_size(), nodes, edges);
}

std::vector<std::vector<NodeId>> strongly_connected_components(const LabeledGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Edge& e : g.edges()) adj[e.source].push_back(e.dest);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  // Iterative Tarjan. Components come out in reverse topological order.
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<std::pair<std::size_t, std::size_t>> work{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!work.empty()) {
      auto& [v, next] = work.back();
      if (next < adj[v].size()) {
        const std::size_t w = adj[v][next++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t finished = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[finished]);
      if (low[finished] == index[finished]) {
        std::vector<std::size_t> component;
        std::size_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != finished);
        components.push_back(std::move(component));
      }
    }
  }

  std::reverse(components.begin(), components.end());
  std::vector<std::vector<NodeId>> out;
  out.reserve(components.size());
  for (auto& component : components) {
    std::sort(component.begin(), component.end());
    std::vector<NodeId> ids;
    for (std::size_t k : component) ids.push_back(g.node(k));
    out.push_back(std::move(ids));
  }
  return out;
}

std::vector<LabeledGraph> path_complete_components(const LabeledGraph& g) {
  std::vector<LabeledGraph> out;
  for (const auto& component : strongly_connected_components(g)) {
    LabeledGraph sub = induced_subgraph(g, component);
    if (is_path_complete(sub)) out.push_back(std::move(sub));
  }
  return out;
}

MinimalityReport check_assumption_minimal(const LabeledGraph& g) {
  MinimalityReport report;
  report.strongly_connected = strongly_connected_components(g).size() == 1;
  if (!is_path_complete(g)) {
    report.diagnostic = "graph is not path-complete; edge minimality is undefined";
    return report;
  }
  const auto labeled = g.labeled_edges();
  report.edge_minimal = true;
  for (std::size_t skip = 0; skip < labeled.size(); ++skip) {
    std::vector<LabeledEdge> rest;
    rest.reserve(labeled.size() - 1);
    for (std::size_t k = 0; k < labeled.size(); ++k) {
      if (k != skip) rest.push_back(labeled[k]);
    }
    if (is_path_complete(make_graph(g.alphabet_size(), g.nodes(), rest))) {
      report.edge_minimal = false;
      report.diagnostic = "edge (" + labeled[skip].source.to_string() + ", " +
                          labeled[skip].dest.to_string() + ", " +
                          std::to_string(labeled[skip].label) + ") is redundant";
      break;
    }
  }
  return report;
}

namespace {

// Shared backtracking for simulation and isomorphism search. Assigns the
// nodes of h in index order; `injective` demands distinct images and the
// reverse edge implication.
std::optional<SimulationMap> search_map(const LabeledGraph& g, const LabeledGraph& h, bool injective) {
  if (g.alphabet_size() != h.alphabet_size()) {
    throw InputError("graphs are over different alphabets (" + std::to_string(g.alphabet_size()) +
                     " vs " + std::to_string(h.alphabet_size()) + ")");
  }
  const std::size_t nh = h.node_count();
  const std::size_t ng = g.node_count();
  const int labels = h.alphabet_size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  auto signature = [labels](const LabeledGraph& x, std::size_t v) {
    std::vector<std::size_t> sig;
    for (int i = 1; i <= labels; ++i) {
      sig.push_back(x.successors(v, i).size());
      sig.push_back(x.predecessors(v, i).size());
    }
    return sig;
  };

  // Cheap local filter: every label leaving (entering) a in h must leave (enter) R(a) in g.
  std::vector<std::vector<std::size_t>> candidates(nh);
  for (std::size_t a = 0; a < nh; ++a) {
    const auto sig_h = injective ? signature(h, a) : std::vector<std::size_t>{};
    for (std::size_t r = 0; r < ng; ++r) {
      bool ok = true;
      for (int i = 1; i <= labels && ok; ++i) {
        if (!h.successors(a, i).empty() && g.successors(r, i).empty()) ok = false;
        if (!h.predecessors(a, i).empty() && g.predecessors(r, i).empty()) ok = false;
      }
      if (ok && injective && signature(g, r) != sig_h) ok = false;
      if (ok) candidates[a].push_back(r);
    }
  }

  std::vector<std::size_t> image(nh, kUnset);
  std::vector<bool> used(ng, false);

  auto consistent = [&](std::size_t a) {
    for (int i = 1; i <= labels; ++i) {
      for (std::size_t b : h.successors(a, i)) {
        if (image[b] != kUnset && !g.has_edge(image[a], image[b], i)) return false;
      }
      for (std::size_t b : h.predecessors(a, i)) {
        if (image[b] != kUnset && !g.has_edge(image[b], image[a], i)) return false;
      }
      if (injective) {
        for (std::size_t r : g.successors(image[a], i)) {
          // r must be the image of an h-successor if r is already an image.
          for (std::size_t b = 0; b < nh; ++b) {
            if (image[b] == r && !h.has_edge(a, b, i)) return false;
          }
        }
        for (std::size_t r : g.predecessors(image[a], i)) {
          for (std::size_t b = 0; b < nh; ++b) {
            if (image[b] == r && !h.has_edge(b, a, i)) return false;
          }
        }
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> assign = [&](std::size_t a) -> bool {
    if (a == nh) return true;
    for (std::size_t r : candidates[a]) {
      if (injective && used[r]) continue;
      image[a] = r;
      if (consistent(a)) {
        if (injective) used[r] = true;
        if (assign(a + 1)) return true;
        if (injective) used[r] = false;
      }
      image[a] = kUnset;
    }
    return false;
  };

  if (!assign(0)) return std::nullopt;
  SimulationMap map;
  for (std::size_t a = 0; a < nh; ++a) map.emplace(h.node(a), g.node(image[a]));
  return map;
}

}  // namespace

std::optional<SimulationMap> find_simulation(const LabeledGraph& g, const LabeledGraph& h) {
  return search_map(g, h, false);
}

bool is_simulation(const LabeledGraph& g, const LabeledGraph& h, const SimulationMap& map) {
  if (g.alphabet_size() != h.alphabet_size()) return false;
  for (const Edge& e : h.edges()) {
    auto ra = map.find(h.node(e.source));
    auto rb = map.find(h.node(e.dest));
    if (ra == map.end() || rb == map.end()) return false;
    auto ia = g.index_of(ra->second);
    auto ib = g.index_of(rb->second);
    if (!ia || !ib || !g.has_edge(*ia, *ib, e.label)) return false;
  }
  return map.size() == h.node_count();
}

std::optional<SimulationMap> find_isomorphism(const LabeledGraph& g, const LabeledGraph& h) {
  if (g.alphabet_size() != h.alphabet_size() || g.node_count() != h.node_count() ||
      g.edges().size() != h.edges().size()) {
    return std::nullopt;
  }
  return search_map(g, h, true);
}

}  // namespace pclf
