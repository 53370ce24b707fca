#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "support.hpp"

using namespace pclf;
using namespace pclf::testing;

namespace {

// All maps from h's nodes into g's nodes, by counting in base |S_g|.
bool simulation_exists_brute(const LabeledGraph& g, const LabeledGraph& h) {
  const std::size_t ng = g.node_count();
  const std::size_t nh = h.node_count();
  std::vector<std::size_t> img(nh, 0);
  for (;;) {
    bool ok = true;
    for (const Edge& e : h.edges()) {
      if (!g.has_edge(img[e.source], img[e.dest], e.label)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
    std::size_t k = 0;
    while (k < nh && ++img[k] == ng) img[k++] = 0;
    if (k == nh) return false;
  }
}

bool isomorphic_brute(const LabeledGraph& g, const LabeledGraph& h) {
  if (g.node_count() != h.node_count() || g.edges().size() != h.edges().size()) return false;
  std::vector<std::size_t> perm(g.node_count());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (const Edge& e : h.edges()) {
      if (!g.has_edge(perm[e.source], perm[e.dest], e.label)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// reach[i][j]: a directed path of length >= 0 from i to j.
std::vector<std::vector<bool>> closure(const LabeledGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const Edge& e : g.edges()) r[e.source][e.dest] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

}  // namespace

TEST_CASE("graph construction validates and canonicalizes") {
  const auto a = NodeId::atom("a");
  const auto b = NodeId::atom("b");
  const LabeledGraph g1 = make_graph(2, {b, a}, {{a, b, 1}, {b, a, 2}, {a, b, 1}});
  const LabeledGraph g2 = make_graph(2, {a, b}, {{b, a, 2}, {a, b, 1}});
  CHECK(g1 == g2);
  CHECK(g1.edges().size() == 2);
  CHECK(g1.node(0) == a);
  CHECK_THROWS_AS(make_graph(0, {a}, {}), InputError);
  CHECK_THROWS_AS(make_graph(2, {}, {}), InputError);
  CHECK_THROWS_AS(make_graph(2, {a}, {{a, b, 1}}), InputError);
  CHECK_THROWS_AS(make_graph(2, {a, b}, {{a, b, 3}}), InputError);
  CHECK_THROWS_AS(make_graph(2, {a, b}, {{a, b, 0}}), InputError);
}

TEST_CASE("figure graphs are path-complete") {
  for (const char* name : {"g0.json", "g1.json", "g2.json", "g3.json", "g4.json", "g5.json", "g6.json"}) {
    INFO(name);
    const LabeledGraph g = load_graph(name);
    CHECK(is_path_complete(g));
    CHECK(words_all_covered(g, 1 << g.node_count()));
  }
  CHECK(is_path_complete(common_lyapunov_graph(3)));
}

TEST_CASE("missing letter breaks path-completeness") {
  const auto a = NodeId::atom("a");
  const LabeledGraph g = make_graph(2, {a}, {{a, a, 1}});
  CHECK_FALSE(is_path_complete(g));
  const LabeledGraph empty = make_graph(1, {a}, {});
  CHECK_FALSE(is_path_complete(empty));
}

TEST_CASE("subset construction agrees with word enumeration on random graphs") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 4;
    // The oracle walks M^(2^n) words, so three labels stop at three nodes.
    const int M = 1 + trial % (n == 4 ? 2 : 3);
    const int edge_bits = n * n * M;
    const std::uint64_t mask = bits(rng) & ((std::uint64_t{1} << edge_bits) - 1);
    const LabeledGraph g = graph_from_mask(n, M, mask);
    CHECK(is_path_complete(g) == words_all_covered(g, 1 << n));
    // Path-completeness is invariant under transposition.
    CHECK(is_path_complete(g) == is_path_complete(transpose(g)));
  }
}

TEST_CASE("completeness flags") {
  const auto g2 = load_graph("g2.json");
  const auto f2 = completeness_flags(g2);
  CHECK_FALSE(f2.complete);  // a has no 2-successor
  CHECK(f2.co_complete);
  const auto f3 = completeness_flags(load_graph("g3.json"));
  CHECK(f3.complete);
  CHECK(f3.co_complete);
  const auto f4 = completeness_flags(load_graph("g4.json"));
  CHECK(f4.complete);
  CHECK_FALSE(f4.co_complete);
  // Flags swap under transposition.
  const auto f4t = completeness_flags(transpose(load_graph("g4.json")));
  CHECK(f4t.co_complete);
  CHECK_FALSE(f4t.complete);
}

TEST_CASE("transpose is an involution that reverses every edge") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const LabeledGraph g = random_path_complete(rng, 5, 3);
    const LabeledGraph t = transpose(g);
    CHECK(transpose(t) == g);
    for (const Edge& e : g.edges()) CHECK(t.has_edge(e.dest, e.source, e.label));
    CHECK(t.edges().size() == g.edges().size());
  }
}

TEST_CASE("SCCs match mutual reachability and come in topological order") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 5;
    const std::uint64_t mask = bits(rng) & bits(rng) & ((std::uint64_t{1} << (n * n * 2)) - 1);
    const LabeledGraph g = graph_from_mask(n, 2, mask);
    const auto reach = closure(g);
    const auto sccs = strongly_connected_components(g);
    std::vector<std::size_t> comp_of(g.node_count());
    std::size_t total = 0;
    for (std::size_t c = 0; c < sccs.size(); ++c) {
      CHECK(std::is_sorted(sccs[c].begin(), sccs[c].end()));
      for (const NodeId& s : sccs[c]) comp_of[*g.index_of(s)] = c;
      total += sccs[c].size();
    }
    REQUIRE(total == g.node_count());
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      for (std::size_t j = 0; j < g.node_count(); ++j) {
        CHECK((comp_of[i] == comp_of[j]) == (reach[i][j] && reach[j][i]));
      }
    }
    for (const Edge& e : g.edges()) CHECK(comp_of[e.source] <= comp_of[e.dest]);
  }
}

TEST_CASE("path-complete components") {
  // Looped nodes a and c joined through b; b alone is not path-complete.
  const auto a = NodeId::atom("a");
  const auto b = NodeId::atom("b");
  const auto c = NodeId::atom("c");
  const LabeledGraph g = make_graph(2, {a, b, c}, {{a, a, 1}, {a, a, 2}, {a, b, 1}, {b, c, 1}, {c, c, 1}, {c, c, 2}});
  const auto comps = path_complete_components(g);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].nodes() == std::vector<NodeId>{a});
  CHECK(comps[1].nodes() == std::vector<NodeId>{c});
  const LabeledGraph broken = make_graph(2, {a}, {{a, a, 1}});
  CHECK(path_complete_components(broken).empty());
}

TEST_CASE("minimality assumption") {
  const auto g4 = check_assumption_minimal(load_graph("g4.json"));
  CHECK(g4.strongly_connected);
  CHECK(g4.edge_minimal);
  const auto g0 = check_assumption_minimal(common_lyapunov_graph(2));
  CHECK(g0.edge_minimal);
  // Two disconnected G0 copies: neither SCC condition nor minimality holds.
  const auto x = NodeId::atom("x");
  const auto y = NodeId::atom("y");
  const auto twin = check_assumption_minimal(make_graph(2, {x, y}, {{x, x, 1}, {x, x, 2}, {y, y, 1}, {y, y, 2}}));
  CHECK_FALSE(twin.strongly_connected);
  CHECK_FALSE(twin.edge_minimal);
  CHECK_FALSE(twin.diagnostic.empty());

  const auto a = NodeId::atom("a");
  const auto not_pc = check_assumption_minimal(make_graph(2, {a}, {{a, a, 1}}));
  CHECK_FALSE(not_pc.edge_minimal);
  CHECK_FALSE(not_pc.diagnostic.empty());
}

TEST_CASE("edge minimality agrees with single-edge deletion by word enumeration") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const LabeledGraph g = random_path_complete(rng, 3, 2);
    const auto labeled = g.labeled_edges();
    bool minimal = true;
    for (std::size_t skip = 0; skip < labeled.size() && minimal; ++skip) {
      std::vector<LabeledEdge> rest;
      for (std::size_t k = 0; k < labeled.size(); ++k) {
        if (k != skip) rest.push_back(labeled[k]);
      }
      if (words_all_covered(make_graph(g.alphabet_size(), g.nodes(), rest), 1 << g.node_count())) minimal = false;
    }
    CHECK(check_assumption_minimal(g).edge_minimal == minimal);
  }
}

TEST_CASE("G1 does not simulate G2") {
  // G1 has no loop, G2 has (a,a,1).
  CHECK_FALSE(find_simulation(load_graph("g1.json"), load_graph("g2.json")).has_value());
  // Every graph is simulated by G0.
  for (const char* name : {"g1.json", "g2.json", "g5.json"}) {
    const LabeledGraph h = load_graph(name);
    const auto map = find_simulation(common_lyapunov_graph(2), h);
    REQUIRE(map);
    CHECK(is_simulation(common_lyapunov_graph(2), h, *map));
  }
  CHECK_THROWS_AS(find_simulation(common_lyapunov_graph(3), load_graph("g1.json")), InputError);
}

TEST_CASE("simulation search agrees with exhaustive maps") {
  std::mt19937_64 rng(14);
  int found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const LabeledGraph g = random_path_complete_on(rng, 4, 2);
    const LabeledGraph h = random_path_complete_on(rng, 4, 2);
    const auto map = find_simulation(g, h);
    CHECK(map.has_value() == simulation_exists_brute(g, h));
    if (map) {
      ++found;
      CHECK(map->size() == h.node_count());
      CHECK(is_simulation(g, h, *map));
    }
  }
  CHECK(found > 0);
}

TEST_CASE("isomorphism search agrees with permutations") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const LabeledGraph g = random_path_complete(rng, 5, 2);
    const LabeledGraph h = shuffled_copy(g, rng);
    const auto iso = find_isomorphism(g, h);
    REQUIRE(iso);
    CHECK(is_simulation(g, h, *iso));
    const LabeledGraph other = random_path_complete_on(rng, 4, g.alphabet_size());
    CHECK(find_isomorphism(g, other).has_value() == isomorphic_brute(g, other));
  }
}

TEST_CASE("induced subgraph keeps exactly the internal edges") {
  const LabeledGraph g5 = load_graph("g5.json");
  const auto sub = induced_subgraph(g5, {NodeId::atom("a"), NodeId::atom("b")});
  CHECK(sub.node_count() == 2);
  CHECK(sub.edges().size() == 2);
  CHECK_THROWS_AS(induced_subgraph(g5, {NodeId::atom("z")}), InputError);
}
