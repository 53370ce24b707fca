#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pclf/cli.hpp"
#include "pclf/io.hpp"
#include "pclf/lifts.hpp"
#include "support.hpp"

using namespace pclf;
using namespace pclf::testing;
using Catch::Approx;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("pclf_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("graph JSON round trip") {
  for (const char* name : {"g0.json", "g1.json", "g2.json", "g3.json", "g4.json", "g5.json", "g6.json", "g0_m3.json"}) {
    const LabeledGraph g = load_graph(name);
    CHECK(graph_from_json(graph_to_json(g)) == g);
    CHECK(graph_from_json(parse_json(graph_to_json(g).dump())) == g);
  }
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const LabeledGraph g = random_path_complete(rng, 3, 2);
    for (const LabeledGraph& h : {sum_lift(g, 2), max_lift(g), composition_lift(g), transpose(g)}) {
      CHECK(graph_from_json(parse_json(graph_to_json(h).dump())) == h);
    }
  }
}

TEST_CASE("matrix and certificate round trip") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixSet A = random_set(rng, 1 + trial % 3, 1 + trial % 4);
    const MatrixSet B = matrices_from_json(parse_json(matrices_to_json(A).dump()));
    REQUIRE(B.size() == A.size());
    for (int i = 1; i <= A.size(); ++i) CHECK(B.mode(i) == A.mode(i));

    const LabeledGraph g = random_path_complete_on(rng, 3, A.size());
    const Certificate c = rho_bound(g, A, Flavor::dual).certificate;
    const Certificate d = certificate_from_json(parse_json(certificate_to_json(c).dump()));
    CHECK(d.flavor == c.flavor);
    CHECK(d.gamma == c.gamma);
    for (const NodeId& s : g.nodes()) CHECK(d.at(s) == c.at(s));
  }
}

TEST_CASE("malformed input names the position") {
  try {
    parse_json("{\n  \"alphabet\": 2,\n  \"nodes\": [\"a\",]\n}", "broken.json");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    const std::string what = e.what();
    CHECK(what.find("broken.json") != std::string::npos);
    CHECK(what.find(":3") != std::string::npos);
  }
  CHECK_THROWS_AS(graph_from_json(parse_json(R"({"alphabet": 2, "nodes": ["a"], "edges": [["a", "b", 1]]})")),
                  InputError);
  CHECK_THROWS_AS(matrices_from_json(parse_json(R"({"n": 2, "matrices": [[[1, -1], [0, 1]]]})")), InputError);
  CHECK_THROWS_AS(certificate_from_json(parse_json(R"({"flavor": "sideways", "gamma": 1, "vectors": {}})")),
                  InputError);

  const std::string bad = write_temp("bad.json", "{\n\"alphabet\": 2,\n\"nodes\": [\n");
  const Run r = run({"check", bad});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("pclf_test_bad.json") != std::string::npos);
}

TEST_CASE("check subcommand") {
  const Run ok = run({"check", data_path("g0.json")});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("path-complete: true") != std::string::npos);

  const auto a = NodeId::atom("a");
  const std::string partial = write_temp("partial.json", graph_to_json(make_graph(2, {a}, {{a, a, 1}})).dump());
  const Run no = run({"check", partial});
  CHECK(no.code == kExitNegative);
  CHECK(no.out.find("path-complete: false") != std::string::npos);

  const Run json = run({"check", data_path("g3.json"), "--format", "json"});
  REQUIRE(json.code == kExitOk);
  const Json j = parse_json(json.out);
  CHECK(j.at("path_complete") == true);
}

TEST_CASE("lift subcommand") {
  const Run db = run({"lift", "--kind", "debruijn:2,3"});
  REQUIRE(db.code == kExitOk);
  const LabeledGraph g = graph_from_json(parse_json(db.out));
  CHECK(g == de_bruijn(2, 3));

  const Run mx = run({"lift", data_path("g3.json"), "--kind", "max"});
  REQUIRE(mx.code == kExitOk);
  CHECK(graph_from_json(parse_json(mx.out)) == max_lift(load_graph("g3.json")));

  const auto a = NodeId::atom("a");
  const std::string partial = write_temp("partial2.json", graph_to_json(make_graph(2, {a}, {{a, a, 1}})).dump());
  const Run none = run({"lift", partial, "--kind", "sum:1", "--components", "--format", "text"});
  CHECK(none.code == kExitOk);
  CHECK(none.out.find("no path-complete components") != std::string::npos);

  CHECK(run({"lift", data_path("g3.json"), "--kind", "sideways"}).code == kExitInput);
  CHECK(run({"lift", "--kind", "max"}).code == kExitInput);
}

TEST_CASE("simulate subcommand") {
  const Run yes = run({"simulate", data_path("g0.json"), data_path("g5.json")});
  CHECK(yes.code == kExitOk);
  const Json j = parse_json(yes.out);
  CHECK(j.at("simulates") == true);
  CHECK(j.at("map").size() == load_graph("g5.json").nodes().size());

  const Run no = run({"simulate", data_path("g1.json"), data_path("g2.json")});
  CHECK(no.code == kExitNegative);
  CHECK(parse_json(no.out).at("simulates") == false);
}

TEST_CASE("bound, verify and transport round trip through files") {
  const Run text = run({"bound", data_path("g0.json"), data_path("modes_3x3.json")});
  REQUIRE(text.code == kExitOk);
  CHECK(text.out.rfind("rho_G: 1.341", 0) == 0);

  const Run json = run({"bound", data_path("g5.json"), data_path("modes_3x3.json"), "--format", "json"});
  REQUIRE(json.code == kExitOk);
  const Json j = parse_json(json.out);
  const std::string cert = write_temp("cert.json", j.at("certificate").dump());
  CHECK(j.at("rho_G").get<double>() ==
        Approx(rho_bound(load_graph("g5.json"), load_matrices("modes_3x3.json"), Flavor::dual).gamma_star));

  const Run v = run({"verify", data_path("g5.json"), data_path("modes_3x3.json"), cert});
  CHECK(v.code == kExitOk);

  Json shrunk = j.at("certificate");
  shrunk["gamma"] = 0.5;
  const std::string bad = write_temp("cert_bad.json", shrunk.dump());
  CHECK(run({"verify", data_path("g5.json"), data_path("modes_3x3.json"), bad}).code == kExitNegative);

  const Run t = run({"transport", data_path("g5.json"), data_path("modes_3x3.json"), cert, "--kind", "max"});
  REQUIRE(t.code == kExitOk);
  const Certificate lifted = certificate_from_json(parse_json(t.out));
  CHECK(verify_certificate(max_lift(load_graph("g5.json")), load_matrices("modes_3x3.json"), lifted, 1e-9).ok);

  // min carries primal certificates only.
  CHECK(run({"transport", data_path("g5.json"), data_path("modes_3x3.json"), cert, "--kind", "min"}).code ==
        kExitInput);
}

TEST_CASE("hierarchy and oracle subcommands") {
  const Run csv = run({"hierarchy", data_path("modes_3x3.json"), "--lmax", "3"});
  REQUIRE(csv.code == kExitOk);
  CHECK(csv.out.rfind("step,kind,level,rho_G,lower,upper\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 7);

  const Run cap = run({"hierarchy", data_path("modes_3x3.json"), "--eps", "1e-12", "--lmax", "5", "--max-nodes", "8"});
  CHECK(cap.code == kExitInput);
  CHECK(cap.err.find("cap exceeded") != std::string::npos);

  const Run oracle = run({"oracle", data_path("modes_3x3.json"), "--depth", "4"});
  CHECK(oracle.code == kExitOk);
  CHECK_FALSE(oracle.out.empty());
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands = {
      {"check", data_path("g5.json"), "--format", "json"},
      {"lift", data_path("g4.json"), "--kind", "comp"},
      {"lift", data_path("g6.json"), "--kind", "sum:2", "--components"},
      {"bound", data_path("g6.json"), data_path("modes_3x3.json"), "--format", "json"},
      {"hierarchy", data_path("modes_3x3.json"), "--lmax", "3"},
  };
  for (const auto& args : commands) {
    const Run first = run(args);
    const Run second = run(args);
    CHECK(first.code == second.code);
    CHECK(first.out == second.out);
  }
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"bound", data_path("g0.json"), data_path("modes_3x3.json"), "--flavor", "sideways"}).code == kExitInput);
  CHECK(run({"check", data_path("does_not_exist.json")}).code == kExitInput);
}
