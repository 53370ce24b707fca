#include "pclf/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>

#include "pclf/io.hpp"
#include "pclf/jsr.hpp"
#include "pclf/lifts.hpp"
#include "pclf/lp_feasibility.hpp"

namespace pclf {

namespace {

// "debruijn:M,l"
std::pair<int, int> parse_de_bruijn(std::string_view spec) {
  const auto comma = spec.find(',');
  int M = 0;
  int l = 0;
  if (comma == std::string_view::npos ||
      std::from_chars(spec.data(), spec.data() + comma, M).ptr != spec.data() + comma ||
      std::from_chars(spec.data() + comma + 1, spec.data() + spec.size(), l).ptr != spec.data() + spec.size()) {
    throw InputError("expected debruijn:M,l, got debruijn:" + std::string(spec));
  }
  return {M, l};
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

struct Options {
  std::string format;
  std::string graph;
  std::string other;
  std::string matrices;
  std::string certificate;
  std::string kind;
  std::string flavor = "dual";
  bool components = false;
  double tol = kDefaultBisectionTol;
  double eps = 1e-2;
  int lmax = 8;
  std::size_t max_nodes = kDefaultHierarchyNodes;
  int depth = 6;
};

Format format_or(const Options& o, Format fallback) {
  return o.format.empty() ? fallback : parse_format(o.format);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Path-complete Lyapunov graphs and copositive JSR bounds", "pclf"};
  app.require_subcommand(1);
  Options o;
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  };

  auto* check = app.add_subcommand("check", "path-completeness, flags, SCCs, minimality");
  check->add_option("graph", o.graph, "graph JSON")->required();
  add_format(check);

  auto* lift = app.add_subcommand("lift", "apply a lift and print the lifted graph");
  lift->add_option("graph", o.graph, "graph JSON (not needed for debruijn)");
  lift->add_option("--kind", o.kind, "sum:T, max, min, comp, backcomp or debruijn:M,l")->required();
  lift->add_flag("--components", o.components, "print the path-complete components instead");
  add_format(lift);

  auto* simulate = app.add_subcommand("simulate", "search for a simulation of h by g");
  simulate->add_option("simulating", o.graph, "graph g JSON")->required();
  simulate->add_option("simulated", o.other, "graph h JSON")->required();
  add_format(simulate);

  auto* bound = app.add_subcommand("bound", "copositive upper bound on a graph");
  bound->add_option("graph", o.graph, "graph JSON")->required();
  bound->add_option("matrices", o.matrices, "matrix set JSON")->required();
  bound->add_option("--flavor", o.flavor, "primal or dual")->check(CLI::IsMember({"primal", "dual"}));
  bound->add_option("--tol", o.tol, "bisection tolerance")->check(CLI::PositiveNumber);
  add_format(bound);

  auto* hier = app.add_subcommand("hierarchy", "De Bruijn hierarchy of JSR brackets");
  hier->add_option("matrices", o.matrices, "matrix set JSON")->required();
  hier->add_option("--eps", o.eps, "stop once upper - lower < eps");
  hier->add_option("--lmax", o.lmax, "last level");
  hier->add_option("--max-nodes", o.max_nodes, "cap on De Bruijn graph size");
  hier->add_option("--tol", o.tol, "bisection tolerance")->check(CLI::PositiveNumber);
  add_format(hier);

  auto* oracle = app.add_subcommand("oracle", "brute-force product bounds");
  oracle->add_option("matrices", o.matrices, "matrix set JSON")->required();
  oracle->add_option("--depth", o.depth, "longest product")->check(CLI::PositiveNumber);
  add_format(oracle);

  auto* verify = app.add_subcommand("verify", "check a certificate edge by edge");
  verify->add_option("graph", o.graph, "graph JSON")->required();
  verify->add_option("matrices", o.matrices, "matrix set JSON")->required();
  verify->add_option("certificate", o.certificate, "certificate JSON")->required();
  verify->add_option("--tol", o.tol, "slack")->check(CLI::NonNegativeNumber);
  add_format(verify);

  auto* transport = app.add_subcommand("transport", "carry a certificate through a lift");
  transport->add_option("graph", o.graph, "graph JSON")->required();
  transport->add_option("matrices", o.matrices, "matrix set JSON")->required();
  transport->add_option("certificate", o.certificate, "certificate JSON")->required();
  transport->add_option("--kind", o.kind, "sum:T, max, min, comp or backcomp")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*check) {
      const CheckReport report = make_check_report(graph_from_json(load_json_file(o.graph)));
      out << render(report, format_or(o, Format::text));
      return report.path_complete ? kExitOk : kExitNegative;
    }
    if (*lift) {
      LabeledGraph lifted = common_lyapunov_graph(1);
      std::vector<std::string> warnings;
      if (o.kind.rfind("debruijn:", 0) == 0) {
        const auto [M, l] = parse_de_bruijn(std::string_view(o.kind).substr(9));
        lifted = de_bruijn(M, l);
      } else {
        if (o.graph.empty()) throw InputError("lift: a graph file is required for --kind " + o.kind);
        const LiftSpec spec = parse_lift_spec(o.kind);
        lifted = apply_lift(graph_from_json(load_json_file(o.graph)), spec, &warnings);
      }
      print_warnings(warnings, err);
      if (o.components) {
        out << render(path_complete_components(lifted), format_or(o, Format::text));
      } else {
        out << render(lifted, format_or(o, Format::json));
      }
      return kExitOk;
    }
    if (*simulate) {
      const LabeledGraph g = graph_from_json(load_json_file(o.graph));
      const LabeledGraph h = graph_from_json(load_json_file(o.other));
      const SimulationReport report{find_simulation(g, h)};
      out << render(report, format_or(o, Format::json));
      return report.map ? kExitOk : kExitNegative;
    }
    if (*bound) {
      const LabeledGraph g = graph_from_json(load_json_file(o.graph));
      const MatrixSet A = matrices_from_json(load_json_file(o.matrices));
      const RhoBound result = rho_bound(g, A, parse_flavor(o.flavor), o.tol);
      print_warnings(result.warnings, err);
      out << render(result, format_or(o, Format::text));
      return kExitOk;
    }
    if (*hier) {
      const MatrixSet A = matrices_from_json(load_json_file(o.matrices));
      out << render(hierarchy(A, o.eps, o.lmax, o.max_nodes, o.tol), format_or(o, Format::csv));
      return kExitOk;
    }
    if (*oracle) {
      const MatrixSet A = matrices_from_json(load_json_file(o.matrices));
      out << render(brute_force_bounds(A, o.depth), o.depth, format_or(o, Format::text));
      return kExitOk;
    }
    if (*verify) {
      const LabeledGraph g = graph_from_json(load_json_file(o.graph));
      const MatrixSet A = matrices_from_json(load_json_file(o.matrices));
      const Certificate cert = certificate_from_json(load_json_file(o.certificate));
      const double tol = verify->count("--tol") ? o.tol : kDefaultSlack;
      const VerificationReport report = verify_certificate(g, A, cert, tol);
      out << render(report, format_or(o, Format::text));
      return report.ok ? kExitOk : kExitNegative;
    }
    if (*transport) {
      const LabeledGraph g = graph_from_json(load_json_file(o.graph));
      const MatrixSet A = matrices_from_json(load_json_file(o.matrices));
      const Certificate cert = certificate_from_json(load_json_file(o.certificate));
      out << certificate_to_json(transport_certificate(cert, parse_lift_spec(o.kind), g, A)).dump(2) << "\n";
      return kExitOk;
    }
  } catch (const CapExceeded& e) {
    err << "error: cap exceeded: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SolverError& e) {
    err << "error: solver: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitInput;
}

}  // namespace pclf
