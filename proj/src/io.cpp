#include "pclf/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace pclf {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

const Json& field(const Json& j, const char* name, std::string_view what) {
  if (!j.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw InputError(std::string(what) + ": missing field \"" + name + "\"");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<int>();
}

NodeId node_from(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a node string");
  try {
    return NodeId::parse(j.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

std::string join_nodes(const std::vector<NodeId>& nodes) {
  std::string out;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k) out += ' ';
    out += nodes[k].to_string();
  }
  return out;
}

Json nodes_json(const std::vector<NodeId>& nodes) {
  Json out = Json::array();
  for (const NodeId& s : nodes) out.push_back(s.to_string());
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

[[noreturn]] void unsupported(std::string_view report, Format format) {
  static const char* names[] = {"text", "json", "csv"};
  throw InputError(std::string(report) + " reports have no " + names[static_cast<int>(format)] + " form");
}

}  // namespace

Json parse_json(std::string_view text, std::string_view origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Byte offset -> line number for the diagnostic.
    std::size_t line = 1;
    for (std::size_t k = 0; k < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') ++line;
    }
    throw InputError(std::string(origin) + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path.string());
}

Json graph_to_json(const LabeledGraph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({g.node(e.source).to_string(), g.node(e.dest).to_string(), e.label});
  }
  return {{"alphabet", g.alphabet_size()}, {"nodes", nodes_json(g.nodes())}, {"edges", edges}};
}

LabeledGraph graph_from_json(const Json& j) {
  const int alphabet = integer(field(j, "alphabet", "graph"), "graph.alphabet");
  const Json& nodes_j = field(j, "nodes", "graph");
  const Json& edges_j = field(j, "edges", "graph");
  if (!nodes_j.is_array()) throw InputError("graph.nodes: expected an array");
  if (!edges_j.is_array()) throw InputError("graph.edges: expected an array");

  std::vector<NodeId> nodes;
  for (std::size_t k = 0; k < nodes_j.size(); ++k) {
    nodes.push_back(node_from(nodes_j[k], "graph.nodes[" + std::to_string(k) + "]"));
  }
  std::vector<LabeledEdge> edges;
  for (std::size_t k = 0; k < edges_j.size(); ++k) {
    const std::string where = "graph.edges[" + std::to_string(k) + "]";
    const Json& e = edges_j[k];
    if (!e.is_array() || e.size() != 3) throw InputError(where + ": expected [source, dest, label]");
    edges.push_back({node_from(e[0], where + "[0]"), node_from(e[1], where + "[1]"), integer(e[2], where + "[2]")});
  }
  return make_graph(alphabet, std::move(nodes), edges);
}

Json matrices_to_json(const MatrixSet& A) {
  Json mats = Json::array();
  for (const auto& M : A.matrices()) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  return {{"n", A.dimension()}, {"matrices", mats}};
}

MatrixSet matrices_from_json(const Json& j) {
  const int n = integer(field(j, "n", "matrix set"), "matrices.n");
  if (n < 1) throw InputError("matrices.n: must be >= 1");
  const Json& mats = field(j, "matrices", "matrix set");
  if (!mats.is_array() || mats.empty()) throw InputError("matrices.matrices: expected a non-empty array");
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const std::string where = "matrices.matrices[" + std::to_string(k) + "]";
    const Json& rows = mats[k];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
      throw InputError(where + ": expected " + std::to_string(n) + " rows");
    }
    Eigen::MatrixXd M(n, n);
    for (int r = 0; r < n; ++r) {
      const Json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
        throw InputError(where + "[" + std::to_string(r) + "]: expected " + std::to_string(n) + " entries");
      }
      for (int c = 0; c < n; ++c) {
        M(r, c) = number(row[static_cast<std::size_t>(c)],
                         where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
      }
    }
    out.push_back(std::move(M));
  }
  return MatrixSet(std::move(out));
}

Json certificate_to_json(const Certificate& cert) {
  Json vectors = Json::object();
  for (const auto& [node, v] : cert.vectors) {
    Json entries = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) entries.push_back(v[k]);
    vectors[node.to_string()] = entries;
  }
  return {{"flavor", std::string(to_string(cert.flavor))}, {"gamma", cert.gamma}, {"vectors", vectors}};
}

Certificate certificate_from_json(const Json& j) {
  const Json& flavor = field(j, "flavor", "certificate");
  if (!flavor.is_string()) throw InputError("certificate.flavor: expected a string");
  Certificate cert;
  cert.flavor = parse_flavor(flavor.get<std::string>());
  cert.gamma = number(field(j, "gamma", "certificate"), "certificate.gamma");
  const Json& vectors = field(j, "vectors", "certificate");
  if (!vectors.is_object()) throw InputError("certificate.vectors: expected an object");
  for (const auto& [key, value] : vectors.items()) {
    const std::string where = "certificate.vectors[\"" + key + "\"]";
    if (!value.is_array() || value.empty()) throw InputError(where + ": expected a non-empty array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(value.size()));
    for (std::size_t k = 0; k < value.size(); ++k) {
      v(static_cast<Eigen::Index>(k)) = number(value[k], where + "[" + std::to_string(k) + "]");
    }
    try {
      cert.vectors.emplace(node_from(Json(key), where), PositiveVector(std::move(v)));
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  return cert;
}

Format parse_format(std::string_view text) {
  if (text == "text") return Format::text;
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  throw InputError("unknown format \"" + std::string(text) + "\" (expected text, json or csv)");
}

CheckReport make_check_report(const LabeledGraph& g) {
  CheckReport r;
  r.path_complete = is_path_complete(g);
  r.flags = completeness_flags(g);
  r.sccs = strongly_connected_components(g);
  r.components = path_complete_components(g);
  r.minimality = check_assumption_minimal(g);
  return r;
}

std::string render(const CheckReport& report, Format format) {
  if (format == Format::json) {
    Json sccs = Json::array();
    for (const auto& c : report.sccs) sccs.push_back(nodes_json(c));
    Json comps = Json::array();
    for (const auto& c : report.components) comps.push_back(nodes_json(c.nodes()));
    Json out = {{"path_complete", report.path_complete},
                {"complete", report.flags.complete},
                {"co_complete", report.flags.co_complete},
                {"sccs", sccs},
                {"path_complete_components", comps},
                {"strongly_connected", report.minimality.strongly_connected},
                {"edge_minimal", report.minimality.edge_minimal}};
    if (!report.minimality.diagnostic.empty()) out["diagnostic"] = report.minimality.diagnostic;
    return dump(out);
  }
  if (format != Format::text) unsupported("check", format);
  std::ostringstream os;
  os << "path-complete: " << yes_no(report.path_complete) << "\n"
     << "complete: " << yes_no(report.flags.complete) << "\n"
     << "co-complete: " << yes_no(report.flags.co_complete) << "\n"
     << "strongly connected: " << yes_no(report.minimality.strongly_connected) << "\n"
     << "edge-minimal: " << yes_no(report.minimality.edge_minimal) << "\n";
  if (!report.minimality.diagnostic.empty()) os << "note: " << report.minimality.diagnostic << "\n";
  os << "sccs:\n";
  for (const auto& c : report.sccs) os << "  " << join_nodes(c) << "\n";
  os << render(report.components, Format::text);
  return os.str();
}

std::string render(const std::vector<LabeledGraph>& components, Format format) {
  if (format == Format::json) {
    Json out = Json::array();
    for (const auto& c : components) out.push_back(graph_to_json(c));
    return dump(out);
  }
  if (format != Format::text) unsupported("component", format);
  if (components.empty()) return "no path-complete components\n";
  std::string out = "path-complete components:\n";
  for (const auto& c : components) out += "  " + join_nodes(c.nodes()) + "\n";
  return out;
}

std::string render(const LabeledGraph& g, Format format) {
  if (format == Format::json) return dump(graph_to_json(g));
  if (format != Format::text) unsupported("graph", format);
  std::ostringstream os;
  os << "alphabet: " << g.alphabet_size() << "\n"
     << "nodes (" << g.node_count() << "): " << join_nodes(g.nodes()) << "\n"
     << "edges (" << g.edges().size() << "):\n";
  for (const Edge& e : g.edges()) {
    os << "  " << g.node(e.source).to_string() << " -> " << g.node(e.dest).to_string() << " [" << e.label
       << "]\n";
  }
  return os.str();
}

std::string render(const SimulationReport& report, Format format) {
  if (format == Format::json) {
    Json out = {{"simulates", report.map.has_value()}};
    if (report.map) {
      Json map = Json::object();
      for (const auto& [from, to] : *report.map) map[from.to_string()] = to.to_string();
      out["map"] = map;
    }
    return dump(out);
  }
  if (format != Format::text) unsupported("simulation", format);
  std::string out = "simulates: " + yes_no(report.map.has_value()) + "\n";
  if (report.map) {
    for (const auto& [from, to] : *report.map) out += "  " + from.to_string() + " -> " + to.to_string() + "\n";
  }
  return out;
}

std::string render(const RhoBound& bound, Format format) {
  if (format == Format::json) {
    Json trace = Json::array();
    for (const auto& s : bound.trace) trace.push_back({{"gamma", s.gamma}, {"feasible", s.feasible}});
    return dump({{"rho_G", bound.gamma_star},
                 {"lower", bound.lower},
                 {"upper", bound.upper},
                 {"warnings", bound.warnings},
                 {"certificate", certificate_to_json(bound.certificate)},
                 {"trace", trace}});
  }
  if (format != Format::text) unsupported("bound", format);
  std::ostringstream os;
  os << "rho_G: " << fmt(bound.gamma_star) << "\n"
     << "bracket: [" << fmt(bound.lower) << ", " << fmt(bound.upper) << "]\n"
     << "flavor: " << to_string(bound.certificate.flavor) << "\n"
     << "bisection steps: " << bound.trace.size() << "\n";
  return os.str();
}

std::string render(const HierarchyReport& report, Format format) {
  switch (format) {
    case Format::csv: {
      std::ostringstream os;
      os << std::setprecision(17) << "step,kind,level,rho_G,lower,upper\n";
      for (const auto& r : report.rows) {
        os << r.step << ',' << to_string(r.kind) << ',' << r.level << ',' << r.rho << ',' << r.lower << ','
           << r.upper << "\n";
      }
      return os.str();
    }
    case Format::json: {
      Json rows = Json::array();
      for (const auto& r : report.rows) {
        rows.push_back({{"step", r.step},
                        {"kind", std::string(to_string(r.kind))},
                        {"level", r.level},
                        {"graph_size", r.graph_size},
                        {"rho_G", r.rho},
                        {"lower", r.lower},
                        {"upper", r.upper}});
      }
      return dump({{"rows", rows},
                   {"final_interval", {report.lower, report.upper}},
                   {"epsilon", report.epsilon},
                   {"stable", report.stable},
                   {"unstable", report.unstable}});
    }
    case Format::text: {
      std::ostringstream os;
      os << "step      nodes  rho_G     lower     upper\n";
      for (const auto& r : report.rows) {
        os << std::left << std::setw(10) << r.step << std::setw(7) << r.graph_size << std::setw(10) << fmt(r.rho)
           << std::setw(10) << fmt(r.lower) << fmt(r.upper) << "\n";
      }
      os << "JSR in [" << fmt(report.lower) << ", " << fmt(report.upper) << "]\n";
      if (report.stable) os << "stable: upper bound below 1\n";
      if (report.unstable) os << "unstable: lower bound above 1\n";
      return os.str();
    }
  }
  unsupported("hierarchy", format);
}

std::string render(const ProductBounds& bounds, int depth, Format format) {
  if (format == Format::json) return dump({{"depth", depth}, {"lower", bounds.lower}, {"upper", bounds.upper}});
  if (format != Format::text) unsupported("oracle", format);
  return "depth: " + std::to_string(depth) + "\nlower: " + fmt(bounds.lower) + "\nupper: " + fmt(bounds.upper) +
         "\n";
}

std::string render(const VerificationReport& report, Format format) {
  if (format == Format::json) {
    Json violations = Json::array();
    for (const auto& v : report.violations) {
      violations.push_back({{"edge", {v.edge.source.to_string(), v.edge.dest.to_string(), v.edge.label}},
                            {"excess", v.excess}});
    }
    return dump({{"ok", report.ok}, {"violations", violations}});
  }
  if (format != Format::text) unsupported("verification", format);
  std::string out = "valid: " + yes_no(report.ok) + "\n";
  for (const auto& v : report.violations) {
    out += "  " + v.edge.source.to_string() + " -> " + v.edge.dest.to_string() + " [" +
           std::to_string(v.edge.label) + "] excess " + fmt(v.excess) + "\n";
  }
  return out;
}

}  // namespace pclf
