#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pclf/copositive.hpp"
#include "pclf/graph.hpp"
#include "pclf/jsr.hpp"
#include "pclf/lp_feasibility.hpp"

namespace pclf {

using Json = nlohmann::json;

/// Reads and parses a JSON file; errors become InputError naming the file and position.
Json load_json_file(const std::filesystem::path& path);
Json parse_json(std::string_view text, std::string_view origin = "<input>");

/// {"alphabet": M, "nodes": ["a", "{a,b}", "a∘1", "(1,2)"], "edges": [["a", "b", 1], ...]}
Json graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const Json& j);

/// {"n": 3, "matrices": [[[row], [row], [row]], ...]}
Json matrices_to_json(const MatrixSet& A);
MatrixSet matrices_from_json(const Json& j);

/// {"flavor": "dual", "gamma": 1.07, "vectors": {"a": [1, 2, 3], ...}}
Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

enum class Format { text, json, csv };
Format parse_format(std::string_view text);

struct CheckReport {
  bool path_complete = false;
  CompletenessFlags flags;
  std::vector<std::vector<NodeId>> sccs;
  std::vector<LabeledGraph> components;  ///< path-complete SCCs
  MinimalityReport minimality;
};
CheckReport make_check_report(const LabeledGraph& g);

struct SimulationReport {
  std::optional<SimulationMap> map;
};

// Text prints reals with 6 significant digits, JSON at full precision.
// Unsupported (report, format) pairs throw InputError.
std::string render(const CheckReport& report, Format format);
std::string render(const std::vector<LabeledGraph>& components, Format format);
std::string render(const LabeledGraph& g, Format format);
std::string render(const SimulationReport& report, Format format);
std::string render(const RhoBound& bound, Format format);
std::string render(const HierarchyReport& report, Format format);
std::string render(const ProductBounds& bounds, int depth, Format format);
std::string render(const VerificationReport& report, Format format);

}  // namespace pclf
