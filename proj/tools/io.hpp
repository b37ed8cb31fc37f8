#pragma once

// File formats of the command-line tool: edge-list graphs, community files,
// key = value configs, and JSON reports.

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "commfind/detector.hpp"
#include "commfind/evaluation.hpp"
#include "commfind/generator.hpp"
#include "commfind/graph.hpp"
#include "commfind/params.hpp"
#include "commfind/validator.hpp"

namespace commfind::io {

using Json = nlohmann::ordered_json;

/// `n m` header, then one `u v` line per edge with u < v, ascending.
std::string format_graph(const Graph& g);
Graph parse_graph(const std::string& text);

/// One community per line, ascending ids, with an optional
/// ` | a=<comma-separated affinities>` suffix.
std::string format_truth(const GroundTruth& truth);
GroundTruth parse_truth(const std::string& text);

struct Config {
  ModelParams model;
  DetectorParams detector;
  AmbientSpec ambient;
  /// Keys present in the file, in file order.
  std::vector<std::string> keys;
};

/// Flat `key = value` lines; `#` starts a comment line. Keys are the
/// ModelParams, DetectorParams, and AmbientSpec field names. Shared keys
/// (k, d, epsilon, ...) set both parameter sets.
Config parse_config(const std::string& text);
std::string format_model_params(const ModelParams& p, const AmbientSpec& ambient);

/// Lines of space-separated ids, one set per line.
std::string format_sets(const std::vector<NodeSet>& sets);

Json to_json(const DetectorParams& p);
Json to_json(const DetectionResult& r);
Json to_json(const MatchReport& r);
Json to_json(const AssumptionReport& r);
Json to_json(const RecoveryTable& t);
std::string render_table(const RecoveryTable& t);

/// Candidates of a result JSON document, or the sets of a community file.
std::vector<NodeSet> parse_found(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Shortest decimal text that reads back as the same double.
std::string format_double(double x);

}  // namespace commfind::io
