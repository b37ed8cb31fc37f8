#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "commfind/errors.hpp"

namespace commfind::io {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::uint64_t to_u64(std::string_view s, const std::string& what) {
  std::uint64_t v = 0;
  if (!parse_number(s, v)) throw IoError("bad " + what + " '" + std::string(s) + "'");
  return v;
}

double to_double(std::string_view s, const std::string& what) {
  double v = 0;
  if (!parse_number(s, v)) throw IoError("bad " + what + " '" + std::string(s) + "'");
  return v;
}

std::string line_tag(std::size_t i) { return "line " + std::to_string(i + 1); }

NodeSet parse_id_list(std::string_view text, const std::string& where) {
  std::vector<NodeId> ids;
  for (auto tok : split_spaces(trim(text))) {
    const auto v = to_u64(tok, "node id on " + where);
    if (v > 0xffffffffu) throw IoError("node id out of range on " + where);
    if (!ids.empty() && v <= ids.back()) {
      throw IoError("node ids must be strictly ascending on " + where);
    }
    ids.push_back(static_cast<NodeId>(v));
  }
  return NodeSet::from_sorted(std::move(ids));
}

Json set_json(const NodeSet& s) { return Json(std::vector<NodeId>(s.begin(), s.end())); }

Json witness_json(const Witness& w) {
  Json j;
  j["node"] = w.node;
  if (w.other) j["other"] = *w.other;
  if (w.community) j["community"] = *w.community;
  if (w.other_community) j["other_community"] = *w.other_community;
  j["count"] = w.measured.count;
  j["total"] = w.measured.total;
  j["value"] = w.value;
  j["bound"] = w.bound;
  return j;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string format_graph(const Graph& g) {
  std::string out = std::to_string(g.node_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

Graph parse_graph(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw IoError("graph file is empty");
  const auto header = split_spaces(lines[0]);
  if (header.size() != 2) throw IoError("graph header must be 'n m'");
  const auto n = to_u64(header[0], "node count");
  const auto m = to_u64(header[1], "edge count");
  if (lines.size() != m + 1) {
    throw IoError("graph header declares " + std::to_string(m) + " edges but the file has " +
                  std::to_string(lines.size() - 1) + " edge lines");
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto tok = split_spaces(lines[i]);
    if (tok.size() != 2) throw IoError(line_tag(i) + ": expected 'u v'");
    const auto u = to_u64(tok[0], "node id on " + line_tag(i));
    const auto v = to_u64(tok[1], "node id on " + line_tag(i));
    if (!(u < v)) throw IoError(line_tag(i) + ": edges must have u < v");
    if (v >= n) throw IoError(line_tag(i) + ": node id out of range");
    const Edge e{static_cast<NodeId>(u), static_cast<NodeId>(v)};
    if (!edges.empty() && !(edges.back() < e)) {
      throw IoError(line_tag(i) + ": edges must be unique and in ascending order");
    }
    edges.push_back(e);
  }
  try {
    return Graph::from_edges(n, edges);
  } catch (const InvalidInputError& e) {
    throw IoError(e.what());
  }
}

std::string format_truth(const GroundTruth& truth) {
  std::string out;
  for (std::size_t c = 0; c < truth.communities.size(); ++c) {
    const NodeSet& s = truth.communities[c];
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(s[i]);
    }
    if (truth.has_affinities()) {
      out += " | a=";
      for (std::size_t i = 0; i < truth.affinities[c].size(); ++i) {
        if (i) out += ',';
        out += format_double(truth.affinities[c][i]);
      }
    }
    out += '\n';
  }
  return out;
}

GroundTruth parse_truth(const std::string& text) {
  GroundTruth truth;
  bool any_affinity = false;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    std::optional<std::string_view> aff;
    if (const auto bar = line.find('|'); bar != std::string_view::npos) {
      aff = trim(line.substr(bar + 1));
      line = line.substr(0, bar);
    }
    truth.communities.push_back(parse_id_list(line, line_tag(i)));
    std::vector<double> a;
    if (aff) {
      if (aff->substr(0, 2) != "a=") throw IoError(line_tag(i) + ": expected 'a=' after '|'");
      std::string_view rest = aff->substr(2);
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        a.push_back(to_double(trim(rest.substr(0, comma)), "affinity on " + line_tag(i)));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
      if (a.size() != truth.communities.back().size()) {
        throw IoError(line_tag(i) + ": affinity count does not match member count");
      }
      any_affinity = true;
    }
    truth.affinities.push_back(std::move(a));
  }
  if (!any_affinity) {
    truth.affinities.clear();
  } else {
    for (std::size_t c = 0; c < truth.affinities.size(); ++c) {
      if (truth.affinities[c].size() != truth.communities[c].size()) {
        throw IoError("affinities must be given for every community or none");
      }
    }
  }
  return truth;
}

Config parse_config(const std::string& text) {
  Config cfg;
  ModelParams& mp = cfg.model;
  DetectorParams& dp = cfg.detector;
  AmbientSpec& amb = cfg.ambient;
  using Setter = std::function<void(std::string_view)>;
  const auto size = [](std::string_view v, const char* key) {
    return static_cast<std::size_t>(to_u64(v, std::string("value for ") + key));
  };
  const auto real = [](std::string_view v, const char* key) {
    return to_double(v, std::string("value for ") + key);
  };
  const auto boolean = [](std::string_view v, const char* key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw IoError(std::string("value for ") + key + " must be true or false");
  };
  const std::map<std::string, Setter, std::less<>> setters = {
      {"model", [&](auto v) { mp.model = parse_model_kind(v); }},
      {"n", [&](auto v) { mp.n = size(v, "n"); }},
      {"community_count", [&](auto v) { mp.community_count = size(v, "community_count"); }},
      {"max_attempts", [&](auto v) { mp.max_attempts = size(v, "max_attempts"); }},
      {"k", [&](auto v) { mp.k = dp.k = size(v, "k"); }},
      {"m", [&](auto v) { mp.m = dp.m = size(v, "m"); }},
      {"d", [&](auto v) { mp.d = dp.d = size(v, "d"); }},
      {"delta", [&](auto v) { mp.delta = dp.delta = real(v, "delta"); }},
      {"epsilon", [&](auto v) { mp.epsilon = dp.epsilon = real(v, "epsilon"); }},
      {"gamma", [&](auto v) { mp.gamma = dp.gamma = real(v, "gamma"); }},
      {"alpha", [&](auto v) { mp.alpha = dp.alpha = real(v, "alpha"); }},
      {"alpha_min", [&](auto v) { mp.alpha_min = dp.alpha_min = real(v, "alpha_min"); }},
      {"beta", [&](auto v) { mp.beta = dp.beta = real(v, "beta"); }},
      {"b", [&](auto v) { mp.b = dp.b = real(v, "b"); }},
      {"sample_prob_scale", [&](auto v) { dp.sample_prob_scale = real(v, "sample_prob_scale"); }},
      {"trial_count_scale", [&](auto v) { dp.trial_count_scale = real(v, "trial_count_scale"); }},
      {"robust_p_constant", [&](auto v) { dp.robust_p_constant = real(v, "robust_p_constant"); }},
      {"t_override",
       [&](auto v) {
         if (v == "none") dp.t_override.reset(); else dp.t_override = size(v, "t_override");
       }},
      {"use_maximal_cliques",
       [&](auto v) { dp.use_maximal_cliques = boolean(v, "use_maximal_cliques"); }},
      {"epsilon_prime",
       [&](auto v) {
         if (v == "none") dp.epsilon_prime.reset(); else dp.epsilon_prime = real(v, "epsilon_prime");
       }},
      {"membership_scope", [&](auto v) { dp.membership_scope = parse_membership_scope(v); }},
      {"enumeration_budget",
       [&](auto v) { dp.enumeration_budget = to_u64(v, "value for enumeration_budget"); }},
      {"self_inclusive", [&](auto v) { dp.self_inclusive = boolean(v, "self_inclusive"); }},
      {"strategy", [&](auto v) { amb.strategy = parse_ambient_strategy(v); }},
      {"q", [&](auto v) { amb.q = real(v, "q"); }},
      {"stress_count", [&](auto v) { amb.stress_count = size(v, "stress_count"); }},
      {"stress_target", [&](auto v) { amb.stress_target = size(v, "stress_target"); }},
  };
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw IoError(line_tag(i) + ": expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw IoError(line_tag(i) + ": unknown config key '" + std::string(key) + "'");
    }
    if (std::find(cfg.keys.begin(), cfg.keys.end(), key) != cfg.keys.end()) {
      throw IoError(line_tag(i) + ": duplicate config key '" + std::string(key) + "'");
    }
    try {
      it->second(value);
    } catch (const InvalidParamsError& e) {
      throw IoError(line_tag(i) + ": " + e.what());
    }
    cfg.keys.emplace_back(key);
  }
  return cfg;
}

std::string format_model_params(const ModelParams& p, const AmbientSpec& ambient) {
  std::string out;
  const auto put = [&](const char* key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  put("model", std::string(to_string(p.model)));
  put("n", std::to_string(p.n));
  put("community_count", std::to_string(p.community_count));
  put("k", std::to_string(p.k));
  put("m", std::to_string(p.m));
  put("d", std::to_string(p.d));
  put("delta", format_double(p.delta));
  put("epsilon", format_double(p.epsilon));
  put("gamma", format_double(p.gamma));
  put("alpha", format_double(p.alpha));
  put("alpha_min", format_double(p.alpha_min));
  put("beta", format_double(p.beta));
  put("b", format_double(p.b));
  put("max_attempts", std::to_string(p.max_attempts));
  put("strategy", std::string(to_string(ambient.strategy)));
  put("q", format_double(ambient.q));
  put("stress_count", std::to_string(ambient.stress_count));
  put("stress_target", std::to_string(ambient.stress_target));
  return out;
}

std::string format_sets(const std::vector<NodeSet>& sets) {
  std::string out;
  for (const auto& s : sets) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(s[i]);
    }
    out += '\n';
  }
  return out;
}

Json to_json(const DetectorParams& p) {
  Json j;
  j["k"] = p.k;
  j["m"] = p.m;
  j["d"] = p.d;
  j["delta"] = p.delta;
  j["epsilon"] = p.epsilon;
  j["gamma"] = p.gamma;
  j["alpha"] = p.alpha;
  j["alpha_min"] = p.alpha_min;
  j["beta"] = p.beta;
  j["b"] = p.b;
  j["sample_prob_scale"] = p.sample_prob_scale;
  j["trial_count_scale"] = p.trial_count_scale;
  j["robust_p_constant"] = p.robust_p_constant;
  j["t_override"] = p.t_override ? Json(*p.t_override) : Json(nullptr);
  j["use_maximal_cliques"] = p.use_maximal_cliques;
  j["epsilon_prime"] = p.epsilon_prime ? Json(*p.epsilon_prime) : Json(nullptr);
  j["membership_scope"] = std::string(to_string(p.membership_scope));
  j["enumeration_budget"] = p.enumeration_budget;
  j["self_inclusive"] = p.self_inclusive;
  return j;
}

Json to_json(const DetectionResult& r) {
  Json j;
  j["algorithm"] = std::string(to_string(r.algorithm));
  j["seed"] = r.seed;
  j["params"] = to_json(r.params);
  Json candidates = Json::array();
  Json details = Json::array();
  for (const auto& c : r.candidates) {
    candidates.push_back(set_json(c.members));
    Json d;
    d["starting_node"] = c.starting_node ? Json(*c.starting_node) : Json(nullptr);
    d["seed_set"] = c.seed_set ? set_json(*c.seed_set) : Json(nullptr);
    d["alpha_used"] = c.alpha_used ? Json(*c.alpha_used) : Json(nullptr);
    d["min_density"] = c.min_density ? Json(*c.min_density) : Json(nullptr);
    d["trial_index"] = c.trial_index;
    details.push_back(std::move(d));
  }
  j["candidates"] = std::move(candidates);
  j["stats"] = {{"trials_run", r.stats.trials_run},
                {"trials_skipped", r.stats.trials_skipped},
                {"wall_time_ms", r.wall_time_ms}};
  Json eff = Json::object();
  for (const auto& [key, value] : r.effective) eff[key] = value;
  j["effective"] = std::move(eff);
  j["candidate_details"] = std::move(details);
  return j;
}

Json to_json(const MatchReport& r) {
  Json j;
  Json comms = Json::array();
  for (const auto& c : r.communities) {
    Json e;
    e["best_candidate"] = c.best_candidate ? Json(*c.best_candidate) : Json(nullptr);
    e["jaccard"] = c.jaccard;
    e["exact"] = c.exact;
    e["relaxed"] = c.relaxed ? Json(*c.relaxed) : Json(nullptr);
    comms.push_back(std::move(e));
  }
  j["communities"] = std::move(comms);
  j["found_count"] = r.found_count;
  j["jaccard_threshold"] = r.jaccard_threshold;
  j["exact_recovery_rate"] = r.exact_recovery_rate;
  j["mean_best_jaccard"] = r.mean_best_jaccard;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["empty_found"] = r.empty_found;
  return j;
}

Json to_json(const AssumptionReport& r) {
  Json j;
  j["all_passed"] = r.all_passed();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["applicable"] = c.applicable;
    e["passed"] = c.passed;
    e["worst_margin"] = c.worst_margin;
    Json w = Json::array();
    for (const auto& x : c.witnesses) w.push_back(witness_json(x));
    e["witnesses"] = std::move(w);
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

Json to_json(const RecoveryTable& t) {
  Json j;
  j["algorithm"] = std::string(to_string(t.algorithm));
  j["base_seed"] = t.base_seed;
  j["trials"] = t.trials;
  Json comms = Json::array();
  for (const auto& c : t.communities) {
    comms.push_back({{"exact", c.exact},
                     {"relaxed", c.relaxed},
                     {"exact_rate", c.exact_rate},
                     {"relaxed_rate", c.relaxed_rate},
                     {"exact_ci", {c.exact_ci.lo, c.exact_ci.hi}},
                     {"relaxed_ci", {c.relaxed_ci.lo, c.relaxed_ci.hi}}});
  }
  j["communities"] = std::move(comms);
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"seed", r.seed},
                    {"candidates", r.candidate_count},
                    {"exact", r.exact},
                    {"relaxed", r.relaxed}});
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string render_table(const RecoveryTable& t) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "algorithm %s, %zu trials from seed %llu\n",
                std::string(to_string(t.algorithm)).c_str(), t.trials,
                static_cast<unsigned long long>(t.base_seed));
  out += buf;
  std::snprintf(buf, sizeof buf, "%-10s %6s %8s %-17s %8s %-17s\n", "community", "exact", "rate",
                "95% interval", "relaxed", "95% interval");
  out += buf;
  for (std::size_t c = 0; c < t.communities.size(); ++c) {
    const auto& r = t.communities[c];
    std::snprintf(buf, sizeof buf, "%-10zu %6zu %8.3f [%6.3f, %6.3f] %8.3f [%6.3f, %6.3f]\n", c,
                  r.exact, r.exact_rate, r.exact_ci.lo, r.exact_ci.hi, r.relaxed_rate,
                  r.relaxed_ci.lo, r.relaxed_ci.hi);
    out += buf;
  }
  out += "\ntrial rows (seed, candidates, exact flags, relaxed flags)\n";
  for (const auto& r : t.rows) {
    std::string ex, rx;
    for (bool b : r.exact) ex += b ? '1' : '0';
    for (bool b : r.relaxed) rx += b ? '1' : '0';
    std::snprintf(buf, sizeof buf, "%20llu %10zu  %s  %s\n",
                  static_cast<unsigned long long>(r.seed), r.candidate_count, ex.c_str(),
                  rx.c_str());
    out += buf;
  }
  return out;
}

std::vector<NodeSet> parse_found(const std::string& text) {
  const std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const std::exception& e) {
      throw IoError(std::string("bad result JSON: ") + e.what());
    }
    if (!j.contains("candidates") || !j["candidates"].is_array()) {
      throw IoError("result JSON has no 'candidates' array");
    }
    std::vector<NodeSet> out;
    for (const auto& c : j["candidates"]) {
      try {
        out.push_back(NodeSet::from_unsorted(c.get<std::vector<NodeId>>()));
      } catch (const std::exception& e) {
        throw IoError(std::string("bad candidate in result JSON: ") + e.what());
      }
    }
    return out;
  }
  return parse_truth(text).communities;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("error writing '" + path + "'");
}

}  // namespace commfind::io
