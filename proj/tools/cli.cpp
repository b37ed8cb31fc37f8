#include "cli.hpp"

#include <ostream>

#include <CLI11.hpp>

#include "commfind/detector.hpp"
#include "commfind/errors.hpp"
#include "commfind/evaluation.hpp"
#include "commfind/generator.hpp"
#include "commfind/oracle.hpp"
#include "commfind/validator.hpp"
#include "io.hpp"

namespace commfind::cli {

namespace {

struct GenerateArgs {
  std::string model, config, out_graph, out_truth, ambient;
  std::uint64_t seed = 0;
};

struct DetectArgs {
  std::string algo, graph, config, out;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

struct ValidateArgs {
  std::string graph, truth, config, model, out;
};

struct EvaluateArgs {
  std::string found, truth, graph, out;
  double epsilon = 0.5;
  double threshold = kDefaultJaccardThreshold;
};

struct OracleArgs {
  std::string graph, mode;
  double alpha = 1.0, alpha_out = 0.5;
  std::size_t min_size = 1;
};

struct BenchArgs {
  std::string spec, algo, ambient, out;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  bool regenerate = false;
};

void write_or_print(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    io::write_file(path, content);
  }
}

std::string dump(const io::Json& j) { return j.dump(2) + "\n"; }

void cmd_generate(const GenerateArgs& a, std::ostream& out) {
  io::Config cfg = io::parse_config(io::read_file(a.config));
  cfg.model.model = parse_model_kind(a.model);
  if (!a.ambient.empty()) cfg.ambient.strategy = parse_ambient_strategy(a.ambient);
  const GeneratedInstance inst = generate(cfg.model, cfg.ambient, a.seed);
  io::write_file(a.out_graph, io::format_graph(inst.graph));
  io::write_file(a.out_truth, io::format_truth(inst.truth));
  out << "# resolved parameters, seed " << a.seed << "\n"
      << io::format_model_params(inst.params, inst.ambient);
}

void cmd_detect(const DetectArgs& a) {
  const Algorithm algorithm = parse_algorithm(a.algo);
  const io::Config cfg = io::parse_config(io::read_file(a.config));
  const Graph g = io::parse_graph(io::read_file(a.graph));
  const DetectionResult r = detect(algorithm, g, cfg.detector, a.seed, RunOptions{a.threads});
  io::write_file(a.out, dump(io::to_json(r)));
}

void cmd_validate(const ValidateArgs& a, std::ostream& out) {
  io::Config cfg = io::parse_config(io::read_file(a.config));
  if (!a.model.empty()) cfg.model.model = parse_model_kind(a.model);
  const Graph g = io::parse_graph(io::read_file(a.graph));
  const GroundTruth truth = io::parse_truth(io::read_file(a.truth));
  if (cfg.model.n == 0) cfg.model.n = g.node_count();
  const AssumptionReport report = validate_instance(g, truth, cfg.model);
  write_or_print(a.out, dump(io::to_json(report)), out);
}

void cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const auto found = io::parse_found(io::read_file(a.found));
  const auto truth = io::parse_truth(io::read_file(a.truth)).communities;
  std::optional<Graph> g;
  if (!a.graph.empty()) g = io::parse_graph(io::read_file(a.graph));
  const MatchReport report =
      match_communities(found, truth, a.threshold, g ? &*g : nullptr, a.epsilon);
  write_or_print(a.out, dump(io::to_json(report)), out);
}

void cmd_oracle(const OracleArgs& a, std::ostream& out) {
  const Graph g = io::parse_graph(io::read_file(a.graph));
  if (a.mode == "cliques") {
    out << io::format_sets(enumerate_maximal_cliques(g, a.min_size));
  } else if (a.mode == "alpha-sets") {
    out << io::format_sets(enumerate_alpha_epsilon_sets(g, a.alpha, a.alpha_out, a.min_size));
  } else {
    const PathCounts counts = count_length2_paths_matrix(g);
    for (NodeId u = 0; u < counts.node_count(); ++u) {
      for (NodeId v = u + 1; v < counts.node_count(); ++v) {
        if (counts.at(u, v)) out << u << ' ' << v << ' ' << counts.at(u, v) << '\n';
      }
    }
  }
}

void cmd_bench(const BenchArgs& a, std::ostream& out) {
  const io::Config cfg = io::parse_config(io::read_file(a.spec));
  RecoverySpec spec;
  spec.model = cfg.model;
  spec.ambient = cfg.ambient;
  if (!a.ambient.empty()) spec.ambient.strategy = parse_ambient_strategy(a.ambient);
  if (!a.regenerate) spec.instance_seed = a.seed;
  spec.detector = cfg.detector;
  spec.algorithm = parse_algorithm(a.algo);
  const RecoveryTable table = recovery_rate(spec, a.trials, a.seed, RunOptions{a.threads});
  if (!a.out.empty()) io::write_file(a.out, dump(io::to_json(table)));
  out << io::render_table(table);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planted overlapping communities: generate, detect, validate, evaluate"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Plant communities and write graph + truth");
  const std::vector<std::string> models{"clique",         "dense",         "affinity",
                                        "anysize-clique", "anysize-dense", "sparse"};
  const std::vector<std::string> ambients{"none", "uniform", "gap-stress"};
  const std::vector<std::string> algorithms{"clique",        "dense",          "robust",
                                            "anysize-dense", "anysize-clique", "gap-clique",
                                            "gap-dense",     "sparse"};
  generate_cmd->add_option("--model", gen.model)->required()->check(CLI::IsMember(models));
  generate_cmd->add_option("--config", gen.config)->required();
  generate_cmd->add_option("--seed", gen.seed)->required();
  generate_cmd->add_option("--out-graph", gen.out_graph)->required();
  generate_cmd->add_option("--out-truth", gen.out_truth)->required();
  generate_cmd->add_option("--ambient", gen.ambient)->check(CLI::IsMember(ambients));

  DetectArgs det;
  auto* detect_cmd = app.add_subcommand("detect", "Run a detection algorithm");
  detect_cmd->add_option("--algo", det.algo)->required()->check(CLI::IsMember(algorithms));
  detect_cmd->add_option("--graph", det.graph)->required();
  detect_cmd->add_option("--config", det.config)->required();
  detect_cmd->add_option("--seed", det.seed)->required();
  detect_cmd->add_option("--out", det.out)->required();
  detect_cmd->add_option("--threads", det.threads)->check(CLI::PositiveNumber);

  ValidateArgs val;
  auto* validate_cmd = app.add_subcommand("validate", "Check an instance against the model assumptions");
  validate_cmd->add_option("--graph", val.graph)->required();
  validate_cmd->add_option("--truth", val.truth)->required();
  validate_cmd->add_option("--config", val.config)->required();
  validate_cmd->add_option("--model", val.model, "overrides the config's model")
      ->check(CLI::IsMember(models));
  validate_cmd->add_option("--out", val.out, "report path (default: standard output)");

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score found communities against truth");
  evaluate_cmd->add_option("--found", ev.found, "result JSON or community file")->required();
  evaluate_cmd->add_option("--truth", ev.truth)->required();
  evaluate_cmd->add_option("--graph", ev.graph, "enables the relaxed-match flags");
  evaluate_cmd->add_option("--epsilon", ev.epsilon);
  evaluate_cmd->add_option("--threshold", ev.threshold, "Jaccard threshold for precision/recall");
  evaluate_cmd->add_option("--out", ev.out, "report path (default: standard output)");

  OracleArgs orc;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference answers for small graphs");
  oracle_cmd->add_option("--graph", orc.graph)->required();
  oracle_cmd->add_option("--mode", orc.mode)
      ->required()
      ->check(CLI::IsMember({"cliques", "alpha-sets", "paths2"}));
  oracle_cmd->add_option("--alpha", orc.alpha);
  oracle_cmd->add_option("--alpha-out", orc.alpha_out);
  oracle_cmd->add_option("--min-size", orc.min_size);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Recovery rates over seeded trials");
  bench_cmd->add_option("--spec", bench.spec, "config with model and detector keys")->required();
  bench_cmd->add_option("--algo", bench.algo)->required()->check(CLI::IsMember(algorithms));
  bench_cmd->add_option("--trials", bench.trials)->required();
  bench_cmd->add_option("--seed", bench.seed)->required();
  bench_cmd->add_option("--threads", bench.threads)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--ambient", bench.ambient)->check(CLI::IsMember(ambients));
  bench_cmd->add_flag("--regenerate", bench.regenerate,
                      "draw a fresh instance per trial instead of one from --seed");
  bench_cmd->add_option("--out", bench.out, "JSON table path");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*generate_cmd) cmd_generate(gen, out);
    if (*detect_cmd) cmd_detect(det);
    if (*validate_cmd) cmd_validate(val, out);
    if (*evaluate_cmd) cmd_evaluate(ev, out);
    if (*oracle_cmd) cmd_oracle(orc, out);
    if (*bench_cmd) cmd_bench(bench, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const InvalidParamsError& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kInvalidParams;
  } catch (const InvalidInputError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidParams;
  } catch (const BudgetExceededError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const GenerationInfeasibleError& e) {
    err << "generation infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace commfind::cli
