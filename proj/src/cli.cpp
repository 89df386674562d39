#include "bayesball/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bayesball/bayes_ball.hpp"
#include "bayesball/decision.hpp"
#include "bayesball/document.hpp"
#include "bayesball/dot.hpp"
#include "bayesball/generator.hpp"
#include "bayesball/oracle.hpp"

namespace bayesball {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

NodeSet split_ids(const std::string& spec) {
  NodeSet out;
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) {
    std::size_t begin = token.find_first_not_of(' ');
    if (begin == std::string::npos) continue;
    std::size_t end = token.find_last_not_of(' ');
    out.insert(token.substr(begin, end - begin + 1));
  }
  return out;
}

json to_json(const NodeSet& set) {
  json out = json::array();
  for (const auto& id : set) out.push_back(id);
  return out;
}

std::string join(const NodeSet& set) {
  std::string out;
  for (const auto& id : set) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out.empty() ? "-" : out;
}

std::string diff_sets(const std::string& name, const NodeSet& fast,
                      const NodeSet& reference) {
  if (fast == reference) return "";
  std::string out = "  " + name + " differs\n";
  out += "    engine: {" + join(fast) + "}\n";
  out += "    oracle: {" + join(reference) + "}\n";
  return out;
}

struct LoadedModel {
  ParsedModel model;
  const Network& net() const {
    if (std::holds_alternative<Network>(model))
      return std::get<Network>(model);
    return std::get<InfluenceDiagram>(model).net();
  }
  bool is_diagram() const {
    return std::holds_alternative<InfluenceDiagram>(model);
  }
  const InfluenceDiagram& diagram() const {
    return std::get<InfluenceDiagram>(model);
  }
};

LoadedModel load(const std::string& path) {
  return LoadedModel{load_model_from_text(read_file(path))};
}

int run_query(const std::string& path, const std::string& targets_spec,
              const std::string& given_spec, bool given_set, bool use_oracle,
              bool trace, const std::string& dot_path, std::ostream& out,
              std::ostream& err) {
  LoadedModel loaded = load(path);
  const Network& net = loaded.net();

  Query query;
  query.targets = split_ids(targets_spec);
  if (given_set)
    query.observed = split_ids(given_spec);
  else if (loaded.is_diagram())
    query.observed = loaded.diagram().evidence();

  RunOptions options;
  options.ignore_informational = loaded.is_diagram();
  if (trace)
    options.trace = [&out](const VisitEvent& event) {
      out << format_trace_line(event) << "\n";
    };

  MarkState marks = run(net, query, options);
  RequisiteResult result = requisites(net, query, marks);

  json output;
  output["irrelevant"] = to_json(result.irrelevant);
  output["requisite_probability"] = to_json(result.requisite_probability);
  output["requisite_observations"] = to_json(result.requisite_observations);
  output["counters"] = {
      {"visits_executed", marks.counters().visits_executed},
      {"arc_traversals", marks.counters().arc_traversals},
  };
  out << output.dump(2) << "\n";

  if (!dot_path.empty()) write_file(dot_path, export_dot(net, &marks));

  if (use_oracle) {
    NodeSet oracle_visited = oracle::visited(net, query.targets, query.observed);
    NodeSet oracle_observations;
    for (const auto& id : query.observed)
      if (oracle_visited.count(id)) oracle_observations.insert(id);
    std::string diff;
    diff += diff_sets("irrelevant", result.irrelevant,
                      oracle::irrelevant(net, query.targets, query.observed));
    diff += diff_sets(
        "requisite_probability", result.requisite_probability,
        oracle::requisite_probability(net, query.targets, query.observed));
    diff += diff_sets("requisite_observations", result.requisite_observations,
                      oracle_observations);
    if (!diff.empty()) {
      err << "oracle disagreement:\n" << diff;
      return kExitInvalidInput;
    }
    err << "oracle check: ok\n";
  }
  return kExitOk;
}

int run_dsep(const std::string& path, const std::string& targets_spec,
             const std::string& tested_spec, const std::string& given_spec,
             std::ostream& out) {
  LoadedModel loaded = load(path);
  bool separated = is_irrelevant(loaded.net(), split_ids(targets_spec),
                                 split_ids(tested_spec), split_ids(given_spec));
  out << (separated ? "d-separated" : "connected") << "\n";
  return separated ? kExitOk : kExitConnected;
}

void print_stage_table(const DecisionRequisites& result, std::ostream& out) {
  out << std::left << std::setw(6) << "stage" << std::setw(14) << "decision"
      << std::setw(44) << "requisite_observations"
      << "requisite_probability\n";
  for (const auto& stage : result.stages) {
    std::string decision = stage.stage == 0 ? "(now)" : stage.decision;
    if (stage.decision_irrelevant) decision += " [irrelevant]";
    out << std::left << std::setw(6) << stage.stage << std::setw(14) << decision
        << std::setw(44) << join(stage.requisite_observations)
        << join(stage.requisite_probability) << "\n";
  }
}

int run_decision(const std::string& path, bool use_oracle, std::ostream& out,
                 std::ostream& err) {
  LoadedModel loaded = load(path);
  if (!loaded.is_diagram())
    throw SchemaError("file does not describe an influence diagram "
                      "(missing decision_order)");
  const InfluenceDiagram& diagram = loaded.diagram();
  std::size_t m = diagram.decision_count();
  if (m == 0) {
    out << "no decisions: evaluate with a plain query against the evidence\n";
    return kExitOk;
  }

  bool any_value = false;
  for (const auto& id : diagram.net().node_ids())
    if (diagram.net().kind(id) == NodeKind::Value) any_value = true;
  if (any_value && relevant_values(diagram, m).empty())
    err << "warning: last decision '" << diagram.decision_order().back()
        << "' has no value descendants; it cannot matter\n";

  DecisionRequisites result = decision_requisites(diagram);
  print_stage_table(result, out);

  if (use_oracle) {
    DecisionRequisites reference = oracle::decision_restart(diagram);
    std::string diff;
    for (std::size_t i = 0; i < result.stages.size(); ++i) {
      const auto& a = result.stages[i];
      const auto& b = reference.stages[i];
      std::string tag = "stage " + std::to_string(a.stage) + " ";
      diff += diff_sets(tag + "requisite_observations",
                        a.requisite_observations, b.requisite_observations);
      diff += diff_sets(tag + "requisite_probability", a.requisite_probability,
                        b.requisite_probability);
      if (a.decision_irrelevant != b.decision_irrelevant)
        diff += "  " + tag + "irrelevant flag differs\n";
    }
    if (!diff.empty()) {
      err << "oracle disagreement:\n" << diff;
      return kExitInvalidInput;
    }
    err << "oracle check: ok\n";
  }
  return kExitOk;
}

int run_gen(const GenParams& params, std::size_t decisions, double value_frac,
            const std::string& out_path, std::ostream& out) {
  NetworkDocument doc;
  if (decisions > 0) {
    DiagramGenParams diagram_params;
    diagram_params.base = params;
    diagram_params.decision_count = decisions;
    diagram_params.value_fraction = value_frac;
    doc = to_document(random_influence_diagram(diagram_params));
  } else {
    doc = to_document(random_network(params));
  }
  std::string text = serialize_document(doc);
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
  return kExitOk;
}

int run_dot(const std::string& path, const std::string& targets_spec,
            const std::string& given_spec, bool query_set,
            const std::string& out_path, std::ostream& out) {
  LoadedModel loaded = load(path);
  const Network& net = loaded.net();
  std::string text;
  if (query_set) {
    Query query{split_ids(targets_spec), split_ids(given_spec)};
    RunOptions options;
    options.ignore_informational = loaded.is_diagram();
    MarkState marks = run(net, query, options);
    text = export_dot(net, &marks);
  } else {
    text = export_dot(net);
  }
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
  return kExitOk;
}

int run_bench(std::size_t length, std::ostream& out) {
  if (length < 2) throw std::invalid_argument("chain length must be >= 2");
  Network net = chain_network(length);
  NodeId first = "c1";
  NodeId middle = "c" + std::to_string((length + 1) / 2);

  MarkState blocked = run(net, Query{{first}, {middle}});
  MarkState full = run(net, Query{{first}, {}});
  out << "chain n=" << length << " arcs=" << net.arc_count() << "\n";
  out << "blocked at " << middle
      << ": visits=" << blocked.counters().visits_executed
      << " arc_traversals=" << blocked.counters().arc_traversals << "\n";
  out << "unblocked: visits=" << full.counters().visits_executed
      << " arc_traversals=" << full.counters().arc_traversals << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"structural relevance queries over directed graphical models"};
  app.name("bayesball");
  app.require_subcommand(1);

  std::string file;
  std::string targets_spec;
  std::string tested_spec;
  std::string given_spec;
  std::string dot_path;
  std::string out_path;
  bool use_oracle = false;
  bool trace = false;

  auto* query_cmd =
      app.add_subcommand("query", "requisite sets for targets given evidence");
  query_cmd->add_option("file", file, "network document")->required();
  query_cmd->add_option("--targets", targets_spec, "comma separated node ids");
  auto* query_given =
      query_cmd->add_option("--given", given_spec, "comma separated node ids");
  query_cmd->add_flag("--oracle", use_oracle,
                      "cross-check against the brute-force oracle");
  query_cmd->add_flag("--trace", trace, "print one line per visit");
  query_cmd->add_option("--dot", dot_path, "write marked-up graphviz here");

  auto* dsep_cmd =
      app.add_subcommand("dsep", "test whether node sets are d-separated");
  dsep_cmd->add_option("file", file, "network document")->required();
  dsep_cmd->add_option("--targets", targets_spec, "first node set")->required();
  dsep_cmd->add_option("--tested", tested_spec, "second node set")->required();
  dsep_cmd->add_option("--given", given_spec, "separating node set");

  auto* decision_cmd = app.add_subcommand(
      "decision", "stage-by-stage requisite sets of an influence diagram");
  decision_cmd->add_option("file", file, "influence diagram document")
      ->required();
  decision_cmd->add_flag("--oracle", use_oracle,
                         "cross-check against per-stage restarts");

  GenParams gen_params;
  std::size_t gen_decisions = 0;
  double gen_value_frac = 0.5;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random seeded model");
  gen_cmd->add_option("--nodes", gen_params.node_count, "node count")
      ->required();
  gen_cmd->add_option("--arc-prob", gen_params.arc_probability,
                      "arc probability per forward pair");
  gen_cmd->add_option("--det-frac", gen_params.deterministic_fraction,
                      "deterministic node fraction");
  gen_cmd->add_option("--obs-frac", gen_params.observed_fraction,
                      "observed fraction (diagram evidence)");
  gen_cmd->add_option("--seed", gen_params.seed, "generator seed");
  gen_cmd->add_option("--decisions", gen_decisions,
                      "decision count; > 0 emits an influence diagram");
  gen_cmd->add_option("--value-frac", gen_value_frac,
                      "chance of turning an eligible sink into a value node");
  gen_cmd->add_option("-o,--out", out_path, "write the document here");

  auto* dot_cmd = app.add_subcommand("dot", "graphviz export");
  dot_cmd->add_option("file", file, "network document")->required();
  auto* dot_targets = dot_cmd->add_option("--targets", targets_spec,
                                          "mark up this query's traversal");
  dot_cmd->add_option("--given", given_spec, "observed nodes of the query");
  dot_cmd->add_option("-o,--out", out_path, "write the graph here");

  std::size_t bench_chain = 0;
  auto* bench_cmd = app.add_subcommand("bench", "traversal cost on chains");
  bench_cmd->add_option("--chain", bench_chain, "chain length")->required();

  std::vector<const char*> argv;
  argv.push_back("bayesball");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& help) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& error) {
    err << error.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    if (query_cmd->parsed())
      return run_query(file, targets_spec, given_spec, query_given->count() > 0,
                       use_oracle, trace, dot_path, out, err);
    if (dsep_cmd->parsed())
      return run_dsep(file, targets_spec, tested_spec, given_spec, out);
    if (decision_cmd->parsed())
      return run_decision(file, use_oracle, out, err);
    if (gen_cmd->parsed())
      return run_gen(gen_params, gen_decisions, gen_value_frac, out_path, out);
    if (dot_cmd->parsed())
      return run_dot(file, targets_spec, given_spec, dot_targets->count() > 0,
                     out_path, out);
    if (bench_cmd->parsed()) return run_bench(bench_chain, out);
  } catch (const UnknownNodeError& error) {
    err << "error: " << error.what() << "\n";
    return kExitUnknownNode;
  } catch (const SizeLimitError& error) {
    err << "error: " << error.what() << "\n";
    return kExitSizeGuard;
  } catch (const std::exception& error) {
    err << "error: " << error.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace bayesball
