// capd: knowledge-graph policy engine and IoBT testbed CLI.
//
// Subcommands:
//   run       execute a scenario (bundled name or JSON file), emit the event log
//   query     run a SPARQL-subset query against a Turtle knowledge graph
//   validate  check a knowledge graph against the SHACL-lite shapes
//   explain   print the proof tree for a triple after rule inference
//   seed      write a seeded fixture knowledge graph for experimentation
//
// Exit codes: 0 ok, 1 validation violations, 2 scenario errors,
// 3 parse errors, 4 not found / not derivable.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "capd/ontology/shapes.hpp"
#include "capd/rdf/turtle.hpp"
#include "capd/reasoner/kb.hpp"
#include "capd/sim/runner.hpp"
#include "capd/sparql/parser.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitScenario = 2;
constexpr int kExitParse = 3;
constexpr int kExitNotFound = 4;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_run(const std::string& scenario_arg, const std::string& format,
            const std::string& out_path, std::optional<std::uint64_t> seed,
            std::optional<long long> ticks) {
  std::string text;
  if (const char* bundled = capd::sim::bundled_scenario(scenario_arg)) {
    text = bundled;
  } else if (auto file = read_file(scenario_arg)) {
    text = *file;
  } else {
    std::cerr << "error: no bundled scenario or readable file named '" << scenario_arg
              << "'\n";
    return kExitScenario;
  }

  capd::sim::Scenario scenario;
  try {
    scenario = capd::sim::scenario_from_json(text);
  } catch (const std::exception& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitScenario;
  }
  if (seed)
    scenario.seed = *seed;
  else if (const char* env = std::getenv("CAPD_SEED"))
    scenario.seed = std::strtoull(env, nullptr, 10);
  if (ticks)
    scenario.duration_ticks = *ticks;

  capd::sim::EventLog log;
  try {
    log = capd::sim::run_scenario(scenario);
  } catch (const std::exception& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kExitScenario;
  }

  std::string rendered = format == "jsonl" ? log.to_jsonl() : log.to_text();
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitScenario;
    }
    out << rendered;
  }
  return kExitOk;
}

int cmd_query(const std::string& kg_path, const std::string& query_path,
              const std::string& format) {
  auto kg_text = read_file(kg_path);
  if (!kg_text) {
    std::cerr << "error: cannot read '" << kg_path << "'\n";
    return kExitNotFound;
  }
  auto query_text = read_file(query_path);
  if (!query_text) {
    std::cerr << "error: cannot read '" << query_path << "'\n";
    return kExitNotFound;
  }
  try {
    capd::rdf::Graph g = capd::rdf::parse_turtle(*kg_text);
    capd::sparql::SelectQuery q = capd::sparql::parse_query(*query_text);
    auto rows = capd::sparql::evaluate(q, g);

    std::vector<std::string> columns;
    for (const auto& item : q.projection)
      columns.push_back(item.output_name);

    auto cell = [](const capd::rdf::Term& t) {
      return t.is_literal() ? t.value() : (t.is_blank() ? "_:" + t.value() : t.value());
    };

    if (format == "jsonl") {
      for (const auto& row : rows) {
        nlohmann::json record;
        for (const auto& col : columns) {
          auto it = row.find(col);
          record[col] = it == row.end() ? "" : cell(it->second);
        }
        std::cout << record.dump() << "\n";
      }
      return kExitOk;
    }

    std::vector<std::size_t> widths;
    for (const auto& col : columns)
      widths.push_back(col.size());
    std::vector<std::vector<std::string>> table;
    for (const auto& row : rows) {
      std::vector<std::string> line;
      for (std::size_t i = 0; i < columns.size(); ++i) {
        auto it = row.find(columns[i]);
        line.push_back(it == row.end() ? "" : cell(it->second));
        widths[i] = std::max(widths[i], line.back().size());
      }
      table.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
      for (std::size_t i = 0; i < line.size(); ++i)
        std::cout << (i ? "  " : "") << line[i]
                  << std::string(widths[i] - line[i].size(), ' ');
      std::cout << "\n";
    };
    emit(columns);
    for (const auto& line : table)
      emit(line);
    std::cerr << rows.size() << " row(s)\n";
    return kExitOk;
  } catch (const capd::rdf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
}

int cmd_validate(const std::string& kg_path, const std::string& shapes_path) {
  auto kg_text = read_file(kg_path);
  if (!kg_text) {
    std::cerr << "error: cannot read '" << kg_path << "'\n";
    return kExitNotFound;
  }
  try {
    capd::rdf::Graph g = capd::rdf::parse_turtle(*kg_text);
    auto schema = capd::ontology::builtin_schema();
    std::vector<capd::ontology::Shape> shapes;
    if (shapes_path.empty()) {
      shapes = capd::ontology::default_shapes();
    } else {
      auto shapes_text = read_file(shapes_path);
      if (!shapes_text) {
        std::cerr << "error: cannot read '" << shapes_path << "'\n";
        return kExitNotFound;
      }
      shapes = capd::ontology::shapes_from_json(*shapes_text);
    }
    auto violations = capd::ontology::validate(g, schema, shapes);
    for (const auto& violation : violations)
      std::cout << violation.shape << " " << violation.constraint << ": " << violation.message
                << "\n";
    if (violations.empty()) {
      std::cerr << "conformant\n";
      return kExitOk;
    }
    std::cerr << violations.size() << " violation(s)\n";
    return kExitViolations;
  } catch (const capd::rdf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}

int cmd_explain(const std::string& kg_path, const std::string& triple_spec,
                const std::string& rules_path) {
  auto kg_text = read_file(kg_path);
  if (!kg_text) {
    std::cerr << "error: cannot read '" << kg_path << "'\n";
    return kExitNotFound;
  }
  try {
    capd::rdf::Graph g = capd::rdf::parse_turtle(*kg_text);

    // The triple spec reuses the Turtle grammar with the graph's prefixes.
    capd::rdf::Graph spec_graph = capd::rdf::parse_turtle(triple_spec + " .", g.prefixes());
    if (spec_graph.size() != 1) {
      std::cerr << "error: triple spec must contain exactly one statement\n";
      return kExitParse;
    }
    capd::rdf::Triple goal = *spec_graph.triples().begin();

    capd::reasoner::KnowledgeBase kb;
    if (!rules_path.empty()) {
      auto rules_text = read_file(rules_path);
      if (!rules_text) {
        std::cerr << "error: cannot read '" << rules_path << "'\n";
        return kExitNotFound;
      }
      for (auto& rule : capd::reasoner::parse_rules(*rules_text, g.prefixes()))
        kb.add_rule(std::move(rule));
    }
    for (const auto& [prefix, ns] : g.prefixes())
      kb.add_prefix(prefix, ns);
    for (const auto& t : g.triples())
      kb.assert_fact(t);
    kb.forward_chain();

    auto proof = kb.explain(goal);
    std::cout << capd::reasoner::format_proof(proof, kb.prefixes());
    return kExitOk;
  } catch (const capd::reasoner::NotInKb& e) {
    std::cerr << "not derivable: " << e.what() << "\n";
    return kExitNotFound;
  } catch (const capd::rdf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}

int cmd_schema(const std::string& out_path) {
  std::string turtle = capd::rdf::serialize_turtle(capd::ontology::builtin_schema().graph());
  if (out_path.empty() || out_path == "-") {
    std::cout << turtle;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return kExitNotFound;
  }
  out << turtle;
  return kExitOk;
}

int cmd_seed(const std::string& out_path, const std::string& observations,
             const std::string& asset) {
  capd::policy::PolicyEngine engine;
  engine.seed_mitigation_fixture();
  if (!observations.empty()) {
    std::istringstream in(observations);
    std::string tok;
    long long tick = 1;
    while (std::getline(in, tok, ',')) {
      capd::policy::ObservationRecord rec;
      rec.asset_id = asset;
      rec.tick = tick++;
      rec.metric = capd::policy::Metric::BandwidthMbps;
      rec.value = std::strtod(tok.c_str(), nullptr);
      engine.ingest(rec);
    }
  }
  // The snapshot includes rule-derived types, so the written file validates
  // and explains standalone.
  std::string turtle = capd::rdf::serialize_turtle(engine.kb().snapshot());
  if (out_path.empty() || out_path == "-") {
    std::cout << turtle;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitNotFound;
    }
    out << turtle;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capd: context-aware policy engine over an RDF knowledge graph, "
               "with a deterministic sensor-network testbed"};
  app.require_subcommand(1);

  std::string scenario_arg, format = "text", out_path;
  std::optional<std::uint64_t> seed;
  std::optional<long long> ticks;
  auto* run = app.add_subcommand("run", "run a scenario and emit its event log");
  run->add_option("scenario", scenario_arg,
                  "bundled scenario name (usecase1_bandwidth, usecase2_jam, usecase3_blind, "
                  "usecase4_kinetic) or scenario JSON path")
      ->required();
  run->add_option("--format", format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
  run->add_option("--out", out_path, "write the log to a file instead of stdout");
  run->add_option("--seed", seed, "override the scenario seed (also: CAPD_SEED)");
  run->add_option("--ticks", ticks, "override duration_ticks");

  std::string kg_path, query_path;
  auto* query = app.add_subcommand("query", "evaluate a SPARQL-subset query over a Turtle KG");
  query->add_option("kg", kg_path, "knowledge graph (.ttl)")->required();
  query->add_option("query", query_path, "query file (.rq)")->required();
  query->add_option("--format", format, "text or jsonl")
      ->check(CLI::IsMember({"text", "jsonl"}));

  std::string shapes_path;
  auto* validate = app.add_subcommand("validate", "check a Turtle KG against shapes");
  validate->add_option("kg", kg_path, "knowledge graph (.ttl)")->required();
  validate->add_option("--shapes", shapes_path, "shapes JSON (default: built-in shapes)");

  std::string triple_spec;
  auto* explain = app.add_subcommand("explain", "print the proof tree for a triple");
  explain->add_option("kg", kg_path, "knowledge graph (.ttl)")->required();
  explain->add_option("triple", triple_spec, "triple spec, e.g. 'bf:drone1 a bf:Asset'")
      ->required();

  std::string observations, seed_asset = "Asset_A";
  auto* seed_cmd = app.add_subcommand("seed", "write a fixture KG (stages + chains)");
  seed_cmd->add_option("--out", out_path, "output path (default stdout)");
  seed_cmd->add_option("--observations", observations,
                       "comma-separated bandwidth values ingested at ticks 1..n");
  seed_cmd->add_option("--asset", seed_asset, "asset id for the observations");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return cmd_run(scenario_arg, format, out_path, seed, ticks);
  if (query->parsed())
    return cmd_query(kg_path, query_path, format);
  if (validate->parsed())
    return cmd_validate(kg_path, shapes_path);
  if (explain->parsed())
    return cmd_explain(kg_path, triple_spec);
  if (seed_cmd->parsed())
    return cmd_seed(out_path, observations, seed_asset);
  return kExitOk;
}
