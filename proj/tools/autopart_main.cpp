// SPDX-License-Identifier: Apache-2.0
//
// autopart — models automotive hardware/software architectures as attributed
// graphs and solves the software-to-ECU deployment problem.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "autopart/evaluation.hpp"
#include "autopart/hwsynth.hpp"
#include "autopart/json_io.hpp"
#include "autopart/model.hpp"
#include "autopart/routing.hpp"
#include "autopart/solvers.hpp"

namespace {

using autopart::Error;
using autopart::ErrorKind;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, path, "cannot read '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::IoError, path, "cannot write '" + path + "'");
  }
  out << content;
}

void emit(bool json_mode, const json& doc) {
  if (json_mode) std::cout << doc.dump(2) << "\n";
}

autopart::ScoreWeights parse_weights(const std::string& spec) {
  autopart::ScoreWeights weights;
  double* slots[4] = {&weights.w_mem, &weights.w_cpu, &weights.w_bw, &weights.w_lat};
  std::istringstream in(spec);
  std::string part;
  int i = 0;
  while (std::getline(in, part, ',')) {
    if (i >= 4) break;
    try {
      size_t used = 0;
      *slots[i] = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorKind::SchemaError, "--weights",
                  "--weights expects four comma-separated numbers");
    }
    ++i;
  }
  if (i != 4 || in.peek() != EOF) {
    throw Error(ErrorKind::SchemaError, "--weights",
                "--weights expects four comma-separated numbers (w_mem,w_cpu,w_bw,w_lat)");
  }
  autopart::validate_weights(weights);
  return weights;
}

struct ValidateArgs {
  std::string hw_path;
  std::string sw_path;
};

int run_validate(const ValidateArgs& args, bool json_mode) {
  json reports = json::array();
  bool all_valid = true;
  auto check = [&](const std::string& path, const char* role, auto parser) {
    json report{{"path", path}, {"role", role}, {"valid", true}, {"error", nullptr}};
    try {
      parser(read_file(path));
      if (!json_mode) std::cout << role << " model " << path << ": OK\n";
    } catch (const Error& e) {
      all_valid = false;
      report["valid"] = false;
      report["error"] =
          json{{"kind", to_string(e.kind())}, {"subject", e.subject()}, {"message", e.what()}};
      if (!json_mode) std::cout << role << " model " << path << ": " << e.what() << "\n";
    }
    reports.push_back(std::move(report));
  };
  check(args.hw_path, "hardware", [](const std::string& t) { autopart::parse_hardware(t); });
  if (!args.sw_path.empty()) {
    check(args.sw_path, "software", [](const std::string& t) { autopart::parse_software(t); });
  }
  emit(json_mode, json{{"valid", all_valid}, {"reports", std::move(reports)}});
  return all_valid ? kExitOk : kExitError;
}

struct EvaluateArgs {
  std::string hw_path;
  std::string sw_path;
  std::string mapping_path;
  std::string weights = "0.25,0.25,0.25,0.25";
};

void print_evaluation(const autopart::EvaluationResult& result) {
  std::cout << "score: " << result.score << (result.feasible() ? " (feasible)" : " (infeasible)")
            << "\n";
  for (const auto& v : result.violations) {
    std::cout << "  violation: " << to_string(v.kind) << " [" << v.subject << "] " << v.detail
              << "\n";
  }
  std::cout << "ECU utilization:\n";
  for (const auto& [id, use] : result.utilization.ecu) {
    std::cout << "  " << id << ": ram_mb=" << use.ram_mb << " cpu_units=" << use.cpu_units << "\n";
  }
  if (!result.utilization.link.empty()) {
    std::cout << "link utilization (kbps):\n";
    for (const auto& [key, used] : result.utilization.link) {
      std::cout << "  " << key << ": " << used << "\n";
    }
  }
  if (!result.utilization.edge_latency.empty()) {
    std::cout << "edge latencies (ms):\n";
    for (const auto& [key, lat] : result.utilization.edge_latency) {
      std::cout << "  " << key << ": " << lat << "\n";
    }
  }
}

int run_evaluate(const EvaluateArgs& args, bool json_mode) {
  const auto hw = autopart::parse_hardware(read_file(args.hw_path));
  const auto sw = autopart::parse_software(read_file(args.sw_path));
  const auto mapping = autopart::parse_mapping(read_file(args.mapping_path));
  const auto weights = parse_weights(args.weights);
  const auto result = autopart::evaluate(hw, sw, mapping, weights);
  if (json_mode) {
    emit(true, autopart::to_json(result));
  } else {
    print_evaluation(result);
  }
  return result.feasible() ? kExitOk : kExitInfeasible;
}

struct SolveArgs {
  std::string hw_path;
  std::string sw_path;
  std::string solver = "bnb";
  std::string pins_path;
  std::string weights = "0.25,0.25,0.25,0.25";
  std::uint64_t seed = 0;
  int restarts = 10;
  int max_iters = 1000;
};

int run_solve(const SolveArgs& args, bool json_mode) {
  autopart::SolveRequest req;
  req.hw = autopart::parse_hardware(read_file(args.hw_path));
  req.sw = autopart::parse_software(read_file(args.sw_path));
  req.weights = parse_weights(args.weights);
  req.seed = args.seed;
  req.restarts = args.restarts;
  req.max_iters = args.max_iters;
  if (!args.pins_path.empty()) {
    req.pins = autopart::parse_mapping(read_file(args.pins_path)).assignment;
  }
  if (const char* cap = std::getenv("AUTOPART_EXHAUSTIVE_CAP")) {
    try {
      size_t used = 0;
      req.exhaustive_cap = std::stoull(cap, &used);
      if (used != std::string(cap).size()) throw std::invalid_argument(cap);
    } catch (const std::exception&) {
      throw Error(ErrorKind::SchemaError, "AUTOPART_EXHAUSTIVE_CAP",
                  "AUTOPART_EXHAUSTIVE_CAP must be an unsigned integer");
    }
  }

  autopart::SolveResult result;
  if (args.solver == "exhaustive") {
    result = autopart::solve_exhaustive(req);
  } else if (args.solver == "bnb") {
    result = autopart::solve_branch_and_bound(req);
  } else {
    result = autopart::solve_local_search(req);
  }

  if (json_mode) {
    emit(true, autopart::to_json(result));
  } else if (result.feasible) {
    std::cout << "feasible mapping found, score " << result.score << " (explored "
              << result.explored << " candidates)\n";
    for (const auto& [comp, ecu] : result.mapping->assignment) {
      std::cout << "  " << comp << " -> " << ecu << "\n";
    }
  } else {
    std::cout << "no feasible mapping found (explored " << result.explored << " candidates)\n";
  }
  return result.feasible ? kExitOk : kExitInfeasible;
}

struct SuggestArgs {
  std::string sw_path;
  std::string catalog_path;
  std::string out_dir;
};

int run_suggest_hw(const SuggestArgs& args, bool json_mode) {
  const auto sw = autopart::parse_software(read_file(args.sw_path));
  const auto catalog = autopart::parse_catalog(read_file(args.catalog_path));
  const auto result = autopart::suggest_hardware(sw, catalog);

  if (!args.out_dir.empty()) {
    std::filesystem::path dir(args.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      throw Error(ErrorKind::IoError, args.out_dir, "cannot create directory '" + args.out_dir +
                                                        "': " + ec.message());
    }
    write_file((dir / "hardware.json").string(), autopart::serialize_hardware(result.hw));
    write_file((dir / "mapping.json").string(), autopart::serialize_mapping(result.mapping));
  }

  if (json_mode) {
    emit(true, autopart::to_json(result));
  } else {
    std::cout << "synthesized " << result.hw.ecus().size() << " device(s), total cost "
              << result.total_cost << "\n";
    for (const auto& ecu : result.hw.ecus()) {
      std::cout << "  device " << ecu.id << " (" << to_string(ecu.tier) << ")\n";
    }
    for (const auto& [comp, ecu] : result.mapping.assignment) {
      std::cout << "  " << comp << " -> " << ecu << "\n";
    }
    if (!args.out_dir.empty()) {
      std::cout << "wrote " << args.out_dir << "/hardware.json and " << args.out_dir
                << "/mapping.json\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  bool json_mode = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--json") json_mode = true;
  }

  CLI::App app{"Attributed-graph modeling and deployment optimization for automotive "
               "hardware/software architectures"};
  app.require_subcommand(1);

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Validate model documents");
  validate->add_option("hardware", validate_args.hw_path, "hardware model JSON")->required();
  validate->add_option("software", validate_args.sw_path, "software model JSON");
  validate->add_flag("--json", "machine-readable output");

  EvaluateArgs evaluate_args;
  auto* evaluate = app.add_subcommand("evaluate", "Score a deployment mapping");
  evaluate->add_option("hardware", evaluate_args.hw_path, "hardware model JSON")->required();
  evaluate->add_option("software", evaluate_args.sw_path, "software model JSON")->required();
  evaluate->add_option("mapping", evaluate_args.mapping_path, "mapping JSON")->required();
  evaluate->add_option("--weights", evaluate_args.weights,
                       "score weights w_mem,w_cpu,w_bw,w_lat (must sum to 1)");
  evaluate->add_flag("--json", "machine-readable output");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Search for the best feasible mapping");
  solve->add_option("hardware", solve_args.hw_path, "hardware model JSON")->required();
  solve->add_option("software", solve_args.sw_path, "software model JSON")->required();
  solve->add_option("--solver", solve_args.solver, "exhaustive | bnb | local (default bnb)")
      ->check(CLI::IsMember({"exhaustive", "bnb", "local"}));
  solve->add_option("--seed", solve_args.seed, "random seed for the local search");
  solve->add_option("--restarts", solve_args.restarts, "local search restarts");
  solve->add_option("--max-iters", solve_args.max_iters, "local search moves per restart");
  solve->add_option("--pins", solve_args.pins_path, "JSON file fixing part of the mapping");
  solve->add_option("--weights", solve_args.weights, "score weights w_mem,w_cpu,w_bw,w_lat");
  solve->add_flag("--json", "machine-readable output");

  SuggestArgs suggest_args;
  auto* suggest = app.add_subcommand("suggest-hw", "Propose hardware for a software model");
  suggest->add_option("software", suggest_args.sw_path, "software model JSON")->required();
  suggest->add_option("catalog", suggest_args.catalog_path, "device catalog JSON")->required();
  suggest->add_option("--out", suggest_args.out_dir,
                      "directory for the synthesized hardware.json and mapping.json");
  suggest->add_flag("--json", "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      return app.exit(e);
    }
    if (json_mode) {
      std::cout << json{{"error", json{{"kind", "UsageError"}, {"message", e.what()}}}}.dump(2)
                << "\n";
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (validate->parsed()) return run_validate(validate_args, json_mode);
    if (evaluate->parsed()) return run_evaluate(evaluate_args, json_mode);
    if (solve->parsed()) return run_solve(solve_args, json_mode);
    return run_suggest_hw(suggest_args, json_mode);
  } catch (const Error& e) {
    if (json_mode) {
      std::cout << json{{"error", json{{"kind", to_string(e.kind())},
                                       {"subject", e.subject()},
                                       {"message", e.what()}}}}
                       .dump(2)
                << "\n";
    }
    std::cerr << "error: " << e.what() << "\n";
    const bool infeasible = e.kind() == ErrorKind::NoCompatibleTemplate ||
                            e.kind() == ErrorKind::InfeasibleSynthesis;
    return infeasible ? kExitInfeasible : kExitError;
  } catch (const std::exception& e) {
    if (json_mode) {
      std::cout << json{{"error", json{{"kind", "InternalError"}, {"message", e.what()}}}}.dump(2)
                << "\n";
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
