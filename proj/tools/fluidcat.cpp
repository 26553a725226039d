#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fluidcat/checks.hpp"
#include "fluidcat/version.hpp"

using namespace fluidcat;

namespace {

struct Cli {
  std::string input;
  std::string output;
  std::string format = "json";
  std::string core;
  std::string inject_fault;
  double epsilon = 0.0;
  double lambda = 0.5;
  int levels = 3;
  int arity = 1;
  unsigned long long seed = 1;
};

std::vector<AtomId> selected_cores(const InfoSpace& space, const Cli& cli) {
  if (!cli.core.empty()) return {space.index_of(cli.core)};
  std::vector<AtomId> all;
  for (int a = 0; a < space.size(); ++a) all.push_back(a);
  return all;
}

void emit(const Cli& cli, const std::string& text) {
  if (cli.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cli.output);
  if (!out) fail("MalformedDocument", "cannot open output file '" + cli.output + "'");
  out << text;
}

void emit_json(const Cli& cli, const std::string& command, const nlohmann::json& config,
               const nlohmann::json& result) {
  nlohmann::json env;
  env["tool"] = "fluidcat";
  env["version"] = kVersion;
  env["command"] = command;
  env["config"] = config;
  env["result"] = result;
  emit(cli, env.dump(2) + "\n");
}

nlohmann::json base_config(const Cli& cli) {
  nlohmann::json c;
  c["input"] = cli.input;
  c["epsilon"] = cli.epsilon;
  c["format"] = cli.format;
  return c;
}

void require_json_format(const Cli& cli) {
  if (cli.format != "json")
    fail("MalformedDocument", "dot output is not available for this command");
}

int cmd_cover(const InfoSpace& space, const Cli& cli) {
  EpsGraph g = eps_graph(space, cli.epsilon);
  std::vector<AtomSet> comps = components(space, cli.epsilon);
  if (cli.format == "dot") {
    std::string dot = "graph cover {\n";
    for (const std::string& a : space.atoms) dot += "  \"" + a + "\";\n";
    for (auto [u, v] : g.edges) dot += "  \"" + space.name(u) + "\" -- \"" + space.name(v) + "\";\n";
    emit(cli, dot + "}\n");
    return 0;
  }
  nlohmann::json result;
  result["atoms"] = space.atoms;
  auto& edges = result["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges) edges.push_back({space.name(u), space.name(v)});
  auto& balls = result["balls"] = nlohmann::json::object();
  for (int a = 0; a < space.size(); ++a) {
    auto& b = balls[space.name(a)] = nlohmann::json::array();
    for (AtomId x : ball(space, a, cli.epsilon)) b.push_back(space.name(x));
  }
  auto& cj = result["components"] = nlohmann::json::array();
  for (const AtomSet& c : comps) {
    nlohmann::json cell = nlohmann::json::array();
    for (AtomId x : c) cell.push_back(space.name(x));
    cj.push_back(std::move(cell));
  }
  result["connected"] = comps.size() <= 1;
  emit_json(cli, "cover", base_config(cli), result);
  return 0;
}

int cmd_system(const InfoSpace& space, const Cli& cli) {
  DirectedSystem sys = build_system(space, cli.epsilon, cli.levels);
  if (cli.format == "dot") {
    emit(cli, system_to_dot(space, sys));
    return 0;
  }
  nlohmann::json config = base_config(cli);
  config["levels"] = cli.levels;
  emit_json(cli, "system", config, system_report(space, sys));
  return 0;
}

int cmd_strata(const InfoSpace& space, const Cli& cli) {
  require_json_format(cli);
  DirectedSystem sys = build_system(space, cli.epsilon, cli.levels);
  nlohmann::json result;
  result["level"] = cli.levels;
  auto& pts = result["points"] = nlohmann::json::array();
  for (AtomId a : selected_cores(space, cli)) {
    nlohmann::json pj;
    pj["core"] = space.name(a);
    auto& st = pj["strata"] = nlohmann::json::array();
    for (const AtomSet& cell : strata(sys.point(a, cli.levels))) {
      nlohmann::json cj = nlohmann::json::array();
      for (AtomId x : cell) cj.push_back(space.name(x));
      st.push_back(std::move(cj));
    }
    pts.push_back(std::move(pj));
  }
  nlohmann::json config = base_config(cli);
  config["levels"] = cli.levels;
  if (!cli.core.empty()) config["core"] = cli.core;
  emit_json(cli, "strata", config, result);
  return 0;
}

int cmd_colimit(const InfoSpace& space, const Cli& cli) {
  require_json_format(cli);
  DirectedSystem sys = build_system(space, cli.epsilon, 1);
  nlohmann::json result;
  auto& cs = result["colimits"] = nlohmann::json::array();
  for (AtomId a : selected_cores(space, cli)) {
    nlohmann::json cj;
    cj["core"] = space.name(a);
    auto& mem = cj["members"] = nlohmann::json::array();
    for (AtomId x : colimit(space, cli.epsilon, a)) mem.push_back(space.name(x));
    cj["stabilization"] = sys.stabilization[a];
    cs.push_back(std::move(cj));
  }
  nlohmann::json config = base_config(cli);
  if (!cli.core.empty()) config["core"] = cli.core;
  emit_json(cli, "colimit", config, result);
  return 0;
}

int cmd_wavefn(const InfoSpace& space, const Cli& cli) {
  require_json_format(cli);
  DirectedSystem sys = build_system(space, cli.epsilon, cli.levels);
  nlohmann::json result;
  result["level"] = cli.levels;
  result["lambda"] = cli.lambda;
  auto& ws = result["waves"] = nlohmann::json::array();
  for (AtomId a : selected_cores(space, cli)) {
    nlohmann::json wj = wavefn_to_json(space, wavefn(sys.point(a, cli.levels), cli.lambda));
    wj["core"] = space.name(a);
    ws.push_back(std::move(wj));
  }
  nlohmann::json config = base_config(cli);
  config["levels"] = cli.levels;
  config["lambda"] = cli.lambda;
  if (!cli.core.empty()) config["core"] = cli.core;
  emit_json(cli, "wavefn", config, result);
  return 0;
}

int cmd_towers(const InfoSpace& space, const Cli& cli) {
  DirectedSystem sys = build_system(space, cli.epsilon, cli.levels);
  std::vector<AtomId> cores = selected_cores(space, cli);
  std::vector<Tower> towers;
  for (AtomId a : cores)
    towers.push_back(canonical_tower(space, cli.epsilon, sys.point(a, cli.levels)));
  if (cli.format == "dot") {
    emit(cli, towers_to_dot(space, towers));
    return 0;
  }
  nlohmann::json result;
  result["level"] = cli.levels;
  auto& ts = result["towers"] = nlohmann::json::array();
  for (size_t i = 0; i < towers.size(); ++i) {
    nlohmann::json tj = tower_to_json(space, towers[i]);
    tj["core"] = space.name(cores[i]);
    ts.push_back(std::move(tj));
  }
  nlohmann::json config = base_config(cli);
  config["levels"] = cli.levels;
  if (!cli.core.empty()) config["core"] = cli.core;
  emit_json(cli, "towers", config, result);
  return 0;
}

int cmd_bundle(const InfoSpace& space, const Cli& cli) {
  DirectedSystem sys = build_system(space, cli.epsilon, cli.levels);
  TowerBundle b = build_bundle(build_chi_pq(space, sys, cli.levels, cli.arity));
  if (cli.format == "dot") {
    emit(cli, bundle_to_dot(space, b));
    return 0;
  }
  auto cover = kay_cover_check(space, b);
  auto cofib = check_cofibered(b.elements);
  auto dual = duality_roundtrip(space, sys, b);
  auto to_json = [](const std::vector<LawViolation>& vs) {
    nlohmann::json j;
    j["passed"] = vs.empty();
    auto& out = j["violations"] = nlohmann::json::array();
    for (const LawViolation& v : vs) out.push_back({{"law", v.law}, {"detail", v.detail}});
    return j;
  };
  nlohmann::json result = bundle_report(space, b);
  result["checks"] = {{"cover", to_json(cover)},
                      {"cofibered", to_json(cofib)},
                      {"duality", to_json(dual)}};
  nlohmann::json config = base_config(cli);
  config["levels"] = cli.levels;
  config["arity"] = cli.arity;
  emit_json(cli, "bundle", config, result);
  return cover.empty() && cofib.empty() && dual.empty() ? 0 : 1;
}

int cmd_check(const InfoSpace& space, const Cli& cli) {
  require_json_format(cli);
  CheckOptions opts;
  opts.epsilon = cli.epsilon;
  opts.levels = cli.levels;
  opts.lambda = cli.lambda;
  opts.arity = cli.arity;
  opts.seed = cli.seed;
  opts.inject_fault = cli.inject_fault;
  CheckReport report = run_checks(space, opts);
  nlohmann::json config = base_config(cli);
  config["levels"] = cli.levels;
  config["lambda"] = cli.lambda;
  config["arity"] = cli.arity;
  config["seed"] = cli.seed;
  if (!cli.inject_fault.empty()) config["inject_fault"] = cli.inject_fault;
  emit_json(cli, "check", config, check_report_to_json(report));
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite information spaces, thickened points and tower bundles"};
  app.require_subcommand(1);

  Cli cli;
  app.add_option("--input", cli.input, "space document (json)")->required();
  app.add_option("--epsilon", cli.epsilon, "resolution")->required();
  app.add_option("--levels", cli.levels, "thickening depth")->capture_default_str();
  app.add_option("--lambda", cli.lambda, "wave decay in (0,1)")->capture_default_str();
  app.add_option("--arity", cli.arity, "base tuple arity")->capture_default_str();
  app.add_option("--core", cli.core, "restrict to one atom");
  app.add_option("--seed", cli.seed, "random seed for sampled checks")->capture_default_str();
  app.add_option("--output", cli.output, "write to file instead of stdout");
  app.add_option("--format", cli.format, "json or dot")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "dot"}));
  app.add_option("--inject-fault", cli.inject_fault,
                 "deliberately corrupt one structure before checking");

  app.add_subcommand("cover", "epsilon graph, balls and components");
  app.add_subcommand("system", "directed system of thickened points");
  app.add_subcommand("strata", "degree strata of the level-p points");
  app.add_subcommand("colimit", "stable members reached by iterated thickening");
  app.add_subcommand("wavefn", "degree-weighted distribution over a point's members");
  app.add_subcommand("towers", "canonical towers over the level-p points");
  app.add_subcommand("bundle", "tower bundle over the level-p point category");
  app.add_subcommand("check", "run every law suite and report violations");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    InfoSpace space = load_space_file(cli.input);
    if (components(space, cli.epsilon).size() > 1)
      std::cerr << "warning: the epsilon graph is disconnected at epsilon=" << cli.epsilon << "\n";
    if (command == "cover") return cmd_cover(space, cli);
    if (command == "system") return cmd_system(space, cli);
    if (command == "strata") return cmd_strata(space, cli);
    if (command == "colimit") return cmd_colimit(space, cli);
    if (command == "wavefn") return cmd_wavefn(space, cli);
    if (command == "towers") return cmd_towers(space, cli);
    if (command == "bundle") return cmd_bundle(space, cli);
    if (command == "check") return cmd_check(space, cli);
    std::cerr << "error: unknown command '" << command << "'\n";
    return 2;
  } catch (const Error& err) {
    std::cerr << "error [" << err.code() << "]: " << err.what() << "\n";
    return err.code() == "FunctorLawViolation" ? 3 : 2;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return 3;
  }
}
