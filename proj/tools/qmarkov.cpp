// Copyright 2026 The qmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
// Exit codes: 0 success, 1 a verdict or suite check failed, 2 unreadable or
// malformed input, 3 input violates a state or channel invariant, 4 the
// reversible witness of a protocol is invalid.

#include <CLI11.hpp>

#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "qmarkov/catalog.hpp"
#include "qmarkov/classical.hpp"
#include "qmarkov/freeops.hpp"
#include "qmarkov/io.hpp"
#include "qmarkov/markov.hpp"
#include "qmarkov/monotones.hpp"
#include "qmarkov/suites.hpp"

namespace {

using namespace qmarkov;

constexpr int kExitFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitWitness = 4;

struct WitnessError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Settings {
  std::uint64_t seed = 1;
  int restarts = 16;
  int max_iters = 600;
  int polish_keep = 4;
  int polish_iters = 15000;
  std::optional<int> ext_dim_cap;
  std::optional<int> env_dim_cap;
  double tol_markov = kMarkovTol;
  double epsilon = 1e-8;
  int threads = 1;
  std::string output;
  std::string parts;

  OptimizerConfig optimizer() const {
    OptimizerConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.polish_keep = polish_keep;
    cfg.polish_iters = polish_iters;
    cfg.extension_dim_cap = ext_dim_cap;
    cfg.env_dim_cap = env_dim_cap;
    cfg.threads = threads;
    return cfg;
  }

  Json to_json() const {
    Json j = {{"seed", seed},           {"restarts", restarts},
              {"max_iters", max_iters}, {"polish_keep", polish_keep},
              {"polish_iters", polish_iters}, {"tol_markov", tol_markov},
              {"epsilon", epsilon}};
    if (ext_dim_cap) j["ext_dim_cap"] = *ext_dim_cap;
    if (env_dim_cap) j["env_dim_cap"] = *env_dim_cap;
    return j;
  }
};

void add_common(CLI::App* cmd, Settings& s) {
  cmd->add_option("--seed", s.seed, "Optimizer seed");
  cmd->add_option("--restarts", s.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", s.max_iters, "Iterations per restart")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--polish-keep", s.polish_keep, "Restarts kept for the polish stage")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--polish-iters", s.polish_iters, "Iterations of the polish stage")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--ext-dim-cap", s.ext_dim_cap, "Cap on extension dimensions")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--env-dim-cap", s.env_dim_cap, "Cap on environment dimensions")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-markov", s.tol_markov, "CQMI tolerance of the Markov test");
  cmd->add_option("--epsilon", s.epsilon, "Trace-distance tolerance of convertibility");
  cmd->add_option("--threads", s.threads, "Worker threads for optimizer restarts")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--output", s.output, "Write the JSON document here instead of stdout");
}

/// Writes `j` to the --output path, or to stdout when none was given.
void emit(const Settings& s, const Json& j) {
  if (s.output.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(s.output, j);
  }
}

Labels split_labels(const std::string& group) {
  Labels out;
  std::stringstream in(group);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// "A,A1:B:E" -> {{A, A1}, {B}, {E}}.
Tripartition parse_parts(const std::string& spec) {
  if (spec.empty()) return abe();
  std::vector<std::string> groups;
  std::stringstream in(spec);
  std::string g;
  while (std::getline(in, g, ':')) groups.push_back(g);
  if (groups.size() != 3) throw ParseError("--parts needs three ':'-separated groups");
  return {split_labels(groups[0]), split_labels(groups[1]), split_labels(groups[2])};
}

/// A state file, or catalog:<name>[=<param>].
MultipartiteState load_state(const std::string& ref) {
  const std::string prefix = "catalog:";
  if (ref.rfind(prefix, 0) == 0) {
    std::string name = ref.substr(prefix.size());
    std::optional<double> param;
    if (auto eq = name.find('='); eq != std::string::npos) {
      try {
        param = std::stod(name.substr(eq + 1));
      } catch (const std::exception&) {
        throw ParseError("bad catalog parameter in '" + ref + "'");
      }
      name = name.substr(0, eq);
    }
    return make(name, param).state;
  }
  return state_from_json(read_json_file(ref));
}

Json witness_json(const MonotoneEstimate& e) {
  Json w = Json::object();
  if (e.channel) w["channel"] = channel_to_json(*e.channel);
  if (e.isometry) w["isometry"] = matrix_to_json(e.isometry->matrix());
  return w;
}

std::string cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%10.6f", v);
  return buf;
}

int cmd_analyze(const std::string& ref, const Settings& s) {
  const auto t0 = std::chrono::steady_clock::now();
  const MultipartiteState state = load_state(ref);
  const Tripartition parts = parse_parts(s.parts);
  const MonotoneReport rep = analyze(state, s.optimizer(), parts, s.tol_markov);

  const std::pair<const char*, const MonotoneEstimate*> searched[] = {
      {"I_down", &rep.i_down}, {"I_down_star", &rep.i_down_star}, {"I_sq", &rep.i_sq},
      {"J_down", &rep.j_down}, {"J_down_star", &rep.j_down_star}, {"D_rec", &rep.d_rec}};

  Json monotones = {{"I_M", {{"value", rep.i_m}, {"exact", true}}}};
  long evaluations = 0;
  for (const auto& [name, e] : searched) {
    Json j = estimate_to_json(*e);
    j["upper_bound"] = true;
    j["witness"] = witness_json(*e);
    monotones[name] = j;
    evaluations += e->evaluations;
  }
  const Json report = {
      {"state", ref},
      {"config", s.to_json()},
      {"markov",
       {{"cqmi", rep.markov.cqmi_value},
        {"petz_residual", rep.markov.petz_residual},
        {"is_markov", rep.markov.is_markov},
        {"witness", rep.markov.is_markov ? "petz_recovery" : "none"}}},
      {"monotones", monotones},
      {"stats", {{"evaluations", evaluations}}}};

  // The table goes to stderr when the document goes to stdout.
  std::ostream& table = s.output.empty() ? std::cerr : std::cout;
  table << "markov: " << (rep.markov.is_markov ? "yes" : "no") << "  cqmi " << cell(rep.markov.cqmi_value)
        << "\n";
  table << "       I_M     I_down  I_down_st       I_sq     J_down  J_down_st      D_rec\n";
  table << cell(rep.i_m);
  for (const auto& [name, e] : searched) table << " " << cell(e->value);
  table << "\n";
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "wall time " << secs << " s\n";
  emit(s, report);
  return 0;
}

int cmd_convert_verify(const std::string& from, const std::string& to, const std::string& protocol,
                       const Settings& s) {
  const MultipartiteState s1 = load_state(from);
  const MultipartiteState s2 = load_state(to);
  const Json doc = read_json_file(protocol);
  const Protocol p = protocol_from_json(doc);
  const std::optional<ReversibleE> v = witness_from_json(doc);
  if (!v) throw WitnessError("protocol document has no reversible witness");
  const ConvertibilityVerdict verdict = [&] {
    try {
      return check_convertibility(s1, s2, p, *v, s.epsilon);
    } catch (const ContractError& e) {
      throw WitnessError(e.what());
    }
  }();
  const Json out = {{"from", from},
                    {"to", to},
                    {"protocol", protocol},
                    {"steps", p.steps.size()},
                    {"epsilon_requested", verdict.requested_epsilon},
                    {"epsilon_achieved", verdict.epsilon_achieved},
                    {"witness_valid", verdict.witness_report.ok},
                    {"witness_choi_residual", verdict.witness_report.choi_residual},
                    {"witness_tau_residual", verdict.witness_report.max_tau_residual},
                    {"ok", verdict.ok}};
  emit(s, out);
  if (!verdict.witness_report.ok) return kExitWitness;
  return verdict.ok ? 0 : kExitFailed;
}

int cmd_suite(const std::string& name, const Settings& s, const CLI::App& cmd) {
  SuiteOptions opt = acceptance_options();
  // Only explicitly given flags override the acceptance configuration.
  opt.optimizer.seed = s.seed;
  opt.seed = s.seed;
  opt.classical.seed = s.seed;
  if (cmd.count("--restarts")) opt.optimizer.restarts = s.restarts;
  if (cmd.count("--max-iters")) opt.optimizer.max_iters = s.max_iters;
  if (cmd.count("--polish-keep")) opt.optimizer.polish_keep = s.polish_keep;
  if (cmd.count("--polish-iters")) opt.optimizer.polish_iters = s.polish_iters;
  opt.optimizer.extension_dim_cap = s.ext_dim_cap;
  opt.optimizer.env_dim_cap = s.env_dim_cap;
  opt.optimizer.threads = s.threads;
  opt.classical.threads = s.threads;

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<SuiteReport> reports = run_suite(name, opt);
  Json out = {{"suite", name}, {"seed", s.seed}, {"bundles", Json::array()}};
  int failures = 0;
  for (const auto& rep : reports) {
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"measured", c.measured},
                        {"expected", c.expected},
                        {"tolerance", c.tolerance},
                        {"detail", c.detail}});
    }
    out["bundles"].push_back({{"name", rep.suite},
                              {"passed", rep.passed()},
                              {"checks", checks.size()},
                              {"failures", rep.failures()},
                              {"results", checks}});
    failures += rep.failures();
    std::cerr << rep.suite << ": " << (rep.checks.size() - rep.failures()) << "/"
              << rep.checks.size() << " passed\n";
  }
  out["passed"] = failures == 0;
  std::cerr << "wall time "
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
            << " s\n";
  emit(s, out);
  return failures == 0 ? 0 : kExitFailed;
}

int cmd_catalog_list() {
  for (const auto& n : catalog_names()) std::cout << n << "\n";
  return 0;
}

int cmd_catalog_dump(const std::string& name, std::optional<double> param, const Settings& s) {
  emit(s, state_to_json(make(name, param).state));
  return 0;
}

/// "psi2_star^2 -> phi3" -> "psi2_star2_to_phi3".
std::string file_stem(const std::string& arrow) {
  std::string out;
  for (std::size_t i = 0; i < arrow.size(); ++i) {
    const char c = arrow[i];
    if (arrow.compare(i, 2, "->") == 0) {
      out += "to";
      ++i;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      out += c;
    } else if (c == ' ' && !out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

/// Writes <dir>/<arrow>.from.json, .to.json and .protocol.json for every
/// convertibility arrow, ready for convert-verify.
int cmd_catalog_arrows(const std::string& dir) {
  const auto arrows = fig3_arrows();
  if (dir.empty()) {
    for (const auto& a : arrows) std::cout << a.name << "\n";
    return 0;
  }
  std::filesystem::create_directories(dir);
  for (const auto& a : arrows) {
    const std::string base = (std::filesystem::path(dir) / file_stem(a.name)).string();
    write_json_file(base + ".from.json", state_to_json(a.from));
    write_json_file(base + ".to.json", state_to_json(a.to));
    write_json_file(base + ".protocol.json", protocol_to_json(a.protocol, a.witness));
    std::cout << file_stem(a.name) << "\n";
  }
  return 0;
}

int cmd_classical_analyze(const std::string& path, const Settings& s) {
  const ClassicalDist p = dist_from_json(read_json_file(path));
  ClassicalConfig cfg;
  cfg.seed = s.seed;
  cfg.restarts = s.restarts;
  cfg.threads = s.threads;
  const IntrinsicResult r = classical_intrinsic(p, cfg);
  const Json out = {{"distribution", path},
                    {"config", s.to_json()},
                    {"I_M", classical_cmi(p)},
                    {"is_markov", classical_is_markov(p, s.tol_markov)},
                    {"I_down",
                     {{"value", r.value},
                      {"upper_bound", true},
                      {"converged", r.converged},
                      {"restart", r.restart},
                      {"evaluations", r.evaluations},
                      {"witness",
                       {{"in", r.witness.in_size()},
                        {"out", r.witness.out_size()},
                        {"r", r.witness.table()}}}}}};
  emit(s, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tripartite quantum Markov states: monotones, free operations, suites"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML or INI file with option defaults");
  Settings s;

  std::string state_ref;
  auto* analyze_cmd = app.add_subcommand("analyze", "Markov test and every monotone of a state");
  analyze_cmd->add_option("state", state_ref, "State file or catalog:<name>[=<param>]")->required();
  analyze_cmd->add_option("--parts", s.parts, "Tripartition as A,..:B,..:E,.. (default A:B:E)");
  add_common(analyze_cmd, s);

  std::string from, to, protocol;
  auto* convert_cmd =
      app.add_subcommand("convert-verify", "Check that a protocol converts one state to another");
  convert_cmd->add_option("--from", from, "Initial state")->required();
  convert_cmd->add_option("--to", to, "Target state")->required();
  convert_cmd->add_option("--protocol", protocol, "Protocol document with a witness")->required();
  add_common(convert_cmd, s);

  std::string suite_name;
  auto* suite_cmd = app.add_subcommand("suite", "Run an acceptance bundle");
  suite_cmd->add_option("name", suite_name, "Bundle name")
      ->required()
      ->check(CLI::IsMember({"table1", "fig3", "pauli", "classical", "properties"}));
  add_common(suite_cmd, s);

  auto* catalog_cmd = app.add_subcommand("catalog", "Named example states");
  catalog_cmd->require_subcommand(1);
  auto* list_cmd = catalog_cmd->add_subcommand("list", "List state names");
  std::string dump_name;
  std::optional<double> dump_param;
  auto* dump_cmd = catalog_cmd->add_subcommand("dump", "Write a state document");
  dump_cmd->add_option("name", dump_name, "State name")->required();
  dump_cmd->add_option("param", dump_param, "Parameter of phi1_d or rho_bar");
  add_common(dump_cmd, s);
  std::string arrows_dir;
  auto* arrows_cmd =
      catalog_cmd->add_subcommand("arrows", "List convertibility arrows or write their documents");
  arrows_cmd->add_option("--dir", arrows_dir, "Directory for the from/to/protocol documents");

  std::string dist_path;
  auto* classical_cmd = app.add_subcommand("classical", "Classical distributions");
  classical_cmd->require_subcommand(1);
  auto* canalyze_cmd = classical_cmd->add_subcommand("analyze", "I_M and intrinsic information");
  canalyze_cmd->add_option("dist", dist_path, "Distribution file")->required();
  add_common(canalyze_cmd, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(state_ref, s);
    if (*convert_cmd) return cmd_convert_verify(from, to, protocol, s);
    if (*suite_cmd) return cmd_suite(suite_name, s, *suite_cmd);
    if (*list_cmd) return cmd_catalog_list();
    if (*dump_cmd) return cmd_catalog_dump(dump_name, dump_param, s);
    if (*arrows_cmd) return cmd_catalog_arrows(arrows_dir);
    if (*canalyze_cmd) return cmd_classical_analyze(dist_path, s);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const WitnessError& e) {
    std::cerr << "invalid witness: " << e.what() << "\n";
    return kExitWitness;
  } catch (const InputError& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitFailed;
}
