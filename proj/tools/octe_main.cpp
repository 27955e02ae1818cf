// octe: infer directed causal hypergraphs from categorical data.
//
// Subcommands: generate (sample a builtin system to CSV), analyze (empirical
// hyperedge discovery on a CSV), exact (closed-form analysis of a builtin),
// table1 (the reference table of XOR information functionals).
//
// Exit codes: 0 success, 2 usage/parse error, 3 capacity exceeded.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "octe/hypergraph.hpp"
#include "octe/inference.hpp"
#include "octe/io.hpp"
#include "octe/systems.hpp"

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct SystemArgs {
  std::string name;
  double p1 = 0.5, p2 = 0.5;
  int k = 3;
  int p = 2, n = 3;
  double eps_y = 0.1, eps_z = 0.1;
  std::string spec_file;

  void attach(CLI::App* cmd) {
    cmd->add_option("system", name, "builtin system name, or 'custom'")
        ->required();
    cmd->add_option("--p1", p1, "Be(p) parameter of X1 (xor)");
    cmd->add_option("--p2", p2, "Be(p) parameter of X2 (xor)");
    cmd->add_option("--k", k, "source count (parity)");
    cmd->add_option("--p", p, "direct-source count (mediated-xor)");
    cmd->add_option("--n", n, "total source count (mediated-xor)");
    cmd->add_option("--eps-y", eps_y, "flip probability of Y (neuron-xor)");
    cmd->add_option("--eps-z", eps_z, "flip probability of Z (neuron-xor)");
    cmd->add_option("--spec", spec_file, "system JSON document (custom)");
  }

  octe::BuiltinSystem build() const {
    if (name == "custom") {
      if (spec_file.empty())
        throw std::invalid_argument("custom system needs --spec FILE");
      std::ifstream in(spec_file);
      if (!in) throw octe::ParseError("cannot open " + spec_file);
      std::string text((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      return {octe::system_from_json_string(text), {}};
    }
    return octe::make_builtin(name, {{"p1", p1},
                                     {"p2", p2},
                                     {"k", static_cast<double>(k)},
                                     {"p", static_cast<double>(p)},
                                     {"n", static_cast<double>(n)},
                                     {"eps_y", eps_y},
                                     {"eps_z", eps_z}});
  }
};

int env_threads() {
  const char* env = std::getenv("OCTE_THREADS");
  if (env == nullptr) return 0;
  return std::max(0, std::atoi(env));
}

std::string strip_extension(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path;
  return path.substr(0, dot);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
  if (!out) throw octe::ParseError("cannot write " + path);
}

void write_manifest(const std::string& path, const std::string& command,
                    const json& arguments, double seconds) {
  json doc;
  doc["format"] = "octe-manifest/1";
  doc["tool"] = "octe";
  doc["version"] = octe::kVersion;
  doc["command"] = command;
  doc["arguments"] = arguments;
  doc["duration_seconds"] = seconds;
  write_file(path, doc.dump(2) + "\n");
}

std::string render_p(const std::optional<double>& p) {
  if (!p) return "-";
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << *p;
  return out.str();
}

void print_decisions(std::ostream& out,
                     const std::vector<octe::HyperedgeDecision>& decisions,
                     const std::vector<octe::VariableId>& vars,
                     bool with_trace) {
  out << std::left << std::setw(18) << "tail" << std::setw(8) << "causal"
      << std::setw(8) << "unique" << std::setw(11) << "inherited"
      << std::setw(12) << "octe_bits" << std::setw(9) << "max_p"
      << "argmin_S\n";
  for (const octe::HyperedgeDecision& d : decisions) {
    std::ostringstream octe_s;
    octe_s << std::fixed << std::setprecision(4) << d.octe;
    out << std::left << std::setw(18) << octe::format_set(d.tail, vars)
        << std::setw(8) << (d.causal ? "yes" : "no") << std::setw(8)
        << (d.unique ? "yes" : "no") << std::setw(11)
        << (d.inherited ? "yes" : "no") << std::setw(12) << octe_s.str()
        << std::setw(9) << render_p(d.max_p)
        << octe::format_set(d.argmin_condition, vars) << "\n";
    if (with_trace)
      for (const octe::SubsetResult& r : d.subset_trace)
        out << "    S=" << std::left << std::setw(16)
            << octe::format_set(r.condition, vars) << " I=" << std::fixed
            << std::setprecision(6) << r.estimate << "  p=" << render_p(r.p_value)
            << "\n";
  }
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  SystemArgs system;
  std::int64_t samples = 10000;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string output;
};

int run_generate(const GenerateArgs& args) {
  const auto started = Clock::now();
  const octe::BuiltinSystem sys = args.system.build();
  const octe::DataMatrix data =
      octe::sample(sys.spec, args.samples, args.seed,
                   args.threads > 0 ? args.threads : env_threads());
  octe::write_csv(data, args.output);

  const std::string stem = strip_extension(args.output);
  write_file(stem + ".truth.json",
             octe::to_json_string(sys.spec, sys.truth) + "\n");

  const double seconds =
      std::chrono::duration<double>(Clock::now() - started).count();
  json arguments = {{"system", args.system.name},
                    {"samples", args.samples},
                    {"seed", args.seed},
                    {"output", args.output}};
  write_manifest(stem + ".manifest.json", "generate", arguments, seconds);

  std::cout << "wrote " << data.rows() << " rows x " << data.cols()
            << " columns to " << args.output << "\n";
  return 0;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string input;
  std::string target;
  std::vector<std::string> sources;
  int k_max = 3;
  double theta = 0.01;
  int permutations = 1000;
  std::uint64_t seed = 0;
  bool all = false;
  int lag = 0;
  std::optional<int> max_condition_size;
  int threads = 0;
  bool trace = true;
  std::string output;
};

int run_analyze(const AnalyzeArgs& args) {
  const auto started = Clock::now();
  octe::DataMatrix data = octe::load_csv(args.input);

  int target = -1;
  for (const octe::VariableId& v : data.variables())
    if (v.name == args.target) target = v.index;
  if (target < 0)
    throw std::invalid_argument("target column \"" + args.target +
                                "\" not found in " + args.input);

  if (args.lag > 0) {
    octe::LagSpec lag;
    lag.target = target;
    lag.default_lag = args.lag;
    data = octe::lag_embed(data, lag);
  }

  octe::TestConfig config;
  config.permutations = args.permutations;
  config.theta = args.theta;
  config.seed = args.seed;
  config.max_condition_size = args.max_condition_size;
  config.threads = args.threads > 0 ? args.threads : env_threads();

  octe::VarSet candidates = data.variable_set().without(target);
  if (!args.sources.empty()) {
    candidates = octe::VarSet{};
    for (const std::string& source : args.sources) {
      int index = -1;
      for (const octe::VariableId& v : data.variables())
        if (v.name == source) index = v.index;
      if (index < 0 || index == target)
        throw std::invalid_argument("bad source column \"" + source + "\"");
      candidates.add(index);
    }
  }

  octe::DiscoverOptions options;
  options.k_max = std::min(args.k_max, candidates.size());
  options.evaluate_inherited = args.all;
  const std::vector<octe::HyperedgeDecision> decisions =
      octe::discover(data, target, candidates, options, config);

  const octe::CausalHypergraph graph =
      octe::from_decisions(data.variables(), decisions);

  const std::string prefix =
      args.output.empty() ? strip_extension(args.input) + ".octe" : args.output;
  write_file(prefix + ".json", octe::to_json_string(graph) + "\n");
  write_file(prefix + ".dot", octe::to_dot(graph));

  const double seconds =
      std::chrono::duration<double>(Clock::now() - started).count();
  json arguments = {{"input", args.input},
                    {"target", args.target},
                    {"k_max", args.k_max},
                    {"theta", args.theta},
                    {"permutations", args.permutations},
                    {"seed", args.seed},
                    {"all", args.all},
                    {"lag", args.lag},
                    {"threads", config.threads}};
  if (args.max_condition_size)
    arguments["max_condition_size"] = *args.max_condition_size;
  write_manifest(prefix + ".manifest.json", "analyze", arguments, seconds);

  std::cout << "target " << args.target << ": " << candidates.size()
            << " candidate sources, k_max=" << options.k_max
            << ", theta=" << args.theta << ", N=" << args.permutations
            << ", seed=" << args.seed << "\n\n";
  print_decisions(std::cout, decisions, data.variables(), args.trace);
  std::cout << "\n"
            << graph.edges().size() << " causal hyperedge(s); wrote " << prefix
            << ".json, " << prefix << ".dot\n";
  return 0;
}

// ------------------------------------------------------------------- exact

struct ExactArgs {
  SystemArgs system;
  std::string target = "Y";
  std::optional<int> k_max;
  bool all = true;
};

int run_exact(const ExactArgs& args) {
  const octe::BuiltinSystem sys = args.system.build();
  const octe::JointDistribution dist = octe::enumerate_joint(sys.spec);

  int target = -1;
  for (const octe::VariableId& v : dist.variables())
    if (v.name == args.target) target = v.index;
  if (target < 0)
    throw std::invalid_argument("target variable \"" + args.target +
                                "\" is not observed in this system");
  const octe::VarSet candidates = dist.variable_set().without(target);

  // The standard functional table for the first two sources.
  const std::vector<int> sources = candidates.indices();
  if (sources.size() >= 2) {
    const octe::VarSet x1 = octe::VarSet::single(sources[0]);
    const octe::VarSet x2 = octe::VarSet::single(sources[1]);
    const octe::VarSet y = octe::VarSet::single(target);
    const auto& vars = dist.variables();
    const auto name = [&vars](octe::VarSet s) {
      const std::string text = octe::format_set(s, vars);
      return s.size() == 1 ? text.substr(1, text.size() - 2) : text;
    };
    std::cout << std::fixed << std::setprecision(4);
    std::cout << "I(" << name(x1) << "," << name(y)
              << ")        = " << mutual_information(dist, x1, y) << "\n";
    std::cout << "I(" << name(x2) << "," << name(y)
              << ")        = " << mutual_information(dist, x2, y) << "\n";
    std::cout << "I(" << name(x1) << "," << name(y) << "|" << name(x2)
              << ")   = " << cmi(dist, x1, y, x2) << "\n";
    std::cout << "I(" << name(x2) << "," << name(y) << "|" << name(x1)
              << ")   = " << cmi(dist, x2, y, x1) << "\n";
    std::cout << "I(" << name(x1 | x2) << "," << name(y)
              << ")   = " << mutual_information(dist, x1 | x2, y) << "\n\n";
  }

  octe::DiscoverOptions options;
  options.k_max = args.k_max ? std::min(*args.k_max, candidates.size())
                             : candidates.size();
  options.evaluate_inherited = args.all;
  const std::vector<octe::HyperedgeDecision> decisions =
      octe::discover(dist, target, candidates, options);

  print_decisions(std::cout, decisions, dist.variables(), true);
  return 0;
}

// ------------------------------------------------------------------ table1

int run_table1(int precision, bool as_json) {
  struct Case {
    const char* label;
    double p1, p2;
  };
  const Case cases[3] = {{"a", 0.5, 0.5}, {"b", 0.5, 0.8}, {"c", 0.7, 0.8}};
  const char* rows[5] = {"I(X1,Y)", "I(X2,Y)", "I(X1,Y|X2)", "I(X2,Y|X1)",
                         "I({X1,X2},Y)"};
  const double expected[5][3] = {{0.00, 0.28, 0.24},
                                 {0.00, 0.00, 0.08},
                                 {1.00, 1.00, 0.88},
                                 {1.00, 0.72, 0.72},
                                 {1.00, 1.00, 0.96}};

  double values[5][3];
  double cells[4][3];
  for (int c = 0; c < 3; ++c) {
    const octe::JointDistribution dist = octe::enumerate_joint(
        octe::make_xor_system(cases[c].p1, cases[c].p2).spec);
    const octe::VarSet x1 = octe::VarSet::single(0);
    const octe::VarSet x2 = octe::VarSet::single(1);
    const octe::VarSet y = octe::VarSet::single(2);
    values[0][c] = mutual_information(dist, x1, y);
    values[1][c] = mutual_information(dist, x2, y);
    values[2][c] = cmi(dist, x1, y, x2);
    values[3][c] = cmi(dist, x2, y, x1);
    values[4][c] = mutual_information(dist, x1 | x2, y);
    const auto& p = dist.probabilities();
    cells[0][c] = p[0b000];
    cells[1][c] = p[0b011];
    cells[2][c] = p[0b101];
    cells[3][c] = p[0b110];
  }

  int mismatches = 0;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 3; ++c)
      if (std::abs(values[r][c] - expected[r][c]) > 0.005) ++mismatches;

  if (as_json) {
    json doc;
    doc["cases"] = json::array();
    for (int c = 0; c < 3; ++c) {
      json entry = {{"label", cases[c].label},
                    {"p1", cases[c].p1},
                    {"p2", cases[c].p2}};
      for (int r = 0; r < 5; ++r) entry[rows[r]] = values[r][c];
      doc["cases"].push_back(std::move(entry));
    }
    doc["mismatches"] = mismatches;
    std::cout << doc.dump(2) << "\n";
  } else {
    const char* cell_rows[4] = {"p(X1=0,X2=0,Y=0)", "p(X1=0,X2=1,Y=1)",
                                "p(X1=1,X2=0,Y=1)", "p(X1=1,X2=1,Y=0)"};
    std::cout << std::left << std::setw(20) << "" << std::right
              << std::setw(10) << "a" << std::setw(10) << "b" << std::setw(10)
              << "c" << "\n";
    std::cout << std::fixed << std::setprecision(precision);
    for (int r = 0; r < 4; ++r) {
      std::cout << std::left << std::setw(20) << cell_rows[r] << std::right;
      for (int c = 0; c < 3; ++c) std::cout << std::setw(10) << cells[r][c];
      std::cout << "\n";
    }
    for (int r = 0; r < 5; ++r) {
      std::cout << std::left << std::setw(20) << rows[r] << std::right;
      for (int c = 0; c < 3; ++c) {
        std::cout << std::setw(10) << values[r][c];
        if (std::abs(values[r][c] - expected[r][c]) > 0.005) std::cout << "!";
      }
      std::cout << "\n";
    }
    if (mismatches > 0)
      std::cout << mismatches << " value(s) flagged (!) against the reference\n";
  }
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"causal hypergraph inference via optimally conditioned "
               "transfer entropy"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "sample a synthetic system into a CSV data set");
  gen.system.attach(generate);
  generate->add_option("-T,--samples", gen.samples, "sample count")
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--threads", gen.threads, "worker threads (0 = all)");
  generate->add_option("-o,--output", gen.output, "output CSV path")
      ->required();

  AnalyzeArgs ana;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "infer the causal hypergraph for one target column");
  analyze->add_option("input", ana.input, "input CSV path")->required();
  analyze->add_option("-t,--target", ana.target, "target column name")
      ->required();
  analyze->add_option("-s,--sources", ana.sources,
                      "candidate source columns (default: all others)")
      ->delimiter(',');
  analyze->add_option("-k,--k-max", ana.k_max, "largest tail size tested");
  analyze->add_option("--theta", ana.theta, "significance level");
  analyze->add_option("-N,--permutations", ana.permutations,
                      "null replicates per subset test");
  analyze->add_option("--seed", ana.seed, "random seed");
  analyze->add_flag("--all", ana.all,
                    "evaluate inherited supersets instead of pruning them");
  analyze->add_option("--lag", ana.lag,
                      "embed sources this many steps before the target "
                      "(0 = same-row alignment)");
  analyze->add_option("--max-condition-size", ana.max_condition_size,
                      "cap on conditioning-set size");
  analyze->add_option("--threads", ana.threads, "worker threads (0 = all)");
  analyze->add_flag("--trace,!--no-trace", ana.trace,
                    "print per-subset test traces (default on)");
  analyze->add_option("-o,--output", ana.output,
                      "output prefix (default: input stem + .octe)");

  ExactArgs exa;
  CLI::App* exact = app.add_subcommand(
      "exact", "closed-form analysis of a builtin system");
  exa.system.attach(exact);
  exact->add_option("-t,--target", exa.target, "target variable name");
  exact->add_option("--k-max", exa.k_max, "largest tail size tested");

  int precision = 2;
  bool as_json = false;
  CLI::App* table1 = app.add_subcommand(
      "table1", "reproduce the XOR information-functional table");
  table1->add_option("--precision", precision, "printed decimal places");
  table1->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (analyze->parsed()) return run_analyze(ana);
    if (exact->parsed()) return run_exact(exa);
    if (table1->parsed()) return run_table1(precision, as_json);
  } catch (const octe::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const octe::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
