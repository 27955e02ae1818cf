#include "octe/systems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "octe/rng.hpp"
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace octe {

namespace {

using json = nlohmann::ordered_json;

constexpr std::array<const char*, 6> kFuncNames = {
    "XOR", "PARITY", "SUM", "SUM_MOD", "IDENTITY", "NOISY_COPY"};

int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

}  // namespace

const char* func_name(Func fn) {
  return kFuncNames[static_cast<std::size_t>(fn)];
}

Func func_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kFuncNames.size(); ++i)
    if (name == kFuncNames[i]) return static_cast<Func>(i);
  throw std::invalid_argument("unknown function name: " + name);
}

const char* edge_kind_name(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kDirect: return "direct";
    case EdgeKind::kSynergistic: return "synergistic";
    case EdgeKind::kMediated: return "mediated";
  }
  return "?";
}

EdgeKind edge_kind_from_name(const std::string& name) {
  if (name == "direct") return EdgeKind::kDirect;
  if (name == "synergistic") return EdgeKind::kSynergistic;
  if (name == "mediated") return EdgeKind::kMediated;
  throw std::invalid_argument("unknown edge kind: " + name);
}

void validate(const SystemSpec& spec) {
  const int total = spec.variable_count();
  if (spec.exogenous.empty())
    throw std::invalid_argument("system needs at least one exogenous variable");
  if (total > kMaxVariables)
    throw std::invalid_argument("system has more than 64 variables");

  for (std::size_t i = 0; i < spec.exogenous.size(); ++i) {
    const ExogenousVar& v = spec.exogenous[i];
    if (v.id.index != static_cast<int>(i))
      throw std::invalid_argument("exogenous variable " + v.id.name +
                                  " out of declaration order");
    if (v.id.name.empty()) throw std::invalid_argument("empty variable name");
    if (v.pmf.empty())
      throw std::invalid_argument("empty pmf for variable " + v.id.name);
    double sum = 0.0;
    for (double p : v.pmf) {
      if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("pmf entry outside [0,1] for " + v.id.name);
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("pmf of " + v.id.name + " does not sum to 1");
  }

  const std::vector<int> card = system_cardinalities(spec);
  const int n_exo = static_cast<int>(spec.exogenous.size());
  for (std::size_t e = 0; e < spec.equations.size(); ++e) {
    const Equation& eq = spec.equations[e];
    const int target = n_exo + static_cast<int>(e);
    if (eq.target.index != target)
      throw std::invalid_argument("equation target " + eq.target.name +
                                  " out of declaration order");
    if (eq.target.name.empty()) throw std::invalid_argument("empty variable name");
    for (int a : eq.args)
      if (a < 0 || a >= target)
        throw std::invalid_argument("equation for " + eq.target.name +
                                    " references undeclared variable " +
                                    std::to_string(a));
    switch (eq.fn) {
      case Func::kXor:
        if (eq.args.size() != 2)
          throw std::invalid_argument("XOR takes exactly two arguments");
        for (int a : eq.args)
          if (card[static_cast<std::size_t>(a)] != 2)
            throw std::invalid_argument("XOR arguments must be binary");
        break;
      case Func::kParity:
        if (eq.args.empty())
          throw std::invalid_argument("PARITY needs at least one argument");
        break;
      case Func::kSum:
        if (eq.args.empty())
          throw std::invalid_argument("SUM needs at least one argument");
        break;
      case Func::kSumMod:
        if (eq.args.empty())
          throw std::invalid_argument("SUM_MOD needs at least one argument");
        if (eq.modulus < 2)
          throw std::invalid_argument("SUM_MOD modulus must be >= 2");
        break;
      case Func::kIdentity:
      case Func::kNoisyCopy:
        if (eq.args.size() != 1)
          throw std::invalid_argument(std::string(func_name(eq.fn)) +
                                      " takes exactly one argument");
        if (eq.fn == Func::kNoisyCopy &&
            (eq.flip_prob < 0.0 || eq.flip_prob > 1.0))
          throw std::invalid_argument("flip probability outside [0,1]");
        break;
    }
  }

  if (spec.observed.empty())
    throw std::invalid_argument("system observes no variables");
  for (std::size_t i = 0; i < spec.observed.size(); ++i) {
    const int v = spec.observed[i];
    if (v < 0 || v >= total)
      throw std::invalid_argument("observed index out of range");
    if (i > 0 && spec.observed[i - 1] >= v)
      throw std::invalid_argument("observed indices must be ascending");
  }
}

std::vector<int> system_cardinalities(const SystemSpec& spec) {
  std::vector<int> card;
  card.reserve(static_cast<std::size_t>(spec.variable_count()));
  for (const ExogenousVar& v : spec.exogenous)
    card.push_back(static_cast<int>(v.pmf.size()));
  for (const Equation& eq : spec.equations) {
    switch (eq.fn) {
      case Func::kXor:
      case Func::kParity:
        card.push_back(2);
        break;
      case Func::kSum: {
        int top = 0;
        for (int a : eq.args) top += card[static_cast<std::size_t>(a)] - 1;
        card.push_back(top + 1);
        break;
      }
      case Func::kSumMod:
        card.push_back(eq.modulus);
        break;
      case Func::kIdentity:
      case Func::kNoisyCopy:
        card.push_back(card[static_cast<std::size_t>(eq.args[0])]);
        break;
    }
  }
  return card;
}

namespace {

/// Deterministic part of one equation; `noise_shift` is the NOISY_COPY
/// cyclic category shift (0 = faithful copy).
int eval_equation(const Equation& eq, std::span<const int> values,
                  int out_card, int noise_shift) {
  switch (eq.fn) {
    case Func::kXor:
      return values[static_cast<std::size_t>(eq.args[0])] ^
             values[static_cast<std::size_t>(eq.args[1])];
    case Func::kParity: {
      int sum = 0;
      for (int a : eq.args) sum += values[static_cast<std::size_t>(a)];
      return sum & 1;
    }
    case Func::kSum: {
      int sum = 0;
      for (int a : eq.args) sum += values[static_cast<std::size_t>(a)];
      return sum;
    }
    case Func::kSumMod: {
      int sum = 0;
      for (int a : eq.args) sum += values[static_cast<std::size_t>(a)];
      return sum % eq.modulus;
    }
    case Func::kIdentity:
      return values[static_cast<std::size_t>(eq.args[0])];
    case Func::kNoisyCopy:
      return (values[static_cast<std::size_t>(eq.args[0])] + noise_shift) %
             out_card;
  }
  return 0;
}

struct ObservedLayout {
  std::vector<VariableId> vars;   // renumbered 0..k-1, names preserved
  std::vector<int> internal;     // internal index per observed position
  Alphabet alphabet;
};

ObservedLayout observed_layout(const SystemSpec& spec,
                               const std::vector<int>& card) {
  ObservedLayout out;
  std::vector<int> obs_card;
  for (std::size_t i = 0; i < spec.observed.size(); ++i) {
    const int internal = spec.observed[i];
    const std::string& name =
        internal < static_cast<int>(spec.exogenous.size())
            ? spec.exogenous[static_cast<std::size_t>(internal)].id.name
            : spec.equations[static_cast<std::size_t>(
                                 internal - static_cast<int>(spec.exogenous.size()))]
                  .target.name;
    out.vars.push_back(VariableId{static_cast<int>(i), name});
    out.internal.push_back(internal);
    obs_card.push_back(card[static_cast<std::size_t>(internal)]);
  }
  out.alphabet = Alphabet(obs_card);
  return out;
}

/// Draw one category from a pmf given a uniform [0,1) variate.
int draw_category(const std::vector<double>& pmf, double u) {
  double acc = 0.0;
  for (std::size_t v = 0; v + 1 < pmf.size(); ++v) {
    acc += pmf[v];
    if (u < acc) return static_cast<int>(v);
  }
  return static_cast<int>(pmf.size()) - 1;
}

/// Draw the NOISY_COPY shift: 0 with probability 1-eps, otherwise uniform
/// over 1..k-1.
int draw_shift(double eps, int out_card, double u) {
  if (out_card < 2 || u >= eps) return 0;
  const int shift = 1 + static_cast<int>(u / eps * (out_card - 1));
  return std::min(shift, out_card - 1);
}

void propagate_row(const SystemSpec& spec, const std::vector<int>& card,
                   std::uint64_t seed, std::int64_t t, std::span<int> values) {
  const int n_exo = static_cast<int>(spec.exogenous.size());
  for (int v = 0; v < n_exo; ++v) {
    const double u = rng::to_unit(rng::substream_key(
        seed, static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(t)));
    values[static_cast<std::size_t>(v)] =
        draw_category(spec.exogenous[static_cast<std::size_t>(v)].pmf, u);
  }
  for (std::size_t e = 0; e < spec.equations.size(); ++e) {
    const Equation& eq = spec.equations[e];
    const int target = n_exo + static_cast<int>(e);
    const int out_card = card[static_cast<std::size_t>(target)];
    int shift = 0;
    if (eq.fn == Func::kNoisyCopy && eq.flip_prob > 0.0) {
      const double u = rng::to_unit(
          rng::substream_key(seed, static_cast<std::uint64_t>(target),
                             static_cast<std::uint64_t>(t)));
      shift = draw_shift(eq.flip_prob, out_card, u);
    }
    values[static_cast<std::size_t>(target)] =
        eval_equation(eq, values, out_card, shift);
  }
}

DataMatrix sample_impl(const SystemSpec& spec, std::int64_t rows,
                       std::uint64_t seed, int threads) {
  validate(spec);
  if (rows < 1) throw std::invalid_argument("sample count must be >= 1");

  const std::vector<int> card = system_cardinalities(spec);
  ObservedLayout layout = observed_layout(spec, card);
  const std::size_t n_obs = layout.internal.size();

  std::vector<std::int32_t> values(n_obs * static_cast<std::size_t>(rows));

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (std::int64_t t = 0; t < rows; ++t) {
    std::array<int, kMaxVariables> row{};
    propagate_row(spec, card, seed, t,
                  std::span<int>(row.data(),
                                 static_cast<std::size_t>(spec.variable_count())));
    for (std::size_t v = 0; v < n_obs; ++v)
      values[v * static_cast<std::size_t>(rows) + static_cast<std::size_t>(t)] =
          static_cast<std::int32_t>(
              row[static_cast<std::size_t>(layout.internal[v])]);
  }
  (void)threads;

  return DataMatrix(std::move(layout.vars), std::move(layout.alphabet),
                    std::move(values), rows);
}

}  // namespace

JointDistribution enumerate_joint(const SystemSpec& spec) {
  validate(spec);
  const std::vector<int> card = system_cardinalities(spec);
  const int n_exo = static_cast<int>(spec.exogenous.size());

  // Enumeration grid: exogenous variables plus one latent shift dimension
  // per stochastic NOISY_COPY equation.
  struct Dim {
    int variable;   // internal index (exogenous) or -1
    int equation;   // equation index (noise) or -1
    int size;
  };
  std::vector<Dim> dims;
  for (int v = 0; v < n_exo; ++v)
    dims.push_back({v, -1, card[static_cast<std::size_t>(v)]});
  for (std::size_t e = 0; e < spec.equations.size(); ++e) {
    const Equation& eq = spec.equations[e];
    const int out_card = card[static_cast<std::size_t>(n_exo + static_cast<int>(e))];
    if (eq.fn == Func::kNoisyCopy && eq.flip_prob > 0.0 && out_card > 1)
      dims.push_back({-1, static_cast<int>(e), out_card});
  }

  std::uint64_t grid = 1;
  for (const Dim& d : dims) {
    grid *= static_cast<std::uint64_t>(d.size);
    if (grid > kMaxTableCells)
      throw CapacityError("enumeration grid exceeds 2^24 configurations");
  }

  ObservedLayout layout = observed_layout(spec, card);
  const std::uint64_t cells = layout.alphabet.table_size();
  std::vector<double> table(cells, 0.0);

  std::vector<std::uint64_t> obs_strides(layout.internal.size(), 1);
  for (std::size_t i = layout.internal.size() - 1; i-- > 0;)
    obs_strides[i] = obs_strides[i + 1] *
                     static_cast<std::uint64_t>(layout.alphabet[static_cast<int>(i) + 1]);

  std::vector<int> digit(dims.size(), 0);
  std::vector<int> values(static_cast<std::size_t>(spec.variable_count()), 0);
  std::vector<int> shifts(spec.equations.size(), 0);
  for (std::uint64_t it = 0; it < grid; ++it) {
    double prob = 1.0;
    for (std::size_t d = 0; d < dims.size(); ++d) {
      const int v = digit[d];
      if (dims[d].variable >= 0) {
        prob *= spec.exogenous[static_cast<std::size_t>(dims[d].variable)]
                    .pmf[static_cast<std::size_t>(v)];
        values[static_cast<std::size_t>(dims[d].variable)] = v;
      } else {
        const Equation& eq =
            spec.equations[static_cast<std::size_t>(dims[d].equation)];
        prob *= v == 0 ? 1.0 - eq.flip_prob
                       : eq.flip_prob / static_cast<double>(dims[d].size - 1);
        shifts[static_cast<std::size_t>(dims[d].equation)] = v;
      }
    }

    if (prob > 0.0) {
      for (std::size_t e = 0; e < spec.equations.size(); ++e) {
        const int target = n_exo + static_cast<int>(e);
        const int out_card = card[static_cast<std::size_t>(target)];
        values[static_cast<std::size_t>(target)] =
            eval_equation(spec.equations[e], values, out_card, shifts[e]);
      }
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < layout.internal.size(); ++i)
        code += obs_strides[i] *
                static_cast<std::uint64_t>(
                    values[static_cast<std::size_t>(layout.internal[i])]);
      table[code] += prob;
    }

    for (std::size_t d = dims.size(); d-- > 0;) {
      if (++digit[d] < dims[d].size) break;
      digit[d] = 0;
    }
  }

  return JointDistribution(std::move(layout.vars), std::move(layout.alphabet),
                           std::move(table));
}

DataMatrix sample(const SystemSpec& spec, std::int64_t rows,
                  std::uint64_t seed, int threads) {
  return sample_impl(spec, rows, seed, resolve_threads(threads));
}

DataMatrix sample_serial(const SystemSpec& spec, std::int64_t rows,
                         std::uint64_t seed) {
  return sample_impl(spec, rows, seed, 1);
}

namespace {

std::vector<double> bernoulli(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("Bernoulli parameter outside [0,1]");
  return {1.0 - p, p};
}

double required(const std::map<std::string, double>& params,
                const std::string& key, double fallback = std::nan("")) {
  const auto it = params.find(key);
  if (it != params.end()) return it->second;
  if (std::isnan(fallback))
    throw std::invalid_argument("missing parameter --" + key);
  return fallback;
}

int required_int(const std::map<std::string, double>& params,
                 const std::string& key, double fallback = std::nan("")) {
  const double v = required(params, key, fallback);
  const int i = static_cast<int>(std::llround(v));
  if (std::abs(v - i) > 1e-9)
    throw std::invalid_argument("parameter --" + key + " must be an integer");
  return i;
}

}  // namespace

BuiltinSystem make_xor_system(double p1, double p2) {
  SystemSpec spec;
  spec.exogenous = {{{0, "X1"}, bernoulli(p1)}, {{1, "X2"}, bernoulli(p2)}};
  spec.equations = {{{2, "Y"}, Func::kXor, {0, 1}}};
  spec.observed = {0, 1, 2};
  validate(spec);
  GroundTruth truth{{{VarSet::of({0, 1}), 2, EdgeKind::kSynergistic}}};
  return {std::move(spec), std::move(truth)};
}

BuiltinSystem make_parity_system(int k) {
  if (k < 2 || k > kMaxVariables - 1)
    throw std::invalid_argument("parity source count must be in [2, 63]");
  SystemSpec spec;
  VarSet sources;
  for (int i = 0; i < k; ++i) {
    spec.exogenous.push_back({{i, "X" + std::to_string(i + 1)}, bernoulli(0.5)});
    sources.add(i);
  }
  Equation eq;
  eq.target = {k, "Y"};
  eq.fn = Func::kParity;
  eq.args.resize(static_cast<std::size_t>(k));
  std::iota(eq.args.begin(), eq.args.end(), 0);
  spec.equations = {std::move(eq)};
  spec.observed.resize(static_cast<std::size_t>(k) + 1);
  std::iota(spec.observed.begin(), spec.observed.end(), 0);
  validate(spec);
  GroundTruth truth{{{sources, k, EdgeKind::kSynergistic}}};
  return {std::move(spec), std::move(truth)};
}

BuiltinSystem make_additive_system() {
  SystemSpec spec;
  spec.exogenous = {{{0, "X1"}, bernoulli(0.5)}, {{1, "X2"}, bernoulli(0.5)}};
  spec.equations = {{{2, "Y"}, Func::kSum, {0, 1}}};
  spec.observed = {0, 1, 2};
  validate(spec);
  GroundTruth truth{{{VarSet::single(0), 2, EdgeKind::kDirect},
                     {VarSet::single(1), 2, EdgeKind::kDirect}}};
  return {std::move(spec), std::move(truth)};
}

BuiltinSystem make_mediated_xor_system(int p, int n) {
  if (p < 2) throw std::invalid_argument("mediated_xor needs p >= 2");
  if (n < p) throw std::invalid_argument("mediated_xor needs n >= p");
  if (n > 20) throw std::invalid_argument("mediated_xor supports n <= 20");

  // Internal order: X1..Xp, E_{p+1}..E_n, then X_{p+1}..X_n (mediators),
  // W_2..W_p (hidden XOR terms), Y. Observed: X1..Xn, Y.
  SystemSpec spec;
  int next = 0;
  for (int i = 1; i <= p; ++i)
    spec.exogenous.push_back({{next++, "X" + std::to_string(i)}, bernoulli(0.5)});
  for (int k = p + 1; k <= n; ++k)
    spec.exogenous.push_back({{next++, "E" + std::to_string(k)}, bernoulli(0.5)});

  std::vector<int> mediators;
  for (int k = p + 1; k <= n; ++k) {
    const int noise = p + (k - p - 1);
    spec.equations.push_back(
        {{next, "X" + std::to_string(k)}, Func::kSum, {0, noise}});
    mediators.push_back(next++);
  }
  std::vector<int> sum_args;
  for (int i = 2; i <= p; ++i) {
    spec.equations.push_back(
        {{next, "W" + std::to_string(i)}, Func::kXor, {0, i - 1}});
    sum_args.push_back(next++);
  }
  for (int m : mediators) sum_args.push_back(m);
  const int y = next;
  spec.equations.push_back({{y, "Y"}, Func::kSum, std::move(sum_args)});

  spec.observed.clear();
  for (int i = 0; i < p; ++i) spec.observed.push_back(i);
  for (int m : mediators) spec.observed.push_back(m);
  spec.observed.push_back(y);
  std::sort(spec.observed.begin(), spec.observed.end());
  validate(spec);

  // Observed indexing: X1..Xn are 0..n-1, Y is n.
  GroundTruth truth;
  const int y_obs = n;
  for (int i = 2; i <= p; ++i)
    truth.hyperedges.push_back(
        {VarSet::of({0, i - 1}), y_obs, EdgeKind::kSynergistic});
  for (int k = p + 1; k <= n; ++k) {
    truth.hyperedges.push_back({VarSet::single(k - 1), y_obs, EdgeKind::kDirect});
    truth.hyperedges.push_back({VarSet::single(0), k - 1, EdgeKind::kDirect});
  }
  truth.hyperedges.push_back({VarSet::single(0), y_obs, EdgeKind::kMediated});
  return {std::move(spec), std::move(truth)};
}

BuiltinSystem make_neuron_xor_system(double eps_y, double eps_z) {
  if (eps_y < 0.0 || eps_y > 1.0 || eps_z < 0.0 || eps_z > 1.0)
    throw std::invalid_argument("noise probabilities must be in [0,1]");
  SystemSpec spec;
  spec.exogenous = {{{0, "X1"}, bernoulli(0.5)}, {{1, "X2"}, bernoulli(0.5)}};
  Equation w{{2, "W"}, Func::kXor, {0, 1}};
  Equation y{{3, "Y"}, Func::kNoisyCopy, {2}};
  y.flip_prob = eps_y;
  Equation z{{4, "Z"}, Func::kNoisyCopy, {3}};
  z.flip_prob = eps_z;
  spec.equations = {std::move(w), std::move(y), std::move(z)};
  spec.observed = {0, 1, 3, 4};
  validate(spec);

  // Observed indexing: X1=0, X2=1, Y=2, Z=3.
  GroundTruth truth{{{VarSet::of({0, 1}), 2, EdgeKind::kSynergistic},
                     {VarSet::single(2), 3, EdgeKind::kDirect},
                     {VarSet::of({0, 1}), 3, EdgeKind::kMediated}}};
  return {std::move(spec), std::move(truth)};
}

BuiltinSystem make_builtin(const std::string& name,
                           const std::map<std::string, double>& params) {
  std::string key = name;
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "xor")
    return make_xor_system(required(params, "p1", 0.5),
                           required(params, "p2", 0.5));
  if (key == "parity") return make_parity_system(required_int(params, "k", 3));
  if (key == "additive") return make_additive_system();
  if (key == "mediated_xor")
    return make_mediated_xor_system(required_int(params, "p", 2),
                                    required_int(params, "n", 3));
  if (key == "neuron_xor")
    return make_neuron_xor_system(required(params, "eps_y", 0.1),
                                  required(params, "eps_z", 0.1));
  throw std::invalid_argument("unknown system: " + name);
}

std::vector<std::string> builtin_names() {
  return {"xor", "parity", "additive", "mediated-xor", "neuron-xor"};
}

namespace {

json spec_to_json(const SystemSpec& spec) {
  json doc;
  doc["exogenous"] = json::array();
  for (const ExogenousVar& v : spec.exogenous)
    doc["exogenous"].push_back(
        {{"id", v.id.index}, {"name", v.id.name}, {"pmf", v.pmf}});
  doc["equations"] = json::array();
  for (const Equation& eq : spec.equations) {
    json e = {{"id", eq.target.index},
              {"name", eq.target.name},
              {"function", func_name(eq.fn)},
              {"args", eq.args}};
    if (eq.fn == Func::kSumMod) e["modulus"] = eq.modulus;
    if (eq.fn == Func::kNoisyCopy) e["flip_prob"] = eq.flip_prob;
    doc["equations"].push_back(std::move(e));
  }
  doc["observed"] = spec.observed;
  return doc;
}

}  // namespace

std::string to_json_string(const SystemSpec& spec) {
  return spec_to_json(spec).dump(2);
}

SystemSpec system_from_json_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("system document: ") + e.what());
  }
  try {
    SystemSpec spec;
    for (const json& v : doc.at("exogenous")) {
      ExogenousVar exo;
      exo.id = {v.at("id").get<int>(), v.at("name").get<std::string>()};
      exo.pmf = v.at("pmf").get<std::vector<double>>();
      spec.exogenous.push_back(std::move(exo));
    }
    for (const json& e : doc.at("equations")) {
      Equation eq;
      eq.target = {e.at("id").get<int>(), e.at("name").get<std::string>()};
      eq.fn = func_from_name(e.at("function").get<std::string>());
      eq.args = e.at("args").get<std::vector<int>>();
      if (e.contains("modulus")) eq.modulus = e.at("modulus").get<int>();
      if (e.contains("flip_prob")) eq.flip_prob = e.at("flip_prob").get<double>();
      spec.equations.push_back(std::move(eq));
    }
    spec.observed = doc.at("observed").get<std::vector<int>>();
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(std::string("system document: ") + e.what());
  }
}

std::string to_json_string(const SystemSpec& spec, const GroundTruth& truth) {
  json doc;
  doc["format"] = "octe-ground-truth/1";
  doc["system"] = spec_to_json(spec);
  doc["hyperedges"] = json::array();
  for (const TruthEdge& e : truth.hyperedges)
    doc["hyperedges"].push_back({{"tail", e.tail.indices()},
                                 {"head", e.head},
                                 {"kind", edge_kind_name(e.kind)}});
  return doc.dump(2);
}

}  // namespace octe
