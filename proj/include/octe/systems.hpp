#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "octe/probcore.hpp"

namespace octe {

/// Deterministic equation kinds. XOR takes two binary arguments; PARITY is
/// the sum of its arguments modulo 2; SUM is plain integer addition (the
/// output alphabet widens accordingly); SUM_MOD reduces the sum modulo m;
/// IDENTITY copies its argument; NOISY_COPY copies and then, with
/// probability flip_prob, replaces the value by a uniformly chosen other
/// category.
enum class Func { kXor, kParity, kSum, kSumMod, kIdentity, kNoisyCopy };

const char* func_name(Func fn);
Func func_from_name(const std::string& name);

struct ExogenousVar {
  VariableId id;
  std::vector<double> pmf;  // category probabilities, sum to 1
};

struct Equation {
  VariableId target;
  Func fn = Func::kIdentity;
  std::vector<int> args;   // indices of previously declared variables
  int modulus = 0;         // SUM_MOD only
  double flip_prob = 0.0;  // NOISY_COPY only
};

/// Structural-equation description of a synthetic system. Variables are
/// indexed in declaration order: exogenous variables first, then equation
/// targets. Only `observed` variables appear in enumerated pmfs and sampled
/// data; they are renumbered consecutively (preserving declaration order) on
/// output.
struct SystemSpec {
  std::vector<ExogenousVar> exogenous;
  std::vector<Equation> equations;
  std::vector<int> observed;

  int variable_count() const {
    return static_cast<int>(exogenous.size() + equations.size());
  }
};

/// Throws std::invalid_argument on any structural violation (unknown or
/// forward references, bad arities, probabilities outside [0,1], ...).
void validate(const SystemSpec& spec);

/// Alphabet of every variable (exogenous and derived), in internal order.
std::vector<int> system_cardinalities(const SystemSpec& spec);

enum class EdgeKind { kDirect, kSynergistic, kMediated };

const char* edge_kind_name(EdgeKind kind);
EdgeKind edge_kind_from_name(const std::string& name);

/// One true hyperedge of the generating structure, in observed indexing.
/// Mediated edges document indirect influence; inference is not expected to
/// report them.
struct TruthEdge {
  VarSet tail;
  int head = -1;
  EdgeKind kind = EdgeKind::kDirect;

  friend bool operator==(const TruthEdge&, const TruthEdge&) = default;
};

struct GroundTruth {
  std::vector<TruthEdge> hyperedges;
};

/// Exact pmf over the observed variables, obtained by summing exogenous
/// (and noise) probabilities over every configuration. Throws CapacityError
/// when the enumeration grid or the observed table exceeds 2^24 cells.
JointDistribution enumerate_joint(const SystemSpec& spec);

/// T i.i.d. draws over the observed variables. Every (variable, sample)
/// pair draws from its own counter-mode substream of `seed`, so the result
/// is bitwise reproducible under any parallel schedule.
DataMatrix sample(const SystemSpec& spec, std::int64_t rows,
                  std::uint64_t seed, int threads = 0);

/// Single-threaded reference implementation; produces the exact same matrix
/// as sample().
DataMatrix sample_serial(const SystemSpec& spec, std::int64_t rows,
                         std::uint64_t seed);

struct BuiltinSystem {
  SystemSpec spec;
  GroundTruth truth;
};

// Built-in systems. Be(p) puts probability p on category 1.
BuiltinSystem make_xor_system(double p1, double p2);
BuiltinSystem make_parity_system(int k);
BuiltinSystem make_additive_system();
BuiltinSystem make_mediated_xor_system(int p, int n);
BuiltinSystem make_neuron_xor_system(double eps_y, double eps_z);

/// Dispatch by name: xor(p1,p2), parity(k), additive, mediated_xor(p,n),
/// neuron_xor(eps_y,eps_z). Dashes and underscores in `name` are
/// interchangeable. Unknown names or missing/bad parameters throw
/// std::invalid_argument.
BuiltinSystem make_builtin(const std::string& name,
                           const std::map<std::string, double>& params);

/// Names of all builtins, for CLI help.
std::vector<std::string> builtin_names();

// JSON document (schema: exogenous / equations / observed arrays, function
// names as uppercase strings).
std::string to_json_string(const SystemSpec& spec);
SystemSpec system_from_json_string(const std::string& text);

/// Ground-truth document written next to generated data sets.
std::string to_json_string(const SystemSpec& spec, const GroundTruth& truth);

}  // namespace octe
