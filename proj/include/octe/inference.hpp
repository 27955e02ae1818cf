#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "octe/probcore.hpp"

namespace octe {

/// Permutation-test configuration.
struct TestConfig {
  int permutations = 1000;               // null replicates per subset test
  double theta = 0.01;                   // significance level, in (0,1)
  std::uint64_t seed = 0;
  std::optional<int> max_condition_size; // cap on |S|; unset = unlimited
  int threads = 0;                       // 0 = all available
};

/// Options for exact-mode decisions.
struct ExactOptions {
  double tolerance = 1e-9;               // positivity threshold in bits
  std::optional<int> max_condition_size;
};

/// One conditioning subset's outcome: the information estimate and, in
/// empirical mode, its permutation p-value.
struct SubsetResult {
  VarSet condition;
  double estimate = 0.0;
  std::optional<double> p_value;

  friend bool operator==(const SubsetResult&, const SubsetResult&) = default;
};

/// Verdict for one candidate tail -> target.
///
/// octe is the minimum estimate over the evaluated conditioning subsets and
/// argmin_condition the first subset attaining it (subsets are visited in
/// increasing size, then lexicographically). causal means every subset's
/// information was significantly positive; in empirical mode max_p is the
/// hyperedge-level p-value (worst subset). inherited marks tails that
/// contain a strictly smaller causal tail.
struct HyperedgeDecision {
  VarSet tail;
  int head = -1;
  double octe = 0.0;
  VarSet argmin_condition;
  std::optional<double> max_p;
  bool causal = false;
  bool unique = false;
  bool inherited = false;
  std::vector<SubsetResult> subset_trace;

  friend bool operator==(const HyperedgeDecision&,
                         const HyperedgeDecision&) = default;
};

/// All subsets of `pool` (including the empty set) with size <= max_size,
/// ordered by increasing size, then lexicographically by ascending variable
/// index. Throws CapacityError when the enumeration would exceed
/// kMaxSubsetEvaluations.
std::vector<VarSet> enumerate_conditions(VarSet pool,
                                         std::optional<int> max_size = {});

/// I(X_i ; Y | all_sources \ {X_i}) in bits.
double transfer_entropy(const JointDistribution& dist, int source, int target,
                        VarSet all_sources);
double transfer_entropy(const DataMatrix& data, int source, int target,
                        VarSet all_sources);

/// Exact-mode decision: minimize I(tail ; target | S) over every
/// S subseteq candidates \ tail and call the tail causal iff the minimum
/// exceeds the positivity tolerance.
HyperedgeDecision octe_exact(const JointDistribution& dist, VarSet tail,
                             int target, VarSet candidates,
                             const ExactOptions& options = {});

/// Permutation test of I(tail ; target | condition) = 0. Null replicates
/// shuffle the tail columns jointly (one shared row permutation per
/// replicate), which breaks tail<->(target,condition) dependence while
/// preserving the joint structure within the tail and between target and
/// condition. p = (1 + #{null >= estimate}) / (N + 1). Replicate r draws its
/// permutation from the (config.seed, stream, r) substream, so results are
/// deterministic for any thread count.
SubsetResult permutation_test(const DataMatrix& data, VarSet tail, int target,
                              VarSet condition, const TestConfig& config,
                              std::uint64_t stream = 0);

/// Empirical decision over all conditioning subsets, visited in increasing
/// size then lexicographic order; stops at the first non-rejection unless
/// early_stop is false. Causal iff every evaluated subset rejects at theta.
HyperedgeDecision decide_causal(const DataMatrix& data, VarSet tail,
                                int target, VarSet candidates,
                                const TestConfig& config,
                                bool early_stop = true);

/// Hyperedge discovery options. Tails are enumerated by increasing
/// cardinality up to k_max; strict supersets of an already-causal tail are
/// causal by inheritance and skipped unless evaluate_inherited (--all) is
/// set, in which case they are evaluated and reported with the inherited
/// flag.
struct DiscoverOptions {
  int k_max = 3;
  bool evaluate_inherited = false;
};

std::vector<HyperedgeDecision> discover(const DataMatrix& data, int target,
                                        VarSet candidates,
                                        const DiscoverOptions& options,
                                        const TestConfig& config);
std::vector<HyperedgeDecision> discover(const JointDistribution& dist,
                                        int target, VarSet candidates,
                                        const DiscoverOptions& options,
                                        const ExactOptions& exact = {});

/// Set each decision's unique flag: causal and no proper nonempty subset of
/// the tail is causal within `decisions`. Idempotent; discover() already
/// applies it.
void classify_unique(std::vector<HyperedgeDecision>& decisions);

namespace detail {

/// Precomputed per-row codes for one (tail, target, condition) selection.
/// Null replicates only need to shuffle tail_codes.
struct PermutationProblem {
  std::vector<std::uint32_t> tail_codes;  // mixed-radix code of tail columns
  std::vector<std::uint32_t> rest_codes;  // code of (target, condition)
  std::int64_t n_tail = 1;
  std::int64_t n_target = 1;
  std::int64_t n_condition = 1;
  std::int64_t rows = 0;
  double observed = 0.0;                  // plug-in estimate on the data
};

PermutationProblem build_problem(const DataMatrix& data, VarSet tail,
                                 int target, VarSet condition);

/// Number of null replicates whose estimate is >= observed. The serial
/// variant is the reference implementation; the parallel variant distributes
/// replicates over OpenMP threads and returns the identical count.
std::int64_t null_exceed_count_serial(const PermutationProblem& problem,
                                      int replicates, std::uint64_t seed,
                                      std::uint64_t stream);
std::int64_t null_exceed_count_parallel(const PermutationProblem& problem,
                                        int replicates, std::uint64_t seed,
                                        std::uint64_t stream, int threads);

}  // namespace detail

}  // namespace octe
