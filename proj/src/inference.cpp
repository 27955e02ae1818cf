#include "octe/inference.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "octe/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace octe {

namespace {

int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

void check_test_config(const TestConfig& config) {
  if (config.permutations < 1)
    throw std::invalid_argument("permutation count must be >= 1");
  if (!(config.theta > 0.0 && config.theta < 1.0))
    throw std::invalid_argument("significance level must be in (0,1)");
}

void check_tail_target(VarSet tail, int target, VarSet candidates) {
  if (tail.empty()) throw std::invalid_argument("tail set is empty");
  if (!tail.subset_of(candidates))
    throw std::invalid_argument("tail is not a subset of the candidates");
  if (candidates.contains(target))
    throw std::invalid_argument("target cannot be a candidate source");
  if (tail.contains(target))
    throw std::invalid_argument("target cannot be in the tail");
}

}  // namespace

std::vector<VarSet> enumerate_conditions(VarSet pool,
                                         std::optional<int> max_size) {
  const std::vector<int> indices = pool.indices();
  const int n = static_cast<int>(indices.size());
  const int k_max = max_size ? std::min(*max_size, n) : n;
  if (k_max < 0) throw std::invalid_argument("negative condition-size cap");

  std::uint64_t total = 0;
  {
    // sum of C(n, k) for k <= k_max, with overflow guard
    std::uint64_t binom = 1;
    for (int k = 0; k <= k_max; ++k) {
      total += binom;
      if (total > kMaxSubsetEvaluations)
        throw CapacityError(
            "subset enumeration over " + std::to_string(n) +
            " variables exceeds the evaluation limit; set max_condition_size "
            "or reduce k_max");
      binom = binom * static_cast<std::uint64_t>(n - k) /
              static_cast<std::uint64_t>(k + 1);
    }
  }

  std::vector<VarSet> out;
  out.reserve(total);
  out.push_back(VarSet{});
  std::vector<int> comb;
  for (int k = 1; k <= k_max; ++k) {
    comb.resize(static_cast<std::size_t>(k));
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      VarSet s;
      for (int c : comb) s.add(indices[static_cast<std::size_t>(c)]);
      out.push_back(s);
      // next combination in lexicographic order
      int i = k - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

double transfer_entropy(const JointDistribution& dist, int source, int target,
                        VarSet all_sources) {
  if (!all_sources.contains(source))
    throw std::invalid_argument("source is not among the candidate sources");
  if (all_sources.contains(target))
    throw std::invalid_argument("target cannot be a candidate source");
  return cmi(dist, VarSet::single(source), VarSet::single(target),
             all_sources.without(source));
}

double transfer_entropy(const DataMatrix& data, int source, int target,
                        VarSet all_sources) {
  if (!all_sources.contains(source))
    throw std::invalid_argument("source is not among the candidate sources");
  if (all_sources.contains(target))
    throw std::invalid_argument("target cannot be a candidate source");
  return cmi(data, VarSet::single(source), VarSet::single(target),
             all_sources.without(source));
}

HyperedgeDecision octe_exact(const JointDistribution& dist, VarSet tail,
                             int target, VarSet candidates,
                             const ExactOptions& options) {
  check_tail_target(tail, target, candidates);
  dist.position_of(target);  // membership check

  HyperedgeDecision decision;
  decision.tail = tail;
  decision.head = target;
  decision.octe = std::numeric_limits<double>::infinity();

  const std::vector<VarSet> conditions =
      enumerate_conditions(candidates - tail, options.max_condition_size);
  decision.subset_trace.reserve(conditions.size());
  for (const VarSet& s : conditions) {
    const double estimate = cmi(dist, tail, VarSet::single(target), s);
    decision.subset_trace.push_back({s, estimate, std::nullopt});
    if (estimate < decision.octe) {
      decision.octe = estimate;
      decision.argmin_condition = s;
    }
  }
  decision.causal = decision.octe > options.tolerance;
  return decision;
}

namespace detail {

PermutationProblem build_problem(const DataMatrix& data, VarSet tail,
                                 int target, VarSet condition) {
  PermutationProblem problem;
  problem.rows = data.rows();

  const auto codes_of = [&data](VarSet vars, std::int64_t& levels) {
    std::vector<std::uint32_t> codes(static_cast<std::size_t>(data.rows()), 0);
    levels = 1;
    for (int idx : vars.indices()) {
      const int pos = data.position_of(idx);
      const int card = data.alphabet()[pos];
      const auto col = data.column(pos);
      for (std::size_t t = 0; t < codes.size(); ++t)
        codes[t] = codes[t] * static_cast<std::uint32_t>(card) +
                   static_cast<std::uint32_t>(col[t]);
      levels *= card;
      if (levels > static_cast<std::int64_t>(kMaxTableCells))
        throw CapacityError("contingency table exceeds 2^24 cells");
    }
    return codes;
  };

  problem.tail_codes = codes_of(tail, problem.n_tail);
  std::int64_t n_target = 1;
  std::vector<std::uint32_t> target_codes =
      codes_of(VarSet::single(target), n_target);
  std::int64_t n_condition = 1;
  std::vector<std::uint32_t> cond_codes = codes_of(condition, n_condition);
  problem.n_target = n_target;
  problem.n_condition = n_condition;
  if (problem.n_tail * n_target * n_condition >
      static_cast<std::int64_t>(kMaxTableCells))
    throw CapacityError("contingency table exceeds 2^24 cells");

  problem.rest_codes.resize(static_cast<std::size_t>(problem.rows));
  for (std::size_t t = 0; t < problem.rest_codes.size(); ++t)
    problem.rest_codes[t] =
        target_codes[t] * static_cast<std::uint32_t>(n_condition) +
        cond_codes[t];

  // Observed plug-in estimate, through the shared CMI kernel.
  const std::int64_t cells =
      problem.n_tail * problem.n_target * problem.n_condition;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(cells), 0);
  const std::uint32_t n_rest =
      static_cast<std::uint32_t>(problem.n_target * problem.n_condition);
  for (std::size_t t = 0; t < problem.rest_codes.size(); ++t)
    ++counts[problem.tail_codes[t] * n_rest + problem.rest_codes[t]];
  problem.observed = cmi_from_counts(counts, problem.n_tail, problem.n_target,
                                     problem.n_condition, problem.rows);
  return problem;
}

namespace {

/// One null replicate: shuffle a scratch copy of the tail codes and
/// re-estimate. Scratch buffers are caller-provided so threads reuse them.
double null_replicate(const PermutationProblem& problem, std::uint64_t seed,
                      std::uint64_t stream, std::int64_t replicate,
                      std::vector<std::uint32_t>& shuffled,
                      std::vector<std::int64_t>& counts) {
  shuffled = problem.tail_codes;
  rng::SplitMix64 gen(rng::substream_key(
      seed, stream, static_cast<std::uint64_t>(replicate)));
  rng::shuffle(std::span<std::uint32_t>(shuffled), gen);

  std::fill(counts.begin(), counts.end(), 0);
  const std::uint32_t n_rest =
      static_cast<std::uint32_t>(problem.n_target * problem.n_condition);
  for (std::size_t t = 0; t < shuffled.size(); ++t)
    ++counts[shuffled[t] * n_rest + problem.rest_codes[t]];
  return cmi_from_counts(counts, problem.n_tail, problem.n_target,
                         problem.n_condition, problem.rows);
}

}  // namespace

std::int64_t null_exceed_count_serial(const PermutationProblem& problem,
                                      int replicates, std::uint64_t seed,
                                      std::uint64_t stream) {
  const std::int64_t cells =
      problem.n_tail * problem.n_target * problem.n_condition;
  std::vector<std::uint32_t> shuffled;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(cells));
  std::int64_t exceed = 0;
  for (std::int64_t r = 0; r < replicates; ++r) {
    const double estimate =
        null_replicate(problem, seed, stream, r, shuffled, counts);
    if (estimate >= problem.observed) ++exceed;
  }
  return exceed;
}

std::int64_t null_exceed_count_parallel(const PermutationProblem& problem,
                                        int replicates, std::uint64_t seed,
                                        std::uint64_t stream, int threads) {
  const std::int64_t cells =
      problem.n_tail * problem.n_target * problem.n_condition;
  std::int64_t exceed = 0;
#ifdef _OPENMP
#pragma omp parallel num_threads(resolve_threads(threads)) \
    reduction(+ : exceed)
  {
    std::vector<std::uint32_t> shuffled;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(cells));
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < replicates; ++r) {
      const double estimate =
          null_replicate(problem, seed, stream, r, shuffled, counts);
      if (estimate >= problem.observed) ++exceed;
    }
  }
#else
  (void)threads;
  exceed = null_exceed_count_serial(problem, replicates, seed, stream);
  (void)cells;
#endif
  return exceed;
}

}  // namespace detail

SubsetResult permutation_test(const DataMatrix& data, VarSet tail, int target,
                              VarSet condition, const TestConfig& config,
                              std::uint64_t stream) {
  check_test_config(config);
  if (tail.empty()) throw std::invalid_argument("tail set is empty");
  if (tail.contains(target) || condition.contains(target))
    throw std::invalid_argument("target overlaps tail or condition");
  if (tail.intersects(condition))
    throw std::invalid_argument("tail overlaps condition");
  if (data.rows() < 2)
    throw std::invalid_argument("permutation test needs at least two rows");

  const detail::PermutationProblem problem =
      detail::build_problem(data, tail, target, condition);
  const int threads = resolve_threads(config.threads);
  const std::int64_t exceed =
      threads == 1 ? detail::null_exceed_count_serial(
                         problem, config.permutations, config.seed, stream)
                   : detail::null_exceed_count_parallel(
                         problem, config.permutations, config.seed, stream,
                         threads);

  SubsetResult result;
  result.condition = condition;
  result.estimate = problem.observed;
  result.p_value = static_cast<double>(1 + exceed) /
                   static_cast<double>(config.permutations + 1);
  return result;
}

HyperedgeDecision decide_causal(const DataMatrix& data, VarSet tail,
                                int target, VarSet candidates,
                                const TestConfig& config, bool early_stop) {
  check_test_config(config);
  check_tail_target(tail, target, candidates);
  data.position_of(target);  // membership check

  HyperedgeDecision decision;
  decision.tail = tail;
  decision.head = target;
  decision.octe = std::numeric_limits<double>::infinity();
  decision.max_p = 0.0;
  decision.causal = true;

  const std::vector<VarSet> conditions =
      enumerate_conditions(candidates - tail, config.max_condition_size);
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    const SubsetResult result =
        permutation_test(data, tail, target, conditions[i], config,
                         static_cast<std::uint64_t>(i));
    decision.subset_trace.push_back(result);
    if (result.estimate < decision.octe) {
      decision.octe = result.estimate;
      decision.argmin_condition = result.condition;
    }
    decision.max_p = std::max(*decision.max_p, *result.p_value);
    if (*result.p_value >= config.theta) {
      decision.causal = false;
      if (early_stop) break;
    }
  }
  return decision;
}

namespace {

/// Shared discovery loop; `decide` evaluates one tail.
template <typename DecideFn>
std::vector<HyperedgeDecision> discover_impl(VarSet candidates,
                                             const DiscoverOptions& options,
                                             DecideFn&& decide) {
  if (options.k_max < 1 || options.k_max > candidates.size())
    throw std::invalid_argument("k_max must be in [1, |candidates|]");

  std::vector<VarSet> tails = enumerate_conditions(candidates, options.k_max);
  std::vector<HyperedgeDecision> decisions;
  std::vector<VarSet> causal_tails;
  for (const VarSet& tail : tails) {
    if (tail.empty()) continue;
    const bool inherited =
        std::any_of(causal_tails.begin(), causal_tails.end(),
                    [&tail](VarSet c) { return c.strict_subset_of(tail); });
    if (inherited && !options.evaluate_inherited) continue;

    HyperedgeDecision decision = decide(tail);
    decision.inherited = inherited;
    if (inherited) decision.causal = true;  // supersets of causes are causes
    if (decision.causal && !inherited) causal_tails.push_back(tail);
    decisions.push_back(std::move(decision));
  }
  classify_unique(decisions);
  return decisions;
}

}  // namespace

std::vector<HyperedgeDecision> discover(const DataMatrix& data, int target,
                                        VarSet candidates,
                                        const DiscoverOptions& options,
                                        const TestConfig& config) {
  return discover_impl(candidates, options, [&](VarSet tail) {
    return decide_causal(data, tail, target, candidates, config);
  });
}

std::vector<HyperedgeDecision> discover(const JointDistribution& dist,
                                        int target, VarSet candidates,
                                        const DiscoverOptions& options,
                                        const ExactOptions& exact) {
  return discover_impl(candidates, options, [&](VarSet tail) {
    return octe_exact(dist, tail, target, candidates, exact);
  });
}

void classify_unique(std::vector<HyperedgeDecision>& decisions) {
  for (HyperedgeDecision& d : decisions) {
    if (!d.causal) {
      d.unique = false;
      continue;
    }
    bool any_causal_subset = false;
    for (const HyperedgeDecision& other : decisions) {
      if (other.head != d.head || !other.causal) continue;
      if (other.tail.strict_subset_of(d.tail)) {
        any_causal_subset = true;
        break;
      }
    }
    d.unique = !any_causal_subset;
  }
}

}  // namespace octe
