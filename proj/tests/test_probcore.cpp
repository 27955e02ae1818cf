#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "octe/probcore.hpp"
#include "octe/systems.hpp"
#include "oracle.hpp"

using namespace octe;

namespace {

// Frozen oracle values (direct formula evaluation, see oracle.hpp).
constexpr double kEntropyBe08 = 0.7219280948873623;  // H(Be(0.8))
constexpr double kCaseCMiX2Y = 0.0767511229956068;   // I(X2;Y), X1~Be(.7) X2~Be(.8)
constexpr double kCaseCMiPairY = 0.9580420222262995; // I({X1,X2};Y), same system

JointDistribution bernoulli_dist(double p) {
  return JointDistribution({{0, "B"}}, Alphabet({2}), {1.0 - p, p});
}

/// Permute the category codes of one variable; information functionals must
/// not care.
JointDistribution relabel(const JointDistribution& dist, int position,
                          const std::vector<int>& perm) {
  const Alphabet& alphabet = dist.alphabet();
  const int k = alphabet.size();
  std::vector<double> out(dist.probabilities().size());
  std::vector<int> digits(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t code = 0;
    for (int d = 0; d < k; ++d) {
      const int v = d == position
                        ? perm[static_cast<std::size_t>(digits[static_cast<std::size_t>(d)])]
                        : digits[static_cast<std::size_t>(d)];
      code = code * static_cast<std::size_t>(alphabet[d]) +
             static_cast<std::size_t>(v);
    }
    out[code] = dist.probabilities()[i];
    for (int d = k; d-- > 0;) {
      if (++digits[static_cast<std::size_t>(d)] < alphabet[d]) break;
      digits[static_cast<std::size_t>(d)] = 0;
    }
  }
  return JointDistribution(dist.variables(), alphabet, std::move(out));
}

}  // namespace

TEST_CASE("marginalize: uniform XOR marginals are uniform") {
  const JointDistribution dist = oracle::to_distribution(oracle::xor_pmf(0.5, 0.5));
  const JointDistribution y = marginalize(dist, VarSet::single(2));
  REQUIRE(y.variables().size() == 1);
  CHECK(y.variables()[0].name == "V2");
  CHECK(y.probabilities()[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(y.probabilities()[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("marginalize: keeping every variable is the identity") {
  const JointDistribution dist = oracle::to_distribution(oracle::xor_pmf(0.7, 0.8));
  CHECK(marginalize(dist, dist.variable_set()) == dist);
}

TEST_CASE("marginalize: X1 marginal of the skewed XOR system") {
  const JointDistribution dist = oracle::to_distribution(oracle::xor_pmf(0.7, 0.8));
  const JointDistribution x1 = marginalize(dist, VarSet::single(0));
  CHECK(x1.probabilities()[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(x1.probabilities()[1] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("marginalize: error contracts") {
  const JointDistribution dist = oracle::to_distribution(oracle::xor_pmf(0.5, 0.5));
  CHECK_THROWS_AS(marginalize(dist, VarSet::single(7)), std::domain_error);
  CHECK_THROWS_AS(marginalize(dist, VarSet{}), std::invalid_argument);
}

TEST_CASE("empirical_distribution: repeated XOR rows give the uniform pmf") {
  // 4 distinct XOR rows, each 25 times
  std::vector<std::int32_t> x1, x2, y;
  for (int r = 0; r < 4; ++r) {
    const int a = r >> 1, b = r & 1;
    for (int i = 0; i < 25; ++i) {
      x1.push_back(a);
      x2.push_back(b);
      y.push_back(a ^ b);
    }
  }
  std::vector<std::int32_t> values = x1;
  values.insert(values.end(), x2.begin(), x2.end());
  values.insert(values.end(), y.begin(), y.end());
  const DataMatrix data({{0, "X1"}, {1, "X2"}, {2, "Y"}}, Alphabet({2, 2, 2}),
                        values, 100);

  const JointDistribution dist = empirical_distribution(data, {0, 1, 2});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const std::size_t on = static_cast<std::size_t>(((a * 2) + b) * 2 + (a ^ b));
      const std::size_t off = static_cast<std::size_t>(((a * 2) + b) * 2 + 1 - (a ^ b));
      CHECK(dist.probabilities()[on] == doctest::Approx(0.25).epsilon(1e-12));
      CHECK(dist.probabilities()[off] == 0.0);
    }
}

TEST_CASE("empirical_distribution: single row is a point mass") {
  const DataMatrix data({{0, "A"}, {1, "B"}}, Alphabet({2, 3}), {1, 2}, 1);
  const JointDistribution dist = empirical_distribution(data, {0, 1});
  CHECK(dist.probabilities()[1 * 3 + 2] == 1.0);
  CHECK(entropy(dist) == 0.0);
}

TEST_CASE("empirical_distribution: large sample tracks the exact pmf") {
  const BuiltinSystem sys = make_xor_system(0.5, 0.8);
  const DataMatrix data = sample(sys.spec, 100000, 7);
  const JointDistribution emp = empirical_distribution(data, {0, 1, 2});
  const JointDistribution exact = enumerate_joint(sys.spec);
  for (std::size_t i = 0; i < emp.probabilities().size(); ++i)
    CHECK(std::abs(emp.probabilities()[i] - exact.probabilities()[i]) < 0.01);
}

TEST_CASE("entropy: uniform bit, point mass, skewed bit") {
  CHECK(entropy(bernoulli_dist(0.5)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entropy(bernoulli_dist(1.0)) == 0.0);
  CHECK(entropy(bernoulli_dist(0.8)) ==
        doctest::Approx(kEntropyBe08).epsilon(1e-12));
}

TEST_CASE("mutual_information: XOR table values") {
  const JointDistribution uniform = oracle::to_distribution(oracle::xor_pmf(0.5, 0.5));
  CHECK(mutual_information(uniform, VarSet::single(0), VarSet::single(2)) ==
        doctest::Approx(0.0).epsilon(1e-12));

  const JointDistribution skewed = oracle::to_distribution(oracle::xor_pmf(0.7, 0.8));
  CHECK(mutual_information(skewed, VarSet::single(1), VarSet::single(2)) ==
        doctest::Approx(kCaseCMiX2Y).epsilon(1e-9));
  CHECK(mutual_information(skewed, VarSet::of({0, 1}), VarSet::single(2)) ==
        doctest::Approx(kCaseCMiPairY).epsilon(1e-9));

  CHECK_THROWS_AS(
      mutual_information(uniform, VarSet::of({0, 1}), VarSet::single(1)),
      std::invalid_argument);
}

TEST_CASE("cmi: XOR table values and the empty-condition case") {
  const JointDistribution uniform = oracle::to_distribution(oracle::xor_pmf(0.5, 0.5));
  CHECK(cmi(uniform, VarSet::single(0), VarSet::single(2), VarSet::single(1)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const JointDistribution half = oracle::to_distribution(oracle::xor_pmf(0.5, 0.8));
  CHECK(cmi(half, VarSet::single(1), VarSet::single(2), VarSet::single(0)) ==
        doctest::Approx(kEntropyBe08).epsilon(1e-9));

  CHECK(cmi(half, VarSet::single(0), VarSet::single(2), VarSet{}) ==
        mutual_information(half, VarSet::single(0), VarSet::single(2)));

  CHECK_THROWS_AS(
      cmi(half, VarSet::single(0), VarSet::single(2), VarSet::single(0)),
      std::invalid_argument);
}

TEST_CASE("cmi agrees with the brute-force oracle on random pmfs") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const oracle::RawPmf raw = oracle::random_pmf({2, 3, 2, 2}, seed);
    const JointDistribution dist = oracle::to_distribution(raw);
    const double lib =
        cmi(dist, VarSet::single(0), VarSet::single(3), VarSet::of({1, 2}));
    const double ref = oracle::brute_cmi(raw, {0}, {3}, {1, 2});
    CHECK(lib == doctest::Approx(ref).epsilon(1e-11));
  }
}

TEST_CASE("chain rule holds to 1e-10 on random 4-variable pmfs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::vector<int> card = seed % 2 ? std::vector<int>{2, 2, 2, 2}
                                           : std::vector<int>{2, 3, 2, 3};
    const JointDistribution dist =
        oracle::to_distribution(oracle::random_pmf(card, 1000 + seed));
    const VarSet a = VarSet::single(0), b = VarSet::single(1),
                 t = VarSet::single(2), s = VarSet::single(3);
    // I(AB;T|S) = I(A;T|S) + I(B;T|SA), and the same with S empty
    CHECK(std::abs(cmi(dist, a | b, t, s) -
                   (cmi(dist, a, t, s) + cmi(dist, b, t, s | a))) < 1e-10);
    CHECK(std::abs(cmi(dist, a | b, t, VarSet{}) -
                   (cmi(dist, a, t, VarSet{}) + cmi(dist, b, t, a))) < 1e-10);
  }
}

TEST_CASE("information functionals are nonnegative and entropy is bounded") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const JointDistribution dist =
        oracle::to_distribution(oracle::random_pmf({2, 2, 3}, 500 + seed));
    CHECK(entropy(dist) >= 0.0);
    CHECK(entropy(dist) <= std::log2(12.0) + 1e-12);
    CHECK(mutual_information(dist, VarSet::single(0), VarSet::single(2)) >= 0.0);
    CHECK(cmi(dist, VarSet::single(0), VarSet::single(2), VarSet::single(1)) >=
          0.0);
  }
}

TEST_CASE("category relabeling leaves every functional unchanged") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const JointDistribution dist =
        oracle::to_distribution(oracle::random_pmf({2, 3, 2}, 900 + seed));
    const JointDistribution swapped = relabel(dist, 1, {2, 0, 1});
    CHECK(std::abs(entropy(dist) - entropy(swapped)) < 1e-12);
    CHECK(std::abs(mutual_information(dist, VarSet::single(0), VarSet::single(1)) -
                   mutual_information(swapped, VarSet::single(0), VarSet::single(1))) <
          1e-12);
    CHECK(std::abs(cmi(dist, VarSet::single(0), VarSet::single(2), VarSet::single(1)) -
                   cmi(swapped, VarSet::single(0), VarSet::single(2), VarSet::single(1))) <
          1e-12);
  }
}

TEST_CASE("plug-in cmi is exactly the functional of the empirical pmf") {
  const BuiltinSystem sys = make_xor_system(0.7, 0.8);
  const DataMatrix data = sample(sys.spec, 5000, 11);
  const VarSet a = VarSet::single(0), b = VarSet::single(2), s = VarSet::single(1);
  const double direct = cmi(data, a, b, s);
  const double via_pmf = cmi(empirical_distribution(data, {0, 1, 2}), a, b, s);
  CHECK(direct == via_pmf);  // bitwise: one code path
}

TEST_CASE("capacity: oversized joint tables are rejected") {
  std::vector<int> card(25, 2);  // 2^25 cells
  CHECK_THROWS_AS(Alphabet(card).table_size(), CapacityError);
}

TEST_CASE("joint distribution constructor enforces invariants") {
  CHECK_THROWS_AS(JointDistribution({{0, "A"}}, Alphabet({2}), {0.5, 0.6}),
                  std::invalid_argument);
  CHECK_THROWS_AS(JointDistribution({{0, "A"}}, Alphabet({2}), {-0.1, 1.1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(JointDistribution({{0, ""}}, Alphabet({2}), {0.5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      JointDistribution({{0, "A"}, {0, "B"}}, Alphabet({2, 2}),
                        {0.25, 0.25, 0.25, 0.25}),
      std::invalid_argument);
}
