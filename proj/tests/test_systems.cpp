#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "octe/systems.hpp"
#include "oracle.hpp"

using namespace octe;

namespace {

double tv_distance(const JointDistribution& a, const JointDistribution& b) {
  REQUIRE(a.probabilities().size() == b.probabilities().size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.probabilities().size(); ++i)
    d += std::abs(a.probabilities()[i] - b.probabilities()[i]);
  return 0.5 * d;
}

double cell(const JointDistribution& dist, std::initializer_list<int> values) {
  std::size_t code = 0;
  int d = 0;
  for (int v : values)
    code = code * static_cast<std::size_t>(dist.alphabet()[d++]) +
           static_cast<std::size_t>(v);
  return dist.probabilities()[code];
}

}  // namespace

TEST_CASE("enumerate_joint: uniform XOR system") {
  const JointDistribution dist = enumerate_joint(make_xor_system(0.5, 0.5).spec);
  CHECK(cell(dist, {0, 0, 0}) == 0.25);
  CHECK(cell(dist, {0, 1, 1}) == 0.25);
  CHECK(cell(dist, {1, 0, 1}) == 0.25);
  CHECK(cell(dist, {1, 1, 0}) == 0.25);
  CHECK(cell(dist, {0, 0, 1}) == 0.0);
}

TEST_CASE("enumerate_joint: skewed XOR systems hit the expected cells") {
  const JointDistribution b = enumerate_joint(make_xor_system(0.5, 0.8).spec);
  CHECK(cell(b, {0, 0, 0}) == doctest::Approx(0.10).epsilon(1e-12));
  CHECK(cell(b, {0, 1, 1}) == doctest::Approx(0.40).epsilon(1e-12));
  CHECK(cell(b, {1, 0, 1}) == doctest::Approx(0.10).epsilon(1e-12));
  CHECK(cell(b, {1, 1, 0}) == doctest::Approx(0.40).epsilon(1e-12));

  const JointDistribution c = enumerate_joint(make_xor_system(0.7, 0.8).spec);
  CHECK(cell(c, {0, 0, 0}) == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(cell(c, {0, 1, 1}) == doctest::Approx(0.24).epsilon(1e-12));
  CHECK(cell(c, {1, 0, 1}) == doctest::Approx(0.14).epsilon(1e-12));
  CHECK(cell(c, {1, 1, 0}) == doctest::Approx(0.56).epsilon(1e-12));
}

TEST_CASE("enumerate_joint: additive system widens the output alphabet") {
  const JointDistribution dist = enumerate_joint(make_additive_system().spec);
  REQUIRE(dist.alphabet()[2] == 3);
  const JointDistribution y = marginalize(dist, VarSet::single(2));
  CHECK(y.probabilities()[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(y.probabilities()[1] == doctest::Approx(0.50).epsilon(1e-12));
  CHECK(y.probabilities()[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("enumerate_joint: exogenous marginals equal their declarations") {
  const BuiltinSystem sys = make_xor_system(0.7, 0.8);
  const JointDistribution dist = enumerate_joint(sys.spec);
  const JointDistribution x1 = marginalize(dist, VarSet::single(0));
  CHECK(x1.probabilities()[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(x1.probabilities()[1] == doctest::Approx(0.7).epsilon(1e-12));
  const JointDistribution x2 = marginalize(dist, VarSet::single(1));
  CHECK(x2.probabilities()[1] == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("enumerate_joint matches the brute-force pmfs") {
  const auto close = [](const JointDistribution& dist, const oracle::RawPmf& raw) {
    return tv_distance(dist, oracle::to_distribution(raw)) < 1e-12;
  };
  CHECK(close(enumerate_joint(make_xor_system(0.7, 0.8).spec),
              oracle::xor_pmf(0.7, 0.8)));
  CHECK(close(enumerate_joint(make_additive_system().spec), oracle::additive_pmf()));
  CHECK(close(enumerate_joint(make_parity_system(4).spec), oracle::parity_pmf(4)));
  CHECK(close(enumerate_joint(make_mediated_xor_system(2, 3).spec),
              oracle::mediated_pmf(2, 3)));
  CHECK(close(enumerate_joint(make_mediated_xor_system(3, 4).spec),
              oracle::mediated_pmf(3, 4)));
  CHECK(close(enumerate_joint(make_neuron_xor_system(0.1, 0.1).spec),
              oracle::neuron_pmf(0.1, 0.1)));
}

TEST_CASE("mediated system: conditioning on all mediators is the only zero") {
  for (const auto& [p, n] : {std::pair{2, 3}, std::pair{3, 4}}) {
    const JointDistribution dist =
        enumerate_joint(make_mediated_xor_system(p, n).spec);
    VarSet mediators;
    for (int k = p; k < n; ++k) mediators.add(k);
    const int y = n;

    VarSet rest;
    for (int i = 1; i < n; ++i) rest.add(i);
    for (std::uint64_t mask = 0;; mask = (mask - rest.bits()) & rest.bits()) {
      const VarSet s = VarSet::from_bits(mask);
      const double v = cmi(dist, VarSet::single(0), VarSet::single(y), s);
      if (s == mediators) {
        CHECK(v >= 0.0);
        CHECK(v <= 1e-12);
      } else {
        CHECK(v > 1e-3);
      }
      if (mask == rest.bits()) break;
    }
  }
}

TEST_CASE("sample: empirical MI of the uniform XOR pair vanishes") {
  const DataMatrix data = sample(make_xor_system(0.5, 0.5).spec, 100000, 42);
  CHECK(mutual_information(data, VarSet::single(0), VarSet::single(2)) < 0.001);
}

TEST_CASE("sample: single draw is one valid row; seeds are deterministic") {
  const SystemSpec spec = make_mediated_xor_system(2, 3).spec;
  const DataMatrix one = sample(spec, 1, 99);
  CHECK(one.rows() == 1);
  CHECK(one.cols() == 4);

  const DataMatrix a = sample(spec, 4096, 1234);
  const DataMatrix b = sample(spec, 4096, 1234);
  CHECK(a == b);
  const DataMatrix c = sample(spec, 4096, 1235);
  CHECK_FALSE(a == c);
}

TEST_CASE("sample: parallel sampling equals the serial reference") {
  for (const char* name : {"xor", "additive", "neuron_xor"}) {
    const SystemSpec spec = make_builtin(name, {}).spec;
    const DataMatrix parallel = sample(spec, 20000, 7, 4);
    const DataMatrix serial = sample_serial(spec, 20000, 7);
    CHECK(parallel == serial);
  }
}

TEST_CASE("sample/enumerate agreement for every builtin") {
  int b = 0;
  for (const std::string& name : builtin_names()) {
    const BuiltinSystem sys = make_builtin(name, {});
    const JointDistribution exact = enumerate_joint(sys.spec);
    const JointDistribution emp = empirical_distribution(
        sample(sys.spec, 100000, 1000 + static_cast<std::uint64_t>(b++)),
        exact.variable_set().indices());
    CHECK(tv_distance(exact, emp) < 0.01);
  }
}

TEST_CASE("builtin: parity ground truth is one synergistic hyperedge") {
  const BuiltinSystem sys = make_parity_system(3);
  REQUIRE(sys.truth.hyperedges.size() == 1);
  CHECK(sys.truth.hyperedges[0].tail == VarSet::of({0, 1, 2}));
  CHECK(sys.truth.hyperedges[0].head == 3);
  CHECK(sys.truth.hyperedges[0].kind == EdgeKind::kSynergistic);
}

TEST_CASE("builtin: mediated ground truth records the documented edges") {
  const GroundTruth truth = make_mediated_xor_system(2, 3).truth;
  const auto has = [&truth](VarSet tail, int head, EdgeKind kind) {
    return std::find(truth.hyperedges.begin(), truth.hyperedges.end(),
                     TruthEdge{tail, head, kind}) != truth.hyperedges.end();
  };
  CHECK(has(VarSet::of({0, 1}), 3, EdgeKind::kSynergistic));
  CHECK(has(VarSet::single(2), 3, EdgeKind::kDirect));
  CHECK(has(VarSet::single(0), 2, EdgeKind::kDirect));
  CHECK(has(VarSet::single(0), 3, EdgeKind::kMediated));
}

TEST_CASE("builtin: dispatch, parameters and errors") {
  const BuiltinSystem sys = make_builtin("xor", {{"p1", 0.5}, {"p2", 0.8}});
  const JointDistribution dist = enumerate_joint(sys.spec);
  CHECK(cell(dist, {0, 0, 0}) == doctest::Approx(0.10).epsilon(1e-12));

  CHECK_THROWS_AS(make_builtin("unknown", {}), std::invalid_argument);
  CHECK_THROWS_AS(make_builtin("xor", {{"p1", 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS(make_builtin("parity", {{"k", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_builtin("mediated-xor", {{"p", 3.0}, {"n", 2.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_builtin("neuron-xor", {{"eps_y", -0.1}}),
                  std::invalid_argument);
}

TEST_CASE("system spec JSON round trip") {
  const SystemSpec spec = make_neuron_xor_system(0.1, 0.2).spec;
  const SystemSpec back = system_from_json_string(to_json_string(spec));
  REQUIRE(back.exogenous.size() == spec.exogenous.size());
  REQUIRE(back.equations.size() == spec.equations.size());
  CHECK(back.observed == spec.observed);
  CHECK(back.equations[1].fn == Func::kNoisyCopy);
  CHECK(back.equations[1].flip_prob == 0.1);
  CHECK(enumerate_joint(back) == enumerate_joint(spec));

  CHECK_THROWS_AS(system_from_json_string("{not json"), ParseError);
  CHECK_THROWS_AS(system_from_json_string("{\"exogenous\":[]}"), ParseError);
}

TEST_CASE("validate rejects malformed systems") {
  SystemSpec cyclic;
  cyclic.exogenous = {{{0, "A"}, {0.5, 0.5}}};
  cyclic.equations = {{{1, "B"}, Func::kIdentity, {1}}};  // self-reference
  cyclic.observed = {0, 1};
  CHECK_THROWS_AS(validate(cyclic), std::invalid_argument);

  SystemSpec bad_pmf;
  bad_pmf.exogenous = {{{0, "A"}, {0.5, 0.6}}};
  bad_pmf.observed = {0};
  CHECK_THROWS_AS(validate(bad_pmf), std::invalid_argument);

  SystemSpec ternary_xor;
  ternary_xor.exogenous = {{{0, "A"}, {0.3, 0.3, 0.4}}, {{1, "B"}, {0.5, 0.5}}};
  ternary_xor.equations = {{{2, "C"}, Func::kXor, {0, 1}}};
  ternary_xor.observed = {0, 1, 2};
  CHECK_THROWS_AS(validate(ternary_xor), std::invalid_argument);
}

TEST_CASE("enumerate_joint: oversized enumeration grids are rejected") {
  CHECK_THROWS_AS(enumerate_joint(make_parity_system(30).spec), CapacityError);
}
