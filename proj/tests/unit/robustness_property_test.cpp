#include <gtest/gtest.h>

#include <bit>
#include <cstdint>

#include "generators.hpp"
#include "oracle.hpp"
#include "stlf/stl/parser.hpp"
#include "stlf/stl/robustness.hpp"

using namespace stlf;
using namespace stlf::stl;

namespace {

struct Case {
  Formula phi;
  Trace w;
  std::size_t t0;
};

// Formula of depth <= 4 and a trace of at most 64 samples long enough for it.
Case random_case(test::FormulaGen& gen) {
  Formula phi = gen.formula(4);
  const std::size_t h = test::oracle_horizon(phi);
  const std::size_t n = std::min<std::size_t>(64, h + 1 + gen.pick(40));
  const std::size_t t0 = gen.pick(n - h);
  return {std::move(phi), gen.trace(n), t0};
}

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

}  // namespace

TEST(RobustnessProperty, MatchesNestedLoopOracleExactly) {
  test::FormulaGen gen(1);
  for (int i = 0; i < 1500; ++i) {
    const Case c = random_case(gen);
    const double fast = robustness(c.phi, c.w, c.t0);
    const double slow = test::oracle_robustness(c.phi, c.w, c.t0);
    ASSERT_EQ(bits(fast), bits(slow)) << print(c.phi) << " t0=" << c.t0;
  }
}

TEST(RobustnessProperty, SignalMatchesOracleAtEveryStep) {
  test::FormulaGen gen(2);
  for (int i = 0; i < 200; ++i) {
    const Case c = random_case(gen);
    const auto rho = robustness_signal(c.phi, c.w);
    ASSERT_EQ(rho.size(), c.w.length() - test::oracle_horizon(c.phi));
    for (std::size_t t = 0; t < rho.size(); ++t) {
      ASSERT_EQ(rho[t], test::oracle_robustness(c.phi, c.w, t)) << print(c.phi) << " t=" << t;
    }
  }
}

TEST(RobustnessProperty, SignAgreesWithBooleanSemantics) {
  test::FormulaGen gen(3);
  int decided = 0;
  for (int i = 0; i < 3000; ++i) {
    const Case c = random_case(gen);
    const double r = robustness(c.phi, c.w, c.t0);
    if (r == 0.0) continue;
    ++decided;
    ASSERT_EQ(satisfies(c.phi, c.w, c.t0), r > 0.0) << print(c.phi) << " rho=" << r;
  }
  EXPECT_GT(decided, 1000);
}

TEST(RobustnessProperty, NegationIsBitExact) {
  test::FormulaGen gen(4);
  for (int i = 0; i < 500; ++i) {
    const Case c = random_case(gen);
    ASSERT_EQ(bits(robustness(Formula::negation(c.phi), c.w, c.t0)), bits(-robustness(c.phi, c.w, c.t0)));
  }
}

TEST(RobustnessProperty, DeMorganIsExact) {
  test::FormulaGen gen(5);
  for (int i = 0; i < 500; ++i) {
    const Formula a = gen.formula(3), b = gen.formula(3);
    const std::size_t h = std::max(test::oracle_horizon(a), test::oracle_horizon(b));
    const Trace w = gen.trace(h + 1 + gen.pick(10));
    const double lhs = robustness(Formula::negation(Formula::conjunction(a, b)), w);
    const double rhs = robustness(Formula::disjunction(Formula::negation(a), Formula::negation(b)), w);
    ASSERT_EQ(bits(lhs), bits(rhs)) << print(a) << " / " << print(b);
  }
}

TEST(RobustnessProperty, GloballyIsDualToEventually) {
  test::FormulaGen gen(6);
  for (int i = 0; i < 500; ++i) {
    const Formula child = gen.formula(3);
    const TimeBound b = gen.bound();
    const Trace w = gen.trace(test::oracle_horizon(child) + b.hi + 1 + gen.pick(10));
    const double g = robustness(Formula::globally(b, child), w);
    const double nfn = robustness(Formula::negation(Formula::eventually(b, Formula::negation(child))), w);
    ASSERT_EQ(bits(g), bits(nfn)) << print(child);
  }
}

TEST(RobustnessProperty, RaisingAPositivelyUsedSignalNeverLowersRobustness) {
  test::FormulaGen gen(7);
  const Formula phi = parse("G[0,3](x >= 0.1 or F[0,2](x >= -0.4)) and F[1,5](x >= 0.3)");
  for (int i = 0; i < 300; ++i) {
    const Trace w = gen.trace(8 + gen.pick(20));
    Signal x = w.at("x");
    for (double& v : x.data) v += 0.25 * static_cast<double>(1 + gen.pick(4));
    std::vector<Signal> raised = w.signals();
    raised[0] = x;
    const Trace w2(w.sample_period(), w.length(), raised);
    ASSERT_GE(robustness(phi, w2), robustness(phi, w));
  }
}

TEST(RobustnessProperty, TruncationAgreesWithStrictModeWhenWindowsFit) {
  test::FormulaGen gen(8);
  for (int i = 0; i < 300; ++i) {
    const Case c = random_case(gen);
    ASSERT_EQ(robustness(c.phi, c.w, c.t0, {true}), robustness(c.phi, c.w, c.t0));
  }
}
