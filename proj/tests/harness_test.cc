#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "dpimp/harness.h"
#include "dpimp/parser.h"
#include "dpimp/report.h"
#include "support/files.h"

namespace dpimp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::pair<ProgramState, ProgramState> Neighbors(const Program& p,
                                                uint64_t seed) {
  NeighborSpec spec;
  spec.target = "db";
  return GenerateNeighbors(spec, p.Shapes(), seed);
}

EpsilonEstimate Estimate(const Program& p, uint64_t seed, int64_t trials,
                         bool swap = false) {
  auto [a, b] = Neighbors(p, seed);
  EstimateOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  opts.project = {"x"};
  return swap ? EstimateEpsilon(p, b, a, opts) : EstimateEpsilon(p, a, b, opts);
}

Program Laplace(double width) {
  return ParseProgram("db : {float} @ 1; x : float;\nx $= lap(" +
                      std::to_string(width) + ", fc(db.length));");
}

TEST(Neighbors, AddAndRemoveOneRow) {
  ShapeEnv shapes{{"db", Shape::Bag(Shape::Float())}, {"n", Shape::Int()}};
  NeighborSpec spec;
  spec.target = "db";
  auto [a, b] = GenerateNeighbors(spec, shapes, 1);
  EXPECT_EQ(a.at("db").elems().size(), 5u);
  EXPECT_EQ(b.at("db").elems().size(), 6u);
  EXPECT_EQ(Distance(a.at("db"), b.at("db"), shapes.at("db")), ExtReal::One());
  EXPECT_EQ(a.at("n"), b.at("n"));

  spec.op = NeighborSpec::Op::kRemoveRow;
  auto [c, d] = GenerateNeighbors(spec, shapes, 1);
  EXPECT_EQ(d.at("db").elems().size(), 4u);
  EXPECT_EQ(GenerateNeighbors(spec, shapes, 1), GenerateNeighbors(spec, shapes, 1));
}

TEST(Neighbors, AlwaysAtDistanceOne) {
  ShapeEnv shapes{{"db", Shape::Bag(Shape::Vector(Shape::Float()))},
                  {"w", Shape::Vector(Shape::Float())}};
  NeighborSpec spec;
  spec.target = "db";
  for (uint64_t seed = 0; seed < 100; ++seed) {
    spec.op = seed % 2 ? NeighborSpec::Op::kAddRow : NeighborSpec::Op::kRemoveRow;
    spec.base_rows = 1 + static_cast<int>(seed % 7);
    auto [a, b] = GenerateNeighbors(spec, shapes, seed);
    for (const auto& [name, shape] : shapes) {
      EXPECT_TRUE(WellShaped(a.at(name), shape));
      EXPECT_TRUE(WellShaped(b.at(name), shape));
    }
    EXPECT_EQ(Distance(a.at("db"), b.at("db"), shapes.at("db")), ExtReal::One());
    EXPECT_TRUE(Distance(a.at("w"), b.at("w"), shapes.at("w")).is_zero());
  }
}

TEST(Neighbors, Errors) {
  ShapeEnv shapes{{"db", Shape::Bag(Shape::Float())}, {"v", Shape::Vector(Shape::Float())}};
  NeighborSpec spec;
  spec.target = "v";
  EXPECT_THROW(GenerateNeighbors(spec, shapes, 0), std::invalid_argument);
  spec.target = "db";
  spec.op = NeighborSpec::Op::kRemoveRow;
  spec.base_rows = 0;
  EXPECT_THROW(GenerateNeighbors(spec, shapes, 0), std::invalid_argument);
}

TEST(Estimate, LaplaceReleaseStaysNearItsClaim) {
  Program p = ParseProgram(testing::ReadSource("corpus/laplace_release.fuzzi"));
  TypingReport report = CheckProgram(p);
  ASSERT_EQ(report.total.epsilon, ExtReal::One());
  EpsilonEstimate est = Estimate(p, 3, 100000);
  EXPECT_LE(est.epsilon_hat, 1.1);
  EXPECT_GT(est.epsilon_hat, 0.5);
  EXPECT_EQ(Judge(est, report.total, 0.15), Verdict::kPass);
  EXPECT_EQ(est.trials, 100000);
  EXPECT_EQ(est.failures1 + est.failures2, 0);
}

TEST(Estimate, NoiselessReleaseIsInfinite) {
  Program p =
      ParseProgram(testing::ReadSource("corpus/noiseless_release.fuzzi"));
  TypingReport report = CheckProgram(p);
  EXPECT_TRUE(report.total.is_zero());
  EpsilonEstimate est = Estimate(p, 4, 20000);
  EXPECT_EQ(est.epsilon_hat, kInf);
  EXPECT_EQ(Judge(est, report.total, 0.15), Verdict::kViolation);
}

TEST(Estimate, ConstantOutputIsZero) {
  Program p = ParseProgram("db : {float} @ 1; x : float; x = 0.0;");
  EpsilonEstimate est = Estimate(p, 5, 20000);
  EXPECT_EQ(est.epsilon_hat, 0.0);
}

TEST(Estimate, SymmetricUnderSwap) {
  Program p = Laplace(1.0);
  for (uint64_t seed : {1, 2}) {
    double a = Estimate(p, seed, 50000).epsilon_hat;
    double b = Estimate(p, seed, 50000, true).epsilon_hat;
    EXPECT_LE(std::fabs(a - b), 0.15) << seed;
  }
}

TEST(Estimate, ShrinksWithWiderNoise) {
  double narrow = Estimate(Laplace(0.5), 6, 50000).epsilon_hat;
  double mid = Estimate(Laplace(1.0), 6, 50000).epsilon_hat;
  double wide = Estimate(Laplace(2.0), 6, 50000).epsilon_hat;
  EXPECT_GE(narrow, mid);
  EXPECT_GE(mid, wide);
}

TEST(Estimate, CrashesAreAnEvent) {
  // Crashes only on the larger input.
  Program p = ParseProgram(
      "db : {float} @ 1; x : float; v : [float];\n"
      "x $= lap(1.0, 0.0); v.length = 6; x = v[db.length];");
  EpsilonEstimate est = Estimate(p, 7, 5000);
  EXPECT_EQ(est.failures1, 0);
  EXPECT_EQ(est.failures2, 5000);
  EXPECT_EQ(est.epsilon_hat, kInf);
}

TEST(Estimate, RejectsBadProjection) {
  Program p = Laplace(1.0);
  auto [a, b] = Neighbors(p, 0);
  EstimateOptions opts;
  opts.trials = 10;
  opts.project = {"db"};
  EXPECT_THROW(EstimateEpsilon(p, a, b, opts), std::invalid_argument);
  opts.project = {"nosuch"};
  EXPECT_THROW(EstimateEpsilon(p, a, b, opts), std::invalid_argument);
}

TEST(Judge, Examples) {
  EpsilonEstimate est;
  est.epsilon_hat = 1.05;
  PrivacyCost claim{ExtReal::One(), ExtReal()};
  EXPECT_EQ(Judge(est, claim, 0.1), Verdict::kPass);
  est.epsilon_hat = kInf;
  EXPECT_EQ(Judge(est, claim, 0.1), Verdict::kViolation);
  est.epsilon_hat = 1.2;
  EXPECT_EQ(Judge(est, claim, 0.1), Verdict::kViolation);
}

}  // namespace
}  // namespace dpimp
