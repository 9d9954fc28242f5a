#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dpimp/checker.h"
#include "dpimp/extension_rules.h"
#include "dpimp/parser.h"
#include "dpimp/printer.h"
#include "dpimp/report.h"
#include "dpimp/shape_check.h"
#include "dpimp/type_expr.h"
#include "dpimp/vars.h"
#include "support/files.h"
#include "support/oracles.h"
#include "support/program_gen.h"

namespace dpimp {
namespace {

ExtReal R(int64_t n, int64_t d = 1) { return ExtReal(Rational(n, d)); }
const ExtReal kInf = ExtReal::Infinity();

// Types the right-hand side of the single assignment in `source`.
ExtReal ExprSens(const std::string& source,
                 TypingMode mode = TypingMode::kStrict) {
  Program p = ParseProgram(source);
  TypingContext ctx = TypingContext::FromProgram(p);
  const auto& a = std::get<AssignCmd>(p.main->node);
  return TypeExpr(ctx, *a.value, mode).sens;
}

ExtReal Sens(const TypingReport& r, const std::string& var) {
  return r.context.sens(var);
}

bool RuleApplied(const TypingReport& r, const std::string& name) {
  for (const auto& e : r.rules) {
    if (e.extension == name && e.applied) return true;
  }
  return false;
}

// ---- shape checking ----

TEST(ShapeCheck, Examples) {
  EXPECT_THROW(CheckSource("x : int; x = true;"), ShapeError);
  EXPECT_NO_THROW(CheckSource("v : [float]; v[0] = 1.0;"));
  EXPECT_NO_THROW(CheckSource(testing::ReadSource("corpus/avg_income.fuzzi")));
  EXPECT_THROW(CheckSource("x : int; if x then skip; else skip; end;"),
               ShapeError);
  EXPECT_THROW(CheckSource("x : int; x $= lap(1.0, 2.0);"), ShapeError);
  EXPECT_THROW(CheckSource("x : float; x = {};"), ShapeError);
}

// ---- expression typing ----

TEST(TypeExpr, Examples) {
  EXPECT_EQ(ExprSens("y, r : float @ 1; r = y + y;"), R(2));
  EXPECT_EQ(ExprSens("e, r : float @ 1; r = 3.0 * e;"), R(3));
  EXPECT_EQ(ExprSens("e, r : float @ 1; r = e - 2.0 * e;"), R(3));
  EXPECT_EQ(ExprSens("group : {float} @ 1; r : int; r = group.length;"), R(1));
  EXPECT_EQ(ExprSens("b : {float}; i : int; r : float; r = b[i];"), kInf);
  EXPECT_EQ(ExprSens("x, y, r : float @ 1; r = x * y;"), kInf);
  EXPECT_EQ(ExprSens("x, y, r : float; r = x * y;"), R(0));
  EXPECT_EQ(ExprSens("x, r : float @ 1; r = x / 4.0;"), R(1, 4));
  EXPECT_EQ(ExprSens("x : float @ 1; r : bool; r = x < 1.0;"), kInf);
  EXPECT_EQ(ExprSens("x : float; r : bool; r = x < 1.0;"), R(0));
  EXPECT_EQ(ExprSens("v : [float] @ 2; i : int; r : float; r = v[i];"), R(2));
  EXPECT_EQ(ExprSens("v : [float] @ 2; r : int; r = v.length;"), R(0));
  EXPECT_EQ(ExprSens("v : [float] @ inf; r : int; r = v.length;"), kInf);
  EXPECT_EQ(ExprSens("x, r : float @ 5; r = clip(x, 1.0);"), R(2));
  EXPECT_EQ(ExprSens("x, r : float @ 5; r = clip(x, 1.0);", TypingMode::kLinear),
            R(5));
  EXPECT_EQ(ExprSens("n : int @ 3; r : float; r = fc(n);"), R(3));
  EXPECT_EQ(ExprSens("x, r : float @ 1; r = exp(x);", TypingMode::kTerminating),
            kInf);
}

TEST(TypeExpr, PremiseViolations) {
  EXPECT_THROW(ExprSens("v : [float] @ inf; i : int; r : float; r = v[i];"),
               TypeError);
  EXPECT_THROW(ExprSens("v : [float]; i : int @ 1; r : float; r = v[i];"),
               TypeError);
  EXPECT_THROW(ExprSens("b : {float} @ 1; i : int; r : float; r = b[i];"),
               TypeError);
  try {
    ExprSens("b : {float}; i : int @ 1; r : float; r = b[i];");
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_FALSE(e.premise().empty());
  }
  // Same premises become infinite sensitivity for terminating code.
  EXPECT_EQ(ExprSens("v : [float] @ inf; i : int; r : float; r = v[i];",
                     TypingMode::kTerminating),
            kInf);
}

struct RandomTyped {
  ExprPtr expr;
  TypingContext ctx;
};

TEST(TypeExpr, MonotoneInTheContext) {
  testing::ProgramGen gen(31);
  std::uniform_int_distribution<int> pick(0, 2);
  const Shape shapes[] = {Shape::Int(), Shape::Float(), Shape::Bool()};
  int compared = 0;
  for (int n = 0; n < 2000; ++n) {
    TypingContext small = gen.RandomContext();
    TypingContext big = small;
    for (const auto& [name, entry] : small.entries()) {
      if (pick(gen.rng()) == 0) big.Set(name, entry.sens + R(pick(gen.rng())));
      if (pick(gen.rng()) == 0 && n % 5 == 0) big.Set(name, kInf);
    }
    ASSERT_TRUE(PointwiseLessEq(small, big));
    ExprPtr e = gen.RandomExpr(shapes[pick(gen.rng())], 3);
    for (TypingMode mode : {TypingMode::kStrict, TypingMode::kTerminating}) {
      std::optional<ExtReal> hi;
      try {
        hi = TypeExpr(big, *e, mode).sens;
      } catch (const TypeError&) {
        continue;
      }
      ExtReal lo = TypeExpr(small, *e, mode).sens;  // must not throw
      EXPECT_TRUE(lo <= *hi) << PrintExpr(*e);
      ++compared;
    }
  }
  EXPECT_GT(compared, 1000);
}

TEST(TypeExpr, LinearInTheContext) {
  testing::ProgramGen gen(32);
  std::uniform_int_distribution<int> pick(0, 2);
  const Shape shapes[] = {Shape::Int(), Shape::Float(), Shape::Bool()};
  const ExtReal scales[] = {R(1, 2), R(2), R(10)};
  int compared = 0;
  for (int n = 0; n < 2000; ++n) {
    TypingContext ctx = gen.RandomContext();
    ExprPtr e = gen.RandomExpr(shapes[pick(gen.rng())], 3);
    ExtReal k = scales[pick(gen.rng())];
    ExtReal base;
    try {
      base = TypeExpr(ctx, *e, TypingMode::kLinear).sens;
    } catch (const TypeError&) {
      continue;
    }
    ExtReal scaled = TypeExpr(Scaled(ctx, k), *e, TypingMode::kLinear).sens;
    EXPECT_EQ(scaled, k * base) << PrintExpr(*e) << "\n" << ToString(ctx);
    ++compared;
  }
  EXPECT_GT(compared, 1000);
}

// ---- command typing ----

TEST(TypeCmd, AverageIncome) {
  TypingReport r = CheckSource(testing::ReadSource("corpus/avg_income.fuzzi"));
  EXPECT_EQ(r.total.epsilon, R(2));
  EXPECT_TRUE(r.total.delta.is_zero());
  EXPECT_EQ(Sens(r, "sum"), R(1000));
  EXPECT_TRUE(RuleApplied(r, "bsum"));
  PrivacyCost folded;
  for (const auto& t : r.trace) folded += t.cost;
  EXPECT_EQ(folded, r.total);
}

TEST(TypeCmd, LaplaceZeroesTargetAndCostsSensOverWidth) {
  TypingReport r = CheckSource(
      "group : {float} @ 1; size : float;\nsize $= lap(1.0, group.length);");
  EXPECT_EQ(r.total.epsilon, R(1));
  EXPECT_TRUE(Sens(r, "size").is_zero());
  TypingReport half = CheckSource("x : float @ 3; y : float; y $= lap(2.0, x);");
  EXPECT_EQ(half.total.epsilon, R(3, 2));
  EXPECT_THROW(CheckSource("x : float @ inf; y : float; y $= lap(2.0, x);"),
               TypeError);
}

TEST(TypeCmd, SkipIsIdentity) {
  Program p = ParseProgram("x : float @ 0.5; v : [int] @ inf; skip;");
  TypingContext ctx = TypingContext::FromProgram(p);
  Checker checker;
  CmdTyping t = checker.TypeCmd(ctx, *p.main);
  EXPECT_EQ(t.ctx, ctx);
  EXPECT_TRUE(t.cost.is_zero());
}

TEST(TypeCmd, SensitiveGuardRejected) {
  EXPECT_THROW(
      CheckSource("x : float @ 1; if x > 0.0 then skip; else skip; end;"),
      TypeError);
  EXPECT_THROW(CheckSource("x : float @ 1; while x > 0.0 do skip; end;"),
               TypeError);
}

TEST(TypeCmd, IfTakesPointwiseMaxAndCostMax) {
  const char* decls = "x : float @ 1; y : float @ 2; z : float; b : bool;\n";
  TypingReport r = CheckSource(std::string(decls) +
                               "if b then z = x; y $= lap(1.0, x); "
                               "else z = 3.0 * x; end;");
  EXPECT_EQ(Sens(r, "z"), R(3));
  EXPECT_EQ(Sens(r, "y"), R(2));
  EXPECT_EQ(r.total.epsilon, R(1));
}

TEST(TypeCmd, IfIsSymmetricUnderNegatedGuard) {
  testing::ProgramGen gen(41);
  int compared = 0;
  for (int n = 0; n < 1500; ++n) {
    TypingContext ctx = gen.RandomContext();
    CmdPtr t = gen.RandomCmd(2), f = gen.RandomCmd(2);
    ExprPtr guard = gen.RandomExpr(Shape::Bool(), 2);
    CmdPtr a = MakeCmd(IfCmd{guard, t, f});
    CmdPtr b = MakeCmd(IfCmd{MakeNot(guard), f, t});
    Checker checker;
    std::optional<CmdTyping> ta, tb;
    try { ta = checker.TypeCmd(ctx, *a); } catch (const TypeError&) {}
    try { tb = checker.TypeCmd(ctx, *b); } catch (const TypeError&) {}
    ASSERT_EQ(ta.has_value(), tb.has_value());
    if (ta) {
      EXPECT_EQ(ta->ctx, tb->ctx);
      EXPECT_EQ(ta->cost, tb->cost);
      ++compared;
    }
  }
  EXPECT_GT(compared, 30);
}

TEST(TypeCmd, Stores) {
  TypingReport bag_len = CheckSource("b : {float} @ 1; b.length = 3;");
  EXPECT_EQ(Sens(bag_len, "b"), kInf);
  TypingReport vec_len = CheckSource("v : [float] @ 1; v.length = 3;");
  EXPECT_EQ(Sens(vec_len, "v"), R(1));
  TypingReport idx = CheckSource("v : [float] @ 1; x : float @ 2; v[0] = x;");
  EXPECT_EQ(Sens(idx, "v"), R(3));
  EXPECT_THROW(CheckSource("v : [float] @ inf; v[0] = 1.0;"), TypeError);
  EXPECT_THROW(CheckSource("v : [float]; i : int @ 1; v[i] = 1.0;"), TypeError);
  EXPECT_THROW(CheckSource("v : [float]; n : int @ 1; v.length = n;"),
               TypeError);
  EXPECT_THROW(CheckSource("b : {float}; b[0] = 1.0;"), TypeError);
}

TEST(TypeCmd, WhileWidensGrowingVariables) {
  TypingReport r = CheckSource(
      "x : float @ 1; y : float; k : int;\n"
      "k = 0; while k < 3 do y = y + x; k = k + 1; end;");
  EXPECT_EQ(Sens(r, "y"), kInf);
  EXPECT_EQ(Sens(r, "x"), R(1));
  EXPECT_TRUE(Sens(r, "k").is_zero());
  EXPECT_THROW(CheckSource("x : float @ 1; y : float; k : int;\n"
                           "while k < 3 do y $= lap(1.0, x); k = k + 1; end;"),
               TypeError);
}

TEST(TypeCmd, WideningCanBreakTheGuard) {
  // Widening k makes the guard sensitive.
  EXPECT_THROW(CheckSource("k : int; n : int @ 1;\n"
                           "while k < 3 do k = k + n; end;"),
               TypeError);
}

TEST(Stretch, Examples) {
  TypingContext ctx;
  ctx.Declare("x", Shape::Float(), R(1, 2));
  ctx.Declare("y", Shape::Float(), R(0));
  TypingContext s = Stretch(ctx);
  EXPECT_EQ(s.sens("x"), kInf);
  EXPECT_TRUE(s.sens("y").is_zero());
  EXPECT_EQ(Stretch(s), s);
  ctx.Set("x", R(0));
  EXPECT_EQ(Stretch(ctx), ctx);
}

// ---- extension rules ----

TEST(BagMap, OutputTakesInputSensitivity) {
  TypingReport r = CheckSource(testing::ReadSource("corpus/bmap_demo.fuzzi"));
  EXPECT_EQ(Sens(r, "out"), R(1));
  EXPECT_EQ(Sens(r, "t_in"), kInf);
  EXPECT_TRUE(r.Fallbacks().empty());
  TypingReport zero = CheckSource(
      "in, out : {float}; t_in, t_out : float; i : int;\n"
      "bmap(in, out, t_in, i, t_out, t_out = t_in * 2.0;);");
  EXPECT_TRUE(Sens(zero, "out").is_zero());
}

TEST(BagMap, LeakedTemporaryFallsBack) {
  const char* src =
      "in, out : {float} @ 1; t_in, t_out, temp : float; i : int;\n"
      "bmap(in, out, t_in, i, t_out, temp = t_in; t_out = 0.0;);";
  // The core rules cannot type a loop over a sensitive bag, so the fallback
  // reports the core error together with the failed premise.
  try {
    CheckSource(src);
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_NE(std::string(e.what()).find("temp still depends on t_in"),
              std::string::npos)
        << e.what();
    EXPECT_EQ(e.loc().line, 2);
  }
  Checker::Options no_rules;
  no_rules.extension_rules = false;
  EXPECT_THROW(CheckSource(src, no_rules), TypeError);
}

TEST(BagMap, SensitiveOutputFallsBack) {
  // Premise A: t_out may not depend on anything but t_in.
  EXPECT_THROW(CheckSource("in, out : {float} @ 1; t_in, t_out : float @ 1;\n"
                           "x : float @ 1; i : int;\n"
                           "bmap(in, out, t_in, i, t_out, t_out = x;);"),
               TypeError);
}

TEST(VectorMap, ScalesByBodyLinearity) {
  TypingReport r = CheckSource(testing::ReadSource("corpus/vmap_demo.fuzzi"));
  EXPECT_EQ(Sens(r, "out"), R(2));
  TypingReport id = CheckSource(
      "in : [float] @ 1; out : [float]; t_in, t_out : float; i : int;\n"
      "vmap(in, out, t_in, i, t_out, t_out = t_in;);");
  EXPECT_EQ(Sens(id, "out"), R(1));
}

TEST(VectorMap, NonLinearBodyGivesInfiniteScale) {
  TypingReport r = CheckSource(
      "in : [float] @ 1; out : [float]; t_in, t_out : float; i : int;\n"
      "vmap(in, out, t_in, i, t_out,\n"
      "  if t_in > 0.0 then t_out = t_in + 1.0; else t_out = t_in + 2.0; end;);");
  EXPECT_EQ(Sens(r, "out"), kInf);
  EXPECT_EQ(Sens(r, "in"), R(1));
  ASSERT_EQ(r.Fallbacks().size(), 1u);
  EXPECT_NE(r.Fallbacks()[0].detail.find("not linear"), std::string::npos);
}

TEST(Partition, OutputTakesInputSensitivity) {
  TypingReport r =
      CheckSource(testing::ReadSource("corpus/partition_demo.fuzzi"));
  EXPECT_EQ(Sens(r, "out"), R(1));
  EXPECT_TRUE(RuleApplied(r, "partition"));
  EXPECT_TRUE(r.total.is_zero());
  std::string zero_src = testing::ReadSource("corpus/partition_demo.fuzzi");
  zero_src.replace(zero_src.find("in : {float} @ 1;"), 17, "in : {float};");
  EXPECT_TRUE(Sens(CheckSource(zero_src), "out").is_zero());
}

TEST(Partition, SensitivePartCountFallsBack) {
  std::string src = testing::ReadSource("corpus/partition_demo.fuzzi");
  src.replace(src.find(", 4,"), 4, ", in.length,");
  try {
    CheckSource(src);
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_NE(std::string(e.what()).find("nParts must be 0-sensitive"),
              std::string::npos)
        << e.what();
  }
}

TEST(BagSum, OutputScalesByBound) {
  TypingReport r = CheckSource(
      "in : {float} @ 1; out, t_in : float; i : int;\n"
      "bsum(in, out, i, t_in, 1000);");
  EXPECT_EQ(Sens(r, "out"), R(1000));
  EXPECT_EQ(Sens(r, "t_in"), kInf);
  TypingReport zero = CheckSource(
      "in : {float}; out, t_in : float; i : int; bsum(in, out, i, t_in, 5.5);");
  EXPECT_TRUE(Sens(zero, "out").is_zero());
}

TEST(BagSum, NegativeBoundFallsBack) {
  try {
    CheckSource("in : {float} @ 1; out, t_in : float; i : int;\n"
                "bsum(in, out, i, t_in, -1);");
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_NE(std::string(e.what()).find("bound must be non-negative"),
              std::string::npos);
  }
}

TEST(AdvComp, MatchesIndependentOracle) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> eps(0.0, 2.0), del(0.0, 1e-3),
      om(1e-9, 0.5);
  std::uniform_int_distribution<int> iters(1, 1000);
  for (int n = 0; n < 100; ++n) {
    double e = eps(rng), d = del(rng), w = om(rng);
    int k = iters(rng);
    AdvCompResult got = ComposeAdvanced({ExtReal(e), ExtReal(d)}, k, ExtReal(w));
    testing::AdvCompOracle want =
        testing::AdvancedCompositionOracle(e, d, k, w);
    EXPECT_NEAR(got.advanced_epsilon, static_cast<double>(want.epsilon),
                1e-12 * static_cast<double>(want.epsilon));
    EXPECT_NEAR(got.advanced_delta.value(), static_cast<double>(want.delta),
                1e-12 * static_cast<double>(want.delta));
    bool worse_in_both = want.epsilon > static_cast<long double>(k) * e &&
                         want.delta > static_cast<long double>(k) * d;
    EXPECT_EQ(got.simple_chosen, worse_in_both);
    // The chosen pair is never beaten in both components by the other.
    PrivacyCost other = got.simple_chosen
                            ? PrivacyCost{ExtReal(got.advanced_epsilon),
                                          got.advanced_delta}
                            : got.simple;
    EXPECT_FALSE(other.epsilon < got.chosen.epsilon &&
                 other.delta < got.chosen.delta);
  }
}

TEST(AdvComp, GradientStepExample) {
  AdvCompResult r =
      ComposeAdvanced({R(785, 5000), R(0)}, 100, ExtReal(Rational(1, 1000000)));
  EXPECT_FALSE(r.simple_chosen);
  testing::AdvCompOracle want =
      testing::AdvancedCompositionOracle(0.157L, 0, 100, 1e-6L);
  EXPECT_NEAR(r.advanced_epsilon, static_cast<double>(want.epsilon), 1e-12);
  EXPECT_NEAR(r.advanced_epsilon, 10.923, 0.002);
  EXPECT_EQ(r.chosen.delta, R(1, 1000000));
  EXPECT_EQ(r.simple.epsilon, R(157, 10));
}

TEST(AdvComp, ZeroEpsilonCostsOnlyOmega) {
  AdvCompResult r = ComposeAdvanced({R(0), R(0)}, 10, R(1, 100));
  EXPECT_EQ(r.advanced_epsilon, 0.0);
  EXPECT_EQ(r.advanced_delta, R(1, 100));
}

TEST(AdvComp, FallsBackToSimpleWhenWorseInBoth) {
  TypingReport r = CheckSource(
      "x : float @ 5; y : float; i : int;\n"
      "ac(i, 10, 0.01, y $= lap(1.0, x););");
  EXPECT_EQ(r.total.epsilon, R(50));
  EXPECT_TRUE(r.total.delta.is_zero());
  ASSERT_FALSE(r.rules.empty());
  EXPECT_NE(r.rules[0].detail.find("simple"), std::string::npos);
}

TEST(AdvComp, CorpusExample) {
  TypingReport r = CheckSource(testing::ReadSource("corpus/ac_demo.fuzzi"));
  testing::AdvCompOracle want =
      testing::AdvancedCompositionOracle(0.05L, 0, 50, 1e-5L);
  EXPECT_NEAR(r.total.epsilon.value(), static_cast<double>(want.epsilon), 1e-9);
  EXPECT_EQ(r.total.delta, R(1, 100000));
}

TEST(AdvComp, PremiseFailures) {
  // i modified by the body.
  EXPECT_THROW(CheckSource("x : float @ 1; y : float; i : int;\n"
                           "ac(i, 10, 0.01, y $= lap(1.0, x); i = 0;);"),
               TypeError);
  // omega out of range: the core rule rejects the costly loop body.
  EXPECT_THROW(CheckSource("x : float @ 1; y : float; i : int;\n"
                           "ac(i, 10, 1.5, y $= lap(1.0, x););"),
               TypeError);
}

TEST(Repeat, UnrollsAndSumsCosts) {
  TypingReport r = CheckSource(
      "x : float; y : float @ 1; j : int;\n"
      "repeat(j, 3, x $= lap(1.0, y););");
  EXPECT_EQ(r.total.epsilon, R(3));
  TypingReport once = CheckSource(
      "x : float @ 2; y : float @ 1; j : int; repeat(j, 1, x = x + y;);");
  TypingReport manual = CheckSource(
      "x : float @ 2; y : float @ 1; j : int; j = 0; x = x + y; j = j + 1;");
  EXPECT_EQ(once.context, manual.context);
  TypingReport many = CheckSource(
      "x : float; y : float @ 1; j : int; repeat(j, 4, x = x + y;);");
  EXPECT_EQ(Sens(many, "x"), R(4));
  EXPECT_THROW(CheckSource("x : float; y : float @ 1; j : int;\n"
                           "repeat(j, 0, x $= lap(1.0, y););"),
               TypeError);
}

TEST(GradientDescent, PrivacyCost) {
  TypingReport r =
      CheckSource(testing::ReadSource("corpus/gradient_descent.fuzzi"));
  EXPECT_NEAR(r.total.epsilon.value(), 11.02, 0.01);
  EXPECT_EQ(r.total.delta, R(1, 1000000));
  // The pre-loop release and the composed training loop.
  PrivacyCost pre, loop;
  for (const auto& t : r.trace) {
    if (t.cost.delta.is_zero()) pre += t.cost;
    else loop += t.cost;
  }
  EXPECT_EQ(pre.epsilon, R(1, 10));
  AdvCompResult step =
      ComposeAdvanced({R(785, 5000), R(0)}, 100, R(1, 1000000));
  EXPECT_DOUBLE_EQ(loop.epsilon.value(), step.advanced_epsilon);
  EXPECT_TRUE(r.Fallbacks().empty());
}

// An extension rule never does worse than the core rules on the expansion.
TEST(ExtensionRules, NoWorseThanCoreTyping) {
  struct Case {
    const char* file;
    const char* out;
  };
  for (Case c : {Case{"corpus/bmap_demo.fuzzi", "out"},
                 Case{"corpus/vmap_demo.fuzzi", "out"},
                 Case{"corpus/partition_demo.fuzzi", "out"},
                 Case{"corpus/bsum_demo.fuzzi", "s"},
                 Case{"corpus/avg_income.fuzzi", "sum"},
                 Case{"corpus/repeat_demo.fuzzi", "x"}}) {
    std::string src = testing::ReadSource(c.file);
    TypingReport with = CheckSource(src);
    Checker::Options core;
    core.extension_rules = false;
    try {
      TypingReport without = CheckSource(src, core);
      EXPECT_TRUE(Sens(with, c.out) <= Sens(without, c.out)) << c.file;
      EXPECT_FALSE(without.total.epsilon < with.total.epsilon) << c.file;
    } catch (const TypeError&) {
      // The core rules reject it outright.
    }
  }
}

// ---- report ----

TEST(Report, JsonShape) {
  TypingReport r = CheckSource(testing::ReadSource("corpus/avg_income.fuzzi"));
  nlohmann::json j = ReportToJson(r);
  EXPECT_EQ(j["epsilon"], 2.0);
  EXPECT_EQ(j["delta"], 0.0);
  EXPECT_EQ(j["context"]["sum"]["sens"], 1000.0);
  EXPECT_EQ(j["context"]["group"]["shape"], "{float}");
  EXPECT_EQ(j["context"]["temp"]["sens"], "inf");
  EXPECT_TRUE(j["trace"].is_array());
  EXPECT_TRUE(j["fallbacks"].is_array());
  EXPECT_EQ(ReportToJson(CheckSource(testing::ReadSource(
                "corpus/avg_income.fuzzi"))).dump(),
            j.dump());
}

TEST(Report, EmptyProgram) {
  TypingReport r = CheckSource("x : float @ 1; skip;");
  EXPECT_TRUE(r.total.is_zero());
  EXPECT_EQ(Sens(r, "x"), R(1));
}

}  // namespace
}  // namespace dpimp
