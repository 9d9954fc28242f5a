#include <gtest/gtest.h>

#include <random>

#include "dpimp/auxchecks.h"
#include "dpimp/checker.h"
#include "dpimp/expander.h"
#include "dpimp/interpreter.h"
#include "dpimp/parser.h"
#include "dpimp/printer.h"
#include "dpimp/shape_check.h"
#include "support/program_gen.h"
#include "support/soundness.h"

namespace dpimp {
namespace {

bool Within(const ExtReal& d, const ExtReal& bound) {
  if (bound.is_infinite()) return true;
  if (d.is_infinite()) return false;
  return d.value() <= bound.value() * (1 + 1e-9) + 1e-9;
}

TEST(Soundness, RandomDeterministicPrograms) {
  testing::SoundnessStats s = testing::RunSoundnessSuite(1, 1000, 10);
  EXPECT_EQ(s.typed, 1000);
  EXPECT_EQ(s.pairs, 10000);
  EXPECT_EQ(s.violations, 0) << s.first_violation;
  // The suite must exercise real outputs, not only failed runs.
  EXPECT_GT(s.both_final, s.pairs / 2);
}

TEST(Soundness, OtherSeeds) {
  for (uint64_t seed : {2, 3, 4}) {
    testing::SoundnessStats s = testing::RunSoundnessSuite(seed, 200, 5);
    EXPECT_EQ(s.violations, 0) << "seed " << seed << "\n" << s.first_violation;
  }
}

// {k Γ1} c {k Γ2} for every k > 0 whenever c is linear from Γ1 to Γ2.
TEST(Soundness, ScaledLinearJudgment) {
  testing::ProgramGen gen(61);
  Interpreter interp(testing::ProgramGen::Shapes());
  const ExtReal scales[] = {ExtReal(Rational(1, 2)), ExtReal(Rational(2)),
                            ExtReal(Rational(10))};
  int linear = 0, pairs = 0;
  for (int n = 0; n < 3000 && linear < 300; ++n) {
    CmdPtr c = gen.RandomCmd(2);
    TypingContext pre = gen.RandomContext();
    Checker checker;
    LinearVerdict v = CheckLinear(checker, pre, *c);
    if (!v.verdict) continue;
    ++linear;
    for (const ExtReal& k : scales) {
      TypingContext kpre = Scaled(pre, k), kpost = Scaled(v.post, k);
      for (int t = 0; t < 4; ++t) {
        ProgramState m1 = gen.RandomState();
        ProgramState m2 = gen.Neighbor(m1, kpre);
        ExecOutcome o1 = interp.Exec(m1, *c, RunConfig{0, 200});
        ExecOutcome o2 = interp.Exec(m2, *c, RunConfig{0, 200});
        if (!o1.final() || !o2.final()) {
          EXPECT_EQ(o1.final(), o2.final()) << PrettyPrint(*c);
          continue;
        }
        ++pairs;
        for (const auto& [name, entry] : kpost.entries()) {
          ExtReal d = Distance(o1.state.at(name), o2.state.at(name), entry.shape);
          EXPECT_TRUE(Within(d, entry.sens))
              << name << " at scale " << k.ToString() << "\n" << PrettyPrint(*c)
              << "\npre " << ToString(kpre) << "\npost " << ToString(kpost);
        }
      }
    }
  }
  EXPECT_GE(linear, 300);
  EXPECT_GT(pairs, 2000);
}

// Extension rules: random neighbouring inputs stay within the derived
// output sensitivities.
struct ExtCase {
  const char* name;
  const char* source;
  const char* input;  // bag or vector of floats
};

Value RandomRows(std::mt19937_64& rng, const Shape& shape, int rows) {
  std::uniform_real_distribution<double> u(-5, 5);
  std::vector<Value> elems;
  for (int i = 0; i < rows; ++i) elems.push_back(Value::Float(u(rng)));
  return shape.kind() == Shape::Kind::kBag ? Value::Bag(elems)
                                           : Value::Vec(elems);
}

Value NeighborRows(std::mt19937_64& rng, const Value& v, const Shape& shape) {
  std::vector<Value> elems = v.elems();
  if (shape.kind() == Shape::Kind::kBag) {
    std::uniform_real_distribution<double> u(-5, 5);
    if (!elems.empty() && rng() % 2 == 0) {
      elems.erase(elems.begin() + rng() % elems.size());
    } else {
      elems.push_back(Value::Float(u(rng)));
    }
    std::shuffle(elems.begin(), elems.end(), rng);
    return Value::Bag(elems);
  }
  // Vectors at distance at most one: split a unit budget over the entries.
  std::uniform_real_distribution<double> w(0, 1);
  double left = 1.0;
  for (auto& e : elems) {
    double step = w(rng) * left;
    left -= step;
    e = Value::Float(e.as_float() + (rng() % 2 ? step : -step));
  }
  return Value::Vec(elems);
}

TEST(Soundness, ExtensionRules) {
  const ExtCase cases[] = {
      {"bmap",
       "in, out : {float} @ 1; t_in, t_out, s : float; i : int;\n"
       "bmap(in, out, t_in, i, t_out,\n"
       "  s = t_in * 3.0; t_out = clip(s, 2.0); s = 0.0;);",
       "in"},
      {"vmap",
       "in : [float] @ 1; out : [float]; t_in, t_out : float; i : int;\n"
       "vmap(in, out, t_in, i, t_out, t_out = 2.5 * t_in - 1.0;);",
       "in"},
      {"partition",
       "in : {float} @ 1; out : [{float}]; t_in : float; i, t_out, t_idx : int;\n"
       "out_idx : {int}; t_part : {float};\n"
       "partition(in, out, t_in, i, t_out, t_idx, out_idx, t_part, 6,\n"
       "  t_out = floor(t_in) + 3;);",
       "in"},
      {"bsum",
       "in : {float} @ 1; out, t_in : float; i : int;\n"
       "bsum(in, out, i, t_in, 2.5);",
       "in"},
      {"nested",
       "in, mid : {float} @ 1; out, t_in, t_out, t : float; i, j : int;\n"
       "bmap(in, mid, t_in, i, t_out, t_out = t_in * t_in;);\n"
       "bsum(mid, out, j, t, 4);",
       "in"},
  };
  std::mt19937_64 rng(71);
  for (const ExtCase& c : cases) {
    Program p = ParseProgram(c.source);
    CmdPtr cmd = ExpandProgram(p).cmd;
    ShapeEnv shapes = p.Shapes();
    ShapeCheck(*cmd, shapes);
    Checker checker;
    CmdTyping typing = checker.TypeCmd(TypingContext::FromProgram(p), *cmd);
    for (const auto& e : checker.log()) {
      EXPECT_TRUE(e.applied) << c.name << ": " << e.detail;
    }
    Interpreter interp(shapes);
    const Shape& in_shape = shapes.at(c.input);
    for (int t = 0; t < 300; ++t) {
      ProgramState m1, m2;
      for (const auto& [name, shape] : shapes) m1[name] = DefaultValue(shape);
      m2 = m1;
      m1[c.input] = RandomRows(rng, in_shape, static_cast<int>(rng() % 8));
      m2[c.input] = NeighborRows(rng, m1[c.input], in_shape);
      ASSERT_TRUE(Within(Distance(m1[c.input], m2[c.input], in_shape),
                         ExtReal::One()));
      ExecOutcome o1 = interp.Exec(m1, *cmd, RunConfig{});
      ExecOutcome o2 = interp.Exec(m2, *cmd, RunConfig{});
      ASSERT_TRUE(o1.final() && o2.final()) << c.name;
      for (const auto& [name, entry] : typing.ctx.entries()) {
        ExtReal d = Distance(o1.state.at(name), o2.state.at(name), entry.shape);
        EXPECT_TRUE(Within(d, entry.sens))
            << c.name << ": " << name << " moved " << d.ToString()
            << " but is " << entry.sens.ToString() << "-sensitive";
      }
    }
  }
}

}  // namespace
}  // namespace dpimp
