// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any
// failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "dpimp/expander.h"
#include "dpimp/extension_rules.h"
#include "dpimp/harness.h"
#include "dpimp/interpreter.h"
#include "dpimp/parser.h"
#include "dpimp/report.h"
#include "dpimp/shape_check.h"
#include "dpimp/value.h"
#include "dpimp/value_json.h"
#include "support/files.h"
#include "support/oracles.h"
#include "support/soundness.h"

namespace dpimp {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

Outcome AverageIncome() {
  TypingReport r =
      CheckSource(testing::ReadSource("corpus/avg_income.fuzzi"));
  bool ok = r.total.epsilon == ExtReal(Rational(2)) && r.total.delta.is_zero() &&
            r.context.sens("sum") == ExtReal(Rational(1000));
  return {ok, "cost " + ToString(r.total) + ", sum -> " +
                  r.context.sens("sum").ToString()};
}

Outcome GradientDescent() {
  auto start = Clock::now();
  TypingReport r =
      CheckSource(testing::ReadSource("corpus/gradient_descent.fuzzi"));
  double secs = Seconds(start);
  PrivacyCost pre, loop;
  for (const auto& t : r.trace) {
    (t.cost.delta.is_zero() ? pre : loop) += t.cost;
  }
  testing::AdvCompOracle step =
      testing::AdvancedCompositionOracle(785.0L / 5000, 0, 100, 1e-6L);
  double eps = r.total.epsilon.value();
  bool ok = std::fabs(eps - 11.02) <= 0.01 &&
            r.total.delta == ExtReal(Rational(1, 1000000)) &&
            pre.epsilon == ExtReal(Rational(1, 10)) &&
            std::fabs(loop.epsilon.value() -
                      static_cast<double>(step.epsilon)) < 1e-9 &&
            std::fabs(loop.epsilon.value() - 10.923) < 0.002 && secs < 30;
  return {ok, "epsilon " + Fmt(eps) + ", delta " + r.total.delta.ToString() +
                  ", pre-loop " + pre.epsilon.ToString() + ", loop " +
                  Fmt(loop.epsilon.value()) + ", " + Fmt(secs) + " s"};
}

Outcome Distances() {
  auto floats = [](std::vector<double> xs, bool bag) {
    std::vector<Value> e;
    for (double x : xs) e.push_back(Value::Float(x));
    return bag ? Value::Bag(e) : Value::Vec(e);
  };
  ExtReal vec = Distance(floats({1, 2, 5}, false), floats({1, 3, 4}, false),
                         Shape::Vector(Shape::Float()));
  ExtReal bag = Distance(floats({1, 2, 5}, true), floats({1, 3, 4}, true),
                         Shape::Bag(Shape::Float()));
  std::mt19937_64 rng(500);
  int agree = 0;
  for (int n = 0; n < 500; ++n) {
    std::vector<testing::OracleItem> oa, ob;
    std::vector<double> xa, xb;
    for (int side = 0; side < 2; ++side) {
      int len = static_cast<int>(rng() % 7);
      for (int k = 0; k < len; ++k) {
        double x = static_cast<double>(rng() % 4);
        (side ? xb : xa).push_back(x);
        (side ? ob : oa).push_back({false, x, {}});
      }
    }
    ExtReal d = Distance(floats(xa, true), floats(xb, true),
                         Shape::Bag(Shape::Float()));
    if (d == ExtReal(Rational(testing::BruteForceBagDistance(oa, ob)))) ++agree;
  }
  bool ok = vec == ExtReal(Rational(2)) && bag == ExtReal(Rational(4)) &&
            agree == 500;
  return {ok, "vector " + vec.ToString() + ", bag " + bag.ToString() +
                  ", oracle agreement " + std::to_string(agree) + "/500"};
}

Outcome Soundness() {
  auto start = Clock::now();
  testing::SoundnessStats s = testing::RunSoundnessSuite(1, 1000, 10);
  double secs = Seconds(start);
  bool ok = s.typed == 1000 && s.pairs == 10000 && s.violations == 0 &&
            secs < 120;
  std::string detail =
      std::to_string(s.typed) + " programs, " + std::to_string(s.pairs) +
      " pairs: " + std::to_string(s.both_final) + " within, " +
      std::to_string(s.both_diverged + s.both_crashed +
                     s.crash_vs_divergence) +
      " both failed, " + std::to_string(s.violations) + " violations, " +
      Fmt(secs) + " s";
  if (s.violations) detail += "\n" + s.first_violation;
  return {ok, detail};
}

Outcome Partition() {
  Program p = ParseProgram(testing::ReadSource("corpus/partition_demo.fuzzi"));
  CmdPtr cmd = ExpandProgram(p).cmd;
  ShapeCheck(*cmd, p.Shapes());
  Interpreter interp(p.Shapes());
  ProgramState st = StateFromJson(
      nlohmann::json::parse(R"({"in": {"bag": [1.2, 2.3, 3.4]}})"),
      p.Shapes());
  ExecOutcome out = interp.Exec(st, *cmd, RunConfig{});
  if (!out.final()) return {false, "run " + out.reason};
  auto part = [](std::vector<double> xs) {
    std::vector<Value> e;
    for (double x : xs) e.push_back(Value::Float(x));
    return Value::Bag(e);
  };
  Value want = Value::Vec({part({}), part({1.2}), part({2.3}), part({3.4})});
  return {out.state.at("out") == want, "out = " + ToString(out.state.at("out"))};
}

Outcome Harness() {
  auto start = Clock::now();
  Program lap = ParseProgram(testing::ReadSource("corpus/laplace_release.fuzzi"));
  Program raw =
      ParseProgram(testing::ReadSource("corpus/noiseless_release.fuzzi"));
  PrivacyCost claim{ExtReal::One(), ExtReal()};
  int passes = 0, flagged = 0;
  double worst = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    NeighborSpec spec;
    spec.target = "db";
    EstimateOptions opts;
    opts.trials = 100000;
    opts.seed = seed;
    opts.project = {"x"};
    auto [a, b] = GenerateNeighbors(spec, lap.Shapes(), seed);
    EpsilonEstimate e1 = EstimateEpsilon(lap, a, b, opts);
    worst = std::max(worst, e1.epsilon_hat);
    if (Judge(e1, claim, 0.15) == Verdict::kPass) ++passes;
    EpsilonEstimate e2 = EstimateEpsilon(raw, a, b, opts);
    // The noiseless program is judged against its own (zero) cost.
    if (Judge(e2, CheckProgram(raw).total, 0.15) == Verdict::kViolation) {
      ++flagged;
    }
  }
  double secs = Seconds(start);
  bool ok = passes == 10 && flagged == 10 && secs < 60;
  return {ok, "laplace passes " + std::to_string(passes) +
                  "/10 (max estimate " + Fmt(worst) + "), noiseless flagged " +
                  std::to_string(flagged) + "/10, " + Fmt(secs) + " s"};
}

Outcome AdvancedComposition() {
  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> eps(0.0, 3.0), del(0.0, 0.01),
      om(1e-9, 0.9);
  int agree = 0, choice = 0;
  double worst = 0;
  for (int n = 0; n < 100; ++n) {
    double e = eps(rng), d = del(rng), w = om(rng);
    int k = 1 + static_cast<int>(rng() % 2000);
    AdvCompResult got =
        ComposeAdvanced({ExtReal(e), ExtReal(d)}, k, ExtReal(w));
    testing::AdvCompOracle want = testing::AdvancedCompositionOracle(e, d, k, w);
    auto rel = [](long double a, long double b) {
      return b == 0 ? std::fabs(static_cast<double>(a))
                    : std::fabs(static_cast<double>((a - b) / b));
    };
    double re = std::max(rel(got.advanced_epsilon, want.epsilon),
                         rel(got.advanced_delta.value(), want.delta));
    worst = std::max(worst, re);
    if (re <= 1e-12) ++agree;
    bool worse_both = want.epsilon > static_cast<long double>(k) * e &&
                      want.delta > static_cast<long double>(k) * d;
    if (got.simple_chosen == worse_both) ++choice;
  }
  return {agree == 100 && choice == 100,
          "oracle agreement " + std::to_string(agree) + "/100 (worst relative "
          "error " + Fmt(worst) + "), choice rule " + std::to_string(choice) +
          "/100"};
}

}  // namespace
}  // namespace dpimp

int main() {
  using dpimp::Outcome;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "average income costs (2.0, 0) with sum 1000-sensitive",
       dpimp::AverageIncome},
      {2, "gradient descent costs epsilon 11.02, delta 1e-6",
       dpimp::GradientDescent},
      {3, "vector and bag distances", dpimp::Distances},
      {4, "random deterministic programs stay within the typed context",
       dpimp::Soundness},
      {5, "partition by floor", dpimp::Partition},
      {6, "DP test harness calibration", dpimp::Harness},
      {7, "advanced composition arithmetic and choice",
       dpimp::AdvancedComposition},
  };
  bool all = true;
  bool substitutes = true;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    if (c.id == 2 || c.id == 4 || c.id == 5 || c.id == 6) {
      substitutes = substitutes && o.pass;
    }
    std::printf("[%s] criterion %d: %s -- %s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  // The classifier accuracies depend on the original training data and are
  // not reproduced; the cost and soundness checks above stand in for them.
  std::string readme;
  try {
    readme = dpimp::testing::ReadSource("README.md");
  } catch (const std::exception&) {
  }
  bool documented = readme.find("not reproduced") != std::string::npos;
  bool ok8 = substitutes && documented;
  all = all && ok8;
  std::printf("[%s] criterion 8: classifier accuracies substituted -- "
              "substitute criteria 2, 4, 5, 6 %s; README %s\n",
              ok8 ? "PASS" : "FAIL", substitutes ? "pass" : "fail",
              documented ? "documents the substitution"
                         : "lacks the substitution note");
  return all ? 0 : 1;
}
