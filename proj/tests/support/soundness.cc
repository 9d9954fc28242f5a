#include "support/soundness.h"

#include "dpimp/checker.h"
#include "dpimp/interpreter.h"
#include "dpimp/printer.h"
#include "dpimp/shape_check.h"
#include "support/program_gen.h"

namespace dpimp::testing {
namespace {

bool Within(const ExtReal& d, const ExtReal& bound) {
  if (bound.is_infinite()) return true;
  if (d.is_infinite()) return false;
  return d.value() <= bound.value() * (1 + 1e-9) + 1e-9;
}

std::string Describe(const Cmd& c, const TypingContext& pre,
                     const TypingContext& post, const std::string& what) {
  return what + "\nprogram:\n" + PrettyPrint(c) + "\npre: " + ToString(pre) +
         "\npost: " + ToString(post);
}

}  // namespace

SoundnessStats RunSoundnessSuite(uint64_t seed, int programs, int pairs) {
  SoundnessStats stats;
  ProgramGen gen(seed);
  Interpreter interp(ProgramGen::Shapes());
  Checker checker;
  while (stats.typed < programs && stats.generated < programs * 50) {
    ++stats.generated;
    CmdPtr c = gen.RandomCmd(3);
    ShapeCheck(*c, ProgramGen::Shapes());
    TypingContext pre = gen.RandomContext();
    CmdTyping typing;
    try {
      typing = checker.TypeCmd(pre, *c);
    } catch (const TypeError&) {
      continue;
    }
    ++stats.typed;
    for (int k = 0; k < pairs; ++k) {
      ++stats.pairs;
      ProgramState m1 = gen.RandomState();
      ProgramState m2 = gen.Neighbor(m1, pre);
      ExecOutcome o1 = interp.Exec(m1, *c, RunConfig{0, 200});
      ExecOutcome o2 = interp.Exec(m2, *c, RunConfig{0, 200});
      std::string failure;
      if (!o1.final() && !o2.final() && o1.kind != o2.kind) {
        ++stats.crash_vs_divergence;
      } else if (o1.kind != o2.kind) {
        failure = "outcomes differ: " + std::string(OutcomeName(o1.kind)) +
                  " (" + o1.reason + ") vs " + std::string(OutcomeName(o2.kind)) +
                  " (" + o2.reason + ")";
      } else if (o1.diverged()) {
        ++stats.both_diverged;
      } else if (o1.crashed()) {
        ++stats.both_crashed;
      } else {
        ++stats.both_final;
        for (const auto& [name, entry] : typing.ctx.entries()) {
          ExtReal d = Distance(o1.state.at(name), o2.state.at(name), entry.shape);
          if (!Within(d, entry.sens)) {
            failure = name + ": distance " + d.ToString() + " exceeds " +
                      entry.sens.ToString() + " (" + ToString(o1.state.at(name)) +
                      " vs " + ToString(o2.state.at(name)) + ")";
            break;
          }
        }
      }
      if (!failure.empty()) {
        if (stats.violations++ == 0) {
          stats.first_violation = Describe(*c, pre, typing.ctx, failure);
        }
      }
    }
  }
  return stats;
}

}  // namespace dpimp::testing
