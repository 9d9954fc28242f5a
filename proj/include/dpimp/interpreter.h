#ifndef DPIMP_INTERPRETER_H_
#define DPIMP_INTERPRETER_H_

#include <cstdint>
#include <string>

#include "dpimp/ast.h"
#include "dpimp/rng.h"
#include "dpimp/value.h"

namespace dpimp {

struct RunConfig {
  uint64_t seed = 0;
  // Maximum number of iterations of any single while-loop execution.
  int64_t fuel = 1'000'000;
};

struct ExecOutcome {
  enum class Kind { kFinal, kDiverged, kCrashed };

  Kind kind = Kind::kFinal;
  ProgramState state;  // meaningful for kFinal only
  std::string reason;  // for kDiverged and kCrashed
  SourceLoc loc;

  bool final() const { return kind == Kind::kFinal; }
  bool diverged() const { return kind == Kind::kDiverged; }
  bool crashed() const { return kind == Kind::kCrashed; }
};

std::string_view OutcomeName(ExecOutcome::Kind kind);

// A failed expression evaluation: bad index, division by zero, overflow,
// domain errors of builtins, or ill-shaped operands.
class EvalError : public Error {
 public:
  using Error::Error;
};

// Executes expanded core commands. Stores into a variable convert ints to
// floats where the declared shape asks for it.
class Interpreter {
 public:
  explicit Interpreter(ShapeEnv shapes) : shapes_(std::move(shapes)) {}

  const ShapeEnv& shapes() const { return shapes_; }

  // Throws EvalError.
  Value EvalExpr(const ProgramState& state, const Expr& e) const;

  ExecOutcome Exec(ProgramState state, const Cmd& c,
                   const RunConfig& config) const;
  ExecOutcome Exec(ProgramState state, const Cmd& c, Rng& rng,
                   int64_t fuel) const;

 private:
  ShapeEnv shapes_;
};

}  // namespace dpimp

#endif  // DPIMP_INTERPRETER_H_
