#ifndef DPIMP_TESTS_SUPPORT_PROGRAM_GEN_H_
#define DPIMP_TESTS_SUPPORT_PROGRAM_GEN_H_

#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "dpimp/ast.h"
#include "dpimp/context.h"
#include "dpimp/value.h"

namespace dpimp::testing {

// Random well-shaped deterministic core programs over a fixed set of
// variables, with random contexts and neighboring state pairs.
//
// Variables: a, b, k : int; x, y, z : float; p, q : bool; v : [float];
// u : [int]; g : {float}; h : {int}. `k` only counts bounded loops.
class ProgramGen {
 public:
  explicit ProgramGen(uint64_t seed) : rng_(seed) {}

  static ShapeEnv Shapes();

  TypingContext RandomContext();
  CmdPtr RandomCmd(int depth);
  ExprPtr RandomExpr(const Shape& shape, int depth);

  Value RandomValue(const Shape& shape);
  ProgramState RandomState();
  // A second state within `ctx` of `first` (bags also reshuffled).
  ProgramState Neighbor(const ProgramState& first, const TypingContext& ctx);

  std::mt19937_64& rng() { return rng_; }

 private:
  int Uniform(int lo, int hi);
  bool Chance(double p);
  ExprPtr IntExpr(int depth);
  ExprPtr FloatExpr(int depth);
  ExprPtr BoolExpr(int depth);
  ExprPtr NumericLeaf();
  Value Perturb(const Value& v, const Shape& shape, const ExtReal& budget);

  std::mt19937_64 rng_;
};

}  // namespace dpimp::testing

#endif  // DPIMP_TESTS_SUPPORT_PROGRAM_GEN_H_
