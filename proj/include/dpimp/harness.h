#ifndef DPIMP_HARNESS_H_
#define DPIMP_HARNESS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dpimp/ast.h"
#include "dpimp/context.h"
#include "dpimp/value.h"

namespace dpimp {

// How to build a pair of neighboring inputs: one row added to or removed
// from the bag `target`.
struct NeighborSpec {
  enum class Op { kAddRow, kRemoveRow };

  std::string target;
  Op op = Op::kAddRow;
  // Values of the other variables (defaults where missing). If `base` holds
  // the target, its rows are used instead of generated ones.
  ProgramState base;
  int base_rows = 5;
  // Generated numbers are uniform in [low, high]; vector rows have
  // `row_length` entries.
  double low = 0.0;
  double high = 10.0;
  int row_length = 4;
};

// Throws std::invalid_argument if the target is not a declared bag, or on
// removing from an empty bag.
std::pair<ProgramState, ProgramState> GenerateNeighbors(
    const NeighborSpec& spec, const ShapeEnv& shapes, uint64_t seed);

struct EstimateOptions {
  int64_t trials = 100'000;
  int buckets = 40;
  uint64_t seed = 0;
  int64_t fuel = 1'000'000;
  // Scalar variables observed at the end of each run.
  std::vector<std::string> project;
  // Events with fewer hits on both sides are ignored.
  int64_t support_threshold = 20;
  // Width, in standard errors, of the one-sided margin subtracted from each
  // event's log ratio.
  double z = 3.0;
};

struct EventRow {
  std::string event;
  int64_t count1 = 0;
  int64_t count2 = 0;
  double p1 = 0;
  double p2 = 0;
  double log_ratio = 0;  // |ln(p1 / p2)|, with 0.5 added to empty counts
  double bound = 0;      // log_ratio minus its margin, at least 0
};

struct EpsilonEstimate {
  double epsilon_hat = 0;  // +inf when the outputs never overlap
  std::vector<EventRow> events;
  int64_t trials = 0;
  std::vector<std::string> projection;
  int buckets = 0;
  int64_t failures1 = 0;  // diverged or crashed runs on the first input
  int64_t failures2 = 0;
};

// Runs `program` on both inputs `trials` times with independent random
// streams, buckets the projected outputs over their pooled range, and bounds
// the largest log ratio of event probabilities from below. Throws
// std::invalid_argument for an unusable projection or when every run fails.
EpsilonEstimate EstimateEpsilon(const Program& program,
                                const ProgramState& first,
                                const ProgramState& second,
                                const EstimateOptions& options);

enum class Verdict { kPass, kViolation };

Verdict Judge(const EpsilonEstimate& estimate, const PrivacyCost& claimed,
              double slack);

}  // namespace dpimp

#endif  // DPIMP_HARNESS_H_
