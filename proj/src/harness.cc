#include "dpimp/harness.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "dpimp/expander.h"
#include "dpimp/interpreter.h"
#include "dpimp/rng.h"
#include "dpimp/shape_check.h"

namespace dpimp {
namespace {

Value RandomValue(const Shape& shape, const NeighborSpec& spec, Rng& rng,
                  int depth = 0) {
  switch (shape.kind()) {
    case Shape::Kind::kInt: {
      auto lo = static_cast<int64_t>(std::ceil(spec.low));
      auto hi = std::max(lo, static_cast<int64_t>(std::floor(spec.high)));
      return Value::Int(lo + static_cast<int64_t>(
                                 rng.NextU64() % static_cast<uint64_t>(hi - lo + 1)));
    }
    case Shape::Kind::kFloat:
      return Value::Float(spec.low + (spec.high - spec.low) * rng.NextOpenUnit());
    case Shape::Kind::kBool:
      return Value::Bool(rng.NextU64() & 1);
    case Shape::Kind::kVector:
    case Shape::Kind::kBag: {
      int n = depth == 0 ? spec.row_length : static_cast<int>(rng.NextU64() % 3);
      std::vector<Value> elems;
      for (int k = 0; k < n; ++k) {
        elems.push_back(RandomValue(shape.elem(), spec, rng, depth + 1));
      }
      return shape.kind() == Shape::Kind::kVector ? Value::Vec(std::move(elems))
                                                  : Value::Bag(std::move(elems));
    }
  }
  return Value::Int(0);
}

// Scalar reading of a projected variable.
double Observe(const ProgramState& state, const std::string& name) {
  const Value& v = state.at(name);
  if (v.is_bool()) return v.as_bool() ? 1.0 : 0.0;
  return v.as_number();
}

struct Run {
  bool ok = false;
  std::vector<double> values;
};

}  // namespace

std::pair<ProgramState, ProgramState> GenerateNeighbors(
    const NeighborSpec& spec, const ShapeEnv& shapes, uint64_t seed) {
  auto it = shapes.find(spec.target);
  if (it == shapes.end() || it->second.kind() != Shape::Kind::kBag) {
    throw std::invalid_argument("neighbor target '" + spec.target +
                                "' must be a declared bag");
  }
  const Shape& row_shape = it->second.elem();
  Rng rng(seed);

  ProgramState first;
  for (const auto& [name, shape] : shapes) {
    auto b = spec.base.find(name);
    first[name] = b != spec.base.end() ? CoerceToShape(b->second, shape)
                                       : DefaultValue(shape);
  }
  if (!spec.base.count(spec.target)) {
    std::vector<Value> rows;
    for (int k = 0; k < spec.base_rows; ++k) {
      rows.push_back(RandomValue(row_shape, spec, rng));
    }
    first[spec.target] = Value::Bag(std::move(rows));
  }
  if (!WellShaped(first, shapes)) {
    throw std::invalid_argument("base state is not well shaped");
  }

  ProgramState second = first;
  auto& rows = second[spec.target].mutable_elems();
  if (spec.op == NeighborSpec::Op::kAddRow) {
    rows.push_back(RandomValue(row_shape, spec, rng));
  } else {
    if (rows.empty()) {
      throw std::invalid_argument("cannot remove a row from an empty bag");
    }
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(rng.NextU64() %
                                                          rows.size()));
  }
  return {std::move(first), std::move(second)};
}

EpsilonEstimate EstimateEpsilon(const Program& program,
                                const ProgramState& first,
                                const ProgramState& second,
                                const EstimateOptions& options) {
  if (options.trials <= 0 || options.buckets <= 0) {
    throw std::invalid_argument("trials and buckets must be positive");
  }
  ShapeEnv shapes = program.Shapes();
  if (options.project.empty()) {
    throw std::invalid_argument("no projected output variables");
  }
  for (const auto& name : options.project) {
    auto it = shapes.find(name);
    if (it == shapes.end()) {
      throw std::invalid_argument("projected variable '" + name +
                                  "' is not declared");
    }
    if (it->second.is_collection()) {
      throw std::invalid_argument("projected variable '" + name +
                                  "' is not a scalar");
    }
  }
  CmdPtr cmd = ExpandProgram(program).cmd;
  ShapeCheck(*cmd, shapes);
  Interpreter interp(shapes);

  EpsilonEstimate est;
  est.trials = options.trials;
  est.projection = options.project;
  est.buckets = options.buckets;

  std::vector<Run> runs[2];
  const ProgramState* inputs[2] = {&first, &second};
  size_t dims = options.project.size();
  std::vector<double> lo(dims, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dims, -std::numeric_limits<double>::infinity());
  for (int side = 0; side < 2; ++side) {
    runs[side].reserve(options.trials);
    for (int64_t t = 0; t < options.trials; ++t) {
      Rng rng(Rng::DeriveSeed(options.seed, 2 * static_cast<uint64_t>(t) + side));
      ExecOutcome out = interp.Exec(*inputs[side], *cmd, rng, options.fuel);
      Run run;
      if (out.final()) {
        run.ok = true;
        for (size_t d = 0; d < dims; ++d) {
          double v = Observe(out.state, options.project[d]);
          run.values.push_back(v);
          lo[d] = std::min(lo[d], v);
          hi[d] = std::max(hi[d], v);
        }
      } else {
        ++(side == 0 ? est.failures1 : est.failures2);
      }
      runs[side].push_back(std::move(run));
    }
  }
  if (est.failures1 == options.trials && est.failures2 == options.trials) {
    throw std::invalid_argument("every run diverged or crashed");
  }

  // Event key: one bucket per projected variable, or {-1} for a failed run.
  std::map<std::vector<int>, std::pair<int64_t, int64_t>> counts;
  for (int side = 0; side < 2; ++side) {
    for (const Run& run : runs[side]) {
      std::vector<int> key;
      if (!run.ok) {
        key.push_back(-1);
      } else {
        for (size_t d = 0; d < dims; ++d) {
          double span = hi[d] - lo[d];
          int b = 0;
          if (span > 0) {
            b = static_cast<int>((run.values[d] - lo[d]) / span *
                                 options.buckets);
            b = std::clamp(b, 0, options.buckets - 1);
          }
          key.push_back(b);
        }
      }
      auto& c = counts[key];
      ++(side == 0 ? c.first : c.second);
    }
  }

  double n = static_cast<double>(options.trials);
  bool overlap = false;
  for (const auto& [key, c] : counts) {
    EventRow row;
    for (size_t k = 0; k < key.size(); ++k) {
      if (k) row.event += ",";
      row.event += key[k] < 0 ? "fail" : std::to_string(key[k]);
    }
    row.count1 = c.first;
    row.count2 = c.second;
    row.p1 = c.first / n;
    row.p2 = c.second / n;
    if (c.first > 0 && c.second > 0) overlap = true;
    double a = c.first > 0 ? c.first : 0.5;
    double b = c.second > 0 ? c.second : 0.5;
    row.log_ratio = std::fabs(std::log(a / b));
    bool supported = std::max(c.first, c.second) >= options.support_threshold &&
                     (std::min(c.first, c.second) >= options.support_threshold ||
                      std::min(c.first, c.second) == 0);
    if (supported) {
      double margin = options.z * std::sqrt(1.0 / a + 1.0 / b);
      row.bound = std::max(0.0, row.log_ratio - margin);
      est.epsilon_hat = std::max(est.epsilon_hat, row.bound);
    }
    est.events.push_back(std::move(row));
  }
  if (!overlap) est.epsilon_hat = std::numeric_limits<double>::infinity();
  return est;
}

Verdict Judge(const EpsilonEstimate& estimate, const PrivacyCost& claimed,
              double slack) {
  return estimate.epsilon_hat > claimed.epsilon.value() + slack
             ? Verdict::kViolation
             : Verdict::kPass;
}

}  // namespace dpimp
