// Command-line driver: check, expand, run, dptest, corpus, gen-gd-data.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dpimp/expander.h"
#include "dpimp/harness.h"
#include "dpimp/interpreter.h"
#include "dpimp/parser.h"
#include "dpimp/printer.h"
#include "dpimp/report.h"
#include "dpimp/rng.h"
#include "dpimp/shape_check.h"
#include "dpimp/value_json.h"
#include "dpimp/vars.h"

namespace {

using dpimp::Program;
using nlohmann::json;

constexpr int kExitTypeError = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitCrashed = 3;
constexpr int kExitViolation = 4;
constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json ReadJson(const std::string& path) {
  try {
    return json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

dpimp::ProgramState LoadState(const Program& program, const std::string& path) {
  json j = path.empty() ? json::object() : ReadJson(path);
  try {
    return dpimp::StateFromJson(j, program.Shapes());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Laplace targets anywhere in `c`, the default outputs of dptest.
void LaplaceTargets(const dpimp::Cmd& c, std::vector<std::string>& out) {
  std::visit(dpimp::Overloaded{
                 [&](const dpimp::LaplaceCmd& x) {
                   if (std::find(out.begin(), out.end(), x.target) ==
                       out.end()) {
                     out.push_back(x.target);
                   }
                 },
                 [&](const dpimp::SeqCmd& x) {
                   LaplaceTargets(*x.first, out);
                   LaplaceTargets(*x.second, out);
                 },
                 [&](const dpimp::IfCmd& x) {
                   LaplaceTargets(*x.then_branch, out);
                   LaplaceTargets(*x.else_branch, out);
                 },
                 [&](const dpimp::WhileCmd& x) { LaplaceTargets(*x.body, out); },
                 [&](const dpimp::HintedCmd& x) { LaplaceTargets(*x.body, out); },
                 [](const auto&) {},
             },
             c.node);
}

int Check(const std::string& path, const std::string& format) {
  dpimp::TypingReport report = dpimp::CheckSource(ReadFile(path));
  if (format == "text") {
    std::cout << dpimp::ReportToText(report);
  } else {
    std::cout << dpimp::ReportToJson(report).dump(2) << "\n";
  }
  return 0;
}

int Expand(const std::string& path) {
  Program program = dpimp::ParseProgram(ReadFile(path));
  dpimp::ExpansionResult expanded = dpimp::ExpandProgram(program);
  for (const auto& w : expanded.warnings) {
    std::cerr << path << ":" << w.loc.ToString() << ": warning: " << w.message
              << "\n";
  }
  program.extensions.clear();
  program.main = expanded.cmd;
  std::cout << dpimp::PrettyPrint(program);
  return 0;
}

int Run(const std::string& path, const std::string& input, uint64_t seed,
        int64_t fuel) {
  Program program = dpimp::ParseProgram(ReadFile(path));
  dpimp::CmdPtr cmd = dpimp::ExpandProgram(program).cmd;
  dpimp::ShapeEnv shapes = program.Shapes();
  dpimp::ShapeCheck(*cmd, shapes);
  dpimp::Interpreter interp(shapes);
  dpimp::ExecOutcome out =
      interp.Exec(LoadState(program, input), *cmd, {seed, fuel});
  json j;
  j["outcome"] = std::string(dpimp::OutcomeName(out.kind));
  if (out.final()) {
    j["state"] = dpimp::StateToJson(out.state);
  } else {
    j["reason"] = out.reason;
    if (out.loc.known()) j["loc"] = out.loc.ToString();
  }
  std::cout << j.dump(2) << "\n";
  if (out.diverged()) return kExitDiverged;
  if (out.crashed()) return kExitCrashed;
  return 0;
}

struct DpTestArgs {
  std::string path;
  std::string input;
  std::string target;
  std::string op = "add";
  std::vector<std::string> project;
  int64_t trials = 100'000;
  int buckets = 40;
  double slack = 0.15;
  uint64_t seed = 0;
  int64_t fuel = 1'000'000;
};

int DpTest(const DpTestArgs& a) {
  Program program = dpimp::ParseProgram(ReadFile(a.path));
  dpimp::TypingReport report = dpimp::CheckProgram(program);

  dpimp::NeighborSpec spec;
  spec.target = a.target;
  if (spec.target.empty()) {
    for (const auto& d : program.declarations) {
      if (d.shape.kind() == dpimp::Shape::Kind::kBag &&
          d.sensitivity.is_positive()) {
        if (!spec.target.empty()) {
          throw UsageError("several sensitive bags; pass --target");
        }
        spec.target = d.name;
      }
    }
    if (spec.target.empty()) throw UsageError("no sensitive bag; pass --target");
  }
  spec.op = a.op == "remove" ? dpimp::NeighborSpec::Op::kRemoveRow
                             : dpimp::NeighborSpec::Op::kAddRow;
  if (!a.input.empty()) {
    json j = ReadJson(a.input);
    for (const auto& [name, value] : j.items()) {
      const dpimp::Declaration* d = program.Find(name);
      if (d == nullptr) throw UsageError("unknown variable " + name);
      spec.base[name] = dpimp::ValueFromJson(value, d->shape);
    }
  }

  dpimp::EstimateOptions opts;
  opts.trials = a.trials;
  opts.buckets = a.buckets;
  opts.seed = a.seed;
  opts.fuel = a.fuel;
  opts.project = a.project;
  if (opts.project.empty()) LaplaceTargets(*program.main, opts.project);
  if (opts.project.empty()) {
    dpimp::CmdPtr cmd = dpimp::ExpandProgram(program).cmd;
    LaplaceTargets(*cmd, opts.project);
  }
  if (opts.project.empty()) throw UsageError("nothing to observe; pass --project");

  auto [first, second] =
      dpimp::GenerateNeighbors(spec, program.Shapes(), a.seed);
  dpimp::EpsilonEstimate est =
      dpimp::EstimateEpsilon(program, first, second, opts);
  dpimp::Verdict verdict = dpimp::Judge(est, report.total, a.slack);

  json j;
  j["claimed_epsilon"] = dpimp::ExtRealToJson(report.total.epsilon);
  j["claimed_delta"] = dpimp::ExtRealToJson(report.total.delta);
  j["epsilon_hat"] = std::isinf(est.epsilon_hat) ? json("inf")
                                                 : json(est.epsilon_hat);
  j["slack"] = a.slack;
  j["verdict"] = verdict == dpimp::Verdict::kPass ? "pass" : "violation";
  j["trials"] = est.trials;
  j["buckets"] = est.buckets;
  j["projection"] = est.projection;
  j["failures"] = {est.failures1, est.failures2};
  json events = json::array();
  for (const auto& e : est.events) {
    events.push_back({{"event", e.event},
                      {"p1", e.p1},
                      {"p2", e.p2},
                      {"log_ratio", e.log_ratio},
                      {"bound", e.bound}});
  }
  j["events"] = std::move(events);
  std::cout << j.dump(2) << "\n";
  return verdict == dpimp::Verdict::kPass ? 0 : kExitViolation;
}

int Corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw UsageError("no such directory " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".fuzzi") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  int failures = 0;
  for (const auto& f : files) {
    std::cout << f.filename().string() << ": ";
    try {
      dpimp::TypingReport r = dpimp::CheckSource(ReadFile(f.string()));
      std::cout << "epsilon " << r.total.epsilon.ToString() << ", delta "
                << r.total.delta.ToString() << "\n";
    } catch (const dpimp::Error& e) {
      ++failures;
      std::cout << "error: " << e.what() << "\n";
    }
  }
  return failures == 0 ? 0 : kExitTypeError;
}

// Rows of 784 pixels and a label in the last slot. Only the first
// `features` pixels carry signal; the rest stay zero.
int GenGdData(int rows, int features, uint64_t seed) {
  constexpr int kWidth = 785;
  if (features < 1 || features >= kWidth) throw UsageError("bad --features");
  dpimp::Rng rng(seed);
  std::vector<double> truth(features);
  for (auto& t : truth) t = 2.0 * rng.NextOpenUnit() - 1.0;
  json db = json::array();
  for (int r = 0; r < rows; ++r) {
    std::vector<double> row(kWidth, 0.0);
    double score = 0;
    for (int k = 0; k < features; ++k) {
      row[k] = 2.0 * rng.NextOpenUnit() - 1.0;
      score += truth[k] * row[k];
    }
    row[kWidth - 1] = score >= 0 ? 1.0 : -1.0;
    db.push_back(row);
  }
  json j;
  j["db"] = {{"bag", db}};
  j["w"] = std::vector<double>(kWidth, 0.0);
  std::cout << j.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensitivity checker and interpreter for a differentially "
               "private imperative language"};
  app.require_subcommand(1);

  std::string path, format = "json", input, dir = "corpus";
  uint64_t seed = 0;
  int64_t fuel = 1'000'000;
  DpTestArgs dp;
  int rows = 20, features = 4;

  auto* check = app.add_subcommand("check", "Typecheck and report privacy cost");
  check->add_option("file", path)->required();
  check->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* expand = app.add_subcommand("expand", "Print the expanded program");
  expand->add_option("file", path)->required();

  auto* run = app.add_subcommand("run", "Run once and print the final store");
  run->add_option("file", path)->required();
  run->add_option("--input", input, "JSON object of initial values");
  run->add_option("--seed", seed);
  run->add_option("--fuel", fuel, "Iteration limit per loop execution");

  auto* dptest = app.add_subcommand("dptest", "Statistically test the claim");
  dptest->add_option("file", dp.path)->required();
  dptest->add_option("--input", dp.input, "JSON object of base values");
  dptest->add_option("--target", dp.target, "Bag that gains or loses a row");
  dptest->add_option("--op", dp.op)->check(CLI::IsMember({"add", "remove"}));
  dptest->add_option("--project", dp.project, "Observed scalar variables");
  dptest->add_option("--trials", dp.trials)->check(CLI::PositiveNumber);
  dptest->add_option("--buckets", dp.buckets)->check(CLI::PositiveNumber);
  dptest->add_option("--slack", dp.slack)->check(CLI::NonNegativeNumber);
  dptest->add_option("--seed", dp.seed);
  dptest->add_option("--fuel", dp.fuel);

  auto* corpus = app.add_subcommand("corpus", "Check every program in a directory");
  corpus->add_option("--dir", dir);

  auto* gen = app.add_subcommand("gen-gd-data",
                                 "Synthetic input for the gradient-descent program");
  gen->add_option("--rows", rows);
  gen->add_option("--features", features);
  gen->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) return Check(path, format);
    if (*expand) return Expand(path);
    if (*run) return Run(path, input, seed, fuel);
    if (*dptest) return DpTest(dp);
    if (*corpus) return Corpus(dir);
    if (*gen) return GenGdData(rows, features, seed);
  } catch (const UsageError& e) {
    std::cerr << "dpimp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dpimp::Error& e) {
    std::cerr << path << dp.path << ":" << e.what() << "\n";
    return kExitTypeError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dpimp: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
