#include "dpimp/report.h"

#include <algorithm>
#include <sstream>

#include "dpimp/parser.h"
#include "dpimp/printer.h"
#include "dpimp/shape_check.h"

namespace dpimp {
namespace {

std::string Summary(const Cmd& c) {
  std::string text = PrettyPrint(c);
  text = text.substr(0, text.find('\n'));
  constexpr std::string_view kHint = "# expanded: ";
  if (text.rfind(kHint, 0) == 0) text = text.substr(kHint.size());
  constexpr size_t kMax = 72;
  if (text.size() > kMax) text = text.substr(0, kMax - 3) + "...";
  return text;
}

nlohmann::json CostToJson(const PrivacyCost& cost) {
  return {{"epsilon", ExtRealToJson(cost.epsilon)},
          {"delta", ExtRealToJson(cost.delta)}};
}

nlohmann::json RuleToJson(const RuleLogEntry& e) {
  return {{"extension", e.extension},
          {"loc", e.loc.ToString()},
          {"applied", e.applied},
          {"detail", e.detail}};
}

}  // namespace

std::vector<RuleLogEntry> TypingReport::Fallbacks() const {
  std::vector<RuleLogEntry> out;
  std::copy_if(rules.begin(), rules.end(), std::back_inserter(out),
               [](const RuleLogEntry& e) { return !e.applied; });
  return out;
}

TypingReport CheckProgram(const Program& program, Checker::Options options) {
  TypingReport report;
  ExpansionResult expanded = ExpandProgram(program);
  report.warnings = std::move(expanded.warnings);
  ShapeCheck(*expanded.cmd, program.Shapes());

  Checker checker(options);
  TypingContext ctx = TypingContext::FromProgram(program);
  for (const CmdPtr& stmt : FlattenSeq(expanded.cmd)) {
    CmdTyping t = checker.TypeCmd(ctx, *stmt);
    report.trace.push_back({stmt->loc, Summary(*stmt), t.cost});
    report.total += t.cost;
    ctx = std::move(t.ctx);
  }
  report.context = std::move(ctx);
  report.rules = checker.log();
  return report;
}

TypingReport CheckSource(std::string_view source, Checker::Options options) {
  return CheckProgram(ParseProgram(source), options);
}

nlohmann::json ExtRealToJson(const ExtReal& r) {
  if (r.is_infinite()) return "inf";
  return r.value();
}

nlohmann::json ReportToJson(const TypingReport& report) {
  nlohmann::json j;
  j["epsilon"] = ExtRealToJson(report.total.epsilon);
  j["delta"] = ExtRealToJson(report.total.delta);
  if (report.total.epsilon.exact()) {
    j["epsilon_exact"] = report.total.epsilon.exact()->ToString();
  }
  if (report.total.delta.exact()) {
    j["delta_exact"] = report.total.delta.exact()->ToString();
  }
  nlohmann::json ctx = nlohmann::json::object();
  for (const auto& [name, entry] : report.context.entries()) {
    ctx[name] = {{"shape", entry.shape.ToString()},
                 {"sens", ExtRealToJson(entry.sens)}};
  }
  j["context"] = std::move(ctx);
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : report.trace) {
    nlohmann::json e = CostToJson(t.cost);
    e["loc"] = t.loc.ToString();
    e["command"] = t.command;
    trace.push_back(std::move(e));
  }
  j["trace"] = std::move(trace);
  nlohmann::json rules = nlohmann::json::array();
  nlohmann::json fallbacks = nlohmann::json::array();
  for (const auto& r : report.rules) {
    rules.push_back(RuleToJson(r));
    if (!r.applied) fallbacks.push_back(RuleToJson(r));
  }
  j["rules"] = std::move(rules);
  j["fallbacks"] = std::move(fallbacks);
  nlohmann::json warnings = nlohmann::json::array();
  for (const auto& w : report.warnings) {
    warnings.push_back({{"loc", w.loc.ToString()}, {"message", w.message}});
  }
  j["warnings"] = std::move(warnings);
  return j;
}

std::string ReportToText(const TypingReport& report) {
  std::ostringstream out;
  out << "privacy cost: epsilon = " << report.total.epsilon.ToString()
      << ", delta = " << report.total.delta.ToString() << "\n\n";
  size_t width = 8;
  for (const auto& [name, entry] : report.context.entries()) {
    width = std::max(width, name.size());
  }
  out << "variable" << std::string(width - 8 + 2, ' ') << "sens\n";
  for (const auto& [name, entry] : report.context.entries()) {
    out << name << std::string(width - name.size() + 2, ' ')
        << entry.sens.ToString() << "  " << entry.shape.ToString() << "\n";
  }
  out << "\ntrace:\n";
  for (const auto& t : report.trace) {
    out << "  " << t.loc.ToString() << "  " << ToString(t.cost) << "  "
        << t.command << "\n";
  }
  for (const auto& r : report.rules) {
    if (r.applied && r.detail.empty()) continue;
    out << (r.applied ? "rule " : "fallback ") << r.extension << " at "
        << r.loc.ToString() << ": " << r.detail << "\n";
  }
  for (const auto& w : report.warnings) {
    out << "warning " << w.loc.ToString() << ": " << w.message << "\n";
  }
  return out.str();
}

}  // namespace dpimp
