#ifndef DPIMP_REPORT_H_
#define DPIMP_REPORT_H_

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpimp/ast.h"
#include "dpimp/checker.h"
#include "dpimp/context.h"
#include "dpimp/expander.h"

namespace dpimp {

// Cost of one top-level statement of the main command.
struct TraceEntry {
  SourceLoc loc;
  std::string command;
  PrivacyCost cost;
};

struct TypingReport {
  TypingContext context;
  PrivacyCost total;  // sum of the trace costs
  std::vector<TraceEntry> trace;
  std::vector<RuleLogEntry> rules;
  std::vector<ExpansionWarning> warnings;

  std::vector<RuleLogEntry> Fallbacks() const;
};

// Expands, shape-checks and types `program`. Throws ExpansionError,
// ShapeError or TypeError.
TypingReport CheckProgram(const Program& program,
                          Checker::Options options = {});
// Also throws ParseError.
TypingReport CheckSource(std::string_view source,
                         Checker::Options options = {});

// JSON rendering of an ExtReal: a number, or the string "inf".
nlohmann::json ExtRealToJson(const ExtReal& r);

nlohmann::json ReportToJson(const TypingReport& report);
std::string ReportToText(const TypingReport& report);

}  // namespace dpimp

#endif  // DPIMP_REPORT_H_
