#ifndef DPIMP_ERROR_H_
#define DPIMP_ERROR_H_

#include <stdexcept>
#include <string>

namespace dpimp {

struct SourceLoc {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
  std::string ToString() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
};

// Base class for diagnostics tied to a source location. `what()` includes the
// location prefix; `message()` does not.
class Error : public std::runtime_error {
 public:
  Error(std::string message, SourceLoc loc)
      : std::runtime_error(loc.known() ? loc.ToString() + ": " + message
                                       : message),
        message_(std::move(message)),
        loc_(loc) {}

  const std::string& message() const { return message_; }
  const SourceLoc& loc() const { return loc_; }

 private:
  std::string message_;
  SourceLoc loc_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ExpansionError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

// A sensitivity typing failure; `premise` names the violated rule premise.
class TypeError : public Error {
 public:
  TypeError(std::string message, SourceLoc loc, std::string premise = {})
      : Error(std::move(message), loc), premise_(std::move(premise)) {}

  const std::string& premise() const { return premise_; }

 private:
  std::string premise_;
};

}  // namespace dpimp

#endif  // DPIMP_ERROR_H_
