#pragma once

#include <stdexcept>
#include <string>

namespace hfrelay {

/// Malformed input file (channel or config). Carries the 1-based line number
/// and the offending field name when known.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, int line = 0, std::string field = {})
      : std::runtime_error(format(message, line, field)),
        line_(line),
        field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

private:
  static std::string format(const std::string& message, int line, const std::string& field) {
    std::string out = message;
    if (line > 0) out += " (line " + std::to_string(line) + ")";
    if (!field.empty()) out += " [field: " + field + "]";
    return out;
  }

  int line_;
  std::string field_;
};

/// Refusal to run an operation whose cost guard was exceeded
/// (e.g. exhaustive subset enumeration above the antenna limit).
class GuardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace hfrelay
