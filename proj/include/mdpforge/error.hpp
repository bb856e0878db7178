#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace mdpforge {

// Coarse classification shared by the CLI exit codes and the C ABI error codes.
enum class ErrorCategory {
  Syntax = 1,    // lexing, parsing, declarations, expansion
  Semantic = 2,  // model validation, solver failures
  State = 3,     // misuse of a running session or handle
  Io = 4,        // unreadable or unwritable files
};

/// Process exit code for a failure of the given category: 1 for I/O and
/// syntax errors, 2 for semantic errors, 3 for session misuse.
inline int exit_code(ErrorCategory category) {
  return category == ErrorCategory::Io ? 1 : static_cast<int>(category);
}

struct SourcePos {
  int line = 1;
  int col = 1;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// An error that can be attributed to a position in DSL source text.
class SourceError : public Error {
 public:
  SourceError(ErrorCategory category, SourcePos pos, const std::string& what)
      : Error(category, format(pos, what)), pos_(pos), message_(what) {}

  SourcePos pos() const noexcept { return pos_; }
  int line() const noexcept { return pos_.line; }
  int col() const noexcept { return pos_.col; }
  /// Message without the "line:col: " prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string format(SourcePos pos, const std::string& what) {
    return std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + what;
  }

  SourcePos pos_;
  std::string message_;
};

}  // namespace mdpforge
