#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exotica/dsl/ast.hpp"
#include "exotica/error.hpp"
#include "exotica/group/coset.hpp"

namespace exotica::dsl {

// Evaluation failure inside a script (type errors, bad arguments, library
// errors), tagged with the position of the offending expression.
class ScriptError : public Error {
 public:
  ScriptError(const std::string& message, Position pos)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
        pos_(pos),
        message_(message) {}

  Position position() const noexcept { return pos_; }
  const std::string& bare_message() const noexcept { return message_; }

 private:
  Position pos_;
  std::string message_;
};

struct Config {
  std::int64_t budget = group::kDefaultCosetBudget;
  bool parallel_asserts = false;
  // When false every elapsed_ms is written as 0, making reports byte-comparable.
  bool record_timings = true;
};

enum class Status { Pass, Fail, Unknown };
std::string to_string(Status s);

struct AssertionResult {
  std::size_t index = 0;  // 1-based, in script order
  std::string text;
  Status status = Status::Unknown;
  std::string detail;
  std::optional<std::string> citation;
  double elapsed_ms = 0;
  Position pos;
};

struct VerificationReport {
  std::string script;
  std::vector<AssertionResult> assertions;

  std::size_t count(Status s) const;
  // 0 all pass, 1 any fail, 2 no fail but some unknown.
  int exit_code() const;
  std::string to_json() const;
  std::string to_text() const;
};

inline constexpr int kExitError = 3;

// Names of the builtin functions and bundled items, for parse-time checks.
ParseOptions script_parse_options();

Script parse(std::string_view text, std::string id);

// Runs statements in order. Throws ScriptError on runtime errors.
VerificationReport execute(const Script& s, const Config& config = {});

// Builtin signatures, one per line, for the README and `exotica functions`.
std::vector<std::string> builtin_signatures();

}  // namespace exotica::dsl
