#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tslice/algebra.hpp"
#include "tslice/readings.hpp"
#include "tslice/syntax.hpp"

namespace tslice {

/// Result of evaluating a script expression.
using Value = std::variant<std::size_t, Rational, Instantiation>;

enum class CommandKind { Check, Eval, Assert, Disambiguate, Explain };

struct CommandResult {
  CommandKind kind = CommandKind::Eval;
  int number = 1;  // 1-based, counted per kind
  int line = 0;    // 0 when the command did not come from a script
  std::string source;

  std::optional<Value> value;  // eval
  std::optional<Value> lhs, rhs;  // assert
  Cmp op = Cmp::Equal;
  std::optional<bool> truth;

  std::string statement;  // disambiguate / explain
  std::optional<Decision> decision;

  std::string summary;  // check
  std::optional<std::string> error;
};

enum class Status { Ok, False, Error };

struct Report {
  std::vector<CommandResult> commands;
  std::vector<Diagnostic> diagnostics;

  /// Error if any diagnostic or command error, else False if an assert
  /// failed, else Ok.
  Status status() const;
  int exit_code() const;  // 0 / 1 / 2
};

enum class Format { Text, Json };

std::string_view to_string(Status s);

/// Text is line-oriented prose; json is one document with status,
/// commands[] and diagnostics[] in that key order.
std::string format_report(const Report& report, Format format);

// ---- drivers ---------------------------------------------------------------

Report check_world(std::string_view world_text, std::string_view world_name);

Report run_script(std::string_view world_text, std::string_view world_name, std::string_view script_text,
                  std::string_view script_name, Policy policy = Policy::Strict);

/// `disambiguate` (explain = false) or `explain` one statement.
Report run_statement(std::string_view world_text, std::string_view world_name, std::string_view statement_id,
                     bool explain, Policy policy = Policy::Strict);

/// Evaluates one script expression against a world.
Value evaluate_expr(const World& world, const Expr& expr, Policy policy = Policy::Strict);

} // namespace tslice
