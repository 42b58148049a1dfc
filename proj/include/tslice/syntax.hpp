#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tslice/world.hpp"

namespace tslice {

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  std::string source_name;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// "youth.tcw:3:14: error: arity mismatch ..."
std::string to_string(const Diagnostic& d);

// ---- worlds (.tcw) ---------------------------------------------------------

struct WorldParse {
  std::optional<World> world;  // set iff there are no error diagnostics
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return world.has_value(); }
};

WorldParse parse_world(std::string_view text, std::string_view source_name = "<world>");

/// Canonical text: entities, predicates, facts, measures, collections and
/// statements, each section in lexicographic order.
std::string render_world(const World& world);

std::string render_pattern(const Pattern& p);        // "(_, tobacco)"
std::string render_definition(const Definition& d);  // "smokes(_, tobacco)"
std::string render_interval(const TimeRef& t);       // "[1984, *]"

// ---- scripts (.tcq) --------------------------------------------------------

/// `C @ tick [| P(pattern)]...`
struct InstExpr {
  std::string collection;
  Tick at = 0;
  std::vector<Definition> filters;
  int line = 1;
  int column = 1;
};

struct CardExpr { InstExpr inst; };
struct RatioExpr { InstExpr sub; InstExpr super; };
struct SumExpr { std::string measure; InstExpr inst; int column = 1; };
struct NumberExpr { Rational value; };

using Expr = std::variant<InstExpr, CardExpr, RatioExpr, SumExpr, NumberExpr>;

enum class Cmp { Less, Greater, Equal };

struct EvalCmd { Expr expr; };
struct AssertCmd { Expr lhs; Cmp op = Cmp::Equal; Expr rhs; };
struct DisambiguateCmd { std::string statement; int column = 1; };
struct ExplainCmd { std::string statement; int column = 1; };

struct Command {
  std::variant<EvalCmd, AssertCmd, DisambiguateCmd, ExplainCmd> body;
  int line = 1;
  std::string source;  // the command text, trimmed
};

struct Script {
  std::vector<Command> commands;
};

struct ScriptParse {
  std::optional<Script> script;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return script.has_value(); }
};

ScriptParse parse_script(std::string_view text, std::string_view source_name = "<script>");

/// Checks every name a script mentions against a loaded world.
std::vector<Diagnostic> resolve_script(const Script& script, const World& world,
                                       std::string_view source_name = "<script>");

std::string render_expr(const Expr& e);
std::string_view to_string(Cmp op);

} // namespace tslice
