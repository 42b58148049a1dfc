#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tslice/algebra.hpp"
#include "tslice/world.hpp"

namespace tslice {

struct RuleFiring {
  std::string id;  // "R1", "R2", "R3", "R0" or "E0"
  std::string justification;

  friend bool operator==(const RuleFiring&, const RuleFiring&) = default;
};

enum class ReadingKind { RatioEvolution, IndividualEvolution, GlobalAggregate };
enum class Truth { Pending, True, False, Undefined };

struct Witness {
  std::string label;
  std::vector<std::pair<std::string, Rational>> values;
  std::optional<bool> holds;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Reading {
  ReadingKind kind = ReadingKind::RatioEvolution;
  Mode mode = Mode::DeRe;  // the interpretation the reading is computed under
  std::string formula;
  Truth truth = Truth::Pending;
  std::string reason;  // set iff truth == Undefined
  std::optional<std::string> counterexample;
  std::vector<Witness> witnesses;

  friend bool operator==(const Reading&, const Reading&) = default;
};

struct Decision {
  Mode mode = Mode::DeRe;
  std::vector<RuleFiring> fired_rules;
  std::vector<std::string> notes;
  std::vector<Reading> readings;

  std::vector<std::string> rule_ids() const;

  friend bool operator==(const Decision&, const Decision&) = default;
};

struct LifespanCheck {
  bool exceeds = false;
  std::optional<Tick> bound;        // nullopt: no finite bound was available
  std::optional<Tick> span_length;  // nullopt: open span
};

std::string_view to_string(Mode mode);
std::string_view to_string(ReadingKind kind);
std::string_view to_string(Truth truth);

/// True iff the subject's extensions at the given times share no entity.
bool cohort_disjoint(const World& world, const Definition& subject, const std::vector<Tick>& eval_times);

/// Compares the statement span with the declared species bound, or with the
/// longest lifespan among candidate members when no bound is declared.
/// Throws UnboundedSpan for an open span with nothing finite to compare.
LifespanCheck lifespan_check(const World& world, const Statement& stmt);

/// Default de re (R0) unless a forcing rule applies: R1 evolutive predication
/// over an individual-invariant property, R2 cohort subject, R3 span longer
/// than a life. Every applicable rule is recorded, in that order. An explicit
/// mode on the statement overrides the outcome and is recorded as E0.
Decision decide_mode(const World& world, const Statement& stmt);

/// Readings licensed by a mode, with formulas but no truth value yet.
std::vector<Reading> enumerate_readings(const World& world, const Statement& stmt, Mode mode);

/// Never throws on calculus errors; they become Truth::Undefined.
Reading evaluate_reading(const World& world, const Statement& stmt, const Reading& reading,
                         Policy policy = Policy::Strict);

/// decide_mode followed by enumerate + evaluate.
Decision explain(const World& world, const Statement& stmt, Policy policy = Policy::Strict);

} // namespace tslice
