#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tslice/error.hpp"
#include "tslice/rational.hpp"
#include "tslice/time.hpp"

namespace tslice {

struct Entity {
  std::string id;
  TimeRef lifespan;  // interval; the right end may be open
  bool invariant = false;
  std::optional<std::string> species;

  friend bool operator==(const Entity&, const Entity&) = default;
};

enum class TemporalProfile { Mutable, IndividualInvariant };

struct PredicateDecl {
  std::string name;
  std::size_t arity = 1;
  TemporalProfile profile = TemporalProfile::Mutable;
  bool cohort = false;

  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

/// A ground fact. `at == nullopt` is the `always` marker, legal only for
/// individual-invariant predicates.
struct Fact {
  std::string predicate;
  std::vector<std::string> args;
  std::optional<Tick> at;

  friend bool operator==(const Fact&, const Fact&) = default;
  friend auto operator<=>(const Fact&, const Fact&) = default;
};

struct MeasureFact {
  std::string measure;
  std::string entity;
  Tick at = 0;
  Rational value;

  friend bool operator==(const MeasureFact&, const MeasureFact&) = default;
};

/// Argument pattern of a predicate; nullopt slots are holes (`_`).
struct Pattern {
  std::vector<std::optional<std::string>> slots;

  static Pattern hole() { return Pattern{{std::nullopt}}; }

  std::size_t hole_count() const;
  /// Index of the first hole, or slots.size() when there is none.
  std::size_t hole_index() const;
  /// The argument tuple with the (single) hole replaced by `filler`.
  std::vector<std::string> fill(const std::string& filler) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend auto operator<=>(const Pattern&, const Pattern&) = default;
};

/// `P(x, _, z)`: a predicate together with a one-hole pattern.
struct Definition {
  std::string predicate;
  Pattern pattern;

  friend bool operator==(const Definition&, const Definition&) = default;
};

enum class Mode { DeRe, DeDicto };

struct CollectionDecl {
  std::string name;
  Mode mode = Mode::DeDicto;
  std::optional<Tick> anchor;  // present iff mode == DeRe
  Definition definition;

  friend bool operator==(const CollectionDecl&, const CollectionDecl&) = default;
};

enum class Direction { Less, More, Changed };

struct PredicationProfile {
  bool evolutive = false;
  std::string property;                 // predicate or measure name
  std::optional<Pattern> property_pattern;  // predicates only; defaults to (_)
  Direction direction = Direction::Changed;

  friend bool operator==(const PredicationProfile&, const PredicationProfile&) = default;
};

struct Statement {
  std::string id;
  std::string subject;  // collection name
  PredicationProfile profile;
  std::vector<Tick> eval_times;
  TimeRef span;
  std::optional<Tick> species_bound;
  std::optional<Mode> explicit_mode;

  friend bool operator==(const Statement&, const Statement&) = default;
};

enum class Policy { Strict, Lenient };

/// A temporal slice α@t. Slices of the same entity are equal when their
/// times agree, or always when the entity is invariant through time.
struct Slice {
  std::string entity;
  TimeRef at;
  bool invariant = false;
  bool out_of_lifespan = false;  // only produced by lenient slicing

  friend bool operator==(const Slice& a, const Slice& b) {
    return a.entity == b.entity && (a.invariant || a.at == b.at);
  }
};

std::string to_string(const Slice& s);

/// [A-Za-z_][A-Za-z0-9_]*, excluding the hole marker `_`.
bool is_identifier(std::string_view s);

class WorldBuilder;

/// Immutable knowledge base. Only WorldBuilder::build creates one, after
/// validation, so every accessor can assume a consistent world.
class World {
public:
  World() = default;

  const std::map<std::string, Entity, std::less<>>& entities() const { return entities_; }
  const std::map<std::string, PredicateDecl, std::less<>>& predicates() const { return predicates_; }
  const std::set<Fact>& facts() const { return facts_; }
  const std::vector<MeasureFact>& measures() const { return measures_; }
  const std::map<std::string, CollectionDecl, std::less<>>& collections() const { return collections_; }
  const std::map<std::string, Statement, std::less<>>& statements() const { return statements_; }

  const Entity* find_entity(std::string_view id) const;
  const PredicateDecl* find_predicate(std::string_view name) const;
  const CollectionDecl* find_collection(std::string_view name) const;
  const Statement* find_statement(std::string_view id) const;
  const std::vector<Fact>& facts_of(std::string_view predicate) const;
  const Rational* find_measure(std::string_view measure, std::string_view entity, Tick at) const;

  bool is_measure(std::string_view name) const { return measure_names_.contains(name); }
  /// Entity ids plus every non-entity symbol used as a fact argument.
  bool is_known_symbol(std::string_view sym) const;
  /// Distinct ticks mentioned by facts and measures.
  std::set<Tick> ticks() const;

  friend bool operator==(const World& a, const World& b) {
    return a.entities_ == b.entities_ && a.predicates_ == b.predicates_ && a.facts_ == b.facts_ &&
           a.measures_ == b.measures_ && a.collections_ == b.collections_ &&
           a.statements_ == b.statements_;
  }

private:
  friend class WorldBuilder;

  std::map<std::string, Entity, std::less<>> entities_;
  std::map<std::string, PredicateDecl, std::less<>> predicates_;
  std::set<Fact> facts_;
  std::vector<MeasureFact> measures_;  // sorted by (measure, entity, at)
  std::map<std::string, CollectionDecl, std::less<>> collections_;
  std::map<std::string, Statement, std::less<>> statements_;

  std::map<std::string, std::vector<Fact>, std::less<>> facts_by_predicate_;
  std::set<std::string, std::less<>> constants_;
  std::set<std::string, std::less<>> measure_names_;
};

/// Which declaration a validation issue points at: the item kind and its
/// insertion index in the builder.
enum class ItemKind { Entity, Predicate, Fact, Measure, Collection, Statement };

struct Issue {
  ItemKind item;
  std::size_t index;
  std::string message;
};

class WorldBuilder {
public:
  WorldBuilder& add(Entity e);
  WorldBuilder& add(PredicateDecl p);
  WorldBuilder& add(Fact f);
  WorldBuilder& add(MeasureFact m);
  WorldBuilder& add(CollectionDecl c);
  WorldBuilder& add(Statement s);

  /// All consistency problems, in declaration order per item kind.
  std::vector<Issue> validate() const;

  /// Throws Error(InvalidWorld) carrying the first issue when invalid.
  World build() const;

private:
  std::vector<Entity> entities_;
  std::vector<PredicateDecl> predicates_;
  std::vector<Fact> facts_;
  std::vector<MeasureFact> measures_;
  std::vector<CollectionDecl> collections_;
  std::vector<Statement> statements_;
};

// ---- ground operations -----------------------------------------------------

/// α@t. Strict policy rejects t outside ls(α); lenient tags the slice instead.
Slice slice(const World& world, std::string_view entity, TimeRef t, Policy policy = Policy::Strict);

/// { y@t | P(..., y, ...) holds at t }, ordered by y. Fillers that are not
/// entities (constants) come back as invariant slices.
std::vector<Slice> extension(const World& world, std::string_view predicate, const Pattern& pattern,
                             TimeRef t);
std::vector<Slice> extension(const World& world, const Definition& def, TimeRef t);

/// Cons_y(x): the recorded value at the slice's tick. Never defaults to zero.
Rational measure_value(const World& world, std::string_view measure, const Slice& s);

/// Throws UnknownPredicate / ArityMismatch / MultipleHoles / UnknownSymbol.
void check_pattern(const World& world, std::string_view predicate, const Pattern& pattern);

} // namespace tslice
