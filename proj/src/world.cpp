#include "tslice/world.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace tslice {

// ---- Pattern ---------------------------------------------------------------

std::size_t Pattern::hole_count() const {
  return static_cast<std::size_t>(std::count(slots.begin(), slots.end(), std::nullopt));
}

std::size_t Pattern::hole_index() const {
  return static_cast<std::size_t>(std::find(slots.begin(), slots.end(), std::nullopt) - slots.begin());
}

std::vector<std::string> Pattern::fill(const std::string& filler) const {
  std::vector<std::string> args;
  args.reserve(slots.size());
  for (const auto& slot : slots) args.push_back(slot ? *slot : filler);
  return args;
}

std::string to_string(const Slice& s) { return s.entity + "@" + to_string(s.at); }

bool is_identifier(std::string_view s) {
  if (s.empty() || s == "_") return false;
  if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// ---- World lookups ---------------------------------------------------------

namespace {

template <class Map>
auto find_in(const Map& m, std::string_view key) -> const typename Map::mapped_type* {
  auto it = m.find(key);
  return it == m.end() ? nullptr : &it->second;
}

auto measure_key(const MeasureFact& m) { return std::tie(m.measure, m.entity, m.at); }

} // namespace

const Entity* World::find_entity(std::string_view id) const { return find_in(entities_, id); }
const PredicateDecl* World::find_predicate(std::string_view name) const { return find_in(predicates_, name); }
const CollectionDecl* World::find_collection(std::string_view name) const { return find_in(collections_, name); }
const Statement* World::find_statement(std::string_view id) const { return find_in(statements_, id); }

const std::vector<Fact>& World::facts_of(std::string_view predicate) const {
  static const std::vector<Fact> none;
  auto it = facts_by_predicate_.find(predicate);
  return it == facts_by_predicate_.end() ? none : it->second;
}

const Rational* World::find_measure(std::string_view measure, std::string_view entity, Tick at) const {
  auto it = std::lower_bound(measures_.begin(), measures_.end(), std::make_tuple(measure, entity, at),
                             [](const MeasureFact& m, const auto& key) {
                               return std::make_tuple(std::string_view(m.measure),
                                                      std::string_view(m.entity), m.at) < key;
                             });
  if (it == measures_.end() || it->measure != measure || it->entity != entity || it->at != at) return nullptr;
  return &it->value;
}

bool World::is_known_symbol(std::string_view sym) const {
  return entities_.contains(sym) || constants_.contains(sym);
}

std::set<Tick> World::ticks() const {
  std::set<Tick> out;
  for (const auto& f : facts_)
    if (f.at) out.insert(*f.at);
  for (const auto& m : measures_) out.insert(m.at);
  return out;
}

// ---- WorldBuilder ----------------------------------------------------------

WorldBuilder& WorldBuilder::add(Entity e) { entities_.push_back(std::move(e)); return *this; }
WorldBuilder& WorldBuilder::add(PredicateDecl p) { predicates_.push_back(std::move(p)); return *this; }
WorldBuilder& WorldBuilder::add(Fact f) { facts_.push_back(std::move(f)); return *this; }
WorldBuilder& WorldBuilder::add(MeasureFact m) { measures_.push_back(std::move(m)); return *this; }
WorldBuilder& WorldBuilder::add(CollectionDecl c) { collections_.push_back(std::move(c)); return *this; }
WorldBuilder& WorldBuilder::add(Statement s) { statements_.push_back(std::move(s)); return *this; }

namespace {

// Checks a predicate/pattern pair against declarations; returns an empty
// string when fine.
std::string pattern_problem(const std::map<std::string, const PredicateDecl*>& preds,
                            const std::set<std::string>& symbols, const std::string& predicate,
                            const Pattern& pattern) {
  auto it = preds.find(predicate);
  if (it == preds.end()) return "unknown predicate '" + predicate + "'";
  if (pattern.slots.size() != it->second->arity)
    return "arity mismatch: '" + predicate + "' takes " + std::to_string(it->second->arity) +
           " argument(s), pattern has " + std::to_string(pattern.slots.size());
  if (pattern.hole_count() != 1) return "pattern must contain exactly one '_' hole";
  for (const auto& slot : pattern.slots)
    if (slot && !symbols.contains(*slot)) return "unknown symbol '" + *slot + "' in pattern";
  return {};
}

} // namespace

std::vector<Issue> WorldBuilder::validate() const {
  std::vector<Issue> issues;
  auto report = [&](ItemKind k, std::size_t i, std::string msg) { issues.push_back({k, i, std::move(msg)}); };

  std::map<std::string, const Entity*> entities;
  for (std::size_t i = 0; i < entities_.size(); ++i) {
    const auto& e = entities_[i];
    if (!is_identifier(e.id) || (e.species && !is_identifier(*e.species)))
      report(ItemKind::Entity, i, "invalid identifier in entity '" + e.id + "'");
    if (!entities.emplace(e.id, &e).second) report(ItemKind::Entity, i, "duplicate entity id '" + e.id + "'");
    if (!e.lifespan.is_valid())
      report(ItemKind::Entity, i, "malformed interval: lifespan of '" + e.id + "' starts after it ends");
  }

  std::set<std::string> measure_names;
  for (const auto& m : measures_) measure_names.insert(m.measure);

  std::map<std::string, const PredicateDecl*> preds;
  for (std::size_t i = 0; i < predicates_.size(); ++i) {
    const auto& p = predicates_[i];
    if (!is_identifier(p.name)) report(ItemKind::Predicate, i, "invalid predicate name '" + p.name + "'");
    if (!preds.emplace(p.name, &p).second) report(ItemKind::Predicate, i, "duplicate predicate '" + p.name + "'");
    if (p.arity == 0) report(ItemKind::Predicate, i, "predicate '" + p.name + "' must have arity >= 1");
    if (measure_names.contains(p.name))
      report(ItemKind::Predicate, i, "'" + p.name + "' is declared both as a predicate and a measure");
  }

  std::set<std::string> symbols;
  for (const auto& [id, e] : entities) symbols.insert(id);
  for (std::size_t i = 0; i < facts_.size(); ++i) {
    const auto& f = facts_[i];
    for (const auto& a : f.args) {
      symbols.insert(a);
      if (!is_identifier(a)) report(ItemKind::Fact, i, "invalid symbol '" + a + "' in fact");
    }
    auto it = preds.find(f.predicate);
    if (it == preds.end()) {
      report(ItemKind::Fact, i, "unknown predicate '" + f.predicate + "' in fact");
      continue;
    }
    if (f.args.size() != it->second->arity)
      report(ItemKind::Fact, i,
             "arity mismatch: '" + f.predicate + "' takes " + std::to_string(it->second->arity) +
                 " argument(s), fact has " + std::to_string(f.args.size()));
    if (!f.at && it->second->profile == TemporalProfile::Mutable)
      report(ItemKind::Fact, i, "'always' (@ *) is only legal for invariant predicates; '" + f.predicate +
                                    "' is mutable");
  }

  std::set<std::tuple<std::string, std::string, Tick>> measure_keys;
  for (std::size_t i = 0; i < measures_.size(); ++i) {
    const auto& m = measures_[i];
    if (!is_identifier(m.measure)) report(ItemKind::Measure, i, "invalid measure name '" + m.measure + "'");
    if (!entities.contains(m.entity))
      report(ItemKind::Measure, i, "measure '" + m.measure + "' on unknown entity '" + m.entity + "'");
    if (!measure_keys.emplace(m.measure, m.entity, m.at).second)
      report(ItemKind::Measure, i,
             "duplicate measure " + m.measure + "(" + m.entity + ") @ " + std::to_string(m.at));
    if (m.value < 0) report(ItemKind::Measure, i, "measure values must be non-negative");
  }

  std::set<std::string> collection_names;
  for (std::size_t i = 0; i < collections_.size(); ++i) {
    const auto& c = collections_[i];
    if (!is_identifier(c.name)) report(ItemKind::Collection, i, "invalid collection name '" + c.name + "'");
    if (!collection_names.insert(c.name).second)
      report(ItemKind::Collection, i, "duplicate collection '" + c.name + "'");
    if (c.mode == Mode::DeRe && !c.anchor)
      report(ItemKind::Collection, i, "de re collection '" + c.name + "' is missing its anchor (re@TICK)");
    if (c.mode == Mode::DeDicto && c.anchor)
      report(ItemKind::Collection, i, "de dicto collection '" + c.name + "' cannot carry an anchor");
    if (auto p = pattern_problem(preds, symbols, c.definition.predicate, c.definition.pattern); !p.empty())
      report(ItemKind::Collection, i, p);
  }

  std::set<std::string> statement_ids;
  for (std::size_t i = 0; i < statements_.size(); ++i) {
    const auto& s = statements_[i];
    if (!is_identifier(s.id)) report(ItemKind::Statement, i, "invalid statement id '" + s.id + "'");
    if (!statement_ids.insert(s.id).second) report(ItemKind::Statement, i, "duplicate statement '" + s.id + "'");
    if (!collection_names.contains(s.subject))
      report(ItemKind::Statement, i, "unknown collection '" + s.subject + "' as statement subject");

    const auto& prof = s.profile;
    if (preds.contains(prof.property)) {
      const Pattern pat = prof.property_pattern.value_or(Pattern::hole());
      if (auto p = pattern_problem(preds, symbols, prof.property, pat); !p.empty())
        report(ItemKind::Statement, i, "property: " + p);
    } else if (measure_names.contains(prof.property)) {
      if (prof.property_pattern)
        report(ItemKind::Statement, i, "measure property '" + prof.property + "' does not take a pattern");
    } else {
      report(ItemKind::Statement, i, "unknown property '" + prof.property + "' (neither predicate nor measure)");
    }

    if (s.eval_times.size() < 2) report(ItemKind::Statement, i, "a statement needs at least two evaluation times");
    std::set<Tick> distinct(s.eval_times.begin(), s.eval_times.end());
    if (distinct.size() != s.eval_times.size()) report(ItemKind::Statement, i, "evaluation times must be distinct");
    if (!s.span.is_valid()) report(ItemKind::Statement, i, "malformed interval: span starts after it ends");
    for (Tick t : s.eval_times)
      if (!within(TimeRef::point(t), s.span))
        report(ItemKind::Statement, i, "span " + to_string(s.span) + " does not cover time " + std::to_string(t));
    if (s.species_bound && *s.species_bound <= 0)
      report(ItemKind::Statement, i, "species bound must be positive");
  }

  return issues;
}

World WorldBuilder::build() const {
  if (auto issues = validate(); !issues.empty()) throw Error(ErrorKind::InvalidWorld, issues.front().message);

  World w;
  for (const auto& e : entities_) w.entities_.emplace(e.id, e);
  for (const auto& p : predicates_) w.predicates_.emplace(p.name, p);
  for (const auto& f : facts_) {
    w.facts_.insert(f);
    for (const auto& a : f.args)
      if (!w.entities_.contains(a)) w.constants_.insert(a);
  }
  for (const auto& f : w.facts_) w.facts_by_predicate_[f.predicate].push_back(f);
  w.measures_ = measures_;
  std::sort(w.measures_.begin(), w.measures_.end(),
            [](const MeasureFact& a, const MeasureFact& b) { return measure_key(a) < measure_key(b); });
  for (const auto& m : w.measures_) w.measure_names_.insert(m.measure);
  for (const auto& c : collections_) w.collections_.emplace(c.name, c);
  for (const auto& s : statements_) w.statements_.emplace(s.id, s);
  return w;
}

// ---- ground operations -----------------------------------------------------

Slice slice(const World& world, std::string_view entity, TimeRef t, Policy policy) {
  const Entity* e = world.find_entity(entity);
  if (!e) throw Error(ErrorKind::UnknownEntity, "unknown entity '" + std::string(entity) + "'");
  Slice s{e->id, t, e->invariant, false};
  if (!within(t, e->lifespan)) {
    if (policy == Policy::Strict)
      throw Error(ErrorKind::OutsideLifeSpan,
                  e->id + "@" + to_string(t) + " lies outside the lifespan " + to_string(e->lifespan));
    s.out_of_lifespan = true;
  }
  return s;
}

void check_pattern(const World& world, std::string_view predicate, const Pattern& pattern) {
  const PredicateDecl* p = world.find_predicate(predicate);
  if (!p) throw Error(ErrorKind::UnknownPredicate, "unknown predicate '" + std::string(predicate) + "'");
  if (pattern.slots.size() != p->arity)
    throw Error(ErrorKind::ArityMismatch, "'" + p->name + "' takes " + std::to_string(p->arity) +
                                              " argument(s), pattern has " + std::to_string(pattern.slots.size()));
  if (pattern.hole_count() != 1)
    throw Error(ErrorKind::MultipleHoles, "pattern for '" + p->name + "' must contain exactly one hole");
  for (const auto& slot : pattern.slots)
    if (slot && !world.is_known_symbol(*slot))
      throw Error(ErrorKind::UnknownSymbol, "unknown symbol '" + *slot + "' in pattern");
}

std::vector<Slice> extension(const World& world, std::string_view predicate, const Pattern& pattern, TimeRef t) {
  check_pattern(world, predicate, pattern);
  const PredicateDecl& decl = *world.find_predicate(predicate);
  const std::size_t hole = pattern.hole_index();
  const bool timeless = decl.profile == TemporalProfile::IndividualInvariant;

  // filler -> (holds at every tick?, ticks where asserted)
  struct Support {
    bool always = false;
    std::set<Tick> ticks;
  };
  std::map<std::string, Support> support;
  for (const Fact& f : world.facts_of(predicate)) {
    bool matches = true;
    for (std::size_t i = 0; i < f.args.size() && matches; ++i)
      if (pattern.slots[i] && *pattern.slots[i] != f.args[i]) matches = false;
    if (!matches) continue;
    auto& s = support[f.args[hole]];
    if (timeless || !f.at)
      s.always = true;
    else
      s.ticks.insert(*f.at);
  }

  std::vector<Slice> out;
  for (const auto& [filler, s] : support) {
    const Entity* e = world.find_entity(filler);
    if (e && !within(t, e->lifespan)) continue;
    bool holds = s.always;
    // an interval holds only if every one of its ticks is asserted
    if (!holds && !t.is_open() && static_cast<std::uint64_t>(*t.length()) < s.ticks.size()) {
      holds = true;
      for (Tick k = t.start(); k <= *t.end() && holds; ++k) holds = s.ticks.contains(k);
    }
    if (holds) out.push_back(Slice{filler, t, e ? e->invariant : true, false});
  }
  return out;
}

std::vector<Slice> extension(const World& world, const Definition& def, TimeRef t) {
  return extension(world, def.predicate, def.pattern, t);
}

Rational measure_value(const World& world, std::string_view measure, const Slice& s) {
  const Rational* v = s.at.is_point() ? world.find_measure(measure, s.entity, s.at.start()) : nullptr;
  if (!v)
    throw Error(ErrorKind::MissingMeasure, "missing measure " + std::string(measure) + " for " + to_string(s));
  return *v;
}

} // namespace tslice
