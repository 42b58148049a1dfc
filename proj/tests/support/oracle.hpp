#pragma once

// Brute-force reference semantics computed straight from the raw fact and
// measure lists by linear scans. Shares nothing with the library beyond the
// World data accessors.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tslice/world.hpp"

namespace tslice::testing::oracle {

using Ids = std::set<std::string>;

inline bool alive(const World& w, const std::string& id, Tick t) {
  for (const auto& [eid, e] : w.entities()) {
    if (eid != id) continue;
    if (t < e.lifespan.start()) return false;
    return e.lifespan.is_open() || t <= *e.lifespan.end();
  }
  return true;  // constants have no lifespan
}

inline bool is_entity(const World& w, const std::string& id) {
  for (const auto& [eid, e] : w.entities())
    if (eid == id) return true;
  return false;
}

inline bool holds(const World& w, const std::string& pred, const std::vector<std::string>& args, Tick t) {
  bool invariant = false;
  for (const auto& [name, p] : w.predicates())
    if (name == pred) invariant = p.profile == TemporalProfile::IndividualInvariant;
  for (const Fact& f : w.facts()) {
    if (f.predicate != pred || f.args != args) continue;
    if (invariant || !f.at || *f.at == t) return true;
  }
  return false;
}

inline Ids extension(const World& w, const Definition& d, Tick t) {
  Ids candidates;
  for (const auto& [id, e] : w.entities()) candidates.insert(id);
  for (const Fact& f : w.facts()) candidates.insert(f.args.begin(), f.args.end());

  Ids out;
  for (const auto& y : candidates) {
    std::vector<std::string> args;
    for (const auto& slot : d.pattern.slots) args.push_back(slot ? *slot : y);
    if (holds(w, d.predicate, args, t) && alive(w, y, t)) out.insert(y);
  }
  return out;
}

struct Inst {
  Ids members;
  Ids dropped;
};

inline Inst instantiate(const World& w, const CollectionDecl& c, Tick t) {
  if (c.mode == Mode::DeDicto) return {extension(w, c.definition, t), {}};
  Inst out;
  for (const auto& id : extension(w, c.definition, *c.anchor)) (alive(w, id, t) ? out.members : out.dropped).insert(id);
  return out;
}

inline Ids intersect(const Ids& a, const Ids& b) {
  Ids out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

inline std::optional<Rational> measure(const World& w, const std::string& m, const std::string& id, Tick t) {
  for (const auto& mf : w.measures())
    if (mf.measure == m && mf.entity == id && mf.at == t) return mf.value;
  return std::nullopt;
}

inline std::optional<Rational> sum(const World& w, const std::string& m, const Ids& ids, Tick t) {
  Rational total = 0;
  for (const auto& id : ids) {
    auto v = measure(w, m, id, t);
    if (!v) return std::nullopt;
    total += *v;
  }
  return total;
}

// ---- readings --------------------------------------------------------------

enum class Verdict { True, False, Undefined };

inline bool compare(const Statement& s, const Rational& early, const Rational& late) {
  if (!s.profile.evolutive) return early == late;
  switch (s.profile.direction) {
    case Direction::Less: return late < early;
    case Direction::More: return late > early;
    case Direction::Changed: return late != early;
  }
  return false;
}

inline CollectionDecl subject_as(const World& w, const Statement& s, Mode mode, Tick early) {
  CollectionDecl c = w.collections().at(s.subject);
  if (mode == Mode::DeDicto) return CollectionDecl{c.name, Mode::DeDicto, std::nullopt, c.definition};
  if (c.mode == Mode::DeDicto) c.anchor = early;
  c.mode = Mode::DeRe;
  return c;
}

/// Strict-policy truth of one reading, two evaluation times only.
inline Verdict reading(const World& w, const Statement& s, Mode mode, const std::string& kind) {
  const Tick early = std::min(s.eval_times[0], s.eval_times[1]);
  const Tick late = std::max(s.eval_times[0], s.eval_times[1]);
  const CollectionDecl c = subject_as(w, s, kind == "ratio_evolution" ? mode : Mode::DeRe, early);
  const Inst at_early = instantiate(w, c, early);
  const Inst at_late = instantiate(w, c, late);
  if (!at_early.dropped.empty() || !at_late.dropped.empty()) return Verdict::Undefined;

  const bool is_measure = std::any_of(w.measures().begin(), w.measures().end(),
                                      [&](const MeasureFact& m) { return m.measure == s.profile.property; });
  if (kind == "ratio_evolution") {
    if (is_measure) return Verdict::Undefined;
    const Definition prop{s.profile.property, s.profile.property_pattern.value_or(Pattern::hole())};
    if (at_early.members.empty() || at_late.members.empty()) return Verdict::Undefined;
    const Rational r1(intersect(at_early.members, extension(w, prop, early)).size(), at_early.members.size());
    const Rational r2(intersect(at_late.members, extension(w, prop, late)).size(), at_late.members.size());
    return compare(s, r1, r2) ? Verdict::True : Verdict::False;
  }
  if (kind == "individual_evolution") {
    bool all = true;
    for (const auto& id : at_early.members) {
      auto v1 = measure(w, s.profile.property, id, early);
      auto v2 = measure(w, s.profile.property, id, late);
      if (!v1 || !v2) return Verdict::Undefined;
      all = all && compare(s, *v1, *v2);
    }
    return all ? Verdict::True : Verdict::False;
  }
  auto s1 = sum(w, s.profile.property, at_early.members, early);
  auto s2 = sum(w, s.profile.property, at_late.members, late);
  if (!s1 || !s2) return Verdict::Undefined;
  return compare(s, *s1, *s2) ? Verdict::True : Verdict::False;
}

} // namespace tslice::testing::oracle
