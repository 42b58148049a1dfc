#include "tslice/readings.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "tslice/syntax.hpp"

namespace tslice {

std::vector<std::string> Decision::rule_ids() const {
  std::vector<std::string> ids;
  for (const auto& r : fired_rules) ids.push_back(r.id);
  return ids;
}

std::string_view to_string(Mode mode) { return mode == Mode::DeRe ? "de_re" : "de_dicto"; }

std::string_view to_string(ReadingKind kind) {
  switch (kind) {
    case ReadingKind::RatioEvolution: return "ratio_evolution";
    case ReadingKind::IndividualEvolution: return "individual_evolution";
    case ReadingKind::GlobalAggregate: return "global_aggregate";
  }
  return "unknown";
}

std::string_view to_string(Truth truth) {
  switch (truth) {
    case Truth::Pending: return "pending";
    case Truth::True: return "true";
    case Truth::False: return "false";
    case Truth::Undefined: return "undefined";
  }
  return "unknown";
}

namespace {

// What a statement compares across its evaluation times. A static
// predication claims persistence, whatever direction it was written with.
enum class Comparison { Equal, Less, More, Changed };

Comparison comparison_of(const PredicationProfile& p) {
  if (!p.evolutive) return Comparison::Equal;
  switch (p.direction) {
    case Direction::Less: return Comparison::Less;
    case Direction::More: return Comparison::More;
    case Direction::Changed: return Comparison::Changed;
  }
  return Comparison::Changed;
}

std::string_view operator_text(Comparison c) {
  switch (c) {
    case Comparison::Equal: return "=";
    case Comparison::Less: return "<";
    case Comparison::More: return ">";
    case Comparison::Changed: return "!=";
  }
  return "?";
}

/// `values` ordered from earliest to latest time.
bool series_holds(Comparison c, const std::vector<Rational>& values) {
  const bool all_equal = std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
  switch (c) {
    case Comparison::Equal: return all_equal;
    case Comparison::Changed: return !all_equal;
    case Comparison::Less: return values.back() < values.front();
    case Comparison::More: return values.back() > values.front();
  }
  return false;
}

void check_statement(const World& world, const Statement& stmt) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::MalformedStatement, "statement '" + stmt.id + "': " + why);
  };
  if (!world.find_collection(stmt.subject)) fail("unknown subject collection '" + stmt.subject + "'");
  if (!world.find_predicate(stmt.profile.property) && !world.is_measure(stmt.profile.property))
    fail("unknown property '" + stmt.profile.property + "'");
  if (stmt.eval_times.size() < 2) fail("needs at least two evaluation times");
  if (std::set<Tick>(stmt.eval_times.begin(), stmt.eval_times.end()).size() != stmt.eval_times.size())
    fail("evaluation times must be distinct");
  for (Tick t : stmt.eval_times)
    if (!within(TimeRef::point(t), stmt.span)) fail("span does not cover time " + std::to_string(t));
}

std::vector<Tick> sorted_times(const Statement& stmt) {
  std::vector<Tick> times = stmt.eval_times;
  std::sort(times.begin(), times.end());
  return times;
}

/// The subject as a collection under the given mode. A de re reading of a
/// subject declared de dicto is anchored at the earliest evaluation time.
CollectionDecl subject_under(const World& world, const Statement& stmt, Mode mode) {
  CollectionDecl c = *world.find_collection(stmt.subject);
  if (mode == Mode::DeDicto) {
    c.mode = Mode::DeDicto;
    c.anchor.reset();
  } else if (c.mode == Mode::DeDicto) {
    c.mode = Mode::DeRe;
    c.anchor = sorted_times(stmt).front();
  }
  return c;
}

Definition property_definition(const Statement& stmt) {
  return Definition{stmt.profile.property, stmt.profile.property_pattern.value_or(Pattern::hole())};
}

std::string join_series(Comparison c, const std::vector<std::string>& terms_early_to_late) {
  if (terms_early_to_late.size() == 2) {
    // latest first, as in "card(Yt@2003)/card(Y@2003) < card(Yt@2002)/card(Y@2002)"
    return terms_early_to_late[1] + " " + std::string(operator_text(c)) + " " + terms_early_to_late[0];
  }
  std::string out = c == Comparison::Equal ? "all equal: " : (c == Comparison::Changed ? "not all equal: " : "");
  for (std::size_t i = 0; i < terms_early_to_late.size(); ++i) out += (i ? ", " : "") + terms_early_to_late[i];
  return out;
}

std::string render_formula(const World& world, const Statement& stmt, ReadingKind kind, Mode mode) {
  const Comparison cmp = comparison_of(stmt.profile);
  const auto times = sorted_times(stmt);
  const CollectionDecl subject = subject_under(world, stmt, mode);
  const std::string& prop = stmt.profile.property;

  std::vector<std::string> terms;
  switch (kind) {
    case ReadingKind::RatioEvolution:
      for (Tick t : times) {
        const std::string inst = subject.name + "@" + std::to_string(t);
        terms.push_back("card(" + inst + " | " + render_definition(property_definition(stmt)) + ")/card(" + inst + ")");
      }
      return join_series(cmp, terms);
    case ReadingKind::IndividualEvolution: {
      for (Tick t : times) terms.push_back(prop + "(x@" + std::to_string(t) + ")");
      return join_series(cmp, terms) + " for each x in " + subject.name;
    }
    case ReadingKind::GlobalAggregate:
      for (Tick t : times) terms.push_back("sum " + prop + " over " + subject.name + "@" + std::to_string(t));
      return join_series(cmp, terms);
  }
  return {};
}

Reading undefined(Reading r, std::string reason) {
  r.truth = Truth::Undefined;
  r.reason = std::move(reason);
  return r;
}

void require_two_times_if_directional(Comparison c, const std::vector<Tick>& times) {
  if ((c == Comparison::Less || c == Comparison::More) && times.size() != 2)
    throw Error(ErrorKind::MalformedStatement, "directional readings compare exactly two evaluation times");
}

Reading evaluate_ratio(const World& world, const Statement& stmt, Reading r, Policy policy) {
  if (!world.find_predicate(stmt.profile.property))
    return undefined(std::move(r), "ratio reading needs a predicate-valued property, '" + stmt.profile.property +
                                       "' is a measure");
  const Comparison cmp = comparison_of(stmt.profile);
  const auto times = sorted_times(stmt);
  require_two_times_if_directional(cmp, times);
  const CollectionDecl subject = subject_under(world, stmt, r.mode);
  const Definition prop = property_definition(stmt);

  std::vector<Rational> ratios;
  for (Tick t : times) {
    const Instantiation whole = instantiate(world, subject, TimeRef::point(t), policy);
    const Instantiation part = filter(world, whole, prop);
    const Rational value = ratio(part, whole);
    ratios.push_back(value);
    r.witnesses.push_back(Witness{whole.label(),
                                  {{"part", Rational(cardinality(part))},
                                   {"whole", Rational(cardinality(whole))},
                                   {"ratio", value}},
                                  std::nullopt});
  }
  r.truth = series_holds(cmp, ratios) ? Truth::True : Truth::False;
  return r;
}

Reading evaluate_individual(const World& world, const Statement& stmt, Reading r, Policy policy) {
  const Comparison cmp = comparison_of(stmt.profile);
  const auto times = sorted_times(stmt);
  require_two_times_if_directional(cmp, times);
  const CollectionDecl subject = subject_under(world, stmt, Mode::DeRe);

  // members present at every evaluation time; lenient drops are reported
  std::vector<Instantiation> insts;
  for (Tick t : times) insts.push_back(instantiate(world, subject, TimeRef::point(t), policy));
  std::set<std::string> dropped;
  for (const auto& inst : insts) dropped.insert(inst.dropped.begin(), inst.dropped.end());

  bool all = true;
  for (const Slice& member : insts.front().members) {
    if (dropped.contains(member.entity)) continue;
    Witness w{member.entity, {}, std::nullopt};
    std::vector<Rational> values;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const auto& members = insts[i].members;
      auto it = std::find_if(members.begin(), members.end(),
                             [&](const Slice& s) { return s.entity == member.entity; });
      if (it == members.end())
        throw Error(ErrorKind::OutsideLifeSpan, member.entity + " is not a member at " + std::to_string(times[i]));
      const Rational v = measure_value(world, stmt.profile.property, *it);
      values.push_back(v);
      w.values.emplace_back(std::to_string(times[i]), v);
    }
    const bool holds = series_holds(cmp, values);
    w.holds = holds;
    if (!holds && all) {
      all = false;
      std::string trail;
      for (std::size_t i = 0; i < values.size(); ++i) trail += (i ? " -> " : "") + to_fraction_string(values[i]);
      r.counterexample = member.entity + " (" + trail + ")";
    }
    r.witnesses.push_back(std::move(w));
  }
  for (const auto& id : dropped) r.witnesses.push_back(Witness{id + " (dropped: outside lifespan)", {}, std::nullopt});
  r.truth = all ? Truth::True : Truth::False;
  return r;
}

Reading evaluate_global(const World& world, const Statement& stmt, Reading r, Policy policy) {
  const Comparison cmp = comparison_of(stmt.profile);
  const auto times = sorted_times(stmt);
  require_two_times_if_directional(cmp, times);
  const CollectionDecl subject = subject_under(world, stmt, Mode::DeRe);

  std::vector<Rational> sums;
  Witness w{"sum " + stmt.profile.property + " over " + subject.name, {}, std::nullopt};
  for (Tick t : times) {
    const Instantiation inst = instantiate(world, subject, TimeRef::point(t), policy);
    sums.push_back(aggregate_sum(world, stmt.profile.property, inst));
    w.values.emplace_back(std::to_string(t), sums.back());
  }
  w.holds = series_holds(cmp, sums);
  r.truth = *w.holds ? Truth::True : Truth::False;
  r.witnesses.push_back(std::move(w));
  return r;
}

} // namespace

bool cohort_disjoint(const World& world, const Definition& subject, const std::vector<Tick>& eval_times) {
  std::set<std::string> seen;
  for (Tick t : eval_times) {
    std::set<std::string> here;
    for (const Slice& s : extension(world, subject, TimeRef::point(t))) here.insert(s.entity);
    for (const auto& id : here)
      if (!seen.insert(id).second) return false;
  }
  return true;
}

LifespanCheck lifespan_check(const World& world, const Statement& stmt) {
  LifespanCheck out;
  out.span_length = stmt.span.length();
  if (stmt.species_bound) {
    out.bound = stmt.species_bound;
    // an open span outlasts any finite bound
    out.exceeds = !out.span_length || *out.span_length > *out.bound;
    return out;
  }
  if (!out.span_length)
    throw Error(ErrorKind::UnboundedSpan, "statement '" + stmt.id + "' has an open span and no species bound");

  const CollectionDecl* subject = world.find_collection(stmt.subject);
  if (!subject) throw Error(ErrorKind::MalformedStatement, "unknown subject collection '" + stmt.subject + "'");
  std::optional<Tick> longest;
  bool unbounded_member = false;
  for (Tick t : stmt.eval_times) {
    for (const Slice& s : extension(world, subject->definition, TimeRef::point(t))) {
      const Entity* e = world.find_entity(s.entity);
      if (!e) continue;
      if (auto len = e->lifespan.length())
        longest = std::max(longest.value_or(*len), *len);
      else
        unbounded_member = true;
    }
  }
  if (!unbounded_member && longest) {
    out.bound = longest;
    out.exceeds = *out.span_length > *longest;
  }
  return out;
}

Decision decide_mode(const World& world, const Statement& stmt) {
  check_statement(world, stmt);
  const CollectionDecl& subject = *world.find_collection(stmt.subject);
  const PredicationProfile& prof = stmt.profile;
  Decision d;

  if (prof.evolutive) {
    const PredicateDecl* p = world.find_predicate(prof.property);
    if (p && p->profile == TemporalProfile::IndividualInvariant)
      d.fired_rules.push_back({"R1", "evolutive predication over '" + p->name +
                                         "', which is individual-invariant; no member can evolve, "
                                         "so the comparison is read as a ratio over changing realizations"});
  }

  const PredicateDecl& subject_pred = *world.find_predicate(subject.definition.predicate);
  if (subject_pred.cohort) {
    d.fired_rules.push_back({"R2", "subject predicate '" + subject_pred.name +
                                       "' is a cohort predicate: its extensions at distinct "
                                       "evaluation times share no member"});
  } else if (cohort_disjoint(world, subject.definition, stmt.eval_times)) {
    std::string times;
    for (Tick t : stmt.eval_times) times += (times.empty() ? "" : ", ") + std::to_string(t);
    d.fired_rules.push_back({"R2", "realizations of " + render_definition(subject.definition) + " at " + times +
                                       " share no member"});
  }

  try {
    const LifespanCheck lc = lifespan_check(world, stmt);
    if (lc.exceeds) {
      const std::string len = lc.span_length ? std::to_string(*lc.span_length) : std::string("unbounded");
      d.fired_rules.push_back({"R3", "span " + to_string(stmt.span) + " (length " + len +
                                         ") exceeds the life span bound " + std::to_string(*lc.bound) +
                                         ": the same individuals cannot be meant throughout"});
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnboundedSpan) throw;
    d.notes.push_back(std::string("R3 not evaluated: ") + e.what());
  }

  if (d.fired_rules.empty()) {
    d.mode = Mode::DeRe;
    d.fired_rules.push_back({"R0", "no forcing constraint applies; de re is the default interpretation"});
    d.notes.push_back("a cohort context (cohort predicate or disjoint realizations) would force de dicto");
  } else {
    d.mode = Mode::DeDicto;
  }

  if (stmt.explicit_mode) {
    d.mode = *stmt.explicit_mode;
    d.fired_rules.push_back({"E0", "explicit mode " + std::string(to_string(d.mode)) + " declared by the statement"});
  }
  return d;
}

std::vector<Reading> enumerate_readings(const World& world, const Statement& stmt, Mode mode) {
  check_statement(world, stmt);
  std::vector<ReadingKind> kinds;
  if (mode == Mode::DeRe && world.is_measure(stmt.profile.property))
    kinds = {ReadingKind::IndividualEvolution, ReadingKind::GlobalAggregate};
  else
    kinds = {ReadingKind::RatioEvolution};

  std::vector<Reading> out;
  for (ReadingKind k : kinds) {
    Reading r;
    r.kind = k;
    r.mode = mode;
    r.formula = render_formula(world, stmt, k, mode);
    out.push_back(std::move(r));
  }
  return out;
}

Reading evaluate_reading(const World& world, const Statement& stmt, const Reading& reading, Policy policy) {
  Reading r = reading;
  r.truth = Truth::Pending;
  r.reason.clear();
  r.counterexample.reset();
  r.witnesses.clear();
  try {
    check_statement(world, stmt);
    switch (r.kind) {
      case ReadingKind::RatioEvolution: return evaluate_ratio(world, stmt, std::move(r), policy);
      case ReadingKind::IndividualEvolution: return evaluate_individual(world, stmt, std::move(r), policy);
      case ReadingKind::GlobalAggregate: return evaluate_global(world, stmt, std::move(r), policy);
    }
  } catch (const Error& e) {
    Reading u = reading;
    u.witnesses.clear();
    u.counterexample.reset();
    return undefined(std::move(u), e.what());
  }
  return r;
}

Decision explain(const World& world, const Statement& stmt, Policy policy) {
  Decision d = decide_mode(world, stmt);
  for (const Reading& r : enumerate_readings(world, stmt, d.mode))
    d.readings.push_back(evaluate_reading(world, stmt, r, policy));
  return d;
}

} // namespace tslice
