#include "tslice/algebra.hpp"

#include <algorithm>

#include "tslice/syntax.hpp"

namespace tslice {

std::string Instantiation::label() const {
  std::string out = source + "@" + to_string(at);
  for (const auto& f : filters) out += " | " + render_definition(f);
  return out;
}

Instantiation instantiate(const World& world, const CollectionDecl& collection, TimeRef t, Policy policy) {
  Instantiation inst{collection.name, {}, t, {}, {}};
  if (collection.mode == Mode::DeDicto) {
    inst.members = extension(world, collection.definition, t);
    return inst;
  }

  const TimeRef anchor = TimeRef::point(*collection.anchor);
  for (const Slice& at_anchor : extension(world, collection.definition, anchor)) {
    if (!world.find_entity(at_anchor.entity)) {
      // constants are timeless
      inst.members.push_back(Slice{at_anchor.entity, t, true, false});
      continue;
    }
    Slice s = slice(world, at_anchor.entity, t, policy);
    if (s.out_of_lifespan)
      inst.dropped.push_back(s.entity);
    else
      inst.members.push_back(std::move(s));
  }
  return inst;
}

Instantiation instantiate(const World& world, std::string_view collection, TimeRef t, Policy policy) {
  const CollectionDecl* c = world.find_collection(collection);
  if (!c) throw Error(ErrorKind::UnknownCollection, "unknown collection '" + std::string(collection) + "'");
  return instantiate(world, *c, t, policy);
}

Instantiation filter(const World& world, const Instantiation& inst, const Definition& by) {
  const auto satisfied = extension(world, by, inst.at);
  Instantiation out = inst;
  out.filters.push_back(by);
  std::erase_if(out.members, [&](const Slice& s) {
    return std::none_of(satisfied.begin(), satisfied.end(),
                        [&](const Slice& x) { return x.entity == s.entity; });
  });
  return out;
}

Rational ratio(const Instantiation& sub, const Instantiation& super) {
  if (sub.at != super.at)
    throw Error(ErrorKind::TickMismatch,
                "ratio of " + sub.label() + " over " + super.label() + " mixes different times");
  for (const Slice& s : sub.members)
    if (std::find(super.members.begin(), super.members.end(), s) == super.members.end())
      throw Error(ErrorKind::NotASubset, to_string(s) + " belongs to " + sub.label() + " but not to " + super.label());
  if (super.members.empty()) throw Error(ErrorKind::EmptyDenominator, super.label() + " is empty");
  return Rational(sub.members.size(), super.members.size());
}

Rational aggregate_sum(const World& world, std::string_view measure, const Instantiation& inst) {
  Rational total = 0;
  for (const Slice& s : inst.members) total += measure_value(world, measure, s);
  return total;
}

std::vector<std::string> entity_ids(const Instantiation& inst) {
  std::vector<std::string> ids;
  for (const auto& s : inst.members) ids.push_back(s.entity);
  return ids;
}

} // namespace tslice
