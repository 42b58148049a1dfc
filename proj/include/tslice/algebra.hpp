#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tslice/world.hpp"

namespace tslice {

/// The extensional realization S@t of a collection: slices sharing tick `at`.
struct Instantiation {
  std::string source;               // collection name
  std::vector<Definition> filters;  // sub-collection lineage, outermost last
  TimeRef at;
  std::vector<Slice> members;       // ordered by entity id
  std::vector<std::string> dropped; // de re members whose lifespan excludes `at`

  /// "Y@2002" or "Y@2002 | smokes(_, tobacco)".
  std::string label() const;
};

/// De dicto: members = extension(definition, t). De re: membership fixed by
/// the extension at the anchor, re-sliced at t. Off-lifespan de re members
/// raise OutsideLifeSpan (strict) or land in `dropped` (lenient).
Instantiation instantiate(const World& world, const CollectionDecl& collection, TimeRef t,
                          Policy policy = Policy::Strict);
Instantiation instantiate(const World& world, std::string_view collection, TimeRef t,
                          Policy policy = Policy::Strict);

/// Members whose entity satisfies `predicate` in the hole position at inst.at.
Instantiation filter(const World& world, const Instantiation& inst, const Definition& by);

inline std::size_t cardinality(const Instantiation& inst) { return inst.members.size(); }

/// card(sub)/card(super), exact. `sub` must be a subset of `super` at the same tick.
Rational ratio(const Instantiation& sub, const Instantiation& super);

/// Sum of the measure over every member; MissingMeasure names the first gap.
Rational aggregate_sum(const World& world, std::string_view measure, const Instantiation& inst);

std::vector<std::string> entity_ids(const Instantiation& inst);

} // namespace tslice
