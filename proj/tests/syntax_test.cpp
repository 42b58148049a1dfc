#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "support/fixtures.hpp"
#include "tslice/syntax.hpp"

using namespace tslice;
using tslice::testing::read_fixture;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

bool has_message(const std::vector<Diagnostic>& ds, const std::string& needle, int line) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) {
    return d.line == line && d.message.find(needle) != std::string::npos;
  });
}

} // namespace

TEST_CASE("parse the youth world") {
  const WorldParse p = parse_world(read_fixture("youth.tcw"), "youth.tcw");
  REQUIRE(p.ok());
  CHECK(p.diagnostics.empty());
  const World& w = *p.world;
  CHECK(w.entities().size() == 9);
  CHECK(w.predicates().size() == 2);
  CHECK(w.ticks() == std::set<Tick>{2002, 2003});
  CHECK(w.find_predicate("eighteen")->cohort);
  CHECK(w.find_collection("Y")->mode == Mode::DeDicto);
}

TEST_CASE("every fixture world parses") {
  for (const char* name : {"youth.tcw", "friends.tcw", "friends_missing.tcw", "students.tcw", "sitin.tcw",
                           "centuries.tcw"}) {
    CAPTURE(name);
    CHECK(parse_world(read_fixture(name), name).ok());
  }
}

TEST_CASE("world diagnostics carry positions") {
  const WorldParse p = parse_world(read_fixture("malformed.tcw"), "malformed.tcw");
  CHECK_FALSE(p.ok());
  CHECK(p.diagnostics.size() == 8);
  CHECK(has_message(p.diagnostics, "duplicate entity", 2));
  CHECK(has_message(p.diagnostics, "malformed interval", 3));
  CHECK(has_message(p.diagnostics, "arity mismatch", 6));
  CHECK(has_message(p.diagnostics, "only legal for invariant", 7));
  CHECK(has_message(p.diagnostics, "unknown predicate 'drinks'", 8));
  CHECK(has_message(p.diagnostics, "missing its anchor", 9));
  CHECK(has_message(p.diagnostics, "unknown keyword", 10));
  for (const auto& d : p.diagnostics) {
    CHECK(d.line >= 1);
    CHECK(d.column >= 1);
    CHECK(d.source_name == "malformed.tcw");
  }
  CHECK(to_string(p.diagnostics[2]) ==
        "malformed.tcw:6:6: error: arity mismatch: 'smokes' takes 2 argument(s), fact has 1");
}

TEST_CASE("small world inputs") {
  SUBCASE("empty input is an empty world") {
    const WorldParse p = parse_world("");
    REQUIRE(p.ok());
    CHECK(p.world->entities().empty());
  }
  SUBCASE("comments and blank lines") {
    CHECK(parse_world("; nothing\n\n   ; still nothing\n").ok());
  }
  SUBCASE("bad tick literal") {
    const WorldParse p = parse_world("entity a lifespan [19x4, 2000]\n");
    REQUIRE(p.diagnostics.size() == 1);
    CHECK(p.diagnostics[0].message.find("bad tick literal") != std::string::npos);
    CHECK(p.diagnostics[0].column == 20);
  }
  SUBCASE("unknown keyword") {
    const WorldParse p = parse_world("entity a lifespan [1, 2]\nwibble a\n");
    REQUIRE(p.diagnostics.size() == 1);
    CHECK(p.diagnostics[0].line == 2);
    CHECK(p.diagnostics[0].column == 1);
  }
}

TEST_CASE("parse scripts") {
  const ScriptParse p = parse_script(read_fixture("youth.tcq"), "youth.tcq");
  REQUIRE(p.ok());
  REQUIRE(p.script->commands.size() == 8);
  CHECK(std::holds_alternative<EvalCmd>(p.script->commands[0].body));
  CHECK(std::holds_alternative<AssertCmd>(p.script->commands[4].body));
  CHECK(std::holds_alternative<DisambiguateCmd>(p.script->commands[6].body));
  CHECK(std::holds_alternative<ExplainCmd>(p.script->commands[7].body));
  CHECK(p.script->commands[0].line == 2);

  const auto& filtered = std::get<EvalCmd>(p.script->commands[2].body);
  const auto& inst = std::get<InstExpr>(filtered.expr);
  CHECK(inst.collection == "Y");
  CHECK(inst.at == 2003);
  REQUIRE(inst.filters.size() == 1);
  CHECK(render_definition(inst.filters[0]) == "smokes(_, tobacco)");
}

TEST_CASE("scripts may name sub-collections as bare collections") {
  // parses; resolution then reports the unknown collection
  const ScriptParse p = parse_script("assert ratio(Yt@2003, Y@2003) < ratio(Yt@2002, Y@2002)\n");
  REQUIRE(p.ok());
  const auto& a = std::get<AssertCmd>(p.script->commands[0].body);
  CHECK(a.op == Cmp::Less);
  CHECK(render_expr(a.lhs) == "ratio(Yt@2003, Y@2003)");

  const World w = tslice::testing::load_world("youth.tcw");
  const auto ds = resolve_script(*p.script, w);
  CHECK(ds.size() == 2);
  CHECK(ds[0].message.find("unknown collection 'Yt'") != std::string::npos);
}

TEST_CASE("script diagnostics") {
  SUBCASE("unclosed parenthesis points at the paren") {
    const ScriptParse p = parse_script("eval card(\n");
    REQUIRE(p.diagnostics.size() == 1);
    CHECK(p.diagnostics[0].line == 1);
    CHECK(p.diagnostics[0].column == 10);
  }
  SUBCASE("bad tick and unknown keyword on separate lines") {
    const ScriptParse p = parse_script("eval Y@20x2\nfoo bar\n");
    REQUIRE(p.diagnostics.size() == 2);
    CHECK(p.diagnostics[0].column == 8);
    CHECK(p.diagnostics[1].line == 2);
  }
  SUBCASE("resolution against a world") {
    const World w = tslice::testing::load_world("friends.tcw");
    const ScriptParse p =
        parse_script("eval sum cons_beer over F@2002\nexplain S9\neval F@2002 | friend(_, zoe)\n");
    REQUIRE(p.ok());
    const auto ds = resolve_script(*p.script, w);
    REQUIRE(ds.size() == 3);
    CHECK(ds[0].line == 1);
    CHECK(ds[1].line == 2);
    CHECK(ds[2].line == 3);
  }
  SUBCASE("number literals compare against expressions") {
    const ScriptParse p = parse_script("assert card(F@2002) = 2\nassert ratio(F@2002, F@2002) > 0.5\n");
    REQUIRE(p.ok());
    CHECK(render_expr(std::get<AssertCmd>(p.script->commands[1].body).rhs) == "1/2");
  }
}

TEST_CASE("render is canonical") {
  const std::string text = read_fixture("friends.tcw");
  const World w = *parse_world(text).world;
  const std::string canonical = render_world(w);

  const WorldParse again = parse_world(canonical);
  REQUIRE(again.ok());
  CHECK(*again.world == w);
  CHECK(render_world(*again.world) == canonical);
  CHECK(canonical.find("entity f1 lifespan [1980, *]") != std::string::npos);

  // declaration order of facts does not matter
  auto lines = lines_of(text);
  std::vector<std::string> head, facts;
  for (const auto& l : lines) (l.rfind("fact ", 0) == 0 || l.rfind("measure ", 0) == 0 ? facts : head).push_back(l);
  std::mt19937 rng(5);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(facts.begin(), facts.end(), rng);
    std::string shuffled;
    for (const auto& l : head) shuffled += l + "\n";
    for (const auto& l : facts) shuffled += l + "\n";
    const WorldParse p = parse_world(shuffled);
    REQUIRE(p.ok());
    CHECK(render_world(*p.world) == canonical);
  }
}

TEST_CASE("render helpers") {
  CHECK(render_interval(TimeRef::open_from(1984)) == "[1984, *]");
  CHECK(render_interval(TimeRef::interval(1, 2)) == "[1, 2]");
  CHECK(render_pattern(Pattern{{std::nullopt, "tobacco"}}) == "(_, tobacco)");
  CHECK(render_definition(Definition{"eighteen", Pattern::hole()}) == "eighteen(_)");
}
