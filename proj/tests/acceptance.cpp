// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support/fixtures.hpp"
#include "support/properties.hpp"
#include "support/world_gen.hpp"
#include "tslice/cli.hpp"

using namespace tslice;
using namespace tslice::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

// ---- AC1 -------------------------------------------------------------------

Outcome sentence_fixtures() {
  Outcome o;
  struct Case {
    const char* world;
    const char* stmt;
    Mode mode;
    std::vector<std::string> rules;
  };
  const std::vector<Case> cases{
      {"sitin.tcw", "S1", Mode::DeRe, {"R0"}},
      {"students.tcw", "S2", Mode::DeDicto, {"R1"}},
      {"youth.tcw", "tobacco_less", Mode::DeDicto, {"R2"}},
      {"youth.tcw", "cannabis_more", Mode::DeDicto, {"R2"}},
      {"friends.tcw", "S1", Mode::DeRe, {"R0"}},
      {"centuries.tcw", "S4", Mode::DeDicto, {"R3"}},
  };
  for (const auto& c : cases) {
    const World w = load_world(c.world);
    const Decision d = decide_mode(w, *w.find_statement(c.stmt));
    const std::string tag = std::string(c.world) + " " + c.stmt;
    if (d.mode != c.mode || d.rule_ids() != c.rules)
      o.fail(tag + ": got " + std::string(to_string(d.mode)) + " [" + join(d.rule_ids()) + "]");
  }
  const World w2 = load_world("friends.tcw");
  const Decision d = explain(w2, *w2.find_statement("S1"));
  std::vector<std::string> kinds;
  for (const auto& r : d.readings) kinds.emplace_back(to_string(r.kind));
  if (kinds != std::vector<std::string>{"individual_evolution", "global_aggregate"})
    o.fail("friends S1 readings: " + join(kinds));
  if (o.ok) o.detail = std::to_string(cases.size()) + " statements, modes and rule ids exact";
  return o;
}

// ---- AC2 -------------------------------------------------------------------

Outcome ratio_formula() {
  Outcome o;
  const World w = load_world("youth.tcw");
  auto r = [&](Tick t) {
    const Instantiation whole = instantiate(w, "Y", TimeRef::point(t));
    return ratio(filter(w, whole, Definition{"smokes", Pattern{{std::nullopt, "tobacco"}}}), whole);
  };
  const Rational late = r(2003), early = r(2002);
  if (late != Rational(2, 5) || early != Rational(1, 2))
    o.fail("ratios " + to_fraction_string(late) + ", " + to_fraction_string(early));
  if (!(late < early)) o.fail("comparison does not hold");

  const Decision d = explain(w, *w.find_statement("tobacco_less"));
  if (d.readings.size() != 1 || d.readings[0].truth != Truth::True) o.fail("ratio_evolution reading not true");
  if (o.ok) o.detail = to_fraction_string(late) + " < " + to_fraction_string(early) + " (exact)";
  return o;
}

// ---- AC3 -------------------------------------------------------------------

Outcome evolution_formulas() {
  Outcome o;
  const World w = load_world("friends.tcw");
  const Decision d = explain(w, *w.find_statement("S1"));
  if (d.readings.size() != 2) return o.fail("expected two readings"), o;
  const Reading& ind = d.readings[0];
  const Reading& glob = d.readings[1];
  if (ind.truth != Truth::True) o.fail("individual_evolution is " + std::string(to_string(ind.truth)));
  if (glob.truth != Truth::True) o.fail("global_aggregate is " + std::string(to_string(glob.truth)));

  using Values = std::vector<std::pair<std::string, Rational>>;
  if (ind.witnesses.size() != 2 || ind.witnesses[0].label != "f1" || ind.witnesses[1].label != "f2" ||
      ind.witnesses[0].values != Values{{"2002", 10}, {"2003", 8}} ||
      ind.witnesses[1].values != Values{{"2002", 5}, {"2003", 4}})
    o.fail("individual witnesses differ");
  if (glob.witnesses.size() != 1 || glob.witnesses[0].values != Values{{"2002", 15}, {"2003", 12}})
    o.fail("global witness differs");
  if (o.ok) o.detail = "f1 10>8, f2 5>4; sum 15 > 12";
  return o;
}

// ---- AC4 -------------------------------------------------------------------

Outcome de_re_composition() {
  Outcome o;
  WorldGen gen(0xAC4);
  int collections = 0;
  const int worlds = 1000;
  for (int i = 0; i < worlds && o.ok; ++i) {
    const World w = gen.next();
    for (const auto& [n, c] : w.collections()) collections += c.mode == Mode::DeRe;
    if (auto bad = de_re_invariance(w, -2, 6)) o.fail("world " + std::to_string(i) + ": " + *bad);
  }
  if (o.ok)
    o.detail = std::to_string(worlds) + " worlds, " + std::to_string(collections) + " de re collections, ticks -2..6";
  return o;
}

// ---- AC5 -------------------------------------------------------------------

Outcome oracle_equivalence() {
  Outcome o;
  WorldGen gen(0xAC5);
  const int worlds = 1000;
  for (int i = 0; i < worlds && o.ok; ++i)
    if (auto bad = oracle_agreement(gen.next(), 0, 4)) o.fail("world " + std::to_string(i) + ": " + *bad);
  if (o.ok) o.detail = std::to_string(worlds) + " worlds (<=20 entities, 5 ticks), 5 operations";
  return o;
}

// ---- AC6 -------------------------------------------------------------------

Outcome implication() {
  Outcome o;
  WorldGen gen(0xAC6);
  ImplicationTally tally;
  for (int i = 0; i < 1000; ++i) individual_implies_global(gen.next(), 0, 4, tally);
  if (tally.counterexamples) o.fail(std::to_string(tally.counterexamples) + " counterexamples, first: " + tally.first);
  if (tally.examined == 0) o.fail("no instance exercised the premise");
  if (o.ok) o.detail = std::to_string(tally.examined) + " true individual readings, 0 counterexamples";
  return o;
}

// ---- AC7 -------------------------------------------------------------------

Outcome round_trip_and_fuzz() {
  Outcome o;
  WorldGen gen(0xAC7);
  for (int i = 0; i < 1000 && o.ok; ++i)
    if (auto bad = round_trip(gen.next())) o.fail("world " + std::to_string(i) + ": " + *bad);

  int diagnostics = 0;
  for (const char* name : {"malformed.tcw"}) {
    const WorldParse p = parse_world(read_fixture(name));
    diagnostics += static_cast<int>(p.diagnostics.size());
    if (auto bad = positioned(p.diagnostics, read_fixture(name))) o.fail(*bad);
  }

  std::mt19937_64 rng(0xF022);
  int mutants = 0;
  for (const char* name : {"youth.tcw", "friends.tcw", "friends_missing.tcw", "students.tcw", "sitin.tcw",
                           "centuries.tcw", "malformed.tcw", "youth.tcq", "friends.tcq", "youth_false.tcq"}) {
    const std::string text = read_fixture(name);
    const bool script = std::string(name).ends_with(".tcq");
    for (int i = 0; i < 500 && o.ok; ++i, ++mutants) {
      const std::string mutated = mutate(text, rng);
      if (auto bad = fuzz_once(mutated, script)) o.fail(std::string(name) + " mutant: " + *bad);
    }
  }
  if (o.ok)
    o.detail = "1000 generated worlds, " + std::to_string(mutants) + " byte-mutated inputs, " +
               std::to_string(diagnostics) + " fixture diagnostics positioned";
  return o;
}

// ---- AC8 -------------------------------------------------------------------

std::string in_process(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  run_cli(args, out, err);
  return out.str() + "\x1e" + err.str();
}

std::optional<std::string> subprocess(const std::vector<std::string>& args) {
  std::string cmd = TSLICE_CLI_PATH;
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  pclose(pipe);
  return out;
}

Outcome determinism() {
  Outcome o;
  int runs = 0;
  for (const char* name :
       {"youth.tcw", "friends.tcw", "friends_missing.tcw", "students.tcw", "sitin.tcw", "centuries.tcw"}) {
    const World w = load_world(name);
    for (const auto& [id, s] : w.statements()) {
      for (const char* fmt : {"text", "json"}) {
        const std::vector<std::string> args{"--format", fmt, "explain", fixture_path(name), id};
        const std::string first = in_process(args);
        for (int i = 0; i < 3; ++i, ++runs)
          if (in_process(args) != first) o.fail(std::string(name) + " " + id + " " + fmt + " differs in-process");
        const auto a = subprocess(args), b = subprocess(args);
        runs += 2;
        if (!a || !b || *a != *b || first.substr(0, first.find('\x1e')) != *a)
          o.fail(std::string(name) + " " + id + " " + fmt + " differs across processes");
      }
    }
  }
  if (o.ok) o.detail = std::to_string(runs) + " repeated explain runs, text and json";
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 sentence fixtures decide mode and rules", sentence_fixtures},
      {"AC2 cohort ratio reading on W1", ratio_formula},
      {"AC3 individual and global readings on W2", evolution_formulas},
      {"AC4 de re composition invariance", de_re_composition},
      {"AC5 oracle equivalence of the collection algebra", oracle_equivalence},
      {"AC6 individual evolution implies global aggregate", implication},
      {"AC7 round-trip, positioned diagnostics, fuzzing", round_trip_and_fuzz},
      {"AC8 deterministic explain output", determinism},
  };
  int failed = 0;
  for (const auto& [title, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    failed += !o.ok;
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << title << ": " << o.detail << " (" << ms << " ms)\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
