#include "tslice/report.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tslice {

using json = nlohmann::ordered_json;

Status Report::status() const {
  if (!diagnostics.empty()) return Status::Error;
  if (std::any_of(commands.begin(), commands.end(), [](const CommandResult& c) { return c.error.has_value(); }))
    return Status::Error;
  if (std::any_of(commands.begin(), commands.end(),
                  [](const CommandResult& c) { return c.kind == CommandKind::Assert && c.truth == false; }))
    return Status::False;
  return Status::Ok;
}

int Report::exit_code() const {
  switch (status()) {
    case Status::Ok: return 0;
    case Status::False: return 1;
    case Status::Error: return 2;
  }
  return 2;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::False: return "false";
    case Status::Error: return "error";
  }
  return "error";
}

namespace {

std::string_view kind_name(CommandKind k) {
  switch (k) {
    case CommandKind::Check: return "check";
    case CommandKind::Eval: return "eval";
    case CommandKind::Assert: return "assert";
    case CommandKind::Disambiguate: return "disambiguate";
    case CommandKind::Explain: return "explain";
  }
  return "command";
}

// ---- text ------------------------------------------------------------------

std::string rational_text(const Rational& r) {
  const std::string exact = to_fraction_string(r);
  if (boost::multiprecision::denominator(r) == 1) return exact;
  return exact + " (~" + to_decimal_string(r) + ")";
}

std::string value_text(const Value& v) {
  if (const auto* n = std::get_if<std::size_t>(&v)) return std::to_string(*n);
  if (const auto* r = std::get_if<Rational>(&v)) return rational_text(*r);
  const auto& inst = std::get<Instantiation>(v);
  std::string out = inst.label() + " = {";
  for (std::size_t i = 0; i < inst.members.size(); ++i) out += (i ? ", " : "") + to_string(inst.members[i]);
  out += "}";
  if (!inst.dropped.empty()) {
    out += " dropped {";
    for (std::size_t i = 0; i < inst.dropped.size(); ++i) out += (i ? ", " : "") + inst.dropped[i];
    out += "}";
  }
  return out;
}

std::string short_value_text(const Value& v) {
  if (const auto* r = std::get_if<Rational>(&v)) return to_fraction_string(*r);
  if (const auto* inst = std::get_if<Instantiation>(&v)) return inst->label();
  return value_text(v);
}

std::optional<std::string> decimal_of(const Value& v) {
  if (const auto* r = std::get_if<Rational>(&v); r && boost::multiprecision::denominator(*r) != 1)
    return to_decimal_string(*r);
  return std::nullopt;
}

void decision_text(std::ostream& out, const Decision& d) {
  for (const auto& r : d.fired_rules) out << "  rule " << r.id << ": " << r.justification << '\n';
  for (const auto& n : d.notes) out << "  note: " << n << '\n';
  for (const auto& r : d.readings) {
    out << "  reading " << to_string(r.kind) << ": " << to_string(r.truth) << '\n';
    out << "    formula: " << r.formula << '\n';
    if (r.truth == Truth::Undefined) out << "    reason: " << r.reason << '\n';
    if (r.counterexample) out << "    counterexample: " << *r.counterexample << '\n';
    for (const auto& w : r.witnesses) {
      out << "    witness " << w.label;
      for (std::size_t i = 0; i < w.values.size(); ++i)
        out << (i ? ", " : ": ") << w.values[i].first << "=" << rational_text(w.values[i].second);
      if (w.holds) out << (*w.holds ? " [holds]" : " [fails]");
      out << '\n';
    }
  }
}

std::string format_text(const Report& report) {
  std::ostringstream out;
  for (const auto& d : report.diagnostics) out << to_string(d) << '\n';
  for (const auto& c : report.commands) {
    out << kind_name(c.kind) << " #" << c.number;
    if (c.error) {
      out << ": error: " << *c.error << '\n';
      continue;
    }
    switch (c.kind) {
      case CommandKind::Check:
        out << ": " << c.summary << '\n';
        break;
      case CommandKind::Eval:
        out << ": " << c.source.substr(c.source.find(' ') + 1) << " => " << value_text(*c.value) << '\n';
        break;
      case CommandKind::Assert: {
        out << ": " << (*c.truth ? "true" : "false") << " (" << short_value_text(*c.lhs) << ' ' << to_string(c.op)
            << ' ' << short_value_text(*c.rhs);
        auto dl = decimal_of(*c.lhs);
        auto dr = decimal_of(*c.rhs);
        if (dl || dr)
          out << "; ~" << dl.value_or(short_value_text(*c.lhs)) << ' ' << to_string(c.op) << " ~"
              << dr.value_or(short_value_text(*c.rhs));
        out << ")\n";
        break;
      }
      case CommandKind::Disambiguate:
      case CommandKind::Explain:
        out << " " << c.statement << ": " << to_string(c.decision->mode) << '\n';
        decision_text(out, *c.decision);
        break;
    }
  }
  out << "status: " << to_string(report.status()) << '\n';
  return out.str();
}

// ---- json ------------------------------------------------------------------

json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

json rational_json(const Rational& r) {
  return json{{"num", bigint_json(boost::multiprecision::numerator(r))},
              {"den", bigint_json(boost::multiprecision::denominator(r))},
              {"decimal", to_decimal_string(r)}};
}

json value_json(const Value& v) {
  if (const auto* n = std::get_if<std::size_t>(&v)) return json{{"type", "natural"}, {"value", *n}};
  if (const auto* r = std::get_if<Rational>(&v)) {
    json j{{"type", "rational"}};
    j.update(rational_json(*r));
    return j;
  }
  const auto& inst = std::get<Instantiation>(v);
  json members = json::array();
  for (const auto& s : inst.members) members.push_back(to_string(s));
  return json{{"type", "instantiation"}, {"label", inst.label()}, {"at", to_string(inst.at)},
              {"members", members}, {"dropped", inst.dropped}};
}

json decision_json(const Decision& d) {
  json trace = json::array();
  for (const auto& r : d.fired_rules) trace.push_back({{"rule", r.id}, {"justification", r.justification}});
  json readings = json::array();
  for (const auto& r : d.readings) {
    json j{{"kind", to_string(r.kind)}, {"mode", to_string(r.mode)}, {"formula", r.formula}};
    if (r.truth == Truth::True || r.truth == Truth::False)
      j["truth"] = r.truth == Truth::True;
    else
      j["truth"] = nullptr;
    if (r.truth == Truth::Undefined) j["reason"] = r.reason;
    if (r.counterexample) j["counterexample"] = *r.counterexample;
    json witnesses = json::array();
    for (const auto& w : r.witnesses) {
      json values = json::array();
      for (const auto& [key, val] : w.values) values.push_back({{"key", key}, {"value", rational_json(val)}});
      json wj{{"label", w.label}, {"values", values}};
      wj["holds"] = w.holds ? json(*w.holds) : json(nullptr);
      witnesses.push_back(std::move(wj));
    }
    j["witnesses"] = std::move(witnesses);
    readings.push_back(std::move(j));
  }
  return json{{"mode", to_string(d.mode)}, {"rules", d.rule_ids()}, {"trace", trace}, {"notes", d.notes},
              {"readings", readings}};
}

std::string format_json(const Report& report) {
  json commands = json::array();
  for (const auto& c : report.commands) {
    json j{{"kind", kind_name(c.kind)}, {"index", c.number}};
    if (c.line > 0) j["line"] = c.line;
    if (!c.source.empty()) j["source"] = c.source;
    if (c.error) {
      j["error"] = *c.error;
    } else {
      switch (c.kind) {
        case CommandKind::Check:
          j["summary"] = c.summary;
          break;
        case CommandKind::Eval:
          j["value"] = value_json(*c.value);
          break;
        case CommandKind::Assert:
          j["truth"] = *c.truth;
          j["lhs"] = value_json(*c.lhs);
          j["op"] = to_string(c.op);
          j["rhs"] = value_json(*c.rhs);
          break;
        case CommandKind::Disambiguate:
        case CommandKind::Explain:
          j["statement"] = c.statement;
          j.update(decision_json(*c.decision));
          break;
      }
    }
    commands.push_back(std::move(j));
  }
  json diagnostics = json::array();
  for (const auto& d : report.diagnostics)
    diagnostics.push_back({{"severity", d.severity == Severity::Error ? "error" : "warning"},
                           {"message", d.message},
                           {"line", d.line},
                           {"column", d.column},
                           {"source", d.source_name}});
  json doc{{"status", to_string(report.status())}, {"commands", commands}, {"diagnostics", diagnostics}};
  return doc.dump(2) + "\n";
}

// ---- evaluation ------------------------------------------------------------

Instantiation eval_inst(const World& world, const InstExpr& e, Policy policy) {
  Instantiation inst = instantiate(world, e.collection, TimeRef::point(e.at), policy);
  for (const auto& f : e.filters) inst = filter(world, inst, f);
  return inst;
}

std::optional<Rational> as_number(const Value& v) {
  if (const auto* n = std::get_if<std::size_t>(&v)) return Rational(*n);
  if (const auto* r = std::get_if<Rational>(&v)) return *r;
  return std::nullopt;
}

bool compare_values(const Value& lhs, Cmp op, const Value& rhs) {
  auto l = as_number(lhs);
  auto r = as_number(rhs);
  if (l && r) {
    switch (op) {
      case Cmp::Less: return *l < *r;
      case Cmp::Greater: return *l > *r;
      case Cmp::Equal: return *l == *r;
    }
  }
  const auto* li = std::get_if<Instantiation>(&lhs);
  const auto* ri = std::get_if<Instantiation>(&rhs);
  if (li && ri && op == Cmp::Equal) {
    auto contained = [](const Instantiation& a, const Instantiation& b) {
      return std::all_of(a.members.begin(), a.members.end(), [&](const Slice& s) {
        return std::find(b.members.begin(), b.members.end(), s) != b.members.end();
      });
    };
    return contained(*li, *ri) && contained(*ri, *li);
  }
  throw std::invalid_argument("cannot compare " + short_value_text(lhs) + " " + std::string(to_string(op)) + " " +
                              short_value_text(rhs));
}

Report with_diagnostics(std::vector<Diagnostic> diags) {
  Report r;
  r.diagnostics = std::move(diags);
  return r;
}

std::string world_summary(const World& w) {
  return "world ok: " + std::to_string(w.entities().size()) + " entities, " + std::to_string(w.predicates().size()) +
         " predicates, " + std::to_string(w.facts().size()) + " facts, " + std::to_string(w.measures().size()) +
         " measures, " + std::to_string(w.collections().size()) + " collections, " +
         std::to_string(w.statements().size()) + " statements, " + std::to_string(w.ticks().size()) + " ticks";
}

CommandResult statement_result(const World& world, const std::string& id, bool explain_it, Policy policy) {
  CommandResult c;
  c.kind = explain_it ? CommandKind::Explain : CommandKind::Disambiguate;
  c.statement = id;
  try {
    const Statement* s = world.find_statement(id);
    if (!s) throw Error(ErrorKind::UnknownStatement, "unknown statement '" + id + "'");
    c.decision = explain_it ? explain(world, *s, policy) : decide_mode(world, *s);
  } catch (const Error& e) {
    c.error = e.what();
  }
  return c;
}

} // namespace

Value evaluate_expr(const World& world, const Expr& expr, Policy policy) {
  struct {
    const World& world;
    Policy policy;
    Value operator()(const InstExpr& e) const { return eval_inst(world, e, policy); }
    Value operator()(const CardExpr& e) const { return cardinality(eval_inst(world, e.inst, policy)); }
    Value operator()(const RatioExpr& e) const {
      return ratio(eval_inst(world, e.sub, policy), eval_inst(world, e.super, policy));
    }
    Value operator()(const SumExpr& e) const {
      return aggregate_sum(world, e.measure, eval_inst(world, e.inst, policy));
    }
    Value operator()(const NumberExpr& e) const { return e.value; }
  } visitor{world, policy};
  return std::visit(visitor, expr);
}

std::string format_report(const Report& report, Format format) {
  return format == Format::Json ? format_json(report) : format_text(report);
}

Report check_world(std::string_view world_text, std::string_view world_name) {
  auto parsed = parse_world(world_text, world_name);
  if (!parsed.ok()) return with_diagnostics(std::move(parsed.diagnostics));
  Report r;
  CommandResult c;
  c.kind = CommandKind::Check;
  c.summary = world_summary(*parsed.world);
  r.commands.push_back(std::move(c));
  return r;
}

Report run_script(std::string_view world_text, std::string_view world_name, std::string_view script_text,
                  std::string_view script_name, Policy policy) {
  auto wp = parse_world(world_text, world_name);
  auto sp = parse_script(script_text, script_name);
  std::vector<Diagnostic> diags = wp.diagnostics;
  diags.insert(diags.end(), sp.diagnostics.begin(), sp.diagnostics.end());
  if (!wp.ok() || !sp.ok()) return with_diagnostics(std::move(diags));

  const World& world = *wp.world;
  if (auto unresolved = resolve_script(*sp.script, world, script_name); !unresolved.empty())
    return with_diagnostics(std::move(unresolved));

  Report report;
  int counts[5] = {0, 0, 0, 0, 0};
  for (const Command& cmd : sp.script->commands) {
    CommandResult c;
    if (const auto* e = std::get_if<EvalCmd>(&cmd.body)) {
      c.kind = CommandKind::Eval;
      try {
        c.value = evaluate_expr(world, e->expr, policy);
      } catch (const Error& err) {
        c.error = err.what();
      }
    } else if (const auto* a = std::get_if<AssertCmd>(&cmd.body)) {
      c.kind = CommandKind::Assert;
      c.op = a->op;
      try {
        c.lhs = evaluate_expr(world, a->lhs, policy);
        c.rhs = evaluate_expr(world, a->rhs, policy);
        c.truth = compare_values(*c.lhs, a->op, *c.rhs);
      } catch (const std::exception& err) {
        c.error = err.what();
      }
    } else if (const auto* d = std::get_if<DisambiguateCmd>(&cmd.body)) {
      c = statement_result(world, d->statement, false, policy);
    } else if (const auto* x = std::get_if<ExplainCmd>(&cmd.body)) {
      c = statement_result(world, x->statement, true, policy);
    }
    c.number = ++counts[static_cast<int>(c.kind)];
    c.line = cmd.line;
    c.source = cmd.source;
    report.commands.push_back(std::move(c));
  }
  return report;
}

Report run_statement(std::string_view world_text, std::string_view world_name, std::string_view statement_id,
                     bool explain_it, Policy policy) {
  auto wp = parse_world(world_text, world_name);
  if (!wp.ok()) return with_diagnostics(std::move(wp.diagnostics));
  Report report;
  report.commands.push_back(statement_result(*wp.world, std::string(statement_id), explain_it, policy));
  return report;
}

} // namespace tslice
