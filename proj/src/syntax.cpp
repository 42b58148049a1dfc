#include "tslice/syntax.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace tslice {

std::string to_string(const Diagnostic& d) {
  return d.source_name + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
         (d.severity == Severity::Error ? "error: " : "warning: ") + d.message;
}

std::string render_pattern(const Pattern& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.slots.size(); ++i) {
    if (i) out += ", ";
    out += p.slots[i] ? *p.slots[i] : "_";
  }
  return out + ")";
}

std::string render_definition(const Definition& d) { return d.predicate + render_pattern(d.pattern); }

std::string render_interval(const TimeRef& t) {
  return "[" + std::to_string(t.start()) + ", " + (t.is_open() ? std::string("*") : std::to_string(*t.end())) + "]";
}

namespace {

// ---- lexing ----------------------------------------------------------------

enum class Tok { Ident, Hole, Int, Number, BadNumber, Punct, Assign, Bad, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int column = 1;
};

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t at) { return static_cast<int>(at) + 1; };
  while (i < line.size()) {
    const char c = line[i];
    if (c == ';') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < line.size() && is_ident_char(line[i])) ++i;
      std::string text(line.substr(start, i - start));
      out.push_back({text == "_" ? Tok::Hole : Tok::Ident, text, col(start)});
    } else if (is_digit(c) || ((c == '-' || c == '+') && i + 1 < line.size() && is_digit(line[i + 1]))) {
      ++i;
      while (i < line.size() && is_digit(line[i])) ++i;
      Tok kind = Tok::Int;
      if (i + 1 < line.size() && (line[i] == '/' || line[i] == '.') && is_digit(line[i + 1])) {
        kind = Tok::Number;
        ++i;
        while (i < line.size() && is_digit(line[i])) ++i;
      }
      if (i < line.size() && (is_ident_char(line[i]) || line[i] == '.')) {
        kind = Tok::BadNumber;
        while (i < line.size() && (is_ident_char(line[i]) || line[i] == '.')) ++i;
      }
      out.push_back({kind, std::string(line.substr(start, i - start)), col(start)});
    } else if (c == ':' && i + 1 < line.size() && line[i + 1] == '=') {
      i += 2;
      out.push_back({Tok::Assign, ":=", col(start)});
    } else if (std::string_view("()[],@|=<>*").find(c) != std::string_view::npos) {
      ++i;
      out.push_back({Tok::Punct, std::string(1, c), col(start)});
    } else {
      ++i;
      out.push_back({Tok::Bad, std::string(1, c), col(start)});
    }
  }
  out.push_back({Tok::End, "", col(line.size())});
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of line";
    case Tok::Bad: return "unexpected character '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

struct SyntaxError {
  std::string message;
  int column;
};

/// Reports the first unbalanced parenthesis on a line, if any.
std::optional<SyntaxError> paren_problem(const std::vector<Token>& toks) {
  std::vector<int> open;
  for (const Token& t : toks) {
    if (t.kind != Tok::Punct) continue;
    if (t.text == "(") {
      open.push_back(t.column);
    } else if (t.text == ")") {
      if (open.empty()) return SyntaxError{"unbalanced parenthesis: ')' has no matching '('", t.column};
      open.pop_back();
    }
  }
  if (!open.empty()) return SyntaxError{"unbalanced parenthesis: '(' is never closed", open.front()};
  return std::nullopt;
}

// ---- line parser -----------------------------------------------------------

class LineParser {
public:
  explicit LineParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Tok::End; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw SyntaxError{msg, at.column}; }
  [[noreturn]] void fail_expected(const std::string& what) const {
    fail("expected " + what + ", found " + describe(peek()), peek());
  }

  bool peek_punct(char c) const { return peek().kind == Tok::Punct && peek().text.size() == 1 && peek().text[0] == c; }
  bool peek_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

  bool accept_punct(char c) {
    if (!peek_punct(c)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!peek_word(w)) return false;
    next();
    return true;
  }

  void expect_punct(char c) {
    if (!accept_punct(c)) fail_expected(std::string("'") + c + "'");
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) fail_expected("'" + std::string(w) + "'");
  }
  void expect_assign() {
    if (peek().kind != Tok::Assign) fail_expected("':='");
    next();
  }
  const Token& expect_ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail_expected(what);
    return next();
  }
  void expect_end() {
    if (!at_end()) fail("unexpected " + describe(peek()) + " at end of declaration", peek());
  }

  std::string expect_one_of(std::initializer_list<std::string_view> words) {
    for (auto w : words)
      if (accept_word(w)) return std::string(w);
    std::string list;
    for (auto w : words) list += (list.empty() ? "'" : " | '") + std::string(w) + "'";
    fail_expected(list);
  }

  Tick expect_tick() {
    const Token& t = peek();
    if (t.kind == Tok::BadNumber || t.kind == Tok::Number) fail("bad tick literal '" + t.text + "'", t);
    if (t.kind != Tok::Int) fail_expected("a tick");
    Tick value = 0;
    const char* first = t.text.data() + (t.text.front() == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      fail("bad tick literal '" + t.text + "'", t);
    next();
    return value;
  }

  Tick expect_positive_int(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Tok::Int) fail_expected(what);
    Tick v = expect_tick();
    if (v <= 0) throw SyntaxError{what + " must be positive", t.column};
    return v;
  }

  // interval := "[" tick "," ( tick | "*" ) "]"
  TimeRef expect_interval() {
    const Token& open = peek();
    if (!accept_punct('[')) fail_expected("an interval '[start, end]'");
    try {
      Tick lo = expect_tick();
      expect_punct(',');
      std::optional<Tick> hi;
      if (!accept_punct('*')) hi = expect_tick();
      expect_punct(']');
      return TimeRef::interval(lo, hi);
    } catch (const SyntaxError& e) {
      throw SyntaxError{"malformed interval: " + e.message, e.column ? e.column : open.column};
    }
  }

  // "(" arg { "," arg } ")"; holes only when allowed
  Pattern expect_args(bool allow_holes) {
    expect_punct('(');
    Pattern p;
    do {
      const Token& t = peek();
      if (t.kind == Tok::Hole) {
        if (!allow_holes) fail("'_' is only allowed in patterns", t);
        next();
        p.slots.emplace_back(std::nullopt);
      } else if (t.kind == Tok::Ident) {
        p.slots.emplace_back(next().text);
      } else {
        fail_expected(allow_holes ? "a symbol or '_'" : "a symbol");
      }
    } while (accept_punct(','));
    expect_punct(')');
    return p;
  }

  Rational expect_rational() {
    const Token& t = peek();
    if (t.kind != Tok::Int && t.kind != Tok::Number) {
      if (t.kind == Tok::BadNumber) fail("bad number literal '" + t.text + "'", t);
      fail_expected("a number");
    }
    auto v = parse_rational(t.text);
    if (!v) fail("bad number literal '" + t.text + "'", t);
    next();
    return *v;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

struct Position {
  int line;
  int column;
};

} // namespace

// ---- worlds ----------------------------------------------------------------

WorldParse parse_world(std::string_view text, std::string_view source_name) {
  WorldParse result;
  WorldBuilder builder;
  std::map<ItemKind, std::vector<Position>> positions;
  const std::string source(source_name);

  auto diag = [&](int line, int column, std::string msg) {
    result.diagnostics.push_back({Severity::Error, std::move(msg), line, column, source});
  };

  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const int line_no = static_cast<int>(n) + 1;
    auto toks = lex_line(lines[n]);
    if (toks.front().kind == Tok::End) continue;
    if (auto p = paren_problem(toks)) {
      diag(line_no, p->column, p->message);
      continue;
    }
    LineParser lp(std::move(toks));
    try {
      const Token& kw = lp.peek();
      if (kw.kind != Tok::Ident) lp.fail("expected a declaration keyword, found " + describe(kw), kw);
      const std::string keyword = lp.next().text;
      const int name_col = lp.peek().column;

      if (keyword == "entity") {
        Entity e;
        e.id = lp.expect_ident("an entity id").text;
        lp.expect_word("lifespan");
        e.lifespan = lp.expect_interval();
        e.invariant = lp.accept_word("invariant");
        if (lp.accept_word("species")) e.species = lp.expect_ident("a species name").text;
        lp.expect_end();
        builder.add(std::move(e));
        positions[ItemKind::Entity].push_back({line_no, name_col});
      } else if (keyword == "pred") {
        PredicateDecl p;
        p.name = lp.expect_ident("a predicate name").text;
        lp.expect_word("arity");
        p.arity = static_cast<std::size_t>(lp.expect_positive_int("arity"));
        p.profile = lp.expect_one_of({"mutable", "invariant"}) == "mutable" ? TemporalProfile::Mutable
                                                                            : TemporalProfile::IndividualInvariant;
        p.cohort = lp.accept_word("cohort");
        lp.expect_end();
        builder.add(std::move(p));
        positions[ItemKind::Predicate].push_back({line_no, name_col});
      } else if (keyword == "fact") {
        Fact f;
        f.predicate = lp.expect_ident("a predicate name").text;
        Pattern args = lp.expect_args(false);
        for (auto& a : args.slots) f.args.push_back(*a);
        lp.expect_punct('@');
        if (!lp.accept_punct('*')) f.at = lp.expect_tick();
        lp.expect_end();
        builder.add(std::move(f));
        positions[ItemKind::Fact].push_back({line_no, name_col});
      } else if (keyword == "measure") {
        MeasureFact m;
        m.measure = lp.expect_ident("a measure name").text;
        lp.expect_punct('(');
        m.entity = lp.expect_ident("an entity id").text;
        lp.expect_punct(')');
        lp.expect_punct('@');
        m.at = lp.expect_tick();
        lp.expect_punct('=');
        m.value = lp.expect_rational();
        lp.expect_end();
        builder.add(std::move(m));
        positions[ItemKind::Measure].push_back({line_no, name_col});
      } else if (keyword == "collection") {
        CollectionDecl c;
        c.name = lp.expect_ident("a collection name").text;
        if (lp.expect_one_of({"dicto", "re"}) == "re") {
          c.mode = Mode::DeRe;
          if (lp.accept_punct('@')) c.anchor = lp.expect_tick();
        }
        lp.expect_assign();
        c.definition.predicate = lp.expect_ident("a predicate name").text;
        c.definition.pattern = lp.expect_args(true);
        lp.expect_end();
        builder.add(std::move(c));
        positions[ItemKind::Collection].push_back({line_no, name_col});
      } else if (keyword == "statement") {
        Statement s;
        s.id = lp.expect_ident("a statement id").text;
        lp.expect_word("subject");
        s.subject = lp.expect_ident("a collection name").text;
        lp.expect_word("profile");
        s.profile.evolutive = lp.expect_one_of({"evolutive", "static"}) == "evolutive";
        lp.expect_word("property");
        s.profile.property = lp.expect_ident("a predicate or measure name").text;
        if (lp.peek_punct('(')) s.profile.property_pattern = lp.expect_args(true);
        lp.expect_word("direction");
        const std::string dir = lp.expect_one_of({"less", "more", "changed"});
        s.profile.direction = dir == "less" ? Direction::Less : dir == "more" ? Direction::More : Direction::Changed;
        lp.expect_word("times");
        do {
          s.eval_times.push_back(lp.expect_tick());
        } while (lp.accept_punct(','));
        lp.expect_word("span");
        s.span = lp.expect_interval();
        if (lp.accept_word("bound")) s.species_bound = lp.expect_positive_int("bound");
        if (lp.accept_word("mode"))
          s.explicit_mode = lp.expect_one_of({"re", "dicto"}) == "re" ? Mode::DeRe : Mode::DeDicto;
        lp.expect_end();
        builder.add(std::move(s));
        positions[ItemKind::Statement].push_back({line_no, name_col});
      } else {
        lp.fail("unknown keyword '" + keyword + "'", kw);
      }
    } catch (const SyntaxError& e) {
      diag(line_no, e.column, e.message);
    }
  }

  for (const Issue& issue : builder.validate()) {
    const Position p = positions[issue.item][issue.index];
    diag(p.line, p.column, issue.message);
  }
  std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.line, a.column) < std::tie(b.line, b.column);
                   });

  if (result.diagnostics.empty()) result.world = builder.build();
  return result;
}

std::string render_world(const World& world) {
  std::ostringstream out;
  bool first_section = true;
  auto section = [&](bool non_empty) {
    if (non_empty && !first_section) out << '\n';
    if (non_empty) first_section = false;
  };

  section(!world.entities().empty());
  for (const auto& [id, e] : world.entities()) {
    out << "entity " << id << " lifespan " << render_interval(e.lifespan);
    if (e.invariant) out << " invariant";
    if (e.species) out << " species " << *e.species;
    out << '\n';
  }

  section(!world.predicates().empty());
  for (const auto& [name, p] : world.predicates()) {
    out << "pred " << name << " arity " << p.arity
        << (p.profile == TemporalProfile::Mutable ? " mutable" : " invariant");
    if (p.cohort) out << " cohort";
    out << '\n';
  }

  section(!world.facts().empty());
  for (const Fact& f : world.facts()) {
    out << "fact " << f.predicate << '(';
    for (std::size_t i = 0; i < f.args.size(); ++i) out << (i ? ", " : "") << f.args[i];
    out << ") @ " << (f.at ? std::to_string(*f.at) : std::string("*")) << '\n';
  }

  section(!world.measures().empty());
  for (const MeasureFact& m : world.measures())
    out << "measure " << m.measure << '(' << m.entity << ") @ " << m.at << " = " << to_fraction_string(m.value)
        << '\n';

  section(!world.collections().empty());
  for (const auto& [name, c] : world.collections()) {
    out << "collection " << name << ' ';
    if (c.mode == Mode::DeDicto)
      out << "dicto";
    else
      out << "re@" << *c.anchor;
    out << " := " << render_definition(c.definition) << '\n';
  }

  section(!world.statements().empty());
  for (const auto& [id, s] : world.statements()) {
    out << "statement " << id << " subject " << s.subject << " profile "
        << (s.profile.evolutive ? "evolutive" : "static") << " property " << s.profile.property;
    if (s.profile.property_pattern) out << render_pattern(*s.profile.property_pattern);
    out << " direction "
        << (s.profile.direction == Direction::Less ? "less" : s.profile.direction == Direction::More ? "more" : "changed")
        << " times ";
    for (std::size_t i = 0; i < s.eval_times.size(); ++i) out << (i ? ", " : "") << s.eval_times[i];
    out << " span " << render_interval(s.span);
    if (s.species_bound) out << " bound " << *s.species_bound;
    if (s.explicit_mode) out << " mode " << (*s.explicit_mode == Mode::DeRe ? "re" : "dicto");
    out << '\n';
  }
  return out.str();
}

// ---- scripts ---------------------------------------------------------------

namespace {

InstExpr parse_inst(LineParser& lp, int line_no) {
  InstExpr inst;
  inst.line = line_no;
  inst.column = lp.peek().column;
  inst.collection = lp.expect_ident("a collection name").text;
  lp.expect_punct('@');
  inst.at = lp.expect_tick();
  while (lp.accept_punct('|')) {
    Definition d;
    d.predicate = lp.expect_ident("a predicate name").text;
    d.pattern = lp.expect_args(true);
    inst.filters.push_back(std::move(d));
  }
  return inst;
}

Expr parse_expr(LineParser& lp, int line_no) {
  const Token& t = lp.peek();
  if (t.kind == Tok::Int || t.kind == Tok::Number) return NumberExpr{lp.expect_rational()};
  if (t.kind == Tok::BadNumber) lp.fail("bad number literal '" + t.text + "'", t);
  if (t.kind != Tok::Ident) lp.fail_expected("an expression");

  const bool call = lp.peek(1).kind == Tok::Punct && lp.peek(1).text == "(";
  if (t.text == "card" && call) {
    lp.next();
    lp.expect_punct('(');
    CardExpr e{parse_inst(lp, line_no)};
    lp.expect_punct(')');
    return e;
  }
  if (t.text == "ratio" && call) {
    lp.next();
    lp.expect_punct('(');
    RatioExpr e;
    e.sub = parse_inst(lp, line_no);
    lp.expect_punct(',');
    e.super = parse_inst(lp, line_no);
    lp.expect_punct(')');
    return e;
  }
  if (t.text == "sum" && lp.peek(1).kind == Tok::Ident) {
    lp.next();
    SumExpr e;
    e.column = lp.peek().column;
    e.measure = lp.expect_ident("a measure name").text;
    lp.expect_word("over");
    e.inst = parse_inst(lp, line_no);
    return e;
  }
  return parse_inst(lp, line_no);
}

std::string trim(std::string_view s) {
  auto semi = s.find(';');
  if (semi != std::string_view::npos) s = s.substr(0, semi);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string render_inst(const InstExpr& i) {
  std::string out = i.collection + "@" + std::to_string(i.at);
  for (const auto& f : i.filters) out += " | " + render_definition(f);
  return out;
}

} // namespace

std::string_view to_string(Cmp op) {
  switch (op) {
    case Cmp::Less: return "<";
    case Cmp::Greater: return ">";
    case Cmp::Equal: return "=";
  }
  return "?";
}

std::string render_expr(const Expr& e) {
  struct {
    std::string operator()(const InstExpr& i) const { return render_inst(i); }
    std::string operator()(const CardExpr& c) const { return "card(" + render_inst(c.inst) + ")"; }
    std::string operator()(const RatioExpr& r) const {
      return "ratio(" + render_inst(r.sub) + ", " + render_inst(r.super) + ")";
    }
    std::string operator()(const SumExpr& s) const { return "sum " + s.measure + " over " + render_inst(s.inst); }
    std::string operator()(const NumberExpr& n) const { return to_fraction_string(n.value); }
  } visitor;
  return std::visit(visitor, e);
}

ScriptParse parse_script(std::string_view text, std::string_view source_name) {
  ScriptParse result;
  Script script;
  const std::string source(source_name);

  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const int line_no = static_cast<int>(n) + 1;
    auto toks = lex_line(lines[n]);
    if (toks.front().kind == Tok::End) continue;
    try {
      if (auto p = paren_problem(toks)) throw *p;
      LineParser lp(std::move(toks));
      const Token& kw = lp.peek();
      if (kw.kind != Tok::Ident) lp.fail("expected a command keyword, found " + describe(kw), kw);
      const std::string keyword = lp.next().text;

      Command cmd;
      cmd.line = line_no;
      cmd.source = trim(lines[n]);
      if (keyword == "eval") {
        cmd.body = EvalCmd{parse_expr(lp, line_no)};
      } else if (keyword == "assert") {
        AssertCmd a;
        a.lhs = parse_expr(lp, line_no);
        if (lp.accept_punct('<'))
          a.op = Cmp::Less;
        else if (lp.accept_punct('>'))
          a.op = Cmp::Greater;
        else if (lp.accept_punct('='))
          a.op = Cmp::Equal;
        else
          lp.fail_expected("a comparison '<', '>' or '='");
        a.rhs = parse_expr(lp, line_no);
        cmd.body = std::move(a);
      } else if (keyword == "disambiguate" || keyword == "explain") {
        const int col = lp.peek().column;
        std::string id = lp.expect_ident("a statement id").text;
        if (keyword == "explain")
          cmd.body = ExplainCmd{std::move(id), col};
        else
          cmd.body = DisambiguateCmd{std::move(id), col};
      } else {
        lp.fail("unknown keyword '" + keyword + "'", kw);
      }
      lp.expect_end();
      script.commands.push_back(std::move(cmd));
    } catch (const SyntaxError& e) {
      result.diagnostics.push_back({Severity::Error, e.message, line_no, e.column, source});
    }
  }

  if (result.diagnostics.empty()) result.script = std::move(script);
  return result;
}

std::vector<Diagnostic> resolve_script(const Script& script, const World& world, std::string_view source_name) {
  std::vector<Diagnostic> out;
  const std::string source(source_name);
  auto diag = [&](int line, int column, std::string msg) {
    out.push_back({Severity::Error, std::move(msg), line, column, source});
  };

  auto check_inst = [&](const InstExpr& i) {
    if (!world.find_collection(i.collection)) {
      diag(i.line, i.column, "unknown collection '" + i.collection + "'");
      return;
    }
    for (const auto& f : i.filters) {
      try {
        check_pattern(world, f.predicate, f.pattern);
      } catch (const Error& e) {
        diag(i.line, i.column, std::string("filter: ") + e.what());
      }
    }
  };
  auto check_expr = [&](const Expr& e, int line) {
    if (const auto* i = std::get_if<InstExpr>(&e)) check_inst(*i);
    if (const auto* c = std::get_if<CardExpr>(&e)) check_inst(c->inst);
    if (const auto* r = std::get_if<RatioExpr>(&e)) {
      check_inst(r->sub);
      check_inst(r->super);
    }
    if (const auto* s = std::get_if<SumExpr>(&e)) {
      if (!world.is_measure(s->measure)) diag(line, s->column, "unknown measure '" + s->measure + "'");
      check_inst(s->inst);
    }
  };

  for (const Command& cmd : script.commands) {
    if (const auto* e = std::get_if<EvalCmd>(&cmd.body)) check_expr(e->expr, cmd.line);
    if (const auto* a = std::get_if<AssertCmd>(&cmd.body)) {
      check_expr(a->lhs, cmd.line);
      check_expr(a->rhs, cmd.line);
    }
    if (const auto* d = std::get_if<DisambiguateCmd>(&cmd.body); d && !world.find_statement(d->statement))
      diag(cmd.line, d->column, "unknown statement '" + d->statement + "'");
    if (const auto* x = std::get_if<ExplainCmd>(&cmd.body); x && !world.find_statement(x->statement))
      diag(cmd.line, x->column, "unknown statement '" + x->statement + "'");
  }
  return out;
}

} // namespace tslice
