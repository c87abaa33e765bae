#include "matrixcode/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

namespace mxc {

bool operator==(const Program& a, const Program& b) {
  return a.matrix == b.matrix && a.conditions == b.conditions && a.domain == b.domain &&
         a.samples == b.samples;
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Int, Char, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t value = 0;
  SourceLoc loc;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident: return "'" + t.text + "'";
    case Tok::Int: return "integer " + t.text;
    case Tok::Char: return "character literal";
    case Tok::String: return "string literal";
    case Tok::Punct: return "'" + t.text + "'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view src) {
  static const char* const kPunct[] = {"..", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=",
                                       "-=", "*=", "{",  "}",  "[",  "]",  "(",  ")",  ";",  ":",
                                       ",",  "|",  "=",  "<",  ">",  "+",  "-",  "*",  "/",  "%",
                                       "!",  "?"};
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.loc = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
      t.text = std::string(src.substr(i, j - i));
      try {
        t.value = std::stoll(t.text);
      } catch (const std::out_of_range&) {
        throw ParseError(t.loc, "integer literal " + t.text + " is out of range");
      }
      advance(j - i);
    } else if (c == '\'') {
      if (i + 2 >= src.size() || src[i + 2] != '\'')
        throw ParseError(t.loc, "malformed character literal");
      t.kind = Tok::Char;
      t.value = static_cast<unsigned char>(src[i + 1]);
      t.text = std::string(1, src[i + 1]);
      advance(3);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw ParseError(t.loc, "unterminated string literal");
      t.kind = Tok::String;
      t.text = std::string(src.substr(i + 1, j - i - 1));
      advance(j - i + 1);
    } else {
      bool matched = false;
      for (const char* p : kPunct) {
        const std::string_view pv(p);
        if (src.substr(i, pv.size()) == pv) {
          t.kind = Tok::Punct;
          t.text = std::string(pv);
          advance(pv.size());
          matched = true;
          break;
        }
      }
      if (!matched) throw ParseError(t.loc, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.loc = {line, col};
  out.push_back(end);
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"dsm",  "param", "var",    "states",  "start",
                                          "halt", "cond",  "from",   "domain",  "samples"};
  return k;
}

// ---------------------------------------------------------------------------
// Parser

struct RawCell {
  std::string from, to;
  SourceLoc loc;
  std::vector<RelationExpr> rules;
};

struct RawCondition {
  Condition cond;
  SourceLoc loc;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is(const char* punct, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == punct;
  }
  bool is_word(const char* w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == w;
  }
  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(peek().loc, "expected " + expected + ", found " + describe(peek()));
  }
  Token expect(const char* punct) {
    if (!is(punct)) fail(std::string("'") + punct + "'");
    return take();
  }
  Token expect_word(const char* w) {
    if (!is_word(w)) fail(std::string("'") + w + "'");
    return take();
  }
  Token ident(const char* what = "a name") {
    if (peek().kind != Tok::Ident) fail(what);
    return take();
  }
  bool accept(const char* punct) {
    if (!is(punct)) return false;
    take();
    return true;
  }

  /// Skips to just past the next ';' at nesting depth zero.
  void recover() {
    int depth = 0;
    while (!at_end()) {
      if (is("{") || is("(") || is("[")) ++depth;
      if (is("}") || is(")") || is("]")) {
        if (depth == 0) return;
        --depth;
      }
      if (depth == 0 && is(";")) {
        take();
        return;
      }
      take();
    }
  }

  // -- expressions --------------------------------------------------------

  static bool binary_op(const Token& t, Op& op) {
    static const std::pair<const char*, Op> table[] = {
        {"||", Op::Or}, {"&&", Op::And}, {"==", Op::Eq}, {"!=", Op::Ne}, {"<", Op::Lt},
        {"<=", Op::Le}, {">", Op::Gt},   {">=", Op::Ge}, {"+", Op::Add}, {"-", Op::Sub},
        {"*", Op::Mul}, {"/", Op::Div},  {"%", Op::Mod}};
    if (t.kind == Tok::Ident) {
      if (t.text == "or") return op = Op::Or, true;
      if (t.text == "and") return op = Op::And, true;
      return false;
    }
    if (t.kind != Tok::Punct) return false;
    for (const auto& [text, o] : table)
      if (t.text == text) return op = o, true;
    return false;
  }

  Expr expr(int min_prec = 1) {
    Expr lhs = unary();
    Op op;
    while (binary_op(peek(), op) && op_precedence(op) >= min_prec) {
      const Token t = take();
      Expr rhs = expr(op_precedence(op) + 1);
      lhs = Expr::binary(op, std::move(lhs), std::move(rhs), t.loc);
    }
    return lhs;
  }

  Expr unary() {
    const Token t = peek();
    if (is("!") || is_word("not")) {
      take();
      return Expr::unary(Op::Not, unary(), t.loc);
    }
    if (is("-")) {
      take();
      return Expr::unary(Op::Neg, unary(), t.loc);
    }
    Expr e = atom();
    while (is("[")) {
      const Token b = take();
      Expr idx = expr();
      expect("]");
      e = Expr::index(std::move(e), std::move(idx), b.loc);
    }
    return e;
  }

  Expr atom() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Int: take(); return Expr::integer(t.value, t.loc);
      case Tok::Char: take(); return Expr::character(static_cast<char>(t.value), t.loc);
      case Tok::Ident:
        if (t.text == "true" || t.text == "false") {
          take();
          return Expr::boolean(t.text == "true", t.loc);
        }
        if (t.text == "len" && is("(", 1)) {
          take();
          take();
          Expr operand = expr();
          expect(")");
          return Expr::len(std::move(operand), t.loc);
        }
        if ((t.text == "forall" || t.text == "exists") && peek(1).kind == Tok::Ident) {
          take();
          const Token var = ident("a bound variable");
          expect_word("in");
          Expr lo = expr(5);
          expect("..");
          Expr hi = expr(5);
          expect("(");
          Expr body = expr();
          expect(")");
          return Expr::quantifier(t.text == "forall", var.text, std::move(lo), std::move(hi),
                                  std::move(body), t.loc);
        }
        take();
        return Expr::var(t.text, t.loc);
      case Tok::Punct:
        if (t.text == "(") {
          take();
          Expr e = expr();
          expect(")");
          return e;
        }
        break;
      default:
        break;
    }
    fail("an expression");
  }

  // -- rules ----------------------------------------------------------------

  bool starts_item(std::size_t ahead) const {
    const Token& t = peek(ahead);
    if (t.kind == Tok::Punct) return t.text == "[" || t.text == "{" || t.text == "(";
    return t.kind == Tok::Ident && !keywords().count(t.text);
  }

  RelationExpr rules() {
    RelationExpr r = rule();
    while (is("|")) {
      take();
      r = RelationExpr::alt(std::move(r), rule());
    }
    return r;
  }

  /// A cell's rules: the top-level alternatives stay separate.
  std::vector<RelationExpr> rule_list() {
    std::vector<RelationExpr> out;
    out.push_back(rule());
    while (is("|")) {
      take();
      out.push_back(rule());
    }
    return out;
  }

  RelationExpr rule() {
    RelationExpr r = item();
    while (is(";") && starts_item(1)) {
      take();
      r = RelationExpr::seq(std::move(r), item());
    }
    return r;
  }

  RelationExpr item() {
    const Token t = peek();
    if (is("[")) {
      take();
      Expr g = expr();
      expect("]");
      auto r = RelationExpr::make_guard(std::move(g));
      r.loc = t.loc;
      return r;
    }
    if (is("{")) {
      take();
      std::vector<Assignment> as;
      while (!is("}")) {
        statement(as);
        if (!accept(";")) break;
      }
      expect("}");
      auto r = RelationExpr::make_assign(std::move(as));
      r.loc = t.loc;
      return r;
    }
    if (is("(")) {
      take();
      RelationExpr r = rules();
      expect(")");
      return r;
    }
    if (t.kind == Tok::Ident) return builtin();
    fail("a guard, statement block, builtin or '('");
  }

  void statement(std::vector<Assignment>& out) {
    const Token target = ident("an assignment target");
    std::optional<Expr> index;
    std::optional<Token> post_increment;
    if (is("[")) {
      take();
      if (peek().kind == Tok::Ident && is("++", 1) && is("]", 2)) {
        post_increment = take();
        take();
        index = Expr::var(post_increment->text, post_increment->loc);
      } else {
        index = expr();
      }
      expect("]");
    }
    auto current = [&]() {
      Expr base = Expr::var(target.text, target.loc);
      return index ? Expr::index(std::move(base), *index, target.loc) : base;
    };
    Assignment a;
    a.target = target.text;
    a.index = index;
    a.loc = target.loc;
    if (accept("=")) {
      a.value = expr();
    } else if (is("+=") || is("-=") || is("*=")) {
      const Token op = take();
      const Op o = op.text == "+=" ? Op::Add : op.text == "-=" ? Op::Sub : Op::Mul;
      a.value = Expr::binary(o, current(), expr(), op.loc);
    } else if (is("++") || is("--")) {
      const Token op = take();
      a.value = Expr::binary(op.text == "++" ? Op::Add : Op::Sub, current(), Expr::integer(1, op.loc), op.loc);
    } else {
      fail("'=', '+=', '-=', '*=', '++' or '--'");
    }
    out.push_back(std::move(a));
    if (post_increment) {
      Assignment inc;
      inc.target = post_increment->text;
      inc.loc = post_increment->loc;
      inc.value = Expr::binary(Op::Add, Expr::var(post_increment->text, post_increment->loc),
                               Expr::integer(1, post_increment->loc), post_increment->loc);
      out.push_back(std::move(inc));
    }
  }

  RelationExpr builtin() {
    const Token name = take();
    BuiltinCall b;
    b.loc = name.loc;
    if (!parse_builtin_name(name.text, b.kind))
      throw ParseError(name.loc, "unknown builtin '" + name.text + "'");
    switch (b.kind) {
      case BuiltinKind::GetL:
      case BuiltinKind::GetR:
        expect("(");
        b.var = ident("a variable").text;
        expect(")");
        break;
      case BuiltinKind::Rd:
      case BuiltinKind::Wr: {
        expect("(");
        if (peek().kind != Tok::Char) fail("a character literal");
        b.symbol = static_cast<char>(take().value);
        expect(")");
        break;
      }
      case BuiltinKind::Dir: {
        expect("(");
        const Token d = ident("a direction L, R or d");
        auto dir = d.text.size() == 1 ? direction_from_char(d.text[0]) : std::nullopt;
        if (!dir) throw ParseError(d.loc, "direction must be L, R or d");
        b.dir = *dir;
        expect(")");
        break;
      }
      default:
        if (accept("(")) expect(")");
        break;
    }
    auto r = RelationExpr::make_builtin(b);
    r.loc = name.loc;
    return r;
  }

  // -- literals ----------------------------------------------------------------

  std::int64_t signed_int() {
    const bool neg = accept("-");
    if (peek().kind != Tok::Int) fail("an integer");
    const auto v = take().value;
    return neg ? -v : v;
  }

  Value literal() {
    const Token t = peek();
    if (t.kind == Tok::Int || is("-")) return signed_int();
    if (t.kind == Tok::Char) {
      take();
      return Sym{static_cast<char>(t.value)};
    }
    if (t.kind == Tok::String) {
      take();
      Stream s;
      for (char c : t.text) s.items.push_back(static_cast<unsigned char>(c));
      return s;
    }
    if (is("[")) {
      take();
      IntArray a;
      if (!is("]")) {
        do {
          if (accept("?")) a.items.emplace_back(std::nullopt);
          else a.items.emplace_back(signed_int());
        } while (accept(","));
      }
      expect("]");
      return a;
    }
    if (t.kind == Tok::Ident && (t.text == "true" || t.text == "false")) {
      take();
      return t.text == "true";
    }
    if (is_word("tape")) {
      take();
      expect("(");
      if (peek().kind != Tok::String) fail("a string of tape symbols");
      const std::string symbols = take().text;
      Tape tape;
      std::int64_t pos = 0;
      for (char c : symbols) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c != tape.blank) tape.cells[pos] = c;
        ++pos;
      }
      expect(",");
      tape.head = signed_int();
      if (accept(",")) {
        const Token d = ident("a direction L, R or d");
        auto dir = d.text.size() == 1 ? direction_from_char(d.text[0]) : std::nullopt;
        if (!dir) throw ParseError(d.loc, "direction must be L, R or d");
        tape.dir = *dir;
      }
      expect(")");
      return tape;
    }
    fail("a literal");
  }

  // -- domains ----------------------------------------------------------------

  DomainSpec domain_block() {
    DomainSpec dom;
    expect("{");
    while (!is("}") && !at_end()) {
      const Token first = ident("a variable name");
      if (is("[") && is("]", 1)) {
        take();
        take();
        expect_word("in");
        VarDomain vd;
        vd.name = first.text;
        vd.kind = VarDomain::Kind::Elements;
        vd.loc = first.loc;
        range(vd);
        dom.vars.push_back(vd);
        expect(";");
        continue;
      }
      if (accept("=")) {
        VarDomain vd;
        vd.name = first.text;
        vd.kind = VarDomain::Kind::Fixed;
        vd.fixed = literal();
        vd.loc = first.loc;
        dom.vars.push_back(vd);
        expect(";");
        continue;
      }
      std::vector<Token> names{first};
      while (accept(",")) names.push_back(ident("a variable name"));
      expect_word("in");
      VarDomain vd;
      if (is_word("len")) {
        take();
        vd.kind = VarDomain::Kind::Stream;
        vd.len_lo = signed_int();
        expect("..");
        vd.len_hi = signed_int();
        expect_word("of");
        vd.lo = signed_int();
        expect("..");
        vd.hi = signed_int();
        if (is_word("sorted")) {
          take();
          vd.sorted = true;
        }
      } else {
        vd.kind = VarDomain::Kind::Range;
        range(vd);
      }
      expect(";");
      for (const auto& n : names) {
        vd.name = n.text;
        vd.loc = n.loc;
        dom.vars.push_back(vd);
      }
    }
    expect("}");
    accept(";");
    return dom;
  }

  void range(VarDomain& vd) {
    vd.lo = signed_int();
    expect("..");
    vd.hi = signed_int();
    if (accept("|")) {
      expect("?");
      vd.allow_unset = true;
    }
  }

  // -- program ----------------------------------------------------------------

  struct Raw {
    std::string name;
    SourceLoc header;
    std::vector<VarDecl> decls;
    std::vector<std::pair<std::string, SourceLoc>> states;
    std::optional<std::pair<std::string, SourceLoc>> start, halt;
    std::vector<RawCondition> conds;
    std::vector<RawCell> cells;
    std::optional<DomainSpec> domain, samples;
  };

  Raw program(Diagnostics& diags) {
    Raw raw;
    raw.header = peek().loc;
    expect_word("dsm");
    raw.name = ident("the machine name").text;
    expect("{");
    while (!is("}") && !at_end()) {
      const std::size_t before = pos_;
      try {
        top_item(raw);
      } catch (const ParseError& e) {
        diags.push_back({Severity::Error, e.loc(), e.what()});
        if (pos_ == before) take();
        recover();
      }
    }
    expect("}");
    if (!at_end()) fail("end of input");
    return raw;
  }

  void top_item(Raw& raw) {
    const Token kw = ident("a declaration");
    const std::string& k = kw.text;
    if (k == "param" || k == "var") {
      std::vector<Token> names{ident("a variable name")};
      while (accept(",")) names.push_back(ident("a variable name"));
      expect(":");
      const Token type = ident("a type");
      VarDecl decl;
      decl.param = k == "param";
      if (type.text == "int") {
        decl.kind = VarKind::Int;
        if (accept("[")) {
          decl.kind = VarKind::Array;
          decl.length = expr();
          expect("]");
        }
      } else if (type.text == "bool") {
        decl.kind = VarKind::Bool;
      } else if (type.text == "sym") {
        decl.kind = VarKind::Sym;
      } else if (type.text == "stream") {
        decl.kind = VarKind::Stream;
      } else if (type.text == "text") {
        decl.kind = VarKind::Text;
      } else if (type.text == "tape") {
        decl.kind = VarKind::Tape;
      } else {
        throw ParseError(type.loc, "unknown type '" + type.text + "'");
      }
      expect(";");
      for (const auto& n : names) {
        decl.name = n.text;
        decl.loc = n.loc;
        raw.decls.push_back(decl);
      }
    } else if (k == "states") {
      do {
        const Token s = ident("a control state");
        raw.states.emplace_back(s.text, s.loc);
      } while (accept(","));
      expect(";");
    } else if (k == "start" || k == "halt") {
      const Token s = ident("a control state");
      expect(";");
      (k == "start" ? raw.start : raw.halt) = std::make_pair(s.text, s.loc);
    } else if (k == "cond") {
      const Token s = ident("a control state");
      expect(":");
      Condition c;
      c.state = s.text;
      c.loc = s.loc;
      if (peek().kind == Tok::String) {
        c.label = take().text;
        expect_word("is");
      }
      c.expr = expr();
      expect(";");
      raw.conds.push_back({std::move(c), s.loc});
    } else if (k == "from") {
      const Token from = ident("a control state");
      expect_word("to");
      const Token to = ident("a control state");
      expect(":");
      auto rs = rule_list();
      expect(";");
      raw.cells.push_back({from.text, to.text, kw.loc, std::move(rs)});
    } else if (k == "domain") {
      raw.domain = domain_block();
    } else if (k == "samples") {
      raw.samples = domain_block();
    } else {
      throw ParseError(kw.loc, "unknown declaration '" + k + "'");
    }
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void resolve_domain(DomainSpec& dom, const Schema& schema, Diagnostics& diags) {
  for (auto& vd : dom.vars) {
    auto slot = schema.slot_of(vd.name);
    if (!slot) {
      diags.push_back({Severity::Error, vd.loc, "domain names undeclared variable '" + vd.name + "'"});
      continue;
    }
    const auto kind = schema[*slot].kind;
    try {
      switch (vd.kind) {
        case VarDomain::Kind::Fixed: vd.fixed = literal_for(kind, *vd.fixed, vd.name); break;
        case VarDomain::Kind::Range:
          if (kind != VarKind::Int && kind != VarKind::Bool && kind != VarKind::Sym)
            throw EvalError(vd.loc, "range given for " + std::string(kind_name(kind)) + " variable '" +
                                        vd.name + "'");
          break;
        case VarDomain::Kind::Elements:
          if (kind != VarKind::Array) throw EvalError(vd.loc, "'" + vd.name + "' is not an array");
          break;
        case VarDomain::Kind::Stream:
          if (kind != VarKind::Stream && kind != VarKind::Text)
            throw EvalError(vd.loc, "'" + vd.name + "' is not a stream");
          break;
      }
    } catch (const EvalError& e) {
      diags.push_back({Severity::Error, vd.loc, e.what()});
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Public entry points

ParseResult parse_program(std::string_view text) {
  ParseResult res;
  Parser::Raw raw;
  try {
    Parser p(lex(text));
    raw = p.program(res.diagnostics);
  } catch (const ParseError& e) {
    res.diagnostics.push_back({Severity::Error, e.loc(), e.what()});
    return res;
  }
  if (has_errors(res.diagnostics)) return res;

  Program prog;
  CodeMatrix& m = prog.matrix;
  m.name = raw.name;

  Schema schema;
  for (auto& d : raw.decls) {
    if (schema.slot_of(d.name)) {
      res.diagnostics.push_back({Severity::Error, d.loc, "variable '" + d.name + "' is declared twice"});
      continue;
    }
    schema.add(d);
  }
  // Array lengths may only mention scalars declared before them.
  std::vector<VarDecl> decls = schema.vars();
  for (auto& d : decls)
    if (d.length) resolve(*d.length, schema, res.diagnostics);
  m.schema = Schema(std::move(decls));

  if (raw.states.empty())
    res.diagnostics.push_back({Severity::Error, raw.header, "missing 'states' declaration"});
  std::set<std::string> seen;
  for (const auto& [s, loc] : raw.states) {
    if (!seen.insert(s).second)
      res.diagnostics.push_back({Severity::Error, loc, "duplicate control state '" + s + "'"});
    else
      m.states.push_back(s);
  }
  if (!raw.start) res.diagnostics.push_back({Severity::Error, raw.header, "missing 'start' declaration"});
  if (!raw.halt) res.diagnostics.push_back({Severity::Error, raw.header, "missing 'halt' declaration"});
  if (raw.start) m.start = raw.start->first;
  if (raw.halt) m.halt = raw.halt->first;

  for (auto& rc : raw.cells) {
    for (auto& r : rc.rules) resolve(r, m.schema, res.diagnostics);
    auto it = std::find_if(m.cells.begin(), m.cells.end(),
                           [&](const Cell& c) { return c.from == rc.from && c.to == rc.to; });
    if (it == m.cells.end()) {
      m.cells.push_back({rc.from, rc.to, std::move(rc.rules), rc.loc});
    } else {
      for (auto& r : rc.rules) it->rules.push_back(std::move(r));
    }
  }

  for (const auto& d : validate(m)) {
    if (d.message.find("duplicate control state") != std::string::npos) continue;
    if (d.message.find("undeclared variable") != std::string::npos) continue;
    Diagnostic located = d;
    if (located.loc.line == 0) {
      if (raw.start && d.message.rfind("start", 0) == 0) located.loc = raw.start->second;
      else if (raw.halt && d.message.rfind("halt", 0) == 0) located.loc = raw.halt->second;
      else if (raw.halt) located.loc = raw.halt->second;
      else located.loc = raw.header;
    }
    if (raw.start && raw.halt && d.message.find("start and halt") != std::string::npos)
      located.loc = raw.halt->second;
    res.diagnostics.push_back(std::move(located));
  }

  if (!raw.conds.empty()) {
    ConditionVector v;
    for (auto& rc : raw.conds) {
      if (!m.state_index(rc.cond.state)) {
        res.diagnostics.push_back(
            {Severity::Error, rc.loc, "condition for unknown control state '" + rc.cond.state + "'"});
        continue;
      }
      if (v.find(rc.cond.state)) {
        res.diagnostics.push_back(
            {Severity::Error, rc.loc, "second condition for control state '" + rc.cond.state + "'"});
        continue;
      }
      resolve(rc.cond.expr, m.schema, res.diagnostics);
      v.entries[rc.cond.state] = std::move(rc.cond);
    }
    for (const auto& k : missing_conditions(v, m))
      res.diagnostics.push_back({Severity::Error, raw.conds.front().loc, "no condition for control state '" + k + "'"});
    prog.conditions = std::move(v);
  }
  if (raw.domain) {
    resolve_domain(*raw.domain, m.schema, res.diagnostics);
    prog.domain = std::move(raw.domain);
  }
  if (raw.samples) {
    resolve_domain(*raw.samples, m.schema, res.diagnostics);
    prog.samples = std::move(raw.samples);
  }

  std::stable_sort(res.diagnostics.begin(), res.diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.loc.line, a.loc.column) < std::tie(b.loc.line, b.loc.column);
  });
  if (!has_errors(res.diagnostics)) res.program = std::move(prog);
  return res;
}

Expr parse_expr(std::string_view text) {
  Parser p(lex(text));
  Expr e = p.expr();
  if (!p.at_end()) p.fail("end of expression");
  return e;
}

RelationExpr parse_rule(std::string_view text) {
  Parser p(lex(text));
  RelationExpr r = p.rules();
  if (!p.at_end()) p.fail("end of rule");
  return r;
}

Value parse_literal(std::string_view text) {
  Parser p(lex(text));
  Value v = p.literal();
  if (!p.at_end()) p.fail("end of literal");
  return v;
}

Value literal_for(VarKind kind, const Value& literal, const std::string& name) {
  if ((kind == VarKind::Stream || kind == VarKind::Text) && std::holds_alternative<IntArray>(literal)) {
    Stream s;
    for (const auto& item : std::get<IntArray>(literal).items) {
      if (!item) throw EvalError({}, "stream '" + name + "' cannot hold unset elements");
      s.items.push_back(*item);
    }
    return s;
  }
  return coerce_to(kind, literal, name, {});
}

std::string format_literal(const Value& v, VarKind kind) {
  if (const auto* t = std::get_if<Tape>(&v)) {
    std::string symbols;
    if (!t->cells.empty()) {
      const auto lo = std::min<std::int64_t>(0, t->cells.begin()->first);
      for (auto i = lo; i <= t->cells.rbegin()->first; ++i) {
        auto it = t->cells.find(i);
        if (!symbols.empty()) symbols += ' ';
        symbols += it == t->cells.end() ? t->blank : it->second;
      }
    }
    return "tape(\"" + symbols + "\", " + std::to_string(t->head) + ", " +
           static_cast<char>(t->dir) + ")";
  }
  if (const auto* s = std::get_if<Stream>(&v)) {
    if (kind == VarKind::Text) {
      std::string out = "\"";
      for (auto c : s->items) out += static_cast<char>(c);
      return out + "\"";
    }
    std::string out = "[";
    for (std::size_t i = 0; i < s->items.size(); ++i) out += (i ? "," : "") + std::to_string(s->items[i]);
    return out + "]";
  }
  if (const auto* a = std::get_if<IntArray>(&v)) {
    std::string out = "[";
    for (std::size_t i = 0; i < a->items.size(); ++i)
      out += (i ? "," : "") + (a->items[i] ? std::to_string(*a->items[i]) : std::string("?"));
    return out + "]";
  }
  if (const auto* c = std::get_if<Sym>(&v)) return std::string("'") + c->c + "'";
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return format_value(v, kind);
}

std::map<std::string, Value> parse_bindings(const std::vector<std::string>& items, const Schema& schema) {
  std::map<std::string, Value> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw EvalError({}, "binding '" + item + "' must look like name=value");
    std::string name = item.substr(0, eq);
    name.erase(std::remove_if(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c); }),
               name.end());
    auto slot = schema.slot_of(name);
    if (!slot) throw EvalError({}, "no variable named '" + name + "'");
    Value lit;
    try {
      lit = parse_literal(item.substr(eq + 1));
    } catch (const ParseError& e) {
      throw EvalError({}, "in binding for '" + name + "': " + e.what());
    }
    out[name] = literal_for(schema[*slot].kind, lit, name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string type_text(const VarDecl& d) {
  if (d.kind == VarKind::Array) return "int[" + (d.length ? to_source(*d.length) : std::string()) + "]";
  return kind_name(d.kind);
}

std::string range_text(const VarDomain& vd) {
  std::string s = std::to_string(vd.lo) + ".." + std::to_string(vd.hi);
  if (vd.allow_unset) s += " | ?";
  return s;
}

void render_domain(std::ostringstream& os, const char* keyword, const DomainSpec& dom, const Schema& schema) {
  os << "\n  " << keyword << " {\n";
  for (const auto& vd : dom.vars) {
    os << "    ";
    switch (vd.kind) {
      case VarDomain::Kind::Range: os << vd.name << " in " << range_text(vd); break;
      case VarDomain::Kind::Elements: os << vd.name << "[] in " << range_text(vd); break;
      case VarDomain::Kind::Stream:
        os << vd.name << " in len " << vd.len_lo << ".." << vd.len_hi << " of " << vd.lo << ".." << vd.hi;
        if (vd.sorted) os << " sorted";
        break;
      case VarDomain::Kind::Fixed: {
        auto slot = schema.slot_of(vd.name);
        os << vd.name << " = " << format_literal(*vd.fixed, slot ? schema[*slot].kind : VarKind::Int);
        break;
      }
    }
    os << ";\n";
  }
  os << "  }\n";
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::string render_source(const Program& p) {
  const CodeMatrix& m = p.matrix;
  std::ostringstream os;
  os << "dsm " << m.name << " {\n";
  for (const auto& d : m.schema.vars())
    os << "  " << (d.param ? "param " : "var ") << d.name << ": " << type_text(d) << ";\n";
  os << "  states ";
  for (std::size_t i = 0; i < m.states.size(); ++i) os << (i ? ", " : "") << m.states[i];
  os << ";\n  start " << m.start << ";\n  halt " << m.halt << ";\n";

  if (p.conditions) {
    os << '\n';
    for (const auto& k : m.states) {
      const Condition* c = p.conditions->find(k);
      if (!c) continue;
      os << "  cond " << k << ": ";
      if (!c->label.empty()) os << quote(c->label) << " is ";
      os << to_source(c->expr) << ";\n";
    }
  }
  if (!m.cells.empty()) os << '\n';
  for (const auto& c : m.cells) {
    os << "  from " << c.from << " to " << c.to << ": ";
    for (std::size_t i = 0; i < c.rules.size(); ++i) {
      if (i) os << "\n    | ";
      const auto& r = c.rules[i];
      os << (r.kind == RelationExpr::Kind::Union ? "(" + to_source(r) + ")" : to_source(r));
    }
    os << ";\n";
  }
  if (p.domain) render_domain(os, "domain", *p.domain, m.schema);
  if (p.samples) render_domain(os, "samples", *p.samples, m.schema);
  os << "}\n";
  return os.str();
}

std::string render_tabular(const CodeMatrix& m, const ConditionVector* v) {
  std::vector<std::string> cols, rows;
  for (auto it = m.states.rbegin(); it != m.states.rend(); ++it)
    if (*it != m.halt && *it != m.start) cols.push_back(*it);
  cols.push_back(m.start);
  rows.push_back(m.halt);
  for (const auto& k : m.states)
    if (k != m.halt && k != m.start) rows.push_back(k);

  auto lines_of = [&](const std::string& from, const std::string& to) {
    std::vector<std::string> out;
    if (const Cell* c = m.find_cell(from, to))
      for (const auto& r : c->rules) out.push_back(to_source(r));
    return out;
  };
  auto label_of = [&](const std::string& k) {
    if (!v) return k;
    const Condition* c = v->find(k);
    if (!c) return k;
    return k + ": " + (c->label.empty() ? to_source(c->expr) : c->label);
  };

  std::size_t label_w = 0;
  for (const auto& r : rows) label_w = std::max(label_w, label_of(r).size());
  std::vector<std::size_t> widths;
  for (const auto& c : cols) {
    std::size_t w = c.size();
    for (const auto& r : rows)
      for (const auto& l : lines_of(c, r)) w = std::max(w, l.size());
    widths.push_back(w);
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };
  auto rstrip = [](std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
  };

  std::ostringstream os;
  std::string header = pad("", label_w);
  for (std::size_t i = 0; i < cols.size(); ++i) header += " | " + pad(cols[i], widths[i]);
  os << rstrip(header) << '\n';
  std::string rule = std::string(label_w, '-');
  for (auto w : widths) rule += "-+-" + std::string(w, '-');
  os << rule << '\n';
  for (const auto& r : rows) {
    std::vector<std::vector<std::string>> cells;
    std::size_t height = 1;
    for (const auto& c : cols) {
      cells.push_back(lines_of(c, r));
      height = std::max(height, cells.back().size());
    }
    for (std::size_t line = 0; line < height; ++line) {
      std::string text = pad(line == 0 ? label_of(r) : "", label_w);
      for (std::size_t i = 0; i < cols.size(); ++i)
        text += " | " + pad(line < cells[i].size() ? cells[i][line] : "", widths[i]);
      os << rstrip(text) << '\n';
    }
    os << rule << '\n';
  }
  return os.str();
}

}  // namespace mxc
