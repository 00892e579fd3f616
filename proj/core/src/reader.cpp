#include "ilpbench/reader.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <unordered_map>

namespace ilpbench {

ParseError::ParseError(Kind kind, SourcePos pos, std::string token, std::string message)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                         message + (token.empty() ? std::string() : " near '" + token + "'")),
      kind_(kind),
      pos_(pos),
      token_(std::move(token)),
      message_(std::move(message)) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { kName, kVar, kNumber, kString, kPunct, kEnd, kEof };

struct Token {
  Tok type = Tok::kEof;
  std::string text;
  SourcePos pos;
  bool quoted = false;
  bool functional = false;  // name immediately followed by '('
};

constexpr std::string_view kSymbolChars = "+-*/\\^<>=~:.?@#&$";

bool is_symbol_char(char c) { return kSymbolChars.find(c) != std::string_view::npos; }
bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_layout(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_layout();
      Token tok = next();
      const bool eof = tok.type == Tok::kEof;
      out.push_back(std::move(tok));
      if (eof) break;
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < text_.size() ? text_[i_ + ahead] : '\0';
  }
  bool at_end(std::size_t ahead = 0) const { return i_ + ahead >= text_.size(); }

  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
    pos_.offset = i_;
  }

  [[noreturn]] void fail(SourcePos at, std::string token, std::string message) const {
    throw ParseError(ParseError::Kind::kSyntax, at, std::move(token), std::move(message));
  }

  void skip_layout() {
    for (;;) {
      if (at_end()) return;
      const char c = peek();
      if (is_layout(c)) {
        advance();
      } else if (c == '%') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const SourcePos start = pos_;
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (at_end()) fail(start, "/*", "unterminated block comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  Token make(Tok type, SourcePos at, std::size_t begin) const {
    Token tok;
    tok.type = type;
    tok.pos = at;
    tok.text = std::string(text_.substr(begin, i_ - begin));
    return tok;
  }

  std::string quoted_body(char quote, SourcePos start) {
    std::string out;
    advance();  // opening quote
    for (;;) {
      if (at_end()) fail(start, std::string(1, quote), "unterminated quoted text");
      const char c = peek();
      if (c == quote) {
        if (peek(1) == quote) {
          out += quote;
          advance();
          advance();
          continue;
        }
        advance();
        return out;
      }
      if (c == '\\') {
        advance();
        if (at_end()) fail(start, std::string(1, quote), "unterminated quoted text");
        const char e = peek();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '\\': out += '\\'; break;
          case '\'': out += '\''; break;
          case '"': out += '"'; break;
          case '`': out += '`'; break;
          case '\n': break;
          default: fail(pos_, std::string(1, e), "unknown escape sequence");
        }
        advance();
        continue;
      }
      out += c;
      advance();
    }
  }

  Token next() {
    const SourcePos at = pos_;
    const std::size_t begin = i_;
    if (at_end()) return make(Tok::kEof, at, begin);
    const char c = peek();

    if (c >= 'a' && c <= 'z') {
      while (!at_end() && is_alnum(peek())) advance();
      Token tok = make(Tok::kName, at, begin);
      tok.functional = peek() == '(';
      return tok;
    }
    if ((c >= 'A' && c <= 'Z') || c == '_') {
      while (!at_end() && is_alnum(peek())) advance();
      return make(Tok::kVar, at, begin);
    }
    if (is_digit(c)) {
      if (c == '0' && peek(1) == '\'' && !at_end(2)) {
        advance();
        advance();
        advance();
        return make(Tok::kNumber, at, begin);
      }
      while (!at_end() && is_digit(peek())) advance();
      if (peek() == '.' && is_digit(peek(1))) {
        advance();
        while (!at_end() && is_digit(peek())) advance();
      }
      if ((peek() == 'e' || peek() == 'E') &&
          (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
        advance();
        if (peek() == '+' || peek() == '-') advance();
        while (!at_end() && is_digit(peek())) advance();
      }
      return make(Tok::kNumber, at, begin);
    }
    if (c == '\'') {
      Token tok;
      tok.type = Tok::kName;
      tok.pos = at;
      tok.text = quoted_body('\'', at);
      tok.quoted = true;
      tok.functional = peek() == '(';
      return tok;
    }
    if (c == '"' || c == '`') {
      Token tok;
      tok.type = Tok::kString;
      tok.pos = at;
      tok.text = quoted_body(c, at);
      return tok;
    }
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}' || c == ',' ||
        c == '|') {
      advance();
      if (c == '|' && peek() == '|') {
        advance();
        Token tok = make(Tok::kName, at, begin);
        tok.functional = peek() == '(';
        return tok;
      }
      return make(Tok::kPunct, at, begin);
    }
    if (c == '!' || c == ';') {
      advance();
      Token tok = make(Tok::kName, at, begin);
      tok.functional = peek() == '(';
      return tok;
    }
    if (c == '.' && (at_end(1) || is_layout(peek(1)) || peek(1) == '%')) {
      advance();
      return make(Tok::kEnd, at, begin);
    }
    if (is_symbol_char(c)) {
      while (!at_end() && is_symbol_char(peek())) advance();
      Token tok = make(Tok::kName, at, begin);
      tok.functional = peek() == '(';
      return tok;
    }
    // Unknown byte (including non-ASCII): report it as-is.
    std::size_t len = 1;
    const auto uc = static_cast<unsigned char>(c);
    if (uc >= 0xC0) len = uc >= 0xF0 ? 4 : uc >= 0xE0 ? 3 : 2;
    len = std::min(len, text_.size() - i_);
    fail(at, std::string(text_.substr(i_, len)), "unexpected character");
  }

  std::string_view text_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

// ---------------------------------------------------------------------------
// Operator table

enum class OpType { kXfx, kXfy, kYfx, kFy, kFx };

struct OpDef {
  int priority;
  OpType type;
};

const std::unordered_map<std::string, OpDef>& infix_ops() {
  static const std::unordered_map<std::string, OpDef> table = [] {
    std::unordered_map<std::string, OpDef> t;
    t[":-"] = {1200, OpType::kXfx};
    t["-->"] = {1200, OpType::kXfx};
    t[";"] = {1100, OpType::kXfy};
    t["|"] = {1100, OpType::kXfy};
    t["->"] = {1050, OpType::kXfy};
    t["*->"] = {1050, OpType::kXfy};
    t[","] = {1000, OpType::kXfy};
    for (const char* op : {"=", "\\=", "==", "\\==", "@<", "@>", "@=<", "@>=", "=..", "is", "=:=",
                           "=\\=", "<", ">", "=<", ">=", ">:<", ":<", "as"}) {
      t[op] = {700, OpType::kXfx};
    }
    for (const char* op : {"+", "-", "/\\", "\\/", "xor"}) t[op] = {500, OpType::kYfx};
    for (const char* op : {"*", "/", "//", "mod", "rem", "<<", ">>", "div", "rdiv", "divmod"}) {
      t[op] = {400, OpType::kYfx};
    }
    t["**"] = {200, OpType::kXfx};
    t["^"] = {200, OpType::kXfy};
    t[":"] = {200, OpType::kXfy};
    return t;
  }();
  return table;
}

const std::unordered_map<std::string, OpDef>& prefix_ops() {
  static const std::unordered_map<std::string, OpDef> table = {
      {":-", {1200, OpType::kFx}},           {"?-", {1200, OpType::kFx}},
      {"dynamic", {1150, OpType::kFx}},      {"discontiguous", {1150, OpType::kFx}},
      {"initialization", {1150, OpType::kFx}}, {"table", {1150, OpType::kFx}},
      {"\\+", {900, OpType::kFy}},           {"not", {900, OpType::kFy}},
      {"-", {200, OpType::kFy}},             {"+", {200, OpType::kFy}},
      {"\\", {200, OpType::kFy}},
  };
  return table;
}

// ---------------------------------------------------------------------------
// Term reader

class TermReader {
 public:
  explicit TermReader(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<SyntaxTerm> read_all() {
    std::vector<SyntaxTerm> out;
    while (peek().type != Tok::kEof) {
      auto [term, prec] = parse(1200);
      (void)prec;
      const Token& t = peek();
      if (t.type != Tok::kEnd) {
        if (t.type == Tok::kEof) fail(t, "clause is missing its terminating '.'");
        fail(t, "operator expected");
      }
      ++i_;
      out.push_back(std::move(term));
    }
    return out;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  const Token& take() {
    const Token& t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    return t;
  }

  [[noreturn]] static void fail(const Token& at, std::string message) {
    std::string text = at.type == Tok::kEof ? "<end of input>" : at.text;
    throw ParseError(ParseError::Kind::kSyntax, at.pos, std::move(text), std::move(message));
  }

  static bool is_punct(const Token& t, char c) {
    return t.type == Tok::kPunct && t.text.size() == 1 && t.text[0] == c;
  }

  void expect_punct(char c) {
    if (!is_punct(peek(), c)) fail(peek(), std::string("expected '") + c + "'");
    take();
  }

  static bool starts_term(const Token& t) {
    switch (t.type) {
      case Tok::kName:
      case Tok::kVar:
      case Tok::kNumber:
      case Tok::kString:
        return true;
      case Tok::kPunct:
        return t.text == "(" || t.text == "[" || t.text == "{";
      default:
        return false;
    }
  }

  std::optional<std::pair<std::string, OpDef>> infix_at(const Token& t) const {
    std::string name;
    if (t.type == Tok::kName && !t.quoted) {
      name = t.text;
    } else if (t.type == Tok::kPunct && (t.text == "," || t.text == "|")) {
      name = t.text;
    } else {
      return std::nullopt;
    }
    const auto it = infix_ops().find(name);
    if (it == infix_ops().end()) return std::nullopt;
    return std::make_pair(name, it->second);
  }

  static SyntaxTerm leaf(SyntaxTerm::Kind kind, const Token& t) {
    SyntaxTerm term;
    term.kind = kind;
    term.name = t.text;
    term.pos = t.pos;
    term.quoted = t.quoted;
    return term;
  }

  std::vector<SyntaxTerm> arg_list(char close) {
    std::vector<SyntaxTerm> args;
    for (;;) {
      args.push_back(parse(999).first);
      if (is_punct(peek(), ',')) {
        take();
        continue;
      }
      expect_punct(close);
      return args;
    }
  }

  SyntaxTerm list_term(const Token& open) {
    if (is_punct(peek(), ']')) {
      take();
      SyntaxTerm nil = leaf(SyntaxTerm::Kind::kAtom, open);
      nil.name = "[]";
      return nil;
    }
    std::vector<SyntaxTerm> items;
    std::optional<SyntaxTerm> tail;
    for (;;) {
      items.push_back(parse(999).first);
      if (is_punct(peek(), ',')) {
        take();
        continue;
      }
      if (is_punct(peek(), '|')) {
        take();
        tail = parse(999).first;
      }
      expect_punct(']');
      break;
    }
    SyntaxTerm acc;
    if (tail) {
      acc = std::move(*tail);
    } else {
      acc = leaf(SyntaxTerm::Kind::kAtom, open);
      acc.name = "[]";
    }
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
      SyntaxTerm cell;
      cell.kind = SyntaxTerm::Kind::kCompound;
      cell.name = "[|]";
      cell.pos = it->pos;
      cell.args.push_back(std::move(*it));
      cell.args.push_back(std::move(acc));
      acc = std::move(cell);
    }
    acc.pos = open.pos;
    return acc;
  }

  std::pair<SyntaxTerm, int> primary(int max_prec) {
    const Token tok = take();
    switch (tok.type) {
      case Tok::kNumber:
        return {leaf(SyntaxTerm::Kind::kNumber, tok), 0};
      case Tok::kVar:
        return {leaf(SyntaxTerm::Kind::kVariable, tok), 0};
      case Tok::kString:
        return {leaf(SyntaxTerm::Kind::kString, tok), 0};
      case Tok::kPunct:
        if (tok.text == "(") {
          SyntaxTerm inner = parse(1200).first;
          expect_punct(')');
          return {std::move(inner), 0};
        }
        if (tok.text == "[") return {list_term(tok), 0};
        if (tok.text == "{") {
          SyntaxTerm braces = leaf(SyntaxTerm::Kind::kAtom, tok);
          braces.name = "{}";
          if (is_punct(peek(), '}')) {
            take();
            return {std::move(braces), 0};
          }
          braces.kind = SyntaxTerm::Kind::kCompound;
          braces.args.push_back(parse(1200).first);
          expect_punct('}');
          return {std::move(braces), 0};
        }
        fail(tok, "unexpected token");
      case Tok::kName:
        return name_term(tok, max_prec);
      case Tok::kEnd:
        fail(tok, "unexpected end of clause");
      case Tok::kEof:
        fail(tok, "unexpected end of input");
    }
    fail(tok, "unexpected token");
  }

  std::pair<SyntaxTerm, int> name_term(const Token& tok, int max_prec) {
    if (tok.functional) {
      take();  // '('
      SyntaxTerm term = leaf(SyntaxTerm::Kind::kCompound, tok);
      term.args = arg_list(')');
      return {std::move(term), 0};
    }
    if (!tok.quoted) {
      const auto it = prefix_ops().find(tok.text);
      if (it != prefix_ops().end()) {
        const Token& next = peek();
        if ((tok.text == "-" || tok.text == "+") && next.type == Tok::kNumber &&
            next.pos.offset == tok.pos.offset + 1) {
          SyntaxTerm num = leaf(SyntaxTerm::Kind::kNumber, take());
          if (tok.text == "-") num.name = "-" + num.name;
          num.pos = tok.pos;
          return {std::move(num), 0};
        }
        const bool operand_follows =
            starts_term(next) && !(infix_at(next) && !prefix_ops().contains(next.text) &&
                                   !(next.type == Tok::kName && next.functional));
        if (operand_follows) {
          const OpDef op = it->second;
          if (op.priority > max_prec) fail(tok, "operator priority clash");
          const int arg_max = op.type == OpType::kFy ? op.priority : op.priority - 1;
          SyntaxTerm term = leaf(SyntaxTerm::Kind::kCompound, tok);
          term.op_notation = true;
          term.args.push_back(parse(arg_max).first);
          return {std::move(term), op.priority};
        }
      }
    }
    return {leaf(SyntaxTerm::Kind::kAtom, tok), 0};
  }

  std::pair<SyntaxTerm, int> parse(int max_prec) {
    if (++depth_ > kMaxDepth) fail(peek(), "term nesting too deep");
    auto [left, left_prec] = primary(max_prec);
    for (;;) {
      const Token& t = peek();
      const auto op = infix_at(t);
      if (!op) break;
      const auto& [name, def] = *op;
      if (def.priority > max_prec) break;
      const int left_max = def.type == OpType::kYfx ? def.priority : def.priority - 1;
      if (left_prec > left_max) break;
      // Nested `:-` is read leniently (right-associative) so that garbled
      // rules still form one term.
      const int right_max =
          (def.type == OpType::kXfy || name == ":-") ? def.priority : def.priority - 1;
      const Token op_tok = take();
      SyntaxTerm term;
      term.kind = SyntaxTerm::Kind::kCompound;
      term.name = name == "|" ? ";" : name;
      term.pos = op_tok.pos;
      term.op_notation = true;
      term.args.push_back(std::move(left));
      term.args.push_back(parse(right_max).first);
      left = std::move(term);
      left_prec = def.priority;
    }
    --depth_;
    return {std::move(left), left_prec};
  }

  static constexpr int kMaxDepth = 2000;

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  int depth_ = 0;
};

bool is_directive(const SyntaxTerm& t) {
  return t.op_notation && (t.is(":-", 1) || t.is("?-", 1));
}

const SyntaxTerm* clause_head(const SyntaxTerm& t) {
  if (t.op_notation && (t.is(":-", 2) || t.is("-->", 2))) return &t.args[0];
  return &t;
}

void check_head(const SyntaxTerm& term) {
  if (is_directive(term)) return;
  const SyntaxTerm& head = *clause_head(term);
  const bool named = head.quoted || (!head.name.empty() && head.name[0] >= 'a' && head.name[0] <= 'z');
  const bool ok = head.is_callable() && !head.op_notation && named;
  if (!ok) {
    throw ParseError(ParseError::Kind::kSyntax, head.pos, render_syntax(head),
                     "clause head is not a predicate");
  }
}

// ---------------------------------------------------------------------------
// Horn fragment conversion

const std::set<std::string, std::less<>>& builtin_names() {
  static const std::set<std::string, std::less<>> names = {
      "not",     "call",    "dif",     "findall", "bagof",   "setof",  "forall", "assert",
      "asserta", "assertz", "retract", "member",  "memberchk", "append", "length", "write",
      "writeln", "print",   "format",  "nl",      "is_list", "atom",   "number", "var",
      "nonvar",  "between", "succ",    "msort",   "sort",    "nth0",   "nth1",   "once",
      "ignore",  "catch",   "throw",   "halt",    "true",    "fail",   "false",  "!",
      "repeat",  "atomic",  "ground",  "functor", "arg",     "copy_term", "tab", "aggregate_all"};
  return names;
}

std::string describe_construct(const SyntaxTerm& goal) {
  const std::string& n = goal.name;
  if (n == "\\+" || n == "not") return "negation as failure is not supported";
  if (n == ";") return "disjunction is not supported";
  if (n == "->" || n == "*->") return "if-then-else is not supported";
  if (n == "!") return "cut is not supported";
  if (n == ":-") return "nested clause is not supported";
  if (goal.op_notation) {
    const auto it = infix_ops().find(n);
    if (it != infix_ops().end() && it->second.priority == 700) {
      return "comparison or unification built-in is not supported";
    }
    return "operator term '" + n + "' is not a goal in the supported fragment";
  }
  return "built-in predicate '" + n + "' is not supported";
}

class ClauseConverter {
 public:
  explicit ClauseConverter(const SyntaxTerm& clause) { collect_vars(clause); }

  Clause convert(const SyntaxTerm& t) {
    if (is_directive(t)) unsupported(t, t.name, "directives are not supported");
    if (t.op_notation && t.is("-->", 2)) unsupported(t, t.name, "grammar rules are not supported");
    Clause clause;
    if (t.op_notation && t.is(":-", 2)) {
      clause.head = atom(t.args[0]);
      std::vector<const SyntaxTerm*> goals;
      flatten(t.args[1], goals);
      for (const auto* g : goals) clause.body.push_back(goal(*g));
    } else {
      clause.head = atom(t);
    }
    return clause;
  }

 private:
  [[noreturn]] static void unsupported(const SyntaxTerm& at, std::string token, std::string msg) {
    throw ParseError(ParseError::Kind::kUnsupported, at.pos, std::move(token), std::move(msg));
  }

  void collect_vars(const SyntaxTerm& t) {
    if (t.kind == SyntaxTerm::Kind::kVariable) used_.insert(t.name);
    for (const auto& a : t.args) collect_vars(a);
  }

  std::string fresh_var() {
    for (;;) {
      std::string name = "_G" + std::to_string(++anon_);
      if (!used_.contains(name)) return name;
    }
  }

  static void flatten(const SyntaxTerm& t, std::vector<const SyntaxTerm*>& out) {
    if (t.op_notation && t.is(",", 2)) {
      flatten(t.args[0], out);
      flatten(t.args[1], out);
    } else {
      out.push_back(&t);
    }
  }

  Term term(const SyntaxTerm& t) {
    switch (t.kind) {
      case SyntaxTerm::Kind::kVariable:
        return Term::variable(t.name == "_" ? fresh_var() : t.name);
      case SyntaxTerm::Kind::kAtom:
        if (is_constant_name(t.name)) return Term::constant(t.name);
        unsupported(t, t.name, "constant name outside [a-z][A-Za-z0-9_]* is not supported");
      case SyntaxTerm::Kind::kNumber:
        unsupported(t, t.name, "numeric constants are not supported");
      case SyntaxTerm::Kind::kString:
        unsupported(t, t.name, "strings are not supported");
      case SyntaxTerm::Kind::kCompound:
        break;
    }
    unsupported(t, render_syntax(t), "function symbols are not supported");
  }

  Atom atom(const SyntaxTerm& t) {
    if (t.kind == SyntaxTerm::Kind::kAtom) {
      unsupported(t, t.name, "predicates without arguments are not supported");
    }
    if (!is_constant_name(t.name)) unsupported(t, t.name, "unsupported predicate name");
    std::vector<Term> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) args.push_back(term(a));
    return Atom(t.name, std::move(args));
  }

  Atom goal(const SyntaxTerm& g) {
    if (g.kind == SyntaxTerm::Kind::kVariable) unsupported(g, g.name, "variable goals are not supported");
    if (!g.is_callable()) unsupported(g, g.name, "goal is not a predicate");
    if (g.op_notation || builtin_names().contains(g.name)) unsupported(g, g.name, describe_construct(g));
    return atom(g);
  }

  std::set<std::string> used_;
  int anon_ = 0;
};

}  // namespace

std::vector<SyntaxTerm> read_clause_terms(std::string_view text) {
  TermReader reader(Lexer(text).run());
  auto terms = reader.read_all();
  for (const auto& t : terms) check_head(t);
  return terms;
}

Clause to_clause(const SyntaxTerm& clause_term) {
  return ClauseConverter(clause_term).convert(clause_term);
}

Program parse_program(std::string_view text) {
  Program program;
  for (const auto& t : read_clause_terms(text)) program.clauses.push_back(to_clause(t));
  return program;
}

LenientParse parse_program_lenient(std::string_view text) {
  LenientParse out;
  for (const auto& t : read_clause_terms(text)) {
    try {
      out.program.clauses.push_back(to_clause(t));
    } catch (const ParseError& e) {
      out.rejected.push_back(e);
    }
  }
  return out;
}

Atom parse_ground_atom(std::string_view text) {
  std::string buf(text);
  while (!buf.empty() && is_layout(buf.back())) buf.pop_back();
  if (buf.empty() || buf.back() != '.') buf += '.';
  const Program p = parse_program(buf);
  if (p.size() != 1 || !p.clauses[0].is_fact() || !p.clauses[0].head.is_ground()) {
    throw ParseError(ParseError::Kind::kSyntax, {}, std::string(text), "expected one ground atom");
  }
  return p.clauses[0].head;
}

std::vector<Atom> parse_atom_list(std::string_view text) {
  std::vector<Atom> out;
  for (const auto& t : read_clause_terms(text)) {
    Clause c = to_clause(t);
    if (!c.is_fact() || !c.head.is_ground()) {
      throw ParseError(ParseError::Kind::kSyntax, t.pos, render_clause(c), "expected a ground atom");
    }
    out.push_back(std::move(c.head));
  }
  return out;
}

std::string render_syntax(const SyntaxTerm& term) {
  std::string out = term.name;
  if (term.kind == SyntaxTerm::Kind::kCompound) {
    out += '(';
    for (std::size_t i = 0; i < term.args.size(); ++i) {
      if (i) out += ',';
      out += render_syntax(term.args[i]);
    }
    out += ')';
  }
  return out;
}

bool is_builtin_name(std::string_view name) { return builtin_names().contains(name); }

}  // namespace ilpbench
