#include "capd/sparql/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace capd::sparql {

namespace {

using rdf::Term;

enum class Tok {
  Eof, Dot, Semicolon, Comma, LParen, RParen, LBrace, RBrace, AndAnd,
  Var, IriRef, PrefixedName, String, Number, Keyword, CmpOp,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string value;   // var name, IRI, lexical, keyword upper-cased, op text
  std::string extra;   // number subtype
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.column = column_;
    if (eof()) {
      t.kind = Tok::Eof;
      return t;
    }
    char c = peek();
    switch (c) {
      case '.': get(); t.kind = Tok::Dot; return t;
      case ';': get(); t.kind = Tok::Semicolon; return t;
      case ',': get(); t.kind = Tok::Comma; return t;
      case '(': get(); t.kind = Tok::LParen; return t;
      case ')': get(); t.kind = Tok::RParen; return t;
      case '{': get(); t.kind = Tok::LBrace; return t;
      case '}': get(); t.kind = Tok::RBrace; return t;
      case '?':
      case '$': return lex_var(t);
      case '<': return lex_angle(t);
      case '"': return lex_string(t);
      case '&': return lex_andand(t);
      case '=': get(); t.kind = Tok::CmpOp; t.value = "="; return t;
      case '!': return lex_bang(t);
      case '>':
        get();
        t.kind = Tok::CmpOp;
        t.value = (!eof() && peek() == '=') ? (get(), ">=") : ">";
        return t;
      default: break;
    }
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
      return lex_number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':')
      return lex_word(t);
    fail(t, std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(message, at.line, at.column);
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char peek2() const { return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0'; }

  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n')
          get();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else {
        break;
      }
    }
  }

  static bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
  }

  Token& lex_var(Token& t) {
    get();  // ? or $
    std::string name;
    while (!eof() && is_name_char(peek()))
      name += get();
    if (name.empty())
      fail(t, "empty variable name");
    t.kind = Tok::Var;
    t.value = std::move(name);
    return t;
  }

  Token& lex_angle(Token& t) {
    get();  // <
    if (!eof() && (peek() == '=' )) {
      get();
      t.kind = Tok::CmpOp;
      t.value = "<=";
      return t;
    }
    // Distinguish `<` comparison from `<iri>`: absolute IRIs start with a
    // scheme letter, while comparison operands start with '?', '$', a
    // digit, a sign, or whitespace.
    if (eof() || !std::isalpha(static_cast<unsigned char>(peek()))) {
      t.kind = Tok::CmpOp;
      t.value = "<";
      return t;
    }
    std::string out;
    while (true) {
      if (eof())
        fail(t, "unterminated IRI");
      char c = get();
      if (c == '>')
        break;
      out += c;
    }
    t.kind = Tok::IriRef;
    t.value = std::move(out);
    return t;
  }

  Token& lex_string(Token& t) {
    get();
    std::string out;
    while (true) {
      if (eof())
        fail(t, "unterminated string literal");
      char c = get();
      if (c == '"')
        break;
      if (c == '\\') {
        char e = get();
        switch (e) {
          case 't': out += '\t'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(t, std::string("unknown escape '\\") + e + "'");
        }
      } else {
        out += c;
      }
    }
    t.kind = Tok::String;
    t.value = std::move(out);
    return t;
  }

  Token& lex_andand(Token& t) {
    get();
    if (eof() || peek() != '&')
      fail(t, "expected '&&'");
    get();
    t.kind = Tok::AndAnd;
    return t;
  }

  Token& lex_bang(Token& t) {
    get();
    if (eof() || peek() != '=')
      fail(t, "expected '!='");
    get();
    t.kind = Tok::CmpOp;
    t.value = "!=";
    return t;
  }

  Token& lex_number(Token& t) {
    std::string out;
    if (peek() == '+' || peek() == '-')
      out += get();
    bool digits = false, dot = false;
    while (!eof()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = true;
        out += get();
      } else if (c == '.' && !dot && std::isdigit(static_cast<unsigned char>(peek2()))) {
        dot = true;
        out += get();
      } else {
        break;
      }
    }
    if (!digits)
      fail(t, "malformed number");
    t.kind = Tok::Number;
    t.value = std::move(out);
    t.extra = dot ? "decimal" : "integer";
    return t;
  }

  Token& lex_word(Token& t) {
    std::string word;
    while (!eof() && is_name_char(peek()))
      word += get();
    if (!eof() && peek() == ':') {
      get();
      std::string local;
      while (!eof() && (is_name_char(peek()) || peek() == '.')) {
        if (peek() == '.' && !(is_name_char(peek2())))
          break;
        local += get();
      }
      t.kind = Tok::PrefixedName;
      t.value = word + ":" + local;
      return t;
    }
    std::string upper = word;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    t.kind = Tok::Keyword;
    t.value = std::move(upper);
    t.extra = std::move(word);
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

const std::set<std::string> kUnsupported = {
    "OPTIONAL", "UNION", "LIMIT", "OFFSET", "DISTINCT", "REDUCED", "GROUP",
    "HAVING", "COUNT", "SUM", "AVG", "MIN", "MAX", "CONSTRUCT", "ASK",
    "DESCRIBE", "MINUS", "BIND", "VALUES", "SERVICE", "GRAPH",
};

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : lexer_(text) {
    query_.prefixes = rdf::default_prefixes();
    advance();
  }

  SelectQuery run() {
    parse_prologue();
    parse_select();
    if (cur_.kind == Tok::Keyword && cur_.value == "WHERE")
      advance();
    parse_group();
    parse_order_by();
    if (cur_.kind != Tok::Eof)
      lexer_.fail(cur_, "unexpected trailing input '" + describe(cur_) + "'");
    check_invariants();
    return std::move(query_);
  }

 private:
  void advance() {
    cur_ = lexer_.next();
    if (cur_.kind == Tok::Keyword && kUnsupported.count(cur_.value))
      lexer_.fail(cur_, "unsupported SPARQL feature: " + cur_.value +
                            " (this engine supports SELECT over a basic graph "
                            "pattern with FILTER and ORDER BY only)");
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::Eof: return "end of input";
      case Tok::Var: return "?" + t.value;
      default: return t.value.empty() ? "punctuation" : t.value;
    }
  }

  void expect_keyword(const char* kw) {
    if (cur_.kind != Tok::Keyword || cur_.value != kw)
      lexer_.fail(cur_, std::string("expected ") + kw);
    advance();
  }

  void parse_prologue() {
    while (cur_.kind == Tok::Keyword && cur_.value == "PREFIX") {
      advance();
      if (cur_.kind != Tok::PrefixedName)
        lexer_.fail(cur_, "expected 'prefix:' after PREFIX");
      std::string pn = cur_.value;
      if (pn.empty() || pn.back() != ':')
        lexer_.fail(cur_, "expected 'prefix:' (no local part) after PREFIX");
      std::string prefix = pn.substr(0, pn.size() - 1);
      advance();
      if (cur_.kind != Tok::IriRef)
        lexer_.fail(cur_, "expected namespace IRI in PREFIX declaration");
      query_.prefixes[prefix] = cur_.value;
      advance();
    }
  }

  void parse_select() {
    expect_keyword("SELECT");
    while (true) {
      if (cur_.kind == Tok::Var) {
        query_.projection.push_back({cur_.value, cur_.value});
        advance();
      } else if (cur_.kind == Tok::LParen) {
        advance();
        if (cur_.kind != Tok::Var)
          lexer_.fail(cur_, "expected variable inside aliased projection");
        std::string source = cur_.value;
        advance();
        if (!(cur_.kind == Tok::Keyword && cur_.value == "AS"))
          lexer_.fail(cur_, "expected AS in aliased projection");
        advance();
        if (cur_.kind != Tok::Var)
          lexer_.fail(cur_, "expected alias variable after AS");
        query_.projection.push_back({source, cur_.value});
        advance();
        if (cur_.kind != Tok::RParen)
          lexer_.fail(cur_, "expected ')' after aliased projection");
        advance();
      } else {
        break;
      }
    }
    if (query_.projection.empty())
      lexer_.fail(cur_, "SELECT requires at least one projected variable");
  }

  Term resolve_prefixed(const Token& t) {
    auto colon = t.value.find(':');
    std::string prefix = t.value.substr(0, colon);
    std::string local = t.value.substr(colon + 1);
    auto it = query_.prefixes.find(prefix);
    if (it == query_.prefixes.end())
      lexer_.fail(t, "unknown prefix '" + prefix + "'");
    return Term::iri(it->second + local);
  }

  PatternTerm parse_term(bool predicate_position) {
    switch (cur_.kind) {
      case Tok::Var: {
        PatternTerm p = PatternTerm::variable(cur_.value);
        advance();
        return p;
      }
      case Tok::IriRef: {
        PatternTerm p = PatternTerm::constant(Term::iri(cur_.value));
        advance();
        return p;
      }
      case Tok::PrefixedName: {
        PatternTerm p = PatternTerm::constant(resolve_prefixed(cur_));
        advance();
        return p;
      }
      case Tok::Keyword:
        if (cur_.extra == "a" && predicate_position) {
          advance();
          return PatternTerm::constant(Term::iri(vocab::kRdfType));
        }
        break;
      case Tok::String: {
        std::string lexical = cur_.value;
        advance();
        // Optional ^^datatype is not part of the paper's query; accept plain
        // strings and language tags only.
        return PatternTerm::constant(Term::literal(lexical));
      }
      case Tok::Number: {
        PatternTerm p = PatternTerm::constant(
            Term::literal(cur_.value, cur_.extra == "integer"
                                          ? std::string(vocab::kXsdInteger)
                                          : std::string(vocab::kXsdDecimal)));
        advance();
        return p;
      }
      default:
        break;
    }
    lexer_.fail(cur_, "expected a variable, IRI, or literal, got '" + describe(cur_) + "'");
  }

  void parse_group() {
    if (cur_.kind != Tok::LBrace)
      lexer_.fail(cur_, "expected '{' to open the graph pattern");
    advance();
    while (cur_.kind != Tok::RBrace) {
      if (cur_.kind == Tok::Eof)
        lexer_.fail(cur_, "unterminated graph pattern: missing '}'");
      if (cur_.kind == Tok::LBrace)
        lexer_.fail(cur_, "unsupported SPARQL feature: nested group patterns "
                          "(UNION/OPTIONAL groups are not part of this subset)");
      if (cur_.kind == Tok::Keyword && cur_.value == "FILTER") {
        parse_filter();
        continue;
      }
      parse_triples_block();
    }
    advance();  // }
  }

  void parse_triples_block() {
    PatternTerm subject = parse_term(false);
    while (true) {
      PatternTerm predicate = parse_term(true);
      while (true) {
        PatternTerm object = parse_term(false);
        query_.patterns.push_back({subject, predicate, object});
        if (cur_.kind == Tok::Comma) {
          advance();
          continue;
        }
        break;
      }
      if (cur_.kind == Tok::Semicolon) {
        advance();
        if (cur_.kind == Tok::Dot || cur_.kind == Tok::RBrace)
          break;
        continue;
      }
      break;
    }
    if (cur_.kind == Tok::Dot)
      advance();
    else if (cur_.kind != Tok::RBrace &&
             !(cur_.kind == Tok::Keyword && cur_.value == "FILTER"))
      lexer_.fail(cur_, "expected '.', FILTER, or '}' after triple pattern");
  }

  void parse_filter() {
    advance();  // FILTER
    if (cur_.kind != Tok::LParen)
      lexer_.fail(cur_, "expected '(' after FILTER");
    advance();
    FilterExpr filter;
    while (true) {
      filter.conjuncts.push_back(parse_comparison());
      if (cur_.kind == Tok::AndAnd) {
        advance();
        continue;
      }
      break;
    }
    if (cur_.kind != Tok::RParen)
      lexer_.fail(cur_, "expected ')' or '&&' in FILTER");
    advance();
    if (cur_.kind == Tok::Dot)
      advance();
    query_.filters.push_back(std::move(filter));
  }

  Comparison parse_comparison() {
    if (cur_.kind != Tok::Var)
      lexer_.fail(cur_, "expected variable on the left side of a comparison");
    Comparison cmp;
    cmp.lhs_var = cur_.value;
    advance();
    if (cur_.kind != Tok::CmpOp)
      lexer_.fail(cur_, "expected comparison operator");
    const std::string& op = cur_.value;
    if (op == ">=") cmp.op = rdf::CmpOp::Ge;
    else if (op == "<=") cmp.op = rdf::CmpOp::Le;
    else if (op == ">") cmp.op = rdf::CmpOp::Gt;
    else if (op == "<") cmp.op = rdf::CmpOp::Lt;
    else if (op == "=") cmp.op = rdf::CmpOp::Eq;
    else cmp.op = rdf::CmpOp::Ne;
    advance();
    if (cur_.kind == Tok::Var) {
      cmp.rhs = PatternTerm::variable(cur_.value);
      advance();
    } else if (cur_.kind == Tok::Number) {
      cmp.rhs = PatternTerm::constant(
          Term::literal(cur_.value, cur_.extra == "integer"
                                        ? std::string(vocab::kXsdInteger)
                                        : std::string(vocab::kXsdDecimal)));
      advance();
    } else {
      lexer_.fail(cur_, "comparison operand must be a variable or numeric literal");
    }
    return cmp;
  }

  void parse_order_by() {
    if (!(cur_.kind == Tok::Keyword && cur_.value == "ORDER"))
      return;
    advance();
    expect_keyword("BY");
    while (cur_.kind == Tok::Var) {
      query_.order_by.push_back(cur_.value);
      advance();
    }
    if (query_.order_by.empty())
      lexer_.fail(cur_, "ORDER BY requires at least one variable");
  }

  void check_invariants() {
    std::set<std::string> pattern_vars;
    for (const auto& p : query_.patterns)
      for (const auto& v : p.variables())
        pattern_vars.insert(v);
    for (const auto& item : query_.projection) {
      if (!pattern_vars.count(item.source_var))
        throw ParseError("projected variable ?" + item.source_var +
                             " is not bound by any triple pattern", 0, 0);
      if (item.aliased() && pattern_vars.count(item.output_name))
        throw ParseError("alias ?" + item.output_name +
                             " collides with a pattern variable", 0, 0);
    }
    for (const auto& v : query_.order_by)
      if (!pattern_vars.count(v))
        throw ParseError("ORDER BY variable ?" + v +
                             " is not bound by any triple pattern", 0, 0);
  }

  Lexer lexer_;
  Token cur_;
  SelectQuery query_;
};

}  // namespace

std::vector<std::string> SelectQuery::pattern_variables() const {
  std::set<std::string> vars;
  for (const auto& p : patterns)
    for (const auto& v : p.variables())
      vars.insert(v);
  return {vars.begin(), vars.end()};
}

SelectQuery parse_query(std::string_view text) {
  return QueryParser(text).run();
}

}  // namespace capd::sparql
