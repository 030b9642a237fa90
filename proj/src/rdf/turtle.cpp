#include "capd/rdf/turtle.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <vector>

namespace capd::rdf {

namespace {

enum class Tok {
  Eof, Dot, Semicolon, Comma, LBracket, RBracket,
  PrefixDirective, IriRef, PrefixedName, BlankLabel, KeywordA,
  String, Number, DatatypeMarker, LangTag,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string value;       // IRI body, lexical form, "prefix:local", label, ...
  std::string extra;       // number subtype: "integer"/"decimal"
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws_and_comments();
    Token t;
    t.line = line_;
    t.column = column_;
    if (eof()) {
      t.kind = Tok::Eof;
      return t;
    }
    char c = peek();
    switch (c) {
      case '.':
        // A dot can start a decimal (".5" is not legal Turtle), so bare dot
        // is always the statement terminator here.
        get(); t.kind = Tok::Dot; return t;
      case ';': get(); t.kind = Tok::Semicolon; return t;
      case ',': get(); t.kind = Tok::Comma; return t;
      case '[': get(); t.kind = Tok::LBracket; return t;
      case ']': get(); t.kind = Tok::RBracket; return t;
      case '<': return lex_iri(t);
      case '"': return lex_string(t);
      case '@': return lex_at(t);
      case '^': return lex_caret(t);
      case '_': return lex_blank(t);
      default: break;
    }
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
      return lex_number(t);
    if (is_name_start(c) || c == ':')
      return lex_name(t);
    fail(t, std::string("unexpected character '") + c + "'");
    return t;  // unreachable
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

  void skip_ws_and_comments() {
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

  static bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
  }
  static bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           static_cast<unsigned char>(c) >= 0x80;
  }

  Token& lex_iri(Token& t) {
    get();  // <
    std::string out;
    while (true) {
      if (eof())
        fail(t, "unterminated IRI");
      char c = get();
      if (c == '>')
        break;
      if (c == '\n')
        fail(t, "newline inside IRI");
      out += c;
    }
    t.kind = Tok::IriRef;
    t.value = std::move(out);
    return t;
  }

  Token& lex_string(Token& t) {
    get();  // "
    if (peek() == '"' && peek2() == '"')
      fail(t, "multiline strings are not supported");
    std::string out;
    while (true) {
      if (eof())
        fail(t, "unterminated string literal");
      char c = get();
      if (c == '"')
        break;
      if (c == '\n')
        fail(t, "newline inside string literal");
      if (c == '\\') {
        if (eof())
          fail(t, "unterminated escape sequence");
        char e = get();
        switch (e) {
          case 't': out += '\t'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'u': out += lex_unicode_escape(t, 4); break;
          case 'U': out += lex_unicode_escape(t, 8); break;
          default:
            fail(t, std::string("unknown escape '\\") + e + "'");
        }
      } else {
        out += c;
      }
    }
    t.kind = Tok::String;
    t.value = std::move(out);
    return t;
  }

  std::string lex_unicode_escape(Token& t, int digits) {
    unsigned long cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (eof() || !std::isxdigit(static_cast<unsigned char>(peek())))
        fail(t, "bad unicode escape");
      char c = get();
      cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(c))
                          ? static_cast<unsigned long>(c - '0')
                          : static_cast<unsigned long>(std::tolower(c) - 'a' + 10));
    }
    // UTF-8 encode.
    std::string out;
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
  }

  Token& lex_at(Token& t) {
    get();  // @
    std::string word;
    while (!eof() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '-'))
      word += get();
    if (word == "prefix") {
      t.kind = Tok::PrefixDirective;
      return t;
    }
    if (!word.empty()) {
      t.kind = Tok::LangTag;
      t.value = std::move(word);
      return t;
    }
    fail(t, "lone '@'");
    return t;
  }

  Token& lex_caret(Token& t) {
    get();
    if (eof() || peek() != '^')
      fail(t, "expected '^^'");
    get();
    t.kind = Tok::DatatypeMarker;
    return t;
  }

  Token& lex_blank(Token& t) {
    // '_' begins either a blank label "_:x" or a prefixed-name start; only
    // the former is legal Turtle, so require the colon.
    get();  // _
    if (eof() || peek() != ':')
      fail(t, "expected ':' after '_'");
    get();
    std::string label;
    while (!eof() && (is_name_char(peek()) || peek() == '.')) {
      if (peek() == '.' && !is_name_char(peek2()))
        break;  // trailing dot terminates the statement
      label += get();
    }
    if (label.empty())
      fail(t, "empty blank node label");
    t.kind = Tok::BlankLabel;
    t.value = std::move(label);
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
      fail(t, "malformed number '" + out + "'");
    t.kind = Tok::Number;
    t.value = std::move(out);
    t.extra = dot ? "decimal" : "integer";
    return t;
  }

  Token& lex_name(Token& t) {
    std::string prefix;
    while (!eof() && is_name_char(peek()))
      prefix += get();
    if (!eof() && peek() == ':') {
      get();
      std::string local;
      while (!eof() && (is_name_char(peek()) || peek() == '.')) {
        if (peek() == '.' && !is_name_char(peek2()))
          break;
        local += get();
      }
      t.kind = Tok::PrefixedName;
      t.value = prefix + ":" + local;
      return t;
    }
    if (prefix == "a") {
      t.kind = Tok::KeywordA;
      return t;
    }
    fail(t, "unexpected token '" + prefix + "'");
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, const PrefixMap& base) : lexer_(text) {
    for (const auto& [k, v] : base)
      graph_.add_prefix(k, v);
    advance();
  }

  Graph run() {
    while (cur_.kind != Tok::Eof) {
      if (cur_.kind == Tok::PrefixDirective)
        parse_prefix_directive();
      else
        parse_statement();
    }
    return std::move(graph_);
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind)
      lexer_.fail(cur_, std::string("expected ") + what + ", got '" + describe(cur_) + "'");
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::Eof: return "end of input";
      case Tok::Dot: return ".";
      case Tok::Semicolon: return ";";
      case Tok::Comma: return ",";
      case Tok::LBracket: return "[";
      case Tok::RBracket: return "]";
      case Tok::PrefixDirective: return "@prefix";
      case Tok::KeywordA: return "a";
      case Tok::DatatypeMarker: return "^^";
      case Tok::LangTag: return "@" + t.value;
      default: return t.value;
    }
  }

  void parse_prefix_directive() {
    advance();
    expect(Tok::PrefixedName, "prefix name");
    std::string pn = cur_.value;
    if (pn.empty() || pn.back() != ':')
      lexer_.fail(cur_, "expected 'prefix:' in @prefix directive");
    std::string prefix = pn.substr(0, pn.size() - 1);
    advance();
    expect(Tok::IriRef, "namespace IRI");
    graph_.add_prefix(prefix, cur_.value);
    advance();
    expect(Tok::Dot, "'.'");
    advance();
  }

  Term expand_prefixed(const Token& t) {
    auto colon = t.value.find(':');
    std::string prefix = t.value.substr(0, colon);
    std::string local = t.value.substr(colon + 1);
    auto it = graph_.prefixes().find(prefix);
    if (it == graph_.prefixes().end())
      lexer_.fail(t, "unknown prefix '" + prefix + "'");
    return Term::iri(it->second + local);
  }

  Term fresh_blank() { return Term::blank("b" + std::to_string(next_blank_++)); }

  Term renamed_blank(const std::string& original) {
    auto it = blank_names_.find(original);
    if (it != blank_names_.end())
      return Term::blank(it->second);
    Term b = fresh_blank();
    blank_names_.emplace(original, b.value());
    return b;
  }

  Term parse_subject() {
    switch (cur_.kind) {
      case Tok::IriRef: {
        Term t = Term::iri(cur_.value);
        advance();
        return t;
      }
      case Tok::PrefixedName: {
        Term t = expand_prefixed(cur_);
        advance();
        return t;
      }
      case Tok::BlankLabel: {
        Term t = renamed_blank(cur_.value);
        advance();
        return t;
      }
      case Tok::LBracket: {
        advance();
        expect(Tok::RBracket, "']' (blank node property lists are not supported)");
        advance();
        return fresh_blank();
      }
      default:
        lexer_.fail(cur_, "expected subject, got '" + describe(cur_) + "'");
    }
  }

  Term parse_predicate() {
    if (cur_.kind == Tok::KeywordA) {
      advance();
      return Term::iri(vocab::kRdfType);
    }
    if (cur_.kind == Tok::IriRef) {
      Term t = Term::iri(cur_.value);
      advance();
      return t;
    }
    if (cur_.kind == Tok::PrefixedName) {
      Term t = expand_prefixed(cur_);
      advance();
      return t;
    }
    lexer_.fail(cur_, "expected predicate, got '" + describe(cur_) + "'");
  }

  Term parse_object() {
    switch (cur_.kind) {
      case Tok::IriRef:
      case Tok::PrefixedName:
      case Tok::BlankLabel:
      case Tok::LBracket:
        return parse_subject();  // same grammar for these forms
      case Tok::String: {
        std::string lexical = cur_.value;
        advance();
        if (cur_.kind == Tok::DatatypeMarker) {
          advance();
          Term dt = parse_predicate();  // IRI or prefixed name
          return Term::literal(lexical, dt.value());
        }
        if (cur_.kind == Tok::LangTag) {
          std::string lang = cur_.value;
          advance();
          return Term::literal(lexical, std::string(vocab::kXsdString), lang);
        }
        return Term::literal(lexical);
      }
      case Tok::Number: {
        Term t = Term::literal(cur_.value, cur_.extra == "integer"
                                               ? std::string(vocab::kXsdInteger)
                                               : std::string(vocab::kXsdDecimal));
        advance();
        return t;
      }
      default:
        lexer_.fail(cur_, "expected object, got '" + describe(cur_) + "'");
    }
  }

  void parse_statement() {
    Term subject = parse_subject();
    while (true) {
      Term predicate = parse_predicate();
      while (true) {
        Term object = parse_object();
        graph_.insert(Triple(subject, predicate, object));
        if (cur_.kind == Tok::Comma) {
          advance();
          continue;
        }
        break;
      }
      if (cur_.kind == Tok::Semicolon) {
        advance();
        if (cur_.kind == Tok::Dot)  // trailing semicolon
          break;
        continue;
      }
      break;
    }
    expect(Tok::Dot, "'.'");
    advance();
  }

  Lexer lexer_;
  Token cur_;
  Graph graph_;
  std::map<std::string, std::string> blank_names_;
  int next_blank_ = 0;
};

bool plain_number_lexical(const std::string& s, bool allow_dot) {
  if (s.empty())
    return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else if (s[i] == '.' && allow_dot && !dot && i + 1 < s.size() &&
               std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
      dot = true;
    } else {
      return false;
    }
  }
  return digits && (!allow_dot || dot);
}

bool safe_local_name(std::string_view local) {
  if (local.empty())
    return false;
  for (char c : local)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
      return false;
  char f = local.front();
  return std::isalpha(static_cast<unsigned char>(f)) || f == '_' ||
         std::isdigit(static_cast<unsigned char>(f));
}

std::string render_iri(const std::string& iri, const PrefixMap& prefixes) {
  // Longest matching namespace wins so nested namespaces compact correctly.
  const std::string* best_prefix = nullptr;
  std::size_t best_len = 0;
  for (const auto& [prefix, ns] : prefixes) {
    if (iri.size() > ns.size() && iri.compare(0, ns.size(), ns) == 0 && ns.size() > best_len &&
        safe_local_name(std::string_view(iri).substr(ns.size()))) {
      best_prefix = &prefix;
      best_len = ns.size();
    }
  }
  if (best_prefix)
    return *best_prefix + ":" + iri.substr(best_len);
  return "<" + iri + ">";
}

std::string render_term_impl(const Term& t, const PrefixMap& prefixes) {
  switch (t.kind()) {
    case TermKind::Iri:
      return render_iri(t.value(), prefixes);
    case TermKind::BlankNode:
      return "_:" + t.value();
    case TermKind::Literal: {
      if (t.language().empty()) {
        if (t.datatype() == vocab::kXsdInteger && plain_number_lexical(t.value(), false))
          return t.value();
        if (t.datatype() == vocab::kXsdDecimal && plain_number_lexical(t.value(), true))
          return t.value();
      }
      std::string out = "\"";
      for (char c : t.value()) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\r': out += "\\r"; break;
          case '\t': out += "\\t"; break;
          default: out += c;
        }
      }
      out += '"';
      if (!t.language().empty())
        out += "@" + t.language();
      else if (t.datatype() != vocab::kXsdString)
        out += "^^" + render_iri(t.datatype(), prefixes);
      return out;
    }
  }
  return {};
}

}  // namespace

std::string render_term(const Term& t, const PrefixMap& prefixes) {
  return render_term_impl(t, prefixes);
}

Graph parse_turtle(std::string_view text, const PrefixMap& base_prefixes) {
  return Parser(text, base_prefixes).run();
}

std::string serialize_turtle(const Graph& g) {
  std::ostringstream out;
  for (const auto& [prefix, ns] : g.prefixes())
    out << "@prefix " << prefix << ": <" << ns << "> .\n";

  // subject -> predicate -> objects, each level in term order.
  std::map<Term, std::map<Term, std::set<Term>>> by_subject;
  for (const Triple& t : g.triples())
    by_subject[t.subject][t.predicate].insert(t.object);

  for (const auto& [subject, preds] : by_subject) {
    out << "\n" << render_term_impl(subject, g.prefixes());
    bool first_pred = true;
    for (const auto& [pred, objects] : preds) {
      if (!first_pred)
        out << " ;\n   ";
      first_pred = false;
      if (pred.is_iri() && pred.value() == vocab::kRdfType)
        out << " a";
      else
        out << " " << render_term_impl(pred, g.prefixes());
      bool first_obj = true;
      for (const Term& obj : objects) {
        out << (first_obj ? " " : ", ") << render_term_impl(obj, g.prefixes());
        first_obj = false;
      }
    }
    out << " .\n";
  }
  return out.str();
}

}  // namespace capd::rdf
