#include "lakefed/sparql/parser.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>
#include <vector>

#include "lakefed/error.hpp"

namespace lakefed {

namespace {

enum class Tok {
  Ident,    // bare name, keywords included
  Pname,    // prefix:local
  Iri,      // <...>
  Var,      // ?name
  String,   // "..."
  Integer,  // [-]digits
  LParen,
  RParen,
  LBrace,
  RBrace,
  Dot,
  Comma,
  Op,  // = != < > <= >= ^^
  End,
};

struct Token {
  Tok type;
  std::string text;    // ident/pname/iri/var/string content, op symbol
  std::string second;  // local part of a pname
  size_t pos = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      size_t start = pos_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", "", start});
        break;
      }
      char c = text_[pos_];
      if (c == '{') { out.push_back({Tok::LBrace, "{", "", start}); ++pos_; continue; }
      if (c == '}') { out.push_back({Tok::RBrace, "}", "", start}); ++pos_; continue; }
      if (c == '(') { out.push_back({Tok::LParen, "(", "", start}); ++pos_; continue; }
      if (c == ')') { out.push_back({Tok::RParen, ")", "", start}); ++pos_; continue; }
      if (c == ',') { out.push_back({Tok::Comma, ",", "", start}); ++pos_; continue; }
      if (c == '.') { out.push_back({Tok::Dot, ".", "", start}); ++pos_; continue; }
      if (c == '=') { out.push_back({Tok::Op, "=", "", start}); ++pos_; continue; }
      if (c == '^' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '^') {
        out.push_back({Tok::Op, "^^", "", start});
        pos_ += 2;
        continue;
      }
      if (c == '!') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          out.push_back({Tok::Op, "!=", "", start});
          pos_ += 2;
          continue;
        }
        throw SyntaxError(start, "operator", "!");
      }
      if (c == '>') {
        ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '=') { ++pos_; out.push_back({Tok::Op, ">=", "", start}); }
        else out.push_back({Tok::Op, ">", "", start});
        continue;
      }
      if (c == '<') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          out.push_back({Tok::Op, "<=", "", start});
          pos_ += 2;
          continue;
        }
        // <...> is an IRI if a '>' closes it before any whitespace.
        size_t end = pos_ + 1;
        while (end < text_.size() && text_[end] != '>' && !std::isspace(static_cast<unsigned char>(text_[end])) &&
               text_[end] != '"' && text_[end] != '<') {
          ++end;
        }
        if (end < text_.size() && text_[end] == '>') {
          out.push_back({Tok::Iri, text_.substr(pos_ + 1, end - pos_ - 1), "", start});
          pos_ = end + 1;
          continue;
        }
        ++pos_;
        out.push_back({Tok::Op, "<", "", start});
        continue;
      }
      if (c == '?') {
        ++pos_;
        size_t begin = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        if (pos_ == begin) throw SyntaxError(start, "variable name", "?");
        out.push_back({Tok::Var, text_.substr(begin, pos_ - begin), "", start});
        continue;
      }
      if (c == '"') {
        ++pos_;
        std::string s;
        while (pos_ < text_.size() && text_[pos_] != '"') {
          if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
          s += text_[pos_++];
        }
        if (pos_ >= text_.size()) throw SyntaxError(start, "closing '\"'", "end of input");
        ++pos_;
        out.push_back({Tok::String, s, "", start});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        size_t begin = pos_;
        if (c == '-') ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        out.push_back({Tok::Integer, text_.substr(begin, pos_ - begin), "", start});
        continue;
      }
      if (ident_start(c)) {
        size_t begin = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        std::string name = text_.substr(begin, pos_ - begin);
        if (pos_ < text_.size() && text_[pos_] == ':') {
          ++pos_;
          size_t lbegin = pos_;
          while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
          out.push_back({Tok::Pname, name, text_.substr(lbegin, pos_ - lbegin), start});
          continue;
        }
        out.push_back({Tok::Ident, name, "", start});
        continue;
      }
      throw SyntaxError(start, "token", std::string(1, c));
    }
    return out;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) { ++pos_; continue; }
      if (c == '#') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      break;
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
};

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

const std::unordered_set<std::string> kUnsupported = {
    "OPTIONAL", "UNION",  "GRAPH",  "SERVICE", "ORDER",  "GROUP",  "HAVING", "LIMIT",
    "OFFSET",   "BIND",   "VALUES", "MINUS",   "ASK",    "CONSTRUCT", "DESCRIBE",
    "INSERT",   "DELETE", "EXISTS", "REDUCED", "FROM",   "NAMED"};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Query run() {
    Query q;
    while (is_keyword("PREFIX")) {
      advance();
      const Token& name = expect(Tok::Pname, "prefix name");
      const Token& iri = expect(Tok::Iri, "IRI");
      q.prefixes[name.text] = iri.text;
    }
    if (peek().type == Tok::Ident && kUnsupported.count(upper(peek().text))) {
      throw UnsupportedFeature(upper(peek().text));
    }
    expect_keyword("SELECT");
    if (is_keyword("DISTINCT")) {
      advance();
      q.distinct = true;
    }
    while (peek().type == Tok::Var) {
      q.projection.push_back(advance().text);
    }
    if (q.projection.empty()) {
      if (peek().type == Tok::Op && peek().text == "<") {
        // actually a lone '*': SELECT * is outside the subset
      }
      if (peek().type == Tok::Ident || peek().type == Tok::Op) {
        throw UnsupportedFeature("SELECT " + peek().text);
      }
      throw SyntaxError(peek().pos, "projection variable", peek().text);
    }
    expect_keyword("WHERE");
    expect(Tok::LBrace, "'{'");
    while (peek().type != Tok::RBrace) {
      if (peek().type == Tok::Ident) {
        std::string kw = upper(peek().text);
        if (kUnsupported.count(kw)) throw UnsupportedFeature(kw);
        if (kw == "FILTER") {
          advance();
          q.filters.push_back(parse_filter(q));
          maybe_dot();
          continue;
        }
      }
      q.patterns.push_back(parse_triple(q));
      maybe_dot();
    }
    expect(Tok::RBrace, "'}'");
    if (peek().type != Tok::End) {
      if (peek().type == Tok::Ident && kUnsupported.count(upper(peek().text))) {
        throw UnsupportedFeature(upper(peek().text));
      }
      throw SyntaxError(peek().pos, "end of input", peek().text);
    }
    if (q.patterns.empty()) throw SyntaxError(0, "at least one triple pattern", "empty group");
    return q;
  }

 private:
  const Token& peek() const { return tokens_[idx_]; }
  const Token& advance() { return tokens_[idx_++]; }

  bool is_keyword(const char* kw) const {
    return peek().type == Tok::Ident && upper(peek().text) == kw;
  }

  void expect_keyword(const char* kw) {
    if (!is_keyword(kw)) throw SyntaxError(peek().pos, kw, peek().text);
    advance();
  }

  const Token& expect(Tok type, const char* what) {
    if (peek().type != type) throw SyntaxError(peek().pos, what, peek().text);
    return advance();
  }

  void maybe_dot() {
    if (peek().type == Tok::Dot) advance();
  }

  std::string expand(const Token& pname, const Query& q) {
    auto it = q.prefixes.find(pname.text);
    if (it == q.prefixes.end()) throw UnknownPrefix(pname.text);
    return it->second + pname.second;
  }

  static bool is_absolute_iri(const std::string& iri) {
    size_t colon = iri.find(':');
    if (colon == std::string::npos || colon == 0) return false;
    if (!std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
    for (size_t i = 1; i < colon; ++i) {
      char c = iri[i];
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
        return false;
      }
    }
    return true;
  }

  Term parse_iri_term(const Query& q) {
    std::string iri;
    size_t pos = peek().pos;
    if (peek().type == Tok::Iri) {
      iri = advance().text;
    } else {
      iri = expand(expect(Tok::Pname, "IRI"), q);
    }
    if (!is_absolute_iri(iri)) throw SyntaxError(pos, "absolute IRI", iri);
    return Term::iri(iri);
  }

  Term parse_literal() {
    if (peek().type == Tok::Integer) {
      return Term::int_literal(std::stoll(advance().text));
    }
    const Token& s = expect(Tok::String, "literal");
    Term t = Term::literal(s.text);
    if (peek().type == Tok::Op && peek().text == "^^") {
      advance();
      const Token& dt = expect(Tok::Iri, "datatype IRI");
      t.datatype = dt.text;
    }
    return t;
  }

  Term parse_subject(const Query& q) {
    if (peek().type == Tok::Var) return Term::variable(advance().text);
    if (peek().type == Tok::Iri || peek().type == Tok::Pname) return parse_iri_term(q);
    if (peek().type == Tok::Ident && kUnsupported.count(upper(peek().text))) {
      throw UnsupportedFeature(upper(peek().text));
    }
    throw SyntaxError(peek().pos, "subject (variable or IRI)", peek().text);
  }

  Term parse_predicate(const Query& q) {
    if (peek().type == Tok::Ident && peek().text == "a") {
      advance();
      return Term::iri(kRdfType);
    }
    if (peek().type == Tok::Var) throw UnsupportedFeature("variable predicates");
    if (peek().type == Tok::Iri || peek().type == Tok::Pname) return parse_iri_term(q);
    throw SyntaxError(peek().pos, "predicate IRI", peek().text);
  }

  Term parse_object(const Query& q) {
    if (peek().type == Tok::Var) return Term::variable(advance().text);
    if (peek().type == Tok::Iri || peek().type == Tok::Pname) return parse_iri_term(q);
    if (peek().type == Tok::String || peek().type == Tok::Integer) return parse_literal();
    throw SyntaxError(peek().pos, "object term", peek().text);
  }

  TriplePattern parse_triple(const Query& q) {
    TriplePattern p;
    p.subject = parse_subject(q);
    p.predicate = parse_predicate(q);
    p.object = parse_object(q);
    return p;
  }

  FilterOp parse_op() {
    const Token& t = expect(Tok::Op, "comparison operator");
    if (t.text == "=") return FilterOp::EQ;
    if (t.text == "!=") return FilterOp::NEQ;
    if (t.text == "<") return FilterOp::LT;
    if (t.text == ">") return FilterOp::GT;
    if (t.text == "<=") return FilterOp::LEQ;
    if (t.text == ">=") return FilterOp::GEQ;
    throw SyntaxError(t.pos, "comparison operator", t.text);
  }

  FilterExpr parse_contains() {
    expect(Tok::LParen, "'('");
    FilterExpr f;
    f.op = FilterOp::CONTAINS;
    f.variable = expect(Tok::Var, "variable").text;
    expect(Tok::Comma, "','");
    f.constant = Term::literal(expect(Tok::String, "string literal").text);
    expect(Tok::RParen, "')'");
    return f;
  }

  FilterExpr parse_filter(const Query& q) {
    (void)q;
    if (is_keyword("CONTAINS")) {
      advance();
      return parse_contains();
    }
    expect(Tok::LParen, "'('");
    FilterExpr f;
    if (is_keyword("CONTAINS")) {
      advance();
      f = parse_contains();
    } else {
      f.variable = expect(Tok::Var, "variable").text;
      f.op = parse_op();
      f.constant = parse_literal();
    }
    expect(Tok::RParen, "')'");
    return f;
  }

  std::vector<Token> tokens_;
  size_t idx_ = 0;
};

}  // namespace

Query parse_query(const std::string& text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.run();
}

}  // namespace lakefed
