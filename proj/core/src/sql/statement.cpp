#include "lakefed/sql/statement.hpp"

#include <cctype>
#include <sstream>

#include "lakefed/error.hpp"

namespace lakefed {

namespace {

std::string quote_text(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "''";
    else out += c;
  }
  out += "'";
  return out;
}

std::string literal_to_sql(const Value& v) {
  return is_int(v) ? std::to_string(std::get<int64_t>(v)) : quote_text(std::get<std::string>(v));
}

std::string col_to_sql(const QualifiedColumn& c) { return c.alias + "." + c.column; }

std::string op_to_sql(FilterOp op) {
  switch (op) {
    case FilterOp::EQ: return "=";
    case FilterOp::NEQ: return "<>";
    case FilterOp::LT: return "<";
    case FilterOp::GT: return ">";
    case FilterOp::LEQ: return "<=";
    case FilterOp::GEQ: return ">=";
    case FilterOp::CONTAINS: return "CONTAINS";
  }
  return "?";
}

}  // namespace

std::string sql_to_string(const SqlStatement& s) {
  std::ostringstream out;
  out << "SELECT ";
  if (s.distinct) out << "DISTINCT ";
  for (size_t i = 0; i < s.select.size(); ++i) {
    if (i) out << ", ";
    out << col_to_sql(s.select[i].column) << " AS " << s.select[i].name;
  }
  out << " FROM " << s.from.table << " " << s.from.alias;
  for (const auto& j : s.joins) {
    out << " INNER JOIN " << j.table.table << " " << j.table.alias << " ON "
        << col_to_sql(j.left) << " = " << col_to_sql(j.right);
  }
  for (size_t i = 0; i < s.where.size(); ++i) {
    out << (i == 0 ? " WHERE " : " AND ");
    const auto& w = s.where[i];
    switch (w.kind) {
      case SqlCondition::Kind::Compare:
        out << col_to_sql(w.column) << " " << op_to_sql(w.op) << " " << literal_to_sql(w.literal);
        break;
      case SqlCondition::Kind::ColumnEq:
        out << col_to_sql(w.column) << " = " << col_to_sql(w.other);
        break;
      case SqlCondition::Kind::Contains:
        out << "CONTAINS(" << col_to_sql(w.column) << ", " << literal_to_sql(w.literal) << ")";
        break;
    }
  }
  return out.str();
}

namespace {

enum class SqlTok { Ident, String, Integer, Symbol, End };

struct SqlToken {
  SqlTok type;
  std::string text;
  size_t pos;
};

class SqlLexer {
 public:
  explicit SqlLexer(const std::string& text) : text_(text) {}

  std::vector<SqlToken> run() {
    std::vector<SqlToken> out;
    while (true) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      size_t start = pos_;
      if (pos_ >= text_.size()) {
        out.push_back({SqlTok::End, "", start});
        return out;
      }
      char c = text_[pos_];
      if (c == '\'') {
        ++pos_;
        std::string s;
        while (pos_ < text_.size()) {
          if (text_[pos_] == '\'') {
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
              s += '\'';
              pos_ += 2;
              continue;
            }
            break;
          }
          s += text_[pos_++];
        }
        if (pos_ >= text_.size()) throw DialectError("unterminated string literal");
        ++pos_;
        out.push_back({SqlTok::String, s, start});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '-' && pos_ + 1 < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        size_t begin = pos_;
        if (c == '-') ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        out.push_back({SqlTok::Integer, text_.substr(begin, pos_ - begin), start});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t begin = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          ++pos_;
        }
        out.push_back({SqlTok::Ident, text_.substr(begin, pos_ - begin), start});
        continue;
      }
      if (c == '<') {
        if (pos_ + 1 < text_.size() && (text_[pos_ + 1] == '=' || text_[pos_ + 1] == '>')) {
          out.push_back({SqlTok::Symbol, text_.substr(pos_, 2), start});
          pos_ += 2;
          continue;
        }
        out.push_back({SqlTok::Symbol, "<", start});
        ++pos_;
        continue;
      }
      if (c == '>') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          out.push_back({SqlTok::Symbol, ">=", start});
          pos_ += 2;
          continue;
        }
        out.push_back({SqlTok::Symbol, ">", start});
        ++pos_;
        continue;
      }
      if (c == '=' || c == ',' || c == '(' || c == ')' || c == '.') {
        out.push_back({SqlTok::Symbol, std::string(1, c), start});
        ++pos_;
        continue;
      }
      throw DialectError("unexpected character '" + std::string(1, c) + "' at offset " +
                         std::to_string(pos_));
    }
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
};

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

class SqlParser {
 public:
  explicit SqlParser(std::vector<SqlToken> tokens) : tokens_(std::move(tokens)) {}

  SqlStatement run() {
    SqlStatement s;
    expect_kw("SELECT");
    if (is_kw("DISTINCT")) {
      advance();
      s.distinct = true;
    }
    s.select.push_back(parse_select_item());
    while (is_symbol(",")) {
      advance();
      s.select.push_back(parse_select_item());
    }
    expect_kw("FROM");
    s.from = parse_table_ref();
    while (is_kw("INNER")) {
      advance();
      expect_kw("JOIN");
      JoinClause j;
      j.table = parse_table_ref();
      expect_kw("ON");
      j.left = parse_column();
      expect_symbol("=");
      j.right = parse_column();
      s.joins.push_back(std::move(j));
    }
    if (is_kw("WHERE")) {
      advance();
      s.where.push_back(parse_condition());
      while (is_kw("AND")) {
        advance();
        s.where.push_back(parse_condition());
      }
    }
    if (peek().type != SqlTok::End) {
      throw DialectError("trailing input at offset " + std::to_string(peek().pos) + ": '" +
                         peek().text + "'");
    }
    return s;
  }

 private:
  const SqlToken& peek() const { return tokens_[idx_]; }
  const SqlToken& advance() { return tokens_[idx_++]; }
  bool is_symbol(const char* sym) const {
    return peek().type == SqlTok::Symbol && peek().text == sym;
  }
  bool is_kw(const char* kw) const {
    return peek().type == SqlTok::Ident && upper(peek().text) == kw;
  }
  void expect_kw(const char* kw) {
    if (!is_kw(kw)) throw DialectError(std::string("expected ") + kw + ", got '" + peek().text + "'");
    advance();
  }
  void expect_symbol(const char* sym) {
    if (!is_symbol(sym)) {
      throw DialectError(std::string("expected '") + sym + "', got '" + peek().text + "'");
    }
    advance();
  }
  std::string expect_ident() {
    if (peek().type != SqlTok::Ident) throw DialectError("expected identifier, got '" + peek().text + "'");
    return advance().text;
  }

  QualifiedColumn parse_column() {
    QualifiedColumn c;
    c.alias = expect_ident();
    expect_symbol(".");
    c.column = expect_ident();
    return c;
  }

  SelectItem parse_select_item() {
    SelectItem item;
    item.column = parse_column();
    expect_kw("AS");
    item.name = expect_ident();
    return item;
  }

  TableRef parse_table_ref() {
    TableRef t;
    t.table = expect_ident();
    t.alias = expect_ident();
    return t;
  }

  Value parse_literal() {
    if (peek().type == SqlTok::Integer) return Value{static_cast<int64_t>(std::stoll(advance().text))};
    if (peek().type == SqlTok::String) return Value{advance().text};
    throw DialectError("expected literal, got '" + peek().text + "'");
  }

  SqlCondition parse_condition() {
    SqlCondition cond;
    if (is_kw("CONTAINS")) {
      advance();
      expect_symbol("(");
      cond.kind = SqlCondition::Kind::Contains;
      cond.column = parse_column();
      expect_symbol(",");
      cond.literal = parse_literal();
      if (!is_text(cond.literal)) throw DialectError("CONTAINS needs a text literal");
      expect_symbol(")");
      return cond;
    }
    cond.column = parse_column();
    if (peek().type != SqlTok::Symbol) {
      throw DialectError("expected comparison operator, got '" + peek().text + "'");
    }
    const std::string op = advance().text;
    if (op == "=" && peek().type == SqlTok::Ident) {
      cond.kind = SqlCondition::Kind::ColumnEq;
      cond.other = parse_column();
      return cond;
    }
    cond.kind = SqlCondition::Kind::Compare;
    if (op == "=") cond.op = FilterOp::EQ;
    else if (op == "<>") cond.op = FilterOp::NEQ;
    else if (op == "<") cond.op = FilterOp::LT;
    else if (op == ">") cond.op = FilterOp::GT;
    else if (op == "<=") cond.op = FilterOp::LEQ;
    else if (op == ">=") cond.op = FilterOp::GEQ;
    else throw DialectError("unknown operator '" + op + "'");
    cond.literal = parse_literal();
    return cond;
  }

  std::vector<SqlToken> tokens_;
  size_t idx_ = 0;
};

}  // namespace

SqlStatement parse_sql(const std::string& text) {
  SqlLexer lexer(text);
  SqlParser parser(lexer.run());
  return parser.run();
}

}  // namespace lakefed
