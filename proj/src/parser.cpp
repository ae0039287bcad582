#include <cctype>

#include "ctlev/formula.hpp"

namespace ctlev {

ParseError::ParseError(const std::string& message, int line, int column, std::string token)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
            (token.empty() ? std::string(" at end of input") : " at '" + token + "'")),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

namespace {

enum class Tok { Ident, Not, And, Or, LParen, RParen, LBracket, RBracket, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
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
    const int l = line;
    const int cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "&&") {
      out.push_back({Tok::And, "&&", l, cl});
      advance(2);
      continue;
    }
    if (two == "||") {
      out.push_back({Tok::Or, "||", l, cl});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case '!': kind = Tok::Not; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      default:
        throw ParseError("unexpected character", l, cl, std::string(1, c));
    }
    out.push_back({kind, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_prefix_op(const std::string& s, Op& op) {
  static const std::pair<const char*, Op> table[] = {
      {"EX", Op::EX}, {"AX", Op::AX}, {"EF", Op::EF},
      {"AF", Op::AF}, {"EG", Op::EG}, {"AG", Op::AG},
  };
  for (const auto& [name, o] : table) {
    if (s == name) {
      op = o;
      return true;
    }
  }
  return false;
}

bool is_reserved(const std::string& s) {
  Op ignored;
  return s == "true" || s == "false" || s == "U" || is_prefix_op(s, ignored);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse() {
    Formula f = disj();
    if (peek().kind != Tok::End) fail("unexpected token");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg, t.line, t.column, t.text);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    next();
  }

  Formula disj() {
    Formula lhs = conj();
    while (peek().kind == Tok::Or) {
      next();
      lhs = Formula::disj(lhs, conj());
    }
    return lhs;
  }

  Formula conj() {
    Formula lhs = unary();
    while (peek().kind == Tok::And) {
      next();
      lhs = Formula::conj(lhs, unary());
    }
    return lhs;
  }

  Formula unary() {
    const Token& t = peek();
    if (t.kind == Tok::Not) {
      next();
      return Formula::negation(unary());
    }
    Op op;
    if (t.kind == Tok::Ident && is_prefix_op(t.text, op)) {
      next();
      return Formula::unary(op, unary());
    }
    return atom();
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        next();
        Formula f = disj();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: {
        if ((t.text == "E" || t.text == "A") && peek(1).kind == Tok::LBracket) {
          const Op op = t.text == "E" ? Op::EU : Op::AU;
          next();
          next();
          Formula lhs = disj();
          if (peek().kind != Tok::Ident || peek().text != "U") fail("expected 'U'");
          next();
          Formula rhs = disj();
          expect(Tok::RBracket, "']'");
          return Formula::until(op, lhs, rhs);
        }
        if (t.text == "true") {
          next();
          return Formula::truth();
        }
        if (t.text == "false") {
          next();
          return Formula::falsity();
        }
        if (is_reserved(t.text)) fail("reserved word cannot be used as a proposition");
        Formula f = Formula::prop(t.text);
        next();
        return f;
      }
      case Tok::End:
        fail("missing operand");
      default:
        fail("unexpected token");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse(); }

}  // namespace ctlev
