#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "unitgroup/error.hpp"

namespace unitgroup::detail {

struct Token {
  enum Kind { Number, Ident, Op, End } kind;
  std::string text;
  size_t pos;
};

inline std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Number, s.substr(i, j - i), i});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), i});
      i = j;
    } else if (std::string("+-*/^()").find(c) != std::string::npos) {
      out.push_back({Token::Op, std::string(1, c), i});
      ++i;
    } else {
      fail(ErrorCode::ParseError, "unexpected character '" + std::string(1, c) + "' at " + std::to_string(i) +
                                      " in \"" + s + "\"");
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

/// Recursive-descent expression parser over any ring-like value type. The
/// callbacks supply numbers and identifiers; exponents may be negative only if
/// the power callback accepts them.
template <class V, class Callbacks>
class ExprParser {
 public:
  ExprParser(const std::string& text, Callbacks& cb) : text_(text), toks_(tokenize(text)), cb_(cb) {}

  V parse() {
    V v = expr();
    if (peek().kind != Token::End) error("trailing input");
    return v;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  bool is_op(const char* op) const { return peek().kind == Token::Op && peek().text == op; }
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::ParseError, msg + " at " + std::to_string(peek().pos) + " in \"" + text_ + "\"");
  }

  V expr() {
    V acc = cb_.zero();
    bool first = true;
    while (true) {
      bool neg = false;
      if (is_op("+") || is_op("-")) {
        neg = peek().text == "-";
        ++i_;
      } else if (!first) {
        break;
      }
      V t = term();
      if (neg) acc = acc - t;
      else acc = acc + t;
      first = false;
      if (!is_op("+") && !is_op("-")) break;
    }
    return acc;
  }

  V term() {
    V acc = power();
    while (is_op("*") || is_op("/")) {
      bool div = peek().text == "/";
      ++i_;
      V f = power();
      acc = div ? cb_.divide(acc, f) : acc * f;
    }
    return acc;
  }

  V power() {
    V base = atom();
    if (is_op("^")) {
      ++i_;
      bool neg = false;
      if (is_op("-")) {
        neg = true;
        ++i_;
      } else if (is_op("+")) {
        ++i_;
      }
      if (peek().kind != Token::Number) error("expected integer exponent");
      long e = std::stol(peek().text);
      ++i_;
      return cb_.power(base, neg ? -e : e);
    }
    return base;
  }

  V atom() {
    const Token& t = peek();
    if (t.kind == Token::Number) {
      ++i_;
      return cb_.number(t.text);
    }
    if (t.kind == Token::Ident) {
      ++i_;
      return cb_.ident(t.text);
    }
    if (is_op("(")) {
      ++i_;
      V v = expr();
      if (!is_op(")")) error("expected ')'");
      ++i_;
      return v;
    }
    error("unexpected token");
  }

  const std::string& text_;
  std::vector<Token> toks_;
  size_t i_ = 0;
  Callbacks& cb_;
};

}  // namespace unitgroup::detail
