#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "forge/errors.hpp"
#include "forge/polynomial.hpp"

namespace forge {

// Input error carrying a 1-based column inside the parsed text.
class ParseError : public InputError {
 public:
  ParseError(std::size_t column, const std::string& what)
      : InputError("column " + std::to_string(column) + ": " + what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Recursive descent over  expr := [+-] term {(+|-) term},
// term := factor {[*|/] factor}, factor := primary [^ int],
// primary := number | variable | ( expr ).
// An identifier that is not a variable is split greedily into variable names,
// so "xy^2" reads as x*y^2 when x and y are variables.
template <CoefficientField K>
class PolynomialParser {
 public:
  PolynomialParser(RingPtr<K> ring, std::string_view text) : ring_(std::move(ring)), text_(text) {}

  Polynomial<K> parse() {
    skip_space();
    if (pos_ >= text_.size()) fail("empty polynomial");
    Polynomial<K> p = expr();
    skip_space();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_ + 1, what); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool starts_primary() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Polynomial<K> expr() {
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    Polynomial<K> acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial<K> term() {
    Polynomial<K> acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc *= factor();
      } else if (peek('/')) {
        ++pos_;
        Polynomial<K> d = factor();
        if (!d.is_unit()) fail("division is only allowed by nonzero constants");
        acc = acc.scale(ring_->field().inv(d.leading_term().coeff));
      } else if (starts_primary()) {
        acc *= factor();
      } else {
        return acc;
      }
    }
  }

  Polynomial<K> factor() {
    Polynomial<K> base = primary();
    if (peek('^')) {
      ++pos_;
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 10000) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial<K> primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial<K> inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial<K>::constant(ring_, parse_coefficient(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (auto idx = ring_->variable_index(name)) return Polynomial<K>::variable(ring_, *idx);
      // consume only the longest variable prefix; the rest is read as an implicit product
      std::size_t best = 0, best_index = 0;
      for (std::size_t v = 0; v < ring_->nvars(); ++v) {
        const auto& var = ring_->variables()[v];
        if (var.size() > best && name.compare(0, var.size(), var) == 0) {
          best = var.size();
          best_index = v;
        }
      }
      if (best == 0 || !prefix_splits(name)) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      pos_ = start + best;
      return Polynomial<K>::variable(ring_, best_index);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  // True when the identifier is a concatenation of variable names (greedy).
  bool prefix_splits(const std::string& name) const {
    std::size_t i = 0;
    while (i < name.size()) {
      std::size_t best = 0;
      for (const auto& var : ring_->variables())
        if (var.size() > best && name.compare(i, var.size(), var) == 0) best = var.size();
      if (best == 0) return false;
      i += best;
    }
    return true;
  }

  typename K::Element parse_coefficient(const std::string& digits) {
    try {
      return ring_->field().parse(digits);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  RingPtr<K> ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

template <CoefficientField K>
Polynomial<K> parse_polynomial(const RingPtr<K>& ring, std::string_view text) {
  return PolynomialParser<K>(ring, text).parse();
}

}  // namespace forge
