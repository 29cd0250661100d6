#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

inline constexpr std::size_t kMaxVariables = 16;

enum class MonomialOrder { grevlex, lex, graded_lex };

inline std::string to_string(MonomialOrder o) {
  switch (o) {
    case MonomialOrder::grevlex: return "grevlex";
    case MonomialOrder::lex: return "lex";
    case MonomialOrder::graded_lex: return "graded_lex";
  }
  return "?";
}

inline MonomialOrder parse_order(const std::string& s) {
  if (s == "grevlex") return MonomialOrder::grevlex;
  if (s == "lex") return MonomialOrder::lex;
  if (s == "graded_lex" || s == "glex" || s == "deglex") return MonomialOrder::graded_lex;
  throw InputError("unknown monomial order '" + s + "'");
}

// Exponent vector stored inline; unused slots stay zero, so comparisons and
// divisibility never need to know the variable count.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVariables)
      throw StructuralError("at most " + std::to_string(kMaxVariables) + " variables are supported");
  }

  static Monomial from_exponents(std::span<const int> exps) {
    Monomial m(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] < 0 || exps[i] > 0xFFFF) throw StructuralError("exponent out of range");
      m.exp_[i] = static_cast<std::uint16_t>(exps[i]);
      m.degree_ += static_cast<std::uint32_t>(exps[i]);
    }
    return m;
  }
  static Monomial variable(std::size_t nvars, std::size_t index, int power = 1) {
    Monomial m(nvars);
    m.exp_.at(index) = static_cast<std::uint16_t>(power);
    m.degree_ = static_cast<std::uint32_t>(power);
    return m;
  }

  std::size_t nvars() const { return nvars_; }
  int degree() const { return static_cast<int>(degree_); }
  int operator[](std::size_t i) const { return exp_[i]; }
  bool is_one() const { return degree_ == 0; }

  std::vector<int> exponents() const { return {exp_.begin(), exp_.begin() + nvars_}; }

  // Bit i is set when variable i occurs; a cheap necessary test for divisibility.
  std::uint32_t support_mask() const {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exp_[i]) mask |= 1u << i;
    return mask;
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exp_[i] > other.exp_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      unsigned s = static_cast<unsigned>(a.exp_[i]) + b.exp_[i];
      if (s > 0xFFFF) throw StructuralError("exponent overflow");
      r.exp_[i] = static_cast<std::uint16_t>(s);
    }
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  // Exact quotient; the caller guarantees b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < kMaxVariables; ++i) r.exp_[i] = static_cast<std::uint16_t>(a.exp_[i] - b.exp_[i]);
    r.degree_ = a.degree_ - b.degree_;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      r.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
      r.degree_ += r.exp_[i];
    }
    return r;
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (a.exp_[i] && b.exp_[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp_ == b.exp_; }

  std::string to_string(const std::vector<std::string>& names) const {
    std::string out;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!exp_[i]) continue;
      if (!out.empty()) out += '*';
      out += names[i];
      if (exp_[i] > 1) out += '^' + std::to_string(exp_[i]);
    }
    return out.empty() ? "1" : out;
  }

 private:
  friend std::strong_ordering compare_monomials(const Monomial&, const Monomial&, MonomialOrder);

  std::array<std::uint16_t, kMaxVariables> exp_{};
  std::uint32_t degree_ = 0;
  std::uint8_t nvars_ = 0;
};

// Throws StructuralError when the operands come from rings of different size.
inline std::strong_ordering compare_monomials(const Monomial& a, const Monomial& b, MonomialOrder order) {
  if (a.nvars_ != b.nvars_) throw StructuralError("monomial length mismatch");
  if (order != MonomialOrder::lex && a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  if (order == MonomialOrder::grevlex) {
    // reverse lexicographic: the smaller exponent in the last differing variable wins
    for (std::size_t i = a.nvars_; i-- > 0;)
      if (a.exp_[i] != b.exp_[i]) return b.exp_[i] <=> a.exp_[i];
    return std::strong_ordering::equal;
  }
  for (std::size_t i = 0; i < a.nvars_; ++i)
    if (a.exp_[i] != b.exp_[i]) return a.exp_[i] <=> b.exp_[i];
  return std::strong_ordering::equal;
}

// All monomials of total degree d in n variables, in descending lex order.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (n == 0) {
      if (left == 0) out.push_back(Monomial(0));
      return;
    }
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

}  // namespace forge
