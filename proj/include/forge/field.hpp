#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>

#include "forge/errors.hpp"

namespace forge {

// Coefficient fields are small value objects; elements are plain values and
// every operation goes through the field so that F_p can carry its modulus.
template <class K>
concept CoefficientField = requires(const K& k, const typename K::Element& a, long v) {
  { k.zero() } -> std::same_as<typename K::Element>;
  { k.one() } -> std::same_as<typename K::Element>;
  { k.from_int(v) } -> std::same_as<typename K::Element>;
  { k.add(a, a) } -> std::same_as<typename K::Element>;
  { k.sub(a, a) } -> std::same_as<typename K::Element>;
  { k.mul(a, a) } -> std::same_as<typename K::Element>;
  { k.div(a, a) } -> std::same_as<typename K::Element>;
  { k.neg(a) } -> std::same_as<typename K::Element>;
  { k.inv(a) } -> std::same_as<typename K::Element>;
  { k.is_zero(a) } -> std::same_as<bool>;
  { k.is_one(a) } -> std::same_as<bool>;
  { k.equal(a, a) } -> std::same_as<bool>;
  { k.to_string(a) } -> std::same_as<std::string>;
  { k.name() } -> std::same_as<std::string>;
  { k.characteristic() } -> std::same_as<std::uint32_t>;
};

class Rationals {
 public:
  using Element = mpq_class;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long v) const { return Element(v); }

  // Accepts "p" or "p/q" with optional sign; the result is canonicalized.
  Element parse(const std::string& text) const {
    Element r;
    if (r.set_str(text, 10) != 0) throw InputError("malformed rational '" + text + "'");
    if (r.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
  }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element div(const Element& a, const Element& b) const {
    if (sgn(b) == 0) throw DomainError("division by zero");
    return a / b;
  }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw DomainError("inverse of zero");
    return 1 / a;
  }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::string to_string(const Element& a) const { return a.get_str(); }
  std::string name() const { return "QQ"; }
  std::uint32_t characteristic() const { return 0; }

  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p))
      throw InputError("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
  }

  std::uint32_t modulus() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long v) const {
    long r = v % static_cast<long>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }
  Element from_mpz(const mpz_class& z) const {
    mpz_class r = z % p_;
    if (r < 0) r += p_;
    return static_cast<Element>(r.get_ui());
  }
  // Reduction of a rational requires the denominator to be a unit mod p.
  Element parse(const std::string& text) const {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw InputError("malformed coefficient '" + text + "'");
    q.canonicalize();
    Element den = from_mpz(q.get_den());
    if (den == 0) throw DomainError("denominator divisible by " + std::to_string(p_));
    return mul(from_mpz(q.get_num()), inv(den));
  }

  Element add(Element a, Element b) const {
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<Element>(s >= p_ ? s - p_ : s);
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + (p_ - b); }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const {
    if (a == 0) throw DomainError("inverse of zero");
    // extended Euclid on signed 64-bit values
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Element>(t);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }
  bool equal(Element a, Element b) const { return a == b; }
  std::string to_string(Element a) const { return std::to_string(a); }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }
  std::uint32_t characteristic() const { return p_; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  static bool is_prime(std::uint32_t n) {
    if (n < 4) return n >= 2;
    if (n % 2 == 0) return false;
    for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }

  std::uint32_t p_;
};

static_assert(CoefficientField<Rationals>);
static_assert(CoefficientField<PrimeField>);

}  // namespace forge
