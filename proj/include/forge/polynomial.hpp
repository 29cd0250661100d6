#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "forge/errors.hpp"
#include "forge/field.hpp"
#include "forge/monomial.hpp"

namespace forge {

template <CoefficientField K>
class PolyRing {
 public:
  using Element = typename K::Element;

  PolyRing(std::vector<std::string> variables, K field, MonomialOrder order = MonomialOrder::grevlex)
      : vars_(std::move(variables)), field_(std::move(field)), order_(order) {
    if (vars_.size() > kMaxVariables)
      throw StructuralError("at most " + std::to_string(kMaxVariables) + " variables are supported");
    std::unordered_set<std::string> seen;
    for (const auto& v : vars_) {
      if (v.empty()) throw InputError("empty variable name");
      if (!seen.insert(v).second) throw InputError("duplicate variable name '" + v + "'");
    }
  }

  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  const K& field() const { return field_; }
  MonomialOrder order() const { return order_; }

  std::optional<std::size_t> variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    return compare_monomials(a, b, order_);
  }

  Monomial one() const { return Monomial(vars_.size()); }

  std::string describe() const {
    std::string s = field_.name() + "[";
    for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
    return s + "] " + to_string(order_);
  }

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.vars_ == b.vars_ && a.field_ == b.field_ && a.order_ == b.order_;
  }

 private:
  std::vector<std::string> vars_;
  K field_;
  MonomialOrder order_;
};

template <CoefficientField K>
using RingPtr = std::shared_ptr<const PolyRing<K>>;

template <CoefficientField K>
RingPtr<K> make_ring(std::vector<std::string> vars, K field, MonomialOrder order = MonomialOrder::grevlex) {
  return std::make_shared<const PolyRing<K>>(std::move(vars), std::move(field), order);
}

template <CoefficientField K>
struct Term {
  Monomial mono;
  typename K::Element coeff;
};

// Result of a homogeneity test; the zero polynomial is homogeneous of every degree.
struct HomogeneousDegree {
  enum class Kind { degree, any, not_homogeneous };
  Kind kind = Kind::any;
  int degree = 0;

  bool homogeneous() const { return kind != Kind::not_homogeneous; }
  std::string to_string() const {
    if (kind == Kind::any) return "any";
    if (kind == Kind::not_homogeneous) return "NOT_HOMOGENEOUS";
    return std::to_string(degree);
  }
};

template <CoefficientField K>
class Polynomial {
 public:
  using Element = typename K::Element;

  explicit Polynomial(RingPtr<K> ring) : ring_(std::move(ring)) {
    if (!ring_) throw StructuralError("polynomial without a ring");
  }

  static Polynomial constant(RingPtr<K> ring, const Element& c) {
    Polynomial p(ring);
    if (!ring->field().is_zero(c)) p.terms_.push_back({ring->one(), c});
    return p;
  }
  static Polynomial from_int(RingPtr<K> ring, long c) { return constant(ring, ring->field().from_int(c)); }
  static Polynomial variable(RingPtr<K> ring, std::size_t index) {
    Polynomial p(ring);
    if (index >= ring->nvars()) throw StructuralError("variable index out of range");
    p.terms_.push_back({Monomial::variable(ring->nvars(), index), ring->field().one()});
    return p;
  }
  static Polynomial term(RingPtr<K> ring, const Monomial& m, const Element& c) {
    Polynomial p(ring);
    if (m.nvars() != ring->nvars()) throw StructuralError("monomial length mismatch");
    if (!ring->field().is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  // Builds from arbitrary terms: sorts, merges duplicates and drops zeros.
  static Polynomial from_terms(RingPtr<K> ring, std::vector<Term<K>> terms) {
    Polynomial p(ring);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }
  // Trusted constructor: terms already strictly descending with nonzero coefficients.
  static Polynomial from_sorted_terms(RingPtr<K> ring, std::vector<Term<K>> terms) {
    Polynomial p(ring);
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<K>& ring() const { return ring_; }
  const std::vector<Term<K>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term<K>& leading_term() const {
    if (terms_.empty()) throw DomainError("leading term of zero polynomial");
    return terms_.front();
  }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  // Nonzero constant: a unit of the polynomial ring.
  bool is_unit() const { return terms_.size() == 1 && terms_[0].mono.is_one(); }
  Element constant_coefficient() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return ring_->field().zero();
  }

  HomogeneousDegree homogeneity() const {
    if (terms_.empty()) return {};
    int d = terms_.front().mono.degree();
    for (const auto& t : terms_)
      if (t.mono.degree() != d) return {HomogeneousDegree::Kind::not_homogeneous, 0};
    return {HomogeneousDegree::Kind::degree, d};
  }
  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = ring_->field().neg(t.coeff);
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return a.combine(b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a.combine(b, true); }
  Polynomial& operator+=(const Polynomial& b) { return *this = combine(b, false); }
  Polynomial& operator-=(const Polynomial& b) { return *this = combine(b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same_ring(b);
    const K& k = a.ring_->field();
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
    std::vector<Term<K>> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, k.mul(s.coeff, t.coeff)});
    return from_terms(a.ring_, std::move(out));
  }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial scale(const Element& c) const {
    const K& k = ring_->field();
    if (k.is_zero(c)) return Polynomial(ring_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = k.mul(t.coeff, c);
    return r;
  }
  // Multiplication by c*m keeps the order, so no re-sort is needed.
  Polynomial mul_term(const Monomial& m, const Element& c) const {
    const K& k = ring_->field();
    Polynomial r(ring_);
    if (k.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, k.mul(t.coeff, c)});
    return r;
  }
  Polynomial pow(unsigned e) const {
    Polynomial result = from_int(ring_, 1), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }
  Polynomial monic() const {
    if (terms_.empty()) return *this;
    return scale(ring_->field().inv(terms_.front().coeff));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!(*a.ring_ == *b.ring_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    const K& k = a.ring_->field();
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !k.equal(a.terms_[i].coeff, b.terms_[i].coeff)) return false;
    return true;
  }

  // Canonical text: terms descending, explicit '*' between factors.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    const K& k = ring_->field();
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      std::string c = k.to_string(t.coeff);
      bool negative = !c.empty() && c[0] == '-';
      if (negative) c.erase(0, 1);
      if (i == 0)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      if (t.mono.is_one()) {
        out += c;
      } else {
        if (c != "1") out += c + "*";
        out += t.mono.to_string(ring_->variables());
      }
    }
    return out;
  }

  void check_same_ring(const Polynomial& b) const {
    if (ring_ != b.ring_ && !(*ring_ == *b.ring_)) throw StructuralError("ring mismatch");
  }

 private:
  Polynomial combine(const Polynomial& b, bool subtract) const {
    check_same_ring(b);
    const K& k = ring_->field();
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      if (i == terms_.size()) {
        r.terms_.push_back({b.terms_[j].mono, subtract ? k.neg(b.terms_[j].coeff) : b.terms_[j].coeff});
        ++j;
        continue;
      }
      auto c = ring_->compare(terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back({b.terms_[j].mono, subtract ? k.neg(b.terms_[j].coeff) : b.terms_[j].coeff});
        ++j;
      } else {
        auto s = subtract ? k.sub(terms_[i].coeff, b.terms_[j].coeff) : k.add(terms_[i].coeff, b.terms_[j].coeff);
        if (!k.is_zero(s)) r.terms_.push_back({terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void normalize() {
    const K& k = ring_->field();
    for (const auto& t : terms_)
      if (t.mono.nvars() != ring_->nvars()) throw StructuralError("monomial length mismatch");
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term<K>& a, const Term<K>& b) { return ring_->compare(a.mono, b.mono) > 0; });
    std::vector<Term<K>> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().mono == t.mono)
        merged.back().coeff = k.add(merged.back().coeff, t.coeff);
      else
        merged.push_back(std::move(t));
      if (k.is_zero(merged.back().coeff)) merged.pop_back();
    }
    terms_ = std::move(merged);
  }

  RingPtr<K> ring_;
  std::vector<Term<K>> terms_;
};

template <CoefficientField K>
std::ostream& operator<<(std::ostream& os, const Polynomial<K>& p) {
  return os << p.to_string();
}

}  // namespace forge
