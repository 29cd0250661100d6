#pragma once

#include <string>
#include <vector>

#include "forge/groebner.hpp"

namespace forge {

// The ring R/I for a homogeneous ideal I of R. No new arithmetic is built:
// module computations over R/I adjoin I·e_j to every submodule of R^n.
template <CoefficientField K>
class QuotientRing {
 public:
  explicit QuotientRing(RingPtr<K> ring) : ring_(std::move(ring)), reducer_(ring_, FreeModule::free(1)) {}
  QuotientRing(RingPtr<K> ring, std::vector<Polynomial<K>> ideal)
      : ring_(std::move(ring)), reducer_(ring_, FreeModule::free(1)) {
    for (auto& g : ideal) {
      if (!g.homogeneity().homogeneous()) throw InhomogeneousError("ideal generator " + g.to_string());
      g.check_same_ring(Polynomial<K>(ring_));
      if (!g.is_zero()) generators_.push_back(std::move(g));
    }
    if (!generators_.empty()) gb_ = ideal_groebner_basis(ring_, generators_);
    if (gb_.size() == 1 && gb_[0].is_unit()) throw DomainError("quotient by the unit ideal");
    for (auto& v : background(FreeModule::free(1))) reducer_.push(make_monic(*ring_, std::move(v)));
  }

  const RingPtr<K>& ring() const { return ring_; }
  const std::vector<Polynomial<K>>& generators() const { return generators_; }
  const std::vector<Polynomial<K>>& groebner_basis() const { return gb_; }
  bool is_polynomial_ring() const { return gb_.empty(); }

  QuotientRing extended(const std::vector<Polynomial<K>>& more) const {
    auto gens = generators_;
    gens.insert(gens.end(), more.begin(), more.end());
    return QuotientRing(ring_, gens);
  }

  Polynomial<K> reduce(const Polynomial<K>& f) const {
    if (gb_.empty() || f.is_zero()) return f;
    return from_sparse(ring_, reducer_.reduce(to_sparse<K>({f})), 1)[0];
  }
  VectorElement<K> reduce(const VectorElement<K>& v) const {
    if (gb_.empty()) return v;
    VectorElement<K> out;
    out.reserve(v.size());
    for (const auto& f : v) out.push_back(reduce(f));
    return out;
  }
  ModuleMap<K> reduce(const ModuleMap<K>& A) const {
    if (gb_.empty()) return A;
    std::vector<VectorElement<K>> cols;
    for (const auto& c : A.columns()) cols.push_back(reduce(c));
    return ModuleMap<K>(A.ring(), A.source(), A.target(), std::move(cols));
  }
  bool is_zero(const Polynomial<K>& f) const { return reduce(f).is_zero(); }
  bool is_zero(const VectorElement<K>& v) const {
    for (const auto& f : v)
      if (!is_zero(f)) return false;
    return true;
  }
  bool is_zero(const ModuleMap<K>& A) const {
    for (const auto& c : A.columns())
      if (!is_zero(c)) return false;
    return true;
  }

  // The generators I·e_j of I·F, as sparse vectors starting at component `offset`.
  std::vector<SparseVector<K>> background(const FreeModule& F, std::uint32_t offset = 0) const {
    std::vector<SparseVector<K>> out;
    for (std::size_t j = 0; j < F.rank(); ++j)
      for (const auto& g : gb_) {
        SparseVector<K> v;
        for (const auto& t : g.terms()) v.push_back({static_cast<std::uint32_t>(j + offset), t.mono, t.coeff});
        out.push_back(std::move(v));
      }
    return out;
  }

  std::string describe() const {
    std::string s = ring_->describe();
    if (!generators_.empty()) {
      s += " / (";
      for (std::size_t i = 0; i < generators_.size(); ++i) s += (i ? ", " : "") + generators_[i].to_string();
      s += ")";
    }
    return s;
  }

 private:
  RingPtr<K> ring_;
  std::vector<Polynomial<K>> generators_;
  std::vector<Polynomial<K>> gb_;
  ReductionSet<K> reducer_;
};

}  // namespace forge
