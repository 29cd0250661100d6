#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "forge/errors.hpp"
#include "forge/polynomial.hpp"

namespace forge {

// Graded free module with basis vectors e_j of degree degrees[j]; R(-a) has degrees {a}.
struct FreeModule {
  std::vector<int> degrees;

  FreeModule() = default;
  explicit FreeModule(std::vector<int> d) : degrees(std::move(d)) {}
  static FreeModule free(std::size_t rank, int degree = 0) { return FreeModule(std::vector<int>(rank, degree)); }

  std::size_t rank() const { return degrees.size(); }
  int degree(std::size_t j) const { return degrees.at(j); }

  FreeModule shifted(int s) const {
    FreeModule r = *this;
    for (int& d : r.degrees) d += s;
    return r;
  }
  FreeModule dual() const {
    FreeModule r = *this;
    for (int& d : r.degrees) d = -d;
    return r;
  }
  friend FreeModule operator+(const FreeModule& a, const FreeModule& b) {
    FreeModule r = a;
    r.degrees.insert(r.degrees.end(), b.degrees.begin(), b.degrees.end());
    return r;
  }
  friend bool operator==(const FreeModule&, const FreeModule&) = default;
};

template <CoefficientField K>
using VectorElement = std::vector<Polynomial<K>>;

template <CoefficientField K>
VectorElement<K> zero_vector(const RingPtr<K>& ring, std::size_t n) {
  return VectorElement<K>(n, Polynomial<K>(ring));
}

template <CoefficientField K>
bool is_zero(const VectorElement<K>& v) {
  return std::all_of(v.begin(), v.end(), [](const Polynomial<K>& p) { return p.is_zero(); });
}

// Degree of v as an element of F, or nullopt for the zero vector. Throws on inhomogeneous input.
template <CoefficientField K>
std::optional<int> vector_degree(const VectorElement<K>& v, const FreeModule& F) {
  if (v.size() != F.rank()) throw StructuralError("vector length does not match module rank");
  std::optional<int> deg;
  for (std::size_t j = 0; j < v.size(); ++j) {
    auto h = v[j].homogeneity();
    if (!h.homogeneous()) throw InhomogeneousError("inhomogeneous entry " + v[j].to_string());
    if (h.kind == HomogeneousDegree::Kind::any) continue;
    int d = h.degree + F.degree(j);
    if (deg && *deg != d) throw InhomogeneousError("vector entries have inconsistent degrees");
    deg = d;
  }
  return deg;
}

// Graded matrix: column j is the image of the j-th source basis vector.
template <CoefficientField K>
class ModuleMap {
 public:
  ModuleMap(RingPtr<K> ring, FreeModule source, FreeModule target, std::vector<VectorElement<K>> columns)
      : ring_(std::move(ring)), source_(std::move(source)), target_(std::move(target)), columns_(std::move(columns)) {
    if (columns_.size() != source_.rank()) throw StructuralError("column count does not match source rank");
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      auto d = vector_degree(columns_[j], target_);
      if (d && *d != source_.degree(j))
        throw InhomogeneousError("column " + std::to_string(j) + " has degree " + std::to_string(*d) +
                                 " but its source basis vector has degree " + std::to_string(source_.degree(j)));
    }
  }

  static ModuleMap zero(RingPtr<K> ring, FreeModule source, FreeModule target) {
    std::vector<VectorElement<K>> cols(source.rank(), zero_vector(ring, target.rank()));
    return ModuleMap(ring, std::move(source), std::move(target), std::move(cols));
  }
  static ModuleMap identity(RingPtr<K> ring, const FreeModule& F) {
    std::vector<VectorElement<K>> cols;
    for (std::size_t j = 0; j < F.rank(); ++j) {
      auto v = zero_vector(ring, F.rank());
      v[j] = Polynomial<K>::from_int(ring, 1);
      cols.push_back(std::move(v));
    }
    return ModuleMap(ring, F, F, std::move(cols));
  }
  // Source degrees are read off from the columns; zero columns take `zero_degree`.
  static ModuleMap from_columns(RingPtr<K> ring, FreeModule target, std::vector<VectorElement<K>> columns,
                                int zero_degree = 0) {
    std::vector<int> degs;
    for (const auto& c : columns) degs.push_back(vector_degree(c, target).value_or(zero_degree));
    return ModuleMap(ring, FreeModule(std::move(degs)), std::move(target), std::move(columns));
  }

  const RingPtr<K>& ring() const { return ring_; }
  const FreeModule& source() const { return source_; }
  const FreeModule& target() const { return target_; }
  const std::vector<VectorElement<K>>& columns() const { return columns_; }
  const VectorElement<K>& column(std::size_t j) const { return columns_.at(j); }
  const Polynomial<K>& entry(std::size_t row, std::size_t col) const { return columns_.at(col).at(row); }
  std::size_t rows() const { return target_.rank(); }
  std::size_t cols() const { return source_.rank(); }

  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return forge::is_zero<K>(c); });
  }

  VectorElement<K> apply(const VectorElement<K>& v) const {
    if (v.size() != cols()) throw StructuralError("apply: vector length does not match source rank");
    auto out = zero_vector(ring_, rows());
    for (std::size_t j = 0; j < cols(); ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t i = 0; i < rows(); ++i)
        if (!columns_[j][i].is_zero()) out[i] += columns_[j][i] * v[j];
    }
    return out;
  }

  // this ∘ other
  ModuleMap compose(const ModuleMap& other) const {
    if (!(other.target_ == source_)) throw StructuralError("compose: modules do not match");
    std::vector<VectorElement<K>> cols;
    cols.reserve(other.cols());
    for (const auto& c : other.columns_) cols.push_back(apply(c));
    return ModuleMap(ring_, other.source_, target_, std::move(cols));
  }

  // Hom(-, R): the dual map target* -> source* with negated degrees.
  ModuleMap transpose() const {
    std::vector<VectorElement<K>> cols;
    for (std::size_t i = 0; i < rows(); ++i) {
      VectorElement<K> c;
      for (std::size_t j = 0; j < this->cols(); ++j) c.push_back(columns_[j][i]);
      cols.push_back(std::move(c));
    }
    return ModuleMap(ring_, target_.dual(), source_.dual(), std::move(cols));
  }

  ModuleMap scaled(const typename K::Element& c) const {
    ModuleMap r = *this;
    for (auto& col : r.columns_)
      for (auto& e : col) e = e.scale(c);
    return r;
  }
  ModuleMap operator-() const { return scaled(ring_->field().neg(ring_->field().one())); }
  friend ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) { return a.combine(b, false); }
  friend ModuleMap operator-(const ModuleMap& a, const ModuleMap& b) { return a.combine(b, true); }

  // Restriction to the listed source basis vectors.
  ModuleMap select_columns(const std::vector<std::size_t>& idx) const {
    std::vector<VectorElement<K>> cols;
    std::vector<int> degs;
    for (auto j : idx) {
      cols.push_back(columns_.at(j));
      degs.push_back(source_.degree(j));
    }
    return ModuleMap(ring_, FreeModule(degs), target_, std::move(cols));
  }
  // Composition with the projection onto the listed target coordinates.
  ModuleMap select_rows(const std::vector<std::size_t>& idx) const {
    std::vector<VectorElement<K>> cols;
    std::vector<int> degs;
    for (auto i : idx) degs.push_back(target_.degree(i));
    for (const auto& c : columns_) {
      VectorElement<K> v;
      for (auto i : idx) v.push_back(c.at(i));
      cols.push_back(std::move(v));
    }
    return ModuleMap(ring_, source_, FreeModule(degs), std::move(cols));
  }

  // [A | B] : A.source ⊕ B.source -> target
  static ModuleMap hstack(const ModuleMap& a, const ModuleMap& b) {
    if (!(a.target_ == b.target_)) throw StructuralError("hstack: targets differ");
    auto cols = a.columns_;
    cols.insert(cols.end(), b.columns_.begin(), b.columns_.end());
    return ModuleMap(a.ring_, a.source_ + b.source_, a.target_, std::move(cols));
  }
  // [A ; B] : source -> A.target ⊕ B.target
  static ModuleMap vstack(const ModuleMap& a, const ModuleMap& b) {
    if (!(a.source_ == b.source_)) throw StructuralError("vstack: sources differ");
    std::vector<VectorElement<K>> cols;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      auto c = a.columns_[j];
      c.insert(c.end(), b.columns_[j].begin(), b.columns_[j].end());
      cols.push_back(std::move(c));
    }
    return ModuleMap(a.ring_, a.source_, a.target_ + b.target_, std::move(cols));
  }
  // [[A, B], [C, D]]
  static ModuleMap block(const ModuleMap& a, const ModuleMap& b, const ModuleMap& c, const ModuleMap& d) {
    return vstack(hstack(a, b), hstack(c, d));
  }
  static ModuleMap direct_sum(const ModuleMap& a, const ModuleMap& b) {
    return block(a, zero(a.ring_, b.source_, a.target_), zero(a.ring_, a.source_, b.target_), b);
  }

  // Kronecker product A ⊗ B on (A.source ⊗ B.source) -> (A.target ⊗ B.target), index (i, k) -> i * |B| + k.
  static ModuleMap kronecker(const ModuleMap& a, const ModuleMap& b) {
    std::vector<int> src, tgt;
    for (int x : a.source_.degrees)
      for (int y : b.source_.degrees) src.push_back(x + y);
    for (int x : a.target_.degrees)
      for (int y : b.target_.degrees) tgt.push_back(x + y);
    std::vector<VectorElement<K>> cols;
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t l = 0; l < b.cols(); ++l) {
        VectorElement<K> col;
        for (std::size_t i = 0; i < a.rows(); ++i)
          for (std::size_t k = 0; k < b.rows(); ++k) col.push_back(a.columns_[j][i] * b.columns_[l][k]);
        cols.push_back(std::move(col));
      }
    return ModuleMap(a.ring_, FreeModule(src), FreeModule(tgt), std::move(cols));
  }

  friend bool operator==(const ModuleMap& a, const ModuleMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.columns_ == b.columns_;
  }

  // Dense row-major listing of entries, for serialization.
  std::vector<std::vector<std::string>> to_strings() const {
    std::vector<std::vector<std::string>> out(rows(), std::vector<std::string>(cols()));
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) out[i][j] = columns_[j][i].to_string();
    return out;
  }

 private:
  ModuleMap combine(const ModuleMap& b, bool subtract) const {
    if (!(source_ == b.source_) || !(target_ == b.target_)) throw StructuralError("map sum: modules differ");
    ModuleMap r = *this;
    for (std::size_t j = 0; j < cols(); ++j)
      for (std::size_t i = 0; i < rows(); ++i)
        r.columns_[j][i] = subtract ? columns_[j][i] - b.columns_[j][i] : columns_[j][i] + b.columns_[j][i];
    return r;
  }

  RingPtr<K> ring_;
  FreeModule source_;
  FreeModule target_;
  std::vector<VectorElement<K>> columns_;
};

}  // namespace forge
