#pragma once

#include <optional>
#include <vector>

#include "forge/context.hpp"

namespace forge {

namespace detail {

template <CoefficientField K>
BuchbergerOutput<K> basis_with_background(const QuotientRing<K>& ctx, const FreeModule& F,
                                          const std::vector<VectorElement<K>>& cols) {
  std::vector<SparseVector<K>> inputs = ctx.background(F);
  std::vector<bool> flags(inputs.size(), true);
  for (const auto& c : cols) {
    if (c.size() != F.rank()) throw StructuralError("vector length does not match ambient rank");
    inputs.push_back(to_sparse(c));
    flags.push_back(false);
  }
  return buchberger(ctx.ring(), F, inputs, flags);
}

}  // namespace detail

// Gröbner basis of U + I·F, where U is spanned by `cols` and I is the context ideal.
template <CoefficientField K>
GroebnerBasis<K> submodule_basis(const QuotientRing<K>& ctx, const FreeModule& F,
                                 const std::vector<VectorElement<K>>& cols) {
  return detail::basis_with_background(ctx, F, cols).basis;
}
template <CoefficientField K>
GroebnerBasis<K> image_basis(const QuotientRing<K>& ctx, const ModuleMap<K>& A) {
  return submodule_basis(ctx, A.target(), A.columns());
}

// Indices of a minimal generating subset of U modulo I·F (lowest degrees first, then input order).
template <CoefficientField K>
std::vector<std::size_t> minimal_subset(const QuotientRing<K>& ctx, const FreeModule& F,
                                        const std::vector<VectorElement<K>>& cols) {
  auto out = detail::basis_with_background(ctx, F, cols);
  std::size_t offset = ctx.background(F).size();
  std::vector<std::size_t> idx;
  for (auto m : out.minimal) idx.push_back(m - offset);
  return idx;
}

// Gröbner basis of the graph-like module {(A w, w)} + I·G inside G ⊕ F,
// with G ranked first in the position-over-term order. Elements whose
// leading term lies in F have zero G-part and generate ker A.
template <CoefficientField K>
class Lifter {
 public:
  Lifter(const QuotientRing<K>& ctx, const ModuleMap<K>& A)
      : ctx_(ctx), A_(A), g_(static_cast<std::uint32_t>(A.rows())), basis_(build(ctx, A)) {}

  const ModuleMap<K>& map() const { return A_; }

  // Deterministic x with A x ≡ b (mod I), or nullopt when b ∉ im A + I·G.
  std::optional<VectorElement<K>> lift(const VectorElement<K>& b) const {
    if (b.size() != A_.rows()) throw StructuralError("lift: vector length does not match target rank");
    vector_degree(b, A_.target());
    SparseVector<K> r = basis_.reduce(to_sparse(b), g_);
    if (!r.empty() && r.front().comp < g_) return std::nullopt;
    VectorElement<K> x = from_sparse(A_.ring(), r, A_.cols(), g_);
    for (auto& f : x) f = ctx_.reduce(-f);
    return x;
  }

  // Generators of ker A over R/I (not yet minimalized, entries reduced mod I).
  std::vector<VectorElement<K>> kernel_generators() const {
    std::vector<VectorElement<K>> out;
    for (const auto& e : basis_.elements()) {
      if (e.front().comp < g_) continue;
      auto v = ctx_.reduce(from_sparse(A_.ring(), e, A_.cols(), g_));
      if (!forge::is_zero<K>(v)) out.push_back(std::move(v));
    }
    return out;
  }

  // Minimal generators of ker A over R/I as a map into A.source.
  ModuleMap<K> kernel() const {
    auto gens = kernel_generators();
    auto keep = minimal_subset(ctx_, A_.source(), gens);
    std::vector<VectorElement<K>> cols;
    for (auto i : keep) cols.push_back(gens[i]);
    return ModuleMap<K>::from_columns(A_.ring(), A_.source(), std::move(cols));
  }

 private:
  static GroebnerBasis<K> build(const QuotientRing<K>& ctx, const ModuleMap<K>& A) {
    const std::uint32_t g = static_cast<std::uint32_t>(A.rows());
    FreeModule ambient = A.target() + A.source();
    std::vector<SparseVector<K>> inputs = ctx.background(A.target());
    std::vector<bool> flags(inputs.size(), true);
    const K& k = A.ring()->field();
    for (std::size_t j = 0; j < A.cols(); ++j) {
      SparseVector<K> v = to_sparse(ctx.reduce(A.column(j)));
      v.push_back({static_cast<std::uint32_t>(g + j), A.ring()->one(), k.one()});
      inputs.push_back(std::move(v));
      flags.push_back(false);
    }
    return buchberger(A.ring(), ambient, inputs, flags).basis;
  }

  QuotientRing<K> ctx_;
  ModuleMap<K> A_;
  std::uint32_t g_;
  GroebnerBasis<K> basis_;
};

// Minimal generators of ker A over the context, as a map with target A.source.
template <CoefficientField K>
ModuleMap<K> syzygy_matrix(const QuotientRing<K>& ctx, const ModuleMap<K>& A) {
  if (A.cols() == 0) return ModuleMap<K>::zero(A.ring(), FreeModule{}, A.source());
  return Lifter<K>(ctx, A).kernel();
}
template <CoefficientField K>
ModuleMap<K> syzygy_matrix(const ModuleMap<K>& A) {
  return syzygy_matrix(QuotientRing<K>(A.ring()), A);
}

template <CoefficientField K>
std::optional<VectorElement<K>> lift_through(const QuotientRing<K>& ctx, const ModuleMap<K>& A,
                                             const VectorElement<K>& b) {
  return Lifter<K>(ctx, A).lift(b);
}
template <CoefficientField K>
std::optional<VectorElement<K>> lift_through(const ModuleMap<K>& A, const VectorElement<K>& b) {
  return lift_through(QuotientRing<K>(A.ring()), A, b);
}

// X with A ∘ X ≡ B (mod I), column by column; nullopt if some column has no lift.
template <CoefficientField K>
std::optional<ModuleMap<K>> lift_map(const QuotientRing<K>& ctx, const ModuleMap<K>& A, const ModuleMap<K>& B) {
  if (!(A.target() == B.target())) throw StructuralError("lift_map: targets differ");
  if (B.cols() == 0) return ModuleMap<K>::zero(A.ring(), B.source(), A.source());
  Lifter<K> lifter(ctx, A);
  std::vector<VectorElement<K>> cols;
  for (const auto& b : B.columns()) {
    auto x = lifter.lift(b);
    if (!x) return std::nullopt;
    cols.push_back(std::move(*x));
  }
  return ModuleMap<K>(A.ring(), B.source(), A.source(), std::move(cols));
}

}  // namespace forge
