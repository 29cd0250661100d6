#pragma once

#include <limits>
#include <string>
#include <vector>

#include "forge/complex.hpp"

namespace forge {

// Double-containment witness at one spot: im d_{i+1} ⊆ ker d_i and ker d_i ⊆ im d_{i+1}.
struct SpotCertificate {
  int index = 0;
  bool boundaries_in_cycles = false;
  bool cycles_in_boundaries = false;
  bool ok() const { return boundaries_in_cycles && cycles_in_boundaries; }
};

template <CoefficientField K>
std::vector<SpotCertificate> certify_exactness(const QuotientRing<K>& ctx, const FreeComplex<K>& C, int from,
                                               int to) {
  std::vector<SpotCertificate> out;
  for (int i = from; i <= to; ++i) {
    SpotCertificate s;
    s.index = i;
    s.boundaries_in_cycles = ctx.is_zero(C.differential(i).compose(C.differential(i + 1)));
    s.cycles_in_boundaries = homology_vanishes(ctx, C, i);
    out.push_back(s);
  }
  return out;
}

template <CoefficientField K>
struct Resolution {
  FreeComplex<K> complex;
  // Minimal presentation of the resolved module and how the input generators map onto it.
  MinimalPresentation<K> presentation;
  bool minimal = true;
  bool truncated = false;
  std::vector<SpotCertificate> certificate;

  bool certified() const {
    for (const auto& s : certificate)
      if (!s.ok()) return false;
    return true;
  }
  int proj_dim() const {
    if (truncated) throw Rejected("TRUNCATED", "resolution truncated before it ended");
    return complex.length();
  }
  BettiTable betti() const { return betti_table(complex.trimmed()); }
};

// Minimal free resolution by iterated syzygies of a minimal presentation.
// max_len < 0 selects the default (number of variables + 1).
template <CoefficientField K>
Resolution<K> free_resolution(const QuotientRing<K>& ctx, const Presentation<K>& P, int max_len = -1) {
  if (max_len < 0) max_len = static_cast<int>(ctx.ring()->nvars()) + 1;
  auto mp = minimal_generators(ctx, P);
  const FreeModule F0 = mp.presentation.generators();
  std::vector<ModuleMap<K>> d;
  bool truncated = false;
  ModuleMap<K> next = mp.presentation.relations;
  while (next.cols() > 0) {
    if (static_cast<int>(d.size()) == max_len) {
      truncated = true;
      break;
    }
    d.push_back(next);
    next = syzygy_matrix(ctx, d.back());
  }
  auto C = FreeComplex<K>::from_differentials(ctx.ring(), F0, std::move(d));
  Resolution<K> res{C, std::move(mp), true, truncated, {}};
  // a truncated resolution makes no claim at its top spot
  res.certificate = certify_exactness(ctx, C, 1, truncated ? C.top() - 1 : C.top());
  res.minimal = C.is_minimal(ctx);
  ensure(res.minimal, "resolution is not minimal");
  return res;
}

template <CoefficientField K>
BettiTable betti_table(const QuotientRing<K>& ctx, const Presentation<K>& P, int max_len = -1) {
  auto r = free_resolution(ctx, P, max_len);
  if (r.truncated) throw Rejected("TRUNCATED", "resolution truncated before it ended");
  return r.betti();
}

template <CoefficientField K>
int proj_dim(const QuotientRing<K>& ctx, const Presentation<K>& P, int max_len = -1) {
  return free_resolution(ctx, P, max_len).proj_dim();
}

// Ext^i(M, R) = H^i of the dualized resolution, as a minimal presentation.
template <CoefficientField K>
Presentation<K> ext_module(const QuotientRing<K>& ctx, const Resolution<K>& res, int i) {
  const auto& F = res.complex;
  if (res.truncated && i + 1 > F.top()) throw Rejected("TRUNCATED", "Ext needs the resolution up to index " +
                                                                        std::to_string(i + 1));
  const RingPtr<K>& R = ctx.ring();
  FreeModule Fi = F.module(i).dual();
  if (Fi.rank() == 0) return Presentation<K>::free(R, FreeModule{});
  auto up = F.differential(i + 1).transpose();  // F_i^* -> F_{i+1}^*
  ModuleMap<K> Z = up.rows() == 0 ? ModuleMap<K>::identity(R, Fi) : syzygy_matrix(ctx, up);
  auto B = F.differential(i).transpose();  // F_{i-1}^* -> F_i^*
  return subquotient(ctx, Z, B);
}
template <CoefficientField K>
Presentation<K> ext_module(const QuotientRing<K>& ctx, const Presentation<K>& P, int i) {
  return ext_module(ctx, free_resolution(ctx, P, std::max(i + 1, 0)), i);
}

// Tor_i(M, N) = H_i(F ⊗ N) with F resolving M; F_i ⊗ N is presented by id ⊗ (relations of N).
template <CoefficientField K>
Presentation<K> tor_module(const QuotientRing<K>& ctx, const Resolution<K>& res, const Presentation<K>& N, int i) {
  const auto& F = res.complex;
  if (res.truncated && i + 1 > F.top()) throw Rejected("TRUNCATED", "Tor needs the resolution up to index " +
                                                                        std::to_string(i + 1));
  const RingPtr<K>& R = ctx.ring();
  auto mN = minimal_generators(ctx, N).presentation;
  const FreeModule& N0 = mN.generators();
  auto id_N0 = ModuleMap<K>::identity(R, N0);
  auto rel = [&](int k) { return ModuleMap<K>::kronecker(ModuleMap<K>::identity(R, F.module(k)), mN.relations); };
  auto tensored = [&](int k) { return ModuleMap<K>::kronecker(F.differential(k), id_N0); };
  FreeModule Ti;
  for (int a : F.module(i).degrees)
    for (int b : N0.degrees) Ti.degrees.push_back(a + b);
  if (Ti.rank() == 0) return Presentation<K>::free(R, FreeModule{});
  ModuleMap<K> Z = ModuleMap<K>::identity(R, Ti);
  if (i > 0 && F.module(i - 1).rank() > 0) {
    // cycles: first block of ker [d_i ⊗ 1 | 1 ⊗ rel_N] on F_{i-1} ⊗ N0
    auto S = syzygy_matrix(ctx, ModuleMap<K>::hstack(tensored(i), rel(i - 1)));
    std::vector<std::size_t> top(Ti.rank());
    for (std::size_t q = 0; q < top.size(); ++q) top[q] = q;
    Z = S.select_rows(top);
  }
  auto B = ModuleMap<K>::hstack(tensored(i + 1), rel(i));
  return subquotient(ctx, Z, B);
}
template <CoefficientField K>
Presentation<K> tor_module(const QuotientRing<K>& ctx, const Presentation<K>& M, const Presentation<K>& N, int i) {
  return tor_module(ctx, free_resolution(ctx, M, std::max(i + 1, 0)), N, i);
}

// Sentinel ordered above every finite grade (the unit ideal).
inline constexpr int kInfiniteGrade = std::numeric_limits<int>::max();

inline std::string grade_to_string(int g) { return g == kInfiniteGrade ? "inf" : std::to_string(g); }

// grade J = min{i : Ext^i(R/J, R) != 0} over the context ring. The zero ideal has grade 0;
// the unit ideal is rejected as IMPROPER.
template <CoefficientField K>
int grade(const QuotientRing<K>& ctx, const Ideal<K>& J) {
  auto mJ = minimalize_ideal(ctx, J.generators);
  if (mJ.empty()) return 0;
  if (is_unit_ideal(ctx, mJ)) throw Rejected("IMPROPER", "grade of the unit ideal");
  int dim = krull_dimension(ctx);
  auto P = quotient_presentation(mJ, ctx.ring());
  auto res = free_resolution(ctx, P, dim + 2);
  for (int i = 0; i <= dim; ++i)
    if (!is_zero_module(ctx, ext_module(ctx, res, i))) return i;
  throw InvariantViolation("no nonvanishing Ext below the dimension bound for " + mJ.to_string());
}

// As grade(), with the unit ideal mapped to kInfiniteGrade.
template <CoefficientField K>
int grade_or_infinite(const QuotientRing<K>& ctx, const Ideal<K>& J) {
  if (!J.empty() && is_unit_ideal(ctx, J)) return kInfiniteGrade;
  return grade(ctx, J);
}

// grade of a module: grade of its annihilator; infinite for the zero module.
template <CoefficientField K>
int module_grade(const QuotientRing<K>& ctx, const Presentation<K>& P) {
  return grade_or_infinite(ctx, annihilator(ctx, P));
}

// rank M = e(M) / e(R) when dim M = dim R, else 0.
template <CoefficientField K>
long long module_rank(const QuotientRing<K>& ctx, const Presentation<K>& P) {
  auto hm = hilbert_series(ctx, P);
  auto hr = hilbert_series(ctx, Presentation<K>::free(ctx.ring(), FreeModule::free(1)));
  if (hm.dimension() < hr.dimension()) return 0;
  auto em = hm.multiplicity(), er = hr.multiplicity();
  if (er == 0 || em % er != 0) throw DomainError("module rank is not an integer multiple of the ring multiplicity");
  return em / er;
}

}  // namespace forge
