#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/syzygy.hpp"

namespace forge {

// A finitely presented graded module coker(F1 -> F0).
template <CoefficientField K>
struct Presentation {
  ModuleMap<K> relations;

  const RingPtr<K>& ring() const { return relations.ring(); }
  const FreeModule& generators() const { return relations.target(); }
  std::size_t num_generators() const { return relations.rows(); }

  static Presentation free(const RingPtr<K>& ring, const FreeModule& F0) {
    return {ModuleMap<K>::zero(ring, FreeModule{}, F0)};
  }
  // R/(gens) with its generator in degree `degree`.
  static Presentation cyclic(const RingPtr<K>& ring, const std::vector<Polynomial<K>>& gens, int degree = 0) {
    std::vector<VectorElement<K>> cols;
    for (const auto& g : gens)
      if (!g.is_zero()) cols.push_back({g});
    return {ModuleMap<K>::from_columns(ring, FreeModule::free(1, degree), std::move(cols))};
  }
  // M(-s): every degree raised by s.
  Presentation shifted(int s) const {
    return {ModuleMap<K>(ring(), relations.source().shifted(s), relations.target().shifted(s), relations.columns())};
  }
  static Presentation direct_sum(const Presentation& a, const Presentation& b) {
    return {ModuleMap<K>::direct_sum(a.relations, b.relations)};
  }
};

template <CoefficientField K>
struct Ideal {
  std::vector<Polynomial<K>> generators;

  bool empty() const { return generators.empty(); }
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? ", " : "") + generators[i].to_string();
    return s + ")";
  }
};

// Minimal generators of an ideal of R/I (nonzero, reduced mod I, lowest degrees first).
template <CoefficientField K>
Ideal<K> minimalize_ideal(const QuotientRing<K>& ctx, const std::vector<Polynomial<K>>& gens) {
  std::vector<VectorElement<K>> vecs;
  for (const auto& g : gens) {
    auto r = ctx.reduce(g);
    if (!r.is_zero()) vecs.push_back({r.monic()});
  }
  Ideal<K> out;
  for (auto i : minimal_subset(ctx, FreeModule::free(1), vecs)) out.generators.push_back(vecs[i][0]);
  return out;
}

// Gröbner basis of J + I, with I the context ideal.
template <CoefficientField K>
GroebnerBasis<K> ideal_basis(const QuotientRing<K>& ctx, const Ideal<K>& J) {
  std::vector<VectorElement<K>> vecs;
  for (const auto& g : J.generators) vecs.push_back({g});
  return submodule_basis(ctx, FreeModule::free(1), vecs);
}

template <CoefficientField K>
bool is_unit_ideal(const QuotientRing<K>& ctx, const Ideal<K>& J) {
  return ideal_basis(ctx, J).contains_basis_vector(0);
}

template <CoefficientField K>
bool ideal_contains(const QuotientRing<K>& ctx, const Ideal<K>& J, const Polynomial<K>& f) {
  return ideal_basis(ctx, J).contains({f});
}

template <CoefficientField K>
bool ideal_contains(const QuotientRing<K>& ctx, const Ideal<K>& J, const Ideal<K>& sub) {
  auto gb = ideal_basis(ctx, J);
  for (const auto& f : sub.generators)
    if (!gb.contains({f})) return false;
  return true;
}

template <CoefficientField K>
Presentation<K> quotient_presentation(const Ideal<K>& J, const RingPtr<K>& ring, int degree = 0) {
  return Presentation<K>::cyclic(ring, J.generators, degree);
}

// Result of pruning a presentation: `kept[i]` is the original generator
// that became generator i; `to_minimal` expresses every original generator
// in the new ones.
template <CoefficientField K>
struct MinimalPresentation {
  Presentation<K> presentation;
  std::vector<std::size_t> kept;
  ModuleMap<K> to_minimal;
  ModuleMap<K> from_minimal;
};

// Removes generators killed by unit relations, then keeps a minimal subset of
// relations. Pivot order: lowest relation degree, then row-major.
template <CoefficientField K>
MinimalPresentation<K> minimal_generators(const QuotientRing<K>& ctx, const Presentation<K>& P) {
  const RingPtr<K>& ring = P.ring();
  const K& k = ring->field();
  ModuleMap<K> B = ctx.reduce(P.relations);
  std::vector<std::size_t> kept(B.rows());
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;
  std::vector<VectorElement<K>> expr = ModuleMap<K>::identity(ring, B.target()).columns();

  std::vector<VectorElement<K>> cols = B.columns();
  std::vector<int> src = B.source().degrees;
  std::vector<int> tgt = B.target().degrees;
  while (true) {
    std::optional<std::pair<std::size_t, std::size_t>> pivot;
    for (std::size_t i = 0; i < tgt.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (cols[j][i].is_unit() && (!pivot || src[j] < src[pivot->second]))
          pivot = std::make_pair(i, j);
    if (!pivot) break;
    auto [pi, pj] = *pivot;
    const VectorElement<K> b = cols[pj];
    auto cinv = k.inv(b[pi].leading_term().coeff);
    std::vector<VectorElement<K>> next;
    std::vector<int> next_src;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (j == pj) continue;
      VectorElement<K> c = cols[j];
      if (!c[pi].is_zero()) {
        Polynomial<K> f = c[pi].scale(cinv);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.reduce(c[i] - f * b[i]);
      }
      c.erase(c.begin() + static_cast<std::ptrdiff_t>(pi));
      next.push_back(std::move(c));
      next_src.push_back(src[j]);
    }
    for (auto& e : expr) {
      if (!e[pi].is_zero()) {
        Polynomial<K> f = e[pi].scale(cinv);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ctx.reduce(e[i] - f * b[i]);
      }
      e.erase(e.begin() + static_cast<std::ptrdiff_t>(pi));
    }
    cols = std::move(next);
    src = std::move(next_src);
    tgt.erase(tgt.begin() + static_cast<std::ptrdiff_t>(pi));
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pi));
  }

  FreeModule F0(tgt);
  auto keep = minimal_subset(ctx, F0, cols);
  std::vector<VectorElement<K>> rel;
  std::vector<int> rel_deg;
  for (auto j : keep) {
    rel.push_back(cols[j]);
    rel_deg.push_back(src[j]);
  }
  Presentation<K> out{ModuleMap<K>(ring, FreeModule(rel_deg), F0, std::move(rel))};

  std::vector<VectorElement<K>> from_cols;
  for (auto r : kept) {
    auto v = zero_vector(ring, B.rows());
    v[r] = Polynomial<K>::from_int(ring, 1);
    from_cols.push_back(std::move(v));
  }
  return {std::move(out), kept, ModuleMap<K>(ring, B.target(), F0, std::move(expr)),
          ModuleMap<K>(ring, F0, B.target(), std::move(from_cols))};
}

// M ⊗ R/J as a module over R/(I + J): the relations gain J·e_j for every generator.
template <CoefficientField K>
Presentation<K> base_change_quotient(const Presentation<K>& P, const std::vector<Polynomial<K>>& ideal) {
  const RingPtr<K>& ring = P.ring();
  std::vector<VectorElement<K>> cols = P.relations.columns();
  for (std::size_t j = 0; j < P.num_generators(); ++j)
    for (const auto& g : ideal) {
      if (g.is_zero()) continue;
      auto v = zero_vector(ring, P.num_generators());
      v[j] = g;
      cols.push_back(std::move(v));
    }
  return {ModuleMap<K>::from_columns(ring, P.generators(), std::move(cols))};
}

// dim_k M_d for d = lo..hi, counting standard monomials of im B + I F0.
template <CoefficientField K>
std::vector<long> hilbert_function(const QuotientRing<K>& ctx, const Presentation<K>& P, int lo, int hi) {
  auto gb = image_basis(ctx, P.relations);
  const FreeModule& F = P.generators();
  std::vector<std::vector<Monomial>> leads(F.rank());
  for (const auto& e : gb.elements()) leads[e.front().comp].push_back(e.front().mono);
  std::vector<long> out;
  for (int d = lo; d <= hi; ++d) {
    long count = 0;
    for (std::size_t j = 0; j < F.rank(); ++j) {
      for (const auto& m : monomials_of_degree(ctx.ring()->nvars(), d - F.degree(j))) {
        bool standard = std::none_of(leads[j].begin(), leads[j].end(), [&](const Monomial& l) { return l.divides(m); });
        count += standard;
      }
    }
    out.push_back(count);
  }
  return out;
}
template <CoefficientField K>
std::vector<long> hilbert_function(const QuotientRing<K>& ctx, const Presentation<K>& P, int D) {
  return hilbert_function(ctx, P, 0, D);
}

// Hilbert series N(t) / (1 - t)^n with N a Laurent polynomial (coefficient i
// multiplies t^(i + shift)); dimension and multiplicity follow from N.
struct HilbertSeries {
  std::vector<long long> numerator;
  int shift = 0;
  int nvars = 0;

  bool is_zero() const {
    return std::all_of(numerator.begin(), numerator.end(), [](long long c) { return c == 0; });
  }
  // Krull dimension, -1 for the zero module.
  int dimension() const { return reduced().first; }
  long long multiplicity() const { return reduced().second; }

  std::pair<int, long long> reduced() const {
    if (is_zero()) return {-1, 0};
    std::vector<long long> n = numerator;
    int d = nvars;
    while (d > 0) {
      long long at_one = 0;
      for (auto c : n) at_one += c;
      if (at_one != 0) break;
      // divide by (1 - t): q_i = sum_{k <= i} n_k
      std::vector<long long> q(n.size() > 1 ? n.size() - 1 : 1, 0);
      long long acc = 0;
      for (std::size_t i = 0; i + 1 < n.size(); ++i) {
        acc += n[i];
        q[i] = acc;
      }
      n = q;
      --d;
    }
    long long at_one = 0;
    for (auto c : n) at_one += c;
    return {d, at_one};
  }
};

namespace detail {

using MonomialList = std::vector<Monomial>;

inline MonomialList minimize_monomials(MonomialList gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  MonomialList out;
  for (const auto& g : gens) {
    bool redundant = std::any_of(out.begin(), out.end(), [&](const Monomial& m) { return m.divides(g); });
    if (!redundant) out.push_back(g);
  }
  return out;
}

inline std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
  std::vector<long long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Numerator of the Hilbert series of R/J for a monomial ideal J (pivot recursion).
inline std::vector<long long> monomial_numerator(MonomialList gens) {
  gens = minimize_monomials(std::move(gens));
  if (gens.empty()) return {1};
  bool coprime = true;
  for (std::size_t i = 0; i < gens.size() && coprime; ++i)
    for (std::size_t j = i + 1; j < gens.size() && coprime; ++j) coprime = Monomial::coprime(gens[i], gens[j]);
  if (coprime) {
    std::vector<long long> r{1};
    for (const auto& g : gens) {
      std::vector<long long> f(static_cast<std::size_t>(g.degree()) + 1, 0);
      f[0] = 1;
      f[static_cast<std::size_t>(g.degree())] -= 1;
      r = poly_mul(r, f);
    }
    return r;
  }
  Monomial m = gens.back();
  MonomialList rest(gens.begin(), gens.end() - 1);
  MonomialList colon;
  for (const auto& g : rest) colon.push_back(Monomial::lcm(g, m) / m);
  auto a = monomial_numerator(rest);
  auto b = monomial_numerator(colon);
  std::size_t shift = static_cast<std::size_t>(m.degree());
  std::vector<long long> r(std::max(a.size(), b.size() + shift), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= b[i];
  return r;
}

}  // namespace detail

template <CoefficientField K>
HilbertSeries hilbert_series(const QuotientRing<K>& ctx, const Presentation<K>& P) {
  auto gb = image_basis(ctx, P.relations);
  const FreeModule& F = P.generators();
  HilbertSeries hs;
  hs.nvars = static_cast<int>(ctx.ring()->nvars());
  if (F.rank() == 0) {
    hs.numerator = {0};
    return hs;
  }
  std::vector<detail::MonomialList> leads(F.rank());
  for (const auto& e : gb.elements()) leads[e.front().comp].push_back(e.front().mono);
  int lo = *std::min_element(F.degrees.begin(), F.degrees.end());
  hs.shift = lo;
  for (std::size_t j = 0; j < F.rank(); ++j) {
    auto n = detail::monomial_numerator(leads[j]);
    std::size_t off = static_cast<std::size_t>(F.degree(j) - lo);
    if (hs.numerator.size() < n.size() + off) hs.numerator.resize(n.size() + off, 0);
    for (std::size_t i = 0; i < n.size(); ++i) hs.numerator[i + off] += n[i];
  }
  while (hs.numerator.size() > 1 && hs.numerator.back() == 0) hs.numerator.pop_back();
  return hs;
}

template <CoefficientField K>
bool is_zero_module(const QuotientRing<K>& ctx, const Presentation<K>& P) {
  auto gb = image_basis(ctx, P.relations);
  for (std::size_t j = 0; j < P.num_generators(); ++j)
    if (!gb.contains_basis_vector(j)) return false;
  return true;
}

template <CoefficientField K>
int krull_dimension(const QuotientRing<K>& ctx, const Presentation<K>& P) {
  return hilbert_series(ctx, P).dimension();
}

// Krull dimension of the ring R/I itself.
template <CoefficientField K>
int krull_dimension(const QuotientRing<K>& ctx) {
  return krull_dimension(ctx, Presentation<K>::free(ctx.ring(), FreeModule::free(1)));
}

// ann(M) = {f : f·e_j ∈ im B + I·F0 for all j}, as one kernel computation of
// (f, u_1..u_r) |-> (f e_j - B u_j)_j with every block twisted to put e_j in degree 0.
template <CoefficientField K>
Ideal<K> annihilator(const QuotientRing<K>& ctx, const Presentation<K>& P) {
  const RingPtr<K>& ring = P.ring();
  const FreeModule& F0 = P.generators();
  const FreeModule& F1 = P.relations.source();
  std::size_t r = F0.rank();
  if (r == 0) return {{Polynomial<K>::from_int(ring, 1)}};
  FreeModule target, source = FreeModule::free(1);
  for (std::size_t j = 0; j < r; ++j) {
    target = target + F0.shifted(-F0.degree(j));
    source = source + F1.shifted(-F0.degree(j));
  }
  std::vector<VectorElement<K>> cols;
  auto first = zero_vector(ring, target.rank());
  for (std::size_t j = 0; j < r; ++j) first[j * r + j] = Polynomial<K>::from_int(ring, 1);
  cols.push_back(first);
  for (std::size_t j = 0; j < r; ++j)
    for (const auto& c : P.relations.columns()) {
      auto v = zero_vector(ring, target.rank());
      for (std::size_t i = 0; i < r; ++i) v[j * r + i] = c[i];
      cols.push_back(std::move(v));
    }
  ModuleMap<K> Phi(ring, source, target, std::move(cols));
  auto S = syzygy_matrix(ctx, Phi);
  std::vector<Polynomial<K>> gens;
  for (const auto& c : S.columns()) gens.push_back(c[0]);
  return minimalize_ideal(ctx, gens);
}

// The order ideal of beta = e_k in S = coker(B: G1 -> G0): all f(e_k) for f in Hom(S, R),
// i.e. the k-th entries of ker(B^T).
template <CoefficientField K>
Ideal<K> hom_of_submodule(const QuotientRing<K>& ctx, const ModuleMap<K>& B, std::size_t k) {
  if (k >= B.rows()) throw StructuralError("generator index " + std::to_string(k) + " out of range");
  auto H = syzygy_matrix(ctx, B.transpose());
  std::vector<Polynomial<K>> gens;
  for (const auto& c : H.columns()) gens.push_back(c[k]);
  return minimalize_ideal(ctx, gens);
}

// Subquotient (im Z + im B) / im B of a free module, as a minimal presentation on the columns of Z.
template <CoefficientField K>
Presentation<K> subquotient(const QuotientRing<K>& ctx, const ModuleMap<K>& Z, const ModuleMap<K>& B) {
  if (!(Z.target() == B.target())) throw StructuralError("subquotient: ambient modules differ");
  auto S = syzygy_matrix(ctx, ModuleMap<K>::hstack(Z, B));
  std::vector<std::size_t> top(Z.cols());
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
  Presentation<K> P{ctx.reduce(S.select_rows(top))};
  return minimal_generators(ctx, P).presentation;
}

}  // namespace forge
