#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/presentation.hpp"

namespace forge {

// Bounded free complex F_0 <- F_1 <- ... <- F_n; differential(i) : F_i -> F_{i-1}.
template <CoefficientField K>
class FreeComplex {
 public:
  FreeComplex(RingPtr<K> ring, std::vector<FreeModule> modules, std::vector<ModuleMap<K>> differentials)
      : ring_(std::move(ring)), modules_(std::move(modules)), d_(std::move(differentials)) {
    if (modules_.empty()) modules_.push_back(FreeModule{});
    if (d_.size() + 1 != modules_.size()) throw StructuralError("complex needs one differential per positive index");
    for (std::size_t i = 1; i < modules_.size(); ++i)
      if (!(d_[i - 1].source() == modules_[i]) || !(d_[i - 1].target() == modules_[i - 1]))
        throw StructuralError("differential " + std::to_string(i) + " does not match its modules");
  }
  // Complex from its differentials d_1..d_n.
  static FreeComplex from_differentials(RingPtr<K> ring, const FreeModule& F0, std::vector<ModuleMap<K>> d) {
    std::vector<FreeModule> mods{F0};
    for (const auto& m : d) mods.push_back(m.source());
    return FreeComplex(std::move(ring), std::move(mods), std::move(d));
  }
  static FreeComplex zero(RingPtr<K> ring) { return FreeComplex(std::move(ring), {FreeModule{}}, {}); }

  const RingPtr<K>& ring() const { return ring_; }
  // Highest stored index.
  int top() const { return static_cast<int>(modules_.size()) - 1; }
  // Highest index with a nonzero module, -1 for the zero complex.
  int length() const {
    for (int i = top(); i >= 0; --i)
      if (modules_[static_cast<std::size_t>(i)].rank() > 0) return i;
    return -1;
  }
  FreeModule module(int i) const {
    if (i < 0 || i > top()) return FreeModule{};
    return modules_[static_cast<std::size_t>(i)];
  }
  // d_i : F_i -> F_{i-1}; the zero map outside the stored range.
  ModuleMap<K> differential(int i) const {
    if (i >= 1 && i <= top()) return d_[static_cast<std::size_t>(i - 1)];
    return ModuleMap<K>::zero(ring_, module(i), module(i - 1));
  }
  const std::vector<FreeModule>& modules() const { return modules_; }
  const std::vector<ModuleMap<K>>& differentials() const { return d_; }

  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r;
    for (const auto& m : modules_) r.push_back(m.rank());
    return r;
  }

  bool is_complex(const QuotientRing<K>& ctx) const {
    for (int i = 2; i <= top(); ++i)
      if (!ctx.is_zero(differential(i - 1).compose(differential(i)))) return false;
    return true;
  }
  // No differential entry is a unit.
  bool is_minimal(const QuotientRing<K>& ctx) const {
    for (const auto& m : d_)
      for (const auto& c : m.columns())
        for (const auto& e : c)
          if (ctx.reduce(e).is_unit()) return false;
    return true;
  }

  // Every internal degree raised by s.
  FreeComplex twisted(int s) const {
    std::vector<FreeModule> mods;
    std::vector<ModuleMap<K>> d;
    for (const auto& m : modules_) mods.push_back(m.shifted(s));
    for (const auto& m : d_)
      d.push_back(ModuleMap<K>(ring_, m.source().shifted(s), m.target().shifted(s), m.columns()));
    return FreeComplex(ring_, std::move(mods), std::move(d));
  }
  // Drops stored zero modules above length().
  FreeComplex trimmed() const {
    int n = std::max(length(), 0);
    std::vector<FreeModule> mods(modules_.begin(), modules_.begin() + n + 1);
    std::vector<ModuleMap<K>> d(d_.begin(), d_.begin() + n);
    return FreeComplex(ring_, std::move(mods), std::move(d));
  }
  // Keeps indices 0..n.
  FreeComplex truncated(int n) const {
    std::vector<FreeModule> mods;
    std::vector<ModuleMap<K>> d;
    for (int i = 0; i <= n; ++i) mods.push_back(module(i));
    for (int i = 1; i <= n; ++i) d.push_back(differential(i));
    return FreeComplex(ring_, std::move(mods), std::move(d));
  }
  FreeComplex reduced(const QuotientRing<K>& ctx) const {
    std::vector<ModuleMap<K>> d;
    for (const auto& m : d_) d.push_back(ctx.reduce(m));
    return FreeComplex(ring_, modules_, std::move(d));
  }

  friend bool operator==(const FreeComplex& a, const FreeComplex& b) {
    return a.modules_ == b.modules_ && a.d_ == b.d_;
  }

 private:
  RingPtr<K> ring_;
  std::vector<FreeModule> modules_;
  std::vector<ModuleMap<K>> d_;
};

// Components f_i : source_i -> target_{i + shift}, for i = 0..source.top().
template <CoefficientField K>
struct ChainMap {
  FreeComplex<K> source;
  FreeComplex<K> target;
  int shift = 0;
  std::vector<ModuleMap<K>> components;

  ModuleMap<K> component(int i) const {
    if (i >= 0 && i < static_cast<int>(components.size())) return components[static_cast<std::size_t>(i)];
    return ModuleMap<K>::zero(source.ring(), source.module(i), target.module(i + shift));
  }

  // target.d ∘ f_i = f_{i-1} ∘ source.d_i for every i (f_{-1} = 0); returns the first failing index.
  std::optional<int> first_noncommuting(const QuotientRing<K>& ctx) const {
    for (int i = 0; i <= source.top(); ++i) {
      auto lhs = target.differential(i + shift).compose(component(i));
      auto rhs = component(i - 1).compose(source.differential(i));
      if (!ctx.is_zero(lhs - rhs)) return i;
    }
    return std::nullopt;
  }
  bool commutes(const QuotientRing<K>& ctx) const { return !first_noncommuting(ctx); }

  static ChainMap identity(const FreeComplex<K>& C) {
    std::vector<ModuleMap<K>> comps;
    for (int i = 0; i <= C.top(); ++i) comps.push_back(ModuleMap<K>::identity(C.ring(), C.module(i)));
    return {C, C, 0, std::move(comps)};
  }
  static ChainMap zero(const FreeComplex<K>& S, const FreeComplex<K>& T, int shift = 0) {
    std::vector<ModuleMap<K>> comps;
    for (int i = 0; i <= S.top(); ++i)
      comps.push_back(ModuleMap<K>::zero(S.ring(), S.module(i), T.module(i + shift)));
    return {S, T, shift, std::move(comps)};
  }

  // this ∘ other
  ChainMap compose(const ChainMap& other) const {
    std::vector<ModuleMap<K>> comps;
    for (int i = 0; i <= other.source.top(); ++i) comps.push_back(component(i + other.shift).compose(other.component(i)));
    return {other.source, target, shift + other.shift, std::move(comps)};
  }
  ChainMap operator-(const ChainMap& g) const {
    std::vector<ModuleMap<K>> comps;
    for (int i = 0; i <= source.top(); ++i) comps.push_back(component(i) - g.component(i));
    return {source, target, shift, std::move(comps)};
  }
  ChainMap reduced(const QuotientRing<K>& ctx) const {
    ChainMap r = *this;
    for (auto& c : r.components) c = ctx.reduce(c);
    return r;
  }
};

// h_i : source_i -> target_{i + shift + 1} with f_i - g_i = d h_i + h_{i-1} d.
template <CoefficientField K>
struct Homotopy {
  ChainMap<K> f;
  ChainMap<K> g;
  std::vector<ModuleMap<K>> maps;

  ModuleMap<K> map(int i) const {
    if (i >= 0 && i < static_cast<int>(maps.size())) return maps[static_cast<std::size_t>(i)];
    return ModuleMap<K>::zero(f.source.ring(), f.source.module(i), f.target.module(i + f.shift + 1));
  }

  // Checks the identity at every index with exact arithmetic; returns the first failing index.
  std::optional<int> first_violation(const QuotientRing<K>& ctx) const {
    const int s = f.shift;
    for (int i = 0; i <= f.source.top(); ++i) {
      auto lhs = f.component(i) - g.component(i);
      auto rhs = f.target.differential(i + s + 1).compose(map(i)) + map(i - 1).compose(f.source.differential(i));
      if (!ctx.is_zero(lhs - rhs)) return i;
    }
    return std::nullopt;
  }
  bool holds(const QuotientRing<K>& ctx) const { return !first_violation(ctx); }
};

// Solves f - g = d h + h d degree by degree through lifts; nullopt when some lift fails.
template <CoefficientField K>
std::optional<Homotopy<K>> solve_homotopy(const QuotientRing<K>& ctx, const ChainMap<K>& f, const ChainMap<K>& g) {
  const int s = f.shift;
  if (g.shift != s) throw StructuralError("homotopy between chain maps of different shifts");
  const auto& S = f.source;
  const auto& T = f.target;
  std::vector<ModuleMap<K>> h;
  for (int i = 0; i <= S.top(); ++i) {
    auto rhs = f.component(i) - g.component(i);
    if (i > 0) rhs = rhs - h.back().compose(S.differential(i));
    rhs = ctx.reduce(rhs);
    auto dT = T.differential(i + s + 1);
    if (dT.cols() == 0) {
      if (!ctx.is_zero(rhs)) return std::nullopt;
      h.push_back(ModuleMap<K>::zero(S.ring(), S.module(i), T.module(i + s + 1)));
      continue;
    }
    auto x = lift_map(ctx, dT, rhs);
    if (!x) return std::nullopt;
    h.push_back(std::move(*x));
  }
  Homotopy<K> out{f, g, std::move(h)};
  ensure(out.holds(ctx), "solved homotopy fails its identity");
  return out;
}

template <CoefficientField K>
std::optional<Homotopy<K>> null_homotopy(const QuotientRing<K>& ctx, const ChainMap<K>& f) {
  return solve_homotopy(ctx, f, ChainMap<K>::zero(f.source, f.target, f.shift));
}

// Lifts a map on generators to a chain map F -> G of the given shift: f_0 = base,
// f_k lifted through G's differential. With shift s > 0, d^G_s ∘ base must vanish.
template <CoefficientField K>
ChainMap<K> lift_chain_map(const QuotientRing<K>& ctx, const ModuleMap<K>& base, const FreeComplex<K>& F,
                           const FreeComplex<K>& G, int shift = 0) {
  if (!(base.source() == F.module(0)) || !(base.target() == G.module(shift)))
    throw StructuralError("lift_chain_map: base map does not match the complexes");
  if (shift > 0 && !ctx.is_zero(G.differential(shift).compose(base)))
    throw Rejected("NOT_WELL_DEFINED", "base map does not land in the cycles");
  std::vector<ModuleMap<K>> comps{ctx.reduce(base)};
  for (int k = 1; k <= F.top(); ++k) {
    auto rhs = ctx.reduce(comps.back().compose(F.differential(k)));
    auto dG = G.differential(k + shift);
    std::optional<ModuleMap<K>> x;
    if (dG.cols() == 0) {
      if (ctx.is_zero(rhs)) x = ModuleMap<K>::zero(F.ring(), F.module(k), G.module(k + shift));
    } else {
      x = lift_map(ctx, dG, rhs);
    }
    if (!x) {
      if (k == 1) {
        for (std::size_t j = 0; j < rhs.cols(); ++j) {
          bool ok = dG.cols() ? lift_through(ctx, dG, rhs.column(j)).has_value() : ctx.is_zero(rhs.column(j));
          if (!ok) throw Rejected("NOT_WELL_DEFINED", "relation " + std::to_string(j) + " is not mapped into the relations");
        }
      }
      throw Rejected("NOT_WELL_DEFINED", "no lift at index " + std::to_string(k));
    }
    comps.push_back(ctx.reduce(*x));
  }
  ChainMap<K> out{F, G, shift, std::move(comps)};
  ensure(out.commutes(ctx), "lifted chain map does not commute");
  return out;
}

// Cone_i = S_{i-1} ⊕ T_i with d = [[-d_S, 0], [f, d_T]]; f must have shift 0.
template <CoefficientField K>
FreeComplex<K> mapping_cone(const ChainMap<K>& f) {
  if (f.shift != 0) throw StructuralError("mapping cone needs a chain map of shift 0");
  const auto& S = f.source;
  const auto& T = f.target;
  const RingPtr<K>& R = S.ring();
  int n = std::max(S.top() + 1, T.top());
  std::vector<FreeModule> mods;
  for (int i = 0; i <= n; ++i) mods.push_back(S.module(i - 1) + T.module(i));
  std::vector<ModuleMap<K>> d;
  for (int i = 1; i <= n; ++i) {
    auto a = -S.differential(i - 1);
    auto b = ModuleMap<K>::zero(R, T.module(i), S.module(i - 2));
    d.push_back(ModuleMap<K>::block(a, b, f.component(i - 1), T.differential(i)));
  }
  return FreeComplex<K>(R, std::move(mods), std::move(d));
}

// D_k = (C_{n-k})^*, with d^D_k = (d^C_{n-k+1})^T.
template <CoefficientField K>
FreeComplex<K> dualize(const FreeComplex<K>& C) {
  int n = C.top();
  std::vector<FreeModule> mods;
  for (int k = 0; k <= n; ++k) mods.push_back(C.module(n - k).dual());
  std::vector<ModuleMap<K>> d;
  for (int k = 1; k <= n; ++k) d.push_back(C.differential(n - k + 1).transpose());
  return FreeComplex<K>(C.ring(), std::move(mods), std::move(d));
}

template <CoefficientField K>
ChainMap<K> dualize(const ChainMap<K>& f, const FreeComplex<K>& dual_source, const FreeComplex<K>& dual_target) {
  // f_i : S_i -> T_i (shift 0); the dual runs T* -> S* with (T_i)^* at index nT - i.
  if (f.shift != 0) throw StructuralError("dualize: chain map must have shift 0");
  int nS = f.source.top(), nT = f.target.top();
  std::vector<ModuleMap<K>> comps;
  for (int k = 0; k <= nT; ++k) {
    int i = nT - k;
    comps.push_back(f.component(i).transpose());
  }
  return {dual_target, dual_source, nS - nT, std::move(comps)};
}

// Result of cancelling unit pivots: iota : minimal -> original and pi : original -> minimal
// are mutually inverse homotopy equivalences with pi ∘ iota = id.
template <CoefficientField K>
struct Minimalized {
  FreeComplex<K> complex;
  ChainMap<K> iota;
  ChainMap<K> pi;
};

// Cancels unit entries pairwise. Pivot order: lowest homological index, then lowest
// degree, then row-major position.
template <CoefficientField K>
Minimalized<K> minimalize(const QuotientRing<K>& ctx, const FreeComplex<K>& C) {
  const RingPtr<K>& R = C.ring();
  const K& k = R->field();
  const int n = C.top();
  std::vector<std::vector<VectorElement<K>>> d(static_cast<std::size_t>(n) + 1);  // d[i] columns, i >= 1
  std::vector<std::vector<int>> deg(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) deg[static_cast<std::size_t>(i)] = C.module(i).degrees;
  for (int i = 1; i <= n; ++i) d[static_cast<std::size_t>(i)] = ctx.reduce(C.differential(i)).columns();
  // iota[i] columns: images in the original F_i of the current basis; pi[i] columns: images of the original basis.
  std::vector<std::vector<VectorElement<K>>> iota(static_cast<std::size_t>(n) + 1), pi(iota);
  for (int i = 0; i <= n; ++i) {
    auto id = ModuleMap<K>::identity(R, C.module(i)).columns();
    iota[static_cast<std::size_t>(i)] = id;
    pi[static_cast<std::size_t>(i)] = id;
  }
  auto erase_at = [](auto& v, std::size_t idx) { v.erase(v.begin() + static_cast<std::ptrdiff_t>(idx)); };

  while (true) {
    struct Pivot {
      int i;
      std::size_t r, c;
    };
    std::optional<Pivot> best;
    for (int i = 1; i <= n && !best; ++i) {
      const auto& cols = d[static_cast<std::size_t>(i)];
      const auto& srcdeg = deg[static_cast<std::size_t>(i)];
      std::size_t rows = deg[static_cast<std::size_t>(i) - 1].size();
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
          if (cols[c][r].is_unit() && (!best || srcdeg[c] < srcdeg[best->c])) best = Pivot{i, r, c};
    }
    if (!best) break;
    const auto [i, r, c] = *best;
    const std::size_t ui = static_cast<std::size_t>(i);
    auto& di = d[ui];
    const VectorElement<K> col = di[c];  // u at r, alpha elsewhere
    auto uinv = k.inv(col[r].leading_term().coeff);
    std::vector<Polynomial<K>> beta(di.size(), Polynomial<K>(R));
    for (std::size_t l = 0; l < di.size(); ++l) beta[l] = di[l][r];

    // d_i' = delta - alpha u^{-1} beta
    for (std::size_t l = 0; l < di.size(); ++l) {
      if (l == c || beta[l].is_zero()) continue;
      Polynomial<K> f = beta[l].scale(uinv);
      for (std::size_t q = 0; q < col.size(); ++q)
        if (!col[q].is_zero()) di[l][q] = ctx.reduce(di[l][q] - f * col[q]);
    }
    erase_at(di, c);
    for (auto& v : di) erase_at(v, r);
    // d_{i+1}' drops row c; d_{i-1}' drops column r
    if (i + 1 <= n)
      for (auto& v : d[ui + 1]) erase_at(v, c);
    if (i - 1 >= 1) erase_at(d[ui - 1], r);

    // iota_i(e_l') = e_l - u^{-1} beta_l e_c; iota_{i-1} drops the r-th basis vector
    auto& io = iota[ui];
    for (std::size_t l = 0; l < io.size(); ++l) {
      if (l == c || beta[l].is_zero()) continue;
      Polynomial<K> f = beta[l].scale(uinv);
      for (std::size_t q = 0; q < io[c].size(); ++q)
        if (!io[c][q].is_zero()) io[l][q] = ctx.reduce(io[l][q] - f * io[c][q]);
    }
    erase_at(io, c);
    erase_at(iota[ui - 1], r);
    // pi_i drops coordinate c; pi_{i-1}(w) = w' - u^{-1} w_r alpha
    for (auto& v : pi[ui]) erase_at(v, c);
    for (auto& v : pi[ui - 1]) {
      if (!v[r].is_zero()) {
        Polynomial<K> f = v[r].scale(uinv);
        for (std::size_t q = 0; q < col.size(); ++q)
          if (q != r && !col[q].is_zero()) v[q] = ctx.reduce(v[q] - f * col[q]);
      }
      erase_at(v, r);
    }
    erase_at(deg[ui], c);
    erase_at(deg[ui - 1], r);
  }

  std::vector<FreeModule> mods;
  for (int i = 0; i <= n; ++i) mods.push_back(FreeModule(deg[static_cast<std::size_t>(i)]));
  std::vector<ModuleMap<K>> maps;
  for (int i = 1; i <= n; ++i)
    maps.push_back(ModuleMap<K>(R, mods[static_cast<std::size_t>(i)], mods[static_cast<std::size_t>(i) - 1],
                                d[static_cast<std::size_t>(i)]));
  FreeComplex<K> M(R, mods, std::move(maps));
  std::vector<ModuleMap<K>> io, pj;
  for (int i = 0; i <= n; ++i) {
    io.push_back(ModuleMap<K>(R, mods[static_cast<std::size_t>(i)], C.module(i), iota[static_cast<std::size_t>(i)]));
    pj.push_back(ModuleMap<K>(R, C.module(i), mods[static_cast<std::size_t>(i)], pi[static_cast<std::size_t>(i)]));
  }
  return {M, ChainMap<K>{M, C, 0, std::move(io)}, ChainMap<K>{C, M, 0, std::move(pj)}};
}

// Graded Betti numbers beta_{i,j}: rank of the degree-j part of F_i.
struct BettiTable {
  std::map<std::pair<int, int>, std::size_t> entries;

  std::vector<std::size_t> totals() const {
    std::vector<std::size_t> t;
    for (const auto& [key, v] : entries) {
      auto i = static_cast<std::size_t>(key.first);
      if (t.size() <= i) t.resize(i + 1, 0);
      t[i] += v;
    }
    return t;
  }
  std::size_t at(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
  }
  friend bool operator==(const BettiTable&, const BettiTable&) = default;

  // Rows are strata j - i, columns homological index i; zeros print as '.'.
  std::string to_text() const {
    if (entries.empty()) return "(zero)\n";
    int imax = 0, smin = entries.begin()->first.second - entries.begin()->first.first, smax = smin;
    for (const auto& [key, v] : entries) {
      imax = std::max(imax, key.first);
      smin = std::min(smin, key.second - key.first);
      smax = std::max(smax, key.second - key.first);
    }
    auto pad = [](std::string s, std::size_t w) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };
    std::string out = pad("", 6);
    for (int i = 0; i <= imax; ++i) out += pad(std::to_string(i), 6);
    out += "\n" + pad("total:", 6);
    auto tot = totals();
    for (int i = 0; i <= imax; ++i)
      out += pad(std::to_string(static_cast<std::size_t>(i) < tot.size() ? tot[static_cast<std::size_t>(i)] : 0), 6);
    out += "\n";
    for (int s = smin; s <= smax; ++s) {
      out += pad(std::to_string(s) + ":", 6);
      for (int i = 0; i <= imax; ++i) {
        auto v = at(i, i + s);
        out += pad(v ? std::to_string(v) : ".", 6);
      }
      out += "\n";
    }
    return out;
  }
};

template <CoefficientField K>
BettiTable betti_table(const FreeComplex<K>& C) {
  BettiTable t;
  for (int i = 0; i <= C.top(); ++i)
    for (int d : C.module(i).degrees) ++t.entries[{i, d}];
  return t;
}

// Presentation of H_i(C) = ker d_i / im d_{i+1}.
template <CoefficientField K>
Presentation<K> homology(const QuotientRing<K>& ctx, const FreeComplex<K>& C, int i) {
  auto di = C.differential(i);
  ModuleMap<K> Z = di.rows() == 0 || di.cols() == 0 ? ModuleMap<K>::identity(C.ring(), C.module(i))
                                                     : syzygy_matrix(ctx, di);
  return subquotient(ctx, Z, C.differential(i + 1));
}

template <CoefficientField K>
bool homology_vanishes(const QuotientRing<K>& ctx, const FreeComplex<K>& C, int i) {
  if (C.module(i).rank() == 0) return true;
  auto di = C.differential(i);
  if (di.rows() == 0) {
    // ker d_i = F_i
    auto gb = image_basis(ctx, C.differential(i + 1));
    for (std::size_t j = 0; j < C.module(i).rank(); ++j)
      if (!gb.contains_basis_vector(j)) return false;
    return true;
  }
  auto Z = syzygy_matrix(ctx, di);
  auto gb = image_basis(ctx, C.differential(i + 1));
  for (const auto& z : Z.columns())
    if (!gb.contains(z)) return false;
  return true;
}

}  // namespace forge
