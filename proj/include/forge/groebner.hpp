#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "forge/errors.hpp"
#include "forge/module.hpp"

namespace forge {

template <CoefficientField K>
struct ModuleTerm {
  std::uint32_t comp;
  Monomial mono;
  typename K::Element coeff;
};

// Terms sorted descending in the position-over-term order, where a smaller
// component index ranks higher. A vector's leading term is front().
template <CoefficientField K>
using SparseVector = std::vector<ModuleTerm<K>>;

template <CoefficientField K>
std::strong_ordering compare_terms(const PolyRing<K>& ring, const ModuleTerm<K>& a, const ModuleTerm<K>& b) {
  if (a.comp != b.comp) return b.comp <=> a.comp;
  return ring.compare(a.mono, b.mono);
}

// Per-component term lists are already descending, so concatenating
// components in index order yields the module order directly.
template <CoefficientField K>
SparseVector<K> to_sparse(const VectorElement<K>& v, std::uint32_t offset = 0) {
  SparseVector<K> out;
  for (std::size_t j = 0; j < v.size(); ++j)
    for (const auto& t : v[j].terms()) out.push_back({static_cast<std::uint32_t>(j + offset), t.mono, t.coeff});
  return out;
}

template <CoefficientField K>
VectorElement<K> from_sparse(const RingPtr<K>& ring, const SparseVector<K>& v, std::size_t rank,
                             std::uint32_t offset = 0) {
  std::vector<std::vector<Term<K>>> parts(rank);
  for (const auto& t : v) {
    if (t.comp < offset) continue;
    std::size_t c = t.comp - offset;
    if (c >= rank) continue;
    parts[c].push_back({t.mono, t.coeff});
  }
  VectorElement<K> out;
  out.reserve(rank);
  for (auto& p : parts) out.push_back(Polynomial<K>::from_sorted_terms(ring, std::move(p)));
  return out;
}

template <CoefficientField K>
int sparse_degree(const SparseVector<K>& v, const FreeModule& ambient) {
  return v.front().mono.degree() + ambient.degree(v.front().comp);
}

// p[start..] - c * m * g, assuming the leading terms cancel exactly.
template <CoefficientField K>
SparseVector<K> subtract_multiple(const PolyRing<K>& ring, const SparseVector<K>& p, std::size_t start,
                                  const SparseVector<K>& g, const typename K::Element& c, const Monomial& m) {
  const K& k = ring.field();
  SparseVector<K> out;
  out.reserve(p.size() - start + g.size());
  std::size_t i = start + 1, j = 1;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    ModuleTerm<K> t{g[j].comp, g[j].mono * m, k.neg(k.mul(g[j].coeff, c))};
    if (i == p.size()) {
      out.push_back(std::move(t));
      ++j;
      continue;
    }
    auto ord = compare_terms(ring, p[i], t);
    if (ord > 0) {
      out.push_back(p[i++]);
    } else if (ord < 0) {
      out.push_back(std::move(t));
      ++j;
    } else {
      auto s = k.add(p[i].coeff, t.coeff);
      if (!k.is_zero(s)) out.push_back({t.comp, t.mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

template <CoefficientField K>
SparseVector<K> make_monic(const PolyRing<K>& ring, SparseVector<K> v) {
  if (v.empty()) return v;
  const K& k = ring.field();
  if (k.is_one(v.front().coeff)) return v;
  auto inv = k.inv(v.front().coeff);
  for (auto& t : v) t.coeff = k.mul(t.coeff, inv);
  return v;
}

// A growable set of monic vectors with a divisor index on leading terms.
template <CoefficientField K>
class ReductionSet {
 public:
  ReductionSet(RingPtr<K> ring, FreeModule ambient) : ring_(std::move(ring)), ambient_(std::move(ambient)) {
    by_comp_.resize(ambient_.rank());
  }

  const RingPtr<K>& ring() const { return ring_; }
  const FreeModule& ambient() const { return ambient_; }
  const std::vector<SparseVector<K>>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }

  std::size_t push(SparseVector<K> v) {
    const auto& lead = v.front();
    by_comp_.at(lead.comp).push_back(elems_.size());
    masks_.push_back(lead.mono.support_mask());
    elems_.push_back(std::move(v));
    return elems_.size() - 1;
  }
  void replace(std::size_t i, SparseVector<K> v) { elems_[i] = std::move(v); }

  std::optional<std::size_t> find_reducer(const ModuleTerm<K>& t) const {
    std::uint32_t mask = t.mono.support_mask();
    for (std::size_t idx : by_comp_[t.comp]) {
      if (masks_[idx] & ~mask) continue;
      if (elems_[idx].front().mono.divides(t.mono)) return idx;
    }
    return std::nullopt;
  }

  // Full reduction of the terms lying in components below `boundary`;
  // terms at or beyond the boundary are returned untouched.
  SparseVector<K> reduce(SparseVector<K> p, std::uint32_t boundary) const {
    const PolyRing<K>& ring = *ring_;
    SparseVector<K> rem;
    std::size_t pos = 0;
    while (pos < p.size()) {
      const auto& t = p[pos];
      if (t.comp >= boundary) break;
      auto r = find_reducer(t);
      if (!r) {
        rem.push_back(t);
        ++pos;
        continue;
      }
      const auto& g = elems_[*r];
      p = subtract_multiple(ring, p, pos, g, t.coeff, t.mono / g.front().mono);
      pos = 0;
    }
    rem.insert(rem.end(), p.begin() + static_cast<std::ptrdiff_t>(pos), p.end());
    return rem;
  }
  SparseVector<K> reduce(SparseVector<K> p) const {
    return reduce(std::move(p), static_cast<std::uint32_t>(ambient_.rank()));
  }

 private:
  RingPtr<K> ring_;
  FreeModule ambient_;
  std::vector<SparseVector<K>> elems_;
  std::vector<std::uint32_t> masks_;
  std::vector<std::vector<std::size_t>> by_comp_;
};

// Reduced Gröbner basis of a graded submodule of a free module.
template <CoefficientField K>
class GroebnerBasis {
 public:
  explicit GroebnerBasis(ReductionSet<K> set) : set_(std::move(set)) {}

  const RingPtr<K>& ring() const { return set_.ring(); }
  const FreeModule& ambient() const { return set_.ambient(); }
  const std::vector<SparseVector<K>>& elements() const { return set_.elements(); }
  std::size_t size() const { return set_.size(); }
  bool is_zero() const { return set_.size() == 0; }

  SparseVector<K> reduce(SparseVector<K> v) const { return set_.reduce(std::move(v)); }
  SparseVector<K> reduce(SparseVector<K> v, std::uint32_t boundary) const {
    return set_.reduce(std::move(v), boundary);
  }

  VectorElement<K> normal_form(const VectorElement<K>& v) const {
    if (v.size() != ambient().rank()) throw StructuralError("normal_form: ambient mismatch");
    return from_sparse(ring(), reduce(to_sparse(v)), ambient().rank());
  }
  bool contains(const VectorElement<K>& v) const {
    if (v.size() != ambient().rank()) throw StructuralError("contains: ambient mismatch");
    return reduce(to_sparse(v)).empty();
  }
  std::vector<VectorElement<K>> generators() const {
    std::vector<VectorElement<K>> out;
    for (const auto& e : elements()) out.push_back(from_sparse(ring(), e, ambient().rank()));
    return out;
  }
  // The quotient F / U has no nonzero element in component j iff some leading term is the bare basis vector e_j.
  bool contains_basis_vector(std::size_t j) const {
    for (const auto& e : elements())
      if (e.front().comp == j && e.front().mono.is_one()) return true;
    return false;
  }

 private:
  ReductionSet<K> set_;
};

template <CoefficientField K>
struct BuchbergerOutput {
  GroebnerBasis<K> basis;
  // Indices of non-background inputs that were not redundant at their degree:
  // together with the background they generate the submodule minimally.
  std::vector<std::size_t> minimal;
};

namespace detail {

template <CoefficientField K>
struct Pair {
  int degree;
  std::size_t i, j;
  bool operator<(const Pair& o) const { return std::tie(degree, i, j) < std::tie(o.degree, o.i, o.j); }
};

}  // namespace detail

// Homogeneous Buchberger with the normal strategy: all work is processed
// degree by degree, pairs before inputs, pairs in (i, j) order. Inputs flagged
// as background are inserted but never counted as minimal.
template <CoefficientField K>
BuchbergerOutput<K> buchberger(const RingPtr<K>& ring, const FreeModule& ambient,
                               const std::vector<SparseVector<K>>& inputs, const std::vector<bool>& background) {
  const PolyRing<K>& R = *ring;
  if (background.size() != inputs.size()) throw StructuralError("buchberger: flag count mismatch");

  struct Input {
    int degree;
    std::size_t index;
  };
  std::vector<Input> order;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& v = inputs[i];
    if (v.empty()) continue;
    int d = sparse_degree(v, ambient);
    for (const auto& t : v) {
      if (t.comp >= ambient.rank()) throw StructuralError("buchberger: component out of range");
      if (t.mono.degree() + ambient.degree(t.comp) != d)
        throw InhomogeneousError("buchberger: inhomogeneous generator " + std::to_string(i));
    }
    order.push_back({d, i});
  }
  std::stable_sort(order.begin(), order.end(), [&](const Input& a, const Input& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return static_cast<bool>(background[a.index]) > static_cast<bool>(background[b.index]);
  });

  ReductionSet<K> set(ring, ambient);
  std::vector<Monomial> leads;
  std::vector<std::uint32_t> comps;
  std::set<detail::Pair<K>> pairs;
  std::vector<std::size_t> minimal;

  auto pair_lcm = [&](std::size_t i, std::size_t j) { return Monomial::lcm(leads[i], leads[j]); };

  auto insert = [&](SparseVector<K> v) {
    v = make_monic(R, std::move(v));
    const Monomial lead = v.front().mono;
    const std::uint32_t comp = v.front().comp;
    std::size_t k = set.push(std::move(v));
    leads.push_back(lead);
    comps.push_back(comp);

    // chain criterion on existing pairs
    for (auto it = pairs.begin(); it != pairs.end();) {
      if (comps[it->i] == comp) {
        Monomial l = pair_lcm(it->i, it->j);
        if (lead.divides(l) && !(pair_lcm(it->i, k) == l) && !(pair_lcm(it->j, k) == l)) {
          it = pairs.erase(it);
          continue;
        }
      }
      ++it;
    }
    // new pairs, filtered by the M and F criteria
    std::vector<std::pair<std::size_t, Monomial>> fresh;
    for (std::size_t i = 0; i < k; ++i)
      if (comps[i] == comp) fresh.push_back({i, pair_lcm(i, k)});
    std::vector<bool> keep(fresh.size(), true);
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      for (std::size_t b = 0; b < fresh.size() && keep[a]; ++b) {
        if (a == b) continue;
        const Monomial& la = fresh[a].second;
        const Monomial& lb = fresh[b].second;
        if (lb == la) {
          if (b < a) keep[a] = false;
        } else if (lb.divides(la)) {
          keep[a] = false;
        }
      }
    }
    for (std::size_t a = 0; a < fresh.size(); ++a)
      if (keep[a]) pairs.insert({fresh[a].second.degree() + ambient.degree(comp), fresh[a].first, k});
  };

  std::size_t next_input = 0;
  while (!pairs.empty() || next_input < order.size()) {
    int d = next_input < order.size() ? order[next_input].degree : pairs.begin()->degree;
    if (!pairs.empty()) d = std::min(d, pairs.begin()->degree);

    while (!pairs.empty() && pairs.begin()->degree == d) {
      auto p = *pairs.begin();
      pairs.erase(pairs.begin());
      const auto& gi = set.elements()[p.i];
      const auto& gj = set.elements()[p.j];
      Monomial l = pair_lcm(p.i, p.j);
      SparseVector<K> s;
      Monomial mi = l / leads[p.i];
      s.reserve(gi.size());
      for (const auto& t : gi) s.push_back({t.comp, t.mono * mi, t.coeff});
      s = subtract_multiple(R, s, 0, gj, R.field().one(), l / leads[p.j]);
      s = set.reduce(std::move(s));
      if (!s.empty()) insert(std::move(s));
    }
    while (next_input < order.size() && order[next_input].degree == d) {
      std::size_t idx = order[next_input++].index;
      SparseVector<K> s = set.reduce(inputs[idx]);
      if (s.empty()) continue;
      if (!background[idx]) minimal.push_back(idx);
      insert(std::move(s));
    }
  }

  // Leading terms are already pairwise non-divisible; reduce the tails.
  std::vector<SparseVector<K>> elems = set.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    SparseVector<K> tail(elems[i].begin() + 1, elems[i].end());
    SparseVector<K> reduced = set.reduce(std::move(tail));
    SparseVector<K> v;
    v.reserve(reduced.size() + 1);
    v.push_back(elems[i].front());
    v.insert(v.end(), reduced.begin(), reduced.end());
    set.replace(i, v);
  }
  elems = set.elements();
  std::sort(elems.begin(), elems.end(), [&](const SparseVector<K>& a, const SparseVector<K>& b) {
    return compare_terms(R, a.front(), b.front()) > 0;
  });
  ReductionSet<K> final_set(ring, ambient);
  for (auto& e : elems) final_set.push(std::move(e));
  std::sort(minimal.begin(), minimal.end());
  return {GroebnerBasis<K>(std::move(final_set)), std::move(minimal)};
}

template <CoefficientField K>
GroebnerBasis<K> buchberger(const RingPtr<K>& ring, const std::vector<VectorElement<K>>& gens,
                            const FreeModule& ambient) {
  std::vector<SparseVector<K>> sparse;
  for (const auto& g : gens) {
    if (g.size() != ambient.rank()) throw StructuralError("buchberger: generator length does not match ambient");
    sparse.push_back(to_sparse(g));
  }
  return buchberger(ring, ambient, sparse, std::vector<bool>(sparse.size(), false)).basis;
}

// Reduced Gröbner basis of an ideal, as polynomials.
template <CoefficientField K>
std::vector<Polynomial<K>> ideal_groebner_basis(const RingPtr<K>& ring, const std::vector<Polynomial<K>>& gens) {
  std::vector<VectorElement<K>> vecs;
  for (const auto& g : gens) vecs.push_back({g});
  auto gb = buchberger(ring, vecs, FreeModule::free(1));
  std::vector<Polynomial<K>> out;
  for (const auto& v : gb.generators()) out.push_back(v[0]);
  return out;
}

// Every S-vector of the basis reduces to zero; used to re-verify results in tests.
template <CoefficientField K>
bool satisfies_buchberger_criterion(const GroebnerBasis<K>& gb) {
  const PolyRing<K>& R = *gb.ring();
  const auto& el = gb.elements();
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = i + 1; j < el.size(); ++j) {
      if (el[i].front().comp != el[j].front().comp) continue;
      Monomial l = Monomial::lcm(el[i].front().mono, el[j].front().mono);
      SparseVector<K> s;
      Monomial mi = l / el[i].front().mono;
      auto ci = R.field().inv(el[i].front().coeff);
      for (const auto& t : el[i]) s.push_back({t.comp, t.mono * mi, R.field().mul(t.coeff, ci)});
      auto cj = R.field().inv(el[j].front().coeff);
      s = subtract_multiple(R, s, 0, el[j], cj, l / el[j].front().mono);
      if (!gb.reduce(std::move(s)).empty()) return false;
    }
  return true;
}

}  // namespace forge
