#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "forge/parse.hpp"
#include "forge/resolution.hpp"

namespace testing_helpers {

using namespace forge;
using Q = Rationals;
using Vec = VectorElement<Q>;
using Map = ModuleMap<Q>;
using Pres = Presentation<Q>;

inline RingPtr<Q> ring(std::vector<std::string> vars = {"x", "y", "z"}) { return make_ring<Q>(std::move(vars), Q{}); }

inline Polynomial<Q> P(const RingPtr<Q>& R, const std::string& s) { return parse_polynomial(R, s); }

inline Vec V(const RingPtr<Q>& R, std::initializer_list<const char*> entries) {
  Vec v;
  for (auto e : entries) v.push_back(P(R, e));
  return v;
}

inline std::vector<Polynomial<Q>> polys(const RingPtr<Q>& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial<Q>> out;
  for (auto g : gens) out.push_back(P(R, g));
  return out;
}

inline Ideal<Q> ideal(const RingPtr<Q>& R, std::initializer_list<const char*> gens) { return {polys(R, gens)}; }

// Matrix given by rows; target degrees default to 0.
inline Map rows_matrix(const RingPtr<Q>& R, const std::vector<std::vector<std::string>>& rows,
                       std::vector<int> target = {}) {
  if (target.empty()) target.assign(rows.size(), 0);
  std::vector<Vec> cols(rows.empty() ? 0 : rows[0].size());
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j) cols[j].push_back(P(R, row[j]));
  return Map::from_columns(R, FreeModule(target), cols);
}

inline Pres cyclic(const RingPtr<Q>& R, std::initializer_list<const char*> gens) {
  return Pres::cyclic(R, polys(R, gens));
}

inline std::vector<std::string> strings(const std::vector<Polynomial<Q>>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

// Generator strings, sorted; for ideals where only the set matters.
inline std::vector<std::string> sorted_strings(const std::vector<Polynomial<Q>>& ps) {
  auto out = strings(ps);
  std::sort(out.begin(), out.end());
  return out;
}

// Random homogeneous map: target degrees in {0,1}, source degrees in {lo, lo+1}.
inline Map random_map(const RingPtr<Q>& R, std::mt19937_64& gen, std::size_t rows, std::size_t cols, int lo = 2,
                      unsigned density = 3) {
  std::vector<int> tgt(rows), src(cols);
  for (auto& d : tgt) d = static_cast<int>(gen() % 2);
  for (auto& d : src) d = lo + static_cast<int>(gen() % 2);
  std::vector<Vec> columns;
  for (std::size_t j = 0; j < cols; ++j) {
    Vec c;
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<Term<Q>> terms;
      for (const auto& m : monomials_of_degree(R->nvars(), src[j] - tgt[i]))
        if (gen() % density == 0) terms.push_back({m, mpq_class(static_cast<long>(gen() % 7) - 3)});
      c.push_back(Polynomial<Q>::from_terms(R, terms));
    }
    columns.push_back(c);
  }
  return Map(R, FreeModule(src), FreeModule(tgt), columns);
}

// Relations (x_i e_j) of m·F0, to turn a presentation of M into one of M/mM.
inline std::vector<Vec> maximal_ideal_times(const RingPtr<Q>& R, const FreeModule& F) {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < F.rank(); ++j)
    for (std::size_t v = 0; v < R->nvars(); ++v) {
      Vec e(F.rank(), Polynomial<Q>(R));
      e[j] = Polynomial<Q>::variable(R, v);
      out.push_back(e);
    }
  return out;
}

}  // namespace testing_helpers
