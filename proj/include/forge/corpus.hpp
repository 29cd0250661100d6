#pragma once

#include <random>
#include <string>
#include <vector>

#include "forge/presentation.hpp"

namespace forge {

// Shape of the random presentations: generator twists are drawn from `twists`,
// relation degrees sit `min_entry_degree`..`max_entry_degree` above the lowest twist.
struct CorpusProfile {
  std::size_t min_rows = 1, max_rows = 3;
  std::size_t min_cols = 1, max_cols = 4;
  std::vector<int> twists{0, 1};
  int min_entry_degree = 1, max_entry_degree = 2;
  unsigned density = 2;      // each monomial kept with probability 1/density
  bool keep_free = false;    // keep presentations whose relations came out zero
};

// Deterministic in (ring, seed, count, profile). Over the polynomial ambient every module has
// finite projective dimension, so the only filter is a nonzero module (and, optionally, non-free).
template <CoefficientField K>
std::vector<Presentation<K>> generate_corpus(const RingPtr<K>& R, std::uint64_t seed, std::size_t count,
                                             const CorpusProfile& profile = {}) {
  if (count == 0) throw InputError("corpus count must be at least 1");
  std::mt19937_64 gen(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(gen() % (hi - lo + 1)); };
  QuotientRing<K> ctx(R);
  std::vector<Presentation<K>> out;
  for (int attempt = 0; out.size() < count && attempt < static_cast<int>(count) * 50; ++attempt) {
    std::size_t rows = pick(profile.min_rows, profile.max_rows), cols = pick(profile.min_cols, profile.max_cols);
    std::vector<int> tgt(rows);
    for (auto& d : tgt) d = profile.twists[gen() % profile.twists.size()];
    int base = *std::min_element(tgt.begin(), tgt.end());
    std::vector<VectorElement<K>> columns;
    std::vector<int> src;
    for (std::size_t j = 0; j < cols; ++j) {
      int dj = base + static_cast<int>(pick(static_cast<std::size_t>(profile.min_entry_degree),
                                            static_cast<std::size_t>(profile.max_entry_degree)));
      VectorElement<K> c;
      for (std::size_t i = 0; i < rows; ++i) {
        std::vector<Term<K>> terms;
        if (dj >= tgt[i])
          for (const auto& m : monomials_of_degree(R->nvars(), dj - tgt[i]))
            if (gen() % profile.density == 0)
              terms.push_back({m, R->field().from_int(static_cast<long>(gen() % 7) - 3)});
        c.push_back(Polynomial<K>::from_terms(R, terms));
      }
      bool zero = true;
      for (const auto& p : c) zero = zero && p.is_zero();
      if (zero && !profile.keep_free) continue;
      columns.push_back(std::move(c));
      src.push_back(dj);
    }
    Presentation<K> P{ModuleMap<K>(R, FreeModule(src), FreeModule(tgt), columns)};
    if (P.relations.cols() == 0 && !profile.keep_free) continue;
    if (is_zero_module(ctx, P)) continue;
    out.push_back(std::move(P));
  }
  if (out.size() < count) throw InputError("corpus profile produced too few nonzero modules");
  return out;
}

}  // namespace forge
