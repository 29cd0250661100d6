#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "forge/embeddings.hpp"

namespace forge {

namespace detail {

template <CoefficientField K>
std::string vector_label(const VectorElement<K>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

// Grades keyed by the printed generators; one cache per report.
template <CoefficientField K>
class GradeCache {
 public:
  explicit GradeCache(const QuotientRing<K>& ctx) : ctx_(ctx) {}
  int operator()(const Ideal<K>& J) {
    auto key = J.to_string();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    int g = grade_or_infinite(ctx_, J);
    cache_.emplace(key, g);
    return g;
  }

 private:
  const QuotientRing<K>& ctx_;
  std::map<std::string, int> cache_;
};

// One of -3..3 other than 0.
inline long nonzero_small(std::mt19937_64& gen) {
  long v = static_cast<long>(gen() % 6) + 1;
  return v > 3 ? 3 - v : v;
}

template <CoefficientField K>
Polynomial<K> dot(const VectorElement<K>& a, const VectorElement<K>& b) {
  Polynomial<K> s(a.at(0).ring());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

}  // namespace detail

// Order ideal of the element c (coordinates in the generators of S = coker B): {f(c) : f in Hom(S, R)}.
template <CoefficientField K>
Ideal<K> order_ideal_of(const QuotientRing<K>& ctx, const ModuleMap<K>& B, const VectorElement<K>& c) {
  if (c.size() != B.rows()) throw StructuralError("element does not live in the generators of S");
  auto H = syzygy_matrix(ctx, B.transpose());
  std::vector<Polynomial<K>> gens;
  for (const auto& h : H.columns()) gens.push_back(ctx.reduce(detail::dot(c, h)));
  return minimalize_ideal(ctx, gens);
}

// Order ideal of the k-th minimal generator of S_i = im d_i, presented as coker d_{i+1} on F_i.
template <CoefficientField K>
Ideal<K> order_ideal(const QuotientRing<K>& ctx, const Resolution<K>& res, int i, std::size_t k) {
  if (i < 1 || i > res.complex.top()) throw StructuralError("syzygy index " + std::to_string(i) + " out of range");
  return hom_of_submodule(ctx, res.complex.differential(i + 1), k);
}

struct OicEntry {
  int i = 0;
  std::size_t index = 0;
  bool probe = false;
  std::string beta;
  std::string order_ideal;
  int grade = 0;
  std::string entries_ideal;
  int entries_grade = 0;
  bool contains_entries = false;
  std::optional<int> reduced_grade;  // grade over R/(y) for a non-zero-divisor y in the entries ideal
  bool reduction_ok = true;
  Verdict verdict = Verdict::Fail;

  bool consistent() const { return contains_entries && grade >= entries_grade && reduction_ok; }
};

struct OicReport {
  std::string module_id;
  int pd = -1;  // -1 when the resolution was truncated
  int max_i = 0;
  bool partial = false;
  std::vector<OicEntry> entries;

  Verdict overall() const {
    for (const auto& e : entries)
      if (e.verdict != Verdict::Pass) return Verdict::Fail;
    return Verdict::Pass;
  }
  bool consistent() const {
    for (const auto& e : entries)
      if (!e.consistent()) return false;
    return true;
  }

  std::string to_text() const {
    std::string out = "module " + module_id + "  pd " + (pd < 0 ? std::string("?") : std::to_string(pd)) +
                      (partial ? "  (partial)" : "") + "\n";
    for (const auto& e : entries) {
      out += "  S_" + std::to_string(e.i) + (e.probe ? " probe " : " gen ") + std::to_string(e.index) + "  " + e.beta +
             "  O = " + e.order_ideal + "  grade " + grade_to_string(e.grade) + " >= " + std::to_string(e.i) + "  " +
             to_string(e.verdict) + "\n";
    }
    out += "overall " + to_string(overall()) + "\n";
    return out;
  }
};

struct OicOptions {
  int max_i = -1;           // default: up to pd
  int probes = 0;           // random unit combinations per syzygy level
  std::uint64_t seed = 0;
  bool reduction_check = true;
};

// Checks grade O_{S_i}(beta) >= i for every minimal generator beta = d_i(e_k).
template <CoefficientField K>
OicReport check_oic(const QuotientRing<K>& ctx, const Presentation<K>& M, const std::string& module_id,
                    const OicOptions& opt = {}) {
  OicReport rep;
  rep.module_id = module_id;
  auto res = free_resolution(ctx, M);
  rep.partial = res.truncated;
  rep.pd = res.truncated ? -1 : res.proj_dim();
  int top = res.truncated ? res.complex.top() - 1 : res.complex.length();
  rep.max_i = opt.max_i < 0 ? top : std::min(opt.max_i, top);
  detail::GradeCache<K> grade_of(ctx);
  std::mt19937_64 gen(opt.seed);
  const RingPtr<K>& R = ctx.ring();

  auto evaluate = [&](int i, std::size_t index, bool probe, const VectorElement<K>& c) {
    const auto& B = res.complex.differential(i + 1);
    const auto& d = res.complex.differential(i);
    OicEntry e;
    e.i = i;
    e.index = index;
    e.probe = probe;
    auto beta = d.apply(c);
    e.beta = detail::vector_label(beta);
    auto O = order_ideal_of(ctx, B, c);
    e.order_ideal = O.to_string();
    e.grade = O.empty() ? 0 : grade_of(O);
    auto J = minimalize_ideal(ctx, beta);
    e.entries_ideal = J.to_string();
    e.entries_grade = J.empty() ? 0 : grade_of(J);
    e.contains_entries = ideal_contains(ctx, O, J);
    if (opt.reduction_check && i >= 2 && e.grade != kInfiniteGrade && !J.empty()) {
      for (const auto& y : J.generators) {
        if (!is_nonzerodivisor(ctx, y)) continue;
        auto ctx_y = ctx.extended({y});
        e.reduced_grade = grade_or_infinite(ctx_y, O);
        e.reduction_ok = *e.reduced_grade != kInfiniteGrade && e.grade >= 1 + *e.reduced_grade;
        break;
      }
    }
    e.verdict = e.grade >= i ? Verdict::Pass : Verdict::Fail;
    rep.entries.push_back(std::move(e));
  };

  for (int i = 1; i <= rep.max_i; ++i) {
    const FreeModule& Fi = res.complex.module(i);
    for (std::size_t k = 0; k < Fi.rank(); ++k) {
      auto c = zero_vector(R, Fi.rank());
      c[k] = Polynomial<K>::from_int(R, 1);
      evaluate(i, k, false, c);
    }
    for (int p = 0; p < opt.probes && Fi.rank() > 1; ++p) {
      std::size_t k = gen() % Fi.rank();
      auto c = zero_vector(R, Fi.rank());
      c[k] = Polynomial<K>::from_int(R, 1);
      for (std::size_t j = 0; j < Fi.rank(); ++j)
        if (j != k && Fi.degree(j) == Fi.degree(k)) c[j] = Polynomial<K>::from_int(R, detail::nonzero_small(gen));
      evaluate(i, k, true, c);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Free split: M ⊇ F = R^s on part of a minimal generating set with grade(M/F) > 0.

template <CoefficientField K>
struct FreeSplit {
  std::string status = "INCONCLUSIVE";  // OK or INCONCLUSIVE
  long long rank = 0;
  ModuleMap<K> basis;         // generators of F as columns in the generators of M
  Presentation<K> quotient;   // M' = M / F
  Presentation<K> module;     // minimal presentation of M
  int candidates_tried = 0;
};

namespace detail {

template <CoefficientField K>
bool free_split_candidate(const QuotientRing<K>& ctx, const Presentation<K>& M, const ModuleMap<K>& A) {
  // F = im A must be free of rank s: ker [A | B] has zero A-part
  if (A.cols() > 0) {
    auto S = syzygy_matrix(ctx, ModuleMap<K>::hstack(A, M.relations));
    for (const auto& c : S.columns())
      for (std::size_t q = 0; q < A.cols(); ++q)
        if (!ctx.reduce(c[q]).is_zero()) return false;
  }
  // Hom(M/F, R) = 0
  auto B2 = ModuleMap<K>::hstack(M.relations, A);
  if (B2.rows() == 0) return true;
  return syzygy_matrix(ctx, B2.transpose()).cols() == 0;
}

}  // namespace detail

// Search order: basis subsets of size rank in lexicographic order (at most 50), then up to
// 50 seeded k-linear combinations of the generators.
template <CoefficientField K>
FreeSplit<K> free_split(const QuotientRing<K>& ctx, const Presentation<K>& P, std::uint64_t seed = 0) {
  const RingPtr<K>& R = ctx.ring();
  auto M = minimal_generators(ctx, P).presentation;
  FreeSplit<K> out{"INCONCLUSIVE", module_rank(ctx, M), ModuleMap<K>::zero(R, FreeModule{}, M.generators()), M, M, 0};
  const std::size_t r = M.num_generators();
  const auto s = static_cast<std::size_t>(out.rank);
  auto accept = [&](const ModuleMap<K>& A) {
    ++out.candidates_tried;
    if (!detail::free_split_candidate(ctx, M, A)) return false;
    out.status = "OK";
    out.basis = A;
    out.quotient = minimal_generators(ctx, Presentation<K>{ModuleMap<K>::hstack(M.relations, A)}).presentation;
    return true;
  };
  if (s == 0) {
    // torsion: grade M > 0 exactly when Hom(M, R) = 0
    accept(out.basis);
    return out;
  }
  if (s > r) return out;
  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  for (int tries = 0; tries < 50; ++tries) {
    std::vector<VectorElement<K>> cols;
    for (auto i : idx) {
      auto v = zero_vector(R, r);
      v[i] = Polynomial<K>::from_int(R, 1);
      cols.push_back(v);
    }
    if (accept(ModuleMap<K>::from_columns(R, M.generators(), cols))) return out;
    // next subset
    std::size_t p = s;
    while (p > 0 && idx[p - 1] == r - s + p - 1) --p;
    if (p == 0) break;
    ++idx[p - 1];
    for (std::size_t q = p; q < s; ++q) idx[q] = idx[q - 1] + 1;
  }
  std::mt19937_64 gen(seed);
  for (int tries = 0; tries < 50; ++tries) {
    std::vector<VectorElement<K>> cols;
    for (std::size_t c = 0; c < s; ++c) {
      // a homogeneous combination: generators sharing the degree of a random pivot
      std::size_t k = gen() % r;
      auto v = zero_vector(R, r);
      for (std::size_t j = 0; j < r; ++j)
        if (M.generators().degree(j) == M.generators().degree(k))
          v[j] = Polynomial<K>::from_int(R, j == k ? 1 : detail::nonzero_small(gen));
      cols.push_back(v);
    }
    if (accept(ModuleMap<K>::from_columns(R, M.generators(), cols))) return out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Regular sequences with Tor vanishing

struct SequenceStep {
  std::string element;
  bool nonzerodivisor = false;  // re-verified: annihilator modulo the predecessors is zero
  long long split_rank = 0;
  std::string embed_route;  // empty on the last rung
  int pd_next = -1;         // pd of M_i over R_i
};

struct TorCheck {
  std::string module;
  int j = 0;
  Verdict verdict = Verdict::Skipped;
};

template <CoefficientField K>
struct RegularSequenceCertificate {
  std::string status = "OK";  // OK or INCONCLUSIVE
  std::string note;
  int h = 0;
  std::vector<Polynomial<K>> elements;
  std::vector<SequenceStep> steps;
  std::vector<TorCheck> tor;

  bool verified() const {
    if (status != "OK") return false;
    for (const auto& s : steps)
      if (!s.nonzerodivisor) return false;
    for (const auto& t : tor)
      if (t.verdict == Verdict::Fail) return false;
    return true;
  }
};

// x_1..x_k is an N-sequence on N = coker B and N/(x)N != 0.
template <CoefficientField K>
bool is_module_sequence(const QuotientRing<K>& ctx, const Presentation<K>& N, const std::vector<Polynomial<K>>& x) {
  const RingPtr<K>& R = ctx.ring();
  QuotientRing<K> cur = ctx;
  const std::size_t r = N.num_generators();
  for (const auto& f : x) {
    std::vector<VectorElement<K>> cols;
    for (std::size_t j = 0; j < r; ++j) {
      auto v = zero_vector(R, r);
      v[j] = f;
      cols.push_back(v);
    }
    if (r == 0) return false;
    ModuleMap<K> X(R, N.generators().shifted(f.degree()), N.generators(), cols);
    auto S = syzygy_matrix(cur, ModuleMap<K>::hstack(X, N.relations));
    auto gb = image_basis(cur, N.relations);
    for (const auto& c : S.columns()) {
      VectorElement<K> u(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(r));
      if (!gb.contains(u)) return false;
    }
    cur = cur.extended({f});
  }
  return !is_zero_module(cur, N);
}

// Follows the ladder: split off a free part, pick a non-zero-divisor in the annihilator of
// the rest, embed into a module of smaller projective dimension over the quotient, repeat.
template <CoefficientField K>
RegularSequenceCertificate<K> tor_vanishing_sequence(const QuotientRing<K>& ctx, const Presentation<K>& M,
                                                     const std::vector<std::pair<std::string, Presentation<K>>>& Ns = {},
                                                     std::uint64_t seed = 0) {
  RegularSequenceCertificate<K> cert;
  const RingPtr<K>& R = ctx.ring();
  cert.h = proj_dim(ctx, M);
  std::mt19937_64 gen(seed);
  QuotientRing<K> cur = ctx;
  Presentation<K> Mi = M;
  for (int i = 1; i <= cert.h; ++i) {
    SequenceStep step;
    auto split = free_split(cur, Mi, seed + static_cast<std::uint64_t>(i));
    step.split_rank = split.rank;
    if (split.status != "OK") {
      cert.status = "INCONCLUSIVE";
      cert.note = "free split failed at rung " + std::to_string(i);
      return cert;
    }
    auto ann = annihilator(cur, split.quotient);
    std::optional<Polynomial<K>> x;
    for (const auto& g : ann.generators)
      if (is_nonzerodivisor(cur, g)) {
        x = g;
        break;
      }
    for (int tries = 0; !x && tries < 50 && !ann.empty(); ++tries) {
      auto k = gen() % ann.generators.size();
      int deg = ann.generators[k].degree();
      Polynomial<K> c = ann.generators[k];
      for (std::size_t j = 0; j < ann.generators.size(); ++j)
        if (j != k && ann.generators[j].degree() == deg)
          c += ann.generators[j] * Polynomial<K>::from_int(R, detail::nonzero_small(gen));
      if (is_nonzerodivisor(cur, c)) x = c;
    }
    if (!x) {
      cert.status = "INCONCLUSIVE";
      cert.note = "no non-zero-divisor found in the annihilator at rung " + std::to_string(i);
      return cert;
    }
    step.element = x->to_string();
    cert.elements.push_back(*x);
    if (i < cert.h) {
      auto emb = embed_module(cur, split.quotient, {*x});
      step.embed_route = to_string(emb.route);
      cur = cur.extended({*x});
      Mi = emb.Q;
      step.pd_next = proj_dim(cur, Mi);
    }
    cert.steps.push_back(step);
  }

  // independent re-verification of every step
  QuotientRing<K> chk = ctx;
  for (std::size_t k = 0; k < cert.elements.size(); ++k) {
    cert.steps[k].nonzerodivisor = is_nonzerodivisor(chk, cert.elements[k]);
    chk = chk.extended({cert.elements[k]});
  }

  auto run = [&](const std::string& name, const Presentation<K>& N) {
    bool seq = is_module_sequence(ctx, N, cert.elements);
    auto res = free_resolution(ctx, M);
    for (int j = 1; j <= cert.h + 1; ++j) {
      TorCheck t{name, j, Verdict::Skipped};
      if (seq) t.verdict = is_zero_module(ctx, tor_module(ctx, res, N, j)) ? Verdict::Pass : Verdict::Fail;
      cert.tor.push_back(t);
    }
  };
  run("R", Presentation<K>::free(R, FreeModule::free(1)));
  for (const auto& [name, N] : Ns) run(name, N);
  return cert;
}

// ---------------------------------------------------------------------------
// Non-zero-divisor check for minimal generators

struct NzdEntry {
  std::string generator;
  std::string annihilator;  // (0 : g), printed
  bool nonzerodivisor = false;
};

struct NzdReport {
  std::vector<NzdEntry> entries;
  int grade = 0;
  int pd = -1;
  std::string profile;  // GRADE2_HEIGHT2, OTHER or UNSUPPORTED

  Verdict overall() const {
    for (const auto& e : entries)
      if (!e.nonzerodivisor) return Verdict::Fail;
    return Verdict::Pass;
  }
};

// (0 :_R g) as an ideal; replaceable for negative controls.
template <CoefficientField K>
using ColonRoutine = std::function<Ideal<K>(const QuotientRing<K>&, const Polynomial<K>&)>;

template <CoefficientField K>
Ideal<K> zero_colon(const QuotientRing<K>& ctx, const Polynomial<K>& g) {
  auto A = ModuleMap<K>::from_columns(ctx.ring(), FreeModule::free(1), {{ctx.reduce(g)}});
  auto S = syzygy_matrix(ctx, A);
  std::vector<Polynomial<K>> gens;
  for (const auto& c : S.columns()) gens.push_back(c[0]);
  return minimalize_ideal(ctx, gens);
}

// Height is taken equal to grade, which holds over the Cohen-Macaulay polynomial ambient;
// any other ambient reports the profile as UNSUPPORTED.
template <CoefficientField K>
NzdReport nzd_check(const QuotientRing<K>& ctx, const Ideal<K>& I, ColonRoutine<K> colon = zero_colon<K>) {
  NzdReport rep;
  auto J = minimalize_ideal(ctx, I.generators);
  for (const auto& g : J.generators) {
    auto ann = colon(ctx, g);
    rep.entries.push_back({g.to_string(), ann.to_string(), ann.empty()});
  }
  rep.grade = grade_or_infinite(ctx, J);
  auto res = free_resolution(ctx, quotient_presentation(J, ctx.ring()));
  rep.pd = res.truncated ? -1 : res.proj_dim();
  if (!ctx.is_polynomial_ring())
    rep.profile = "UNSUPPORTED";
  else
    rep.profile = rep.grade == 2 ? "GRADE2_HEIGHT2" : "OTHER";
  return rep;
}

}  // namespace forge
