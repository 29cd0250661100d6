#include <gtest/gtest.h>

#include "forge/corpus.hpp"
#include "forge/order_ideals.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace testing_helpers;

namespace {

// Over the polynomial ring grade equals codimension: nvars - dim(R/J), read from a Hilbert function.
int oracle_grade(const RingPtr<Q>& R, const std::vector<Polynomial<Q>>& gens) {
  QuotientRing<Q> ctx(R);
  std::vector<Vec> cols;
  for (const auto& g : gens) cols.push_back({g});
  auto h = oracle::hilbert(ctx, Map::from_columns(R, FreeModule::free(1), cols), 0, 12);
  return static_cast<int>(R->nvars()) - oracle::dimension_from_hilbert(h);
}

// dim_k Hom(coker B, R) in degree d, from a graded-piece kernel of B^T.
std::size_t oracle_hom_dim(const Map& B, int d) {
  return oracle::kernel_basis(B.ring(), B.transpose(), d).size();
}

}  // namespace

TEST(OrderIdeal, KoszulFirstSyzygyGenerator) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto res = free_resolution(ctx, cyclic(R, {"x", "y", "z"}));
  const auto d2 = res.complex.differential(2);
  std::size_t k = d2.cols();
  for (std::size_t j = 0; j < d2.cols(); ++j) {
    auto c = d2.column(j);
    if (c == V(R, {"y", "-x", "0"}) || c == V(R, {"-y", "x", "0"})) k = j;
  }
  ASSERT_LT(k, d2.cols());
  auto O = order_ideal(ctx, res, 2, k);
  EXPECT_EQ(sorted_strings(O.generators), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(grade(ctx, O), 2);
  EXPECT_EQ(oracle_grade(R, O.generators), 2);
  const auto d3 = res.complex.differential(3);
  for (int e = 0; e <= 4; ++e) {
    std::vector<Vec> gens;
    for (const auto& g : O.generators) gens.push_back({g});
    EXPECT_EQ(oracle::span_dim(R, FreeModule::free(1), gens, e), oracle::order_ideal_dim(R, d3, k, e)) << e;
  }
}

TEST(OrderIdeal, ContainsEntriesAndFreeIsUnit) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  // S = R^2 with no relations; beta = e_0 has the unit order ideal
  auto B = Map::zero(R, FreeModule{}, FreeModule({1, 1}));
  auto O = order_ideal_of(ctx, B, V(R, {"1", "0"}));
  EXPECT_TRUE(is_unit_ideal(ctx, O));
  EXPECT_EQ(grade_or_infinite(ctx, O), kInfiniteGrade);
  // element x*e_0 + y*e_1: coordinate functionals give x and y
  auto Oxy = order_ideal_of(ctx, B, V(R, {"x", "y"}));
  EXPECT_TRUE(ideal_contains(ctx, Oxy, ideal(R, {"x"})));
  EXPECT_EQ(sorted_strings(Oxy.generators), (std::vector<std::string>{"x", "y"}));
  EXPECT_THROW(order_ideal_of(ctx, B, V(R, {"1"})), StructuralError);
  auto res = free_resolution(ctx, cyclic(R, {"x"}));
  EXPECT_THROW(order_ideal(ctx, res, 3, 0), StructuralError);
}

TEST(CheckOic, KoszulGradesPerLevel) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto rep = check_oic(ctx, cyclic(R, {"x", "y", "z"}), "R/m");
  EXPECT_EQ(rep.pd, 3);
  EXPECT_FALSE(rep.partial);
  ASSERT_EQ(rep.entries.size(), 3u + 3u + 1u);
  std::vector<std::size_t> per_level(4, 0);
  for (const auto& e : rep.entries) {
    ++per_level[static_cast<std::size_t>(e.i)];
    // S_1 = m and S_2 give i variables; S_3 = im d_3 is free, so its generator has the unit ideal
    EXPECT_EQ(e.grade, e.i < 3 ? e.i : kInfiniteGrade) << e.order_ideal;
    EXPECT_EQ(e.verdict, Verdict::Pass);
    EXPECT_TRUE(e.consistent()) << e.order_ideal;
  }
  EXPECT_EQ(per_level, (std::vector<std::size_t>{0, 3, 3, 1}));
  // pin the grades independently
  auto res = free_resolution(ctx, cyclic(R, {"x", "y", "z"}));
  for (int i = 1; i <= 2; ++i)
    for (std::size_t k = 0; k < res.complex.module(i).rank(); ++k)
      EXPECT_EQ(oracle_grade(R, order_ideal(ctx, res, i, k).generators), i) << i << " " << k;
  std::vector<Vec> unit_cols;
  for (const auto& g : order_ideal(ctx, res, 3, 0).generators) unit_cols.push_back({g});
  EXPECT_EQ(oracle::hilbert(ctx, Map::from_columns(R, FreeModule::free(1), unit_cols), 0, 4),
            std::vector<long>(5, 0));
  EXPECT_EQ(rep.overall(), Verdict::Pass);
  EXPECT_NE(rep.to_text().find("overall PASS"), std::string::npos);
}

TEST(CheckOic, FreeModuleIsVacuous) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto rep = check_oic(ctx, Pres::free(R, FreeModule({0, 1})), "free");
  EXPECT_EQ(rep.pd, 0);
  EXPECT_TRUE(rep.entries.empty());
  EXPECT_EQ(rep.overall(), Verdict::Pass);
}

TEST(CheckOic, SeededCorpusAndProbes) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto corpus = generate_corpus(R, 7, 5);
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    OicOptions opt;
    opt.probes = 2;
    opt.seed = n;
    auto rep = check_oic(ctx, corpus[n], "c" + std::to_string(n), opt);
    EXPECT_EQ(rep.overall(), Verdict::Pass) << rep.to_text();
    EXPECT_TRUE(rep.consistent()) << rep.to_text();
    EXPECT_FALSE(rep.partial);
  }
}

TEST(Corpus, DeterministicAndNonzero) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto a = generate_corpus(R, 42, 3), b = generate_corpus(R, 42, 3);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].relations, b[i].relations);
    EXPECT_FALSE(is_zero_module(ctx, a[i]));
  }
  EXPECT_NE(generate_corpus(R, 43, 3)[0].relations.to_strings(), a[0].relations.to_strings());
  CorpusProfile zero;
  zero.min_entry_degree = zero.max_entry_degree = 1;
  zero.density = 1000000;
  zero.keep_free = true;
  for (const auto& P : generate_corpus(R, 1, 3, zero)) EXPECT_TRUE(P.relations.is_zero());
  zero.keep_free = false;
  EXPECT_THROW(generate_corpus(R, 1, 3, zero), InputError);
  EXPECT_THROW(generate_corpus(R, 1, 0), InputError);
}

TEST(FreeSplit, SummandAndTorsion) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto M = Pres::direct_sum(Pres::free(R, FreeModule::free(1)), cyclic(R, {"x", "y"}));
  auto s = free_split(ctx, M);
  EXPECT_EQ(s.status, "OK");
  EXPECT_EQ(s.rank, 1);
  EXPECT_EQ(hilbert_function(ctx, s.quotient, 6), hilbert_function(ctx, cyclic(R, {"x", "y"}), 6));
  for (int d = -2; d <= 5; ++d) EXPECT_EQ(oracle_hom_dim(s.quotient.relations, d), 0u) << d;

  auto T = cyclic(R, {"x^2", "y*z"});
  auto t = free_split(ctx, T);
  EXPECT_EQ(t.status, "OK");
  EXPECT_EQ(t.rank, 0);
  EXPECT_EQ(t.basis.cols(), 0u);
  EXPECT_EQ(hilbert_function(ctx, t.quotient, 6), hilbert_function(ctx, T, 6));
}

TEST(FreeSplit, MaximalIdealAsModule) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  // m = (x, y, z) presented by its Koszul relations; rank 1
  auto d1 = rows_matrix(R, {{"x", "y", "z"}});
  Pres M{syzygy_matrix(d1)};
  auto s = free_split(ctx, M);
  ASSERT_EQ(s.status, "OK");
  EXPECT_EQ(s.rank, 1);
  ASSERT_EQ(s.basis.cols(), 1u);
  for (int d = -2; d <= 5; ++d) EXPECT_EQ(oracle_hom_dim(s.quotient.relations, d), 0u) << d;
  // the chosen element spans a free submodule: its annihilator in M is zero
  auto sum = Map::hstack(s.basis, M.relations);
  for (int d = 0; d <= 4; ++d)
    EXPECT_EQ(oracle::kernel_dim(ctx, sum, d), oracle::kernel_dim(ctx, M.relations, d)) << d;
}

TEST(TorSequence, CodimensionTwoPoint) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto M = cyclic(R, {"x", "y"});
  auto cert = tor_vanishing_sequence(ctx, M, {{"R/(z)", cyclic(R, {"z"})}});
  ASSERT_EQ(cert.status, "OK") << cert.note;
  EXPECT_EQ(cert.h, 2);
  ASSERT_EQ(cert.elements.size(), 2u);
  EXPECT_TRUE(cert.verified());
  EXPECT_TRUE(regular_sequence_failure(ctx, cert.elements) == std::nullopt);
  int pass = 0;
  for (const auto& t : cert.tor) {
    EXPECT_EQ(t.verdict, Verdict::Pass) << t.module << " " << t.j;
    pass += t.verdict == Verdict::Pass;
  }
  EXPECT_EQ(pass, 6);  // j = 1..3 for R and R/(z)
  // Tor against R/(z) independently: Hilbert function of Tor_j is zero
  for (int j = 1; j <= 3; ++j)
    EXPECT_EQ(hilbert_function(ctx, tor_module(ctx, M, cyclic(R, {"z"}), j), -2, 6), std::vector<long>(9, 0)) << j;
}

TEST(TorSequence, PointFreeAndSkippedN) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto cert = tor_vanishing_sequence(ctx, cyclic(R, {"x", "y", "z"}), {{"R/(x)", cyclic(R, {"x"})}});
  ASSERT_EQ(cert.status, "OK") << cert.note;
  EXPECT_EQ(cert.h, 3);
  EXPECT_EQ(cert.elements.size(), 3u);
  EXPECT_TRUE(cert.verified());
  for (const auto& t : cert.tor)
    EXPECT_EQ(t.verdict, t.module == "R" ? Verdict::Pass : Verdict::Skipped) << t.module << " " << t.j;

  auto free_cert = tor_vanishing_sequence(ctx, Pres::free(R, FreeModule::free(2)));
  EXPECT_EQ(free_cert.h, 0);
  EXPECT_TRUE(free_cert.elements.empty());
  EXPECT_TRUE(free_cert.verified());
}

TEST(ModuleSequence, Examples) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  EXPECT_TRUE(is_module_sequence(ctx, cyclic(R, {"z"}), polys(R, {"x", "y"})));
  EXPECT_FALSE(is_module_sequence(ctx, cyclic(R, {"x*z"}), polys(R, {"x"})));
  EXPECT_FALSE(is_module_sequence(ctx, cyclic(R, {"x", "y", "z"}), polys(R, {"x"})));
}

TEST(NzdCheck, DomainExamples) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto r = nzd_check(ctx, ideal(R, {"x", "y"}));
  EXPECT_EQ(r.overall(), Verdict::Pass);
  EXPECT_EQ(r.grade, 2);
  EXPECT_EQ(r.pd, 2);
  EXPECT_EQ(r.profile, "GRADE2_HEIGHT2");
  auto c = nzd_check(ctx, ideal(R, {"x^2-y*z", "x*y"}));
  EXPECT_EQ(c.overall(), Verdict::Pass);
  EXPECT_EQ(c.entries.size(), 2u);
  EXPECT_EQ(c.grade, 2);
  EXPECT_EQ(oracle_grade(R, polys(R, {"x^2-y*z", "x*y"})), 2);
}

TEST(NzdCheck, MutationAndNonDomain) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  ColonRoutine<Q> broken = [](const QuotientRing<Q>& c, const Polynomial<Q>& g) {
    auto a = zero_colon(c, g);
    if (g.to_string() == "x") a.generators.push_back(Polynomial<Q>::variable(c.ring(), 2));
    return a;
  };
  auto r = nzd_check(ctx, ideal(R, {"x", "y"}), broken);
  EXPECT_EQ(r.overall(), Verdict::Fail);

  auto S = ring({"x", "y"});
  QuotientRing<Q> bar(S, polys(S, {"x*y"}));
  auto n = nzd_check(bar, ideal(S, {"x", "y"}));
  EXPECT_EQ(n.overall(), Verdict::Fail);
  EXPECT_EQ(n.profile, "UNSUPPORTED");
}
