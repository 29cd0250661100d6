#include <gtest/gtest.h>

#include "forge/embeddings.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace testing_helpers;

namespace {

std::vector<long> oracle_hilbert(const QuotientRing<Q>& ctx, const Pres& P, int lo, int hi) {
  return oracle::hilbert(ctx, P.relations, lo, hi);
}

}  // namespace

TEST(SubcomplexResolution, ZeroSubmodule) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto F = free_resolution(ctx, cyclic(R, {"x", "y"})).complex;
  auto s = subcomplex_resolution(ctx, F, Map::zero(R, FreeModule{}, F.module(0)));
  EXPECT_TRUE(s.certified());
  EXPECT_EQ(s.G.length(), -1);
  EXPECT_EQ(betti_table(minimalize(ctx, mapping_cone(s.phi)).complex), betti_table(F));
}

TEST(SubcomplexResolution, WholeModule) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto F = free_resolution(ctx, cyclic(R, {"x", "y"})).complex;
  auto s = subcomplex_resolution(ctx, F, Map::identity(R, F.module(0)));
  EXPECT_TRUE(s.certified());
  EXPECT_EQ(minimalize(ctx, mapping_cone(s.phi)).complex.length(), -1);
  EXPECT_EQ(betti_table(s.G), betti_table(F));
}

TEST(SubcomplexResolution, PinnedInstance) {
  // M = R/(x^2, y), N = xM; the cone resolves R/(x, y)
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto F = free_resolution(ctx, cyclic(R, {"x^2", "y"})).complex;
  auto s = subcomplex_resolution(ctx, F, rows_matrix(R, {{"x"}}));
  ASSERT_TRUE(s.certified());
  EXPECT_TRUE(s.G.is_minimal(ctx));
  auto cone = mapping_cone(s.phi);
  for (int i = 1; i <= cone.top(); ++i)
    for (int d = 0; d <= 6; ++d) EXPECT_EQ(oracle::homology_dim(ctx, cone, i, d), 0) << i << " " << d;
  EXPECT_EQ(oracle::hilbert(ctx, cone.differential(1), 0, 6), oracle_hilbert(ctx, cyclic(R, {"x", "y"}), 0, 6));
  // G resolves N ≅ R/(x, y)(-1)
  EXPECT_EQ(betti_table(s.G), betti_table(free_resolution(ctx, cyclic(R, {"x", "y"})).complex.twisted(1)));
}

TEST(SubcomplexResolution, RejectsForeignGenerators) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto F = free_resolution(ctx, cyclic(R, {"x"})).complex;
  EXPECT_THROW(subcomplex_resolution(ctx, F, Map::identity(R, FreeModule::free(2))), Rejected);
}

TEST(CertifyShortExact, DetectsBrokenSequences) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  // 0 -> R(-1) -x-> R -> R/(x) -> 0
  auto A = Pres::free(R, FreeModule({1}));
  auto B = Pres::free(R, FreeModule::free(1));
  auto C = cyclic(R, {"x"});
  auto fx = Map(R, FreeModule({1}), FreeModule::free(1), {V(R, {"x"})});
  auto id = Map::identity(R, FreeModule::free(1));
  EXPECT_TRUE(certify_short_exact(ctx, A, fx, B, id, C, 5).ok());
  auto Cy = cyclic(R, {"y"});
  auto bad = certify_short_exact(ctx, A, fx, B, id, Cy, 5);
  EXPECT_FALSE(bad.composite_zero);
  EXPECT_FALSE(bad.ok());
  auto f2 = Map(R, FreeModule({2}), FreeModule::free(1), {V(R, {"x^2"})});
  auto b2 = certify_short_exact(ctx, Pres::free(R, FreeModule({2})), f2, B, id, C, 5);
  EXPECT_TRUE(b2.injective);
  EXPECT_FALSE(b2.middle_exact);
}

TEST(Embed, BaseCase) {
  auto R = ring({"x", "y"});
  QuotientRing<Q> ctx(R);
  Pres M{rows_matrix(R, {{"x", "0"}, {"0", "x"}})};
  auto r = embed_module(ctx, M, polys(R, {"x"}));
  EXPECT_EQ(r.route, EmbedRoute::Base);
  EXPECT_TRUE(r.sequence_certificate.ok());
  EXPECT_TRUE(r.T_zero);
  EXPECT_FALSE(r.pd_T_over_base.has_value());
  EXPECT_EQ(r.pd_Q_over_quotient, 0);
  EXPECT_EQ(r.Q.num_generators(), 2u);
  EXPECT_EQ(r.Q.relations.cols(), 0u);
  EXPECT_TRUE(r.invariants_hold());
}

TEST(Embed, CodimTwoPointOverLine) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  QuotientRing<Q> bar(R, polys(R, {"x"}));
  auto M = cyclic(R, {"x", "y"});
  auto r = embed_module(ctx, M, polys(R, {"x"}));
  EXPECT_TRUE(r.sequence_certificate.ok());
  EXPECT_EQ(r.pd_M, 2);
  EXPECT_EQ(r.pd_Q_over_quotient, 1);
  EXPECT_EQ(r.pd_T_over_base, 1);
  EXPECT_EQ(r.grade_T, 1);
  EXPECT_TRUE(r.Q_annihilator_zero);
  EXPECT_TRUE(r.iso_ok());
  EXPECT_TRUE(r.invariants_hold());
  EXPECT_EQ(r.route, EmbedRoute::TorSyzygy);
  EXPECT_EQ(r.twist, 1);
  // Hilbert additivity by linear algebra
  for (int d = 0; d <= 7; ++d) {
    long m = oracle_hilbert(bar, r.M, d, d)[0], q = oracle_hilbert(bar, r.Q, d, d)[0],
         t = oracle_hilbert(bar, r.T, d, d)[0];
    EXPECT_EQ(m + t, q) << d;
  }
  // Q ≅ R/(x,y)(-1) ⊕ R/(x)(-1) over R
  auto bq = betti_table(ctx, base_change_quotient(r.Q, r.x_seq));
  EXPECT_EQ(bq.totals(), (std::vector<std::size_t>{2, 3, 1}));
}

TEST(Embed, DualConeIsDegenerateForPerfectModules) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  QuotientRing<Q> bar(R, polys(R, {"x"}));
  auto M = cyclic(R, {"x", "y"});
  auto r = embed_module(ctx, M, polys(R, {"x"}), EmbedRoute::DualCone);
  EXPECT_TRUE(r.sequence_certificate.ok());
  EXPECT_TRUE(r.chain_checks);
  EXPECT_TRUE(r.T_zero);
  EXPECT_EQ(hilbert_function(bar, r.Q, 0, 6), hilbert_function(bar, M, 0, 6));
}

TEST(Embed, PointInSpaceOverLine) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  QuotientRing<Q> bar(R, polys(R, {"x", "y"}));
  auto M = cyclic(R, {"x", "y", "z"});
  auto r = embed_module(ctx, M, polys(R, {"x", "y"}));
  EXPECT_TRUE(r.sequence_certificate.ok());
  EXPECT_EQ(r.pd_Q_over_quotient, 1);
  EXPECT_EQ(r.pd_T_over_base, 2);
  EXPECT_EQ(r.grade_T, 2);
  EXPECT_TRUE(r.invariants_hold());
  for (int d = 0; d <= 7; ++d) {
    long m = oracle_hilbert(bar, r.M, d, d)[0], q = oracle_hilbert(bar, r.Q, d, d)[0],
         t = oracle_hilbert(bar, r.T, d, d)[0];
    EXPECT_EQ(m + t, q) << d;
  }
}

TEST(Embed, DualConeRouteOnNonPerfectModule) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto r = embed_module(ctx, cyclic(R, {"x", "y"}), polys(R, {"x^2"}));
  EXPECT_EQ(r.route, EmbedRoute::DualCone);
  EXPECT_FALSE(r.T_zero);
  EXPECT_TRUE(r.chain_checks);
  EXPECT_TRUE(r.sequence_certificate.ok());
  EXPECT_EQ(r.pd_Q_over_quotient, 1);
  EXPECT_EQ(r.pd_T_over_base, 1);
  EXPECT_TRUE(r.T_perfect());
  EXPECT_TRUE(r.iso_ok());
}

TEST(Embed, Rejections) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto code = [&](const Pres& M, std::initializer_list<const char*> x) -> std::string {
    try {
      embed_module(ctx, M, polys(R, x));
    } catch (const Rejected& e) {
      return e.code();
    }
    return "none";
  };
  Pres free_plus{rows_matrix(R, {{"0"}, {"x"}})};
  EXPECT_EQ(code(free_plus, {"x"}), "REJECTED_GRADE_ZERO");
  EXPECT_EQ(code(cyclic(R, {"x", "y"}), {"z"}), "REJECTED_SEQUENCE");
  EXPECT_EQ(code(cyclic(R, {"x", "y"}), {"x", "x"}), "REJECTED_SEQUENCE");
  EXPECT_EQ(code(cyclic(R, {"x", "y"}), {}), "REJECTED_SEQUENCE");
}

TEST(SyzygySplit, PassesAndControls) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto r = embed_module(ctx, cyclic(R, {"x", "y"}), polys(R, {"x"}));
  auto v = syzygy_split_check(ctx, r);
  EXPECT_EQ(v.verdict, Verdict::Pass) << v.witness;
  EXPECT_EQ(v.free_rank, 1);

  // padding Q with a free summand over R/(x) keeps the verdict and grows the free part
  auto padded = r;
  padded.Q = Pres{Map::direct_sum(r.Q.relations, Map::zero(R, FreeModule{}, FreeModule({1})))};
  auto vp = syzygy_split_check(ctx, padded);
  EXPECT_EQ(vp.verdict, Verdict::Pass) << vp.witness;
  EXPECT_EQ(vp.free_rank, 2);

  // mutation: an extra relation on Q changes its higher syzygies
  auto broken = r;
  auto rel = r.Q.relations.columns();
  auto extra = zero_vector(R, r.Q.num_generators());
  extra[0] = P(R, "z");
  rel.push_back(extra);
  broken.Q = Pres{Map::from_columns(R, r.Q.generators(), rel)};
  EXPECT_EQ(syzygy_split_check(ctx, broken).verdict, Verdict::Fail);

  auto two = embed_module(ctx, cyclic(R, {"x", "y", "z"}), polys(R, {"x", "y"}));
  EXPECT_EQ(syzygy_split_check(ctx, two).verdict, Verdict::Skipped);
}

TEST(Shamash, PlaneCurvePoint) {
  auto R = ring({"x", "y"});
  QuotientRing<Q> ctx(R);
  auto res = free_resolution(ctx, cyclic(R, {"x", "y"}));
  auto sh = shamash_resolution(ctx, res, P(R, "x"));
  EXPECT_TRUE(sh.certified());
  EXPECT_EQ(sh.betti().totals(), (std::vector<std::size_t>{1, 1}));
  QuotientRing<Q> bar(R, polys(R, {"x"}));
  EXPECT_EQ(sh.betti(), free_resolution(bar, cyclic(R, {"x", "y"})).betti());
}

TEST(Shamash, PointInSpace) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto res = free_resolution(ctx, cyclic(R, {"x", "y", "z"}));
  auto sh = shamash_resolution(ctx, res, P(R, "x"));
  EXPECT_TRUE(sh.certified());
  EXPECT_EQ(sh.betti().totals(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_TRUE(sh.homotopy.holds(ctx));
  for (const auto& sp : sh.split) {
    EXPECT_TRUE(sp.complete) << sp.index;
    EXPECT_TRUE(sp.h_kills) << sp.index;
    EXPECT_TRUE(sp.formula) << sp.index;
  }
  for (const auto& c : sh.seq1) EXPECT_TRUE(c.ok());
  for (const auto& c : sh.seq2) EXPECT_TRUE(c.ok());
  // scaling x leaves the minimal Betti table alone
  EXPECT_EQ(shamash_resolution(ctx, res, P(R, "3*x")).betti(), sh.betti());
}

TEST(Shamash, PeriodicOverNonRegularQuotient) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto M = cyclic(R, {"x^2", "y"});
  auto res = free_resolution(ctx, M);
  auto sh = shamash_resolution(ctx, res, P(R, "x^2"), 5);
  EXPECT_TRUE(sh.certified());
  QuotientRing<Q> bar(R, polys(R, {"x^2"}));
  auto direct = free_resolution(bar, M, 4);
  EXPECT_EQ(betti_table(sh.quotient_resolution.truncated(4)), betti_table(direct.complex));
  for (int i = 1; i <= 3; ++i)
    for (int d = 0; d <= 6; ++d) EXPECT_EQ(oracle::homology_dim(bar, sh.quotient_resolution, i, d), 0) << i << " " << d;
}

TEST(Shamash, Rejections) {
  auto R = ring();
  QuotientRing<Q> ctx(R);
  auto res = free_resolution(ctx, cyclic(R, {"x", "y"}));
  EXPECT_THROW(shamash_resolution(ctx, res, P(R, "z")), Rejected);
  auto R2 = ring({"x", "y"});
  QuotientRing<Q> nd(R2, polys(R2, {"x*y"}));
  auto res2 = free_resolution(nd, cyclic(R2, {"x"}));
  EXPECT_THROW(shamash_resolution(nd, res2, P(R2, "x")), Rejected);
}
