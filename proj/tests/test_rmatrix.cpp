#include <gtest/gtest.h>

#include <numeric>

#include "wslice/rmatrix.hpp"

using namespace wslice;

namespace {

struct Setup {
  RootSystemData rs;
  ChevalleyBasis cb;
  SliceData sd;
  RMatrixData R;
};

Setup make(char t, int r, const WeylWord& w_in) {
  Setup s;
  s.rs = build_root_system(t, r);
  s.cb = build_chevalley(s.rs);
  WeylWord w(s.rs, w_in.word());
  s.sd = analyze(s.rs, w);
  s.R = build_r(s.sd, s.cb);
  return s;
}

std::vector<WeylWord> sweep_words(const RootSystemData& rs) {
  std::vector<WeylWord> out;
  for (int i = 1; i <= rs.rank; ++i) out.push_back(WeylWord::from_simple(rs, {i}));
  IVec idx(rs.rank);
  std::iota(idx.begin(), idx.end(), 1);
  out.push_back(WeylWord::from_simple(rs, idx));
  out.push_back(WeylWord(rs, {rs.highest_root()}));
  return out;
}

}  // namespace

TEST(BuildR, Sl2ReflectionIsStandard) {
  auto rs = build_root_system('A', 1);
  auto s = make('A', 1, WeylWord::from_simple(rs, {1}));
  EXPECT_TRUE(s.R.r0.is_zero_matrix());
  EXPECT_EQ(s.R.r, standard_r(s.cb, s.sd.positive));
}

TEST(BuildR, VanishesOnFixedSpaceAndSolvesCayleyRelation) {
  for (auto [t, r] : std::vector<std::pair<char, int>>{{'A', 2}, {'A', 3}, {'B', 3}, {'G', 2}}) {
    auto rs = build_root_system(t, r);
    for (const auto& w : sweep_words(rs)) {
      auto s = make(t, r, w);
      for (const auto& v : s.R.h0) EXPECT_TRUE(is_zero_vec(s.R.r0.apply(v)));
      // (1 - s) r0 v = (1 + s) v on the orthogonal complement of h0.
      for (const auto& v : s.R.h0perp) {
        QVec r0v = s.R.r0.apply(v);
        QVec lhs = r0v, rhs = v;
        QVec sr = s.R.s_h.apply(r0v), sv = s.R.s_h.apply(v);
        for (int k = 0; k < r; ++k) {
          lhs[k] -= sr[k];
          rhs[k] += sv[k];
        }
        EXPECT_EQ(lhs, rhs);
      }
    }
  }
}

TEST(BuildR, Sl3LongestReflectionHasNoCartanPart) {
  auto rs = build_root_system('A', 2);
  auto s = make('A', 2, WeylWord(rs, {{1, 1}}));
  EXPECT_TRUE(s.R.r0.is_zero_matrix());
  ASSERT_EQ(s.R.h0.size(), 1u);
  EXPECT_EQ(s.R.h0perp.size(), 1u);
}

TEST(Mcybe, StandardAndZero) {
  auto cb = build_chevalley(build_root_system('A', 1));
  auto pos = standard_positive(cb.rs);
  EXPECT_FALSE(check_mcybe(standard_r(cb, pos), cb).has_value());
  auto w = check_mcybe(QMat(3, 3, Q(0)), cb);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(*w, std::make_pair(0, 1));
}

TEST(Mcybe, SweepRankAtMostThree) {
  for (auto [t, r] : std::vector<std::pair<char, int>>{
           {'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 2}, {'C', 3}, {'G', 2}}) {
    auto rs = build_root_system(t, r);
    for (const auto& w : sweep_words(rs)) {
      auto s = make(t, r, w);
      ASSERT_TRUE(s.sd.ok());
      EXPECT_TRUE(check_skew(s.R.r, s.cb));
      EXPECT_FALSE(check_mcybe(s.R.r, s.cb).has_value()) << t << r;
      for (auto& c : check_images_kernels(s.R, s.cb)) EXPECT_TRUE(c.pass) << c.name;
      for (auto& c : check_rpm_identities(s.R, s.cb)) EXPECT_TRUE(c.pass) << c.name;
      EXPECT_TRUE(check_gstar_description(s.R, s.cb));
      EXPECT_FALSE(check_nperp_subalgebra(parabolic_basis(s.sd, s.cb), s.R, s.cb).has_value());
    }
  }
}

TEST(DualBracket, Sl2) {
  auto cb = build_chevalley(build_root_system('A', 1));
  auto r = standard_r(cb, standard_positive(cb.rs));
  QVec e = cb.unit(0), f = cb.unit(1), h = cb.unit(2);
  EXPECT_TRUE(is_zero_vec(dual_bracket(e, e, r, cb)));
  EXPECT_TRUE(is_zero_vec(dual_bracket(e, f, r, cb)));
  QVec he = dual_bracket(h, e, r, cb);
  EXPECT_EQ(he[0], -1);
}

TEST(DualBracket, JacobiSl3) {
  auto rs = build_root_system('A', 2);
  auto s = make('A', 2, WeylWord(rs, {{1, 1}}));
  const int d = s.cb.dim;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        QVec x = s.cb.unit(i), y = s.cb.unit(j), z = s.cb.unit(k);
        QVec a = dual_bracket(x, dual_bracket(y, z, s.R.r, s.cb), s.R.r, s.cb);
        QVec b = dual_bracket(y, dual_bracket(z, x, s.R.r, s.cb), s.R.r, s.cb);
        QVec c = dual_bracket(z, dual_bracket(x, y, s.R.r, s.cb), s.R.r, s.cb);
        for (int m = 0; m < d; ++m) EXPECT_TRUE(is_zero(a[m] + b[m] + c[m]));
      }
}

TEST(GStar, EmbeddingIsHomomorphism) {
  auto rs = build_root_system('A', 1);
  auto s = make('A', 1, WeylWord::from_simple(rs, {1}));
  auto [zp, zm] = gstar_embed(QVec(3, Q(0)), s.R);
  EXPECT_TRUE(is_zero_vec(zp) && is_zero_vec(zm));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      QVec x = s.cb.unit(i), y = s.cb.unit(j);
      auto [xp, xm] = gstar_embed(x, s.R);
      auto [yp, ym] = gstar_embed(y, s.R);
      auto [bp, bm] = gstar_embed(dual_bracket(x, y, s.R.r, s.cb), s.R);
      EXPECT_EQ(bp, s.cb.bracket(xp, yp));
      EXPECT_EQ(bm, s.cb.bracket(xm, ym));
    }
}

TEST(Nperp, MutationIsDetected) {
  auto rs = build_root_system('A', 2);
  auto s = make('A', 2, WeylWord(rs, {{1, 1}}));
  auto p = parabolic_basis(s.sd, s.cb);
  EXPECT_FALSE(check_nperp_subalgebra(p, s.R, s.cb).has_value());
  // Let one negative root vector leak into its positive partner.
  GOperator bad = s.R.r;
  int a = s.R.k.front();
  bad(s.cb.rs.neg(a), a) = 1;
  auto wit = check_nperp_subalgebra(p, with_operator(s.R, bad), s.cb);
  EXPECT_TRUE(wit.has_value());
  EXPECT_TRUE(check_mcybe(bad, s.cb).has_value());
}

TEST(NormalRep, AutomorphismPermutingRootSpaces) {
  for (auto [t, r] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 3}, {'G', 2}, {'C', 3}}) {
    auto rs = build_root_system(t, r);
    for (const auto& w : sweep_words(rs)) {
      auto sd = analyze(rs, w);
      auto cb = build_chevalley(rs).signed_variant(sd.positive);
      QMat ad = normal_rep_adjoint(cb, w, sd.positive, sd.gamma);
      EXPECT_TRUE(is_automorphism(ad, cb));
      auto perm = w.root_permutation(rs);
      for (int a = 0; a < cb.nroots; ++a) {
        QVec col = ad.column(a);
        for (int k = 0; k < cb.dim; ++k)
          if (k != perm[a]) EXPECT_TRUE(is_zero(col[k]));
      }
      for (int g : sd.gamma) {
        EXPECT_EQ(ad(perm[g], g), 1);
        EXPECT_EQ(ad(perm[rs.neg(g)], rs.neg(g)), 1);
      }
      QMat p = qidentity(cb.dim);
      for (int k = 0; k < 2 * w.order(); ++k) p = p * ad;
      EXPECT_EQ(p, qidentity(cb.dim));
    }
  }
}
