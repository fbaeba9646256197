#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "wslice/weylslice.hpp"

using namespace wslice;

namespace {

std::vector<std::pair<char, int>> small_types() {
  return {{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 3}, {'G', 2}};
}

void expect_invariants(const SliceData& sd) {
  for (const auto& c : sd.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
}

}  // namespace

TEST(Decomposition, Identity) {
  auto rs = build_root_system('A', 2);
  WeylWord id(rs, {});
  auto dec = invariant_decomposition(id, rs);
  EXPECT_EQ(dec.fixed.dim(), 2);
  EXPECT_TRUE(dec.parts.empty());
  auto sd = build_slice(rs, id, dec);
  expect_invariants(sd);
  ASSERT_EQ(sd.strata.size(), 1u);
  EXPECT_EQ(sd.strata[0].size(), 6u);
  EXPECT_EQ(sd.length, 0);
}

TEST(Decomposition, Reflection) {
  for (auto [t, r] : small_types()) {
    auto rs = build_root_system(t, r);
    for (int a = 0; a < rs.npos; ++a) {
      auto w = WeylWord(rs, {rs.roots[a]});
      auto dec = invariant_decomposition(w, rs);
      ASSERT_EQ(dec.parts.size(), 1u);
      EXPECT_EQ(dec.parts[0].m, 2);
      EXPECT_EQ(dec.parts[0].angle(), "1/2");
      EXPECT_TRUE(in_span(dec.parts[0].basis, to_kvec(to_qvec(rs.roots[a]))));
      EXPECT_EQ(dec.fixed.dim(), r - 1);
      for (const auto& v : dec.fixed.basis) EXPECT_TRUE(is_zero(pair_root(v, rs.gram.apply(to_qvec(rs.roots[a])))));
    }
  }
}

TEST(Decomposition, A2CoxeterPlane) {
  auto rs = build_root_system('A', 2);
  auto w = WeylWord::from_simple(rs, {1, 2});
  auto dec = invariant_decomposition(w, rs);
  EXPECT_EQ(dec.fixed.dim(), 0);
  ASSERT_EQ(dec.parts.size(), 1u);
  EXPECT_EQ(dec.parts[0].dim(), 2);
  EXPECT_EQ(dec.parts[0].angle(), "1/3");
  auto sd = build_slice(rs, w, dec);
  expect_invariants(sd);
  EXPECT_TRUE(sd.delta0.empty());
  ASSERT_EQ(sd.strata.size(), 2u);
  EXPECT_EQ(sd.strata[1].size(), 6u);
}

TEST(Decomposition, IrrationalAnglesSplitIntoPlanes) {
  // Coxeter elements of B4 (h = 8) and F4 (h = 12) need Q(sqrt 2), Q(sqrt 3).
  for (auto [t, r, h] : std::vector<std::tuple<char, int, int>>{{'B', 4, 8}, {'F', 4, 12}, {'A', 4, 5}}) {
    auto rs = build_root_system(t, r);
    IVec idx(r);
    std::iota(idx.begin(), idx.end(), 1);
    auto w = WeylWord::from_simple(rs, idx);
    EXPECT_EQ(w.order(), h);
    auto dec = invariant_decomposition(w, rs);
    EXPECT_EQ(dec.parts.size(), 2u);
    for (auto& c : check_decomposition(dec, rs)) EXPECT_TRUE(c.pass) << c.name;
    // Minimal angle last.
    EXPECT_EQ(dec.parts.back().angle(), "1/" + std::to_string(h));
    auto sd = build_slice(rs, w, dec);
    expect_invariants(sd);
    EXPECT_EQ(sd.length, r);
  }
}

TEST(ChooseGeneric, A2Plane) {
  auto rs = build_root_system('A', 2);
  Subspace sub;
  sub.basis = {to_kvec({Q(1), Q(0)}), to_kvec({Q(0), Q(1)})};
  KVec v = choose_generic(sub, rs);
  for (const auto& ga : root_duals(rs)) EXPECT_FALSE(is_zero(pair_root(v, ga)));
}

TEST(ChooseGeneric, LineKeepsDirection) {
  auto rs = build_root_system('B', 2);
  Subspace sub;
  sub.basis = {to_kvec({Q(0), Q(1)})};
  KVec v = choose_generic(sub, rs);
  EXPECT_TRUE(in_span(sub.basis, v));
}

TEST(ChooseGeneric, HighDimensionalFixedSpaceUsesFallback) {
  auto rs = build_root_system('E', 6);
  Subspace sub;
  for (int i = 0; i < 6; ++i) {
    QVec e(6, Q(0));
    e[i] = 1;
    sub.basis.push_back(to_kvec(e));
  }
  KVec v = choose_generic(sub, rs);
  for (const auto& ga : root_duals(rs)) EXPECT_FALSE(is_zero(pair_root(v, ga)));
}

TEST(Positive, A1) {
  auto rs = build_root_system('A', 1);
  std::vector<std::vector<KElem>> terms = {{KElem(2)}, {KElem(-2)}};
  auto pos = positive_system(terms, rs);
  EXPECT_TRUE(pos[0]);
  EXPECT_FALSE(pos[1]);
  std::vector<std::vector<KElem>> wall = {{KElem(0)}, {KElem(0)}};
  EXPECT_THROW(positive_system(wall, rs), std::invalid_argument);
}

TEST(Rescale, TwoSubspaces) {
  // Stratum 1 holds one root with pairings (h0, h1) = (5, 2).
  std::vector<std::vector<KElem>> pr = {{KElem(5)}, {KElem(2)}};
  std::vector<std::vector<int>> strata = {{}, {0}};
  Q lambda = rescale_factor(pr, strata);
  EXPECT_EQ(lambda, Q(1) + ceil_q(make_q(5, 2)));
  pr[1][0] = KElem(lambda) * pr[1][0];
  auto rs = build_root_system('A', 1);
  EXPECT_TRUE(check_condition(pr, strata, rs)[0].pass);
  std::vector<std::vector<KElem>> bad = {{KElem(5)}, {KElem(2)}};
  EXPECT_FALSE(check_condition(bad, strata, rs)[0].pass);
}

TEST(Slice, Sl3LongestReflection) {
  // s = s_theta with h1 = R theta and h0 = R(a1 - a2): minus the longest element.
  auto rs = build_root_system('A', 2);
  auto w = WeylWord(rs, {{1, 1}});
  auto sd = analyze(rs, w);
  expect_invariants(sd);
  EXPECT_EQ(sd.length, 3);
  EXPECT_EQ(sd.dim_ns, 3);
  EXPECT_EQ(sd.dim_n, 3);
  EXPECT_EQ(sd.dim_z, 1);
  EXPECT_EQ(sd.dim_slice, 4);
  EXPECT_EQ(sd.ns_roots, sd.n_roots);
}

TEST(Slice, LongRootReflectionHasNsEqualN) {
  for (auto [t, r] : small_types()) {
    auto rs = build_root_system(t, r);
    auto w = WeylWord(rs, {rs.highest_root()});
    auto sd = analyze(rs, w);
    expect_invariants(sd);
    EXPECT_EQ(sd.ns_roots, sd.n_roots) << t << r;
  }
}

TEST(Slice, PermutedOrderingsKeepInvariants) {
  for (auto [t, r] : small_types()) {
    auto rs = build_root_system(t, r);
    std::vector<WeylWord> words;
    IVec idx(r);
    std::iota(idx.begin(), idx.end(), 1);
    words.push_back(WeylWord::from_simple(rs, idx));
    IVec longest;
    for (int k = 0; k < r; ++k)
      for (int i = 1; i <= r; ++i) longest.push_back(i);
    words.push_back(WeylWord::from_simple(rs, longest));
    words.push_back(WeylWord(rs, {rs.highest_root()}));
    for (const auto& w : words) {
      auto base = invariant_decomposition(w, rs);
      std::vector<int> perm(base.parts.size());
      std::iota(perm.begin(), perm.end(), 0);
      int count = 0;
      do {
        DecompositionOptions opt;
        opt.explicit_order = perm;
        auto sd = analyze(rs, w, opt);
        expect_invariants(sd);
        EXPECT_EQ(w.matrix().rows(), static_cast<std::size_t>(r));
        ++count;
      } while (std::next_permutation(perm.begin(), perm.end()) && count < 120);
    }
  }
}

TEST(Slice, OrderOfS) {
  auto rs = build_root_system('G', 2);
  auto w = WeylWord::from_simple(rs, {1, 2});
  int R = w.order();
  EXPECT_EQ(R, 6);
  QMat p = qidentity(2);
  for (int k = 0; k < R; ++k) p = p * w.matrix();
  EXPECT_EQ(p, qidentity(2));
}

TEST(Slice, SpecifiedSubspaceMustBeInvariant) {
  auto rs = build_root_system('B', 2);
  auto w = WeylWord::from_simple(rs, {1, 2});
  DecompositionOptions opt;
  opt.specified.push_back({"bad", {QVec{Q(1), Q(0)}}});
  EXPECT_THROW(invariant_decomposition(w, rs, opt), std::invalid_argument);
}
