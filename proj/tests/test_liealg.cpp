#include <gtest/gtest.h>

#include <set>

#include "wslice/liealg.hpp"

using namespace wslice;

namespace {

const std::vector<std::pair<char, int>> kSmallTypes = {
    {'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}, {'B', 4}, {'C', 2},
    {'C', 3}, {'C', 4}, {'D', 4}, {'F', 4}, {'G', 2}};

}  // namespace

TEST(RootSystem, RootCounts) {
  for (auto [t, r] : kSmallTypes) {
    auto rs = build_root_system(t, r);
    EXPECT_EQ(rs.roots.size(), expected_root_count(t, r)) << t << r;
  }
  for (int r : {6, 7, 8}) EXPECT_EQ(build_root_system('E', r).roots.size(), expected_root_count('E', r));
  EXPECT_EQ(build_root_system('A', 1).roots.size(), 2u);
  EXPECT_EQ(build_root_system('G', 2).roots.size(), 12u);
}

TEST(RootSystem, A2Enumeration) {
  auto rs = build_root_system('A', 2);
  std::set<IVec> got(rs.roots.begin(), rs.roots.end());
  std::set<IVec> want = {{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}};
  EXPECT_EQ(got, want);
}

TEST(RootSystem, InvalidTypeRejected) {
  EXPECT_THROW(build_root_system('D', 3), std::invalid_argument);
  EXPECT_THROW(build_root_system('G', 3), std::invalid_argument);
  EXPECT_THROW(build_root_system('X', 2), std::invalid_argument);
}

TEST(RootSystem, FormPositiveDefiniteAndCorootPairing) {
  for (auto [t, r] : kSmallTypes) {
    auto rs = build_root_system(t, r);
    // Leading principal minors of the Gram matrix.
    for (int k = 1; k <= r; ++k) {
      QMat sub(k, k, Q(0));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = rs.gram(i, j);
      EXPECT_TRUE(inverse(sub).has_value());
    }
    for (const auto& a : rs.roots) {
      EXPECT_EQ(rs.pairing(a, a), 2);
      EXPECT_GT(rs.sq(a), 0);
      EXPECT_LE(rs.sq(a), 2);
    }
  }
}

TEST(RootSystem, ReflectionsPermuteRoots) {
  for (auto [t, r] : kSmallTypes) {
    auto rs = build_root_system(t, r);
    for (const auto& a : rs.roots) {
      std::set<IVec> image;
      for (const auto& b : rs.roots) {
        QVec v = reflect(rs, to_qvec(b), a);
        IVec iv(r);
        for (int k = 0; k < r; ++k) {
          ASSERT_EQ(v[k].get_den(), 1);
          iv[k] = static_cast<int>(v[k].get_num().get_si());
        }
        ASSERT_TRUE(rs.is_root(iv));
        image.insert(iv);
      }
      EXPECT_EQ(image.size(), rs.roots.size());
    }
  }
}

TEST(Reflect, Examples) {
  auto rs = build_root_system('A', 2);
  IVec a1 = {1, 0}, a2 = {0, 1};
  EXPECT_EQ(reflect(rs, to_qvec(a1), a1), (QVec{Q(-1), Q(0)}));
  EXPECT_EQ(reflect(rs, to_qvec(a2), a1), (QVec{Q(1), Q(1)}));
  // a1 - a2 is orthogonal to a1 + a2.
  QVec v = {Q(1), Q(-1)};
  EXPECT_EQ(reflect(rs, v, IVec{1, 1}), v);
  EXPECT_THROW(reflect(rs, v, IVec{1, -1}), std::invalid_argument);
}

TEST(WeylWord, ActionsAndLengths) {
  auto rs = build_root_system('A', 2);
  auto pos = standard_positive(rs);
  WeylWord id(rs, {});
  EXPECT_EQ(id.matrix(), qidentity(2));
  EXPECT_EQ(weyl_length(id, rs, pos), 0);
  auto s1 = WeylWord::from_simple(rs, {1});
  EXPECT_EQ(weyl_length(s1, rs, pos), 1);
  EXPECT_EQ(WeylWord::from_simple(rs, {1, 1}), id);
  auto cox = WeylWord::from_simple(rs, {1, 2});
  EXPECT_EQ(cox.order(), 3);
  auto w0 = WeylWord::from_simple(rs, {1, 2, 1});
  EXPECT_EQ(weyl_length(w0, rs, pos), 3);
  EXPECT_EQ(w0, WeylWord::from_simple(rs, {2, 1, 2}));
}

TEST(WeylWord, PreservesForm) {
  for (auto [t, r] : kSmallTypes) {
    auto rs = build_root_system(t, r);
    IVec idx;
    for (int i = 1; i <= r; ++i) idx.push_back(i);
    auto c = WeylWord::from_simple(rs, idx);
    QMat lhs = c.matrix().transpose() * rs.gram * c.matrix();
    EXPECT_EQ(lhs, rs.gram);
  }
}

TEST(WeylWord, ReducedWordLengthBruteForce) {
  // Enumerate the group by words in simple reflections; the first (shortest)
  // word reaching an element is reduced and its length must match.
  for (auto [t, r] : std::vector<std::pair<char, int>>{{'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 3}, {'G', 2}}) {
    auto rs = build_root_system(t, r);
    auto pos = standard_positive(rs);
    std::vector<std::pair<IVec, WeylWord>> frontier = {{{}, WeylWord(rs, {})}};
    std::vector<QMat> seen = {qidentity(r)};
    int checked = 0;
    while (!frontier.empty()) {
      std::vector<std::pair<IVec, WeylWord>> next;
      for (auto& [w, ww] : frontier) {
        EXPECT_EQ(weyl_length(ww, rs, pos), static_cast<int>(w.size()));
        ++checked;
        for (int i = 1; i <= r; ++i) {
          IVec w2 = w;
          w2.push_back(i);
          auto x = WeylWord::from_simple(rs, w2);
          bool dup = false;
          for (auto& m : seen)
            if (m == x.matrix()) { dup = true; break; }
          if (dup) continue;
          seen.push_back(x.matrix());
          next.emplace_back(w2, x);
        }
      }
      frontier = std::move(next);
    }
    EXPECT_GT(checked, 1);
  }
}

TEST(WeylWord, ParseRootExpressions) {
  auto rs = build_root_system('B', 3);
  auto w = parse_word(rs, "1,2,2+2*3");
  ASSERT_EQ(w.word().size(), 3u);
  EXPECT_EQ(w.word()[2], (IVec{0, 1, 2}));
  EXPECT_THROW(parse_word(rs, "1,2*2"), std::invalid_argument);
  EXPECT_THROW(parse_word(rs, "4"), std::invalid_argument);
}

TEST(Chevalley, Sl2Relations) {
  auto cb = build_chevalley(build_root_system('A', 1));
  EXPECT_EQ(cb.dim, 3);
  int e = 0, f = 1, h = 2;
  auto br = [&](int i, int j) {
    QVec v(3, Q(0));
    for (auto t : cb.bracket_basis(i, j)) v[t.idx] += t.coef;
    return v;
  };
  EXPECT_EQ(br(e, f), (QVec{Q(0), Q(0), Q(1)}));
  EXPECT_EQ(br(h, e), (QVec{Q(2), Q(0), Q(0)}));
  EXPECT_EQ(br(h, f), (QVec{Q(0), Q(-2), Q(0)}));
}

TEST(Chevalley, A2SimpleConstant) {
  auto cb = build_chevalley(build_root_system('A', 2));
  int a1 = cb.rs.find({1, 0}), a2 = cb.rs.find({0, 1});
  EXPECT_EQ(std::abs(cb.N(a1, a2)), 1);
}

TEST(Chevalley, JacobiAndInvariantForm) {
  for (auto [t, r] : kSmallTypes) {
    auto cb = build_chevalley(build_root_system(t, r));
    EXPECT_EQ(cb.dim, static_cast<int>(cb.rs.roots.size()) + r);
    EXPECT_FALSE(jacobi_violation(cb).has_value()) << t << r;
    if (cb.dim <= 28) EXPECT_TRUE(form_is_invariant(cb)) << t << r;
    for (int a = 0; a < cb.nroots; ++a) {
      QVec x = cb.bracket(cb.unit(a), cb.unit(cb.rs.neg(a)));
      IVec cor = cb.rs.coroot(cb.rs.roots[a]);
      for (int k = 0; k < r; ++k) EXPECT_EQ(x[cb.cartan_index(k)], cor[k]);
    }
  }
}

TEST(Chevalley, ExceptionalJacobi) {
  for (int r : {6, 7}) {
    auto cb = build_chevalley(build_root_system('E', r));
    EXPECT_FALSE(jacobi_violation(cb).has_value()) << "E" << r;
  }
}

TEST(Chevalley, AdIsHomomorphism) {
  for (auto [t, r] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'G', 2}}) {
    auto cb = build_chevalley(build_root_system(t, r));
    for (int i = 0; i < cb.dim; ++i)
      for (int j = 0; j < cb.dim; ++j) {
        QMat lhs = cb.ad(cb.bracket(cb.unit(i), cb.unit(j)));
        QMat ai = cb.ad_basis(i), aj = cb.ad_basis(j);
        EXPECT_EQ(lhs, ai * aj - aj * ai);
      }
  }
}

TEST(Chevalley, SignedVariantFlipsSimpleConvention) {
  // Negating negative root vectors gives [e_-a, e_-b] = N_ab e_-(a+b) on simple
  // pairs, at the cost of [e_a, e_-a] = -a^v.
  for (auto [t, r] : kSmallTypes) {
    auto cb = build_chevalley(build_root_system(t, r));
    auto pv = cb.signed_variant(standard_positive(cb.rs));
    EXPECT_FALSE(jacobi_violation(pv).has_value());
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        int a = cb.rs.find(cb.rs.simple(i)), b = cb.rs.find(cb.rs.simple(j));
        if (cb.sum_index(a, b) < 0) continue;
        EXPECT_EQ(cb.N(cb.rs.neg(a), cb.rs.neg(b)), -cb.N(a, b));
        EXPECT_EQ(pv.N(pv.rs.neg(a), pv.rs.neg(b)), pv.N(a, b));
      }
    EXPECT_EQ(pv.coroot_scale(0), -1);
  }
}
