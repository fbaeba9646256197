#include <gtest/gtest.h>

#include "wslice/linalg.hpp"

using namespace wslice;

namespace {

QMat mat(std::vector<std::vector<long>> rows) {
  QMat m(rows.size(), rows[0].size(), Q(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST(Linalg, RankAndNullspace) {
  QMat m = mat({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(rank(m), 2u);
  auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(is_zero_vec(m.apply(ns[0])));
}

TEST(Linalg, InverseRoundTrip) {
  QMat m = mat({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  auto inv_m = inverse(m);
  ASSERT_TRUE(inv_m.has_value());
  EXPECT_EQ(m * *inv_m, qidentity(3));
  EXPECT_FALSE(inverse(mat({{1, 2}, {2, 4}})).has_value());
}

TEST(Linalg, SolveAndSpan) {
  QMat a = mat({{1, 0}, {0, 1}, {1, 1}});
  auto x = solve(a, QVec{Q(2), Q(3), Q(5)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], 2);
  EXPECT_EQ((*x)[1], 3);
  EXPECT_FALSE(solve(a, QVec{Q(2), Q(3), Q(4)}).has_value());
  EXPECT_TRUE(in_span({QVec{Q(1), Q(1)}}, QVec{Q(3), Q(3)}));
  EXPECT_FALSE(in_span({QVec{Q(1), Q(1)}}, QVec{Q(3), Q(2)}));
}

TEST(Linalg, RationalEntriesStayExact) {
  QMat m = mat({{3, 1}, {1, 3}});
  auto inv_m = *inverse(m);
  EXPECT_EQ(inv_m(0, 0), make_q(3, 8));
  EXPECT_EQ(inv_m(0, 1), make_q(-1, 8));
}
