#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "wslice/dual.hpp"
#include "wslice/poisson.hpp"

using namespace wslice;

namespace {

MatrixGroupContext sl(int n, bool signed_basis = false) {
  auto cb = build_chevalley(build_root_system('A', n - 1));
  if (signed_basis) cb = cb.signed_variant(standard_positive(cb.rs));
  return make_sl_context(cb);
}

LaurentPoly trace_poly(const MatrixGroupContext& ctx, int power) {
  PMat g = pm_coords(ctx), acc = g;
  for (int k = 1; k < power; ++k) acc = pm_mul(acc, g, ctx.n);
  LaurentPoly t(ctx.vars);
  for (int i = 0; i < ctx.n; ++i) t += acc[i * ctx.n + i];
  return t;
}

}  // namespace

TEST(MatrixRealization, StructureConstantsAndTraceForm) {
  for (int n = 2; n <= 4; ++n)
    for (bool sgn : {false, true}) {
      auto ctx = sl(n, sgn);
      EXPECT_EQ(ctx.form_scale, Q(1));
      EXPECT_EQ(ctx.to_coords * ctx.from_coords, qidentity(ctx.cb.dim));
      EXPECT_TRUE(ctx.coords_of(qidentity(n)) == QVec(ctx.cb.dim, Q(0)));
    }
  auto ctx = sl(3, true);
  int a1 = ctx.cb.rs.find({1, 0});
  EXPECT_EQ(ctx.emb[ctx.cb.rs.neg(a1)], Q(-1) * elementary(3, 1, 0));
  EXPECT_THROW(make_sl_context(build_chevalley(build_root_system('B', 2))), std::invalid_argument);
}

TEST(Gradients, ConstantAndCoordinateAtIdentity) {
  auto ctx = sl(2);
  for (const auto& p : grad_left(ctx.constant(Q(5)), ctx)) EXPECT_TRUE(p.is_zero_poly());
  QMat grad = grad_left_at(ctx.g(0, 1), ctx, qidentity(2));
  EXPECT_EQ(grad, elementary(2, 1, 0));
  auto other = make_vars({"x"});
  EXPECT_THROW(grad_left(LaurentPoly::variable(other, 0), ctx), std::invalid_argument);
}

TEST(Gradients, LeftEqualsAdjointOfRight) {
  auto ctx = sl(3);
  std::mt19937_64 rng(11);
  auto f = parse_laurent(ctx.vars, "g11*g23 - g13*g21 + g32^2*g12 + g22");
  for (int k = 0; k < 5; ++k) {
    QMat g = random_sl_point(3, rng);
    EXPECT_EQ(grad_left_at(f, ctx, g), g * grad_right_at(f, ctx, g) * *inverse(g));
  }
}

TEST(Gradients, DualNumberDirectionalDerivative) {
  auto ctx = sl(3);
  std::mt19937_64 rng(12);
  auto f = parse_laurent(ctx.vars, "g13^2*g22 + g11*g33 - 3*g12*g21*g31");
  for (int k = 0; k < 5; ++k) {
    QMat g = random_sl_point(3, rng);
    for (int b = 0; b < ctx.cb.dim; ++b) {
      const QMat& xi = ctx.emb[b];
      // f((1 + eps xi) g) and f(g (1 + eps xi)) carry the exact first derivative
      QMat dl = xi * g, dr = g * xi;
      std::vector<Dual> pl, pr;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          pl.emplace_back(g(i, j), dl(i, j));
          pr.emplace_back(g(i, j), dr(i, j));
        }
      EXPECT_EQ(f.evaluate<Dual>(pl).b, pair_at(xi, grad_left_at(f, ctx, g)));
      EXPECT_EQ(f.evaluate<Dual>(pr).b, pair_at(xi, grad_right_at(f, ctx, g)));
    }
  }
}

TEST(Gradients, FiniteDifferenceIsFirstOrder) {
  auto ctx = sl(2);
  std::mt19937_64 rng(13);
  auto f = parse_laurent(ctx.vars, "g11^2*g12 + 2*g21*g22 - g12*g21");
  auto fd = [&](const QMat& g, const std::array<double, 4>& xi, double h) {
    // e^{h xi} g in double precision via a truncated series
    double e[4] = {1, 0, 0, 1}, term[4] = {1, 0, 0, 1};
    for (int k = 1; k < 30; ++k) {
      double t[4] = {(term[0] * xi[0] + term[1] * xi[2]) * h / k, (term[0] * xi[1] + term[1] * xi[3]) * h / k,
                     (term[2] * xi[0] + term[3] * xi[2]) * h / k, (term[2] * xi[1] + term[3] * xi[3]) * h / k};
      for (int i = 0; i < 4; ++i) {
        term[i] = t[i];
        e[i] += t[i];
      }
    }
    double gd[4] = {g(0, 0).get_d(), g(0, 1).get_d(), g(1, 0).get_d(), g(1, 1).get_d()};
    double p[4] = {e[0] * gd[0] + e[1] * gd[2], e[0] * gd[1] + e[1] * gd[3], e[2] * gd[0] + e[3] * gd[2],
                   e[2] * gd[1] + e[3] * gd[3]};
    auto val = [&](const double* x) {
      return x[0] * x[0] * x[1] + 2 * x[2] * x[3] - x[1] * x[2];
    };
    return (val(p) - val(gd)) / h;
  };
  for (int k = 0; k < 5; ++k) {
    QMat g = random_sl_point(2, rng);
    QMat xi(2, 2, Q(0));
    xi(0, 0) = make_q(1, 2);
    xi(1, 1) = make_q(-1, 2);
    xi(0, 1) = 1;
    xi(1, 0) = make_q(-3, 2);
    double exact = pair_at(xi, grad_left_at(f, ctx, g)).get_d();
    std::array<double, 4> xd = {0.5, 1, -1.5, -0.5};
    double e1 = std::abs(fd(g, xd, 1e-3) - exact), e2 = std::abs(fd(g, xd, 1e-4) - exact);
    EXPECT_LT(e2, e1 / 5 + 1e-9);
    EXPECT_LT(e2, 1e-2);
  }
}

TEST(Sklyanin, AntisymmetricVanishingAtIdentityAndJacobi) {
  for (int n : {2, 3}) {
    auto ctx = sl(n);
    auto R = standard_rcontext(ctx);
    auto table = coordinate_table(ctx, [&](const Gradients& a, const Gradients& b) { return bracket_pbr(a, b, ctx, R); });
    QVec id = point_of(qidentity(n));
    for (int a = 0; a < n * n; ++a) {
      auto ga = LaurentPoly::variable(ctx.vars, a);
      EXPECT_TRUE(bracket_pbr(ga, ga, ctx, R).is_zero_poly());
      for (int b = 0; b < n * n; ++b) {
        auto gb = LaurentPoly::variable(ctx.vars, b);
        auto p = bracket_pbr(ga, gb, ctx, R);
        EXPECT_EQ(p, -bracket_pbr(gb, ga, ctx, R));
        EXPECT_EQ(p.evaluate<Q>(id), Q(0));
      }
    }
    EXPECT_FALSE(table.jacobi_violation().has_value()) << "n = " << n;
  }
}

TEST(Sklyanin, MultiplicationIsPoisson) {
  auto ctx = sl(2);
  auto R = standard_rcontext(ctx);
  std::mt19937_64 rng(14);
  const int n = 2;
  // F(x) = f(x g2) and F'(y) = f(g1 y) as polynomials in the coordinate ring
  auto right_mult = [&](const LaurentPoly& f, const QMat& h) {
    PMat xg = pm_mul(pm_coords(ctx), pm_from(ctx, h), n);
    return f.substitute(xg);
  };
  auto left_mult = [&](const LaurentPoly& f, const QMat& h) {
    PMat hx = pm_mul(pm_from(ctx, h), pm_coords(ctx), n);
    return f.substitute(hx);
  };
  for (int k = 0; k < 5; ++k) {
    QMat g1 = random_sl_point(n, rng), g2 = random_sl_point(n, rng);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        auto fa = LaurentPoly::variable(ctx.vars, a), fb = LaurentPoly::variable(ctx.vars, b);
        Q lhs = bracket_pbr(right_mult(fa, g2), right_mult(fb, g2), ctx, R).evaluate<Q>(point_of(g1)) +
                bracket_pbr(left_mult(fa, g1), left_mult(fb, g1), ctx, R).evaluate<Q>(point_of(g2));
        Q rhs = bracket_pbr(fa, fb, ctx, R).evaluate<Q>(point_of(g1 * g2));
        EXPECT_EQ(lhs, rhs);
      }
  }
}

TEST(DualBracket, CoordinateTableMatchesClosedForm) {
  auto ctx = sl(3);
  auto R = standard_rcontext(ctx);
  int mismatches = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m)
          if (bracket_tau(ctx.g(i, j), ctx.g(k, m), ctx, R) != gst_entry(ctx, i, j, k, m)) ++mismatches;
  EXPECT_EQ(mismatches, 0);
  EXPECT_EQ(bracket_tau(ctx.g(0, 0), ctx.g(0, 1), ctx, R), parse_laurent(ctx.vars, "-2*(g12*g22 + g13*g32)"));
}

TEST(DualBracket, LeibnizAndAntisymmetry) {
  auto ctx = sl(2);
  auto R = standard_rcontext(ctx);
  auto f = parse_laurent(ctx.vars, "g11*g22"), h = parse_laurent(ctx.vars, "g12 + g21^2"), k = ctx.g(1, 0);
  EXPECT_EQ(bracket_tau(f * h, k, ctx, R), f * bracket_tau(h, k, ctx, R) + h * bracket_tau(f, k, ctx, R));
  EXPECT_EQ(bracket_tau(f, h, ctx, R), -bracket_tau(h, f, ctx, R));
  EXPECT_EQ(bracket_pbr(f * h, k, ctx, R), f * bracket_pbr(h, k, ctx, R) + h * bracket_pbr(f, k, ctx, R));
  EXPECT_TRUE(bracket_tau(f, f, ctx, R).is_zero_poly());
}

TEST(DualBracket, TracesAreCentralAndJacobiHolds) {
  for (int n : {2, 3}) {
    auto ctx = sl(n);
    auto R = standard_rcontext(ctx);
    for (int power : {1, 2})
      for (int a = 0; a < n * n; ++a)
        EXPECT_TRUE(bracket_tau(trace_poly(ctx, power), LaurentPoly::variable(ctx.vars, a), ctx, R).is_zero_poly())
            << "n = " << n << ", power " << power << ", coordinate " << a;
    auto table = coordinate_table(ctx, [&](const Gradients& a, const Gradients& b) { return bracket_tau(a, b, ctx, R); });
    EXPECT_FALSE(table.jacobi_violation().has_value());
  }
}

TEST(HamiltonianField, PairingReproducesDualBracket) {
  auto ctx = sl(3);
  auto R = standard_rcontext(ctx);
  std::mt19937_64 rng(15);
  auto f = trace_poly(ctx, 1) + parse_laurent(ctx.vars, "g12*g31");
  for (int k = 0; k < 5; ++k) {
    QMat g = random_sl_point(3, rng);
    QMat xi = hamiltonian_field(f, ctx, R, g);
    for (int a = 0; a < 9; ++a) {
      auto h = LaurentPoly::variable(ctx.vars, a);
      EXPECT_EQ(bracket_tau(f, h, ctx, R).evaluate<Q>(point_of(g)), Q(2) * pair_at(xi, grad_left_at(h, ctx, g)));
    }
  }
  EXPECT_TRUE(hamiltonian_field(ctx.constant(Q(3)), ctx, R, random_sl_point(3, rng)).is_zero_matrix());
}

TEST(HamiltonianField, TraceFieldTangentToConjugacyClassOnSL2) {
  auto ctx = sl(2);
  auto R = standard_rcontext(ctx);
  auto f = trace_poly(ctx, 1);
  for (int a : {2, 3, -5}) {
    QMat g(2, 2, Q(0));
    g(0, 0) = a;
    g(1, 1) = make_q(1, a);
    QMat xi = hamiltonian_field(f, ctx, R, g);
    // tangent space of the class in the right trivialization is the image of 1 - Ad g
    std::vector<QVec> cols;
    for (const auto& b : ctx.emb) cols.push_back(vec(b - g * b * *inverse(g)));
    EXPECT_TRUE(solve(QMat::from_columns(cols, 4, Q(0)), vec(xi)).has_value());
  }
}
