#include <gtest/gtest.h>

#include "wslice/longroot.hpp"

using namespace wslice;
using namespace wslice::longroot;

namespace {

const Check& check(const std::vector<Check>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return c;
  throw std::logic_error("missing check " + name);
}

const Model& sl3_model() {
  static const Model md = make_model(3);
  return md;
}

std::vector<Model::Point> sample_points(const Model& md, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Model::Point> out;
  for (int k = 0; k < count; ++k) out.push_back(md.sample(rng));
  return out;
}

QMat random_n(const Model& md, std::mt19937_64& rng) { return exp_nilpotent(random_in_span(md.n_basis, md.ctx.n, rng)); }

}  // namespace

TEST(SelectBeta, TypeRules) {
  auto a3 = build_root_system('A', 3);
  EXPECT_EQ(a3.roots[select_beta(a3)], a3.simple(2));
  auto a1 = build_root_system('A', 1);
  EXPECT_EQ(select_beta(a1), a1.find(a1.simple(0)));
  auto d4 = build_root_system('D', 4);
  EXPECT_EQ(d4.roots[select_beta(d4)], d4.simple(1));
  auto g2 = build_root_system('G', 2);
  EXPECT_EQ(g2.roots[select_beta(g2)], g2.simple(1));
  auto f4 = build_root_system('F', 4);
  EXPECT_EQ(f4.roots[select_beta(f4)], f4.simple(0));
  EXPECT_EQ(extended_neighbours(d4), std::vector<int>{2});
}

TEST(ShortGrading, Dimensions) {
  std::vector<std::tuple<char, int, std::array<int, 5>>> cases = {
      {'A', 1, {1, 0, 1, 0, 1}},   {'A', 2, {1, 2, 2, 2, 1}},   {'A', 3, {1, 4, 5, 4, 1}},
      {'B', 3, {1, 6, 7, 6, 1}},   {'C', 3, {1, 4, 11, 4, 1}},  {'D', 4, {1, 8, 10, 8, 1}},
      {'F', 4, {1, 14, 22, 14, 1}}, {'G', 2, {1, 4, 4, 4, 1}}};
  for (auto [t, r, d] : cases) {
    auto rs = build_root_system(t, r);
    auto sg = short_grading(select_beta(rs), build_chevalley(rs));
    EXPECT_EQ(sg.dims(), d) << t << r;
  }
}

// (g)_0 of sl3 for beta = a2 is the Cartan subalgebra, not a 4-dimensional space.
TEST(ShortGrading, Sl3DegreeZeroIsCartan) {
  auto rs = build_root_system('A', 2);
  auto cb = build_chevalley(rs);
  auto sg = short_grading(select_beta(rs), cb);
  ASSERT_EQ(sg.part(0).size(), 2u);
  for (int i : sg.part(0)) EXPECT_GE(i, cb.nroots);
}

TEST(ShortGrading, InvariantsAcrossSweep) {
  for (auto [t, r] : sweep_types(4)) {
    auto rep = lie_report(t, r);
    ASSERT_TRUE(rep.error.empty()) << t << r << " " << rep.error;
    for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << t << r << " " << c.name << " " << c.detail;
    EXPECT_EQ(rep.dims[0], 1) << t << r;
    EXPECT_EQ(rep.dims[4], 1) << t << r;
  }
}

TEST(ShortGrading, RejectsShortRoot) {
  auto rs = build_root_system('B', 2);
  auto cb = build_chevalley(rs);
  int shortroot = rs.find(rs.simple(1));
  ASSERT_FALSE(rs.is_long(rs.simple(1)));
  try {
    short_grading(shortroot, cb);
    FAIL() << "short root accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("grade"), std::string::npos);
  }
}

TEST(ShortGrading, G2HeisenbergAndCompatibility) {
  auto rs = build_root_system('G', 2);
  auto cb = build_chevalley(rs);
  auto sg = short_grading(select_beta(rs), cb);
  auto cs = grading_checks(sg, cb);
  EXPECT_TRUE(check(cs, "heisenberg.plus").pass);
  EXPECT_TRUE(check(cs, "heisenberg.minus").pass);
  EXPECT_TRUE(check(cs, "grading.compatible").pass);
}

TEST(Centralizer, Sl2AndSl3) {
  auto a1 = build_root_system('A', 1);
  auto cb1 = build_chevalley(a1);
  auto sg1 = short_grading(select_beta(a1), cb1);
  auto cg1 = centralizer_grading(sg1, cb1);
  EXPECT_TRUE(cg1.z0.empty());
  EXPECT_EQ(cg1.dim_kernel, 1);
  EXPECT_EQ(cg1.z2, sg1.part(2));

  auto a2 = build_root_system('A', 2);
  auto cb2 = build_chevalley(a2);
  auto sg2 = short_grading(select_beta(a2), cb2);
  auto cg2 = centralizer_grading(sg2, cb2);
  EXPECT_EQ(cg2.z0.size(), sg2.part(0).size() - 1);
  EXPECT_EQ(cg2.dim_kernel, 4);
}

// n + z has the dimension of z_e; as a subspace it is the centralizer of f.
TEST(Centralizer, NPlusZBookkeeping) {
  auto rs = build_root_system('A', 2);
  const auto& md = sl3_model();
  EXPECT_EQ(md.nz_basis.size(), 4u);
  auto sd = slice_for(rs, select_beta(rs));
  EXPECT_EQ(sd.dim_ns + sd.dim_z, centralizer_grading(md.sg, md.ctx.cb).dim_kernel);
  QMat e = md.ctx.matrix_of(md.sg.e), f = md.ctx.matrix_of(md.sg.f);
  for (const auto& x : md.nz_basis) EXPECT_TRUE(commutator(f, x).is_zero_matrix());
  bool all_commute_e = true;
  for (const auto& x : md.nz_basis)
    if (!commutator(e, x).is_zero_matrix()) all_commute_e = false;
  EXPECT_FALSE(all_commute_e);
}

TEST(ReducedR, Sl2Sl3AndSweep) {
  for (auto [t, r] : sweep_types(4)) {
    auto rs = build_root_system(t, r);
    auto cb = build_chevalley(rs);
    auto sd = slice_for(rs, select_beta(rs));
    EXPECT_TRUE(reduced_r_check(sd, cb).pass) << t << r;
  }
}

TEST(Model, SignedPermutationRepresentative) {
  const auto& md = sl3_model();
  EXPECT_EQ(md.s, (QMat::from_rows({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}, 3, Q(0))));
  // s centralizes z and maps n onto nbar
  for (const auto& y : md.z_cartan) EXPECT_EQ(md.s * y * md.sinv, y);
  for (const auto& x : md.n_basis) {
    QMat y = md.s * x * md.sinv;
    bool found = false;
    for (const auto& b : md.nbar_basis)
      if (y == b || y == Q(-1) * b) found = true;
    EXPECT_TRUE(found);
  }
}

TEST(Extension, TrivialFactors) {
  const auto& md = sl3_model();
  auto I = qidentity(3);
  auto pts = sample_points(md, 2, 3);
  for (const auto& f : coordinate_functions(md))
    for (const auto& p : pts) {
      EXPECT_EQ(extension_value(f, I, p.z, I), f.evaluate<Q>(vec(p.z)));
      EXPECT_EQ(extension_at(f, md, p.g), f.evaluate<Q>(vec(p.m)));
    }
}

TEST(Extension, FactorizationRecoversParts) {
  const auto& md = sl3_model();
  std::mt19937_64 rng(17);
  for (int k = 0; k < 5; ++k) {
    auto p = md.sample(rng);
    QMat np = random_n(md, rng);
    auto fz = factor(md, p.m * md.sinv * np);
    EXPECT_EQ(fz.n, p.n);
    EXPECT_EQ(fz.z, p.z);
    EXPECT_EQ(fz.nprime, np);
  }
}

TEST(Extension, InvariantUnderConjugationByN) {
  const auto& md = sl3_model();
  std::mt19937_64 rng(23);
  auto fs = coordinate_functions(md);
  for (int k = 0; k < 5; ++k) {
    auto p = md.sample(rng);
    QMat g = p.g * random_n(md, rng);
    QMat n0 = random_n(md, rng);
    QMat g2 = n0 * g * *inverse(n0);
    for (const auto& f : fs) EXPECT_EQ(extension_at(f, md, g2), extension_at(f, md, g)) << f;
  }
}

TEST(Extension, RejectsPointsOffTheSlice) {
  const auto& md = sl3_model();
  auto p = sample_points(md, 1, 5)[0];
  QMat g = p.g;
  g(0, 0) += 1;
  EXPECT_THROW(factor(md, g), std::invalid_argument);
}

TEST(Differential, ConstantFunction) {
  const auto& md = sl3_model();
  auto p = sample_points(md, 1, 7)[0];
  auto c = md.ctx.constant(Q(5));
  EXPECT_TRUE(differential_formula(c, md, p).is_zero_matrix());
  auto rep = differential_check(c, md, p);
  EXPECT_TRUE(rep.pass) << rep.witness;
}

TEST(Differential, CoordinatesAtRandomPoints) {
  const auto& md = sl3_model();
  for (const auto& p : sample_points(md, 3, 11))
    for (const auto& f : coordinate_functions(md)) {
      auto rep = differential_check(f, md, p);
      EXPECT_TRUE(rep.pass) << f << " " << rep.witness;
      EXPECT_EQ(rep.directions, 7);
    }
}

TEST(Differential, NonCentralizingSBreaksFormula) {
  const auto& md = sl3_model();
  auto p = sample_points(md, 1, 13)[0];
  QMat wrong = QMat::from_rows({{0, 0, 1}, {0, -1, 0}, {1, 0, 0}}, 3, Q(0));
  ASSERT_NE(wrong * md.z_cartan[0], md.z_cartan[0] * wrong);
  int broken = 0;
  for (const auto& f : coordinate_functions(md))
    if (!differential_check(f, md, p, wrong).pass) ++broken;
  EXPECT_GT(broken, 0);
}

TEST(SliceBracket, MatchesReducedBracket) {
  const auto& md = sl3_model();
  auto fs = coordinate_functions(md);
  ASSERT_EQ(fs.size(), 6u);
  for (const auto& p : sample_points(md, 10, 29))
    for (std::size_t a = 0; a < fs.size(); ++a)
      for (std::size_t b = a + 1; b < fs.size(); ++b)
        EXPECT_EQ(str_bracket(fs[a], fs[b], md, p.m), reduced_bracket_at(fs[a], fs[b], md, p)) << fs[a] << ", " << fs[b];
}

TEST(SliceBracket, Antisymmetric) {
  const auto& md = sl3_model();
  auto fs = coordinate_functions(md);
  for (const auto& p : sample_points(md, 3, 31))
    for (const auto& f : fs) {
      EXPECT_EQ(str_bracket(f, f, md, p.m), Q(0));
      for (const auto& h : fs) EXPECT_EQ(str_bracket(f, h, md, p.m), -str_bracket(h, f, md, p.m));
    }
}

TEST(SliceBracket, ReducedBracketIgnoresConormalPart) {
  const auto& md = sl3_model();
  auto fs = coordinate_functions(md);
  auto p = sample_points(md, 1, 37)[0];
  auto cf = extension_covector(fs[0], md, p), ch = extension_covector(fs[3], md, p);
  ASSERT_EQ(cf.conormal.size(), 1u);
  Q base = tau_at(cf.xi, ch.xi, md.R, p.g);
  EXPECT_EQ(tau_at(cf.xi + Q(3) * cf.conormal[0], ch.xi - Q(2) * ch.conormal[0], md.R, p.g), base);
}

TEST(SliceBracket, ClosedFormChart) {
  const auto& md = sl3_model();
  auto sc = symbolic_chart(md);
  EXPECT_TRUE(chart_round_trip(sc));
  EXPECT_EQ(sc.chart.size(), 4u);
}

TEST(SliceBracket, ClosedFormJacobi) {
  const auto& md = sl3_model();
  auto sc = symbolic_chart(md);
  auto t = symbolic_table(md, sc);
  EXPECT_TRUE(t.antisymmetric());
  auto v = t.jacobi_violation();
  EXPECT_FALSE(v.has_value());
}

TEST(SliceBracket, ClosedFormMatchesPointwise) {
  const auto& md = sl3_model();
  auto sc = symbolic_chart(md);
  auto t = symbolic_table(md, sc);
  const int k = static_cast<int>(sc.chart.size());
  for (const auto& p : sample_points(md, 4, 41)) {
    std::vector<Q> pv;
    for (const auto& c : sc.chart) pv.push_back(c.evaluate<Q>(vec(p.m)));
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) EXPECT_EQ(t.get(a, b).evaluate<Q>(pv), reduced_bracket_at(sc.chart[a], sc.chart[b], md, p));
  }
}

// Jacobi at sampled points for the entry functions, through the closed form.
TEST(SliceBracket, JacobiOnEntryFunctions) {
  const auto& md = sl3_model();
  auto sc = symbolic_chart(md);
  auto t = symbolic_table(md, sc);
  std::vector<LaurentPoly> fs;
  for (const auto& f : coordinate_functions(md)) fs.push_back(f.substitute(sc.m));
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (std::size_t b = a + 1; b < fs.size(); ++b)
      for (std::size_t c = b + 1; c < fs.size(); ++c) EXPECT_TRUE(t.jacobiator(fs[a], fs[b], fs[c]).is_zero_poly());
}

TEST(SliceBracket, ExtraTermsAreTheDifference) {
  const auto& md = sl3_model();
  auto fs = coordinate_functions(md);
  auto p = sample_points(md, 1, 43)[0];
  for (const auto& f : fs)
    for (const auto& h : fs) {
      auto t = str_terms(f, h, md, p.m);
      Q last = t[4] + t[5] + t[6] + t[7];
      Q first = t[0] + t[1] + t[2] + t[3];
      EXPECT_EQ(str_bracket(f, h, md, p.m) - last, first);
    }
}

// The four r-terms against the tau form with gradients on N Z.
TEST(SliceBracket, FirstFourTermsAreTauForm) {
  const auto& md = sl3_model();
  auto fs = coordinate_functions(md);
  for (const auto& p : sample_points(md, 3, 47))
    for (std::size_t a = 0; a < fs.size(); ++a)
      for (std::size_t b = a + 1; b < fs.size(); ++b)
        EXPECT_EQ(four_term_defect(fs[a], fs[b], md, p.m), Q(0))
            << fs[a] << ", " << fs[b] << " tau " << tau_on_nz(fs[a], fs[b], md, p.m).get_str();
}
