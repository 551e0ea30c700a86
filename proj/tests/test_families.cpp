#include <gtest/gtest.h>

#include <chrono>

#include "k3even/families.hpp"
#include "oracles.hpp"

using namespace k3even;

namespace {

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Independent count of supports S with |S| even, 2d = 2|S| mod 8 and v/2 not in N (S not empty, not full).
long long expected_glue_count(int d) {
  long long c = 0;
  for (int s = 2; s <= 6; s += 2)
    if ((2 * d - 2 * s) % 8 == 0) c += binom(8, s);
  return c;
}

}  // namespace

TEST(Family, ParseAndPrint) {
  auto f = NSFamily::parse("L':2d=8");
  EXPECT_EQ(f.kind, FamilyKind::L2dPrime);
  EXPECT_EQ(f.parameter, 4);
  EXPECT_EQ(f.str(), "L':2d=8");
  EXPECT_EQ(NSFamily::parse("M:2d'=4").parameter, 2);
  EXPECT_EQ(NSFamily::parse("M':2d'=8").str(), "M':2d'=8");
  EXPECT_EQ(NSFamily::parse(" L : 2d = 6 ").symbol(), "L_6");
  for (const char* bad : {"L:2d=7", "L:2d'=8", "M:2d=8", "X:2d=8", "L:2d=0", "L:d=4", "L2d=8", ""})
    EXPECT_THROW(NSFamily::parse(bad), FamilyError) << bad;
  EXPECT_EQ(NSFamily::Lp(2).glue_flavor(), GlueFlavor::pair);
  EXPECT_EQ(NSFamily::Lp(4).glue_flavor(), GlueFlavor::quadruple);
  EXPECT_EQ(NSFamily::Lp(6).glue_flavor(), GlueFlavor::pair);
}

TEST(Family, MakeExamples) {
  auto l4 = make(NSFamily::L(2));
  EXPECT_EQ(l4.rank(), 9u);
  EXPECT_EQ(det(l4.gram()), 256);
  EXPECT_EQ(oracle::leibniz_det(l4.gram()) == 0, false);
  EXPECT_EQ(signature(l4.gram()), (Signature{1, 8, 0}));
  auto e8 = make("E8(-1)");
  EXPECT_TRUE(e8.is_even());
  EXPECT_EQ(abs(det(e8.gram())), 1);
  EXPECT_EQ(signature(e8.gram()), (Signature{0, 8, 0}));
  auto lp4 = make(NSFamily::Lp(2));
  EXPECT_TRUE(lp4.is_even());
  EXPECT_EQ(abs(det(lp4.gram())), 64);
  EXPECT_EQ(lp4.basis_names().front(), "g");
  EXPECT_THROW(make(NSFamily::Lp(3)), FamilyError);
  EXPECT_THROW(make(NSFamily::Mp(3)), FamilyError);
  EXPECT_THROW(make(NSFamily::L(0)), FamilyError);
  auto k3 = make("K3");
  EXPECT_EQ(k3.rank(), 22u);
  EXPECT_EQ(abs(det(k3.gram())), 1);
  EXPECT_EQ(signature(k3.gram()), (Signature{3, 19, 0}));
}

TEST(Family, EveryConstructedLatticeIsEven) {
  for (int d = 1; d <= 12; ++d)
    for (auto f : {NSFamily::L(d), NSFamily::Lp(d), NSFamily::M(d), NSFamily::Mp(d)}) {
      if (!f.valid()) continue;
      auto l = make(f);
      EXPECT_TRUE(l.is_even()) << f.str();
      EXPECT_EQ(signature(l.gram()), (Signature{1, 8, 0})) << f.str();
    }
  for (const char* n : {"N", "U", "U(2)", "E8(-1)", "E8(-2)", "K3"}) EXPECT_TRUE(make(n).is_even()) << n;
}

TEST(Family, LprimeRecoversL) {
  for (int d : {2, 4, 6, 8}) {
    auto lp = make(NSFamily::Lp(d));
    auto f = lp.frame();
    auto s = d % 4 == 2 ? std::vector<int>{1, 2} : std::vector<int>{1, 2, 3, 4};
    EXPECT_EQ(lp.basis_vector(0) * Integer(2) + sum_of(f, s), FrameVector::unit(f, 0));
    for (const auto& b : make(NSFamily::L(d)).basis()) EXPECT_TRUE(lp.contains(b));
  }
}

TEST(Glues, Examples) {
  EXPECT_TRUE(admissible_glues(3).glues.empty());
  auto g2 = admissible_glues(2);
  EXPECT_EQ(g2.glues.size(), 56u);
  EXPECT_EQ(g2.classes.size(), 1u);
  for (const auto& g : g2.glues) EXPECT_TRUE(g.size() == 2 || g.size() == 6);
  auto g4 = admissible_glues(4);
  EXPECT_EQ(g4.glues.size(), 70u);
  EXPECT_EQ(g4.classes.size(), 1u);
  for (const auto& g : g4.glues) EXPECT_EQ(g.size(), 4);
  EXPECT_TRUE(std::is_sorted(g4.glues.begin(), g4.glues.end()));
}

TEST(Glues, FullClassificationUpTo12) {
  auto t0 = std::chrono::steady_clock::now();
  for (int d = 1; d <= 12; ++d) {
    auto g = admissible_glues(d, 2);
    EXPECT_EQ(g.glues.size(), static_cast<std::size_t>(expected_glue_count(d))) << d;
    EXPECT_EQ(!g.glues.empty(), d % 2 == 0) << d;
    EXPECT_EQ(g.classes.size(), g.glues.empty() ? 0u : 1u) << d;
    EXPECT_EQ(g.criteria_disagreements, 0u) << d;
    EXPECT_TRUE(g.all_even);
    EXPECT_TRUE(g.nikulin_primitive);
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  RecordProperty("seconds", std::to_string(s));
}

TEST(Glues, ParallelMatchesSequential) {
  auto a = admissible_glues(6, 1), b = admissible_glues(6, 4);
  EXPECT_EQ(a.glues, b.glues);
  EXPECT_EQ(a.classes, b.classes);
}

TEST(Overlattice, Examples) {
  auto l4 = make(NSFamily::L(2));
  auto f = l4.frame();
  FrameVector L = FrameVector::unit(f, 0);
  auto o = overlattice(l4, (L - sum_of(f, {1, 2})) / 2);
  EXPECT_EQ(discriminant_group(o).order, 64);
  EXPECT_TRUE(isometry_from_basis_map(make(NSFamily::Lp(2)), o, RationalMatrix(IntMatrix::identity(9))));

  auto l8 = make(NSFamily::L(4));
  auto f8 = l8.frame();
  auto o8 = overlattice(l8, (FrameVector::unit(f8, 0) - sum_of(f8, {1, 2, 3, 4})) / 2);
  EXPECT_EQ(discriminant_group(o8).invariant_factors, (IntVector{2, 2, 2, 2, 8}));

  auto l6 = make(NSFamily::L(3));
  auto f6 = l6.frame();
  try {
    overlattice(l6, (FrameVector::unit(f6, 0) - sum_of(f6, {1, 2})) / 2);
    FAIL();
  } catch (const OverlatticeError& e) {
    EXPECT_NE(std::string(e.what()).find("evenness"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("1/2"), std::string::npos);
  }
  EXPECT_THROW(overlattice(l6, FrameVector::unit(f6, 1)), OverlatticeError);
  EXPECT_THROW(overlattice(l6, FrameVector::unit(f6, 1) / 4), OverlatticeError);
  // (L + N1 + N2 + N3 + N4)/2 in L_6: square (6 - 8)/4 = -1/2
  EXPECT_THROW(overlattice(l6, (FrameVector::unit(f6, 0) + sum_of(f6, {1, 2, 3, 4})) / 2), OverlatticeError);
}

TEST(Overlattice, IndexTwoProperties) {
  for (int d : {2, 4, 6, 8, 10, 12}) {
    GlueContext ctx(d);
    auto g = admissible_glues(d);
    for (std::size_t i = 0; i < g.glues.size(); i += 7) {
      auto o = ctx.overlattice_of(g.glues[i]);
      EXPECT_TRUE(o.is_even());
      for (const auto& b : ctx.l2d().basis()) EXPECT_TRUE(o.contains(b));
      EXPECT_EQ(abs(o.determinant()) * 4, abs(ctx.l2d().determinant()));
      EXPECT_EQ(discriminant_group(o).order * 4, discriminant_group(ctx.l2d()).order);
      EXPECT_TRUE(nikulin_primitive_in(o));
    }
  }
}

TEST(GlueEquivalent, Examples) {
  EXPECT_TRUE(glue_equivalent(2, GlueVector::of({1, 2}), GlueVector::of({3, 4, 5, 6, 7, 8})));
  EXPECT_TRUE(glue_equivalent(2, GlueVector::of({1, 2}), GlueVector::of({5, 6})));
  EXPECT_TRUE(glue_equivalent(4, GlueVector::of({1, 2, 3, 4}), GlueVector::of({1, 2, 3, 5})));
  EXPECT_THROW(glue_equivalent(4, GlueVector::of({1, 2}), GlueVector::of({1, 2, 3, 4})), std::invalid_argument);
  // complement yields literally the same lattice
  GlueContext ctx(2);
  auto a = ctx.overlattice_of(GlueVector::of({1, 2})), b = ctx.overlattice_of(GlueVector::of({3, 4, 5, 6, 7, 8}));
  for (const auto& v : a.basis()) EXPECT_TRUE(b.contains(v));
}

TEST(K3Embedding, Examples) {
  auto e1 = k3_embedding(NSFamily::Mp(2));  // M^2 = 4, n = 1
  ASSERT_TRUE(e1.constructed);
  EXPECT_EQ(e1.n, 1);
  EXPECT_EQ(square(e1.u), 2);
  EXPECT_EQ(square(e1.alpha), -2);
  EXPECT_EQ(e1.M_squared, 4);
  EXPECT_TRUE(e1.primitive);
  EXPECT_TRUE(e1.isometric_to_family);
  auto e2 = k3_embedding(NSFamily::Mp(4));  // M^2 = 8, n = 2
  EXPECT_EQ(e2.u.numerators()[1], 2);
  EXPECT_EQ(square(e2.alpha), -4);
  EXPECT_EQ(e2.M_squared, 8);
  EXPECT_TRUE(e2.primitive);
  for (int dp = 2; dp <= 24; dp += 2) {
    auto e = k3_embedding(NSFamily::Mp(dp));
    EXPECT_EQ(e.M_squared, 2 * dp);
    EXPECT_TRUE(e.primitive) << dp;
    EXPECT_TRUE(e.isometric_to_family) << dp;
    EXPECT_EQ(e.half, (e.M + e.v) / 2);
  }
  auto k3 = make("K3");
  EXPECT_TRUE(is_primitive(k3, anti_diagonal_e8(k3.frame())));
  EXPECT_FALSE(k3_embedding(NSFamily::L(3)).constructed);
  EXPECT_THROW(k3_embedding(NSFamily::Mp(3)), FamilyError);
}
