#include <gtest/gtest.h>

#include <map>
#include <random>

#include "k3even/chow.hpp"

using namespace k3even;

namespace {

// Full product over Z without truncation, then read one coefficient.
using Poly = std::map<std::vector<int>, Integer>;

Poly multiply(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r[e] += ca * cb;
    }
  return r;
}

Integer oracle_entry(const CompleteIntersection& ci, std::size_t i, std::size_t j) {
  const std::size_t k = ci.space.factors();
  std::vector<int> zero(k, 0);
  Poly p{{zero, 1}};
  auto mono = [&](std::size_t f) {
    std::vector<int> e(k, 0);
    e[f] = 1;
    return Poly{{e, 1}};
  };
  p = multiply(p, mono(i));
  p = multiply(p, mono(j));
  for (const auto& md : ci.multidegrees) {
    Poly h;
    for (std::size_t f = 0; f < k; ++f)
      if (md[f] != 0) h[mono(f).begin()->first] += md[f];
    p = multiply(p, h);
  }
  auto it = p.find(ci.space.dims);
  return it == p.end() ? Integer(0) : it->second;
}

CompleteIntersection random_k3(std::mt19937& rng) {
  CompleteIntersection ci;
  std::size_t k = 1 + rng() % 3;
  int total = 0;
  do {
    ci.space.dims.clear();
    total = 0;
    for (std::size_t f = 0; f < k; ++f) {
      ci.space.dims.push_back(1 + static_cast<int>(rng() % 4));
      total += ci.space.dims.back();
    }
  } while (total < 3);
  std::size_t m = static_cast<std::size_t>(total - 2);
  ci.multidegrees.assign(m, std::vector<int>(k, 0));
  for (std::size_t f = 0; f < k; ++f)
    for (int u = 0; u < ci.space.dims[f] + 1; ++u) ++ci.multidegrees[rng() % m][f];
  return ci;
}

}  // namespace

TEST(Parse, Grammar) {
  auto ci = parse_complete_intersection("P4xP2: (2,0)+(1,1)^3");
  EXPECT_EQ(ci.space.dims, (std::vector<int>{4, 2}));
  ASSERT_EQ(ci.multidegrees.size(), 4u);
  EXPECT_EQ(ci.multidegrees[0], (std::vector<int>{2, 0}));
  EXPECT_EQ(ci.multidegrees[3], (std::vector<int>{1, 1}));
  EXPECT_EQ(parse_complete_intersection("P3:(4,)").multidegrees[0], std::vector<int>{4});
  EXPECT_EQ(parse_complete_intersection("P3: (4)").multidegrees[0], std::vector<int>{4});
  for (const char* bad : {"P4xP2", "P4x: (1,1)", "Q4: (1)", "P2xP2: (1,1)+", "P2xP2: (1,1)^", "P2xP2: (1)", "P2: 1,1"}) {
    try {
      parse_complete_intersection(bad);
      ADD_FAILURE() << bad;
    } catch (const ChowError& e) {
      EXPECT_NE(std::string(e.what()).find("P4xP2: (2,0)+(1,1)^3"), std::string::npos) << bad;
    }
  }
}

TEST(IntersectionMatrix, Examples) {
  EXPECT_EQ(intersection_matrix(parse_complete_intersection("P4xP2: (2,0)+(1,1)^3")), (IntMatrix{{6, 6}, {6, 2}}));
  EXPECT_EQ(intersection_matrix(parse_complete_intersection("P1xP2: (2,3)")), (IntMatrix{{0, 3}, {3, 2}}));
  EXPECT_EQ(intersection_matrix(parse_complete_intersection("P3xP3: (1,1)^4")), (IntMatrix{{4, 6}, {6, 4}}));
  EXPECT_EQ(intersection_matrix(parse_complete_intersection("P2xP2: (1,1)+(2,2)")), (IntMatrix{{2, 4}, {4, 2}}));
  EXPECT_EQ(intersection_matrix(parse_complete_intersection("P3: (4)")), (IntMatrix{{4}}));
  // the other P2xP2 bidegree pair is also K3 but gives a different matrix
  EXPECT_EQ(intersection_matrix(parse_complete_intersection("P2xP2: (1,2)+(2,1)")), (IntMatrix{{2, 5}, {5, 2}}));
}

TEST(IntersectionMatrix, RejectsNonSurface) {
  try {
    intersection_matrix(parse_complete_intersection("P4xP2: (2,0)+(1,1)^2"));
    FAIL();
  } catch (const ChowError& e) {
    EXPECT_NE(std::string(e.what()).find("dimension 3"), std::string::npos);
  }
  EXPECT_THROW(ci_is_k3(parse_complete_intersection("P3: (2)+(2)")), ChowError);
}

TEST(CiIsK3, Examples) {
  EXPECT_TRUE(ci_is_k3(parse_complete_intersection("P4xP2: (2,0)+(1,1)^3")));
  EXPECT_TRUE(ci_is_k3(parse_complete_intersection("P2xP2: (1,1)+(2,2)")));
  EXPECT_FALSE(ci_is_k3(parse_complete_intersection("P3: (3)")));
  EXPECT_TRUE(ci_is_k3(parse_complete_intersection("P3: (4)")));
  EXPECT_TRUE(ci_is_k3(parse_complete_intersection("P5: (2)^3")));
  EXPECT_TRUE(ci_is_k3(parse_complete_intersection("P1xP1xP1: (2,2,2)")));
}

TEST(IntersectionMatrix, RandomK3MatchesOracle) {
  std::mt19937 rng(5);
  for (int t = 0; t < 200; ++t) {
    auto ci = random_k3(rng);
    ASSERT_TRUE(ci_is_k3(ci)) << ci.str();
    IntMatrix m = intersection_matrix(ci);
    ASSERT_TRUE(m.symmetric());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      EXPECT_EQ(m(i, i) % 2, 0) << ci.str();
      for (std::size_t j = 0; j < m.cols(); ++j) ASSERT_EQ(m(i, j), oracle_entry(ci, i, j)) << ci.str();
    }
  }
}
