#include <gtest/gtest.h>

#include <random>

#include "sdual/affine.hpp"
#include "sdual/weyl.hpp"

using namespace sdual;

TEST(Weyl, ToDominantSignAndLength) {
  const RootSystem a2 = build("A2");
  auto r = to_dominant(a2, Weight({-1, 0}));
  EXPECT_EQ(r.weight, Weight({0, 1}));
  EXPECT_EQ(r.length, 2);
  EXPECT_TRUE(r.weight.is_dominant());

  // regular dominant weight: nothing to do
  auto s = to_dominant(a2, Weight({1, 1}));
  EXPECT_EQ(s.sign, 1);
  EXPECT_EQ(s.length, 0);

  // -rho needs the longest element, length 3
  auto t = to_dominant(a2, Weight({-1, -1}));
  EXPECT_EQ(t.weight, Weight({1, 1}));
  EXPECT_EQ(t.length, 3);
  EXPECT_EQ(t.sign, -1);

  // on a wall the sign is zero
  EXPECT_EQ(to_dominant(a2, Weight({1, 0})).sign, 0);
}

TEST(Weyl, ReflectionIsInvolution) {
  const RootSystem rs = build("F4");
  std::mt19937 gen(7);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int it = 0; it < 200; ++it) {
    Weight w{d(gen), d(gen), d(gen), d(gen)};
    for (int i = 1; i <= 4; ++i) EXPECT_EQ(reflect(rs, reflect(rs, w, i), i), w);
  }
}

TEST(Weyl, DominantIsOrbitInvariantAndPreservesNorm) {
  const RootSystem rs = build("E6");
  std::mt19937 gen(11);
  std::uniform_int_distribution<int> d(-3, 3);
  std::uniform_int_distribution<int> node(1, 6);
  for (int it = 0; it < 200; ++it) {
    Weight w(6);
    for (int i = 0; i < 6; ++i) w[i] = d(gen);
    Weight v = w;
    for (int s = 0; s < 10; ++s) v = reflect(rs, v, node(gen));
    EXPECT_EQ(dominant(rs, w), dominant(rs, v));
    EXPECT_EQ(inner(rs, w, w), inner(rs, dominant(rs, w), dominant(rs, w)));
  }
}

TEST(Weyl, DaggerExamples) {
  EXPECT_EQ(dagger(build("A4"), Weight({1, 0, 0, 0})), Weight({0, 0, 0, 1}));
  EXPECT_EQ(dagger(build("E6"), Weight({1, 0, 0, 0, 0, 0})), Weight({0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(dagger(build("E8"), Weight({0, 0, 0, 0, 0, 0, 1, 0})), Weight({0, 0, 0, 0, 0, 0, 1, 0}));
  EXPECT_EQ(dagger(build("D5"), Weight({0, 0, 0, 1, 0})), Weight({0, 0, 0, 0, 1}));
  EXPECT_EQ(dagger(build("D4"), Weight({0, 0, 1, 0})), Weight({0, 0, 1, 0}));
  EXPECT_THROW(dagger(build("A2"), Weight({-1, 0})), DomainError);
}

TEST(Weyl, OrbitSizes) {
  const RootSystem e8 = build("E8");
  // adjoint orbit = roots
  EXPECT_EQ(orbit(e8, e8.theta(), 1000).size, 240);
  EXPECT_EQ(orbit(e8, Weight({1, 0, 0, 0, 0, 0, 0, 0}), 10000).size, 2160);
  EXPECT_THROW(orbit(e8, e8.rho(), 1000), ResourceError);
  const RootSystem a3 = build("A3");
  auto o = orbit(a3, Weight({1, 0, 0}), 10);
  EXPECT_EQ(o.size, 4);
  EXPECT_EQ(o.elements->size(), 4u);
}

TEST(Weyl, DaggerIsAnInvolution) {
  std::mt19937_64 rng(42);
  const std::vector<std::string> types{"A1", "A5", "B4", "C4", "D5", "D6", "E6", "E7", "E8", "F4", "G2", "A2+E6", "A4+A4"};
  for (int t = 0; t < 200; ++t) {
    const RootSystem rs = build(types[rng() % types.size()]);
    Weight w = rs.zero();
    for (int i = 0; i < rs.rank(); ++i) w[i] = static_cast<int>(rng() % 5);
    const Weight d = dagger(rs, w);
    EXPECT_EQ(dagger(rs, d), w) << rs.type().str() << " " << w.str();
    // -w0 preserves the norm and the level
    EXPECT_EQ(inner(rs, d, d), inner(rs, w, w));
    for (std::size_t c = 0; c < rs.components().size(); ++c) EXPECT_EQ(level_of(rs, d, c), level_of(rs, w, c));
  }
}

TEST(Weyl, DaggerOnFundamentalWeights) {
  for (int n = 2; n <= 9; ++n) {
    const RootSystem rs = build("A" + std::to_string(n - 1));
    for (int i = 1; i < n; ++i) EXPECT_EQ(dagger(rs, rs.fundamental(i)), rs.fundamental(n - i));
  }
  for (const char* t : {"D8", "D4", "E7", "E8", "G2", "F4", "B3", "C5"}) {
    const RootSystem rs = build(t);
    for (int i = 1; i <= rs.rank(); ++i) EXPECT_EQ(dagger(rs, rs.fundamental(i)), rs.fundamental(i)) << t;
  }
}
