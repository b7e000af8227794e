#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles/kac_peterson.hpp"
#include "sdual/verlinde.hpp"

using namespace sdual;

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST(Verlinde, A1ClosedForm) {
  const RootSystem a1 = build("A1");
  const double pi = std::acos(-1.0);
  for (int k = 1; k <= 6; ++k) {
    const SMatrix s = s_matrix(a1, k);
    ASSERT_EQ(s.alcove.size(), static_cast<std::size_t>(k + 1));
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b) {
        const double expect = std::sqrt(2.0 / (k + 2)) * std::sin(pi * (a + 1) * (b + 1) / (k + 2));
        EXPECT_NEAR(s.entries[a][b].re, expect, 1e-12) << k;
        EXPECT_NEAR(s.entries[a][b].im, 0, 1e-12);
      }
  }
  const SMatrix one = s_matrix(a1, 1);
  EXPECT_NEAR(one.entries[1][1].re, -1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s_matrix(a1, 2).entries[0][0].re, 0.5, 1e-12);
}

TEST(Verlinde, E8IsOneByOne) {
  const SMatrix s = s_matrix(build("E8"), 1);
  ASSERT_EQ(s.alcove.size(), 1u);
  EXPECT_NEAR(s.entries[0][0].re, 1, 1e-12);
}

TEST(Verlinde, AgreesWithSignedWeylSum) {
  const std::vector<std::pair<std::string, int>> cases{{"A2", 1}, {"A2", 3}, {"B2", 1}, {"B2", 2}, {"G2", 1},
                                                       {"G2", 2}, {"A3", 2}, {"C3", 1}, {"B3", 1}, {"D4", 1}};
  for (const auto& [t, k] : cases) {
    const RootSystem rs = build(t);
    const SMatrix s = s_matrix(rs, k);
    const auto o = oracle::kac_peterson(rs, k);
    for (std::size_t i = 0; i < o.size(); ++i)
      for (std::size_t j = 0; j < o.size(); ++j) {
        EXPECT_NEAR(s.entries[i][j].re, o[i][j].real(), 1e-10) << t << k << " " << i << "," << j;
        EXPECT_NEAR(s.entries[i][j].im, o[i][j].imag(), 1e-10) << t << k << " " << i << "," << j;
      }
  }
}

TEST(Verlinde, SquareIsChargeConjugation) {
  for (const char* t : {"A4", "D5", "E6", "E7", "A2+E6", "G2", "C3"}) {
    const RootSystem rs = build(t);
    for (int k : {1, 2}) {
      if (std::string(t) == "A2+E6" && k == 2) continue;
      const SMatrix s = s_matrix(rs, k);
      const std::size_t n = s.alcove.size();
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t di = s.index_of(dagger(rs, s.alcove[i].weight));
        for (std::size_t j = 0; j < n; ++j) {
          Cx<double> acc;
          for (std::size_t m = 0; m < n; ++m) acc += s.entries[i][m] * s.entries[m][j];
          EXPECT_NEAR(acc.re, j == di ? 1.0 : 0.0, 1e-9) << t << " k=" << k;
          EXPECT_NEAR(acc.im, 0.0, 1e-9);
        }
      }
    }
  }
}

TEST(Verlinde, Table10) {
  for (int n = 2; n <= 9; ++n) {
    const RootSystem rs = build("A" + std::to_string(n - 1));
    for (int g = 0; g <= 4; ++g) EXPECT_EQ(fusion_dim(rs, 1, FusionQuery{g, {}}), ipow(n, g)) << "A" << n - 1 << " g" << g;
  }
  const std::vector<std::pair<std::string, int>> rows{{"D8", 4}, {"D4", 4}, {"E6", 3}, {"E7", 2}, {"E8", 1}, {"D4+D4", 16}};
  for (const auto& [t, base] : rows) {
    const RootSystem rs = build(t);
    for (int g = 0; g <= 4; ++g) {
      const auto v = fusion_value(rs, uniform_levels(rs, 1), FusionQuery{g, {}});
      EXPECT_EQ(v.dimension, ipow(base, g)) << t << " g" << g;
      EXPECT_LT(std::abs(v.raw - static_cast<double>(v.dimension)), 1e-6);
    }
  }
}

TEST(Verlinde, G2AndF4) {
  EXPECT_EQ(fusion_dim(build("G2"), 1, FusionQuery{2, {}}), 5);
  for (int g = 0; g <= 4; ++g) {
    const auto r = strange_duality_dims("G2", "F4", g);
    EXPECT_TRUE(r.equal()) << g;
    EXPECT_TRUE(r.closed_form_ok()) << g;
    EXPECT_NEAR(*r.closed_form, static_cast<double>(r.dim_a), 1e-6);
  }
  const auto r1 = strange_duality_dims("G2", "F4", 1);
  EXPECT_EQ(r1.dim_a, 2);
  EXPECT_EQ(r1.dim_b, 2);
}

TEST(Verlinde, StrangeDualityPairs) {
  EXPECT_EQ(strange_duality_dims("A2", "E6", 3).dim_a, 27);
  EXPECT_EQ(strange_duality_dims("A2", "E6", 3).dim_b, 27);
  EXPECT_EQ(strange_duality_dims("A1", "E7", 1).dim_b, 2);
  for (const auto& [a, b] : strange_duality_pairs())
    for (int g = 0; g <= 3; ++g) EXPECT_TRUE(strange_duality_dims(a, b, g).equal()) << a << b << g;
  EXPECT_THROW(strange_duality_dims("A1", "E6", 1), DomainError);
}

TEST(Verlinde, PropagationOfVacua) {
  for (const char* t : {"A2", "G2", "D4", "B3"}) {
    const RootSystem rs = build(t);
    for (int k : {1, 2})
      for (const auto& lw : alcove(rs, k))
        EXPECT_EQ(fusion_dim(rs, k, FusionQuery{0, {lw.weight}}), lw.weight.is_zero() ? 1 : 0) << t;
  }
}

TEST(Verlinde, DaggerInvariance) {
  std::mt19937 gen(5);
  for (const char* t : {"A3", "E6", "D5"}) {
    const RootSystem rs = build(t);
    const auto al = alcove(rs, 2);
    std::uniform_int_distribution<std::size_t> pick(0, al.size() - 1);
    for (int it = 0; it < 10; ++it) {
      FusionQuery q{1, {al[pick(gen)].weight, al[pick(gen)].weight, al[pick(gen)].weight}};
      FusionQuery d = q;
      for (auto& w : d.labels) w = dagger(rs, w);
      EXPECT_EQ(fusion_dim(rs, 2, q), fusion_dim(rs, 2, d)) << t;
    }
  }
}

TEST(Verlinde, CenterOrderAtLevelOne) {
  for (const char* t : {"A1", "A5", "D4", "D5", "D6", "E6", "E7", "E8"}) {
    const RootSystem rs = build(t);
    const auto z = static_cast<std::int64_t>(alcove(rs, 1).size());
    for (int g = 0; g <= 3; ++g) EXPECT_EQ(fusion_dim(rs, 1, FusionQuery{g, {}}), ipow(z, g)) << t;
  }
}

TEST(Verlinde, Factorization) {
  std::mt19937 gen(2024);
  const std::vector<std::pair<std::string, int>> cases{{"A1", 1}, {"A2", 1}, {"D4", 1}, {"G2", 1}, {"A2", 2}};
  for (const auto& [t, k] : cases) {
    const RootSystem rs = build(t);
    const auto al = alcove(rs, k);
    std::uniform_int_distribution<std::size_t> pick(0, al.size() - 1);
    for (int g = 1; g <= 3; ++g) {
      EXPECT_TRUE(factorization_check(rs, Levels{k}, g, {}).holds()) << t << g;
      EXPECT_TRUE(factorization_check(rs, Levels{k}, g, {al[pick(gen)].weight}).holds()) << t << g;
    }
  }
  const auto a1 = factorization_check(build("A1"), Levels{1}, 2, {});
  EXPECT_EQ(a1.lhs, 4);
  EXPECT_EQ(a1.terms.size(), 2u);
  EXPECT_EQ(a1.terms[0].second, 2);
  EXPECT_EQ(a1.terms[1].second, 2);
  const auto a2 = factorization_check(build("A2"), Levels{1}, 2, {});
  for (const auto& [w, d] : a2.terms) EXPECT_EQ(d, 3);
}

TEST(Verlinde, HighPrecisionAgrees) {
  const RootSystem rs = build("A3");
  for (int g = 0; g <= 3; ++g) {
    const auto lo = fusion_value(rs, Levels{3}, FusionQuery{g, {}});
    const auto hi = fusion_value(rs, Levels{3}, FusionQuery{g, {}}, Precision{40});
    const auto vh = fusion_value(rs, Levels{3}, FusionQuery{g, {}}, Precision{80});
    EXPECT_EQ(lo.dimension, hi.dimension);
    EXPECT_EQ(lo.dimension, vh.dimension);
    EXPECT_LT(std::abs(hi.raw - static_cast<double>(hi.dimension)), 1e-12);
  }
  EXPECT_THROW(fusion_dim(rs, 3, FusionQuery{1, {}}, Precision{10}), DomainError);
}

TEST(Verlinde, RejectsLabelsOutsideAlcove) {
  EXPECT_THROW(fusion_dim(build("A1"), 1, FusionQuery{0, {Weight({2})}}), DomainError);
  EXPECT_THROW(fusion_dim(build("A1"), 1, FusionQuery{-1, {}}), DomainError);
  EXPECT_THROW(s_matrix(build("A2"), Levels{200}), ResourceError);
}
