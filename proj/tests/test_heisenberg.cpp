#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles/heisenberg_brute.hpp"
#include "sdual/heisenberg.hpp"

using namespace sdual;
using Elem = HeisenbergModel::Element;

namespace {

FiniteAbelian cyclic(std::vector<int> orders) { return FiniteAbelian{std::move(orders), {}}; }

CyclotomicMatrix mul(const CyclotomicMatrix& a, const CyclotomicMatrix& b) {
  const int n = a[0][0].order();
  CyclotomicMatrix c(a.size(), std::vector<Cyclotomic>(b[0].size(), Cyclotomic(n)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (!a[i][k].is_zero())
        for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

TEST(Cyclotomic, Polynomials) {
  const auto& p12 = detail::cyclotomic_polynomial(12);
  ASSERT_EQ(p12.size(), 5u);
  EXPECT_EQ(p12[0], 1);
  EXPECT_EQ(p12[2], -1);
  EXPECT_EQ(p12[4], 1);
  EXPECT_EQ(euler_phi(9), 6);
  EXPECT_EQ(euler_phi(25), 20);
  EXPECT_EQ(euler_phi(1), 1);
}

TEST(Cyclotomic, RootsOfUnity) {
  for (int n : {1, 2, 3, 4, 5, 6, 9, 12}) {
    EXPECT_EQ(Cyclotomic::zeta(n, n), Cyclotomic(n, 1));
    Cyclotomic s(n);
    for (int k = 0; k < n; ++k) s += Cyclotomic::zeta(n, k);
    EXPECT_EQ(s, Cyclotomic(n, n == 1 ? 1 : 0)) << n;
    const auto x = Cyclotomic::zeta(n, 1) + Cyclotomic(n, 2);
    EXPECT_EQ(x * x.inverse(), Cyclotomic(n, 1));
  }
  EXPECT_EQ(Cyclotomic::root_of_unity(4, Rational(1, 2)), Cyclotomic(4, -1));
  EXPECT_THROW(Cyclotomic::root_of_unity(4, Rational(1, 3)), DomainError);
  EXPECT_THROW(Cyclotomic(3).inverse(), DomainError);
}

TEST(Cyclotomic, Rank) {
  // Fourier matrix is invertible, an outer product has rank one
  for (int n : {2, 3, 4, 5}) {
    CyclotomicMatrix f(n, std::vector<Cyclotomic>(n, Cyclotomic(n)));
    CyclotomicMatrix o = f;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        f[i][j] = Cyclotomic::zeta(n, i * j);
        o[i][j] = Cyclotomic::zeta(n, i + 2 * j);
      }
    EXPECT_EQ(rank(f), std::size_t(n));
    EXPECT_EQ(rank(o), 1u);
    EXPECT_EQ(nullity(f, n), 0u);
    EXPECT_EQ(nullity(o, n), std::size_t(n - 1));
  }
}

TEST(FiniteAbelian, FormValidation) {
  EXPECT_NO_THROW(validate(cyclic({2, 3})));
  EXPECT_THROW(validate(cyclic({})), DomainError);
  EXPECT_THROW(validate(cyclic({0})), DomainError);
  EXPECT_NO_THROW(validate(FiniteAbelian{{3}, {{Rational(2, 3)}}}));
  EXPECT_THROW(validate(FiniteAbelian{{3}, {{Rational(1, 2)}}}), DomainError);
  EXPECT_THROW(validate(FiniteAbelian{{2, 2}, {{Rational(1, 2), Rational(0)}, {Rational(0), Rational(0)}}}), DomainError);
  EXPECT_THROW(validate(FiniteAbelian{{3, 3}, {{Rational(1, 3), Rational(1, 3)}, {Rational(0), Rational(1, 3)}}}),
               DomainError);
}

TEST(Heisenberg, SizeGuard) {
  EXPECT_NO_THROW(HeisenbergModel(cyclic({10}), 2));
  EXPECT_THROW(HeisenbergModel(cyclic({11}), 2), ResourceError);
  EXPECT_THROW(HeisenbergModel(cyclic({2, 2}), 0), DomainError);
  EXPECT_THROW(HeisenbergModel(cyclic({2}), 7), ResourceError);
}

TEST(Heisenberg, ActionMatchesDefinitionAndCocycle) {
  std::mt19937_64 rng(7);
  for (auto [orders, g] : std::vector<std::pair<std::vector<int>, int>>{{{3}, 1}, {{2, 2}, 1}, {{2}, 2}, {{4}, 1}}) {
    HeisenbergModel m(cyclic(orders), g);
    const int n = m.field_order();
    std::uniform_int_distribution<std::size_t> pick(0, m.group_order() - 1);
    for (int trial = 0; trial < 10; ++trial) {
      const Elem v = m.element(pick(rng)), w = m.element(pick(rng));
      const auto uv = to_matrix(m.action(v), n);
      const auto uw = to_matrix(m.action(w), n);
      EXPECT_EQ(uv, oracle::operator_matrix(m, 0, v));
      // U(v) U(w) = exp(2 pi i c(v, w)) U(v + w)
      auto rhs = to_matrix(m.action(m.add(v, w)), n);
      const auto c = Cyclotomic::root_of_unity(n, m.cocycle(v, w));
      for (auto& row : rhs)
        for (auto& x : row) x = c * x;
      EXPECT_EQ(mul(uv, uw), rhs);
      // commutator phase is antisymmetric
      EXPECT_EQ(frac(m.commutator(v, w) + m.commutator(w, v)), 0);
    }
  }
}

TEST(Heisenberg, ExamplesAreOneDimensional) {
  // Z/5, g = 1, the diagonal (1, 1)
  {
    HeisenbergModel m(cyclic({5}), 1);
    const std::vector<Elem> gens{{1, 1}};
    for (const auto& lift : enumerate_lifts(m, gens)) EXPECT_EQ(invariant_dim(cyclic({5}), 1, gens, lift), 1u);
  }
  // Z/2 x Z/2, g = 1, every maximal isotropic subgroup and lift
  {
    HeisenbergModel m(cyclic({2, 2}), 1);
    std::mt19937_64 rng(11);
    std::set<std::vector<std::size_t>> seen;
    for (int trial = 0; trial < 40; ++trial) {
      const auto gens = random_maximal_isotropic(m, rng);
      auto elems = span(m, gens).elements;
      std::sort(elems.begin(), elems.end());
      seen.insert(elems);
      for (const auto& lift : enumerate_lifts(m, gens)) EXPECT_EQ(invariant_report(m, gens, lift).dimension, 1u);
    }
    EXPECT_GT(seen.size(), 3u);
  }
}

TEST(Heisenberg, RandomLagrangiansAgreeWithBruteForce) {
  std::mt19937_64 rng(2024);
  const std::vector<std::vector<int>> groups{{2}, {3}, {5}, {2, 2}, {3, 3}};
  for (const auto& orders : groups)
    for (int g : {1, 2}) {
      const FiniteAbelian a = cyclic(orders);
      std::size_t size = 1;
      for (int i = 0; i < 2 * g; ++i) size *= a.size();
      if (size > kDefaultGroupLimit) continue;
      HeisenbergModel m(a, g);
      for (int trial = 0; trial < 10; ++trial) {
        const auto gens = random_maximal_isotropic(m, rng);
        const auto lift = random_lift(m, gens, rng);
        const auto rep = invariant_report(m, gens, lift);
        EXPECT_EQ(rep.subgroup_order, m.dim());
        EXPECT_TRUE(rep.idempotent);
        EXPECT_EQ(rep.dimension, 1u) << a.str() << " g=" << g;
        if (m.dim() <= 9) EXPECT_EQ(oracle::fixed_dimension(m, gens, lift), 1u) << a.str() << " g=" << g;
      }
    }
}

TEST(Heisenberg, LiftsAreAllEnumerated) {
  HeisenbergModel m(cyclic({3}), 2);
  std::mt19937_64 rng(5);
  const auto gens = random_maximal_isotropic(m, rng);
  const auto lifts = enumerate_lifts(m, gens);
  EXPECT_EQ(lifts.size(), m.dim());
  std::set<std::vector<std::size_t>> tables;
  for (const auto& l : lifts) {
    const auto t = extend_lift(m, gens, l);
    std::vector<std::size_t> key;
    for (std::size_t idx : t.subgroup.elements) key.push_back(detail::exponent_of(t.phase[idx], m.field_order()));
    tables.insert(key);
  }
  EXPECT_EQ(tables.size(), lifts.size());
}

TEST(Heisenberg, NonMaximalSubgroupsMatchBruteForce) {
  std::mt19937_64 rng(99);
  for (auto [orders, g] : std::vector<std::pair<std::vector<int>, int>>{{{2}, 2}, {{3}, 2}, {{4}, 1}, {{2, 2}, 1}}) {
    HeisenbergModel m(cyclic(orders), g);
    // trivial subgroup fixes everything
    EXPECT_EQ(invariant_report(m, {}, {}, false).dimension, m.dim());
    EXPECT_EQ(oracle::fixed_dimension(m, {}, {}), m.dim());
    for (int trial = 0; trial < 5; ++trial) {
      auto gens = random_maximal_isotropic(m, rng);
      gens.pop_back();
      const auto lift = random_lift(m, gens, rng);
      const auto rep = invariant_report(m, gens, lift, false);
      EXPECT_EQ(rep.dimension * rep.subgroup_order, m.dim());
      EXPECT_EQ(rep.dimension, oracle::fixed_dimension(m, gens, lift));
      EXPECT_THROW(invariant_report(m, gens, lift), DomainError);
    }
  }
}

TEST(Heisenberg, Rejections) {
  HeisenbergModel m(cyclic({3}), 1);
  // (1,0) and (0,1) do not commute
  EXPECT_THROW(invariant_report(m, {{1, 0}, {0, 1}}, {0, 0}), DomainError);
  EXPECT_THROW(enumerate_lifts(m, {{1, 0}, {0, 1}}), DomainError);
  // Z/2: U(1,1)^2 = -1, so the lift phase must be 1/4 or 3/4
  HeisenbergModel m2(cyclic({2}), 1);
  EXPECT_THROW(invariant_report(m2, {{1, 1}}, {Rational(0)}), DomainError);
  EXPECT_EQ(invariant_report(m2, {{1, 1}}, {Rational(1, 4)}).dimension, 1u);
  const auto lifts = enumerate_lifts(m2, {{1, 1}});
  ASSERT_EQ(lifts.size(), 2u);
  EXPECT_EQ((std::set<Rational>{lifts[0][0], lifts[1][0]}), (std::set<Rational>{Rational(1, 4), Rational(3, 4)}));
  EXPECT_THROW(invariant_report(m2, {{1, 1}}, {}), DomainError);
}

TEST(Heisenberg, NonStandardPairing) {
  // Z/3 with beta = 2/3 and Z/9 with beta = 8/9
  for (auto a : {FiniteAbelian{{3}, {{Rational(2, 3)}}}, FiniteAbelian{{9}, {{Rational(8, 9)}}}}) {
    HeisenbergModel m(a, 1);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      const auto gens = random_maximal_isotropic(m, rng);
      const auto lift = random_lift(m, gens, rng);
      EXPECT_EQ(invariant_report(m, gens, lift).dimension, 1u);
      EXPECT_EQ(oracle::fixed_dimension(m, gens, lift), 1u);
    }
  }
}

TEST(StrangeDuality, FullRankForUniqueSigma) {
  for (auto [orders, g] : std::vector<std::pair<std::vector<int>, int>>{{{5}, 1}, {{3}, 1}, {{2}, 2}, {{2, 2}, 1}}) {
    const FiniteAbelian a = cyclic(orders);
    GroupMap id;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      id.images.emplace_back(orders.size(), 0);
      id.images.back()[i] = 1;
    }
    DualityModel d(a, a, id, g);
    const auto rep = strange_duality_map(d);
    EXPECT_EQ(rep.invariant_tensors, 1u);
    EXPECT_EQ(rep.rank, d.a().dim());
    EXPECT_EQ(rep.expected_rank, d.a().dim());
    EXPECT_TRUE(rep.equivariant);
    EXPECT_TRUE(rep.schur_scalar);
    EXPECT_TRUE(rep.schur_nonzero);
    EXPECT_TRUE(rep.ok());
    // phi inverts the cocycle
    for (std::size_t i = 0; i < d.a().group_order(); ++i)
      for (std::size_t j = 0; j < d.a().group_order(); j += 3) {
        const auto v = d.a().element(i), w = d.a().element(j);
        EXPECT_EQ(frac(d.a().cocycle(v, w) + d.b().cocycle(d.phi(v), d.phi(w))), 0);
      }
    const auto sigma = intertwiners(d.dual_a_action(), d.b_action(), d.field_order())[0];
    EXPECT_EQ(oracle::numeric_rank(sigma), d.a().dim());
  }
}

TEST(StrangeDuality, ExplicitFourByFour) {
  DualityModel d(cyclic({2}), cyclic({2}), GroupMap{{{1}}}, 2);
  const auto basis = intertwiners(d.dual_a_action(), d.b_action(), d.field_order());
  ASSERT_EQ(basis.size(), 1u);
  ASSERT_EQ(basis[0].size(), 4u);
  // a monomial matrix: exactly one non-zero entry per row and column
  for (std::size_t i = 0; i < 4; ++i) {
    int row = 0, col = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      row += !basis[0][i][j].is_zero();
      col += !basis[0][j][i].is_zero();
    }
    EXPECT_EQ(row, 1);
    EXPECT_EQ(col, 1);
  }
  EXPECT_EQ(rank(basis[0]), 4u);
}

TEST(StrangeDuality, SigmaChecks) {
  DualityModel d(cyclic({3}), cyclic({3}), GroupMap{{{1}}}, 1);
  const int n = d.field_order();
  // zero tensor
  CyclotomicMatrix zero(3, std::vector<Cyclotomic>(3, Cyclotomic(n)));
  const auto r0 = strange_duality_map(d, zero);
  EXPECT_EQ(r0.rank, 0u);
  EXPECT_EQ(r0.expected_rank, 0u);
  EXPECT_FALSE(r0.schur_nonzero);
  EXPECT_TRUE(r0.ok());
  // the constructed map transposed back to a tensor
  const auto map = intertwiners(d.dual_a_action(), d.b_action(), n)[0];
  CyclotomicMatrix sigma(3, std::vector<Cyclotomic>(3, Cyclotomic(n)));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) sigma[i][j] = map[j][i];
  const auto r1 = strange_duality_map(d, sigma);
  EXPECT_EQ(r1.rank, 3u);
  EXPECT_TRUE(r1.ok());
  // a scalar multiple is still invariant
  auto scaled = sigma;
  for (auto& row : scaled)
    for (auto& x : row) x = Cyclotomic::zeta(n, 1) * x;
  EXPECT_TRUE(strange_duality_map(d, scaled).ok());
  // one perturbed entry breaks invariance
  auto bad = sigma;
  bad[0][0] += Cyclotomic(n, 1);
  EXPECT_THROW(strange_duality_map(d, bad), DomainError);
  auto bad_map = map;
  bad_map[1][2] += Cyclotomic(n, 1);
  EXPECT_FALSE(equivariance_check(bad_map, d.dual_a_action(), d.b_action(), n));
  EXPECT_TRUE(equivariance_check(map, d.dual_a_action(), d.b_action(), n));
}

TEST(StrangeDuality, IdentityIsEquivariant) {
  HeisenbergModel m(cyclic({2, 2}), 1);
  std::vector<Monomial> gens;
  for (std::size_t c = 0; c < m.coords(); ++c) gens.push_back(m.action(m.unit(c)));
  CyclotomicMatrix id(m.dim(), std::vector<Cyclotomic>(m.dim(), Cyclotomic(m.field_order())));
  for (std::size_t i = 0; i < m.dim(); ++i) id[i][i] = Cyclotomic(m.field_order(), 1);
  EXPECT_TRUE(equivariance_check(id, gens, gens, m.field_order()));
  // commutant of an irreducible representation is the scalars
  EXPECT_EQ(intertwiners(gens, gens, m.field_order()).size(), 1u);
}

TEST(StrangeDuality, RejectsBadIota) {
  EXPECT_THROW(DualityModel(cyclic({3}), cyclic({3}), GroupMap{{{0}}}, 1), DomainError);
  EXPECT_THROW(DualityModel(cyclic({3}), cyclic({2}), GroupMap{{{1}}}, 1), DomainError);
  EXPECT_THROW(DualityModel(cyclic({4}), cyclic({2, 2}), GroupMap{{{1, 0}}}, 1), DomainError);
}
