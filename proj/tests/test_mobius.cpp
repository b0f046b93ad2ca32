#include <gtest/gtest.h>

#include <unsupported/Eigen/Polynomials>

#include <cmath>
#include <complex>
#include <random>
#include <thread>

#include "fixtures.hpp"

using namespace tracegen;
using namespace fixtures;

namespace {

LetterSet set_of(const IndependenceModel& m, std::string_view letters) {
  LetterSet s;
  for (Letter a : parse_word(m, letters)) s.insert(a);
  return s;
}

// Smallest-modulus root by companion-matrix eigenvalues (Eigen), independent
// of the grid search under test.
std::complex<double> eigen_smallest_root(const std::vector<std::int64_t>& c) {
  Eigen::VectorXd coeffs(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) coeffs[static_cast<Eigen::Index>(i)] = static_cast<double>(c[i]);
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
  std::complex<double> best = solver.roots()[0];
  for (Eigen::Index i = 1; i < solver.roots().size(); ++i) {
    if (std::abs(solver.roots()[i]) < std::abs(best)) best = solver.roots()[i];
  }
  return best;
}

}  // namespace

TEST(MobiusPolynomial, PathModel) {
  auto m = path4();
  auto mu = mobius_polynomial(m, m.alphabet());
  EXPECT_EQ(mu.coefficients(), (std::vector<std::int64_t>{1, -4, 3}));
  EXPECT_EQ(mu.clique_count(), 8u);
  EXPECT_EQ(mobius_polynomial(m, set_of(m, "bcd")).coefficients(), (std::vector<std::int64_t>{1, -3, 1}));
}

TEST(MobiusPolynomial, TrivialCases) {
  auto m = path4();
  EXPECT_EQ(mobius_polynomial(m, LetterSet{}).coefficients(), std::vector<std::int64_t>{1});
  EXPECT_EQ(mobius_polynomial(m, set_of(m, "c")).coefficients(), (std::vector<std::int64_t>{1, -1}));
  auto c2 = commuting2();
  EXPECT_EQ(mobius_polynomial(c2, c2.alphabet()).coefficients(), (std::vector<std::int64_t>{1, -2, 1}));
}

TEST(MobiusPolynomial, MatchesSubsetBruteForceOnRandomModels) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = random_model(1 + trial % 8, 0.1 + 0.1 * (trial % 7), rng);
    for (std::uint64_t bits = 0; bits <= m.alphabet().bits(); bits += 1 + bits / 7) {
      LetterSet x(bits);
      auto mu = mobius_polynomial(m, x);
      ASSERT_EQ(mu.coefficients(), brute_mobius(m, x));
      ASSERT_EQ(mu[0], 1);
      ASSERT_EQ(mu[1], -static_cast<std::int64_t>(x.size()));
      ASSERT_EQ(mu.clique_count(), cliques(m, x).size());
    }
  }
}

TEST(MobiusEval, HandValues) {
  auto m = path4();
  EXPECT_NEAR(mobius_eval(m, m.alphabet(), 0.2), 1.0 - 0.8 + 3 * 0.04, 1e-15);
  EXPECT_NEAR(mobius_eval(m, set_of(m, "bcd"), 0.2), 1.0 - 0.6 + 0.04, 1e-15);
  EXPECT_EQ(mobius_eval(m, set_of(m, "abd"), 0.0), 1.0);
  EXPECT_EQ(mobius_eval(m, m.alphabet(), 0.0), 1.0);
}

TEST(Recurrence, ResidualValues) {
  auto m = path4();
  Letter a = m.index_of("a");
  EXPECT_NEAR(recurrence_residual(m, m.alphabet(), a, 0.2), 0.0, 1e-15);
  // mu_{Sigma - Lk(a)} = mu_{cd} = 1 - 2X
  EXPECT_EQ(mobius_polynomial(m, m.alphabet() - m.link(a)).coefficients(), (std::vector<std::int64_t>{1, -2}));
  for (double p : {0.0, 0.3, 0.9}) EXPECT_NEAR(recurrence_residual(m, set_of(m, "a"), a, p), 0.0, 1e-15);
  EXPECT_THROW(recurrence_residual(m, set_of(m, "bc"), a, 0.1), Error);
}

TEST(Recurrence, ExactZeroPolynomialOnRandomModels) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 80; ++trial) {
    auto m = random_model(1 + trial % 8, 0.5, rng);
    for (std::uint64_t bits = 1; bits <= m.alphabet().bits(); ++bits) {
      LetterSet x(bits);
      for (Letter a : x) ASSERT_TRUE(recurrence_residual_polynomial(m, x, a).is_zero());
    }
  }
}

TEST(SmallestRoot, ClosedForms) {
  auto m = path4();
  EXPECT_NEAR(smallest_root(m, m.alphabet()), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(smallest_root(m, set_of(m, "bcd")), (3.0 - std::sqrt(5.0)) / 2.0, 1e-12);
  EXPECT_EQ(smallest_root(single(), single().alphabet()), 1.0);
  EXPECT_NEAR(smallest_root(free2(), free2().alphabet()), 0.5, 1e-12);
  EXPECT_THROW(smallest_root(m, LetterSet{}), Error);
}

// (1 - X)^2 touches zero at 1 without changing sign.
TEST(SmallestRoot, TangentialRoot) {
  auto c = commuting2();
  auto mu = mobius_polynomial(c, c.alphabet());
  double root = smallest_root(mu);
  EXPECT_NEAR(root, 1.0, 1e-5);
  EXPECT_LE(std::abs(mu(root)), 1e-12 * static_cast<double>(mu.clique_count()));
  // a tangential root inside (0, 1): (1 - 2X)^2 = 1 - 4X + 4X^2
  MobiusPolynomial sq({1, -4, 4});
  EXPECT_NEAR(smallest_root(sq), 0.5, 1e-5);
  EXPECT_THROW(smallest_root(MobiusPolynomial({1})), Error);
}

TEST(SmallestRoot, AgreesWithCompanionMatrixOnRandomModels) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 120; ++trial) {
    auto m = random_model(1 + trial % 8, 0.15 + 0.1 * (trial % 6), rng);
    auto mu = mobius_polynomial(m, m.alphabet());
    double root = smallest_root(mu);
    ASSERT_GT(root, 0.0);
    ASSERT_LE(root, 1.0);
    ASSERT_LE(std::abs(mu(root)), 1e-12 * static_cast<double>(mu.clique_count()));
    if (mu.degree() >= 1) {
      auto z = eigen_smallest_root(mu.coefficients());
      // a root of multiplicity k is only resolved to about eps^(1/k) by eigenvalues
      double tol = 1e-9 + 10.0 * std::pow(2.2e-16, 1.0 / static_cast<double>(mu.degree()));
      ASSERT_NEAR(std::abs(z), root, tol) << trial;
    }
    for (int i = 0; i * 1e-3 < root; ++i) ASSERT_GT(mu(i * 1e-3), 0.0);
  }
}

TEST(Irreducible, Examples) {
  auto m = path4();
  EXPECT_TRUE(is_irreducible(m));
  EXPECT_FALSE(is_irreducible(m, set_of(m, "abd")));
  EXPECT_FALSE(is_irreducible(m.restricted(set_of(m, "abd"))));
  EXPECT_TRUE(is_irreducible(single()));
  EXPECT_FALSE(is_irreducible(commuting2()));
  EXPECT_THROW(is_irreducible(build_model({}, {})), Error);
}

TEST(OccurrenceProbability, Values) {
  auto m = path4();
  Letter a = m.index_of("a");
  EXPECT_NEAR(occurrence_probability(m, m.alphabet(), a, 0.2), 3.0 / 11.0, 1e-14);
  EXPECT_NEAR(0.2 * 0.6 / 0.44, 3.0 / 11.0, 1e-14);
  EXPECT_LT(occurrence_probability(m, m.alphabet(), a, 1e-9), 1e-8);
  for (double p : {0.1, 0.5, 0.9}) EXPECT_NEAR(occurrence_probability(single(), single().alphabet(), 0, p), p, 1e-15);
  EXPECT_THROW(occurrence_probability(m, m.alphabet(), a, 0.34), Error);
  EXPECT_THROW(occurrence_probability(m, set_of(m, "bc"), a, 0.1), Error);
}

TEST(ExpectedLength, Values) {
  auto m = path4();
  EXPECT_NEAR(expected_length(m, 0.25), 10.0 / 3.0, 1e-12);
  EXPECT_LT(expected_length(m, 1e-9), 1e-8);
  EXPECT_NEAR(expected_length(single(), 0.5), 1.0, 1e-14);
  EXPECT_THROW(expected_length(m, 0.4), Error);
}

// Sampled properties on every test model.
TEST(MobiusProperties, UpperBoundPositivityMonotonicity) {
  std::mt19937_64 rng(53);
  auto models = test_models();
  for (int i = 0; i < 20; ++i) models.emplace_back("random", random_model(2 + i % 7, 0.4, rng));
  for (const auto& [name, m] : models) {
    auto mu = mobius_polynomial(m, m.alphabet());
    double root = smallest_root(mu);
    for (int i = 1; i <= 50; ++i) {
      double p = root * i / 51.0;
      ASSERT_LE(mu(p), 1.0 - p + 1e-12) << name;
    }
    std::vector<double> roots(m.alphabet().bits() + 1, 0.0);
    for (std::uint64_t bits = 1; bits <= m.alphabet().bits(); ++bits) roots[bits] = smallest_root(m, LetterSet(bits));
    // Sigma - U' inside Sigma - U
    for (std::uint64_t big = 1; big <= m.alphabet().bits(); ++big) {
      for (std::uint64_t small = (big - 1) & big; small > 0; small = (small - 1) & big) {
        ASSERT_LE(roots[big], roots[small] + 1e-9) << name;
      }
    }
  }
}

TEST(SubsetTable, MemoEqualsFreshEvaluationBitForBit) {
  auto m = std::make_shared<const IndependenceModel>(cycle5());
  SubsetTable table(m, 0.21);
  for (std::uint64_t bits = 0; bits <= m->alphabet().bits(); ++bits) {
    LetterSet x(bits);
    double memo = table.value(x);
    double again = table.value(x);
    double fresh = mobius_polynomial(*m, x)(0.21);
    EXPECT_EQ(memo, fresh);
    EXPECT_EQ(again, fresh);
    EXPECT_EQ(table.polynomial(x), mobius_polynomial(*m, x));
  }
  EXPECT_EQ(table.size(), 32u);
}

TEST(SubsetTable, ConcurrentReadersAgree) {
  auto m = std::make_shared<const IndependenceModel>(cycle5());
  SubsetTable table(m, 0.3);
  std::vector<std::vector<double>> seen(4, std::vector<double>(32));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < 4; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t i = 0; i < 32; ++i) {
          std::uint64_t bits = (i * (2 * t + 1)) % 32;
          seen[t][bits] = table.value(LetterSet(bits));
        }
      });
    }
  }
  for (std::size_t t = 1; t < 4; ++t) EXPECT_EQ(seen[t], seen[0]);
  EXPECT_EQ(table.size(), 32u);
}
