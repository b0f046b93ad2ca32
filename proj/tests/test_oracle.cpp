#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace tracegen;
using namespace fixtures;

namespace {

// Reciprocal of 1 - 4X + 3X^2 by hand: g_n = 4 g_{n-1} - 3 g_{n-2}.
std::vector<std::uint64_t> path4_counts(std::size_t n) {
  std::vector<std::uint64_t> g{1, 4};
  while (g.size() <= n) g.push_back(4 * g[g.size() - 1] - 3 * g[g.size() - 2]);
  g.resize(n + 1);
  return g;
}

}  // namespace

TEST(Enumeration, PathCounts) {
  auto m = path4();
  auto idx = enumerate_traces(m, m.alphabet(), 5);
  EXPECT_EQ(idx.counts(), (std::vector<std::uint64_t>{1, 4, 13, 40, 121, 364}));
  EXPECT_EQ(series_coefficients(m, m.alphabet(), 5), (std::vector<std::uint64_t>{1, 4, 13, 40, 121, 364}));
  EXPECT_EQ(series_coefficients(m, m.alphabet(), 12), path4_counts(12));
}

TEST(Enumeration, FreeAndCommutative) {
  auto f = free2();
  auto fc = enumerate_traces(f, f.alphabet(), 10).counts();
  for (std::size_t n = 0; n <= 10; ++n) EXPECT_EQ(fc[n], std::uint64_t{1} << n);
  auto c = commuting2();
  auto cc = enumerate_traces(c, c.alphabet(), 10).counts();
  for (std::size_t n = 0; n <= 10; ++n) EXPECT_EQ(cc[n], n + 1);
  auto s = series_coefficients(single(), single().alphabet(), 12);
  for (auto v : s) EXPECT_EQ(v, 1u);
}

TEST(Enumeration, NoDuplicatesAndLookup) {
  auto m = star4();
  auto idx = enumerate_traces(m, m.alphabet(), 6);
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto& level = idx.of_length(n);
    for (std::size_t i = 1; i < level.size(); ++i) ASSERT_LT(level[i - 1], level[i]);
    for (const auto& x : level) ASSERT_EQ(x.length(), n);
  }
  EXPECT_TRUE(idx.contains(normalize(m, std::string_view("abcd"))));
  EXPECT_FALSE(idx.contains(normalize(m, std::string_view("aaaaaaa"))));
}

TEST(Enumeration, SubalphabetOnly) {
  auto m = path4();
  LetterSet bcd = m.alphabet().without(m.index_of("a"));
  auto idx = enumerate_traces(m, bcd, 4);
  idx.for_each([&](const Trace& x) { ASSERT_TRUE(x.support().subset_of(bcd)); });
  EXPECT_EQ(idx.counts(), series_coefficients(m, bcd, 4));
}

TEST(Enumeration, Guardrails) {
  auto seven = build_model({"a", "b", "c", "d", "e", "f", "g"}, {});
  EXPECT_THROW(enumerate_traces(seven, seven.alphabet(), 2), Error);
  auto m = path4();
  EXPECT_THROW(enumerate_traces(m, m.alphabet(), 13), Error);
  try {
    enumerate_traces(m, m.alphabet(), 13);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::guardrail_exceeded);
  }
}

// Exact integer equality of the two counting routes.
TEST(Enumeration, CountsEqualSeriesOnTestModels) {
  for (const auto& [name, m] : test_models()) {
    std::size_t n = name == std::string("cycle5") ? 10 : 12;
    if (name == std::string("path4") || name == std::string("star4")) n = 11;  // 12 runs in the acceptance binary
    EXPECT_EQ(enumerate_traces(m, m.alphabet(), n).counts(), series_coefficients(m, m.alphabet(), n)) << name;
  }
}

TEST(ExactProbability, Values) {
  auto m = path4();
  EXPECT_NEAR(exact_probability(m, Trace{}, 0.2), 0.32, 1e-15);
  EXPECT_NEAR(exact_probability(m, normalize(m, std::string_view("ad")), 0.2), 0.0128, 1e-15);
  EXPECT_NEAR(exact_probability(m, normalize(m, std::string_view("ab")), 0.2), 0.0128, 1e-15);
  EXPECT_THROW(exact_probability(m, Trace{}, 0.4), Error);
  // omitted mass beyond length n is 0.32 (1.5 0.6^(n+1) / 0.4 - 0.5 0.2^(n+1) / 0.8)
  auto tail = [](int n) { return 0.32 * (1.5 * std::pow(0.6, n + 1) / 0.4 - 0.5 * std::pow(0.2, n + 1) / 0.8); };
  for (int n : {8, 9}) {
    double total = 0.0;
    enumerate_traces(m, m.alphabet(), n).for_each([&](const Trace& x) { total += exact_probability(m, x, 0.2); });
    EXPECT_NEAR(total, 1.0 - tail(n), 1e-12);
  }
  EXPECT_GT(tail(8), 1e-2);
  EXPECT_LT(tail(9), 1e-2);
}

TEST(ExactProbability, ConditionedLawSumsToOne) {
  auto m = path4();
  for (LetterSet t : {m.link(0), LetterSet::single(0), m.alphabet()}) {
    MultiplicativeLaw law(m, m.alphabet(), t, 0.1);
    double total = 0.0;
    enumerate_traces(m, m.alphabet(), 12).for_each([&](const Trace& x) {
      if (max_letters(m, x).subset_of(t)) total += law.probability(x);
    });
    EXPECT_NEAR(total, 1.0, 1e-6);
  }
}

TEST(SeriesIdentity, PaperTargets) {
  auto m = path4();
  auto a = check_series_identity(m, LetterSet::single(m.index_of("a")), 0.2, 12);
  EXPECT_NEAR(a.target, 0.44 / 0.32, 1e-12);
  EXPECT_LT(a.residual, 0.02);
  auto full = check_series_identity(m, m.alphabet(), 0.2, 12);
  EXPECT_NEAR(full.target, 1.0 / 0.32, 1e-12);
  EXPECT_LE(full.residual, full.tail_bound);
  auto tiny = check_series_identity(m, m.alphabet(), 1e-6, 4);
  EXPECT_NEAR(tiny.partial_sum, 1.0, 1e-5);
  EXPECT_NEAR(tiny.target, 1.0, 1e-5);
  EXPECT_THROW(check_series_identity(m, LetterSet{}, 0.2, 4), Error);
}

TEST(SeriesIdentity, ResidualBelowTailBoundOnTestModels) {
  for (const auto& [name, m] : test_models()) {
    std::size_t n = name == std::string("cycle5") ? 9 : 10;
    std::vector<LetterSet> us{m.alphabet()};
    for (Letter a : m.alphabet()) us.push_back(LetterSet::single(a));
    for (double p : {0.1, 0.2}) {
      for (LetterSet u : us) {
        auto c = check_series_identity(m, u, p, n);
        EXPECT_LE(c.residual, c.tail_bound) << name << " p=" << p;
        // the partial sum approaches the target from below
        EXPECT_LE(c.partial_sum, c.target + 1e-12) << name;
      }
    }
  }
}

// Normalization: partial mass plus the tail estimate brackets 1.
TEST(SeriesIdentity, NormalizationBracket) {
  for (const auto& [name, m] : test_models()) {
    for (double p : {0.1, 0.2}) {
      auto c = check_series_identity(m, m.alphabet(), p, 9);
      double mu = mobius_eval(m, m.alphabet(), p);
      double mass = mu * c.partial_sum;
      EXPECT_LE(mass, 1.0 + 1e-12) << name;
      EXPECT_GE(mass + mu * c.tail_bound, 1.0 - 1e-12) << name;
    }
  }
}
