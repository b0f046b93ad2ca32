#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tracegen/boundary.hpp"
#include "tracegen/error.hpp"
#include "tracegen/mobius.hpp"
#include "tracegen/model.hpp"
#include "tracegen/oracle.hpp"
#include "tracegen/random.hpp"
#include "tracegen/sampler.hpp"
#include "tracegen/stats.hpp"
#include "tracegen/trace.hpp"

namespace tracegen {

using Law = std::map<Trace, double>;

/// Thresholds used by the statistical battery.
namespace thresholds {
inline constexpr double kLawTv = 0.01;
inline constexpr double kConditionedTv = 0.015;
inline constexpr double kBlockTv = 0.01;
inline constexpr double kCylinder = 0.015;
inline constexpr double kPivotFrequency = 0.02;
inline constexpr double kSignificance = 0.01;
/// Per-call bound 2 (|S|+1)(|xi|+1) for the step counter of FiniteSampler.
inline constexpr double kFiniteStepConstant = 2.0;
/// Stream bound 3 |Sigma| |xi_k|: each block costs at most 2 |Sigma| |block| + 1.
inline constexpr double kStreamStepConstant = 3.0;
inline constexpr double kLinearityR2 = 0.99;
}  // namespace thresholds

/// Relative frequency of each sample of length <= max_len.
inline Law empirical_law(const std::vector<Trace>& samples, std::size_t max_len) {
  Law law;
  if (samples.empty()) return law;
  const double w = 1.0 / static_cast<double>(samples.size());
  for (const auto& x : samples) {
    if (x.length() <= max_len) law[x] += w;
  }
  return law;
}

/// Exact B_{S,p}( . | max subset of T) on traces of M_S of length <= max_len.
inline Law exact_law(const IndependenceModel& model, LetterSet s, LetterSet t, double p, std::size_t max_len) {
  MultiplicativeLaw law(model, s, t, p);
  Law out;
  enumerate_traces(model, s, max_len).for_each([&](const Trace& x) {
    if (max_letters(model, x).subset_of(t)) out[x] = law.probability(x);
  });
  return out;
}

/// Samples i = 0..n-1 drawn from the child streams (seed, i).
inline std::vector<Trace> draw_samples(const FiniteSampler& sampler, LetterSet s, LetterSet t, std::size_t n,
                                       std::uint64_t seed) {
  RandomStream root(seed);
  std::vector<Trace> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RandomStream stream = root.split(i);
    out.push_back(sampler.sample_trace(s, t, stream));
  }
  return out;
}

inline TestReport verify_finite_law(const IndependenceModel& model, LetterSet t, double p, std::size_t n,
                                    std::uint64_t seed, double threshold, std::size_t max_len = 4,
                                    PivotStrategy pivot = PivotStrategy::lowest_index) {
  FiniteSampler sampler(model, SamplerParams{p, pivot, {}, seed});
  auto samples = draw_samples(sampler, model.alphabet(), t, n, seed);
  for (const auto& x : samples) {
    if (!max_letters(model, x).subset_of(t)) {
      return TestReport::make("finite.law", 1.0, threshold, TestReport::Direction::at_most, n, seed,
                              "a sample violates max(x) subset of T");
    }
  }
  double tv = tv_distance(empirical_law(samples, max_len), exact_law(model, model.alphabet(), t, p, max_len));
  return TestReport::make("finite.law", tv, threshold, TestReport::Direction::at_most, n, seed,
                          "TV on |x| <= " + std::to_string(max_len) + " plus a tail bin, p = " + detail::format_real(p));
}

/// TV between the empirical laws of two pivot strategies on the same seed.
inline TestReport verify_pivot_invariance(const IndependenceModel& model, double p, std::size_t n, std::uint64_t seed,
                                          std::size_t max_len = 4) {
  FiniteSampler low(model, SamplerParams{p, PivotStrategy::lowest_index, {}, seed});
  FiniteSampler deg(model, SamplerParams{p, PivotStrategy::max_degree, {}, seed});
  auto a = empirical_law(draw_samples(low, model.alphabet(), model.alphabet(), n, seed), max_len);
  auto b = empirical_law(draw_samples(deg, model.alphabet(), model.alphabet(), n, seed + 1), max_len);
  return TestReport::make("finite.pivot_invariance", tv_distance(a, b), thresholds::kConditionedTv,
                          TestReport::Direction::at_most, n, seed, "lowest-index vs max-degree pivots");
}

/// Law of |xi|_a under B_{Sigma,p} against Geometric(r), chi-square.
inline TestReport verify_letter_count_law(const IndependenceModel& model, Letter a, double p, std::size_t n,
                                          std::uint64_t seed, double alpha) {
  FiniteSampler sampler(model, SamplerParams{p, PivotStrategy::user_list, {a}, seed});
  double r = occurrence_probability(model, model.alphabet(), a, p);
  constexpr std::size_t kBins = 40;
  std::vector<double> observed(kBins + 1, 0.0), probs(kBins + 1, 0.0);
  for (const auto& x : draw_samples(sampler, model.alphabet(), model.alphabet(), n, seed)) {
    observed[std::min(x.count(a), kBins)] += 1.0;
  }
  for (std::size_t k = 0; k < kBins; ++k) probs[k] = (1.0 - r) * std::pow(r, static_cast<double>(k));
  probs[kBins] = std::pow(r, static_cast<double>(kBins));
  auto chi = chi_square(observed, probs);
  return TestReport::make("finite.letter_count", chi.p_value, alpha, TestReport::Direction::at_least, n, seed,
                          "|xi|_" + model.name(a) + " vs Geometric(" + detail::format_real(r) + "), chi2 = " +
                              detail::format_real(chi.statistic) + ", dof = " + std::to_string(chi.dof));
}

/// Checks the laws of the pieces of the pyramidal decomposition of samples
/// drawn from B_{Sigma,p}( . | max subset of T).
///
/// Reports: K against Geometric(r) (chi-square), V_0 and the remainder against
/// their conditioned multiplicative laws (TV), and length independence of V_0
/// and V_1 given K >= 2 (chi-square). Only pairwise length independence is
/// tested; full joint independence lacks power at this scale.
inline std::vector<TestReport> verify_decomposition_law(const IndependenceModel& model, Letter a1, LetterSet t,
                                                        double p, std::size_t n, std::uint64_t seed, double alpha,
                                                        std::size_t max_len = 4) {
  model.check(a1);
  if (!t.contains(a1)) throw Error(Errc::invalid_argument, "a1 must belong to T");
  const LetterSet sigma = model.alphabet();
  const LetterSet rest = sigma.without(a1);
  // a pivot rule that does not single out a1 keeps the check independent of the sampler's own split
  FiniteSampler sampler(model, SamplerParams{p, PivotStrategy::max_degree, {}, seed});
  double r = occurrence_probability(model, sigma, a1, p);

  constexpr std::size_t kBins = 40;
  constexpr std::size_t kLenCap = 12;
  std::vector<double> k_observed(kBins + 1, 0.0);
  std::vector<Trace> v0, remainders;
  std::vector<std::vector<double>> lengths(kLenCap + 1, std::vector<double>(kLenCap + 1, 0.0));
  std::size_t pairs = 0;
  auto strip = [&](const Trace& pyramid) {
    auto letters = pyramid.letters();
    letters.erase(std::find(letters.begin(), letters.end(), a1));
    return normalize(model, std::span<const Letter>(letters));
  };
  for (const auto& x : draw_samples(sampler, sigma, t, n, seed)) {
    auto dec = pyramidal_decompose(model, x, a1);
    k_observed[std::min(dec.pyramids.size(), kBins)] += 1.0;
    remainders.push_back(dec.remainder);
    if (!dec.pyramids.empty()) v0.push_back(strip(dec.pyramids[0]));
    if (dec.pyramids.size() >= 2) {
      std::size_t l0 = std::min(dec.pyramids[0].length() - 1, kLenCap);
      std::size_t l1 = std::min(dec.pyramids[1].length() - 1, kLenCap);
      lengths[l0][l1] += 1.0;
      ++pairs;
    }
  }

  std::vector<TestReport> out;
  std::vector<double> k_probs(kBins + 1, 0.0);
  for (std::size_t k = 0; k < kBins; ++k) k_probs[k] = (1.0 - r) * std::pow(r, static_cast<double>(k));
  k_probs[kBins] = std::pow(r, static_cast<double>(kBins));
  auto chi = chi_square(k_observed, k_probs);
  out.push_back(TestReport::make("decomposition.K", chi.p_value, alpha, TestReport::Direction::at_least, n, seed,
                                 "K vs Geometric(" + detail::format_real(r) + "), chi2 = " +
                                     detail::format_real(chi.statistic) + ", dof = " + std::to_string(chi.dof)));

  if (!v0.empty()) {
    double tv = tv_distance(empirical_law(v0, max_len), exact_law(model, rest, model.link(a1), p, max_len));
    out.push_back(TestReport::make("decomposition.V0", tv, thresholds::kConditionedTv, TestReport::Direction::at_most,
                                   v0.size(), seed, "V_0 vs B_{Sigma-a1,p}( . | max in Lk(a1))"));
  }
  double tv_u = tv_distance(empirical_law(remainders, max_len), exact_law(model, rest, t, p, max_len));
  out.push_back(TestReport::make("decomposition.remainder", tv_u, thresholds::kConditionedTv,
                                 TestReport::Direction::at_most, n, seed, "U_K vs B_{Sigma-a1,p}( . | max in T)"));

  if (pairs > 0) {
    auto ind = chi_square_independence(lengths);
    out.push_back(TestReport::make("decomposition.independence", ind.p_value, alpha, TestReport::Direction::at_least,
                                   pairs, seed,
                                   "(|V_0|, |V_1|) given K >= 2, chi2 = " + detail::format_real(ind.statistic) +
                                       ", dof = " + std::to_string(ind.dof) + "; pairwise lengths only"));
  }
  return out;
}

/// Empirical law of N blocks against p_Sigma^|v| on a1-pyramidal v.
inline TestReport verify_block_law(const IndependenceModel& model, Letter a1, std::uint64_t seed, std::size_t n,
                                   std::size_t max_len = 4) {
  BlockStream stream(model, a1, seed);
  std::vector<Trace> blocks;
  blocks.reserve(n);
  std::size_t not_pyramidal = 0;
  for (std::size_t i = 0; i < n; ++i) {
    blocks.push_back(stream.block_at(i));
    if (!is_pyramidal(model, blocks.back(), a1)) ++not_pyramidal;
  }
  Law exact;
  enumerate_traces(model, model.alphabet(), max_len).for_each([&](const Trace& v) {
    if (is_pyramidal(model, v, a1)) exact[v] = std::pow(stream.p_star(), static_cast<double>(v.length()));
  });
  double tv = tv_distance(empirical_law(blocks, max_len), exact);
  if (not_pyramidal > 0) tv = 1.0;
  return TestReport::make("boundary.block_law", tv, thresholds::kBlockTv, TestReport::Direction::at_most, n, seed,
                          std::to_string(not_pyramidal) + " non-pyramidal blocks; TV on |v| <= " +
                              std::to_string(max_len));
}

/// Frequency of {x <= xi_K} over independent streams against p_Sigma^|x|.
///
/// The events increase with K, so K starts at 4|x| and doubles until the
/// frequency moves by less than 1e-3 over one doubling. Run r uses blocks
/// r * kRunStride + i of one seeded stream; all blocks are independent.
inline std::vector<TestReport> verify_cylinders(const IndependenceModel& model, Letter a1, std::uint64_t seed,
                                                std::size_t x_max_len, std::size_t runs = 10000,
                                                double tolerance = thresholds::kCylinder,
                                                std::size_t max_blocks = 4096) {
  constexpr std::size_t kRunStride = std::size_t{1} << 24;
  constexpr double kIncrement = 1e-3;
  BlockStream proto(model, a1, seed);
  const double p_star = proto.p_star();

  struct Target {
    Trace x;
    std::size_t next_k = 1;
    double previous = -1.0;
    bool done = false;
    double frequency = 0.0;
    std::size_t final_k = 0;
    std::vector<char> hit;
  };
  std::vector<Target> targets;
  enumerate_traces(model, model.alphabet(), x_max_len).for_each([&](const Trace& x) {
    Target t;
    t.x = x;
    t.next_k = std::max<std::size_t>(4 * x.length(), 1);
    t.hit.assign(runs, 0);
    if (x.empty()) {
      t.done = true;
      t.frequency = 1.0;
    }
    targets.push_back(std::move(t));
  });

  std::vector<TraceBuilder> xi(runs, TraceBuilder(proto.model()));
  std::vector<std::size_t> built(runs, 0);
  while (true) {
    std::size_t k = 0;
    for (const auto& t : targets) {
      if (!t.done && (k == 0 || t.next_k < k)) k = t.next_k;
    }
    if (k == 0 || k > max_blocks) break;
    for (std::size_t r = 0; r < runs; ++r) {
      while (built[r] < k) xi[r].append(proto.block_at(r * kRunStride + built[r]++));
      for (auto& t : targets) {
        if (!t.done && t.next_k == k && !t.hit[r]) t.hit[r] = is_left_divisor(model, t.x, xi[r].current());
      }
    }
    for (auto& t : targets) {
      if (t.done || t.next_k != k) continue;
      double freq = static_cast<double>(std::count(t.hit.begin(), t.hit.end(), 1)) / static_cast<double>(runs);
      if (t.previous >= 0.0 && freq - t.previous < kIncrement) {
        t.done = true;
        t.frequency = freq;
        t.final_k = k;
      } else {
        t.previous = freq;
        t.frequency = freq;
        t.final_k = k;
        t.next_k *= 2;
      }
    }
  }

  std::vector<TestReport> out;
  for (const auto& t : targets) {
    double expected = std::pow(p_star, static_cast<double>(t.x.length()));
    std::string note = "x = " + to_brackets(model, t.x) + ", frequency " + detail::format_real(t.frequency) +
                       " at K = " + std::to_string(t.final_k) + ", expected " + detail::format_real(expected);
    if (!t.done) note += ", did not converge below max_blocks";
    auto rep = TestReport::make("boundary.cylinder", std::abs(t.frequency - expected), tolerance,
                                TestReport::Direction::at_most, runs, seed, note);
    if (!t.done) rep.pass = false;
    out.push_back(std::move(rep));
  }
  return out;
}

/// Mean letter frequencies of xi_k under two pivots; statistic is the largest relative gap.
inline TestReport verify_pivot_robustness(const IndependenceModel& model, Letter a1, Letter a2, std::size_t k,
                                          std::size_t runs, std::uint64_t seed) {
  auto mean_freq = [&](Letter pivot, std::uint64_t s) {
    std::vector<double> f(model.size(), 0.0);
    for (std::size_t r = 0; r < runs; ++r) {
      BlockStream stream(model, pivot, RandomStream(s).split(r).next());
      const Trace& xi = stream.run(k);
      auto c = xi.counts(model.size());
      for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] += static_cast<double>(c[i]) / static_cast<double>(xi.length()) / static_cast<double>(runs);
      }
    }
    return f;
  };
  auto fa = mean_freq(a1, seed);
  auto fb = mean_freq(a2, seed + 1);
  double worst = 0.0;
  std::string note = "frequencies";
  for (std::size_t i = 0; i < fa.size(); ++i) {
    worst = std::max(worst, std::abs(fa[i] - fb[i]) / std::max(fa[i], fb[i]));
    note += " " + model.name(static_cast<Letter>(i)) + ":" + detail::format_real(fa[i]) + "/" +
            detail::format_real(fb[i]);
  }
  return TestReport::make("boundary.pivot_robustness", worst, thresholds::kPivotFrequency,
                          TestReport::Direction::at_most, runs, seed, note);
}

/// Largest steps / ((|Sigma|+1)(|xi|+1)) over N samples.
inline TestReport verify_finite_complexity(const IndependenceModel& model, double p, std::size_t n,
                                           std::uint64_t seed) {
  FiniteSampler sampler(model, SamplerParams{p, PivotStrategy::lowest_index, {}, seed});
  RandomStream root(seed);
  double worst = 0.0;
  const double letters = static_cast<double>(model.size());
  for (std::size_t i = 0; i < n; ++i) {
    RandomStream stream = root.split(i);
    SampleStats stats;
    Trace x = sampler.sample(stream, &stats);
    worst = std::max(worst, static_cast<double>(stats.steps) / ((letters + 1.0) * (static_cast<double>(x.length()) + 1.0)));
  }
  return TestReport::make("finite.complexity", worst, thresholds::kFiniteStepConstant, TestReport::Direction::at_most,
                          n, seed, "max steps / ((|Sigma|+1)(|xi|+1))");
}

/// Largest cumulative steps / (|Sigma| |xi_k|) over k <= k_max and all runs.
inline TestReport verify_stream_complexity(const IndependenceModel& model, Letter a1, std::size_t k_max,
                                           std::size_t runs, std::uint64_t seed) {
  double worst = 0.0;
  const double letters = static_cast<double>(model.size());
  for (std::size_t r = 0; r < runs; ++r) {
    BlockStream stream(model, a1, RandomStream(seed).split(r).next());
    for (std::size_t k = 1; k <= k_max; ++k) {
      stream.next_block();
      worst = std::max(worst, static_cast<double>(stream.steps()) /
                                  (letters * static_cast<double>(stream.accumulated().length())));
    }
  }
  return TestReport::make("boundary.complexity", worst, thresholds::kStreamStepConstant,
                          TestReport::Direction::at_most, runs, seed, "max cumulative steps / (|Sigma| |xi_k|)");
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

/// Regression of mean |xi_k| on k for k = 1..k_max over `runs` streams.
inline TestReport verify_stream_linearity(const IndependenceModel& model, Letter a1, std::size_t k_max,
                                          std::size_t runs, std::uint64_t seed) {
  std::vector<double> ks, means(k_max, 0.0);
  for (std::size_t k = 1; k <= k_max; ++k) ks.push_back(static_cast<double>(k));
  for (std::size_t r = 0; r < runs; ++r) {
    BlockStream stream(model, a1, RandomStream(seed).split(r).next());
    for (std::size_t k = 0; k < k_max; ++k) {
      stream.next_block();
      means[k] += static_cast<double>(stream.accumulated().length()) / static_cast<double>(runs);
    }
  }
  auto fit = fit_line(ks, means);
  return TestReport::make("boundary.linearity", fit.r2, thresholds::kLinearityR2, TestReport::Direction::at_least,
                          runs, seed,
                          "mean |xi_k| = " + detail::format_real(fit.slope) + " k + " +
                              detail::format_real(fit.intercept) + ", mean block length at k = " +
                              std::to_string(k_max) + ": " + detail::format_real(means.back() / static_cast<double>(k_max)));
}

// ---------------------------------------------------------------------------
// Deterministic checks on the Mobius polynomials and the counting oracle.

inline TestReport verify_recurrence(const IndependenceModel& model) {
  std::size_t nonzero = 0, checked = 0;
  const std::uint64_t full = model.alphabet().bits();
  for (std::uint64_t bits = 1; bits <= full && model.size() <= 12; ++bits) {
    LetterSet x(bits);
    if (!x.subset_of(model.alphabet())) continue;
    for (Letter a : x) {
      ++checked;
      if (!recurrence_residual_polynomial(model, x, a).is_zero()) ++nonzero;
    }
  }
  return TestReport::make("mobius.recurrence", static_cast<double>(nonzero), 0.0, TestReport::Direction::at_most,
                          checked, 0, "non-zero integer residual polynomials over all (X, a in X)");
}

/// mu_Sigma(p) <= 1 - p at 50 points of (0, p_Sigma).
inline TestReport verify_mobius_bound(const IndependenceModel& model) {
  auto mu = mobius_polynomial(model, model.alphabet());
  double root = smallest_root(mu);
  double worst = -1.0;
  for (int i = 1; i <= 50; ++i) {
    double p = root * i / 51.0;
    worst = std::max(worst, mu(p) - (1.0 - p));
  }
  return TestReport::make("mobius.upper_bound", worst, 1e-12, TestReport::Direction::at_most, 50, 0,
                          "max of mu(p) - (1 - p)");
}

/// Root monotonicity over nested subalphabets and positivity below each root.
inline std::vector<TestReport> verify_roots(const IndependenceModel& model) {
  std::vector<TestReport> out;
  if (model.size() > 10) return out;
  const std::uint64_t full = model.alphabet().bits();
  std::vector<double> root(full + 1, 0.0);
  double negative = 0.0;
  for (std::uint64_t bits = 1; bits <= full; ++bits) {
    auto mu = mobius_polynomial(model, LetterSet(bits));
    root[bits] = smallest_root(mu);
    for (int i = 0; i * 1e-3 < root[bits]; ++i) {
      if (!(mu(i * 1e-3) > 0.0)) negative += 1.0;
    }
  }
  double violation = 0.0;
  // Sigma - U' subset of Sigma - U; iterate sub = Sigma - U' over subsets of x = Sigma - U
  for (std::uint64_t x = 1; x <= full; ++x) {
    for (std::uint64_t sub = (x - 1) & x; sub > 0; sub = (sub - 1) & x) {
      violation = std::max(violation, root[x] - (root[sub] + 1e-9));
    }
  }
  out.push_back(TestReport::make("mobius.root_monotonicity", violation, 0.0, TestReport::Direction::at_most, full, 0,
                                 "max of p_{Sigma-U} - p_{Sigma-U'} - 1e-9 over U subset of U'"));
  out.push_back(TestReport::make("mobius.positivity", negative, 0.0, TestReport::Direction::at_most, full, 0,
                                 "grid points q < p_X with mu_X(q) <= 0"));
  return out;
}

/// Enumeration counts against 1/mu coefficients, for lengths up to n_max.
inline TestReport verify_counts(const IndependenceModel& model, std::size_t n_max) {
  auto enumerated = enumerate_traces(model, model.alphabet(), n_max).counts();
  auto series = series_coefficients(model, model.alphabet(), n_max);
  std::size_t mismatches = 0;
  for (std::size_t n = 0; n <= n_max; ++n) mismatches += enumerated[n] != series[n];
  return TestReport::make("oracle.counts", static_cast<double>(mismatches), 0.0, TestReport::Direction::at_most,
                          n_max + 1, 0, "lengths 0.." + std::to_string(n_max) + " where enumeration != 1/mu series");
}

/// Sum over max(x) in U of p^|x| against mu_{Sigma-U}(p) / mu_Sigma(p), for every
/// singleton U and U = Sigma.
inline std::vector<TestReport> verify_series(const IndependenceModel& model, double p, std::size_t n_max) {
  std::vector<TestReport> out;
  std::vector<LetterSet> us;
  for (Letter a : model.alphabet()) us.push_back(LetterSet::single(a));
  us.push_back(model.alphabet());
  for (LetterSet u : us) {
    auto c = check_series_identity(model, u, p, n_max);
    std::string label;
    for (Letter a : u) label += model.name(a);
    out.push_back(TestReport::make("oracle.series", c.residual, c.tail_bound, TestReport::Direction::at_most, n_max, 0,
                                   "U = {" + label + "}, p = " + detail::format_real(p) + ", target " +
                                       detail::format_real(c.target)));
  }
  return out;
}

/// Largest n_max <= 12 for which the oracle enumeration stays small.
inline std::size_t oracle_length(const IndependenceModel& model, std::uint64_t budget = 1'000'000) {
  auto g = series_coefficients(model, model.alphabet(), kOracleMaxLength);
  std::size_t n = 0;
  while (n < kOracleMaxLength && g[n + 1] <= budget) ++n;
  return n;
}

enum class Suite { mobius, finite, boundary, all };

struct SuiteOptions {
  std::uint64_t seed = 0;
  /// Working p for the finite suites; 0 selects 0.6 p_Sigma.
  double p = 0.0;
  Letter pivot = 0;
  std::size_t samples = 200'000;
};

/// Runs one battery; chi-square tests share a Bonferroni-corrected level.
inline std::vector<TestReport> run_suite(const IndependenceModel& model, Suite suite, const SuiteOptions& options) {
  if (model.empty()) throw Error(Errc::empty_alphabet, "cannot verify an empty alphabet");
  model.check(options.pivot);
  std::vector<TestReport> out;
  const bool small = model.size() <= kOracleMaxAlphabet;
  const double root = smallest_root(model, model.alphabet());
  const double p = options.p > 0.0 ? options.p : 0.6 * root;
  const std::uint64_t seed = options.seed;
  auto add = [&](std::vector<TestReport> more) { out.insert(out.end(), more.begin(), more.end()); };

  if (suite == Suite::mobius || suite == Suite::all) {
    out.push_back(verify_recurrence(model));
    out.push_back(verify_mobius_bound(model));
    add(verify_roots(model));
    if (small) {
      std::size_t n_max = oracle_length(model);
      out.push_back(verify_counts(model, n_max));
      add(verify_series(model, p, n_max));
    }
  }
  if (suite == Suite::finite || suite == Suite::all) {
    constexpr double kChiTests = 3.0;
    const double alpha = thresholds::kSignificance / kChiTests;
    const std::size_t n = options.samples;
    if (small) {
      out.push_back(verify_finite_law(model, model.alphabet(), p, n, seed, thresholds::kLawTv));
      out.push_back(verify_finite_law(model, model.link(options.pivot), p, n, seed + 1, thresholds::kConditionedTv));
      out.back().name = "finite.conditioned_law";
      out.push_back(verify_pivot_invariance(model, p, n, seed + 2));
      add(verify_decomposition_law(model, options.pivot, model.alphabet(), p, n, seed + 3, alpha));
    } else {
      add({verify_decomposition_law(model, options.pivot, model.alphabet(), p, n, seed + 3, alpha).front()});
    }
    out.push_back(verify_letter_count_law(model, options.pivot, p, n / 2, seed + 4, alpha));
    out.push_back(verify_finite_complexity(model, p, 10'000, seed + 5));
  }
  if ((suite == Suite::boundary || suite == Suite::all) && model.size() > 1) {
    if (!is_irreducible(model)) throw Error(Errc::not_irreducible, "boundary suite needs a connected dependence graph");
    if (small) {
      out.push_back(verify_block_law(model, options.pivot, seed + 10, 100'000));
      add(verify_cylinders(model, options.pivot, seed + 11, 3));
    }
    out.push_back(verify_stream_complexity(model, options.pivot, 1000, 10, seed + 12));
    out.push_back(verify_stream_linearity(model, options.pivot, 100, 1000, seed + 13));
  }
  return out;
}

}  // namespace tracegen
