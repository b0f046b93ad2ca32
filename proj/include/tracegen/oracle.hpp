#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "tracegen/error.hpp"
#include "tracegen/letter_set.hpp"
#include "tracegen/mobius.hpp"
#include "tracegen/model.hpp"
#include "tracegen/trace.hpp"

namespace tracegen {

inline constexpr std::size_t kOracleMaxAlphabet = 6;
inline constexpr std::size_t kOracleMaxLength = 12;

/// Every trace of M_X up to a length bound, grouped and sorted by length.
class EnumerationIndex {
 public:
  EnumerationIndex(LetterSet alphabet, std::vector<std::vector<Trace>> by_length)
      : alphabet_(alphabet), by_length_(std::move(by_length)) {}

  LetterSet alphabet() const { return alphabet_; }
  std::size_t max_length() const { return by_length_.size() - 1; }
  const std::vector<Trace>& of_length(std::size_t n) const { return by_length_.at(n); }

  std::vector<std::uint64_t> counts() const {
    std::vector<std::uint64_t> c;
    for (const auto& level : by_length_) c.push_back(level.size());
    return c;
  }

  bool contains(const Trace& x) const {
    if (x.length() > max_length()) return false;
    const auto& level = by_length_[x.length()];
    return std::binary_search(level.begin(), level.end(), x);
  }

  template <typename Visit>
  void for_each(Visit&& visit) const {
    for (const auto& level : by_length_) {
      for (const auto& x : level) visit(x);
    }
  }

 private:
  LetterSet alphabet_;
  std::vector<std::vector<Trace>> by_length_;
};

/// Breadth-first: every trace of length n+1 is x.a for some x of length n;
/// duplicates are removed by sorting on the normal form.
inline EnumerationIndex enumerate_traces(const IndependenceModel& model, LetterSet x, std::size_t n_max) {
  x &= model.alphabet();
  if (x.size() > kOracleMaxAlphabet || n_max > kOracleMaxLength) {
    throw Error(Errc::guardrail_exceeded, "enumeration limited to |X| <= " + std::to_string(kOracleMaxAlphabet) +
                                              " and n_max <= " + std::to_string(kOracleMaxLength));
  }
  std::vector<std::vector<Trace>> levels;
  levels.push_back({Trace{}});
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<Trace> next;
    next.reserve(levels.back().size() * x.size());
    for (const auto& t : levels.back()) {
      for (Letter a : x) {
        TraceBuilder b(model, t);
        b.push(a);
        next.push_back(std::move(b).take());
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    levels.push_back(std::move(next));
  }
  return EnumerationIndex(x, std::move(levels));
}

/// Coefficients g_0..g_{n_max} of 1 / mu_X, from g_n = -sum_{d>=1} c_d g_{n-d}.
inline std::vector<std::uint64_t> series_coefficients(const IndependenceModel& model, LetterSet x, std::size_t n_max) {
  MobiusPolynomial mu = mobius_polynomial(model, x);
  std::vector<std::int64_t> g(n_max + 1, 0);
  g[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::int64_t acc = 0;
    for (std::size_t d = 1; d <= std::min(n, mu.degree()); ++d) {
      std::int64_t term = 0;
      if (__builtin_mul_overflow(mu[d], g[n - d], &term) || __builtin_sub_overflow(acc, term, &acc)) {
        throw Error(Errc::guardrail_exceeded, "series coefficient overflows 64 bits");
      }
    }
    g[n] = acc;
  }
  return {g.begin(), g.end()};
}

/// B_{X,p}({x}) = mu_X(p) p^|x|, optionally conditioned on max(x) subset of T.
class MultiplicativeLaw {
 public:
  MultiplicativeLaw(const IndependenceModel& model, LetterSet x, double p) : MultiplicativeLaw(model, x, x, p) {}

  MultiplicativeLaw(const IndependenceModel& model, LetterSet x, LetterSet t, double p) : p_(p) {
    x &= model.alphabet();
    if (!x.empty()) detail::require_below_root(model, x, p);
    // conditioning mass: sum over max(y) in T of p^|y| = mu_{X - T}(p) / mu_X(p)
    normalizer_ = mobius_eval(model, x, p) / mobius_eval(model, x - t, p);
  }

  double p() const { return p_; }
  double probability(std::size_t length) const { return normalizer_ * std::pow(p_, static_cast<double>(length)); }
  double probability(const Trace& y) const { return probability(y.length()); }

 private:
  double p_;
  double normalizer_;
};

inline double exact_probability(const IndependenceModel& model, const Trace& x, double p) {
  return MultiplicativeLaw(model, model.alphabet(), p).probability(x);
}

struct SeriesCheck {
  double partial_sum = 0.0;
  double target = 0.0;
  double residual = 0.0;
  /// Estimate of the omitted tail: first omitted term / (1 - p rho), with rho the
  /// larger of 1 / p_Sigma and the last count ratio.
  double tail_bound = 0.0;
};

/// Partial sum of p^|x| over enumerated x with max(x) in U, against mu_{Sigma-U}(p) / mu_Sigma(p).
inline SeriesCheck check_series_identity(const IndependenceModel& model, LetterSet u, double p, std::size_t n_max) {
  if (u.empty()) throw Error(Errc::invalid_argument, "U must be non-empty");
  LetterSet sigma = model.alphabet();
  detail::require_below_root(model, sigma, p);
  auto index = enumerate_traces(model, sigma, n_max);
  SeriesCheck out;
  index.for_each([&](const Trace& x) {
    if (max_letters(model, x).subset_of(u)) out.partial_sum += std::pow(p, static_cast<double>(x.length()));
  });
  out.target = mobius_eval(model, sigma - u, p) / mobius_eval(model, sigma, p);
  out.residual = std::abs(out.partial_sum - out.target);
  auto g = series_coefficients(model, sigma, n_max + 1);
  double first_omitted = static_cast<double>(g[n_max + 1]) * std::pow(p, static_cast<double>(n_max + 1));
  // counts grow like p_Sigma^-n, but the last observed ratio can sit slightly above it
  double ratio = 1.0 / smallest_root(model, sigma);
  if (g[n_max] > 0) ratio = std::max(ratio, static_cast<double>(g[n_max + 1]) / static_cast<double>(g[n_max]));
  // plus a rounding allowance: the bound is exact for a geometric series
  out.tail_bound = first_omitted / (1.0 - p * ratio) + 64.0 * std::numeric_limits<double>::epsilon() * out.target;
  return out;
}

}  // namespace tracegen
