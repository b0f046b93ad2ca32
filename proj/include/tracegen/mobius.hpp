#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracegen/error.hpp"
#include "tracegen/letter_set.hpp"
#include "tracegen/model.hpp"

namespace tracegen {

/// Integer polynomial sum over cliques c of (-1)^|c| X^|c|.
class MobiusPolynomial {
 public:
  MobiusPolynomial() : coefficients_{1} {}
  explicit MobiusPolynomial(std::vector<std::int64_t> coefficients) : coefficients_(std::move(coefficients)) {
    trim();
  }

  const std::vector<std::int64_t>& coefficients() const { return coefficients_; }
  std::size_t degree() const { return coefficients_.empty() ? 0 : coefficients_.size() - 1; }

  std::int64_t operator[](std::size_t d) const { return d < coefficients_.size() ? coefficients_[d] : 0; }

  /// Number of cliques the polynomial was built from.
  std::uint64_t clique_count() const {
    std::uint64_t n = 0;
    for (auto c : coefficients_) n += static_cast<std::uint64_t>(std::llabs(c));
    return n;
  }

  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + static_cast<double>(*it);
    return acc;
  }

  /// Value of the formal derivative at x.
  double derivative(double x) const {
    double acc = 0.0;
    for (std::size_t d = coefficients_.size(); d-- > 1;) acc = acc * x + static_cast<double>(d) * static_cast<double>(coefficients_[d]);
    return acc;
  }

  friend MobiusPolynomial operator-(const MobiusPolynomial& a, const MobiusPolynomial& b) {
    std::vector<std::int64_t> c(std::max(a.coefficients_.size(), b.coefficients_.size()), 0);
    for (std::size_t d = 0; d < c.size(); ++d) c[d] = a[d] - b[d];
    return MobiusPolynomial(std::move(c));
  }

  /// Multiplication by X.
  MobiusPolynomial shifted() const {
    std::vector<std::int64_t> c(coefficients_.size() + 1, 0);
    for (std::size_t d = 0; d < coefficients_.size(); ++d) c[d + 1] = coefficients_[d];
    return MobiusPolynomial(std::move(c));
  }

  bool is_zero() const { return coefficients_.empty(); }

  bool operator==(const MobiusPolynomial&) const = default;

 private:
  void trim() {
    while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
  }

  std::vector<std::int64_t> coefficients_;
};

inline MobiusPolynomial mobius_polynomial(const IndependenceModel& model, LetterSet x) {
  std::vector<std::int64_t> c(x.size() + 1, 0);
  for_each_clique(model, x, [&](LetterSet clique) {
    std::size_t d = clique.size();
    c[d] += (d % 2 == 0) ? 1 : -1;
  });
  return MobiusPolynomial(std::move(c));
}

inline double mobius_eval(const IndependenceModel& model, LetterSet x, double p) {
  return mobius_polynomial(model, x)(p);
}

/// mu_X - (mu_{X \ a} - X mu_{X \ Lk(a)}), which must be the zero polynomial.
inline MobiusPolynomial recurrence_residual_polynomial(const IndependenceModel& model, LetterSet x, Letter a) {
  model.check(a);
  if (!x.contains(a)) throw Error(Errc::invalid_argument, "letter must belong to the subset");
  return mobius_polynomial(model, x) -
         (mobius_polynomial(model, x.without(a)) - mobius_polynomial(model, x - model.link(a)).shifted());
}

inline double recurrence_residual(const IndependenceModel& model, LetterSet x, Letter a, double p) {
  model.check(a);
  if (!x.contains(a)) throw Error(Errc::invalid_argument, "letter must belong to the subset");
  return mobius_eval(model, x, p) - (mobius_eval(model, x.without(a), p) - p * mobius_eval(model, x - model.link(a), p));
}

namespace detail {

inline constexpr int kRootGridSteps = 1000;
inline constexpr double kRootWidth = 1e-14;

inline double bisect_root(const MobiusPolynomial& mu, double lo, double hi) {
  // mu(lo) > 0 > mu(hi)
  while (hi - lo > kRootWidth) {
    double mid = 0.5 * (lo + hi);
    double v = mu(mid);
    if (v == 0.0) return mid;
    (v > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::pair<double, double> golden_minimum(const MobiusPolynomial& mu, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = mu(c);
  double fd = mu(d);
  while (hi - lo > kRootWidth) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = mu(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = mu(d);
    }
  }
  double x = 0.5 * (lo + hi);
  return {x, mu(x)};
}

}  // namespace detail

/// Smallest positive root of a Mobius polynomial, located in (0, 1].
///
/// Scans a 1e-3 grid for the first sign change and bisects it. A root where mu
/// only touches zero shows up as a local minimum of the grid values; it is
/// refined by golden-section search and accepted when |mu| is below
/// 1e-12 times the clique count.
inline double smallest_root(const MobiusPolynomial& mu) {
  const double tol = 1e-12 * static_cast<double>(mu.clique_count());
  double q2 = 0.0, v2 = mu(0.0);
  double q1 = 0.0, v1 = v2;
  for (int i = 1; i <= detail::kRootGridSteps; ++i) {
    double q = static_cast<double>(i) / detail::kRootGridSteps;
    double v = mu(q);
    if (v == 0.0) return q;
    if (v < 0.0) return detail::bisect_root(mu, q1, q);
    if (i >= 2 && v1 <= v2 && v1 < v) {
      auto [xm, vm] = detail::golden_minimum(mu, q2, q);
      if (std::abs(vm) <= tol) return xm;
      if (vm < 0.0) return detail::bisect_root(mu, q2, xm);
    }
    q2 = q1;
    v2 = v1;
    q1 = q;
    v1 = v;
  }
  auto [xm, vm] = detail::golden_minimum(mu, 1.0 - 1.0 / detail::kRootGridSteps, 1.0);
  if (std::abs(vm) <= tol) return xm;
  if (std::abs(mu(1.0)) <= tol) return 1.0;
  throw Error(Errc::root_not_found, "no root of the Mobius polynomial in (0, 1]");
}

inline double smallest_root(const IndependenceModel& model, LetterSet x) {
  if ((x & model.alphabet()).empty()) throw Error(Errc::invalid_argument, "smallest root of the empty alphabet");
  return smallest_root(mobius_polynomial(model, x));
}

/// Connectedness of the dependence graph restricted to `x` (self-loops ignored).
inline bool is_irreducible(const IndependenceModel& model, LetterSet x) {
  x &= model.alphabet();
  if (x.empty()) throw Error(Errc::empty_alphabet, "irreducibility of an empty alphabet");
  LetterSet seen = LetterSet::single(x.lowest());
  LetterSet frontier = seen;
  while (!frontier.empty()) {
    LetterSet next;
    for (Letter a : frontier) next |= model.link(a) & x;
    frontier = next - seen;
    seen |= next;
  }
  return seen == x;
}

inline bool is_irreducible(const IndependenceModel& model) { return is_irreducible(model, model.alphabet()); }

namespace detail {

inline std::string format_real(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

inline void require_below_root(const IndependenceModel& model, LetterSet s, double p) {
  double root = smallest_root(model, s);
  if (!(p > 0.0) || !(p < root)) {
    throw Error(Errc::p_out_of_range,
                "p = " + format_real(p) + " must lie in (0, p_S) with p_S = " + format_real(root));
  }
}

}  // namespace detail

/// Probability that a1 occurs in a trace drawn from B_{S,p}.
///
/// Both closed forms are evaluated; they must agree to 1e-10 relative.
inline double occurrence_probability(const IndependenceModel& model, LetterSet s, Letter a1, double p) {
  model.check(a1);
  if (!s.contains(a1)) throw Error(Errc::invalid_argument, "pivot must belong to S");
  detail::require_below_root(model, s, p);
  double rest = mobius_eval(model, s.without(a1), p);
  double left = 1.0 - mobius_eval(model, s, p) / rest;
  double right = p * mobius_eval(model, s - model.link(a1), p) / rest;
  if (std::abs(left - right) > 1e-10 * std::abs(right) + 1e-15) {
    throw Error(Errc::invalid_argument, "occurrence probability forms disagree: " + detail::format_real(left) +
                                            " vs " + detail::format_real(right));
  }
  return left;
}

/// Mean length -p mu'(p) / mu(p) under B_{Sigma,p}.
inline double expected_length(const IndependenceModel& model, double p) {
  detail::require_below_root(model, model.alphabet(), p);
  MobiusPolynomial mu = mobius_polynomial(model, model.alphabet());
  return -p * mu.derivative(p) / mu(p);
}

/// Lazily filled table of mu_X and mu_X(p) for one working p.
///
/// Safe for concurrent readers; insertions take an exclusive lock. Values are
/// pure functions of X, so the population order never changes a result.
class SubsetTable {
 public:
  struct Entry {
    MobiusPolynomial polynomial;
    double value;
  };

  SubsetTable(std::shared_ptr<const IndependenceModel> model, double p) : model_(std::move(model)), p_(p) {}

  double p() const { return p_; }

  double value(LetterSet x) const { return entry(x).value; }
  const MobiusPolynomial& polynomial(LetterSet x) const { return entry(x).polynomial; }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
  }

  const Entry& entry(LetterSet x) const {
    {
      std::shared_lock lock(mutex_);
      if (auto it = memo_.find(x); it != memo_.end()) return it->second;
    }
    Entry fresh{mobius_polynomial(*model_, x), 0.0};
    fresh.value = fresh.polynomial(p_);
    std::unique_lock lock(mutex_);
    return memo_.try_emplace(x, std::move(fresh)).first->second;
  }

 private:
  std::shared_ptr<const IndependenceModel> model_;
  double p_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<LetterSet, Entry> memo_;
};

}  // namespace tracegen
