#pragma once

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "tracegen/error.hpp"

namespace tracegen {

/// Outcome of one statistical or exact check.
struct TestReport {
  enum class Direction { at_most, at_least };

  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  /// at_most: pass iff statistic <= threshold (distances); at_least: p-values.
  Direction direction = Direction::at_most;
  std::uint64_t sample_size = 0;
  std::uint64_t seed = 0;
  bool pass = false;
  std::string note;

  static TestReport make(std::string name, double statistic, double threshold, Direction direction,
                         std::uint64_t sample_size, std::uint64_t seed, std::string note = {}) {
    TestReport r{std::move(name), statistic, threshold, direction, sample_size, seed, false, std::move(note)};
    r.pass = direction == Direction::at_most ? statistic <= threshold : statistic >= threshold;
    return r;
  }
};

/// Total variation between two laws seen through their common support plus one
/// bin collecting the mass outside it.
template <typename Key>
double tv_distance(const std::map<Key, double>& empirical, const std::map<Key, double>& exact) {
  if (empirical.empty() && exact.empty()) throw Error(Errc::empty_support, "tv_distance on an empty support");
  double sum = 0.0, mass_e = 0.0, mass_x = 0.0;
  auto ie = empirical.begin();
  auto ix = exact.begin();
  while (ie != empirical.end() || ix != exact.end()) {
    double e = 0.0, x = 0.0;
    if (ix == exact.end() || (ie != empirical.end() && ie->first < ix->first)) {
      e = (ie++)->second;
    } else if (ie == empirical.end() || ix->first < ie->first) {
      x = (ix++)->second;
    } else {
      e = (ie++)->second;
      x = (ix++)->second;
    }
    sum += std::abs(e - x);
    mass_e += e;
    mass_x += x;
  }
  sum += std::abs((1.0 - mass_e) - (1.0 - mass_x));
  return 0.5 * sum;
}

struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

inline double chi_square_survival(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

/// Goodness of fit of observed counts to bin probabilities.
///
/// Adjacent bins are pooled left to right until each expected count reaches
/// `min_expected`; a short leftover is pooled into the last kept bin. Mass not
/// covered by `probabilities` is expected to be zero; callers include a tail bin.
inline ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& probabilities,
                            double min_expected = 5.0) {
  if (observed.empty() || observed.size() != probabilities.size()) {
    throw Error(Errc::empty_support, "chi_square needs matching, non-empty bins");
  }
  double n = 0.0;
  for (double o : observed) n += o;
  std::vector<double> obs, exp;
  double acc_o = 0.0, acc_e = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc_o += observed[i];
    acc_e += probabilities[i] * n;
    if (acc_e >= min_expected) {
      obs.push_back(acc_o);
      exp.push_back(acc_e);
      acc_o = acc_e = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (exp.empty()) {
      obs.push_back(acc_o);
      exp.push_back(acc_e);
    } else {
      obs.back() += acc_o;
      exp.back() += acc_e;
    }
  }
  ChiSquare out;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (exp[i] > 0.0) out.statistic += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
  }
  out.dof = obs.size() - 1;
  out.p_value = chi_square_survival(out.statistic, out.dof);
  return out;
}

/// Independence test on a contingency table. Trailing rows and columns are
/// merged into their predecessor while they hold an expected count below
/// `min_expected`.
inline ChiSquare chi_square_independence(std::vector<std::vector<double>> table, double min_expected = 5.0) {
  if (table.empty() || table.front().empty()) throw Error(Errc::empty_support, "empty contingency table");
  auto totals = [&] {
    std::vector<double> rows(table.size(), 0.0), cols(table.front().size(), 0.0);
    double n = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
      for (std::size_t j = 0; j < table[i].size(); ++j) {
        rows[i] += table[i][j];
        cols[j] += table[i][j];
        n += table[i][j];
      }
    }
    return std::tuple{rows, cols, n};
  };
  {
    // empty rows and columns carry no information
    auto [rows, cols, n] = totals();
    if (n <= 0.0) throw Error(Errc::empty_support, "contingency table has no observations");
    std::vector<std::vector<double>> kept;
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (rows[i] == 0.0) continue;
      std::vector<double> row;
      for (std::size_t j = 0; j < table[i].size(); ++j) {
        if (cols[j] != 0.0) row.push_back(table[i][j]);
      }
      kept.push_back(std::move(row));
    }
    table = std::move(kept);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    auto [rows, cols, n] = totals();
    double min_col = *std::min_element(cols.begin(), cols.end());
    double min_row = *std::min_element(rows.begin(), rows.end());
    if (table.size() > 2 && rows.back() * min_col / n < min_expected) {
      auto last = table.back();
      table.pop_back();
      for (std::size_t j = 0; j < last.size(); ++j) table.back()[j] += last[j];
      changed = true;
    } else if (table.front().size() > 2 && cols.back() * min_row / n < min_expected) {
      for (auto& row : table) {
        row[row.size() - 2] += row.back();
        row.pop_back();
      }
      changed = true;
    }
  }
  auto [rows, cols, n] = totals();
  ChiSquare out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table[i].size(); ++j) {
      double e = rows[i] * cols[j] / n;
      if (e > 0.0) out.statistic += (table[i][j] - e) * (table[i][j] - e) / e;
    }
  }
  out.dof = (table.size() - 1) * (table.front().size() - 1);
  out.p_value = chi_square_survival(out.statistic, out.dof);
  return out;
}

}  // namespace tracegen
