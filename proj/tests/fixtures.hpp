#pragma once

// Shared models and brute-force references for the test binaries. The
// references deliberately avoid the library's own algorithms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tracegen.hpp"

namespace fixtures {

using namespace tracegen;

// Path a - b - c - d.
inline IndependenceModel path4() { return build_model({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}}); }
inline IndependenceModel single() { return build_model({"a"}, {}); }
inline IndependenceModel free2() { return build_model({"a", "b"}, {{"a", "b"}}); }
inline IndependenceModel commuting2() { return build_model({"a", "b"}, {}); }
inline IndependenceModel triangle() { return build_model({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}); }
inline IndependenceModel star4() { return build_model({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"a", "d"}}); }
inline IndependenceModel cycle5() {
  return build_model({"a", "b", "c", "d", "e"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "a"}});
}

inline IndependenceModel random_model(std::size_t n, double density, std::mt19937_64& rng) {
  std::vector<std::string> letters;
  for (std::size_t i = 0; i < n; ++i) letters.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::pair<std::string, std::string>> pairs;
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng)) pairs.emplace_back(letters[i], letters[j]);
    }
  }
  return build_model(letters, pairs);
}

/// Connected random model: a random spanning path plus extra edges.
inline IndependenceModel random_connected_model(std::size_t n, double density, std::mt19937_64& rng) {
  std::vector<std::string> letters;
  for (std::size_t i = 0; i < n; ++i) letters.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 1; i < n; ++i) pairs.emplace_back(letters[order[i - 1]], letters[order[i]]);
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng)) pairs.emplace_back(letters[i], letters[j]);
    }
  }
  return build_model(letters, pairs);
}

/// The small models every oracle test runs on.
inline std::vector<std::pair<std::string, IndependenceModel>> test_models() {
  return {{"path4", path4()},     {"single", single()}, {"free2", free2()},   {"commuting2", commuting2()},
          {"triangle", triangle()}, {"star4", star4()},   {"cycle5", cycle5()}};
}

/// Clique polynomial by testing every subset for pairwise independence.
inline std::vector<std::int64_t> brute_mobius(const IndependenceModel& m, LetterSet x) {
  std::vector<std::int64_t> c(x.size() + 1, 0);
  std::vector<Letter> xs(x.begin(), x.end());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << xs.size()); ++mask) {
    bool ok = true;
    int size = 0;
    for (std::size_t i = 0; i < xs.size() && ok; ++i) {
      if (!((mask >> i) & 1)) continue;
      ++size;
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        if (((mask >> j) & 1) && m.depends(xs[i], xs[j])) ok = false;
      }
    }
    if (ok) c[size] += (size % 2 == 0) ? 1 : -1;
  }
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  return c;
}

/// Projections onto every dependent pair; two words are equivalent iff all
/// projections agree.
inline std::map<std::pair<Letter, Letter>, std::vector<Letter>> projections(const IndependenceModel& m,
                                                                            const std::vector<Letter>& w) {
  std::map<std::pair<Letter, Letter>, std::vector<Letter>> out;
  for (Letter a = 0; a < m.size(); ++a) {
    for (Letter b = a; b < m.size(); ++b) {
      if (!m.depends(a, b)) continue;
      auto& proj = out[{a, b}];
      for (Letter c : w) {
        if (c == a || c == b) proj.push_back(c);
      }
    }
  }
  return out;
}

inline bool brute_equivalent(const IndependenceModel& m, const std::vector<Letter>& u, const std::vector<Letter>& v) {
  return projections(m, u) == projections(m, v);
}

/// a is maximal iff its last occurrence has no later dependent letter.
inline LetterSet brute_max(const IndependenceModel& m, const std::vector<Letter>& w) {
  LetterSet out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool top = true;
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (m.depends(w[i], w[j])) top = false;
    }
    if (top) out.insert(w[i]);
  }
  return out;
}

/// Words of length n over the alphabet of m, in lexicographic order.
inline std::vector<std::vector<Letter>> all_words(const IndependenceModel& m, std::size_t n) {
  std::vector<std::vector<Letter>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : out) {
      for (Letter a = 0; a < m.size(); ++a) {
        auto v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<Letter> word(const IndependenceModel& m, std::string_view text) { return parse_word(m, text); }

inline Trace tr(const IndependenceModel& m, std::string_view text) { return normalize(m, text); }

}  // namespace fixtures
