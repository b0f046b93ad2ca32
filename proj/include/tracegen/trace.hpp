#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracegen/error.hpp"
#include "tracegen/letter_set.hpp"
#include "tracegen/model.hpp"

namespace tracegen {

/// An element of the trace monoid, held in Cartier-Foata normal form.
///
/// Each factor is a non-empty clique and every letter of factor i+1 depends on
/// some letter of factor i. Two traces are equal iff their factor sequences are.
class Trace {
 public:
  Trace() = default;

  /// Adopts `factors` after checking the normal-form conditions.
  static Trace from_factors(const IndependenceModel& model, std::vector<LetterSet> factors) {
    Trace t;
    t.factors_ = std::move(factors);
    for (LetterSet f : t.factors_) t.length_ += f.size();
    if (!t.is_valid(model)) throw Error(Errc::invalid_argument, "factor sequence is not a Cartier-Foata normal form");
    return t;
  }

  const std::vector<LetterSet>& factors() const { return factors_; }
  std::size_t length() const { return length_; }
  bool empty() const { return length_ == 0; }

  /// Number of occurrences of `a`; a letter occurs at most once per factor.
  std::size_t count(Letter a) const {
    std::size_t n = 0;
    for (LetterSet f : factors_) n += f.contains(a);
    return n;
  }

  std::vector<std::size_t> counts(std::size_t alphabet_size) const {
    std::vector<std::size_t> c(alphabet_size, 0);
    for (LetterSet f : factors_) {
      for (Letter a : f) ++c[a];
    }
    return c;
  }

  /// Letters occurring anywhere in the trace.
  LetterSet support() const {
    LetterSet s;
    for (LetterSet f : factors_) s |= f;
    return s;
  }

  /// The canonical linearization: factors left to right, letters by index.
  std::vector<Letter> letters() const {
    std::vector<Letter> w;
    w.reserve(length_);
    for (LetterSet f : factors_) {
      for (Letter a : f) w.push_back(a);
    }
    return w;
  }

  bool is_valid(const IndependenceModel& model) const {
    std::size_t total = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      LetterSet f = factors_[i];
      if (f.empty() || !f.subset_of(model.alphabet()) || !is_clique(model, f)) return false;
      total += f.size();
      if (i == 0) continue;
      for (Letter b : f) {
        if (!model.link(b).intersects(factors_[i - 1])) return false;
      }
    }
    return total == length_;
  }

  bool operator==(const Trace& o) const { return factors_ == o.factors_; }
  auto operator<=>(const Trace& o) const { return factors_ <=> o.factors_; }

 private:
  friend class TraceBuilder;

  std::vector<LetterSet> factors_;
  std::size_t length_ = 0;
};

/// Grows a trace one letter at a time, like pieces falling onto a heap.
///
/// Keeps, per letter, the height of its topmost piece so that appending a
/// letter costs O(|link(a)|).
class TraceBuilder {
 public:
  explicit TraceBuilder(const IndependenceModel& model) : model_(&model), top_(model.size(), 0) {}

  TraceBuilder(const IndependenceModel& model, Trace start) : TraceBuilder(model) {
    trace_ = std::move(start);
    for (std::size_t i = 0; i < trace_.factors_.size(); ++i) {
      for (Letter a : trace_.factors_[i]) top_[a] = i + 1;
    }
  }

  TraceBuilder& push(Letter a) {
    model_->check(a);
    std::size_t level = 0;
    for (Letter c : model_->link(a)) level = std::max(level, top_[c]);
    if (level == trace_.factors_.size()) trace_.factors_.emplace_back();
    trace_.factors_[level].insert(a);
    top_[a] = level + 1;
    ++trace_.length_;
    return *this;
  }

  TraceBuilder& append(std::span<const Letter> word) {
    for (Letter a : word) push(a);
    return *this;
  }

  TraceBuilder& append(const Trace& y) {
    for (LetterSet f : y.factors()) {
      for (Letter a : f) push(a);
    }
    return *this;
  }

  const Trace& current() const { return trace_; }
  std::size_t length() const { return trace_.length_; }
  Trace take() && { return std::move(trace_); }

 private:
  const IndependenceModel* model_;
  std::vector<std::size_t> top_;
  Trace trace_;
};

inline Trace normalize(const IndependenceModel& model, std::span<const Letter> word) {
  TraceBuilder b(model);
  b.append(word);
  return std::move(b).take();
}

/// Splits user text into letter names: whitespace, commas and parentheses
/// separate tokens when present, otherwise every character is one letter.
inline std::vector<Letter> parse_word(const IndependenceModel& model, std::string_view text) {
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == ',' || c == '(' || c == ')'; };
  std::vector<Letter> word;
  if (std::none_of(text.begin(), text.end(), is_sep)) {
    for (char c : text) word.push_back(model.index_of(std::string_view(&c, 1)));
    return word;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    if (j > i) word.push_back(model.index_of(text.substr(i, j - i)));
    i = j;
  }
  return word;
}

inline Trace normalize(const IndependenceModel& model, std::string_view word) {
  auto letters = parse_word(model, word);
  return normalize(model, std::span<const Letter>(letters));
}

inline Trace concat(const IndependenceModel& model, const Trace& x, const Trace& y) {
  TraceBuilder b(model, x);
  b.append(y);
  return std::move(b).take();
}

/// Labels of the maximal pieces of the heap of `x`.
inline LetterSet max_letters(const IndependenceModel& model, const Trace& x) {
  LetterSet result;
  LetterSet blocked;
  const auto& fs = x.factors();
  for (auto it = fs.rbegin(); it != fs.rend() && blocked != model.alphabet(); ++it) {
    result |= *it - blocked;
    for (Letter a : *it) blocked |= model.link(a);
  }
  return result;
}

/// z with a.z = y when a labels a minimal piece of y, nothing otherwise.
inline std::optional<Trace> left_divide(const IndependenceModel& model, const Trace& y, Letter a) {
  model.check(a);
  if (y.empty() || !y.factors().front().contains(a)) return std::nullopt;
  TraceBuilder b(model);
  bool first = true;
  for (LetterSet f : y.factors()) {
    if (first) {
      f.erase(a);
      first = false;
    }
    for (Letter c : f) b.push(c);
  }
  return std::move(b).take();
}

/// x <= y in the left-divisibility order.
///
/// Consumes the letters of x one by one, each time requiring the letter to be a
/// minimal piece of what is left of y. The remainder of y is never rebuilt: the
/// removed pieces always form a down-closed set, so a letter a is minimal in the
/// remainder iff the first remaining piece of y whose label depends on a is an a.
inline bool is_left_divisor(const IndependenceModel& model, const Trace& x, const Trace& y) {
  if (x.length() > y.length()) return false;
  const auto& yf = y.factors();
  std::vector<LetterSet> removed;
  for (LetterSet f : x.factors()) {
    for (Letter a : f) {
      LetterSet dep = model.link(a);
      bool consumed = false;
      for (std::size_t i = 0; i < yf.size(); ++i) {
        LetterSet gone = i < removed.size() ? removed[i] : LetterSet{};
        LetterSet live = (yf[i] - gone) & dep;
        if (live.empty()) continue;
        // letters of one factor are independent, so if `a` is live here it is alone in `live`
        if (live.contains(a)) {
          if (removed.size() <= i) removed.resize(i + 1);
          removed[i].insert(a);
          consumed = true;
        }
        break;
      }
      if (!consumed) return false;
    }
  }
  return true;
}

inline bool is_pyramidal(const IndependenceModel& model, const Trace& x, Letter a1) {
  model.check(a1);
  return x.count(a1) == 1 && max_letters(model, x) == LetterSet::single(a1);
}

/// x = u_0 . ... . u_{k-1} . remainder with every u_i a1-pyramidal and a1 absent from the remainder.
struct PyramidalDecomposition {
  std::vector<Trace> pyramids;
  Trace remainder;
};

inline PyramidalDecomposition pyramidal_decompose(const IndependenceModel& model, const Trace& x, Letter a1) {
  model.check(a1);
  PyramidalDecomposition out;
  std::vector<Letter> rest = x.letters();
  while (true) {
    auto first = std::find(rest.begin(), rest.end(), a1);
    if (first == rest.end()) break;
    // Pieces at or below the first a1: a backward scan over the linearization,
    // a piece is below the marked ones iff it depends on a marked label.
    auto pos = static_cast<std::size_t>(first - rest.begin());
    std::vector<bool> below(pos + 1, false);
    below[pos] = true;
    LetterSet blocked = model.link(a1);
    for (std::size_t j = pos; j-- > 0;) {
      if (blocked.contains(rest[j])) {
        below[j] = true;
        blocked |= model.link(rest[j]);
      }
    }
    TraceBuilder pyramid(model);
    std::vector<Letter> next;
    next.reserve(rest.size() - 1);
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (j <= pos && below[j]) {
        pyramid.push(rest[j]);
      } else {
        next.push_back(rest[j]);
      }
    }
    out.pyramids.push_back(std::move(pyramid).take());
    rest = std::move(next);
  }
  out.remainder = normalize(model, std::span<const Letter>(rest));
  return out;
}

/// "(a d)(b)(c)(b d)(a)"; the unit is the empty string.
inline std::string to_brackets(const IndependenceModel& model, const Trace& x) {
  std::string s;
  for (LetterSet f : x.factors()) {
    s += '(';
    bool first = true;
    for (Letter a : f) {
      if (!first) s += ' ';
      s += model.name(a);
      first = false;
    }
    s += ')';
  }
  return s;
}

}  // namespace tracegen
