#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tracegen/error.hpp"
#include "tracegen/letter_set.hpp"

namespace tracegen {

/// An alphabet together with a reflexive, symmetric dependence relation.
///
/// Letters are addressed by their index in the alphabet. Two distinct letters
/// commute in the trace monoid iff they are independent.
class IndependenceModel {
 public:
  IndependenceModel() = default;

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  LetterSet alphabet() const { return LetterSet::first(names_.size()); }

  const std::string& name(Letter a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }

  /// The link of `a`: every letter b with (a, b) in the dependence relation.
  LetterSet link(Letter a) const {
    check(a);
    return dependence_[a];
  }
  bool depends(Letter a, Letter b) const { return dependence_[a].contains(b); }

  std::optional<Letter> find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return static_cast<Letter>(i);
    }
    return std::nullopt;
  }

  Letter index_of(std::string_view name) const {
    if (auto a = find(name)) return *a;
    throw Error(Errc::unknown_letter, "'" + std::string(name) + "' is not in the alphabet");
  }

  LetterSet subset(const std::vector<std::string>& letters) const {
    LetterSet s;
    for (const auto& l : letters) s.insert(index_of(l));
    return s;
  }

  void check(Letter a) const {
    if (a >= names_.size()) {
      throw Error(Errc::unknown_letter, "letter index " + std::to_string(a) + " out of range");
    }
  }

  /// The sub-model induced on `keep`, letters renumbered in increasing order.
  IndependenceModel restricted(LetterSet keep) const {
    keep &= alphabet();
    IndependenceModel out;
    std::vector<int> remap(names_.size(), -1);
    for (Letter a : keep) {
      remap[a] = static_cast<int>(out.names_.size());
      out.names_.push_back(names_[a]);
    }
    out.dependence_.resize(out.names_.size());
    for (Letter a : keep) {
      for (Letter b : dependence_[a] & keep) {
        out.dependence_[static_cast<std::size_t>(remap[a])].insert(static_cast<Letter>(remap[b]));
      }
    }
    return out;
  }

  friend IndependenceModel build_model(const std::vector<std::string>& letters,
                                       const std::vector<std::pair<std::string, std::string>>& dependence_pairs);

  bool operator==(const IndependenceModel&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<LetterSet> dependence_;
};

/// Builds a model from user input, closing the pair list reflexively and symmetrically.
inline IndependenceModel build_model(const std::vector<std::string>& letters,
                                     const std::vector<std::pair<std::string, std::string>>& dependence_pairs) {
  if (letters.size() > kMaxLetters) {
    throw Error(Errc::alphabet_too_large,
                std::to_string(letters.size()) + " letters, at most " + std::to_string(kMaxLetters) + " supported");
  }
  IndependenceModel m;
  for (const auto& l : letters) {
    if (m.find(l)) throw Error(Errc::duplicate_letter, "'" + l + "' appears twice");
    m.names_.push_back(l);
  }
  m.dependence_.resize(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) m.dependence_[i].insert(static_cast<Letter>(i));
  for (const auto& [x, y] : dependence_pairs) {
    Letter a = m.index_of(x);
    Letter b = m.index_of(y);
    m.dependence_[a].insert(b);
    m.dependence_[b].insert(a);
  }
  return m;
}

/// True iff the members of `s` are pairwise independent.
inline bool is_clique(const IndependenceModel& model, LetterSet s) {
  for (Letter a : s) {
    if ((model.link(a) & s) != LetterSet::single(a)) return false;
  }
  return true;
}

namespace detail {

template <typename Visit>
void for_each_clique(const IndependenceModel& model, LetterSet chosen, LetterSet candidates, Visit& visit) {
  if (candidates.empty()) {
    visit(chosen);
    return;
  }
  Letter a = candidates.lowest();
  for_each_clique(model, chosen, candidates.without(a), visit);
  for_each_clique(model, chosen.with(a), candidates - model.link(a), visit);
}

}  // namespace detail

/// Calls `visit(clique)` once for every independent subset of `x`, the empty one included.
template <typename Visit>
void for_each_clique(const IndependenceModel& model, LetterSet x, Visit&& visit) {
  detail::for_each_clique(model, LetterSet{}, x & model.alphabet(), visit);
}

inline std::vector<LetterSet> cliques(const IndependenceModel& model, LetterSet x) {
  std::vector<LetterSet> out;
  for_each_clique(model, x, [&](LetterSet c) { out.push_back(c); });
  return out;
}

}  // namespace tracegen
