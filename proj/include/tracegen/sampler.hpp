#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tracegen/error.hpp"
#include "tracegen/letter_set.hpp"
#include "tracegen/mobius.hpp"
#include "tracegen/model.hpp"
#include "tracegen/random.hpp"
#include "tracegen/trace.hpp"

namespace tracegen {

enum class PivotStrategy { lowest_index, max_degree, user_list };

/// Strict gap kept between p and the smallest root it must stay below.
inline constexpr double kRootMargin = 1e-9;

struct SamplerParams {
  double p = 0.0;
  PivotStrategy pivot = PivotStrategy::lowest_index;
  std::vector<Letter> pivot_order;  // used by PivotStrategy::user_list
  std::uint64_t seed = 0;
};

/// Abstract cost accounting: one step per call, per geometric unit drawn and
/// per pivot letter appended. Also records the arguments of the outermost call.
struct SampleStats {
  std::uint64_t steps = 0;
  std::optional<std::pair<LetterSet, LetterSet>> root_call;
};

/// Recursive exact sampler of B_{S,p}( . | max(xi) subset of T).
///
/// Draws K pyramids over the pivot a1 by a geometric law, each made of a
/// recursive sample over (S - a1, Lk(a1)) topped with a1, followed by one
/// recursive sample over (S - a1, T). The sampler is immutable; concurrent use
/// only needs one RandomStream per task.
class FiniteSampler {
 public:
  FiniteSampler(std::shared_ptr<const IndependenceModel> model, SamplerParams params,
                std::optional<LetterSet> universe = std::nullopt)
      : model_(std::move(model)),
        params_(std::move(params)),
        universe_(universe.value_or(model_->alphabet()) & model_->alphabet()),
        table_(model_, params_.p) {
    if (model_->empty()) throw Error(Errc::empty_alphabet, "cannot sample over an empty alphabet");
    if (universe_.empty()) throw Error(Errc::empty_alphabet, "sampler universe is empty");
    root_ = smallest_root(table_.polynomial(universe_));
    if (!(params_.p > 0.0) || !(params_.p < root_ - kRootMargin)) {
      throw Error(Errc::p_out_of_range, "p = " + detail::format_real(params_.p) + " must lie in (0, p_S) with p_S = " +
                                            detail::format_real(root_));
    }
    for (Letter a : params_.pivot_order) model_->check(a);
  }

  FiniteSampler(const IndependenceModel& model, SamplerParams params, std::optional<LetterSet> universe = std::nullopt)
      : FiniteSampler(std::make_shared<const IndependenceModel>(model), std::move(params), universe) {}

  const IndependenceModel& model() const { return *model_; }
  std::shared_ptr<const IndependenceModel> model_ptr() const { return model_; }
  const SamplerParams& params() const { return params_; }
  LetterSet universe() const { return universe_; }
  /// Smallest root of the universe's Mobius polynomial.
  double root() const { return root_; }
  const SubsetTable& table() const { return table_; }

  Letter choose_pivot(LetterSet s, LetterSet t) const {
    LetterSet candidates = s & t;
    switch (params_.pivot) {
      case PivotStrategy::lowest_index:
        return candidates.lowest();
      case PivotStrategy::max_degree: {
        Letter best = candidates.lowest();
        std::size_t best_degree = (model_->link(best) & s).size();
        for (Letter a : candidates) {
          std::size_t d = (model_->link(a) & s).size();
          if (d > best_degree) {
            best = a;
            best_degree = d;
          }
        }
        return best;
      }
      case PivotStrategy::user_list:
        for (Letter a : params_.pivot_order) {
          if (candidates.contains(a)) return a;
        }
        return candidates.lowest();
    }
    return candidates.lowest();
  }

  /// r = 1 - mu_S(p) / mu_{S - a1}(p).
  double occurrence(LetterSet s, Letter a1) const { return 1.0 - table_.value(s) / table_.value(s.without(a1)); }

  Trace sample_trace(LetterSet s, LetterSet t, RandomStream& stream, SampleStats* stats = nullptr) const {
    TraceBuilder out(*model_);
    sample_into(s, t, stream, out, stats);
    return std::move(out).take();
  }

  Trace sample(RandomStream& stream, SampleStats* stats = nullptr) const {
    return sample_trace(universe_, universe_, stream, stats);
  }

  /// Appends a sample over (S, T) to `out`; equivalent to out := out . sample.
  void sample_into(LetterSet s, LetterSet t, RandomStream& stream, TraceBuilder& out, SampleStats* stats) const {
    if (!s.subset_of(universe_)) {
      throw Error(Errc::p_out_of_range, "S is not contained in the universe validated for p");
    }
    if (stats && !stats->root_call) stats->root_call.emplace(s, t);
    recurse(s, t, stream, out, stats);
  }

 private:
  void recurse(LetterSet s, LetterSet t, RandomStream& stream, TraceBuilder& out, SampleStats* stats) const {
    if (stats) ++stats->steps;
    if (!s.intersects(t)) return;
    Letter a1 = choose_pivot(s, t);
    LetterSet rest = s.without(a1);
    std::uint64_t k = sample_geometric(occurrence(s, a1), stream);
    if (stats) stats->steps += k;
    LetterSet link = model_->link(a1);
    for (std::uint64_t i = 0; i < k; ++i) {
      recurse(rest, link, stream, out, stats);
      out.push(a1);
      if (stats) ++stats->steps;
    }
    recurse(rest, t, stream, out, stats);
  }

  std::shared_ptr<const IndependenceModel> model_;
  SamplerParams params_;
  LetterSet universe_;
  SubsetTable table_;
  double root_ = 0.0;
};

/// One trace from B_{Sigma,p}.
inline Trace sample(const FiniteSampler& sampler, RandomStream& stream, SampleStats* stats = nullptr) {
  return sampler.sample(stream, stats);
}

}  // namespace tracegen
