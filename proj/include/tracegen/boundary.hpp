#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <thread>
#include <vector>

#include "tracegen/error.hpp"
#include "tracegen/mobius.hpp"
#include "tracegen/model.hpp"
#include "tracegen/random.hpp"
#include "tracegen/sampler.hpp"
#include "tracegen/trace.hpp"

namespace tracegen {

struct StreamOptions {
  /// Accept a one-letter alphabet and emit a1, a1.a1, ...
  bool allow_trivial = false;
  /// Pivot rule used inside the block sampler.
  PivotStrategy pivot = PivotStrategy::lowest_index;
};

/// Endless generator of xi_1 <= xi_2 <= ... approximating an infinite trace
/// under the uniform measure at infinity.
///
/// Block k is V_k . a1 where V_k is drawn over the alphabet Sigma - a1 at
/// p = p_Sigma, conditioned on max(V_k) being inside Lk(a1). Block k uses the
/// child stream (seed, k) only, so blocks can be produced in any order or in
/// parallel and reassembled into the same xi_k.
class BlockStream {
 public:
  BlockStream(const IndependenceModel& model, Letter a1, std::uint64_t seed, StreamOptions options = {})
      : model_(std::make_shared<const IndependenceModel>(model)),
        pivot_(a1),
        seed_(seed),
        root_stream_(seed),
        accumulated_(*model_) {
    if (model_->empty()) throw Error(Errc::empty_alphabet, "cannot stream over an empty alphabet");
    model_->check(a1);
    if (!is_irreducible(*model_)) throw Error(Errc::not_irreducible, "the dependence graph is not connected");
    p_star_ = smallest_root(*model_, model_->alphabet());
    LetterSet rest = model_->alphabet().without(a1);
    if (rest.empty()) {
      if (!options.allow_trivial) {
        throw Error(Errc::invalid_argument,
                    "one-letter alphabet: the only infinite trace is a1 a1 ...; use the allow-trivial option to emit it");
      }
      return;
    }
    sub_root_ = smallest_root(*model_, rest);
    if (!(p_star_ < sub_root_ - kRootMargin)) {
      throw Error(Errc::gap_violation, "p_Sigma = " + detail::format_real(p_star_) +
                                           " is not below p_{Sigma - a1} = " + detail::format_real(sub_root_));
    }
    SamplerParams params;
    params.p = p_star_;
    params.pivot = options.pivot;
    params.seed = seed;
    sampler_ = std::make_shared<const FiniteSampler>(model_, params, rest);
  }

  const IndependenceModel& model() const { return *model_; }
  Letter pivot() const { return pivot_; }
  std::uint64_t seed() const { return seed_; }
  double p_star() const { return p_star_; }
  /// Smallest root over Sigma - a1; infinite for the trivial one-letter stream.
  double sub_root() const { return sub_root_; }
  bool trivial() const { return sampler_ == nullptr; }

  /// Alphabet and max-constraint handed to the block sampler.
  LetterSet block_alphabet() const { return model_->alphabet().without(pivot_); }
  LetterSet block_target() const { return model_->link(pivot_); }

  const Trace& accumulated() const { return accumulated_.current(); }
  std::size_t block_count() const { return block_count_; }
  std::uint64_t steps() const { return steps_; }

  /// Block number `index` (0-based); depends on (seed, index) only.
  Trace block_at(std::size_t index, SampleStats* stats = nullptr) const {
    TraceBuilder b(*model_);
    if (sampler_) {
      RandomStream stream = root_stream_.split(index);
      sampler_->sample_into(block_alphabet(), block_target(), stream, b, stats);
    }
    b.push(pivot_);
    if (stats) ++stats->steps;
    return std::move(b).take();
  }

  /// Draws the next block and extends xi; returns the block.
  Trace next_block(SampleStats* stats = nullptr) {
    SampleStats local;
    Trace block = block_at(block_count_, &local);
    accumulated_.append(block);
    ++block_count_;
    steps_ += local.steps;
    if (stats) {
      stats->steps += local.steps;
      if (!stats->root_call) stats->root_call = local.root_call;
    }
    return block;
  }

  const Trace& run(std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) next_block();
    return accumulated();
  }

 private:
  std::shared_ptr<const IndependenceModel> model_;
  Letter pivot_;
  std::uint64_t seed_;
  RandomStream root_stream_;
  double p_star_ = 1.0;
  double sub_root_ = std::numeric_limits<double>::infinity();
  std::shared_ptr<const FiniteSampler> sampler_;
  TraceBuilder accumulated_;
  std::size_t block_count_ = 0;
  std::uint64_t steps_ = 0;
};

inline BlockStream open_stream(const IndependenceModel& model, Letter a1, std::uint64_t seed, StreamOptions options = {}) {
  return BlockStream(model, a1, seed, options);
}

/// Blocks [first, first + count) of `stream`, computed by `workers` threads.
inline std::vector<Trace> parallel_blocks(const BlockStream& stream, std::size_t first, std::size_t count,
                                          std::size_t workers) {
  if (workers == 0) throw Error(Errc::invalid_argument, "workers must be at least 1");
  std::vector<Trace> blocks(count);
  workers = std::min(workers, std::max<std::size_t>(count, 1));
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < count; i += workers) blocks[i] = stream.block_at(first + i);
  };
  if (workers == 1) {
    work(0);
    return blocks;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  pool.clear();
  return blocks;
}

/// xi_k assembled from blocks produced in parallel; identical to BlockStream::run(k).
inline Trace parallel_run(const IndependenceModel& model, Letter a1, std::uint64_t seed, std::size_t k,
                          std::size_t workers, StreamOptions options = {}) {
  BlockStream stream(model, a1, seed, options);
  auto blocks = parallel_blocks(stream, 0, k, workers);
  TraceBuilder xi(stream.model());
  for (const auto& b : blocks) xi.append(b);
  return std::move(xi).take();
}

}  // namespace tracegen
