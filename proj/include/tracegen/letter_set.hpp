#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace tracegen {

/// Index of a letter inside an IndependenceModel alphabet.
using Letter = unsigned;

inline constexpr std::size_t kMaxLetters = 64;

/// Subset of an alphabet of at most 64 letters, stored as one machine word.
class LetterSet {
 public:
  constexpr LetterSet() = default;
  constexpr explicit LetterSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr LetterSet single(Letter a) { return LetterSet(std::uint64_t{1} << a); }
  /// The first `n` letters {0, ..., n-1}.
  static constexpr LetterSet first(std::size_t n) {
    return LetterSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(Letter a) const { return (bits_ >> a) & 1u; }
  constexpr bool intersects(LetterSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool subset_of(LetterSet o) const { return (bits_ & ~o.bits_) == 0; }

  /// Lowest letter; the set must be non-empty.
  constexpr Letter lowest() const { return static_cast<Letter>(std::countr_zero(bits_)); }

  constexpr LetterSet& insert(Letter a) {
    bits_ |= std::uint64_t{1} << a;
    return *this;
  }
  constexpr LetterSet& erase(Letter a) {
    bits_ &= ~(std::uint64_t{1} << a);
    return *this;
  }
  constexpr LetterSet without(Letter a) const { return LetterSet(bits_ & ~(std::uint64_t{1} << a)); }
  constexpr LetterSet with(Letter a) const { return LetterSet(bits_ | (std::uint64_t{1} << a)); }

  constexpr LetterSet operator|(LetterSet o) const { return LetterSet(bits_ | o.bits_); }
  constexpr LetterSet operator&(LetterSet o) const { return LetterSet(bits_ & o.bits_); }
  constexpr LetterSet operator-(LetterSet o) const { return LetterSet(bits_ & ~o.bits_); }
  constexpr LetterSet& operator|=(LetterSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr LetterSet& operator&=(LetterSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr LetterSet& operator-=(LetterSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }

  constexpr auto operator<=>(const LetterSet&) const = default;

  class iterator {
   public:
    using value_type = Letter;
    using difference_type = std::ptrdiff_t;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr Letter operator*() const { return static_cast<Letter>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  /// Iterates letters in increasing index order.
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace tracegen

template <>
struct std::hash<tracegen::LetterSet> {
  std::size_t operator()(tracegen::LetterSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};
