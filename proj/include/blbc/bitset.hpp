#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace blbc::detail {

/// Fixed-size bitset with the size chosen at runtime.
class Bitset {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }

  void set(std::size_t k) { words_[k / 64] |= std::uint64_t{1} << (k % 64); }
  void reset(std::size_t k) { words_[k / 64] &= ~(std::uint64_t{1} << (k % 64)); }
  bool test(std::size_t k) const { return (words_[k / 64] >> (k % 64)) & 1U; }

  bool none() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Lowest set bit at position >= from, or npos.
  std::size_t next(std::size_t from) const {
    if (from >= bits_) return npos;
    std::size_t w = from / 64;
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from % 64));
    while (true) {
      if (word) return w * 64 + static_cast<std::size_t>(std::countr_zero(word));
      if (++w == words_.size()) return npos;
      word = words_[w];
    }
  }
  std::size_t first() const { return next(0); }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  /// this &= ~o
  Bitset& subtract(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

  static std::size_t intersection_count(const Bitset& a, const Bitset& b) {
    std::size_t c = 0;
    for (std::size_t k = 0; k < a.words_.size(); ++k) {
      c += static_cast<std::size_t>(std::popcount(a.words_[k] & b.words_[k]));
    }
    return c;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace blbc::detail
