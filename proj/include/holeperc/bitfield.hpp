#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace holeperc {

// Fixed-length bit vector packed into 64-bit words. Bits past size() are kept
// zero so that word-wise comparisons and popcounts stay exact.
class BitField {
 public:
  BitField() = default;
  explicit BitField(std::size_t size, bool value = false)
      : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    trim();
  }

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  BitField complement() const {
    BitField out = *this;
    for (auto& w : out.words_) w = ~w;
    out.trim();
    return out;
  }

  // Every set bit of *this is also set in other (sizes must match).
  bool is_subset_of(const BitField& other) const noexcept {
    if (other.size_ != size_) return false;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  // Little-endian byte image: bit i lives in byte i/8 at position i%8.
  std::vector<std::uint8_t> to_bytes() const;
  // Throws std::invalid_argument on wrong length or nonzero padding bits.
  static BitField from_bytes(std::span<const std::uint8_t> bytes, std::size_t size);

  friend bool operator==(const BitField&, const BitField&) = default;

 private:
  void trim() noexcept {
    if (size_ % 64 != 0 && !words_.empty()) {
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace holeperc
