#include "holeperc/bitfield.hpp"

#include <stdexcept>

namespace holeperc {

std::vector<std::uint8_t> BitField::to_bytes() const {
  std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
  }
  return out;
}

BitField BitField::from_bytes(std::span<const std::uint8_t> bytes, std::size_t size) {
  if (bytes.size() != (size + 7) / 8) throw std::invalid_argument("bit-field byte length mismatch");
  BitField out(size);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    out.words_[i / 8] |= std::uint64_t{bytes[i]} << (8 * (i % 8));
  }
  const BitField trimmed = [&] {
    BitField t = out;
    t.trim();
    return t;
  }();
  if (!(trimmed == out)) throw std::invalid_argument("bit-field padding bits must be zero");
  return out;
}

}  // namespace holeperc
