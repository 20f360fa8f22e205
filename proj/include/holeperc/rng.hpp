#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every random
// value is a pure function of (key, counter), so replicate streams do not
// depend on evaluation order or thread count.

#include <array>
#include <cstdint>

namespace holeperc {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

// Independent random streams sharing one seed.
enum class Stream : std::uint32_t {
  faces = 0,       // face uniforms X_Q (configurations and coupled fields)
  dual_bonds = 1,  // directly sampled dual-bond configurations
};

// Uniform double in [0,1) keyed by (seed, stream, replicate, element).
constexpr double keyed_uniform(std::uint64_t seed, Stream stream, std::uint64_t replicate,
                               std::uint32_t element) noexcept {
  const PhiloxKey key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const PhiloxCounter ctr{element, static_cast<std::uint32_t>(stream),
                          static_cast<std::uint32_t>(replicate),
                          static_cast<std::uint32_t>(replicate >> 32)};
  const PhiloxCounter out = philox4x32_10(ctr, key);
  const std::uint64_t bits = (std::uint64_t{out[1]} << 32) | out[0];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace holeperc
