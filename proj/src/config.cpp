#include "holeperc/config.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "holeperc/rng.hpp"

namespace holeperc {

Configuration::Configuration(const Window& w, BitField bits) : window(w), open_faces(std::move(bits)) {
  if (open_faces.size() != static_cast<std::size_t>(w.num_faces())) {
    throw std::invalid_argument("bit-field length does not match the window face count");
  }
}

bool Configuration::is_open(const Face& q) const {
  if (!contains(window, q)) return false;
  return open_faces.test(static_cast<std::size_t>(face_index(window, q)));
}

void Configuration::set_open(const Face& q, bool open) {
  open_faces.set(static_cast<std::size_t>(face_index(window, q)), open);
}

void SimulationParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  (void)Window(d, n);
  if (replicates < 1) throw std::invalid_argument("replicates must be positive");
}

Configuration sample_configuration(const SimulationParams& params, std::int64_t replicate_index) {
  params.validate();
  if (replicate_index < 0 || replicate_index >= params.replicates) {
    throw std::out_of_range("replicate index outside [0, replicates)");
  }
  Configuration cfg(params.window());
  const auto faces = static_cast<std::uint32_t>(cfg.open_faces.size());
  const auto r = static_cast<std::uint64_t>(replicate_index);
  for (std::uint32_t f = 0; f < faces; ++f) {
    if (keyed_uniform(params.seed, Stream::faces, r, f) < params.p) cfg.open_faces.set(f);
  }
  cfg.p_label = params.p;
  cfg.seed = params.seed;
  return cfg;
}

UniformField coupled_field(const Window& w, std::uint64_t seed, std::uint64_t replicate_index) {
  UniformField field{w, std::vector<double>(static_cast<std::size_t>(w.num_faces())), seed,
                     replicate_index};
  for (std::size_t f = 0; f < field.values.size(); ++f) {
    field.values[f] = keyed_uniform(seed, Stream::faces, replicate_index, static_cast<std::uint32_t>(f));
  }
  return field;
}

Configuration threshold(const UniformField& field, double p) {
  Configuration cfg(field.window);
  for (std::size_t f = 0; f < field.values.size(); ++f) {
    if (field.values[f] < p) cfg.open_faces.set(f);
  }
  cfg.p_label = p;
  cfg.seed = field.seed;
  return cfg;
}

BitField sample_dual_bonds(const Window& w, double q, std::uint64_t seed, std::int64_t replicate_index) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("dual bond probability must lie in [0,1]");
  BitField bonds(static_cast<std::size_t>(w.num_faces()));
  const auto r = static_cast<std::uint64_t>(replicate_index);
  for (std::size_t f = 0; f < bonds.size(); ++f) {
    if (keyed_uniform(seed, Stream::dual_bonds, r, static_cast<std::uint32_t>(f)) < q) bonds.set(f);
  }
  return bonds;
}

// ---------------------------------------------------------------------------
// Snapshot files

namespace {

constexpr char kMagic[8] = {'H', 'O', 'L', 'E', 'P', 'E', 'R', 'C'};
constexpr std::size_t kHeaderSize = 8 + 4 * 4 + 8 + 8 + 8;

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * i)));
  }
}

template <typename T>
T get_le(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{in[pos + i]} << (8 * i);
  pos += sizeof(T);
  return static_cast<T>(v);
}

}  // namespace

std::vector<std::uint8_t> encode_snapshot(const Configuration& cfg) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_le<std::uint32_t>(out, kSnapshotVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(cfg.window.d()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(cfg.window.n()));
  const std::uint32_t flags = (cfg.p_label ? 1u : 0u) | (cfg.seed ? 2u : 0u);
  put_le<std::uint32_t>(out, flags);
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(cfg.p_label.value_or(0.0)));
  put_le<std::uint64_t>(out, cfg.seed.value_or(0));
  put_le<std::uint64_t>(out, cfg.open_faces.size());
  const auto bits = cfg.open_faces.to_bytes();
  out.insert(out.end(), bits.begin(), bits.end());
  return out;
}

Configuration decode_snapshot(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("not a holeperc snapshot");
  }
  std::size_t pos = sizeof(kMagic);
  const auto version = get_le<std::uint32_t>(bytes, pos);
  if (version != kSnapshotVersion) {
    throw std::runtime_error("unsupported snapshot version " + std::to_string(version));
  }
  const auto d = get_le<std::uint32_t>(bytes, pos);
  const auto n = get_le<std::uint32_t>(bytes, pos);
  const auto flags = get_le<std::uint32_t>(bytes, pos);
  const auto p_bits = get_le<std::uint64_t>(bytes, pos);
  const auto seed = get_le<std::uint64_t>(bytes, pos);
  const auto count = get_le<std::uint64_t>(bytes, pos);
  if (flags & ~3u) throw std::runtime_error("unknown snapshot flags");
  if (!(flags & 1u) && p_bits != 0) throw std::runtime_error("absent p_label must be zero");
  if (!(flags & 2u) && seed != 0) throw std::runtime_error("absent seed must be zero");

  if (d > static_cast<std::uint32_t>(kMaxDim) || n > (1u << 20)) throw std::runtime_error("snapshot window out of range");
  std::optional<Window> parsed;
  try {
    parsed.emplace(static_cast<int>(d), static_cast<int>(n));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("snapshot window: ") + e.what());
  }
  const Window w = *parsed;
  if (count != static_cast<std::uint64_t>(w.num_faces())) {
    throw std::runtime_error("snapshot face count does not match d and n");
  }
  if (bytes.size() != kHeaderSize + (count + 7) / 8) throw std::runtime_error("snapshot length mismatch");
  BitField bits;
  try {
    bits = BitField::from_bytes(std::span(bytes).subspan(kHeaderSize), count);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
  Configuration cfg(w, std::move(bits));
  if (flags & 1u) cfg.p_label = std::bit_cast<double>(p_bits);
  if (flags & 2u) cfg.seed = seed;
  return cfg;
}

void save_snapshot(const Configuration& cfg, const std::string& path) {
  const auto bytes = encode_snapshot(cfg);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Configuration load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

}  // namespace holeperc
