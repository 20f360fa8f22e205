#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "holeperc/bitfield.hpp"
#include "holeperc/lattice.hpp"

namespace holeperc {

// Open/closed state of every face in Lambda^n, in canonical face order.
// Faces outside the window are closed.
struct Configuration {
  Window window;
  BitField open_faces;
  std::optional<double> p_label;
  std::optional<std::uint64_t> seed;

  explicit Configuration(const Window& w)
      : window(w), open_faces(static_cast<std::size_t>(w.num_faces())) {}
  Configuration(const Window& w, BitField bits);

  bool is_open(const Face& q) const;
  void set_open(const Face& q, bool open = true);
  std::size_t open_count() const { return open_faces.count(); }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// One uniform X_Q in [0,1) per in-window face.
struct UniformField {
  Window window;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
};

struct SimulationParams {
  double p = 0.5;
  int d = 2;
  int n = 8;
  std::int64_t replicates = 100;
  std::uint64_t seed = 1;

  Window window() const { return Window(d, n); }
  // Throws std::invalid_argument for p outside [0,1], bad d/n, replicates < 1.
  void validate() const;
};

// Each in-window face open independently with probability p, using the face
// stream; equal to threshold(coupled_field(w, seed, r), p) bit for bit.
Configuration sample_configuration(const SimulationParams& params, std::int64_t replicate_index);

UniformField coupled_field(const Window& w, std::uint64_t seed, std::uint64_t replicate_index = 0);

// Opens exactly the faces with X_Q < p.
Configuration threshold(const UniformField& field, double p);

// Dual-bond states drawn directly: bond (indexed by its face) open with
// probability q, on an independent stream.
BitField sample_dual_bonds(const Window& w, double q, std::uint64_t seed,
                           std::int64_t replicate_index);

// Snapshot file format (all integers little-endian):
//   magic "HOLEPERC" | u32 version | u32 d | u32 n | u32 flags
//   | f64 p_label | u64 seed | u64 face_count | ceil(face_count/8) bit bytes
// flags bit 0: p_label present, bit 1: seed present. Absent fields are zero.
inline constexpr std::uint32_t kSnapshotVersion = 1;

std::vector<std::uint8_t> encode_snapshot(const Configuration& cfg);
// Throws std::runtime_error on malformed input.
Configuration decode_snapshot(const std::vector<std::uint8_t>& bytes);

void save_snapshot(const Configuration& cfg, const std::string& path);
Configuration load_snapshot(const std::string& path);

}  // namespace holeperc
