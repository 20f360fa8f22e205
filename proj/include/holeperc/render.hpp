#pragma once

#include <string>

#include "holeperc/config.hpp"
#include "holeperc/report_io.hpp"

namespace holeperc {

// SVG of a d=2 configuration: open faces as black segments, holes shaded
// blue, infinity-touching dual clusters grey, hole-graph vertices and edges
// in dark blue. Integer coordinates only, so output is byte-stable.
// Throws std::invalid_argument unless d == 2.
std::string render_svg(const Configuration& cfg, const RunHeader& header = {});

}  // namespace holeperc
