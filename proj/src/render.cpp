#include "holeperc/render.hpp"

#include <sstream>
#include <stdexcept>

#include "holeperc/clusters.hpp"
#include "holeperc/holes.hpp"

namespace holeperc {

namespace {

constexpr int kScale = 24;
constexpr int kMargin = 12;

std::string escape_comment(const std::string& s) {
  std::string out;
  for (char c : s) out += c == '-' ? '_' : c;
  return out;
}

}  // namespace

std::string render_svg(const Configuration& cfg, const RunHeader& header) {
  if (cfg.window.d() != 2) throw std::invalid_argument("rendering supports d = 2 only");
  const int n = cfg.window.n();
  const int size = 2 * n * kScale + 2 * kMargin;
  const auto geo = geometry_for(cfg.window);
  const ClusterLabeling dual = dual_clusters(cfg);
  const HoleGraph graph = build_hole_graph(cfg, dual);

  auto px = [&](int x) { return kMargin + (x + n) * kScale; };
  auto py = [&](int y) { return kMargin + (n - y) * kScale; };
  auto center = [&](std::int32_t v) {
    const DualVertex c = vertex_at(cfg.window, v);
    return std::pair<int, int>{px(c.coords[0]) + kScale / 2, py(c.coords[1]) - kScale / 2};
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<!-- holeperc format_version=" << kReportFormatVersion;
  for (const auto& [k, v] : header) os << ' ' << escape_comment(k) << '=' << escape_comment(v);
  os << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";

  os << "<g id=\"cells\" stroke=\"none\">\n";
  for (std::int32_t v = 0; v < geo->num_vertices(); ++v) {
    const bool in_hole = graph.hole_of_vertex[static_cast<std::size_t>(v)] >= 0;
    const DualVertex c = vertex_at(cfg.window, v);
    os << "<rect x=\"" << px(c.coords[0]) << "\" y=\"" << py(c.coords[1] + 1) << "\" width=\"" << kScale
       << "\" height=\"" << kScale << "\" fill=\"" << (in_hole ? "#bcd7f5" : "#e6e6e6") << "\"/>\n";
  }
  os << "</g>\n";

  os << "<rect x=\"" << px(-n) << "\" y=\"" << py(n) << "\" width=\"" << 2 * n * kScale << "\" height=\""
     << 2 * n * kScale << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";

  os << "<g id=\"faces\" stroke=\"black\" stroke-width=\"3\" stroke-linecap=\"round\">\n";
  for (std::int64_t f = 0; f < cfg.window.num_faces(); ++f) {
    if (!cfg.open_faces.test(static_cast<std::size_t>(f))) continue;
    const Face q = face_at(cfg.window, f);
    const int x0 = q.anchor[0];
    const int y0 = q.anchor[1];
    const int x1 = q.axis == 0 ? x0 : x0 + 1;
    const int y1 = q.axis == 1 ? y0 : y0 + 1;
    os << "<line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x1) << "\" y2=\"" << py(y1)
       << "\"/>\n";
  }
  os << "</g>\n";

  os << "<g id=\"hole-graph\" stroke=\"#1f4e9a\" stroke-width=\"1.5\" fill=\"#1f4e9a\">\n";
  for (const auto& [a, b] : graph.edges) {
    const auto [ax, ay] = center(graph.holes[static_cast<std::size_t>(a)].members.front());
    const auto [bx, by] = center(graph.holes[static_cast<std::size_t>(b)].members.front());
    os << "<line x1=\"" << ax << "\" y1=\"" << ay << "\" x2=\"" << bx << "\" y2=\"" << by << "\"/>\n";
  }
  for (const Hole& h : graph.holes) {
    const auto [cx, cy] = center(h.members.front());
    os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"3\"/>\n";
  }
  os << "</g>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace holeperc
