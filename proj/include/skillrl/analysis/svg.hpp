#pragma once

#include <array>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "skillrl/analysis/visitation.hpp"

namespace skillrl {

// Minimal self-contained visitation scatter: CoM points colored by latent
// code on fixed symmetric axes. No plotting dependency.
inline void write_visitation_svg(std::ostream& os, const std::vector<VisitationRecord>& records,
                                 double axis_limit = 30.0, int size_px = 600) {
  static const std::array<const char*, 8> palette = {"#e6194b", "#3cb44b", "#4363d8", "#f58231",
                                                     "#911eb4", "#46f0f0", "#f032e6", "#808000"};
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\"" << size_px
     << "\" viewBox=\"0 0 " << size_px << " " << size_px << "\">\n";
  os << "<rect width=\"" << size_px << "\" height=\"" << size_px << "\" fill=\"white\"/>\n";
  const double half = size_px / 2.0;
  os << "<line x1=\"0\" y1=\"" << half << "\" x2=\"" << size_px << "\" y2=\"" << half
     << "\" stroke=\"#dddddd\"/>\n";
  os << "<line x1=\"" << half << "\" y1=\"0\" x2=\"" << half << "\" y2=\"" << size_px
     << "\" stroke=\"#dddddd\"/>\n";
  char buf[160];
  for (const auto& r : records) {
    if (r.x < -axis_limit || r.x > axis_limit || r.y < -axis_limit || r.y > axis_limit) continue;
    const double px = (r.x / axis_limit) * half + half;
    const double py = half - (r.y / axis_limit) * half;
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1\" fill=\"%s\"/>\n", px, py,
                  palette[static_cast<std::size_t>(r.latent) % palette.size()]);
    os << buf;
  }
  os << "</svg>\n";
}

}  // namespace skillrl
