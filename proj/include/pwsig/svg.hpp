#pragma once

#include "pwsig/pwmap.hpp"

#include <cstdio>
#include <string>

namespace pwsig {

namespace detail {

inline std::string svg_coord(const Rational& r, double scale, double origin, bool flip_axis) {
  const double v = r.convert_to<double>();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", flip_axis ? origin - v * scale : origin + v * scale);
  return buf;
}

}  // namespace detail

/// Graph of h on the unit square: one segment per piece (interior action)
/// and one filled circle per breakpoint image. Coordinates are rounded for
/// display only.
inline std::string render_svg(const PwMap& h, double size = 400.0, double margin = 20.0) {
  const double side = size - 2 * margin;
  auto x = [&](const Rational& v) { return detail::svg_coord(v, side, margin, false); };
  auto y = [&](const Rational& v) { return detail::svg_coord(v, side, size - margin, true); };
  const std::string dim = std::to_string(static_cast<int>(size));

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + dim + "\" height=\"" + dim + "\" viewBox=\"0 0 " +
         dim + " " + dim + "\">\n";
  out += "  <rect x=\"" + x(0) + "\" y=\"" + y(1) + "\" width=\"" + std::to_string(side) + "\" height=\"" +
         std::to_string(side) + "\" fill=\"none\" stroke=\"#999\"/>\n";
  out += "  <g class=\"pieces\" stroke=\"#1f4e99\" stroke-width=\"2\">\n";
  for (const auto& p : h.pieces()) {
    out += "    <line x1=\"" + x(p.source.left()) + "\" y1=\"" + y(p.at(p.source.left())) + "\" x2=\"" +
           x(p.source.right()) + "\" y2=\"" + y(p.at(p.source.right())) + "\"/>\n";
  }
  out += "  </g>\n";
  out += "  <g class=\"points\" fill=\"#c0392b\">\n";
  for (std::size_t k = 0; k < h.piece_count(); ++k) {
    out += "    <circle cx=\"" + x(h.piece(k).source.left()) + "\" cy=\"" + y(h.point_image(k)) + "\" r=\"3\"/>\n";
  }
  out += "  </g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace pwsig
