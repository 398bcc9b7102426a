#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "tda/persistence.hpp"

namespace tda {

struct SvgOptions {
  int width = 640;
  int height = 400;
  int margin = 40;
};

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace detail

/// Barcode as SVG: one horizontal segment per bar, degrees in separate bands
/// (lowest degree on top), infinite bars run to the right margin and end in an
/// arrowhead. Output depends only on the barcode and the canvas size.
inline std::string render_svg(const Barcode& bc, const SvgOptions& opt = {}) {
  using detail::fmt;
  const double w = opt.width, h = opt.height, m = opt.margin;
  const double x0 = m, x1 = w - m, y0 = m, y1 = h - m;

  double lo = 0, hi = 1;
  bool first = true;
  for (const auto& b : bc.bars()) {
    for (double v : {b.birth, b.death}) {
      if (std::isinf(v)) continue;
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      first = false;
    }
  }
  if (!(hi > lo)) hi = lo + 1;
  // grades grow to the right; superlevel barcodes are drawn mirrored
  const auto xpos = [&](double v) {
    const double t = (v - lo) / (hi - lo);
    return bc.descending() ? x1 - 20 - t * (x1 - x0 - 20) : x0 + t * (x1 - x0 - 20);
  };

  std::map<int, std::vector<Bar>> bands;
  for (const auto& b : bc.bars()) bands[b.dim].push_back(b);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) + "\" height=\"" +
         std::to_string(opt.height) + "\" viewBox=\"0 0 " + std::to_string(opt.width) + " " +
         std::to_string(opt.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x1) + "\" y2=\"" + fmt(y1) + "\"/>\n";
  out += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x0) + "\" y2=\"" + fmt(y1) + "\"/>\n";
  out += "</g>\n";
  out += "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">\n";
  for (double v : {lo, hi}) {
    out += "<text x=\"" + fmt(xpos(v)) + "\" y=\"" + fmt(y1 + 14) + "\">" + fmt(v) + "</text>\n";
  }
  out += "</g>\n";

  const double band_h = bands.empty() ? 0 : (y1 - y0) / static_cast<double>(bands.size());
  std::size_t band = 0;
  for (const auto& [dim, bars] : bands) {
    const double top = y0 + band_h * static_cast<double>(band);
    const double step = band_h / static_cast<double>(bars.size() + 1);
    out += "<g class=\"band\" data-dim=\"" + std::to_string(dim) + "\" stroke=\"black\" stroke-width=\"2\">\n";
    out += "<text x=\"" + fmt(x0 - 6) + "\" y=\"" + fmt(top + band_h / 2) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\" stroke=\"none\">H" +
           std::to_string(dim) + "</text>\n";
    for (std::size_t k = 0; k < bars.size(); ++k) {
      const auto& b = bars[k];
      const double y = top + step * static_cast<double>(k + 1);
      const double xa = xpos(b.birth);
      if (b.is_infinite()) {
        const double tip = bc.descending() ? x0 : x1;
        const double back = bc.descending() ? tip + 8 : tip - 8;
        out += "<line class=\"bar infinite\" x1=\"" + fmt(xa) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(back) +
               "\" y2=\"" + fmt(y) + "\"/>\n";
        out += "<polygon class=\"arrow\" stroke=\"none\" points=\"" + fmt(tip) + "," + fmt(y) + " " + fmt(back) + "," +
               fmt(y - 4) + " " + fmt(back) + "," + fmt(y + 4) + "\"/>\n";
      } else {
        out += "<line class=\"bar\" x1=\"" + fmt(xa) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(xpos(b.death)) +
               "\" y2=\"" + fmt(y) + "\"/>\n";
      }
    }
    out += "</g>\n";
    ++band;
  }
  out += "</svg>\n";
  return out;
}

inline void write_svg(const Barcode& bc, const std::string& path, const SvgOptions& opt = {}) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  os << render_svg(bc, opt);
  if (!os) throw Error("cannot write " + path);
}

}  // namespace tda
