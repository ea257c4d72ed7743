#pragma once

// CSV and SVG emission. Numbers are serialized with 17 significant digits
// (round-trip exact for doubles); nothing time- or locale-dependent is
// written, so identical inputs give byte-identical files.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "ossolve/errors.hpp"
#include "ossolve/greens.hpp"

namespace ossolve::io {

inline std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string fmt_g6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot open " + path + " for writing");
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

// Writes [y, Re(phi), Im(phi), abs(phi)] rows, with an optional
// per-point quadrature error column.
inline void write_grid_csv(const std::string& path,
                           const greens::GridFunction& g,
                           bool with_errors = false) {
  CsvWriter csv(path);
  std::vector<std::string> header = {"y", "Re(phi)", "Im(phi)", "abs(phi)"};
  if (with_errors) header.push_back("quadrature_error");
  csv.row(header);
  for (std::size_t i = 0; i < g.grid.size(); ++i) {
    std::vector<std::string> cells = {
        fmt_g17(g.grid[i]), fmt_g17(g.values[i].real()),
        fmt_g17(g.values[i].imag()), fmt_g17(std::abs(g.values[i]))};
    if (with_errors) {
      cells.push_back(fmt_g17(i < g.errors.size() ? g.errors[i] : 0.0));
    }
    csv.row(cells);
  }
}

// Hand-emitted SVG: a grid of line panels plotting |values| against the
// grid, shared geometry, no external plotting dependency.
inline void write_panel_svg(const std::string& path,
                            const std::vector<greens::GridFunction>& panels,
                            const std::vector<std::string>& titles) {
  const int cols = 2;
  const int rows = static_cast<int>((panels.size() + 1) / 2);
  const double pw = 360, ph = 260, margin = 44;
  const double W = cols * pw, H = rows * ph;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
      << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& g = panels[p];
    const double x0 = (p % cols) * pw + margin;
    const double y0 = (p / cols) * ph + margin * 0.6;
    const double aw = pw - margin - 16, ah = ph - margin - 24;

    double vmax = 0.0;
    for (const auto& v : g.values) vmax = std::max(vmax, std::abs(v));
    if (vmax == 0.0) vmax = 1.0;
    const double gmin = g.grid.front(), gmax = g.grid.back();

    out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<text x=\"" << fmt_g6(x0) << "\" y=\"" << fmt_g6(y0 - 8)
        << "\">" << titles[p] << "</text>\n";
    // axes
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" "
           "points=\""
        << fmt_g6(x0) << "," << fmt_g6(y0) << " " << fmt_g6(x0) << ","
        << fmt_g6(y0 + ah) << " " << fmt_g6(x0 + aw) << ","
        << fmt_g6(y0 + ah) << "\"/>\n";
    out << "<text x=\"" << fmt_g6(x0 + aw - 6) << "\" y=\""
        << fmt_g6(y0 + ah + 16) << "\">" << fmt_g6(gmax) << "</text>\n";
    out << "<text x=\"" << fmt_g6(x0 - 4) << "\" y=\"" << fmt_g6(y0 + 10)
        << "\" text-anchor=\"end\">" << fmt_g6(vmax) << "</text>\n";
    // polyline of |phi|
    out << "<polyline fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"1.2\" "
           "points=\"";
    for (std::size_t i = 0; i < g.grid.size(); ++i) {
      const double px = x0 + (g.grid[i] - gmin) / (gmax - gmin) * aw;
      const double py = y0 + ah - std::abs(g.values[i]) / vmax * ah;
      out << fmt_g6(px) << "," << fmt_g6(py);
      if (i + 1 < g.grid.size()) out << ' ';
    }
    out << "\"/>\n</g>\n";
  }
  out << "</svg>\n";
}

// FNV-1a over a string; stable across runs and platforms.
inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ossolve::io
