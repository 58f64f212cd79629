#include "qtau/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace qtau {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<DensitySample> sample_scaled_density(const QParam& qp,
                                                 const ConvPowerTable& table,
                                                 double x_max,
                                                 std::size_t grid_points) {
  if (!(x_max > 0.0) || !std::isfinite(x_max)) {
    throw std::domain_error("sample_scaled_density: need x_max > 0");
  }
  if (grid_points < 2) {
    throw std::domain_error("sample_scaled_density: need at least 2 points");
  }
  const double L = qp.log_inv_q();

  // Breakpoints strictly inside (0, x_max]; each contributes a left/right
  // pair of rows.
  std::vector<double> breaks;
  for (std::size_t n = 1; static_cast<double>(n) * L <= x_max; ++n) {
    breaks.push_back(static_cast<double>(n) * L);
  }

  std::vector<std::pair<double, std::size_t>> pts;   // (x, forced piece)
  pts.reserve(grid_points + 2 * breaks.size());
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = x_max * static_cast<double>(i) /
                     static_cast<double>(grid_points - 1);
    // A uniform node that collides with a breakpoint is dropped; the pair
    // of breakpoint rows already covers that x.
    bool collides = false;
    for (double bp : breaks) {
      if (std::abs(x - bp) <= 1e-12 * (1.0 + bp)) { collides = true; break; }
    }
    if (!collides) pts.emplace_back(x, piece_index(x, qp));
  }
  for (double bp : breaks) {
    const std::size_t n = piece_index(bp, qp);
    if (n >= 1) pts.emplace_back(bp, n - 1);   // limit from the left
    pts.emplace_back(bp, n);
  }
  std::sort(pts.begin(), pts.end());

  std::vector<DensitySample> out;
  out.reserve(pts.size());
  for (const auto& [x, piece] : pts) {
    out.push_back({x, tau_scaled_on_piece(x, piece, qp, table), piece});
  }
  return out;
}

std::string density_csv(const std::vector<DensitySample>& samples) {
  std::string s = "x,tau_scaled,piece_index\n";
  for (const auto& r : samples) {
    s += format_double(r.x);
    s += ',';
    s += format_double(r.value);
    s += ',';
    s += std::to_string(r.piece);
    s += '\n';
  }
  return s;
}

namespace {

// Fixed canvas; the data-space polyline lives under one affine transform.
constexpr double kW = 720.0, kH = 460.0;
constexpr double kMarginL = 60.0, kMarginR = 20.0;
constexpr double kMarginT = 28.0, kMarginB = 50.0;
constexpr double kYTop = 1.05;   // scaled density lives in [0, 1]

void append_text(std::string& s, double x, double y, const std::string& anchor,
                 const std::string& body) {
  s += "<text x=\"" + format_double(x) + "\" y=\"" + format_double(y) +
       "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"" +
       anchor + "\">" + body + "</text>\n";
}

void append_line(std::string& s, double x1, double y1, double x2, double y2) {
  s += "<line x1=\"" + format_double(x1) + "\" y1=\"" + format_double(y1) +
       "\" x2=\"" + format_double(x2) + "\" y2=\"" + format_double(y2) +
       "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string density_svg(const QParam& qp,
                        const std::vector<DensitySample>& samples,
                        double x_max) {
  if (samples.empty()) {
    throw std::domain_error("density_svg: no samples");
  }
  const double L = qp.log_inv_q();
  const double plot_w = kW - kMarginL - kMarginR;
  const double plot_h = kH - kMarginT - kMarginB;
  const double sx = plot_w / x_max;
  const double sy = plot_h / kYTop;
  const double y0 = kH - kMarginB;   // screen y of data y = 0

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"460\" "
       "viewBox=\"0 0 720 460\">\n";
  s += "<rect width=\"720\" height=\"460\" fill=\"#ffffff\"/>\n";
  append_text(s, kMarginL + plot_w / 2.0, 16.0, "middle",
              "(1-q) tau_q on [0, x_max], q=" + format_double(qp.q()));

  // Axes.
  append_line(s, kMarginL, y0, kMarginL + plot_w, y0);
  append_line(s, kMarginL, y0, kMarginL, kMarginT);

  // x ticks at the lattice points nL (the breakpoints), labelled nL.
  for (std::size_t n = 0; static_cast<double>(n) * L <= x_max; ++n) {
    const double xd = static_cast<double>(n) * L;
    const double xs = kMarginL + xd * sx;
    append_line(s, xs, y0, xs, y0 + 5.0);
    const std::string lbl = (n == 0) ? "0"
                          : (n == 1) ? "L"
                                     : std::to_string(n) + "L";
    append_text(s, xs, y0 + 20.0, "middle", lbl);
  }
  // y ticks.
  for (int i = 0; i <= 4; ++i) {
    const double yd = 0.25 * i;
    const double ys = y0 - yd * sy;
    append_line(s, kMarginL - 5.0, ys, kMarginL, ys);
    append_text(s, kMarginL - 8.0, ys + 4.0, "end", format_double(yd));
  }

  // Data polyline.  Coordinates are the *data* values; the group transform
  // maps them to screen space, and non-scaling-stroke keeps the line width
  // in pixels.  Consecutive duplicate vertices (the breakpoint row pairs
  // carry equal values) are collapsed.
  s += "<g transform=\"translate(" + format_double(kMarginL) + "," +
       format_double(y0) + ") scale(" + format_double(sx) + "," +
       format_double(-sy) + ")\">\n";
  s += "<polyline fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"1.5\" "
       "vector-effect=\"non-scaling-stroke\" points=\"";
  bool first = true;
  double px = 0.0, pv = 0.0;
  for (const auto& r : samples) {
    if (!first && r.x == px && r.value == pv) continue;
    if (!first) s += ' ';
    s += format_double(r.x);
    s += ',';
    s += format_double(r.value);
    px = r.x;
    pv = r.value;
    first = false;
  }
  s += "\"/>\n</g>\n</svg>\n";
  return s;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  f.flush();
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace qtau
