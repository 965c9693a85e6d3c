#include "aalpha/render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace aalpha {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

std::string f6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct SvgDoc {
  std::ostringstream os;
  SvgDoc(int w, int h) {
    os << "<?xml version=\"1.0\" standalone=\"no\"?>\n"
       << "<svg width=\"" << w << "\" height=\"" << h
       << "\" version=\"1.1\" xmlns=\"http://www.w3.org/2000/svg\">\n"
       << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  }
  void line(double x0, double y0, double x1, double y1, const char* color,
            double width) {
    os << "<line x1=\"" << f6(x0) << "\" y1=\"" << f6(y0) << "\" x2=\"" << f6(x1)
       << "\" y2=\"" << f6(y1) << "\" stroke=\"" << color << "\" stroke-width=\""
       << f6(width) << "\"/>\n";
  }
  void circle(double cx, double cy, double r, const char* color, double width) {
    os << "<circle cx=\"" << f6(cx) << "\" cy=\"" << f6(cy) << "\" r=\"" << f6(r)
       << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
       << f6(width) << "\"/>\n";
  }
  void dot(double cx, double cy, double r, const char* color) {
    os << "<circle cx=\"" << f6(cx) << "\" cy=\"" << f6(cy) << "\" r=\"" << f6(r)
       << "\" fill=\"" << color << "\"/>\n";
  }
  void poly(const std::vector<std::pair<double, double>>& pts, const char* color,
            double width, bool close) {
    if (pts.empty()) return;
    os << (close ? "<polygon" : "<polyline") << " points=\"";
    for (auto& [x, y] : pts) os << f6(x) << "," << f6(y) << " ";
    os << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
       << f6(width) << "\"/>\n";
  }
  std::string str() {
    os << "</svg>\n";
    return os.str();
  }
};

}  // namespace

std::string render_polar(const GapProfile& g, const RenderSpec& spec) {
  if (g.outer.empty()) raise(Errc::EmptyProfile, "nothing to draw");
  int px = spec.size_px;
  double c = px / 2.0;
  // radial scale: fit the largest finite hair tip with a margin
  double rmax = 1.0;
  for (size_t k = 0; k < g.outer.size(); ++k)
    if (std::isfinite(g.outer[k])) rmax = std::max(rmax, g.outer[k]);
  rmax *= 1.1;
  double scale = (px / 2.0 - 4.0) / rmax;
  auto tr = [&](double radius) {
    if (spec.invert_radius && radius > 0.0)
      return std::min(rmax, 1.0 / std::max(radius, 1.0 / rmax));
    return radius;
  };

  SvgDoc doc(px, px);
  bool hairy = g.normalization == GapProfile::Normalization::HairyCircle;
  int res = g.resolution;

  // degenerate (Jordan) case: all hairs within stroke width of the circle
  double longest = 0.0;
  for (size_t k = 0; k < g.outer.size(); ++k)
    if (!g.capped[k] && std::isfinite(g.outer[k]))
      longest = std::max(longest, g.outer[k] - g.inner[k]);

  if (hairy) doc.circle(c, c, 1.0 * scale, "black", spec.stroke);
  std::vector<std::pair<double, double>> loop;
  for (int k = 0; k < res; k += std::max(1, spec.thinning)) {
    double th = kTwoPi * (double)k / res;
    double ca = std::cos(th), sa = std::sin(th);
    size_t i = (size_t)k;
    if (g.capped[i]) {
      // certified full-ray hair: distinct style out to the plot edge
      double r0 = hairy ? tr(g.inner[i]) : 0.0;
      double r1 = hairy ? rmax : (spec.invert_radius ? rmax : tr(std::isfinite(g.outer[i]) ? g.outer[i] : 0.0));
      if (!hairy && !spec.invert_radius) {
        doc.dot(c + scale * r1 * ca, c - scale * r1 * sa, spec.hair_stroke * 1.5, "red");
        doc.line(c, c, c + scale * r1 * ca, c - scale * r1 * sa, "red", spec.hair_stroke);
      } else {
        doc.line(c + scale * r0 * ca, c - scale * r0 * sa, c + scale * r1 * ca,
                 c - scale * r1 * sa, "red", spec.hair_stroke);
      }
      continue;
    }
    double r0 = tr(g.inner[i]);
    double r1 = tr(g.outer[i]);
    loop.emplace_back(c + scale * r1 * ca, c - scale * r1 * sa);
    if (r1 - r0 > 1e-6)
      doc.line(c + scale * r0 * ca, c - scale * r0 * sa, c + scale * r1 * ca,
               c - scale * r1 * sa, "black", spec.hair_stroke);
  }
  if (longest * scale < 2.0 * spec.stroke) doc.poly(loop, "black", spec.stroke, true);
  return doc.str();
}

std::string render_rectangular(const EnvelopePair& pair, const RenderSpec& spec) {
  const BoundaryProfile& lo = pair.lower;
  const BoundaryProfile& up = pair.upper;
  if (lo.values.empty()) raise(Errc::EmptyProfile, "nothing to draw");
  int w = spec.size_px, h = (2 * spec.size_px) / 3;
  double vmax = 0.1;
  for (size_t i = 0; i < lo.values.size(); ++i) {
    if (!lo.escaped[i] && !lo.unbounded[i]) vmax = std::max(vmax, lo.values[i]);
    if (i < up.values.size() && !up.escaped[i] && !up.unbounded[i])
      vmax = std::max(vmax, up.values[i]);
  }
  vmax = std::min(vmax * 1.15 + 0.05, lo.cap * 1.2);
  double vmin = -1.05;
  auto X = [&](size_t i) { return (double)i / lo.resolution * (w - 8) + 4.0; };
  auto Y = [&](double v) {
    v = std::min(v, vmax);
    return h - 4.0 - (v - vmin) / (vmax - vmin) * (h - 8);
  };

  SvgDoc doc(w, h);
  // escape bands first, then curves
  for (size_t i = 0; i < lo.values.size(); ++i) {
    if (lo.escaped[i]) {
      doc.os << "<rect x=\"" << f6(X(i) - 0.5 * (double)(w - 8) / lo.resolution)
             << "\" y=\"4\" width=\"" << f6((double)(w - 8) / lo.resolution)
             << "\" height=\"" << f6((double)h - 8) << "\" fill=\"#ffcccc\"/>\n";
    }
  }
  doc.line(4, Y(0.0), w - 4, Y(0.0), "#cccccc", 0.5);
  std::vector<std::pair<double, double>> lpts, upts;
  for (size_t i = 0; i < lo.values.size(); ++i)
    if (!lo.escaped[i]) lpts.emplace_back(X(i), Y(lo.values[i]));
  for (size_t i = 0; i < up.values.size(); ++i)
    if (!up.escaped[i] && !up.unbounded[i]) upts.emplace_back(X(i), Y(up.values[i]));
  doc.poly(upts, "#d08020", spec.stroke, false);
  doc.poly(lpts, "#2060c0", spec.stroke, false);
  return doc.str();
}

std::vector<std::complex<double>> quadratic_orbit(double alpha, long iterations) {
  if (iterations < 1) raise(Errc::ConfigError, "need at least one iterate");
  std::vector<std::complex<double>> out;
  out.reserve((size_t)std::min<long>(iterations, 1 << 20));
  std::complex<double> rot = std::polar(1.0, kTwoPi * alpha);
  std::complex<double> z(-4.0 / 27.0, 0.0);
  for (long i = 0; i < iterations; ++i) {
    out.push_back(z);
    z = rot * z + (27.0 / 16.0) * rot * rot * z * z;
    if (std::abs(z) > 10.0) break;  // escaped; truncate
  }
  return out;
}

std::string render_orbit(const std::vector<std::complex<double>>& orbit,
                         const RenderSpec& spec) {
  int px = spec.size_px;
  double m = 1e-6;
  for (auto& z : orbit) m = std::max({m, std::abs(z.real()), std::abs(z.imag())});
  m *= 1.1;
  double c = px / 2.0, scale = (px / 2.0 - 4.0) / m;
  SvgDoc doc(px, px);
  for (size_t i = 0; i < orbit.size(); i += (size_t)std::max(1, spec.thinning))
    doc.dot(c + scale * orbit[i].real(), c - scale * orbit[i].imag(), 0.6, "#203080");
  doc.dot(c, c, 1.5, "black");
  return doc.str();
}

// ---- raster export ----------------------------------------------------------

void write_png(const std::string& path, int width, int height,
               const std::vector<RasterLine>& lines) {
  std::vector<unsigned char> buf((size_t)width * height * 3, 255);
  auto put = [&](int x, int y, unsigned char r, unsigned char g, unsigned char b) {
    if (x < 0 || y < 0 || x >= width || y >= height) return;
    size_t o = 3 * ((size_t)y * width + x);
    buf[o] = r;
    buf[o + 1] = g;
    buf[o + 2] = b;
  };
  for (const auto& L : lines) {
    // fixed-step DDA; deterministic across runs
    double dx = L.x1 - L.x0, dy = L.y1 - L.y0;
    int steps = (int)std::ceil(std::max(std::abs(dx), std::abs(dy))) + 1;
    for (int s = 0; s <= steps; ++s) {
      double t = (double)s / steps;
      put((int)std::lround(L.x0 + t * dx), (int)std::lround(L.y0 + t * dy), L.r,
          L.g, L.b);
    }
  }
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) raise(Errc::ConfigError, "cannot open '" + path + "' for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    raise(Errc::ConfigError, "png encoding failed");
  }
  png_init_io(png, fp);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, (png_uint_32)width, (png_uint_32)height, 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y)
    png_write_row(png, buf.data() + 3 * (size_t)y * width);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

namespace {

void polar_lines(const GapProfile& g, const RenderSpec& spec,
                 std::vector<RasterLine>& out, int px) {
  double c = px / 2.0;
  double rmax = 1.0;
  for (size_t k = 0; k < g.outer.size(); ++k)
    if (std::isfinite(g.outer[k])) rmax = std::max(rmax, g.outer[k]);
  rmax *= 1.1;
  double scale = (px / 2.0 - 4.0) / rmax;
  bool hairy = g.normalization == GapProfile::Normalization::HairyCircle;
  for (int k = 0; k < g.resolution; k += std::max(1, spec.thinning)) {
    double th = kTwoPi * (double)k / g.resolution;
    double ca = std::cos(th), sa = std::sin(th);
    size_t i = (size_t)k;
    if (g.capped[i]) {
      double r1 = hairy ? rmax : 0.0;
      out.push_back({c, c, c + scale * r1 * ca, c - scale * r1 * sa, 200, 30, 30});
      continue;
    }
    out.push_back({c + scale * g.inner[i] * ca, c - scale * g.inner[i] * sa,
                   c + scale * g.outer[i] * ca, c - scale * g.outer[i] * sa, 0, 0, 0});
  }
}

}  // namespace

void render_polar_png(const GapProfile& g, const RenderSpec& spec,
                      const std::string& path) {
  std::vector<RasterLine> lines;
  polar_lines(g, spec, lines, spec.size_px);
  write_png(path, spec.size_px, spec.size_px, lines);
}

void render_rectangular_png(const EnvelopePair& pair, const RenderSpec& spec,
                            const std::string& path) {
  const BoundaryProfile& lo = pair.lower;
  int w = spec.size_px, h = (2 * spec.size_px) / 3;
  double vmax = 0.1;
  for (size_t i = 0; i < lo.values.size(); ++i)
    if (!lo.escaped[i] && !lo.unbounded[i]) vmax = std::max(vmax, lo.values[i]);
  vmax = vmax * 1.15 + 0.05;
  double vmin = -1.05;
  auto X = [&](size_t i) { return (double)i / lo.resolution * (w - 8) + 4.0; };
  auto Y = [&](double v) {
    v = std::min(v, vmax);
    return h - 4.0 - (v - vmin) / (vmax - vmin) * (h - 8);
  };
  std::vector<RasterLine> lines;
  for (size_t i = 0; i + 1 < lo.values.size(); ++i) {
    if (!lo.escaped[i] && !lo.escaped[i + 1])
      lines.push_back({X(i), Y(lo.values[i]), X(i + 1), Y(lo.values[i + 1]), 32, 96, 192});
    const BoundaryProfile& up = pair.upper;
    if (i + 1 < up.values.size() && !up.escaped[i] && !up.escaped[i + 1] &&
        !up.unbounded[i] && !up.unbounded[i + 1])
      lines.push_back({X(i), Y(up.values[i]), X(i + 1), Y(up.values[i + 1]), 208, 128, 32});
  }
  write_png(path, w, h, lines);
}

}  // namespace aalpha
