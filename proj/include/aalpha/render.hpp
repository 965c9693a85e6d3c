#pragma once

#include "aalpha/classify.hpp"
#include "aalpha/model.hpp"

#include <complex>
#include <string>
#include <vector>

namespace aalpha {

struct RenderSpec {
  int size_px = 800;
  double stroke = 1.0;
  double hair_stroke = 0.7;
  bool invert_radius = false;  // visual flag only; data is never inverted
  int thinning = 1;            // draw every k-th angle
};

// Polar hair plot: one radial segment per angle. A profile whose hairs all
// vanish degenerates to a closed curve; capped hairs get their own style.
std::string render_polar(const GapProfile& g, const RenderSpec& spec);

// Lower/upper envelope curves over the fundamental domain, with escape bands.
std::string render_rectangular(const EnvelopePair& pair, const RenderSpec& spec);

// Orbit of the critical value -4/27 under z -> e^{2 pi i a} z + (27/16) e^{4 pi i a} z^2,
// truncated at |z| > 10.
std::vector<std::complex<double>> quadratic_orbit(double alpha, long iterations);

// Scatter panel of an orbit, for side-by-side qualitative viewing.
std::string render_orbit(const std::vector<std::complex<double>>& orbit,
                         const RenderSpec& spec);

// Deterministic rasterization of an SVG-free line list; helper for PNG export.
struct RasterLine {
  double x0, y0, x1, y1;
  unsigned char r, g, b;
};

void write_png(const std::string& path, int width, int height,
               const std::vector<RasterLine>& lines);

// Rasterized variants of the vector renderers.
void render_polar_png(const GapProfile& g, const RenderSpec& spec,
                      const std::string& path);
void render_rectangular_png(const EnvelopePair& pair, const RenderSpec& spec,
                            const std::string& path);

}  // namespace aalpha
