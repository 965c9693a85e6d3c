#include "aalpha/render.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

using namespace aalpha;

namespace {

GapProfile single_hair() {
  GapProfile g;
  g.normalization = GapProfile::Normalization::HairyCircle;
  g.resolution = 8;
  g.inner.assign(8, 1.0);
  g.outer.assign(8, 1.0);
  g.capped.assign(8, 0);
  g.outer[2] = 2.0;  // one hair of radial length 1
  return g;
}

size_t count_substr(const std::string& text, const std::string& pat) {
  size_t n = 0, pos = 0;
  while ((pos = text.find(pat, pos)) != std::string::npos) {
    ++n;
    pos += pat.size();
  }
  return n;
}

}  // namespace

TEST_CASE("single hair renders as one radial segment of the right length") {
  GapProfile g = single_hair();
  RenderSpec spec;
  spec.size_px = 400;
  std::string svg = render_polar(g, spec);
  CHECK(count_substr(svg, "<line") == 1);
  // parse the one line back out and measure it
  auto p = svg.find("<line");
  double x1, y1, x2, y2;
  REQUIRE(std::sscanf(svg.c_str() + p,
                      "<line x1=\"%lf\" y1=\"%lf\" x2=\"%lf\" y2=\"%lf\"", &x1,
                      &y1, &x2, &y2) == 4);
  double len = std::hypot(x2 - x1, y2 - y1);
  // radial unit length in pixels: (px/2 - 4)/(2 * 1.1)
  double unit = (200.0 - 4.0) / (2.0 * 1.1);
  CHECK(len == doctest::Approx(unit).epsilon(1e-6));
}

TEST_CASE("jordan gap profile degenerates to a closed curve") {
  DigitStream g = DigitStream::periodic(1, -1, {{3, -1}});
  AlphaContext ctx = enclose_alphas(g, 26, 20);
  EnvelopePair pair = profile_limit(ctx, -1, 16, 256);
  GapProfile gp = gap_profile(pair, GapProfile::Normalization::HairyCircle);
  RenderSpec spec;
  std::string svg = render_polar(gp, spec);
  CHECK(count_substr(svg, "<polygon") == 1);
  // all hair segments are below stroke scale: none drawn beyond the circle
  CHECK(count_substr(svg, "<line") == 0);
}

TEST_CASE("bouquet rendering marks capped hairs distinctly") {
  GapProfile g;
  g.normalization = GapProfile::Normalization::Bouquet;
  g.resolution = 16;
  g.inner.assign(16, 0.0);
  g.outer.assign(16, 0.5);
  g.capped.assign(16, 0);
  g.capped[3] = 1;
  g.outer[3] = 1e-9;
  g.capped[11] = 1;
  g.outer[11] = 1e-9;
  std::string svg = render_polar(g, RenderSpec{});
  CHECK(count_substr(svg, "\"red\"") >= 2);
}

TEST_CASE("rectangular rendering emits both envelope curves") {
  DigitStream g = DigitStream::periodic(0, 1, {{2, 1}});
  AlphaContext ctx = enclose_alphas(g, 20, 20);
  EnvelopePair pair = profile_limit(ctx, -1, 12, 128);
  std::string svg = render_rectangular(pair, RenderSpec{});
  CHECK(count_substr(svg, "<polyline") == 2);
}

TEST_CASE("outputs are byte-identical across repeated runs") {
  DigitStream g = DigitStream::periodic(1, -1, {{3, -1}});
  AlphaContext ctx = enclose_alphas(g, 20, 20);
  EnvelopePair pair = profile_limit(ctx, -1, 10, 128);
  GapProfile gp = gap_profile(pair, GapProfile::Normalization::HairyCircle);
  CHECK(render_polar(gp, RenderSpec{}) == render_polar(gp, RenderSpec{}));
  CHECK(render_rectangular(pair, RenderSpec{}) ==
        render_rectangular(pair, RenderSpec{}));
}

TEST_CASE("critical orbit starts at the critical value") {
  auto orb = quadratic_orbit(0.618034, 16);
  REQUIRE(!orb.empty());
  CHECK(orb[0].real() == doctest::Approx(-4.0 / 27.0).epsilon(1e-15));
  CHECK(orb[0].imag() == 0.0);
}

TEST_CASE("parabolic input keeps the orbit bounded toward the fixed point") {
  auto orb = quadratic_orbit(0.0, 4096);
  CHECK(orb.size() == 4096);
  for (auto& z : orb) CHECK(std::abs(z) <= 1.0);
  CHECK(std::abs(orb.back()) < std::abs(orb.front()));
}

TEST_CASE("golden rotation orbit stays bounded over many iterates") {
  auto orb = quadratic_orbit(0.6180339887498949, 100000);
  CHECK(orb.size() == 100000);
  double worst = 0.0;
  for (auto& z : orb) worst = std::max(worst, std::abs(z));
  CHECK(worst <= 1.0);  // frozen bound from the first certified run
}

TEST_CASE("png export writes a parseable file header") {
  GapProfile g = single_hair();
  std::string path = "test_render_out.png";
  render_polar_png(g, RenderSpec{.size_px = 64}, path);
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  unsigned char sig[8] = {0};
  f.read((char*)sig, 8);
  CHECK(sig[0] == 0x89);
  CHECK(sig[1] == 'P');
  CHECK(sig[2] == 'N');
  CHECK(sig[3] == 'G');
  std::remove(path.c_str());
}

TEST_CASE("empty profiles raise") {
  GapProfile g;
  CHECK_THROWS_AS(render_polar(g, RenderSpec{}), Error);
}
