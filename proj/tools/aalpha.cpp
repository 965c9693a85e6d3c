#include "aalpha/arith.hpp"
#include "aalpha/cfrac.hpp"
#include "aalpha/classify.hpp"
#include "aalpha/jsonfmt.hpp"
#include "aalpha/model.hpp"
#include "aalpha/render.hpp"
#include "aalpha/verify.hpp"
#include "aalpha/ymap.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace aalpha;

namespace {

int errc_exit_code(Errc c) { return 10 + (int)c; }

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) raise(Errc::ConfigError, "cannot open '" + path + "'");
  f << text;
}

uint64_t fnv1a_str(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string default_cache_dir() {
  const char* env = std::getenv("AALPHA_CACHE_DIR");
  return env ? env : "";
}

// model-pair cache: JSON blob with a content checksum; corrupt or mismatched
// entries are recomputed with a warning
std::string cache_key(const std::string& spec, int level, int J, int res,
                      double cap) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s|n=%d|J=%d|res=%d|cap=%s", spec.c_str(),
                level, J, res, fmt_double(cap).c_str());
  char out[32];
  std::snprintf(out, sizeof out, "%016llx", (unsigned long long)fnv1a_str(buf));
  return out;
}

std::string pair_to_json(const EnvelopePair& pair) {
  std::string payload = "{\"lower\":" + pair.lower.to_json() +
                        ",\"upper\":" + pair.upper.to_json() +
                        ",\"gap_bound\":" + json_str(fmt_double(pair.gap_bound)) + "}";
  return payload;
}

bool cache_load(const std::string& dir, const std::string& key, EnvelopePair& out) {
  if (dir.empty()) return false;
  fs::path p = fs::path(dir) / (key + ".json");
  std::ifstream f(p, std::ios::binary);
  if (!f) return false;
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  auto nl = text.find('\n');
  if (nl == std::string::npos) return false;
  std::string want = text.substr(0, nl);
  std::string payload = text.substr(nl + 1);
  char sum[32];
  std::snprintf(sum, sizeof sum, "%016llx", (unsigned long long)fnv1a_str(payload));
  if (want != std::string("#") + sum) {
    std::cerr << "warning: cache entry " << p.string() << " corrupt, recomputing\n";
    return false;
  }
  try {
    nlohmann::json j = nlohmann::json::parse(payload);
    out.lower = BoundaryProfile::from_json(j.at("lower").dump());
    out.upper = BoundaryProfile::from_json(j.at("upper").dump());
    std::string gb = j.at("gap_bound").get<std::string>();
    out.gap_bound = gb == "inf" ? std::numeric_limits<double>::infinity() : std::stod(gb);
  } catch (const std::exception&) {
    std::cerr << "warning: cache entry " << p.string() << " unreadable, recomputing\n";
    return false;
  }
  return true;
}

void cache_store(const std::string& dir, const std::string& key,
                 const EnvelopePair& pair) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::string payload = pair_to_json(pair);
  char sum[32];
  std::snprintf(sum, sizeof sum, "%016llx", (unsigned long long)fnv1a_str(payload));
  std::ofstream f(fs::path(dir) / (key + ".json"), std::ios::binary);
  f << "#" << sum << "\n" << payload;
}

struct CommonOpts {
  std::string stream_spec;
  int depth = 40;
  int guard = 24;
  int levels_J = 12;
  int horizon = 12;
  int resolution = 512;
  double cap = 50.0;
  double tol = 1e-9;
  double c12 = 2.0;
  std::string precision = "double";
  std::string cache_dir = default_cache_dir();
  std::string out_path;
  std::string format = "json";
};

AlphaContext clamped_context(const DigitStream& st, int depth, int guard) {
  long avail = st.available_depth();
  int g = (int)std::min<long>(guard, std::max<long>(0, avail - depth));
  int d = (int)std::min<long>(depth, avail - g);
  return enclose_alphas(st, d, g);
}

EnvelopePair computed_pair(const DigitStream& st, const CommonOpts& o, int level) {
  std::string key = cache_key(st.spec_string(), level, o.levels_J, o.resolution, o.cap);
  EnvelopePair pair;
  if (cache_load(o.cache_dir, key, pair)) return pair;
  AlphaContext ctx = clamped_context(st, o.depth, o.guard);
  pair = profile_limit(ctx, level, o.levels_J, o.resolution, o.cap, o.c12);
  cache_store(o.cache_dir, key, pair);
  return pair;
}

int run(int argc, char** argv) {
  CLI::App app{"arithmetic attractor models from modified continued fractions"};
  app.require_subcommand(1);
  CommonOpts o;

  auto add_common = [&](CLI::App* sub, bool needs_stream) {
    if (needs_stream)
      sub->add_option("stream", o.stream_spec,
                      "stream spec: periodic:head=(1,-1);body=[(3,-1)] | "
                      "real:0.618;prec=256 | growth:expsqrt;seed=43")
          ->required();
    sub->add_option("--depth", o.depth, "context depth (levels)");
    sub->add_option("--guard", o.guard, "extra digits sharpening the backward seed");
    sub->add_option("--levels", o.levels_J, "recursion depth J");
    sub->add_option("--horizon", o.horizon, "criterion horizon M");
    sub->add_option("--resolution", o.resolution, "grid samples per unit");
    sub->add_option("--cap", o.cap, "escape cap H_max");
    sub->add_option("--tol", o.tol, "tolerance knob");
    sub->add_option("--c12", o.c12, "working constant for the upper seed");
    sub->add_option("--precision", o.precision, "double | extended")
        ->check(CLI::IsMember({"double", "extended"}));
    sub->add_option("--cache-dir", o.cache_dir, "profile cache directory");
    sub->add_option("--out", o.out_path, "output path ('-' = stdout)");
    sub->add_option("--format", o.format, "json | csv | svg | png")
        ->check(CLI::IsMember({"json", "csv", "svg", "png"}));
  };

  auto* c_expand = app.add_subcommand("expand", "digit listing of a stream");
  add_common(c_expand, true);
  auto* c_classify = app.add_subcommand("classify", "trichotomy verdict with evidence");
  add_common(c_classify, true);
  auto* c_arith = app.add_subcommand("classify-arith", "Brjuno and iterate checks only");
  add_common(c_arith, true);
  auto* c_model = app.add_subcommand("model", "envelope pair at level -1");
  add_common(c_model, true);
  int model_level = -1;
  c_model->add_option("--level", model_level, "profile level n");
  auto* c_render = app.add_subcommand("render", "figures for a stream");
  add_common(c_render, true);
  std::string render_mode = "polar";
  c_render->add_option("--mode", render_mode, "polar | rect | orbit")
      ->check(CLI::IsMember({"polar", "rect", "orbit"}));
  bool invert_radius = false;
  c_render->add_flag("--invert-radius", invert_radius, "visual-only radial flip");
  auto* c_orbit = app.add_subcommand("orbit", "critical orbit of the quadratic");
  add_common(c_orbit, true);
  long iterations = 4096;
  c_orbit->add_option("--iterations", iterations, "orbit length");
  auto* c_verify = app.add_subcommand("verify", "run the property suites");
  uint64_t seed = 20240901ull;
  c_verify->add_option("--seed", seed, "generator seed (recorded in the report)");
  c_verify->add_option("--precision", o.precision, "double | extended")
      ->check(CLI::IsMember({"double", "extended"}));
  c_verify->add_option("--out", o.out_path, "output path");
  auto* c_ymap = app.add_subcommand("ymap-eval", "debug: evaluate the half-plane map");
  double yr = 0.1, yx = 0.0, yy = 0.0;
  c_ymap->add_option("--r", yr)->required();
  c_ymap->add_option("--x", yx);
  c_ymap->add_option("--y", yy);
  c_ymap->add_option("--precision", o.precision);
  c_ymap->add_option("--out", o.out_path);

  CLI11_PARSE(app, argc, argv);

  if (c_expand->parsed()) {
    DigitStream st = DigitStream::parse(o.stream_spec);
    long n = std::min<long>(o.depth, st.available_depth());
    if (o.format == "csv") {
      std::string out = "n,a,eps_next\n";
      for (long i = 0; i < n; ++i) {
        const Digit& d = st.digit(i);
        out += std::to_string(i) + "," +
               (d.exact ? std::to_string(d.a) : "~exp(" + fmt_double(d.log_a.as_interval().mid()) + ")") +
               "," + std::to_string(d.eps_next) + "\n";
      }
      write_file(o.out_path, out);
    } else {
      std::string out = "{\"stream\":" + st.to_json() + ",\"head\":[" +
                        std::to_string(st.head_a()) + "," + std::to_string(st.head_eps()) +
                        "],\"digits\":[";
      for (long i = 0; i < n; ++i) {
        const Digit& d = st.digit(i);
        if (i) out += ",";
        if (d.exact)
          out += "[" + std::to_string(d.a) + "," + std::to_string(d.eps_next) + "]";
        else
          out += "[" + json_str("e^" + fmt_double(d.log_a.as_interval().mid())) + "," +
                 std::to_string(d.eps_next) + "]";
      }
      out += "]}\n";
      write_file(o.out_path, out);
    }
    return 0;
  }

  if (c_classify->parsed()) {
    DigitStream st = DigitStream::parse(o.stream_spec);
    ClassifyPolicy pol;
    pol.depth = o.depth;
    pol.guard = o.guard;
    pol.horizon = o.horizon;
    pol.envelope_J = o.levels_J;
    pol.resolution = o.resolution;
    pol.cap = o.cap;
    pol.c12_working = o.c12;
    ModelClass mc = classify(st, pol);
    write_file(o.out_path, mc.to_json() + "\n");
    return 0;
  }

  if (c_arith->parsed()) {
    DigitStream st = DigitStream::parse(o.stream_spec);
    AlphaContext ctx = clamped_context(st, o.depth, o.guard);
    int terms = std::min(24, ctx.depth - 1);
    BrjunoSum bs = brjuno(ctx, 0, terms);
    int hor = std::min(o.horizon, ctx.depth - 2);
    HermanVerdict hh = herman_check_h(ctx, 0, hor);
    HermanVerdict hy = herman_check_y(ctx, 0.01, hor);
    auto hj = [](const HermanVerdict& v) {
      std::string kind = v.kind == HermanVerdict::Kind::SatisfiedAt ? "SatisfiedAt"
                         : v.kind == HermanVerdict::Kind::FailedUpTo ? "FailedUpTo"
                                                                     : "UnresolvedUpTo";
      return "{\"kind\":" + json_str(kind) + ",\"witness_m\":" + std::to_string(v.index) +
             ",\"values\":" + json_double_array(v.witness) + "}";
    };
    std::string out = "{\"brjuno\":{\"partial\":" + json_interval(bs.partial.as_interval());
    out += ",\"tail\":" + std::string(bs.tail_bound ? json_interval(*bs.tail_bound) : "null");
    out += ",\"verdict\":" + json_str(bs.divergent_certified ? "Divergent"
                                      : bs.tail_bound ? "Convergent" : "PartialOnly");
    out += "},\"herman\":" + hj(hh) + ",\"herman_halfplane\":" + hj(hy) + "}\n";
    write_file(o.out_path, out);
    return 0;
  }

  if (c_model->parsed()) {
    DigitStream st = DigitStream::parse(o.stream_spec);
    if (o.levels_J < 1) {
      // depth-0 request: the base strip profile
      AlphaContext ctx = enclose_alphas(st, std::max(model_level + 1, 2), o.guard);
      BoundaryProfile base = profile_base(ctx, std::max(model_level, 0), o.resolution, o.cap);
      write_file(o.out_path, base.to_json() + "\n");
      return 0;
    }
    EnvelopePair pair = computed_pair(st, o, model_level);
    write_file(o.out_path, pair_to_json(pair) + "\n");
    return 0;
  }

  if (c_render->parsed()) {
    DigitStream st = DigitStream::parse(o.stream_spec);
    RenderSpec spec;
    spec.invert_radius = invert_radius;
    std::string base = o.out_path.empty() ? "aalpha_out" : o.out_path;
    std::string sidecar = "{\"stream\":" + st.to_json() + ",\"mode\":" + json_str(render_mode) +
                          ",\"levels\":" + std::to_string(o.levels_J) +
                          ",\"resolution\":" + std::to_string(o.resolution) +
                          ",\"cap\":" + json_str(fmt_double(o.cap)) + "}\n";
    if (render_mode == "orbit") {
      Interval a = evaluate(st, std::min<int>(o.depth, (int)st.available_depth()));
      auto orb = quadratic_orbit(a.mid(), iterations);
      write_file(base + ".svg", render_orbit(orb, spec));
      write_file(base + ".provenance.json", sidecar);
      return 0;
    }
    EnvelopePair pair = computed_pair(st, o, -1);
    if (render_mode == "rect") {
      if (o.format == "png")
        render_rectangular_png(pair, spec, base + ".png");
      else
        write_file(base + ".svg", render_rectangular(pair, spec));
    } else {
      ClassifyPolicy pol;
      pol.depth = o.depth;
      pol.envelope_J = o.levels_J;
      pol.resolution = o.resolution;
      pol.cap = o.cap;
      ModelClass mc = classify(st, pol);
      auto mode = mc.verdict == ModelClass::Verdict::CantorBouquet
                      ? GapProfile::Normalization::Bouquet
                      : GapProfile::Normalization::HairyCircle;
      GapProfile g = gap_profile(pair, mode);
      if (o.format == "png")
        render_polar_png(g, spec, base + ".png");
      else
        write_file(base + ".svg", render_polar(g, spec));
    }
    write_file(base + ".provenance.json", sidecar);
    return 0;
  }

  if (c_orbit->parsed()) {
    DigitStream st = DigitStream::parse(o.stream_spec);
    Interval a = evaluate(st, std::min<int>(o.depth, (int)st.available_depth()));
    auto orb = quadratic_orbit(a.mid(), iterations);
    if (o.format == "csv") {
      std::string out = "re,im\n";
      for (auto& z : orb)
        out += fmt_double(z.real()) + "," + fmt_double(z.imag()) + "\n";
      write_file(o.out_path, out);
    } else {
      std::string out = "{\"alpha\":" + json_str(fmt_double(a.mid())) + ",\"points\":[";
      for (size_t i = 0; i < orb.size(); ++i) {
        if (i) out += ",";
        out += "[" + json_str(fmt_double(orb[i].real())) + "," +
               json_str(fmt_double(orb[i].imag())) + "]";
      }
      out += "]}\n";
      write_file(o.out_path, out);
    }
    return 0;
  }

  if (c_verify->parsed()) {
    bool ext = o.precision == "extended";
    auto results = run_property_suites(seed, ext);
    std::string table = properties_table(results, seed);
    write_file(o.out_path, table);
    for (auto& r : results)
      if (!r.pass) return 1;
    return 0;
  }

  if (c_ymap->parsed()) {
    HalfPlanePoint w{yx, yy};
    HalfPlanePoint z = y_r(yr, w);
    std::string out;
    if (o.precision == "extended") {
      long double im = y_imag_theta_ext(yr, yr * (1.0L + 2.0L * yx), yy);
      out = "{\"re\":" + json_str(fmt_double((double)((long double)yr * yx))) +
            ",\"im\":" + json_str(fmt_double((double)im)) + "}\n";
    } else {
      out = "{\"re\":" + json_str(fmt_double(z.re)) + ",\"im\":" +
            json_str(fmt_double(z.im)) + "}\n";
    }
    write_file(o.out_path, out);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return errc_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
