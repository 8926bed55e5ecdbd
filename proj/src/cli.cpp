#include "cmc/cli.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cmc/error.hpp"
#include "cmc/geometry.hpp"
#include "cmc/rotation.hpp"
#include "cmc/translation.hpp"
#include "cmc/verify.hpp"

namespace cmc {

namespace {

constexpr int kSchema = 1;

double parse_real(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(v))
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": not a number: '" + text + "'");
  return v;
}

nlohmann::json real_or_null(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  return *v;
}

std::string short_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string stem_of(Family f, const SurfaceParams& p) {
  return std::string(f == Family::Rotation ? "rotation" : "translation") + "_n" +
         std::to_string(p.n) + "_H" + short_real(p.H) + "_d" + short_real(p.d);
}

void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

std::set<std::string> parse_list(const std::string& text, const std::set<std::string>& allowed,
                                 const char* what) {
  std::set<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (!allowed.count(item))
      throw Error(ErrorCode::InvalidArgument, std::string(what) + ": unknown entry '" + item + "'");
    items.insert(item);
  }
  return items;
}

struct Built {
  std::string tag;
  std::optional<SampledCurve> curve;
  RotationClass rotation_class = RotationClass::NoSolution;
  std::string reason;
};

Built build_curve(Family family, const RunConfig& cfg) {
  SampleGrid grid;
  grid.samples = cfg.samples;
  grid.rho_max = cfg.rho_max;
  grid.tolerance = cfg.quad_tol;
  Built b;
  if (family == Family::Rotation) {
    const RotationClassification c = classify_rotation(cfg.params);
    b.tag = to_string(c.tag);
    b.rotation_class = c.tag;
    if (!c.breakpoints.left_end) {
      b.reason = "no generating curve for class " + b.tag;
      return b;
    }
    b.curve = sample_lambda(cfg.params, c.breakpoints, grid);
    return b;
  }
  const TranslationClassification c = classify_translation(cfg.params);
  b.tag = to_string(c.tag);
  if (c.tag == TranslationClass::CompleteGraph_T2) {
    b.curve = build_complete_graph(cfg.params.n, cfg.params.H, cfg.rho_max.value_or(kDefaultRhoMax),
                                   grid);
    return b;
  }
  if (!c.breakpoints.left_end) {
    b.reason = "no generating curve for class " + b.tag;
    return b;
  }
  b.curve = sample_mu(cfg.params, c.breakpoints, grid);
  return b;
}

nlohmann::json header(const std::string& command, Family family, const SurfaceParams& p) {
  return {{"schema", kSchema},
          {"command", command},
          {"family", family == Family::Rotation ? "rotation" : "translation"},
          {"n", p.n},
          {"H", p.H},
          {"d", p.d}};
}

// Options shared by every subcommand, as parsed text.
struct CommonOpts {
  std::string family;
  int n = 2;
  std::string H;
  std::string d = "0";
  std::optional<double> rho_max;
  int samples = kDefaultSamples;
  int angular = 64;
  int transverse = 41;
  double span = 2.0;
  int periods = 2;
  std::string outputs;
  std::string out;
  int jobs = 0;
  double quad_tol = kDefaultQuadTol;
  double flux_tol = kFluxTolerance;
  double mc_tol = kMeanCurvatureTolerance;
  std::string checks = "flux,mc";
};

void add_common(CLI::App* sub, CommonOpts& o, bool sweep) {
  sub->add_option("family", o.family, "rotation or translation")
      ->required()
      ->check(CLI::IsMember({"rotation", "translation"}));
  sub->add_option("--n", o.n, "dimension of the hyperbolic factor (>= 2)")->capture_default_str();
  sub->add_option("--H", o.H, sweep ? "H value or lo:hi:step; 'critical' for (n-1)/n"
                                    : "mean curvature > 0, or 'critical' for (n-1)/n")
      ->required();
  sub->add_option("--d", o.d, sweep ? "d value or lo:hi:step" : "flux constant, or 'dH'")
      ->capture_default_str();
  sub->add_option("--rho-max", o.rho_max, "sampling range for unbounded curves (default 30)");
  sub->add_option("--samples", o.samples, "samples per curve")->capture_default_str()->check(
      CLI::Range(7, 1000000));
  sub->add_option("--angular-samples", o.angular, "rotation mesh resolution")
      ->capture_default_str()
      ->check(CLI::Range(8, 100000));
  sub->add_option("--transverse-samples", o.transverse, "translation mesh columns (odd)")
      ->capture_default_str();
  sub->add_option("--transverse-span", o.span, "translation mesh half-width in s")
      ->capture_default_str();
  sub->add_option("--periods", o.periods, "periods drawn for unduloids and nodoids")
      ->capture_default_str();
  sub->add_option("--outputs", o.outputs, "comma list from json,csv,obj,svg");
  sub->add_option("--out", o.out, "output directory (default $CMC_OUTPUT_DIR or .)");
  sub->add_option("--jobs", o.jobs, "worker threads (0 = OpenMP default)")->check(
      CLI::NonNegativeNumber);
  sub->add_option("--quad-tol", o.quad_tol, "quadrature tolerance")->capture_default_str();
  sub->add_option("--flux-tol", o.flux_tol, "flux check tolerance")->capture_default_str();
  sub->add_option("--mc-tol", o.mc_tol, "mean curvature check tolerance")->capture_default_str();
}

RunConfig resolve(const CommonOpts& o, const std::set<std::string>& default_outputs) {
  RunConfig cfg;
  cfg.family = o.family == "translation" ? Family::Translation : Family::Rotation;
  if (o.n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  cfg.params.n = o.n;
  cfg.params.H = parse_H(o.H, o.n);
  cfg.params.d = parse_d(o.d, o.n, cfg.params.H);
  validate(cfg.params);
  if (o.rho_max && !(*o.rho_max > 0.0))
    throw Error(ErrorCode::InvalidArgument, "rho-max must be positive");
  cfg.rho_max = o.rho_max;
  cfg.samples = o.samples;
  cfg.angular_samples = o.angular;
  cfg.transverse_samples = o.transverse;
  cfg.transverse_span = o.span;
  cfg.periods = o.periods;
  cfg.outputs = o.outputs.empty() ? default_outputs
                                  : parse_list(o.outputs, {"json", "csv", "obj", "svg"}, "outputs");
  if (!o.out.empty()) {
    cfg.out_dir = o.out;
  } else if (const char* env = std::getenv("CMC_OUTPUT_DIR"); env && *env) {
    cfg.out_dir = env;
  } else {
    cfg.out_dir = ".";
  }
  cfg.quad_tol = o.quad_tol;
  cfg.flux_tol = o.flux_tol;
  cfg.mc_tol = o.mc_tol;
  if (!(cfg.quad_tol > 0.0) || !(cfg.flux_tol > 0.0) || !(cfg.mc_tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  return cfg;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const nlohmann::json j = classify_json(cfg.family, cfg.params);
  if (cfg.outputs.count("json")) {
    ensure_dir(cfg.out_dir);
    write_json(j, cfg.out_dir / (stem_of(cfg.family, cfg.params) + "_classify.json"));
  }
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  nlohmann::json j = header("curve", cfg.family, cfg.params);
  const Built b = build_curve(cfg.family, cfg);
  j["class"] = b.tag;
  if (!b.curve) {
    j["error"] = b.reason;
    out << j.dump(2) << '\n';
    err << "error: " << b.reason << '\n';
    return 1;
  }
  const SampledCurve& c = *b.curve;
  j["samples"] = c.samples.size();
  j["rho_range"] = {c.samples.front().rho, c.samples.back().rho};
  j["left_behavior"] = to_string(c.left_behavior);
  j["right_behavior"] = to_string(c.right_behavior);

  ensure_dir(cfg.out_dir);
  const std::string stem = stem_of(cfg.family, cfg.params);
  nlohmann::json files = nlohmann::json::array();
  if (cfg.outputs.count("csv")) {
    export_curve(c, cfg.out_dir / (stem + ".csv"));
    files.push_back(stem + ".csv");
  }
  if (cfg.outputs.count("svg")) {
    const std::string label = b.tag;
    export_plot(std::span<const SampledCurve>(&c, 1), std::span<const std::string>(&label, 1),
                b.tag, cfg.out_dir / (stem + ".svg"));
    files.push_back(stem + ".svg");
  }
  if (cfg.outputs.count("json")) files.push_back(stem + ".json");
  j["files"] = files;
  if (cfg.outputs.count("json")) write_json(j, cfg.out_dir / (stem + ".json"));
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_mesh(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  nlohmann::json j = header("mesh", cfg.family, cfg.params);
  const Built b = build_curve(cfg.family, cfg);
  j["class"] = b.tag;
  if (!b.curve) {
    j["error"] = b.reason;
    out << j.dump(2) << '\n';
    err << "error: " << b.reason << '\n';
    return 1;
  }
  ensure_dir(cfg.out_dir);
  const std::string stem = stem_of(cfg.family, cfg.params);
  nlohmann::json files = nlohmann::json::array();
  if (cfg.params.n != 2) {
    // No surface mesh in higher dimension: the generating curve carries the geometry.
    export_curve(*b.curve, cfg.out_dir / (stem + ".csv"));
    files.push_back(stem + ".csv");
    j["mesh"] = "unsupported for n >= 3; generating curve exported";
  } else {
    Mesh m;
    if (cfg.family == Family::Rotation) {
      const SampledCurve full = extend_curve(*b.curve, b.rotation_class, cfg.periods);
      m = embed_rotation_mesh(full, cfg.angular_samples, b.tag);
    } else {
      m = embed_translation_mesh(*b.curve, cfg.transverse_samples, cfg.transverse_span, b.tag);
    }
    j["vertices"] = m.vertices.size();
    j["faces"] = m.faces.size();
    if (cfg.outputs.count("obj")) {
      export_mesh(m, cfg.out_dir / (stem + ".obj"));
      files.push_back(stem + ".obj");
    }
    if (cfg.outputs.count("csv")) {
      export_curve(*b.curve, cfg.out_dir / (stem + ".csv"));
      files.push_back(stem + ".csv");
    }
  }
  if (cfg.outputs.count("json")) files.push_back(stem + "_mesh.json");
  j["files"] = files;
  if (cfg.outputs.count("json")) write_json(j, cfg.out_dir / (stem + "_mesh.json"));
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& checks_text, std::ostream& out,
               std::ostream& err) {
  const std::set<std::string> checks =
      parse_list(checks_text, {"flux", "mc", "convexity", "asymptote", "monotone"}, "checks");
  if (checks.empty()) throw Error(ErrorCode::InvalidArgument, "checks: empty list");
  nlohmann::json j = header("verify", cfg.family, cfg.params);
  const Built b = build_curve(cfg.family, cfg);
  j["class"] = b.tag;
  if (!b.curve) {
    j["error"] = b.reason;
    j["pass"] = false;
    out << j.dump(2) << '\n';
    err << "error: " << b.reason << '\n';
    return 1;
  }
  const SampledCurve& c = *b.curve;
  std::vector<VerificationReport> reports;
  if (checks.count("flux")) reports.push_back(flux_residual(c, cfg.flux_tol));
  if (checks.count("mc")) reports.push_back(mean_curvature_residual(c, cfg.mc_tol));
  if (checks.count("convexity")) {
    VerificationReport r = convexity_check(c);
    if (cfg.params.d != 0.0) {
      r.applicable = false;
      r.note = "convexity holds for d = 0 only";
    }
    reports.push_back(r);
  }
  if (checks.count("asymptote")) {
    if (cfg.family == Family::Rotation) {
      reports.push_back(asymptote_check(c, asymptote_rotation(cfg.params)));
    } else {
      VerificationReport r;
      r.check_name = "asymptote";
      r.applicable = false;
      r.note = "no asymptote model for translation curves";
      reports.push_back(r);
    }
  }
  if (checks.count("monotone")) {
    std::vector<double> ts;
    const double lo = c.samples.front().rho, hi = c.samples.back().rho;
    for (int k = 1; k < 50; ++k) ts.push_back(lo + (hi - lo) * k / 50.0);
    const double H = cfg.params.H;
    reports.push_back(q_monotone_in_H(cfg.params.n, cfg.params.d, ts, {0.9 * H, H, 1.1 * H}));
  }

  bool all = true;
  nlohmann::json arr = nlohmann::json::array();
  for (const VerificationReport& r : reports) {
    if (r.applicable) all = all && r.passed;
    arr.push_back(to_json(r));
    err << to_text(r) << '\n';
  }
  j["checks"] = arr;
  j["pass"] = all;
  if (cfg.outputs.count("json")) {
    ensure_dir(cfg.out_dir);
    write_json(j, cfg.out_dir / (stem_of(cfg.family, cfg.params) + "_verify.json"));
  }
  out << j.dump(2) << '\n';
  return all ? 0 : 1;
}

std::vector<double> parse_axis(const std::string& text, const std::function<double(const std::string&)>& single) {
  if (text.find(':') != std::string::npos) return parse_range(text);
  return {single(text)};
}

int cmd_sweep(const CommonOpts& o, std::ostream& out, std::ostream& err) {
  // Resolve everything except H and d through the single-point path.
  CommonOpts probe = o;
  probe.H = "1";
  probe.d = "0";
  const RunConfig base = resolve(probe, {"json"});
  const int n = base.params.n;
  const std::vector<double> Hs = parse_axis(o.H, [n](const std::string& s) { return parse_H(s, n); });
  for (double H : Hs)
    if (!(H > 0.0)) throw Error(ErrorCode::InvalidArgument, "H must be a finite value > 0");
  const bool d_is_dH = o.d == "dH";
  const std::vector<double> ds =
      d_is_dH ? std::vector<double>{0.0}
              : parse_axis(o.d, [](const std::string& s) { return parse_real(s, "d"); });

  struct Point {
    double H, d;
    std::string file, tag, error;
  };
  std::vector<Point> points;
  for (double H : Hs)
    for (double d : ds) points.push_back({H, d, {}, {}, {}});
  for (std::size_t k = 0; k < points.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "point_%05zu.json", k);
    points[k].file = name;
  }

  ensure_dir(base.out_dir);
  const long count = static_cast<long>(points.size());
  const int threads = o.jobs > 0 ? o.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long k = 0; k < count; ++k) {
    Point& pt = points[k];
    try {
      SurfaceParams p{n, pt.H, pt.d};
      if (d_is_dH) p.d = pt.d = graph_constant_dH(n, pt.H);
      const nlohmann::json j = classify_json(base.family, p);
      pt.tag = j.at("class").get<std::string>();
      write_json(j, base.out_dir / pt.file);
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
  }

  nlohmann::json index = {{"schema", kSchema},
                          {"command", "sweep"},
                          {"family", base.family == Family::Rotation ? "rotation" : "translation"},
                          {"n", n},
                          {"count", points.size()}};
  nlohmann::json list = nlohmann::json::array();
  int failures = 0;
  for (const Point& pt : points) {
    nlohmann::json e = {{"H", pt.H}, {"d", pt.d}};
    if (pt.error.empty()) {
      e["class"] = pt.tag;
      e["file"] = pt.file;
    } else {
      e["error"] = pt.error;
      ++failures;
    }
    list.push_back(e);
  }
  index["points"] = list;
  index["errors"] = failures;
  write_json(index, base.out_dir / "index.json");
  if (failures) err << failures << " of " << points.size() << " points failed (see index.json)\n";
  out << nlohmann::json{{"schema", kSchema},
                        {"command", "sweep"},
                        {"count", points.size()},
                        {"errors", failures},
                        {"index", (base.out_dir / "index.json").string()}}
             .dump(2)
      << '\n';
  return 0;
}

}  // namespace

double parse_H(const std::string& text, int n) {
  if (text == "critical") {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
    return critical_H(n);
  }
  const double H = parse_real(text, "H");
  if (!(H > 0.0)) throw Error(ErrorCode::InvalidArgument, "H must be a finite value > 0");
  return H;
}

double parse_d(const std::string& text, int n, double H) {
  if (text == "dH") {
    try {
      return graph_constant_dH(n, H);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidArgument, "d = dH needs 0 < H < (n-1)/n");
    }
  }
  return parse_real(text, "d");
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 1) return {parse_real(parts[0], "range")};
  if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "range must be lo:hi:step");
  const double lo = parse_real(parts[0], "range");
  const double hi = parse_real(parts[1], "range");
  const double step = parse_real(parts[2], "range");
  if (!(step > 0.0) || hi < lo)
    throw Error(ErrorCode::InvalidArgument, "range needs step > 0 and lo <= hi");
  const long count = std::lround((hi - lo) / step) + 1;
  if (count > 1000000) throw Error(ErrorCode::InvalidArgument, "range has too many points");
  std::vector<double> v(count);
  for (long k = 0; k < count; ++k) v[k] = lo + k * step;
  return v;
}

nlohmann::json classify_json(Family family, const SurfaceParams& p) {
  nlohmann::json j = header("classify", family, p);
  j.erase("command");
  j["regime"] = to_string(curvature_of(p).regime);
  if (family == Family::Rotation) {
    const RotationClassification c = classify_rotation(p);
    const RotationBreakpoints& bp = c.breakpoints;
    j["class"] = to_string(c.tag);
    j["breakpoints"] = {{"C_H", real_or_null(bp.C_H)},
                        {"D_H", real_or_null(bp.D_H)},
                        {"f_H_d", real_or_null(bp.f_H_d)},
                        {"left_end", real_or_null(bp.left_end)},
                        {"right_end", real_or_null(bp.right_end)},
                        {"sign_change", real_or_null(bp.sign_change)}};
    if (bp.left_end && bp.right_end)
      j["interval"] = {real_or_null(bp.left_end), real_or_null(bp.right_end)};
    const AsymptoteSpec a = asymptote_rotation(p);
    j["asymptote"] = {{"kind", to_string(a.kind)}, {"value", a.value}, {"rate", a.rate}};
  } else {
    const TranslationClassification c = classify_translation(p);
    const TranslationBreakpoints& bp = c.breakpoints;
    j["class"] = to_string(c.tag);
    j["breakpoints"] = {{"t_H", real_or_null(bp.t_H)},
                        {"d_H", real_or_null(bp.d_H)},
                        {"alpha", real_or_null(bp.alpha)},
                        {"c", real_or_null(bp.c)},
                        {"no_solution", bp.no_solution},
                        {"left_end", real_or_null(bp.left_end)},
                        {"right_end", real_or_null(bp.right_end)}};
    if (c.tag == TranslationClass::CompleteGraph_T2) {
      j["interval"] = {real_or_null(bp.t_H), "inf"};
    } else if (bp.left_end && bp.right_end) {
      j["interval"] = {real_or_null(bp.left_end), real_or_null(bp.right_end)};
    }
    j["asymptote"] = {{"kind", "None"}};
  }
  return j;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constant mean curvature rotation and translation hypersurfaces in H^n x R",
               "cmcsurf"};
  app.require_subcommand(1);
  CommonOpts o;
  CLI::App* classify = app.add_subcommand("classify", "classify (n, H, d) and report breakpoints");
  CLI::App* curve = app.add_subcommand("curve", "sample the generating curve");
  CLI::App* mesh = app.add_subcommand("mesh", "build an n = 2 surface mesh");
  CLI::App* verify = app.add_subcommand("verify", "run verification checks on the curve");
  CLI::App* sweep = app.add_subcommand("sweep", "classify every point of an (H, d) grid");
  for (CLI::App* sub : {classify, curve, mesh, verify}) add_common(sub, o, false);
  add_common(sweep, o, true);
  verify->add_option("--checks", o.checks, "comma list from flux,mc,convexity,asymptote,monotone")
      ->capture_default_str();

  std::vector<const char*> argv{"cmcsurf"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (o.jobs > 0) omp_set_num_threads(o.jobs);
    if (*sweep) return cmd_sweep(o, out, err);
    if (*classify) return cmd_classify(resolve(o, {}), out);
    if (*curve) return cmd_curve(resolve(o, {"csv", "svg", "json"}), out, err);
    if (*mesh) return cmd_mesh(resolve(o, {"obj", "json"}), out, err);
    if (*verify) return cmd_verify(resolve(o, {}), o.checks, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool usage =
        e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::DimensionUnsupported;
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace cmc
