#include "cmc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "cmc/error.hpp"

namespace cmc {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

void require_surface(const SampledCurve& curve, CurveKind kind) {
  if (curve.kind != kind) throw Error(ErrorCode::KindMismatch, "curve family does not match mesh");
  if (curve.params.n != 2)
    throw Error(ErrorCode::DimensionUnsupported,
                "surface meshes exist for n = 2 only; export the generating curve instead");
}

// Two triangles per quad between consecutive rows of `width` vertices.
void stitch_rows(std::vector<std::array<int, 3>>& faces, int row0, int row1, int width,
                 bool closed) {
  const int cols = closed ? width : width - 1;
  for (int j = 0; j < cols; ++j) {
    const int j1 = (j + 1) % width;
    faces.push_back({row0 + j, row0 + j1, row1 + j1});
    faces.push_back({row0 + j, row1 + j1, row1 + j});
  }
}

}  // namespace

std::vector<double> ball_to_hyperboloid(std::span<const double> x) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  if (!(r2 < 1.0)) throw Error(ErrorCode::OutsideDomain, "point not in the open unit ball");
  const double k = 1.0 / (1.0 - r2);
  std::vector<double> X(x.size() + 1);
  X[0] = (1.0 + r2) * k;
  for (std::size_t i = 0; i < x.size(); ++i) X[i + 1] = 2.0 * x[i] * k;
  return X;
}

std::vector<double> hyperboloid_to_ball(std::span<const double> X) {
  if (X.size() < 2 || !(X[0] >= 1.0))
    throw Error(ErrorCode::OutsideDomain, "not a point of the upper hyperboloid sheet");
  std::vector<double> x(X.size() - 1);
  for (std::size_t i = 1; i < X.size(); ++i) x[i - 1] = X[i] / (1.0 + X[0]);
  return x;
}

double ball_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  double ra = 0.0, rb = 0.0, dab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ra += a[i] * a[i];
    rb += b[i] * b[i];
    dab += (a[i] - b[i]) * (a[i] - b[i]);
  }
  // acosh(1 + z) computed as log1p(z + sqrt(z (z + 2))) to keep small distances accurate.
  const double z = 2.0 * dab / ((1.0 - ra) * (1.0 - rb));
  return std::log1p(z + std::sqrt(z * (z + 2.0)));
}

Mesh embed_rotation_mesh(const SampledCurve& curve, int angular_samples,
                         const std::string& class_tag) {
  require_surface(curve, CurveKind::Rotation);
  if (angular_samples < 8) throw Error(ErrorCode::InvalidArgument, "angular_samples must be >= 8");
  std::vector<CurveSample> run;
  for (const CurveSample& s : curve.samples) {
    if (s.rho < 0.0) break;
    run.push_back(s);
  }
  if (run.size() < 2) throw Error(ErrorCode::InsufficientSamples, "need at least 2 samples");

  Mesh m;
  m.params = curve.params;
  m.class_tag = class_tag;
  const int a = angular_samples;
  std::vector<double> cs(a), sn(a);
  for (int j = 0; j < a; ++j) {
    const double th = 2.0 * std::numbers::pi * j / a;
    cs[j] = std::cos(th);
    sn[j] = std::sin(th);
  }

  int prev = -1;          // first vertex of the previous row
  bool prev_apex = false;
  for (const CurveSample& s : run) {
    const bool apex = s.rho == 0.0;
    const int start = static_cast<int>(m.vertices.size());
    if (apex) {
      m.vertices.push_back({0.0, 0.0, s.height});
    } else {
      const double r = std::tanh(0.5 * s.rho);
      for (int j = 0; j < a; ++j) m.vertices.push_back({r * cs[j], r * sn[j], s.height});
    }
    if (prev >= 0) {
      if (prev_apex && apex) throw Error(ErrorCode::InvalidArgument, "consecutive axis samples");
      if (prev_apex) {
        for (int j = 0; j < a; ++j) m.faces.push_back({prev, start + j, start + (j + 1) % a});
      } else if (apex) {
        for (int j = 0; j < a; ++j) m.faces.push_back({prev + j, start, prev + (j + 1) % a});
      } else {
        stitch_rows(m.faces, prev, start, a, true);
      }
    }
    prev = start;
    prev_apex = apex;
  }
  return m;
}

Mesh embed_translation_mesh(const SampledCurve& curve, int transverse_samples,
                            double transverse_span, const std::string& class_tag) {
  require_surface(curve, CurveKind::Translation);
  if (transverse_samples < 3 || transverse_samples % 2 == 0)
    throw Error(ErrorCode::InvalidArgument, "transverse_samples must be odd and >= 3");
  if (!(transverse_span > 0.0) || !std::isfinite(transverse_span))
    throw Error(ErrorCode::InvalidArgument, "transverse_span must be positive");
  if (curve.samples.size() < 2) throw Error(ErrorCode::InsufficientSamples, "need at least 2 samples");

  Mesh m;
  m.params = curve.params;
  m.class_tag = class_tag;
  const int w = transverse_samples;
  const int half = w / 2;
  int prev = -1;
  for (const CurveSample& c : curve.samples) {
    const int start = static_cast<int>(m.vertices.size());
    const double ch = std::cosh(c.rho);
    const double sh = std::sinh(c.rho);
    for (int j = 0; j < w; ++j) {
      const double s = j == half ? 0.0 : transverse_span * (j - half) / half;
      const std::array<double, 3> X{ch * std::cosh(s), ch * std::sinh(s), sh};
      const std::vector<double> x = hyperboloid_to_ball(X);
      m.vertices.push_back({x[1], x[0], c.height});
    }
    if (prev >= 0) stitch_rows(m.faces, prev, start, w, false);
    prev = start;
  }
  return m;
}

void export_mesh(const Mesh& mesh, const std::filesystem::path& path) {
  std::ostringstream os;
  os << "# n=" << mesh.params.n << " H=" << fmt17(mesh.params.H) << " d=" << fmt17(mesh.params.d);
  if (!mesh.class_tag.empty()) os << " class=" << mesh.class_tag;
  os << '\n';
  for (const auto& v : mesh.vertices)
    os << "v " << fmt17(v[0]) << ' ' << fmt17(v[1]) << ' ' << fmt17(v[2]) << '\n';
  for (const auto& f : mesh.faces)
    os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  write_file(path, os.str());
}

void export_curve(const SampledCurve& curve, const std::filesystem::path& path) {
  std::ostringstream os;
  os << "rho,height,slope\n";
  for (const CurveSample& s : curve.samples)
    os << fmt17(s.rho) << ',' << fmt17(s.height) << ',' << fmt17(s.slope) << '\n';
  write_file(path, os.str());
}

void export_plot(std::span<const SampledCurve> curves, std::span<const std::string> labels,
                 const std::string& title, const std::filesystem::path& path) {
  constexpr double kW = 800, kH = 600, kMargin = 60;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const SampledCurve& c : curves)
    for (const CurveSample& s : c.samples) {
      if (!std::isfinite(s.rho) || !std::isfinite(s.height)) continue;
      xmin = std::min(xmin, s.rho);
      xmax = std::max(xmax, s.rho);
      ymin = std::min(ymin, s.height);
      ymax = std::max(ymax, s.height);
    }
  if (!(xmin < xmax)) xmin = 0.0, xmax = 1.0;
  if (!(ymin < ymax)) ymin = std::isfinite(ymin) ? ymin - 1.0 : 0.0, ymax = ymin + 2.0;
  auto px = [&](double x) { return kMargin + (x - xmin) / (xmax - xmin) * (kW - 2 * kMargin); };
  auto py = [&](double y) { return kH - kMargin - (y - ymin) / (ymax - ymin) * (kH - 2 * kMargin); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kW
     << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n"
     << "<title>" << title << "</title>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kW / 2 << "\" y=\"30\" text-anchor=\"middle\" font-size=\"18\">" << title
     << "</text>\n";
  // Axes along the bottom and left edges of the plot box, with end labels.
  os << "<g stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\"" << kW - kMargin
     << "\" y2=\"" << kH - kMargin << "\"/>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
     << kH - kMargin << "\"/>\n</g>\n";
  os << "<g font-size=\"12\">\n"
     << "<text x=\"" << kMargin << "\" y=\"" << kH - kMargin + 18 << "\">" << fmt6(xmin) << "</text>\n"
     << "<text x=\"" << kW - kMargin << "\" y=\"" << kH - kMargin + 18
     << "\" text-anchor=\"end\">" << fmt6(xmax) << "</text>\n"
     << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 15 << "\" text-anchor=\"middle\">rho</text>\n"
     << "<text x=\"" << kMargin - 5 << "\" y=\"" << kH - kMargin
     << "\" text-anchor=\"end\">" << fmt6(ymin) << "</text>\n"
     << "<text x=\"" << kMargin - 5 << "\" y=\"" << kMargin + 4 << "\" text-anchor=\"end\">"
     << fmt6(ymax) << "</text>\n"
     << "<text x=\"15\" y=\"" << kH / 2 << "\" transform=\"rotate(-90 15 " << kH / 2
     << ")\" text-anchor=\"middle\">height</text>\n</g>\n";
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const char* color = colors[k % std::size(colors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const CurveSample& s : curves[k].samples) {
      if (!std::isfinite(s.rho) || !std::isfinite(s.height)) continue;
      if (!first) os << ' ';
      os << fmt6(px(s.rho)) << ',' << fmt6(py(s.height));
      first = false;
    }
    os << "\"/>\n";
    if (k < labels.size())
      os << "<text x=\"" << kW - kMargin - 10 << "\" y=\"" << kMargin + 16 * (k + 1)
         << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << labels[k]
         << "</text>\n";
  }
  os << "</svg>\n";
  write_file(path, os.str());
}

}  // namespace cmc
