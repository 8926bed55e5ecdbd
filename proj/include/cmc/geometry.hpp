#pragma once

// Ball-model embedding of generating curves, surface meshes for n = 2, and
// file exporters (OBJ meshes, CSV curves, SVG profile plots).

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cmc/curve.hpp"

namespace cmc {

// A point of H^n x R: x in the open unit ball, t the vertical coordinate.
struct BallPoint {
  std::vector<double> x;
  double t = 0.0;
};

// Hyperboloid model: X = (X_0, X_1, ..., X_n) with -X_0^2 + sum X_i^2 = -1, X_0 > 0.
std::vector<double> ball_to_hyperboloid(std::span<const double> x);
std::vector<double> hyperboloid_to_ball(std::span<const double> X);

// Hyperbolic distance in the ball model.
double ball_distance(std::span<const double> a, std::span<const double> b);

struct Mesh {
  std::vector<std::array<double, 3>> vertices;  // (x_1, x_2, t)
  std::vector<std::array<int, 3>> faces;        // 0-based vertex indices
  SurfaceParams params;
  std::string class_tag;
};

// Rotates an n = 2 rotation curve about the vertical axis: sample i becomes the
// ring (tanh(rho_i/2) cos theta_j, tanh(rho_i/2) sin theta_j, height_i). Samples
// with rho = 0 become a single apex vertex joined by a triangle fan. Extended
// curves are meshed along their leading run with rho >= 0, which for a closed
// sphere loop is the full meridian from pole to pole.
Mesh embed_rotation_mesh(const SampledCurve& curve, int angular_samples,
                         const std::string& class_tag = {});

// Sweeps an n = 2 translation curve along the equidistant curves of the
// geodesic P. Sample i and transverse parameter s map to the hyperboloid point
// (cosh rho cosh s, cosh rho sinh s, sinh rho), drawn in the ball with the
// coordinates ordered so that the s = 0 column is (tanh(rho/2), 0) and P is
// the second axis. s runs uniformly over [-span, span]; transverse_samples
// must be odd (so that s = 0 is a column) and at least 3.
Mesh embed_translation_mesh(const SampledCurve& curve, int transverse_samples,
                            double transverse_span, const std::string& class_tag = {});

// Wavefront OBJ: a metadata comment, "v x y z" lines, then 1-based "f i j k".
void export_mesh(const Mesh& mesh, const std::filesystem::path& path);

// CSV with header "rho,height,slope", 17 significant digits, LF endings.
void export_curve(const SampledCurve& curve, const std::filesystem::path& path);

// Standalone SVG of the curves in the (rho, height) plane with axes, one
// polyline per curve and `title` as the heading. Non-finite points are skipped.
void export_plot(std::span<const SampledCurve> curves, std::span<const std::string> labels,
                 const std::string& title, const std::filesystem::path& path);

}  // namespace cmc
