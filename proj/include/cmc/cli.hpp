#pragma once

// Command-line front end: classify, curve, mesh, verify and sweep.
//
// Exit codes: 0 success, 1 a verification failed or nothing could be
// constructed, 2 usage error (bad flags or invalid parameters).

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmc/curve.hpp"

namespace cmc {

enum class Family { Rotation, Translation };

struct RunConfig {
  Family family = Family::Rotation;
  SurfaceParams params;
  std::optional<double> rho_max;
  int samples = 400;
  int angular_samples = 64;
  int transverse_samples = 41;
  double transverse_span = 2.0;
  int periods = 2;
  std::set<std::string> outputs;  // subset of {json, csv, obj, svg}
  std::filesystem::path out_dir;
  double quad_tol = 1e-10;
  double flux_tol = 1e-8;
  double mc_tol = 1e-5;
};

// "critical" -> (n-1)/n exactly, otherwise a decimal.
double parse_H(const std::string& text, int n);
// "dH" -> graph_constant_dH(n, H), otherwise a decimal.
double parse_d(const std::string& text, int n, double H);
// "lo:hi:step" -> lo + k step for k = 0 .. round((hi - lo)/step); a single
// value gives a one-element list.
std::vector<double> parse_range(const std::string& text);

nlohmann::json classify_json(Family family, const SurfaceParams& p);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmc
