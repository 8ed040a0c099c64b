#pragma once

// Flat "key = value" run configuration: '#' starts a comment, values are
// whitespace-separated tokens, dotted keys group related settings. Unknown
// and duplicated keys are rejected.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "splitdg/geometry.hpp"
#include "splitdg/smallmat.hpp"
#include "splitdg/solver.hpp"

namespace splitdg {

enum class ICKind { Zero, Constant, Gaussian, Trig, Random };
enum class BCKind { Zero, Exact };

struct RunConfig {
  // Required.
  int N = 0;
  std::string system;  // "advection" | "acoustics"
  double T = 0;

  // System parameters.
  Vec3 velocity{1, 0, 0};   // advection background
  double shear = 0;         // divergence-free variation amplitude
  double vortex = 0;        // boundary-confined recirculation amplitude
  double sound_speed = 1;   // acoustics

  // Mesh.
  std::array<double, 6> extents{0, 1, 0, 1, 0, 1};
  std::array<int, 3> counts{1, 1, 1};
  double warp = 0;
  MetricMode metric = MetricMode::Curl;

  // Initial and boundary data.
  ICKind ic = ICKind::Zero;
  std::vector<double> ic_components;  // defaults per system
  Vec3 ic_center{0.5, 0.5, 0.5};
  double ic_width = 0.15;
  std::array<int, 3> ic_wavenumber{1, 1, 1};
  BCKind bc = BCKind::Zero;

  // Discretization and integration.
  Form form = Form::DS;
  double sigma = 1.0;
  double cfl = 0.5;
  bool has_dt = false;
  double dt = 0;

  // Output and bookkeeping.
  double output_interval = 0;  // 0: ten rows over [0, T]
  std::string output_prefix = "out";
  std::uint64_t seed = 1;
  int threads = 0;
};

// Throws ParseError for malformed lines, ValidationError for unknown keys,
// bad values, or missing required keys.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

}  // namespace splitdg
