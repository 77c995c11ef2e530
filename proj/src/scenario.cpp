#include "stiffcrowd/scenario.hpp"

#include <cmath>

#include "stiffcrowd/errors.hpp"

namespace stiffcrowd {

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::FV1D: return "fv1d";
    case SolverKind::FV2D: return "fv2d";
    case SolverKind::FrontTrack: return "fronttrack";
    case SolverKind::FTL: return "ftl";
  }
  return "?";
}

const char* to_string(DiffusionMode mode) {
  return mode == DiffusionMode::Explicit ? "explicit" : "implicit";
}

namespace {

void require(bool ok, const char* key, const std::string& why) {
  if (!ok) throw Error(ErrorKind::ValidationError, std::string(key) + ": " + why, key);
}

}  // namespace

void Scenario::validate() const {
  require(std::isfinite(x_min) && std::isfinite(x_max) && x_max > x_min, "x_max", "need finite x_min < x_max");
  require(nx >= 4, "nx", "need at least 4 cells");
  if (dimension() == 2) {
    require(std::isfinite(y_min) && std::isfinite(y_max) && y_max > y_min, "y_max", "need finite y_min < y_max");
    require(ny >= 4, "ny", "need at least 4 cells");
  }
  require(std::isfinite(k) && k >= 1.0, "k", "stiffness must be finite and >= 1");
  require(std::isfinite(eps) && eps >= 0.0, "eps", "diffusion must be finite and >= 0");
  require(cfl > 0.0 && cfl <= 0.5, "cfl", "must lie in (0, 0.5]");
  require(std::isfinite(T) && T > 0.0, "T", "horizon must be finite and > 0");
  require(output_dt > 0.0, "output_dt", "must be > 0");
  require(sat_threshold > 0.0 && sat_threshold < 1.0, "sat_threshold", "must lie in (0,1)");
  require(dt_max > 0.0, "dt_max", "must be > 0");
  require(ambient >= 0.0 && ambient < 1.0, "ambient", "must lie in [0,1)");
  require(track_dt > 0.0, "track_dt", "must be > 0");
  require(agents >= 2, "agents", "need at least 2 agents");
  require(ftl_dt >= 0.0, "ftl_dt", "must be >= 0");

  double mass = 0.0;
  if (dimension() == 1) {
    require(boxes.empty(), "box", "2D boxes given for a 1D solver");
    for (const auto& p : intervals) {
      require(p.value >= 0.0 && p.value <= 1.0, "block", "value must lie in [0,1]");
      require(p.a < p.b, "block", "need a < b");
      require(p.a >= x_min && p.b <= x_max, "block", "interval exceeds the grid");
    }
    mass = initial_mass(intervals);
  } else {
    require(intervals.empty(), "block", "1D intervals given for a 2D solver");
    for (const auto& p : boxes) {
      require(p.value >= 0.0 && p.value <= 1.0, "box", "value must lie in [0,1]");
      require(p.x0 < p.x1 && p.y0 < p.y1, "box", "need x0 < x1 and y0 < y1");
      require(p.x0 >= x_min && p.x1 <= x_max && p.y0 >= y_min && p.y1 <= y_max, "box", "box exceeds the grid");
    }
    mass = initial_mass(boxes);
  }
  require(mass > 0.0, "block", "total initial mass must be > 0");

  const auto& f = velocity.family;
  if (dimension() == 1) {
    require(f == "constant" || f == "affine" || f == "tanh", "velocity", "1D family must be constant, affine or tanh");
    if (f == "affine") require(velocity.b <= 0.0, "velocity.b", "affine velocity needs b <= 0");
    if (f == "tanh") {
      require(velocity.b >= 0.0, "velocity.b", "tanh velocity needs b >= 0");
      require(velocity.width > 0.0, "velocity.width", "must be > 0");
    }
  } else {
    require(f == "constant" || f == "radial", "velocity", "2D family must be constant or radial");
    if (f == "radial") require(velocity.lambda >= 0.0, "velocity.lambda", "must be >= 0");
  }
}

Grid1D Scenario::grid1d() const { return Grid1D(x_min, x_max, nx); }

Grid2D Scenario::grid2d() const { return Grid2D(Grid1D(x_min, x_max, nx), Grid1D(y_min, y_max, ny)); }

Velocity1D Scenario::velocity1d() const {
  const auto& v = velocity;
  if (v.family == "affine") return Velocity1D::affine(v.a, v.b, x_min, x_max);
  if (v.family == "tanh") return Velocity1D::tanh_profile(v.a, v.b, v.x0, v.width, x_min, x_max);
  return Velocity1D::constant(v.a, x_min, x_max);
}

Velocity2D Scenario::velocity2d() const {
  const Eigen::Vector2d lo(x_min, y_min), hi(x_max, y_max);
  const auto& v = velocity;
  if (v.family == "radial") return Velocity2D::radial(Eigen::Vector2d(v.cx, v.cy), v.lambda, lo, hi);
  return Velocity2D::constant(Eigen::Vector2d(v.ux, v.uy), lo, hi);
}

std::vector<double> Scenario::output_times() const {
  std::vector<double> times;
  const long n = static_cast<long>(std::floor(T / output_dt + 1e-9));
  for (long j = 0; j <= n; ++j) {
    const double t = j * output_dt;
    if (t < T - 1e-12 * T) times.push_back(t);
  }
  times.push_back(T);
  return times;
}

}  // namespace stiffcrowd
