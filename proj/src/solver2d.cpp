#include "stiffcrowd/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stiffcrowd/errors.hpp"
#include "stiffcrowd/initial.hpp"

namespace stiffcrowd {

namespace {

struct LineWork {
  LineCache cache;
  std::vector<double> line;
  std::vector<double> scratch;
};

double axis_rate(double speed, double dx, double eps, DiffusionMode mode) {
  double rate = speed / dx;
  if (mode == DiffusionMode::Explicit) rate += 2.0 * eps / (dx * dx);
  return rate;
}

// Advances one line by dt. A cell sees both of its faces, so the update stays
// monotone only while dt * rate <= 1/2; past that the remaining time is covered
// in pieces of cfl / rate, with the rate refreshed before each piece (at large
// k the wave speed grows quickly as cells fill).
void sweep_line(std::span<double> rho, std::span<const double> face_u, LineWork& w, double dt, double dx,
                const SolverState2D& s, const StepControl& control, const FluxMax& sonic) {
  const bool implicit = control.diffusion == DiffusionMode::SplittingImplicit && s.eps > 0.0;
  double left = dt;
  while (left > 0.0) {
    prepare_line(rho, s.k, w.cache);
    if (w.cache.empty) return;
    const double rate = axis_rate(line_wave_speed(w.cache, face_u), dx, s.eps, control.diffusion);
    const double h = left * rate > 0.5 ? std::min(left, control.cfl / rate) : left;
    left = h < left ? left - h : 0.0;
    if (!implicit) {
      apply_sweep(rho, face_u, w.cache, h, dx, s.eps, sonic);
      continue;
    }
    apply_sweep(rho, face_u, w.cache, 0.5 * h, dx, 0.0, sonic);
    implicit_diffusion(rho, s.eps * h / (dx * dx), w.scratch);
    prepare_line(rho, s.k, w.cache);
    apply_sweep(rho, face_u, w.cache, 0.5 * h, dx, 0.0, sonic);
  }
}

void sweep_x(SolverState2D& s, double dt, const StepControl& control, const FluxMax& sonic, LineWork& w) {
  const auto& g = s.field.grid;
  const int nx = g.nx();
  for (int j = 0; j < g.ny(); ++j) {
    std::span<double> row(s.field.values.data() + static_cast<size_t>(j) * nx, nx);
    std::span<const double> fu(s.face_ux.data() + static_cast<size_t>(j) * (nx + 1), nx + 1);
    sweep_line(row, fu, w, dt, g.x.dx, s, control, sonic);
  }
}

void sweep_y(SolverState2D& s, double dt, const StepControl& control, const FluxMax& sonic, LineWork& w) {
  const auto& g = s.field.grid;
  const int nx = g.nx(), ny = g.ny();
  w.line.resize(ny);
  for (int i = 0; i < nx; ++i) {
    bool any = false;
    for (int j = 0; j < ny; ++j) {
      w.line[j] = s.field.values[g.index(i, j)];
      any = any || w.line[j] != 0.0;
    }
    if (!any) continue;
    std::span<const double> fu(s.face_uy.data() + static_cast<size_t>(i) * (ny + 1), ny + 1);
    sweep_line(w.line, fu, w, dt, g.y.dx, s, control, sonic);
    for (int j = 0; j < ny; ++j) s.field.values[g.index(i, j)] = w.line[j];
  }
}

double axis_speed_x(const SolverState2D& s, LineWork& w) {
  const auto& g = s.field.grid;
  const int nx = g.nx();
  double speed = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    std::span<const double> row(s.field.values.data() + static_cast<size_t>(j) * nx, nx);
    std::span<const double> fu(s.face_ux.data() + static_cast<size_t>(j) * (nx + 1), nx + 1);
    prepare_line(row, s.k, w.cache);
    speed = std::max(speed, line_wave_speed(w.cache, fu));
  }
  return speed;
}

double axis_speed_y(const SolverState2D& s, LineWork& w) {
  const auto& g = s.field.grid;
  const int nx = g.nx(), ny = g.ny();
  w.line.resize(ny);
  double speed = 0.0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) w.line[j] = s.field.values[g.index(i, j)];
    std::span<const double> fu(s.face_uy.data() + static_cast<size_t>(i) * (ny + 1), ny + 1);
    prepare_line(w.line, s.k, w.cache);
    speed = std::max(speed, line_wave_speed(w.cache, fu));
  }
  return speed;
}

}  // namespace

SolverState2D::SolverState2D(Field2D initial, const Velocity2D& u, double stiffness, double diffusion)
    : field(std::move(initial)), k(stiffness), eps(diffusion) {
  FluxParams check(k);
  if (!(std::isfinite(eps) && eps >= 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be finite and >= 0");
  const auto& g = field.grid;
  const int nx = g.nx(), ny = g.ny();
  face_ux.resize(static_cast<size_t>(ny) * (nx + 1));
  face_uy.resize(static_cast<size_t>(nx) * (ny + 1));
  for (int j = 0; j < ny; ++j)
    for (int f = 0; f <= nx; ++f) face_ux[static_cast<size_t>(j) * (nx + 1) + f] = u.eval({g.x.face(f), g.y.center(j)})[0];
  for (int i = 0; i < nx; ++i)
    for (int f = 0; f <= ny; ++f) face_uy[static_cast<size_t>(i) * (ny + 1) + f] = u.eval({g.x.center(i), g.y.face(f)})[1];
  check_state(field, t);
}

void check_state(const Field2D& field, double t) {
  const auto& g = field.grid;
  const int nx = g.nx(), ny = g.ny();
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double v = field.at(i, j);
      if (!std::isfinite(v))
        throw Error(ErrorKind::NonFiniteValue, "non-finite density at (" + std::to_string(i) + "," + std::to_string(j) +
                                                   ") t=" + std::to_string(t));
      const bool guard = i < 2 || j < 2 || i >= nx - 2 || j >= ny - 2;
      if (guard && std::abs(v) > kGuardTol)
        throw Error(ErrorKind::DomainOverflow, "mass reached guard cell (" + std::to_string(i) + "," +
                                                   std::to_string(j) + ") at t=" + std::to_string(t));
    }
}

double stable_dt(const SolverState2D& s, const StepControl& control) {
  LineWork w;
  const auto& g = s.field.grid;
  const double rx = axis_rate(axis_speed_x(s, w), g.x.dx, s.eps, control.diffusion);
  const double ry = axis_rate(axis_speed_y(s, w), g.y.dx, s.eps, control.diffusion);
  const double rate = std::max(rx, ry);
  return rate > 0.0 ? control.cfl / rate : std::numeric_limits<double>::infinity();
}

double step2d(SolverState2D& s, const StepControl& control, double t_stop) {
  if (!(control.cfl > 0.0 && control.cfl <= 0.5)) throw Error(ErrorKind::InvalidArgument, "cfl must lie in (0, 0.5]");
  double dt = std::min(stable_dt(s, control), control.dt_max);
  bool lands = false;
  if (dt >= t_stop - s.t) {
    dt = t_stop - s.t;
    lands = true;
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "no finite positive time step available");
  const FluxMax sonic = flux_argmax(s.k);
  LineWork w;
  sweep_x(s, 0.5 * dt, control, sonic, w);
  sweep_y(s, dt, control, sonic, w);
  sweep_x(s, 0.5 * dt, control, sonic, w);
  s.t = lands ? t_stop : s.t + dt;
  ++s.step_count;
  check_state(s.field, s.t);
  return dt;
}

Run2DResult run2d(const Scenario& sc, const RunOptions& options) {
  sc.validate();
  if (sc.dimension() != 2) throw Error(ErrorKind::InvalidArgument, "run2d() needs a 2D scenario");
  const auto u = sc.velocity2d();
  SolverState2D state(build_initial(sc.boxes, sc.grid2d()), u, sc.k, sc.eps);
  const StepControl control{sc.cfl, sc.dt_max, sc.diffusion};
  const double tv0 = total_variation(state.field);
  Run2DResult out;
  for (double t_out : sc.output_times()) {
    try {
      while (state.t < t_out) step2d(state, control, t_out);
    } catch (const Error& e) {
      throw Error(e.kind(), e.message() + " (run failed at t=" + std::to_string(state.t) + ")", e.subject());
    }
    out.snapshots.push_back(state.snapshot());
    if (options.diagnostics) out.diagnostics.append(diagnose(out.snapshots.back(), u, sc.sat_threshold, tv0));
  }
  out.steps = state.step_count;
  return out;
}

}  // namespace stiffcrowd
