#include "stiffcrowd/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "stiffcrowd/errors.hpp"
#include "stiffcrowd/initial.hpp"

namespace stiffcrowd {

namespace {

std::span<double> values(Field1D& f) { return {f.values.data(), static_cast<size_t>(f.values.size())}; }
std::span<const double> faces(const SolverState1D& s) {
  return {s.face_velocity.data(), static_cast<size_t>(s.face_velocity.size())};
}

double cfl_dt(double speed, double dx, double eps, double cfl, DiffusionMode mode) {
  double rate = speed / dx;
  if (mode == DiffusionMode::Explicit) rate += 2.0 * eps / (dx * dx);
  return rate > 0.0 ? cfl / rate : std::numeric_limits<double>::infinity();
}

// Uses state.cache as prepared for the current field.
void advance_prepared(SolverState1D& s, double dt, DiffusionMode mode) {
  const auto& g = s.field.grid;
  const FluxMax sonic = flux_argmax(s.k);
  auto rho = values(s.field);
  if (mode == DiffusionMode::Explicit || s.eps == 0.0) {
    apply_sweep(rho, faces(s), s.cache, dt, g.dx, s.eps, sonic);
    return;
  }
  // Strang: hyperbolic half step, implicit diffusion over dt, hyperbolic half step.
  apply_sweep(rho, faces(s), s.cache, 0.5 * dt, g.dx, 0.0, sonic);
  implicit_diffusion(rho, s.eps * dt / (g.dx * g.dx), s.scratch);
  prepare_line(rho, s.k, s.cache);
  apply_sweep(rho, faces(s), s.cache, 0.5 * dt, g.dx, 0.0, sonic);
}

}  // namespace

SolverState1D::SolverState1D(Field1D initial, const Velocity1D& u, double stiffness, double diffusion)
    : field(std::move(initial)), k(stiffness), eps(diffusion) {
  FluxParams check(k);
  if (!(std::isfinite(eps) && eps >= 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be finite and >= 0");
  const auto& g = field.grid;
  face_velocity.resize(g.n_cells + 1);
  for (int f = 0; f <= g.n_cells; ++f) face_velocity[f] = u.eval(g.face(f));
  speed_envelope = face_speed_envelope(faces(*this));
  if (!field.values.allFinite()) throw Error(ErrorKind::NonFiniteValue, "non-finite initial density");
  check_state(field, t);
}

void check_state(const Field1D& field, double t) {
  const auto& v = field.values;
  const int n = static_cast<int>(v.size());
  for (int i : {0, 1, n - 2, n - 1}) {
    if (!std::isfinite(v[i]))
      throw Error(ErrorKind::NonFiniteValue, "non-finite density in cell " + std::to_string(i) + " at t=" +
                                                 std::to_string(t));
    if (std::abs(v[i]) > kGuardTol)
      throw Error(ErrorKind::DomainOverflow, "mass reached guard cell " + std::to_string(i) + " at t=" + std::to_string(t));
  }
}

namespace {

// After a step only the cells of the active window can have changed.
void check_window(const SolverState1D& s) {
  check_state(s.field, s.t);
  if (s.cache.empty) return;
  for (int i = s.cache.lo; i <= s.cache.hi; ++i)
    if (!std::isfinite(s.field.values[i]))
      throw Error(ErrorKind::NonFiniteValue, "non-finite density in cell " + std::to_string(i) + " at t=" +
                                                 std::to_string(s.t));
}

}  // namespace

double max_wave_speed(const SolverState1D& state) {
  LineCache cache;
  prepare_line({state.field.values.data(), static_cast<size_t>(state.field.values.size())}, state.k, cache);
  return line_wave_speed(cache, faces(state));
}

double stable_dt(const SolverState1D& state, const StepControl& control) {
  return cfl_dt(max_wave_speed(state), state.field.grid.dx, state.eps, control.cfl, control.diffusion);
}

double step(SolverState1D& s, const StepControl& control, double t_stop) {
  if (!(control.cfl > 0.0 && control.cfl <= 0.5)) throw Error(ErrorKind::InvalidArgument, "cfl must lie in (0, 0.5]");
  const auto& g = s.field.grid;
  prepare_line(values(s.field), s.k, s.cache);
  const double speed = line_wave_speed(s.cache, faces(s), s.speed_envelope);
  double dt = std::min(cfl_dt(speed, g.dx, s.eps, control.cfl, control.diffusion), control.dt_max);
  const double remaining = t_stop - s.t;
  bool lands = false;
  if (dt >= remaining) {
    dt = remaining;
    lands = true;
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "no finite positive time step available");
  advance_prepared(s, dt, control.diffusion);
  s.t = lands ? t_stop : s.t + dt;
  ++s.step_count;
  check_window(s);
  return dt;
}

void advance(SolverState1D& s, double dt, DiffusionMode mode) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be > 0");
  prepare_line(values(s.field), s.k, s.cache);
  advance_prepared(s, dt, mode);
  s.t += dt;
  ++s.step_count;
  check_window(s);
}

Run1DResult run(const Scenario& sc, const RunOptions& options) {
  sc.validate();
  if (sc.dimension() != 1) throw Error(ErrorKind::InvalidArgument, "run() needs a 1D scenario");
  const auto grid = sc.grid1d();
  const auto u = sc.velocity1d();
  SolverState1D state(build_initial(sc.intervals, grid), u, sc.k, sc.eps);
  const StepControl control{sc.cfl, sc.dt_max, sc.diffusion};
  const double tv0 = total_variation(state.field);

  Run1DResult out;
  // The state entering the most recent step; copying is cheaper than predicting
  // which step lands on the next tick.
  Snapshot1D before = state.snapshot();
  bool stepped = false;
  for (double t_out : sc.output_times()) {
    try {
      while (state.t < t_out) {
        if (options.diagnostics) {
          before.t = state.t;
          before.field.values = state.field.values;
        }
        step(state, control, t_out);
        stepped = true;
      }
    } catch (const Error& e) {
      throw Error(e.kind(), e.message() + " (run failed at t=" + std::to_string(state.t) + ")", e.subject());
    }
    out.snapshots.push_back(state.snapshot());
    if (options.diagnostics) {
      const Snapshot1D* prev = (stepped && before.t < state.t) ? &before : nullptr;
      out.diagnostics.append(diagnose(out.snapshots.back(), prev, u, sc.sat_threshold, tv0));
    }
  }
  out.steps = state.step_count;
  return out;
}

}  // namespace stiffcrowd
