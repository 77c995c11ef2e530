#include "stiffcrowd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <queue>
#include <string>

#include "stiffcrowd/errors.hpp"
#include "stiffcrowd/flux.hpp"

namespace stiffcrowd {

namespace {

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

void check_pair(const Snapshot1D& a, const Snapshot1D& b) {
  if (!(a.field.grid == b.field.grid) || a.k != b.k || a.eps != b.eps)
    throw Error(ErrorKind::MismatchedRun, "snapshots come from different scenarios");
  if (!(b.t > a.t)) throw Error(ErrorKind::MismatchedRun, "snapshots must be in increasing time order");
}

}  // namespace

Field1D pressure(const Field1D& rho, double k) {
  Field1D p(rho.grid);
  for (int i = 0; i < rho.values.size(); ++i) p.values[i] = pow_k(rho.values[i], k);
  return p;
}

Field2D pressure(const Field2D& rho, double k) {
  Field2D p(rho.grid);
  for (int i = 0; i < rho.values.size(); ++i) p.values[i] = pow_k(rho.values[i], k);
  return p;
}

double mass(const Field1D& field) {
  double m = 0.0;
  for (int i = 0; i < field.values.size(); ++i) m += field.values[i];
  return m * field.grid.dx;
}

double mass(const Field2D& field) {
  double m = 0.0;
  for (int i = 0; i < field.values.size(); ++i) m += field.values[i];
  return m * field.grid.cell_area();
}

double total_variation(const Field1D& field) {
  double tv = 0.0;
  for (int i = 0; i + 1 < field.values.size(); ++i) tv += std::abs(field.values[i + 1] - field.values[i]);
  return tv;
}

double total_variation(const Field2D& field) {
  const auto& g = field.grid;
  double tx = 0.0, ty = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i + 1 < g.nx(); ++i) tx += std::abs(field.at(i + 1, j) - field.at(i, j));
  for (int j = 0; j + 1 < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) ty += std::abs(field.at(i, j + 1) - field.at(i, j));
  return tx * g.y.dx + ty * g.x.dx;
}

double law_of_state_residual(std::span<const double> rho, double k) {
  double worst = 0.0;
  for (double r : rho) worst = std::max(worst, pow_k(r, k) * (1.0 - r));
  return worst;
}

KruzhkovReport kruzhkov_residual(const Snapshot1D& before, const Snapshot1D& after, const Velocity1D& u, double c) {
  check_pair(before, after);
  if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorKind::InvalidArgument, "Kruzhkov constant must lie in [0,1]");
  const auto& g = before.field.grid;
  const auto& r0 = before.field.values;
  const auto& r1 = after.field.values;
  const int n = g.n_cells;
  const double k = before.k, eps = before.eps;
  const double dt = after.t - before.t;
  const double fc = flux_value(c, k);

  // Wall faces see an empty exterior; guard cells are empty, so this agrees
  // with the zero wall flux of the scheme.
  std::vector<double> q(n + 1, 0.0);
  for (int f = 0; f <= n; ++f) {
    const double a = f > 0 ? r0[f - 1] : 0.0, b = f < n ? r0[f] : 0.0;
    const double uf = u.eval(g.face(f));
    const double hi = godunov_interface_flux(std::max(a, c), std::max(b, c), uf, k);
    const double lo = godunov_interface_flux(std::min(a, c), std::min(b, c), uf, k);
    q[f] = hi - lo - eps * (std::abs(b - c) - std::abs(a - c)) / g.dx;
  }
  KruzhkovReport rep;
  rep.residual.resize(n);
  for (int i = 0; i < n; ++i) {
    const double dS = (std::abs(r1[i] - c) - std::abs(r0[i] - c)) / dt;
    const double R = dS + (q[i + 1] - q[i]) / g.dx + fc * sgn(r0[i] - c) * u.derivative(g.center(i));
    rep.residual[i] = R;
    if (R > 0.0) rep.positive_part += R * g.dx;
  }
  return rep;
}

std::vector<double> kruzhkov_lattice(int points) {
  std::vector<double> out(points);
  for (int j = 0; j < points; ++j) out[j] = points == 1 ? 0.5 : static_cast<double>(j) / (points - 1);
  return out;
}

double kruzhkov_max_positive(const Snapshot1D& before, const Snapshot1D& after, const Velocity1D& u,
                             std::span<const double> lattice) {
  double worst = 0.0;
  for (double c : lattice) worst = std::max(worst, kruzhkov_residual(before, after, u, c).positive_part);
  return worst;
}

PressureResidualReport pressure_evolution_residual(const Snapshot1D& before, const Snapshot1D& after,
                                                   const Velocity1D& u, double n) {
  check_pair(before, after);
  if (!(before.eps > 0.0))
    throw Error(ErrorKind::RequiresDiffusion, "pressure evolution residual needs eps > 0");
  if (!(n >= 1.0)) throw Error(ErrorKind::InvalidArgument, "exponent n must be >= 1");
  const auto& g = before.field.grid;
  const int cells = g.n_cells;
  const double k = before.k, eps = before.eps, dx = g.dx;
  const double dt = after.t - before.t;
  const double coef = n * (k + 1.0) / (n + k);

  Eigen::VectorXd q0(cells), q1(cells), high(cells);
  for (int i = 0; i < cells; ++i) {
    const double r = std::clamp(before.field.values[i], 0.0, 1.0);
    q0[i] = pow_k(r, n);
    high[i] = pow_k(r, n + k);
    q1[i] = pow_k(std::clamp(after.field.values[i], 0.0, 1.0), n);
  }
  PressureResidualReport rep;
  rep.residual = Eigen::VectorXd::Zero(cells);
  for (int i = 1; i + 1 < cells; ++i) {
    const double x = g.center(i);
    const double a_right = q0[i + 1] - coef * high[i + 1];
    const double a_left = q0[i - 1] - coef * high[i - 1];
    const double R = (q1[i] - q0[i]) / dt + (a_right - a_left) / (2.0 * dx) * u.eval(x) +
                     n * (q0[i] - high[i]) * u.derivative(x) - eps * (q0[i + 1] - 2.0 * q0[i] + q0[i - 1]) / (dx * dx);
    rep.residual[i] = R;
    rep.l1 += std::abs(R) * dx;
    if (R > 0.0) {
      rep.positive_l1 += R * dx;
      rep.max_positive = std::max(rep.max_positive, R);
    }
  }
  return rep;
}

SaturatedSet1D saturated_set(const Field1D& rho, const Velocity1D& u, double threshold) {
  const auto& g = rho.grid;
  SaturatedSet1D s;
  s.saturated.assign(g.n_cells, 0);
  for (int i = 0; i < g.n_cells; ++i) s.saturated[i] = rho.values[i] >= threshold;
  for (int i = 0; i < g.n_cells;) {
    if (!s.saturated[i]) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < g.n_cells && s.saturated[j + 1]) ++j;
    s.components.emplace_back(i, j);
    // Outward normal is -1 at the left end, +1 at the right end.
    const bool left = u.eval(g.face(i)) < 0.0;
    const bool right = u.eval(g.face(j + 1)) > 0.0;
    if (left) s.frontal_cells.push_back(i);
    if (right && !(left && i == j)) s.frontal_cells.push_back(j);
    i = j + 1;
  }
  return s;
}

SaturatedSet2D saturated_set(const Field2D& rho, const Velocity2D& u, double threshold) {
  const auto& g = rho.grid;
  const int nx = g.nx(), ny = g.ny();
  SaturatedSet2D s;
  s.saturated.assign(g.size(), 0);
  s.component.assign(g.size(), -1);
  for (int c = 0; c < g.size(); ++c) s.saturated[c] = rho.values[c] >= threshold;

  const int di[4] = {1, -1, 0, 0};
  const int dj[4] = {0, 0, 1, -1};
  std::queue<int> frontier;
  for (int start = 0; start < g.size(); ++start) {
    if (!s.saturated[start] || s.component[start] >= 0) continue;
    const int id = s.n_components++;
    s.component[start] = id;
    frontier.push(start);
    while (!frontier.empty()) {
      const int c = frontier.front();
      frontier.pop();
      const int i = c % nx, j = c / nx;
      for (int d = 0; d < 4; ++d) {
        const int ii = i + di[d], jj = j + dj[d];
        if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
        const int nb = g.index(ii, jj);
        if (s.saturated[nb] && s.component[nb] < 0) {
          s.component[nb] = id;
          frontier.push(nb);
        }
      }
    }
  }

  for (int c = 0; c < g.size(); ++c) {
    if (!s.saturated[c]) continue;
    const int i = c % nx, j = c / nx;
    Eigen::Vector2d normal = Eigen::Vector2d::Zero();
    bool boundary = false;
    for (int d = 0; d < 4; ++d) {
      const int ii = i + di[d], jj = j + dj[d];
      const bool outside = ii < 0 || jj < 0 || ii >= nx || jj >= ny;
      if (outside || !s.saturated[g.index(ii, jj)]) {
        boundary = true;
        normal += Eigen::Vector2d(di[d], dj[d]);
      }
    }
    if (!boundary) continue;
    s.boundary_cells.push_back(c);
    const Eigen::Vector2d x(g.x.center(i), g.y.center(j));
    if (normal.squaredNorm() > 0.0 && normal.dot(u.eval(x)) > 0.0) s.frontal_cells.push_back(c);
  }
  return s;
}

double complementarity_residual(const Field1D& rho, const Field1D& p, const Velocity1D& u, double threshold) {
  const auto s = saturated_set(rho, u, threshold);
  const auto& g = rho.grid;
  auto flux = [&](int i) { return (1.0 - p.values[i]) * u.eval(g.center(i)); };
  bool any = false;
  double worst = 0.0;
  for (auto [a, b] : s.components)
    for (int i = a + 2; i <= b - 2; ++i) {
      any = true;
      worst = std::max(worst, std::abs(flux(i + 1) - flux(i - 1)) / (2.0 * g.dx));
    }
  if (!any) throw Error(ErrorKind::EmptySaturatedSet, "no interior saturated cells");
  return worst;
}

double complementarity_residual(const Field2D& rho, const Field2D& p, const Velocity2D& u, double threshold) {
  const auto s = saturated_set(rho, u, threshold);
  const auto& g = rho.grid;
  const int nx = g.nx(), ny = g.ny();
  auto eff = [&](int i, int j) {
    const Eigen::Vector2d x(g.x.center(i), g.y.center(j));
    return Eigen::Vector2d((1.0 - p.at(i, j)) * u.eval(x));
  };
  bool any = false;
  double worst = 0.0;
  for (int j = 2; j < ny - 2; ++j)
    for (int i = 2; i < nx - 2; ++i) {
      bool interior = true;
      for (int dj = -2; dj <= 2 && interior; ++dj)
        for (int di = -2; di <= 2 && interior; ++di) interior = s.saturated[g.index(i + di, j + dj)];
      if (!interior) continue;
      any = true;
      const double div = (eff(i + 1, j).x() - eff(i - 1, j).x()) / (2.0 * g.x.dx) +
                         (eff(i, j + 1).y() - eff(i, j - 1).y()) / (2.0 * g.y.dx);
      worst = std::max(worst, std::abs(div));
    }
  if (!any) throw Error(ErrorKind::EmptySaturatedSet, "no interior saturated cells");
  return worst;
}

double frontal_pressure_trace(const Field1D& rho, const Field1D& p, const Velocity1D& u, double threshold) {
  const auto s = saturated_set(rho, u, threshold);
  if (s.components.empty()) throw Error(ErrorKind::EmptySaturatedSet, "no saturated cells");
  double worst = 0.0;
  for (int c : s.frontal_cells) worst = std::max(worst, p.values[c]);
  return worst;
}

double frontal_pressure_trace(const Field2D& rho, const Field2D& p, const Velocity2D& u, double threshold) {
  const auto s = saturated_set(rho, u, threshold);
  if (s.n_components == 0) throw Error(ErrorKind::EmptySaturatedSet, "no saturated cells");
  double worst = 0.0;
  for (int c : s.frontal_cells) worst = std::max(worst, p.values[c]);
  return worst;
}

double level_crossing(const Field1D& field, double level, double x_lo, double x_hi) {
  const auto& g = field.grid;
  const auto& v = field.values;
  for (int i = 0; i + 1 < g.n_cells; ++i) {
    const double x = g.center(i);
    if (x < x_lo) continue;
    if (x > x_hi) break;
    const double a = v[i] - level, b = v[i + 1] - level;
    if (a * b <= 0.0 && v[i] != v[i + 1]) return x + (level - v[i]) / (v[i + 1] - v[i]) * g.dx;
  }
  throw Error(ErrorKind::LevelNotBracketed, "level " + std::to_string(level) + " not crossed in window");
}

double front_position(const Field1D& field, double level) {
  const auto& g = field.grid;
  const auto& v = field.values;
  for (int i = g.n_cells - 2; i >= 0; --i)
    if (v[i] >= level && v[i + 1] < level) return g.center(i) + (level - v[i]) / (v[i + 1] - v[i]) * g.dx;
  throw Error(ErrorKind::LevelNotBracketed, "no cell reaches level " + std::to_string(level));
}

namespace {

double ls_slope(std::span<const double> t, std::span<const double> x) {
  const double n = static_cast<double>(t.size());
  double st = 0, sx = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sx += x[i];
  }
  const double mt = st / n, mx = sx / n;
  double num = 0, den = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    num += (t[i] - mt) * (x[i] - mx);
    den += (t[i] - mt) * (t[i] - mt);
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace

ShockTrack shock_tracker(std::span<const Snapshot1D> trajectory, double level, double x_lo, double x_hi, int window,
                         double t_min) {
  ShockTrack out;
  for (const auto& s : trajectory) {
    if (s.t < t_min) continue;
    out.t.push_back(s.t);
    out.x.push_back(level_crossing(s.field, level, x_lo, x_hi));
  }
  if (out.t.size() < 2) throw Error(ErrorKind::InvalidArgument, "shock tracker needs at least two snapshots");
  const int w = std::max(2, window);
  for (size_t i = 0; i + w <= out.t.size(); ++i)
    out.window_speed.push_back(ls_slope(std::span(out.t).subspan(i, w), std::span(out.x).subspan(i, w)));
  out.speed = ls_slope(out.t, out.x);
  return out;
}

void DiagnosticSeries::append(const DiagnosticRecord& r) {
  if (!records_.empty() && !(r.t > records_.back().t))
    throw Error(ErrorKind::InvalidArgument, "diagnostic timestamps must increase strictly");
  records_.push_back(r);
}

const char* diagnostic_columns() {
  return "t mass tv tv_envelope min_rho max_rho law_of_state kruzhkov_positive pressure_positive complementarity "
         "frontal_trace components";
}

void write_series(std::ostream& os, const DiagnosticSeries& series) {
  os << "# " << diagnostic_columns() << '\n';
  os << std::setprecision(17);
  for (const auto& r : series.records()) {
    os << r.t << ' ' << r.mass << ' ' << r.tv << ' ' << r.tv_envelope << ' ' << r.min_rho << ' ' << r.max_rho << ' '
       << r.law_of_state << ' ' << r.kruzhkov_positive << ' ' << r.pressure_positive << ' ' << r.complementarity << ' '
       << r.frontal_trace << ' ' << r.components << '\n';
  }
}

DiagnosticRecord diagnose(const Snapshot1D& snap, const Snapshot1D* previous, const Velocity1D& u,
                          double sat_threshold, double tv0) {
  DiagnosticRecord r;
  const auto& f = snap.field;
  r.t = snap.t;
  r.mass = mass(f);
  r.tv = total_variation(f);
  r.tv_envelope = tv_envelope(tv0, u.bounds().w2inf(), snap.t);
  r.min_rho = f.values.minCoeff();
  r.max_rho = f.values.maxCoeff();
  r.law_of_state = law_of_state_residual(f, snap.k);
  if (previous) {
    const auto lattice = kruzhkov_lattice();
    r.kruzhkov_positive = kruzhkov_max_positive(*previous, snap, u, lattice);
    if (snap.eps > 0.0) r.pressure_positive = pressure_evolution_residual(*previous, snap, u, snap.k).positive_l1;
  }
  const auto p = pressure(f, snap.k);
  const auto sat = saturated_set(f, u, sat_threshold);
  r.components = static_cast<int>(sat.components.size());
  if (!sat.components.empty()) {
    r.frontal_trace = frontal_pressure_trace(f, p, u, sat_threshold);
    try {
      r.complementarity = complementarity_residual(f, p, u, sat_threshold);
    } catch (const Error&) {
      // components too thin to have interior cells
    }
  }
  return r;
}

DiagnosticRecord diagnose(const Snapshot2D& snap, const Velocity2D& u, double sat_threshold, double tv0) {
  DiagnosticRecord r;
  const auto& f = snap.field;
  r.t = snap.t;
  r.mass = mass(f);
  r.tv = total_variation(f);
  r.tv_envelope = tv_envelope(tv0, u.bounds().w2inf(), snap.t);
  r.min_rho = f.values.minCoeff();
  r.max_rho = f.values.maxCoeff();
  r.law_of_state = law_of_state_residual(f, snap.k);
  const auto p = pressure(f, snap.k);
  const auto sat = saturated_set(f, u, sat_threshold);
  r.components = sat.n_components;
  if (sat.n_components > 0) {
    r.frontal_trace = frontal_pressure_trace(f, p, u, sat_threshold);
    try {
      r.complementarity = complementarity_residual(f, p, u, sat_threshold);
    } catch (const Error&) {
    }
  }
  return r;
}

}  // namespace stiffcrowd
