#include "stiffcrowd/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stiffcrowd/errors.hpp"

namespace stiffcrowd {

double bump(double s) {
  const double q = 1.0 - s * s;
  if (q <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / q);
}

double bump_deriv(double s) {
  const double q = 1.0 - s * s;
  if (q <= 0.0) return 0.0;
  return bump(s) * (-2.0 * s / (q * q));
}

double Bump::value(double t, double x) const { return bump((t - tc) / rt) * bump((x - xc) / rx); }
double Bump::dt(double t, double x) const { return bump_deriv((t - tc) / rt) / rt * bump((x - xc) / rx); }
double Bump::dx(double t, double x) const { return bump((t - tc) / rt) * bump_deriv((x - xc) / rx) / rx; }

std::vector<Bump> bump_lattice(double t0, double t1, int nt, double x0, double x1, int nx) {
  if (nt < 1 || nx < 1 || !(t1 > t0) || !(x1 > x0)) throw Error(ErrorKind::InvalidArgument, "bad bump lattice");
  const double ht = (t1 - t0) / (nt + 1), hx = (x1 - x0) / (nx + 1);
  std::vector<Bump> out;
  for (int a = 1; a <= nt; ++a)
    for (int b = 1; b <= nx; ++b) out.push_back({t0 + a * ht, ht, x0 + b * hx, 2.0 * hx});
  return out;
}

std::vector<Bump> bump_lattice_x(double x0, double x1, int nx) {
  if (nx < 1 || !(x1 > x0)) throw Error(ErrorKind::InvalidArgument, "bad bump lattice");
  const double hx = (x1 - x0) / (nx + 1);
  std::vector<Bump> out;
  for (int b = 1; b <= nx; ++b) out.push_back({0.0, 1.0, x0 + b * hx, 2.0 * hx});
  return out;
}

Quadrature gauss_legendre(int n) {
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    q.nodes[i] = x;
    q.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

namespace {

const Quadrature& rule() {
  static const Quadrature q = gauss_legendre(12);
  return q;
}

// The bump derivative is steep near the support edge; 8 panels leave ~1e-6 relative error.
constexpr int kSubdivisions = 24;

// Composite Gauss-Legendre over [a, b] split at the sorted breakpoints inside it.
template <class F>
double integrate(double a, double b, std::span<const double> breaks, F&& f) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a};
  for (double x : breaks)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  const auto& q = rule();
  double total = 0.0;
  for (size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double h = (cuts[s + 1] - cuts[s]) / kSubdivisions;
    for (int m = 0; m < kSubdivisions; ++m) {
      const double lo = cuts[s] + m * h;
      for (size_t i = 0; i < q.nodes.size(); ++i) {
        // Evaluate strictly inside the piece so one-sided limits are used at breakpoints.
        total += 0.5 * h * q.weights[i] * f(lo + 0.5 * h * (q.nodes[i] + 1.0));
      }
    }
  }
  return total;
}

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

double entropy_density(double rho, double p, double ux, double dux, double c, double phi, double phi_t,
                       double phi_x) {
  const double s = sgn(rho - c);
  const double S = std::abs(rho - c);
  const double G = (S - s * p) * ux;
  return -S * phi_t - G * phi_x + c * s * dux * phi;
}

PairingReport finish(std::vector<double> values) {
  PairingReport r;
  for (double v : values) {
    r.max_positive = std::max(r.max_positive, v);
    r.max_abs = std::max(r.max_abs, std::abs(v));
  }
  r.values = std::move(values);
  return r;
}

}  // namespace

PairingReport limit_entropy_residual(const ProfileSampler& state, std::span<const double> time_breaks,
                                     const Velocity1D& u, double c, std::span<const Bump> tests) {
  std::vector<double> values;
  values.reserve(tests.size());
  for (const auto& b : tests) {
    const double t_lo = b.tc - b.rt, t_hi = b.tc + b.rt;
    const double x_lo = b.xc - b.rx, x_hi = b.xc + b.rx;
    const double total = integrate(t_lo, t_hi, time_breaks, [&](double t) {
      const LimitProfile prof = state(t);
      return integrate(x_lo, x_hi, prof.breaks, [&](double x) {
        return entropy_density(prof.rho(x), prof.p(x), u.eval(x), u.derivative(x), c, b.value(t, x), b.dt(t, x),
                               b.dx(t, x));
      });
    });
    values.push_back(total);
  }
  return finish(std::move(values));
}

PairingReport limit_entropy_residual(std::span<const FieldSample> traj, const Velocity1D& u, double c,
                                     std::span<const Bump> tests) {
  if (traj.empty()) return finish({});
  const auto& g = traj.front().rho->grid;
  std::vector<double> ux(g.n_cells), dux(g.n_cells);
  for (int i = 0; i < g.n_cells; ++i) {
    ux[i] = u.eval(g.center(i));
    dux[i] = u.derivative(g.center(i));
  }
  std::vector<double> values;
  values.reserve(tests.size());
  for (const auto& b : tests) {
    double total = 0.0;
    for (size_t n = 0; n < traj.size(); ++n) {
      double w = 0.0;  // trapezoid weight
      if (n > 0) w += 0.5 * (traj[n].t - traj[n - 1].t);
      if (n + 1 < traj.size()) w += 0.5 * (traj[n + 1].t - traj[n].t);
      const double t = traj[n].t;
      if (std::abs(t - b.tc) >= b.rt) continue;
      double row = 0.0;
      const int i0 = std::max(0, static_cast<int>(std::floor((b.xc - b.rx - g.x_min) / g.dx)));
      const int i1 = std::min(g.n_cells - 1, static_cast<int>(std::ceil((b.xc + b.rx - g.x_min) / g.dx)));
      for (int i = i0; i <= i1; ++i) {
        const double x = g.center(i);
        row += entropy_density(traj[n].rho->values[i], traj[n].p->values[i], ux[i], dux[i], c, b.value(t, x),
                               b.dt(t, x), b.dx(t, x));
      }
      total += w * row * g.dx;
    }
    values.push_back(total);
  }
  return finish(std::move(values));
}

PairingReport limit_pressure_inequality(const LimitProfile& state, const Velocity1D& u, double sat_threshold,
                                        std::span<const Bump> tests) {
  std::vector<double> values;
  values.reserve(tests.size());
  for (const auto& b : tests) {
    values.push_back(integrate(b.xc - b.rx, b.xc + b.rx, state.breaks, [&](double x) {
      const double sat = state.rho(x) >= sat_threshold ? 1.0 : 0.0;
      return state.p(x) * u.eval(x) * b.space_dx(x) + sat * u.derivative(x) * b.space(x);
    }));
  }
  return finish(std::move(values));
}

PairingReport limit_pressure_inequality(const Field1D& rho, const Field1D& p, const Velocity1D& u,
                                        double sat_threshold, std::span<const Bump> tests) {
  const auto& g = rho.grid;
  std::vector<double> values;
  values.reserve(tests.size());
  for (const auto& b : tests) {
    double total = 0.0;
    for (int i = 0; i < g.n_cells; ++i) {
      const double x = g.center(i);
      if (std::abs(x - b.xc) >= b.rx) continue;
      const double sat = rho.values[i] >= sat_threshold ? 1.0 : 0.0;
      total += p.values[i] * u.eval(x) * b.space_dx(x) + sat * u.derivative(x) * b.space(x);
    }
    values.push_back(total * g.dx);
  }
  return finish(std::move(values));
}

}  // namespace stiffcrowd
