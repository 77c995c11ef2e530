#include "stiffcrowd/ftl.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "stiffcrowd/errors.hpp"
#include "stiffcrowd/flux.hpp"

namespace stiffcrowd {

namespace {

bool ordered(const std::vector<double>& x) {
  for (size_t i = 0; i + 1 < x.size(); ++i)
    if (!(x[i] < x[i + 1])) return false;
  return true;
}

}  // namespace

void ftl_rhs(const AgentChain& c, const std::vector<double>& x, std::vector<double>& v) {
  const size_t n = x.size();
  v.resize(n);
  for (size_t i = 0; i + 1 < n; ++i) {
    const double gap = x[i + 1] - x[i];
    if (!(gap > 0.0))
      throw Error(ErrorKind::OrderingViolated, "agents " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                                   " are out of order");
    const double rho = std::min(c.delta / gap, 1.0);
    v[i] = (1.0 - pow_k(rho, c.k)) * c.u.eval(x[i]);
  }
  if (n > 0) v[n - 1] = c.u.eval(x[n - 1]);
}

std::vector<double> ftl_rhs(const AgentChain& chain) {
  if (chain.x.size() < 2) throw Error(ErrorKind::InvalidArgument, "a chain needs at least two agents");
  std::vector<double> v;
  ftl_rhs(chain, chain.x, v);
  return v;
}

double ftl_default_dt(const AgentChain& c) {
  // The headway response d v / d gap peaks at gap = delta with slope k U / delta.
  const double sup_u = std::max(c.u.bounds().sup_u, 1e-300);
  return 0.5 * c.delta / ((c.k + 1.0) * sup_u);
}

FtlTrajectory integrate(AgentChain& c, double T, double dt, const FtlOptions& options) {
  if (c.x.size() < 2) throw Error(ErrorKind::InvalidArgument, "a chain needs at least two agents");
  if (!ordered(c.x)) throw Error(ErrorKind::OrderingViolated, "initial positions must increase strictly");
  if (!(dt > 0.0) || !(T >= 0.0)) throw Error(ErrorKind::InvalidArgument, "need dt > 0 and T >= 0");
  const size_t n = c.x.size();
  std::vector<double> k1, k2, k3, k4, y(n), trial(n);
  FtlTrajectory tr;
  double next_record = 0.0;
  auto record = [&](double t) {
    if (options.record_stride <= 0) return;
    std::vector<double> row;
    for (size_t i = 0; i < n; i += options.record_stride) row.push_back(c.x[i]);
    if ((n - 1) % options.record_stride != 0) row.push_back(c.x[n - 1]);
    tr.t.push_back(t);
    tr.x.push_back(std::move(row));
    next_record = t + options.record_every;
  };
  record(0.0);
  double t = 0.0;
  while (t < T) {
    double h = std::min(dt, T - t);
    int halvings = 0;
    for (;;) {
      bool ok = true;
      try {
        ftl_rhs(c, c.x, k1);
        for (size_t i = 0; i < n; ++i) y[i] = c.x[i] + 0.5 * h * k1[i];
        ftl_rhs(c, y, k2);
        for (size_t i = 0; i < n; ++i) y[i] = c.x[i] + 0.5 * h * k2[i];
        ftl_rhs(c, y, k3);
        for (size_t i = 0; i < n; ++i) y[i] = c.x[i] + h * k3[i];
        ftl_rhs(c, y, k4);
        for (size_t i = 0; i < n; ++i) trial[i] = c.x[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        ok = ordered(trial);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::OrderingViolated) throw;
        ok = false;
      }
      if (ok) break;
      if (++halvings > 20)
        throw Error(ErrorKind::StepCollapse, "ordering still violated after 20 step halvings at t=" + std::to_string(t));
      h *= 0.5;
    }
    tr.halvings += halvings;
    c.x.swap(trial);
    const bool lands = t + h >= T;
    t = lands ? T : t + h;
    ++tr.steps;
    if (options.record_stride > 0 && (t >= next_record - 1e-12 || lands)) record(t);
  }
  return tr;
}

AgentChain chain_from_block(double a, double b, double value, int n, double k, const Velocity1D& u) {
  if (n < 2 || !(b > a) || !(value > 0.0 && value <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "need n >= 2, b > a and value in (0, 1]");
  AgentChain c{{}, 0.0, k, u};
  const double h = (b - a) / (n - 1);
  c.x.resize(n);
  for (int i = 0; i < n; ++i) c.x[i] = a + i * h;
  c.x[n - 1] = b;
  c.delta = value * h;
  return c;
}

Field1D empirical_density(const AgentChain& c, const Grid1D& g) {
  Field1D out(g);
  for (size_t i = 0; i + 1 < c.x.size(); ++i) {
    const double lo = c.x[i], hi = c.x[i + 1];
    const double rho = c.delta / (hi - lo);
    int first = static_cast<int>(std::floor((lo - g.x_min) / g.dx));
    int last = static_cast<int>(std::floor((hi - g.x_min) / g.dx));
    first = std::clamp(first, 0, g.n_cells - 1);
    last = std::clamp(last, 0, g.n_cells - 1);
    for (int j = first; j <= last; ++j) {
      const double overlap = std::min(hi, g.face(j + 1)) - std::max(lo, g.face(j));
      if (overlap > 0.0) out.values[j] += rho * overlap / g.dx;
    }
  }
  return out;
}

void write_trajectory(std::ostream& os, const FtlTrajectory& tr) {
  os.precision(17);
  os << "# t x_1 ... x_N\n";
  for (size_t r = 0; r < tr.t.size(); ++r) {
    os << tr.t[r];
    for (double x : tr.x[r]) os << ' ' << x;
    os << '\n';
  }
}

}  // namespace stiffcrowd
