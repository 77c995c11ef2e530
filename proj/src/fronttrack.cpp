#include "stiffcrowd/fronttrack.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <string>

#include "stiffcrowd/errors.hpp"

namespace stiffcrowd {

namespace {

constexpr double kEventTol = 1e-10;

void check_order(const std::vector<Block>& b) {
  for (size_t j = 0; j < b.size(); ++j) {
    if (!(b[j].x_minus < b[j].x_plus))
      throw Error(ErrorKind::DegenerateBlock, "block " + std::to_string(j) + " has collapsed");
    if (j > 0 && b[j].x_minus < b[j - 1].x_plus)
      throw Error(ErrorKind::OrderingViolated, "blocks " + std::to_string(j - 1) + " and " + std::to_string(j) +
                                                   " overlap");
  }
}

std::vector<Block> axpy(const std::vector<Block>& b, const std::vector<EndpointVelocity>& r, double h) {
  std::vector<Block> out = b;
  for (size_t j = 0; j < b.size(); ++j) {
    out[j].x_minus += h * r[j].rear;
    out[j].x_plus += h * r[j].front;
  }
  return out;
}

std::vector<Block> rk4(const std::vector<Block>& b, const Velocity1D& u, double h) {
  const auto k1 = block_rhs(b, u);
  const auto k2 = block_rhs(axpy(b, k1, 0.5 * h), u);
  const auto k3 = block_rhs(axpy(b, k2, 0.5 * h), u);
  const auto k4 = block_rhs(axpy(b, k3, h), u);
  std::vector<Block> out = b;
  for (size_t j = 0; j < b.size(); ++j) {
    out[j].x_minus += h / 6.0 * (k1[j].rear + 2 * k2[j].rear + 2 * k3[j].rear + k4[j].rear);
    out[j].x_plus += h / 6.0 * (k1[j].front + 2 * k2[j].front + 2 * k3[j].front + k4[j].front);
  }
  return out;
}

// Index of the first closed gap, or -1.
int first_contact(const std::vector<Block>& b) {
  for (size_t j = 0; j + 1 < b.size(); ++j)
    if (b[j + 1].x_minus - b[j].x_plus <= 0.0) return static_cast<int>(j);
  return -1;
}

double hermite(double t0, double t1, double y0, double y1, double d0, double d1, double t) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
}

}  // namespace

std::vector<EndpointVelocity> block_rhs(const std::vector<Block>& blocks, const Velocity1D& u) {
  std::vector<EndpointVelocity> out(blocks.size());
  for (size_t j = 0; j < blocks.size(); ++j) {
    const auto& b = blocks[j];
    if (!(b.rho_behind >= 0.0 && b.rho_behind < 1.0))
      throw Error(ErrorKind::DegenerateBlock, "ambient density must lie in [0, 1)");
    const double um = u.eval(b.x_minus), up = u.eval(b.x_plus);
    if (!(um > 0.0 && up > 0.0)) throw Error(ErrorKind::NonPositiveVelocity, "U must be positive on every block");
    if (u.derivative(b.x_minus) > 0.0 || u.derivative(b.x_plus) > 0.0)
      throw Error(ErrorKind::VelocityNotDecreasing, "U must be nonincreasing on every block");
    out[j].front = up;
    out[j].rear = (up - b.rho_behind * um) / (1.0 - b.rho_behind);
  }
  return out;
}

FrontTrajectory evolve(BlockSystem sys, double T, double dt_hint) {
  if (!(T >= 0.0) || !(dt_hint > 0.0)) throw Error(ErrorKind::InvalidArgument, "need T >= 0 and dt_hint > 0");
  check_order(sys.blocks);
  FrontTrajectory tr{{}, {}, {}, {}, sys.u};
  auto record = [&](double t, const std::vector<Block>& b) {
    tr.t.push_back(t);
    tr.states.push_back(b);
    tr.rates.push_back(block_rhs(b, sys.u));
  };
  double t = 0.0;
  auto state = sys.blocks;
  record(t, state);
  const long n_steps = std::max(1L, static_cast<long>(std::ceil(T / dt_hint - 1e-9)));
  const double h_nominal = T / n_steps;
  for (long n = 0; n < n_steps && T > 0.0; ++n) {
    double h = (n + 1 == n_steps) ? T - t : h_nominal;
    auto next = rk4(state, sys.u, h);
    // Possibly several merges inside one step; handle them one at a time.
    while (first_contact(next) >= 0) {
      double lo = 0.0, hi = h;
      while (hi - lo > kEventTol) {
        const double mid = 0.5 * (lo + hi);
        if (first_contact(rk4(state, sys.u, mid)) >= 0)
          hi = mid;
        else
          lo = mid;
      }
      const double tau = hi;
      auto touching = rk4(state, sys.u, tau);
      const int j = first_contact(touching);
      const double t_event = t + tau;
      // Pre-merge node with the gap closed at the contact point.
      record(t_event, touching);
      Block merged{touching[j].x_minus, touching[j + 1].x_plus, touching[j].rho_behind};
      touching.erase(touching.begin() + j, touching.begin() + j + 2);
      touching.insert(touching.begin() + j, merged);
      tr.events.push_back({t_event, j});
      sys.events.push_back({t_event, j});
      record(t_event, touching);
      state = touching;
      t = t_event;
      h -= tau;
      next = h > 0.0 ? rk4(state, sys.u, h) : state;
    }
    check_order(next);
    t = (n + 1 == n_steps) ? T : t + h;
    state = next;
    record(t, state);
  }
  return tr;
}

std::vector<Block> FrontTrajectory::at(double time) const {
  if (t.empty()) return {};
  if (time <= t.front()) return states.front();
  if (time >= t.back()) return states.back();
  // Last node with t <= time: at a merge instant this is the merged state.
  const auto it = std::upper_bound(t.begin(), t.end(), time);
  const size_t i = static_cast<size_t>(it - t.begin()) - 1;
  if (t[i] == time || i + 1 >= t.size()) return states[i];
  const auto& a = states[i];
  const auto& b = states[i + 1];
  std::vector<Block> out = a;
  for (size_t j = 0; j < a.size(); ++j) {
    out[j].x_minus = hermite(t[i], t[i + 1], a[j].x_minus, b[j].x_minus, rates[i][j].rear, rates[i + 1][j].rear, time);
    out[j].x_plus = hermite(t[i], t[i + 1], a[j].x_plus, b[j].x_plus, rates[i][j].front, rates[i + 1][j].front, time);
  }
  return out;
}

std::vector<double> FrontTrajectory::event_times() const {
  std::vector<double> out;
  for (const auto& e : events) out.push_back(e.t);
  return out;
}

std::function<double(double)> pressure_profile(const Block& block, const Velocity1D& u) {
  const double up = u.eval(block.x_plus);
  if (!(up > 0.0) || !(u.eval(block.x_minus) > 0.0))
    throw Error(ErrorKind::NonPositiveVelocity, "U must be positive on the block");
  return [block, u, up](double x) {
    if (x < block.x_minus || x > block.x_plus) return 0.0;
    return 1.0 - up / u.eval(x);
  };
}

std::function<double(double)> limit_density(const std::vector<Block>& blocks) {
  return [blocks](double x) {
    for (const auto& b : blocks) {
      if (x < b.x_minus) return b.rho_behind;
      if (x <= b.x_plus) return 1.0;
    }
    return 0.0;
  };
}

LimitProfile limit_profile(const std::vector<Block>& blocks, const Velocity1D& u) {
  LimitProfile prof;
  std::vector<std::function<double(double)>> pressures;
  for (const auto& b : blocks) {
    prof.breaks.push_back(b.x_minus);
    prof.breaks.push_back(b.x_plus);
    pressures.push_back(pressure_profile(b, u));
  }
  prof.rho = limit_density(blocks);
  prof.p = [blocks, pressures](double x) {
    for (size_t j = 0; j < blocks.size(); ++j)
      if (x >= blocks[j].x_minus && x <= blocks[j].x_plus) return pressures[j](x);
    return 0.0;
  };
  return prof;
}

ProfileSampler profile_sampler(const FrontTrajectory& traj) {
  auto shared = std::make_shared<const FrontTrajectory>(traj);
  return [shared](double t) { return limit_profile(shared->at(t), shared->u); };
}

void write_trajectory(std::ostream& os, const FrontTrajectory& traj) {
  os.precision(17);
  os << "# t x_minus_1 x_plus_1 ...\n";
  for (size_t i = 0; i < traj.t.size(); ++i) {
    os << traj.t[i];
    for (const auto& b : traj.states[i]) os << ' ' << b.x_minus << ' ' << b.x_plus;
    os << '\n';
  }
}

void write_events(std::ostream& os, const FrontTrajectory& traj) {
  os.precision(17);
  os << "# t_merge left_index\n";
  for (const auto& e : traj.events) os << e.t << ' ' << e.left_index << '\n';
}

}  // namespace stiffcrowd
