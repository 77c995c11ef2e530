#pragma once

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "stiffcrowd/pairing.hpp"
#include "stiffcrowd/velocity.hpp"

namespace stiffcrowd {

/// Saturated interval [x_minus, x_plus] with constant density rho_behind just behind its rear.
struct Block {
  double x_minus = 0.0;
  double x_plus = 0.0;
  double rho_behind = 0.0;
};

struct MergeEvent {
  double t = 0.0;
  int left_index = 0;  ///< index of the left block just before the merge
};

/// Ordered, disjoint blocks moving in a positive, decreasing velocity field.
struct BlockSystem {
  std::vector<Block> blocks;
  Velocity1D u;
  std::vector<MergeEvent> events;
};

struct EndpointVelocity {
  double rear = 0.0;
  double front = 0.0;
};

/// Front moves at U(x+); rear at (U(x+) - rho_behind U(x-)) / (1 - rho_behind).
/// Throws DegenerateBlock if rho_behind >= 1, NonPositiveVelocity if U <= 0 at
/// an endpoint, VelocityNotDecreasing if U' > 0 at an endpoint.
std::vector<EndpointVelocity> block_rhs(const std::vector<Block>& blocks, const Velocity1D& u);
inline std::vector<EndpointVelocity> block_rhs(const BlockSystem& s) { return block_rhs(s.blocks, s.u); }

/// Dense record of an evolution: block states and endpoint velocities at each
/// node. A merge at t0 appears as two consecutive nodes with equal time, the
/// pre-merge state followed by the merged one.
struct FrontTrajectory {
  std::vector<double> t;
  std::vector<std::vector<Block>> states;
  std::vector<std::vector<EndpointVelocity>> rates;
  std::vector<MergeEvent> events;
  Velocity1D u;

  /// Blocks at time t by cubic Hermite interpolation between nodes. At a merge
  /// time the merged state is returned.
  std::vector<Block> at(double t) const;
  /// Times of the merges, for splitting time integrals.
  std::vector<double> event_times() const;
};

/// Fixed-step RK4 (the last step is shortened to land on T). Merges are located
/// by bisection in time on the gap functions to 1e-10 and the merged block
/// continues with the left block's ambient density.
FrontTrajectory evolve(BlockSystem system, double T, double dt_hint);

/// p(x) = 1 - U(x+)/U(x) on the block, zero outside.
std::function<double(double)> pressure_profile(const Block& block, const Velocity1D& u);

/// 1 inside a block, rho_behind of the next block ahead behind its rear, else 0.
std::function<double(double)> limit_density(const std::vector<Block>& blocks);

/// (rho, p) at one instant with breakpoints at every block endpoint.
LimitProfile limit_profile(const std::vector<Block>& blocks, const Velocity1D& u);

/// Sampler over a trajectory for the limit pairings.
ProfileSampler profile_sampler(const FrontTrajectory& traj);

void write_trajectory(std::ostream& os, const FrontTrajectory& traj);
void write_events(std::ostream& os, const FrontTrajectory& traj);

}  // namespace stiffcrowd
