#pragma once

#include <iosfwd>
#include <vector>

#include "stiffcrowd/grid.hpp"
#include "stiffcrowd/velocity.hpp"

namespace stiffcrowd {

/// Ordered agents x_1 < ... < x_N, each carrying mass delta.
struct AgentChain {
  std::vector<double> x;
  double delta = 0.0;
  double k = 1.0;
  Velocity1D u;
};

/// Follower i moves at (1 - min(delta/gap_i, 1)^k) U(x_i); the leader at U(x_N).
/// Throws OrderingViolated unless positions increase strictly.
std::vector<double> ftl_rhs(const AgentChain& chain);
void ftl_rhs(const AgentChain& chain, const std::vector<double>& x, std::vector<double>& v);

struct FtlTrajectory {
  std::vector<double> t;
  std::vector<std::vector<double>> x;  ///< recorded positions (every `stride`-th agent)
  long steps = 0;
  int halvings = 0;  ///< total step halvings performed
};

struct FtlOptions {
  int record_stride = 0;       ///< 0 records nothing
  double record_every = 0.0;   ///< time between recordings
};

/// RK4 with fixed step dt; a step that breaks the ordering is retried at half the
/// size (up to 20 times, then StepCollapse). The chain is advanced in place to T.
FtlTrajectory integrate(AgentChain& chain, double T, double dt, const FtlOptions& options = {});

/// Step size from the chain's stiffest headway response.
double ftl_default_dt(const AgentChain& chain);

/// N agents evenly covering [a, b] with spacing h = (b - a)/(N - 1) and delta = value h.
AgentChain chain_from_block(double a, double b, double value, int n, double k, const Velocity1D& u);

/// delta/(x_{i+1} - x_i) painted on [x_i, x_{i+1}] and averaged over each cell.
Field1D empirical_density(const AgentChain& chain, const Grid1D& grid);

void write_trajectory(std::ostream& os, const FtlTrajectory& traj);

}  // namespace stiffcrowd
