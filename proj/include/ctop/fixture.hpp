#pragma once

#include "ctop/network.hpp"

namespace ctop {

struct FixtureOptions {
  int flight_count = 50;
  unsigned seed = 7;
  double prob_scen1 = 0.3;  // optimistic
  double prob_scen2 = 0.4;  // average
  double prob_scen3 = 0.3;  // pessimistic
  double cost_ground = 1.0;
  double cost_air = 2.0;
};

/// Built-in planning instance: the ZDC/EWR network with four FCAs stacked on
/// their PCAs plus an uncapacitated exit region, a three-scenario capacity
/// tree branching at 21:00 and 22:30, 16 active + 8 padding periods, and a
/// deterministic synthetic flight set (the operational demand data behind
/// the original study is not public).
Instance paper_fixture(const FixtureOptions& opt = {});

/// Minimal two-PCA instance whose split ratios alternate 1/0 then 0/1
/// between periods. Delaying a flight by one period makes the aggregate
/// flow model hand it to the other PCA, so flow-conservation per path breaks
/// down; used to demonstrate the limits of split-ratio flow approximation.
Instance split_pathology_fixture();

}  // namespace ctop
