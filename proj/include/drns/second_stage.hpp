#pragma once

#include "drns/model.hpp"

namespace drns {

// One realization of show-ups and demand, valid for a specific staffing.
struct Scenario {
  std::vector<int> unit_show;
  std::vector<int> pool_show;
  std::vector<int> demand;
};

struct RecourseResult {
  double value = 0.0;
  // reassigned[i][m] = pool i nurses sent to its m-th member unit.
  std::vector<std::vector<int>> reassigned;
  std::vector<int> temps;
  std::vector<int> excess;
};

// Exact recourse cost: cheapest reassignment of shown-up pool nurses plus
// temporary hires, net of the surplus credit. Solved as a continuous LP;
// the optimal vertex is integral and is returned rounded.
RecourseResult recourse_lp(const Instance& inst, const Staffing& staffing,
                           const Scenario& sc);

// Same value via enumeration of the dual vertices (alpha in {c_e,c_x}^J,
// beta_i = -max alpha over the pool). Guarded to J <= 12.
double recourse_dual(const Instance& inst, const Staffing& staffing,
                     const Scenario& sc);

// Independent oracle: exhaustive search over integer reassignment vectors
// with every coordinate capped. cap must dominate the largest demand bound.
double recourse_bruteforce(const Instance& inst, const Staffing& staffing,
                           const Scenario& sc, int cap);

}  // namespace drns
