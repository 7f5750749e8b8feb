#pragma once

#include "drns/model.hpp"

namespace drns {

// Result of the moment-representability LP for one unit: the optimal slack
// (zero means the demand moments are realizable on the support box) and a
// witnessing probability mass function over [demand_min, demand_max].
struct MomentFit {
  double gap = 0.0;
  std::vector<double> pmf;
};

// Solves the per-unit LPs once; independent of the staffing decision.
std::vector<MomentFit> moment_feasibility(const Instance& inst);

struct FeasibilityReport {
  std::vector<bool> unit_mean_ok;   // condition 1: f_j(w_j) in [0, w_j]
  std::vector<bool> pool_mean_ok;   // condition 2: g_i(y_i) in [0, y_i]
  std::vector<double> moment_gap;   // condition 3 LP values, per unit
  std::vector<std::vector<double>> demand_pmf;  // witnesses from condition 3
  bool overall = false;
};

// Certifies that the ambiguity set is non-empty for the given staffing:
// the two mean conditions plus the per-unit moment LPs (gap <= tol).
FeasibilityReport check_feasibility(const Instance& inst, const Staffing& staffing,
                                    double tol = 1e-7);

// Checks conditions 1-2 for every integer staffing level in range; returns a
// description of the first violation, if any. Cheap: O(sum of range widths).
std::optional<std::string> staffing_box_feasible(const Instance& inst);

}  // namespace drns
