#pragma once

#include <set>

#include "drns/adversary.hpp"
#include "drns/backend.hpp"
#include "drns/model.hpp"

namespace drns {

// Variable ids created by the binary staffing expansion.
struct ExpansionVars {
  std::vector<int> gamma, lambda;
  std::vector<std::vector<int>> rho;   // [unit][q-1]
  std::vector<std::vector<int>> u, phi;  // [unit][k], k in [0, w_max - w_min)
  std::vector<std::vector<int>> v, nu;   // [pool][l]
};

// Shared epigraph variables: one set per unit/pool, reused by every cut.
struct EpigraphVars {
  std::vector<int> zeta;    // staffing hinge, >= 0
  std::vector<int> eta_x;   // demand supremum at the high dual value
  std::vector<int> eta_e;   // demand supremum at the low dual value
  std::vector<int> chi;     // max(eta_x, zeta + eta_e)
  std::vector<int> pool_hinge;  // per pool, >= 0
};

// Adds staffing expansion variables, ordering rows, the big-M-free McCormick
// rows for the bilinear surrogates, and the associated objective terms.
ExpansionVars add_expansion(LinearModel& m, const Instance& inst);

// Adds the epigraph variables with one row per integer demand point plus the
// hinge rows. Throws if a unit's demand support exceeds 10^4 points.
EpigraphVars add_epigraphs(LinearModel& m, const Instance& inst,
                           const ExpansionVars& x);

// Adds the global staffing budget row, when the instance carries one.
void add_budget_row(LinearModel& m, const Instance& inst, const ExpansionVars& x);

// Master problem shared by the separation algorithm and the monolithic
// reformulations.
struct MasterModel {
  LinearModel model;
  ExpansionVars vars;
  EpigraphVars epi;
  int theta = -1;
  std::set<std::vector<std::uint8_t>> cut_keys;
};

// Expansion + epigraphs + theta (with a safe finite floor) + the budget row.
MasterModel build_master(const Instance& inst);

// Adds one cut row for the vertex; returns false if the vertex was already
// encoded (a separation stall signal for the caller).
bool encode_cut(MasterModel& mm, const Instance& inst, const AdversaryPoint& pt);

// Decodes a solved master point.
MasterIterate extract_iterate(const Instance& inst, const MasterModel& mm,
                              const std::vector<double>& x);
Staffing extract_staffing(const Instance& inst, const MasterModel& mm,
                          const std::vector<double>& x);

// Safe lower bound for theta, provably below any attainable worst-case
// expectation.
double theta_floor(const Instance& inst);

}  // namespace drns
