#pragma once

#include "drns/adversary.hpp"
#include "drns/backend.hpp"
#include "drns/model.hpp"

namespace drns {

struct SeparationParams {
  double eps = 1e-6;       // absolute tolerance of the stopping test
  int max_iter = 500;
  double time_limit = kInf;
  SolveParams backend;
};

struct IterationRecord {
  int iter = 0;
  double master_obj = 0.0;
  double separation_value = 0.0;
  double violation = 0.0;
  int cuts = 0;
  double elapsed_s = 0.0;
};

struct SeparationResult {
  StaffingSolution solution;
  std::vector<IterationRecord> log;
  bool converged = false;
  // final master point, for a-posteriori cut validity checks
  MasterIterate final_iterate;
  double final_theta = 0.0;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Delayed constraint generation: alternates the master relaxation with the
// structure-matched adversary oracle until no violated vertex remains.
SeparationResult solve_separation(const Instance& inst,
                                  const SeparationParams& params = {});

// Monolithic reformulations for the tractable structures
// (NoPool, OnePool, Disjoint, Chained). The structure must match
// classify_structure(inst).
StaffingSolution solve_monolithic(const Instance& inst, PoolStructure structure,
                                  const SolveParams& params = {});

// Copies of the instance with the pooling removed / merged into one pool
// covering every unit (the pool spec is taken from the first pool).
Instance strip_pools(const Instance& inst);
Instance merge_to_one_pool(const Instance& inst);

struct FlexibilityValue {
  double no_pool_cost = 0.0;
  double one_pool_cost = 0.0;
  double ovg_percent = 0.0;
};

// Cost with zero flexibility vs. one all-covering pool on the same units;
// requires zero pool staffing lower bounds.
FlexibilityValue flexibility_value(const Instance& inst,
                                   const SolveParams& params = {});

void write_iteration_log(const std::vector<IterationRecord>& log,
                         const std::filesystem::path& path);

}  // namespace drns
