#pragma once

#include <cstdint>
#include <utility>

#include "drns/backend.hpp"
#include "drns/model.hpp"

namespace drns {

// A disjoint pool design: assignment of units to candidate pools (plus one
// trailing slot for unpooled units), which pools are opened, and the
// cross-trained unit pairs it requires.
struct PoolDesign {
  std::vector<std::vector<std::uint8_t>> assign;  // [candidate+1][unit]
  std::vector<std::uint8_t> open;                 // per candidate
  std::vector<std::pair<int, int>> trained_pairs; // 0-based (j, k), j < k
  int pair_count = 0;
  double achieved_dr_cost = 0.0;
  double target = 0.0;
};

struct OpdParams {
  double big_k = 0.0;            // 0 = derive from the instance
  bool symmetry_breaking = true;
  int candidate_pools = 0;       // 0 = half the unit count
  int jobs = 1;                  // frontier points solved concurrently
  SolveParams backend;
};

struct DesignError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double default_big_k(const Instance& inst);

// Minimum cross-training disjoint design whose robust staffing cost stays
// within the target. Candidate pool specs come from the template (members are
// ignored); extra candidates replicate the first pool spec.
PoolDesign solve_opd(const Instance& tmpl, double target,
                     const OpdParams& params = {});

// Target sweep over [one-pool cost, no-pool cost]; returns (target, pairs).
std::vector<std::pair<double, int>> frontier(const Instance& tmpl, int points,
                                             const OpdParams& params = {});

// Concrete disjoint instance realizing the design on the template's units.
Instance realize_design(const Instance& tmpl, const PoolDesign& design);

void write_design(const PoolDesign& d, const std::filesystem::path& path);
PoolDesign read_design(const std::filesystem::path& path);

}  // namespace drns
