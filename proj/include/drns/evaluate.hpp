#pragma once

#include <cstdint>
#include <utility>

#include "drns/model.hpp"
#include "drns/second_stage.hpp"

namespace drns {

// Raw calibration data: per unit/pool attendance pairs (staffed, showed up)
// and per-unit demand histories.
struct AttendanceRecords {
  std::vector<std::vector<std::pair<int, int>>> unit_attendance;
  std::vector<std::vector<std::pair<int, int>>> pool_attendance;
  std::vector<std::vector<int>> demand_history;
};

// Raw sample moments of orders 1..order_count.
std::vector<double> empirical_moments(const std::vector<int>& demands,
                                      int order_count);

// Tabulates expected show-ups on [lo, hi] from attendance pairs: observed
// levels get their sample mean, gaps are filled by linear interpolation
// (anchored at zero), the tail extends with the last slope, and every value
// is clamped to [0, level].
AttendanceFunction fit_attendance(const std::vector<std::pair<int, int>>& records,
                                  int lo, int hi);

struct ScenarioBatch {
  std::uint64_t seed = 0;
  std::vector<Scenario> scenarios;
  std::string metadata;
};

// Monte Carlo scenarios for a fixed staffing: log-normal demand matched to
// the first two calibrated moments (rounded and clamped to the support box),
// binomial show-ups at the tabulated linear attendance rates. Non-linear
// attendance requires explicit rates.
ScenarioBatch sample_scenarios(const Instance& inst, const Staffing& staffing,
                               int count, std::uint64_t seed,
                               const std::vector<double>& unit_rates = {},
                               const std::vector<double>& pool_rates = {});

struct EvaluationReport {
  double avg_cost = 0.0;
  double avg_temporaries = 0.0;
  double cost_stddev = 0.0;
  std::vector<double> scenario_costs;
};

EvaluationReport out_of_sample(const Instance& inst, const Staffing& staffing,
                               const ScenarioBatch& batch, int jobs = 1);

// The same instance with attendance replaced by identity: the comparator
// that assumes every assigned nurse shows up.
Instance absenteeism_blind_variant(const Instance& inst);

void write_batch(const ScenarioBatch& b, const std::filesystem::path& path);
ScenarioBatch read_batch(const std::filesystem::path& path);
void write_report(const EvaluationReport& r, const Instance& inst,
                  const Staffing& staffing, std::uint64_t seed,
                  const std::filesystem::path& path, bool per_scenario);

}  // namespace drns
