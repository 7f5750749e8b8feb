#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace drns {

// Per-shift cost data. The dual box of the second stage requires
// 0 <= excess_credit < temp_nurse.
struct CostParams {
  double unit_nurse = 0.0;     // hiring one unit nurse
  double pool_nurse = 0.0;     // hiring one pool nurse
  double temp_nurse = 0.0;     // calling in one temporary nurse
  double excess_credit = 0.0;  // credit per surplus nurse on shift
};

// Expected show-ups tabulated over an integer staffing range
// [base_level, base_level + values.size() - 1].
struct AttendanceFunction {
  int base_level = 0;
  std::vector<double> values;

  int min_level() const { return base_level; }
  int max_level() const { return base_level + static_cast<int>(values.size()) - 1; }
  double at(int level) const;
  // values[k] - values[k-1]; the k-th marginal show-up gain, k in [1, size-1].
  double increment(int k) const { return values[k] - values[k - 1]; }

  // True when the table matches rate * level throughout; reports the rate.
  bool linear_rate(double* rate, double tol = 1e-9) const;

  static AttendanceFunction linear(double rate, int lo, int hi);
  static AttendanceFunction identity(int lo, int hi) { return linear(1.0, lo, hi); }
};

struct UnitSpec {
  std::vector<double> moments;  // moments[q-1] = q-th raw demand moment
  int demand_min = 0;
  int demand_max = 0;
  int staff_min = 0;
  int staff_max = 0;
  AttendanceFunction attendance;  // tabulated on [staff_min, staff_max]
};

struct PoolSpec {
  std::vector<int> members;  // 0-based unit indices, strictly increasing
  int staff_min = 0;
  int staff_max = 0;
  AttendanceFunction attendance;  // tabulated on [staff_min, staff_max]
};

// Full problem datum: units, float pools, costs, and an optional global
// budget row  sum(w) + sum(y) <= resource_cap.
struct Instance {
  std::vector<UnitSpec> units;
  std::vector<PoolSpec> pools;
  CostParams costs;
  std::optional<long long> resource_cap;
  std::string label;

  int unit_count() const { return static_cast<int>(units.size()); }
  int pool_count() const { return static_cast<int>(pools.size()); }
};

enum class PoolStructure { NoPool, OnePool, Disjoint, Chained, Arbitrary };

const char* to_string(PoolStructure s);
std::optional<PoolStructure> structure_from_string(const std::string& name);

// A staffing decision (first stage).
struct Staffing {
  std::vector<int> unit_staff;  // w
  std::vector<int> pool_staff;  // y
};

struct StaffingSolution {
  std::vector<int> unit_staff;
  std::vector<int> pool_staff;
  double dr_cost = 0.0;
  double first_stage_cost = 0.0;
  double worst_case_expectation = 0.0;
  std::string method;
  int cuts_used = 0;
  double wall_time_s = 0.0;

  Staffing staffing() const { return {unit_staff, pool_staff}; }
};

double first_stage_cost(const Instance& inst, const Staffing& s);

// Returns every invariant violation, ordered by field path; empty means valid.
std::vector<std::string> validate(const Instance& inst);

// Structural classification with precedence
// NoPool > OnePool > Chained > Disjoint > Arbitrary.
PoolStructure classify_structure(const Instance& inst);

struct SafetyFactors {
  double staff_floor = 0.1;       // scales the staffing lower bounds
  double resource_ceiling = 1.5;  // scales the global staffing budget
};

// Random instance generator: two demand moments per unit, linear attendance
// with unit rates in [0.60, 0.98] and pool rates in [0.98, 1.00], staffing
// upper bounds of 200, and a budget derived from the mean demand.
Instance generate_instance(std::uint64_t seed, int units, int pools,
                           PoolStructure structure, SafetyFactors safety = {});

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& inst, const std::filesystem::path& path);
StaffingSolution read_solution(const std::filesystem::path& path);
void write_solution(const StaffingSolution& sol, const std::filesystem::path& path);

}  // namespace drns
