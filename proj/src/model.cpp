#include "drns/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "drns/random.hpp"

namespace drns {

double AttendanceFunction::at(int level) const {
  const int k = level - base_level;
  if (k < 0 || k >= static_cast<int>(values.size()))
    throw std::out_of_range("attendance level " + std::to_string(level) +
                            " outside tabulated range");
  return values[k];
}

bool AttendanceFunction::linear_rate(double* rate, double tol) const {
  if (values.empty()) return false;
  double r = 0.0;
  bool have = false;
  for (int k = 0; k < static_cast<int>(values.size()); ++k) {
    const int level = base_level + k;
    if (level == 0) {
      if (std::abs(values[k]) > tol) return false;
      continue;
    }
    const double rk = values[k] / level;
    if (!have) {
      r = rk;
      have = true;
    } else if (std::abs(rk - r) > tol) {
      return false;
    }
  }
  if (!have) r = 1.0;  // only level 0 tabulated; any rate is consistent
  if (rate) *rate = r;
  return true;
}

AttendanceFunction AttendanceFunction::linear(double rate, int lo, int hi) {
  AttendanceFunction f;
  f.base_level = lo;
  f.values.resize(hi - lo + 1);
  for (int k = 0; k <= hi - lo; ++k) f.values[k] = rate * (lo + k);
  return f;
}

double first_stage_cost(const Instance& inst, const Staffing& s) {
  double total = 0.0;
  for (int w : s.unit_staff) total += inst.costs.unit_nurse * w;
  for (int y : s.pool_staff) total += inst.costs.pool_nurse * y;
  return total;
}

const char* to_string(PoolStructure s) {
  switch (s) {
    case PoolStructure::NoPool: return "no-pool";
    case PoolStructure::OnePool: return "one-pool";
    case PoolStructure::Disjoint: return "disjoint";
    case PoolStructure::Chained: return "chained";
    case PoolStructure::Arbitrary: return "arbitrary";
  }
  return "?";
}

std::optional<PoolStructure> structure_from_string(const std::string& name) {
  if (name == "no-pool") return PoolStructure::NoPool;
  if (name == "one-pool") return PoolStructure::OnePool;
  if (name == "disjoint") return PoolStructure::Disjoint;
  if (name == "chained") return PoolStructure::Chained;
  if (name == "arbitrary") return PoolStructure::Arbitrary;
  return std::nullopt;
}

namespace {

void check_attendance(const AttendanceFunction& f, int lo, int hi,
                      const std::string& path, std::vector<std::string>& out) {
  if (f.base_level != lo)
    out.push_back(path + ".base_level: expected " + std::to_string(lo) +
                  ", got " + std::to_string(f.base_level));
  const int want = hi - lo + 1;
  if (static_cast<int>(f.values.size()) != want) {
    out.push_back(path + ".values: expected " + std::to_string(want) +
                  " entries, got " + std::to_string(f.values.size()));
    return;
  }
  for (int k = 0; k < want; ++k) {
    const int level = lo + k;
    if (level == 0 && f.values[k] != 0.0)
      out.push_back(path + ".values[0]: expected show-ups 0 at staffing 0");
    if (f.values[k] < 0.0 || f.values[k] > level)
      out.push_back(path + ".values[" + std::to_string(k) +
                    "]: expected within [0, " + std::to_string(level) + "]");
  }
}

}  // namespace

std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> out;
  const auto& c = inst.costs;
  if (!(c.unit_nurse >= 0.0)) out.push_back("costs.unit_nurse: must be nonnegative");
  if (!(c.pool_nurse >= 0.0)) out.push_back("costs.pool_nurse: must be nonnegative");
  if (!(c.temp_nurse >= 0.0)) out.push_back("costs.temp_nurse: must be nonnegative");
  if (!(c.excess_credit >= 0.0 && c.excess_credit < c.temp_nurse))
    out.push_back("costs.excess_credit: must satisfy 0 <= excess_credit < temp_nurse");

  for (int j = 0; j < inst.unit_count(); ++j) {
    const auto& u = inst.units[j];
    const std::string path = "units[" + std::to_string(j) + "]";
    if (u.moments.empty()) out.push_back(path + ".moments: at least one moment required");
    if (u.demand_min > u.demand_max)
      out.push_back(path + ".demand bounds: min exceeds max");
    if (u.staff_min < 0 || u.staff_min > u.staff_max)
      out.push_back(path + ".staffing bounds: need 0 <= min <= max");
    else
      check_attendance(u.attendance, u.staff_min, u.staff_max, path + ".attendance", out);
  }

  for (int i = 0; i < inst.pool_count(); ++i) {
    const auto& p = inst.pools[i];
    const std::string path = "pools[" + std::to_string(i) + "]";
    if (p.members.empty()) out.push_back(path + ".members: must be nonempty");
    for (size_t m = 0; m < p.members.size(); ++m) {
      if (p.members[m] < 0 || p.members[m] >= inst.unit_count())
        out.push_back(path + ".members[" + std::to_string(m) + "]: unit index out of range");
      if (m > 0 && p.members[m] <= p.members[m - 1])
        out.push_back(path + ".members[" + std::to_string(m) + "]: indices must strictly increase");
    }
    if (p.staff_min < 0 || p.staff_min > p.staff_max)
      out.push_back(path + ".staffing bounds: need 0 <= min <= max");
    else
      check_attendance(p.attendance, p.staff_min, p.staff_max, path + ".attendance", out);
  }

  if (inst.resource_cap) {
    long long floor = 0;
    for (const auto& u : inst.units) floor += u.staff_min;
    for (const auto& p : inst.pools) floor += p.staff_min;
    if (floor > *inst.resource_cap)
      out.push_back("resource_cap: below the sum of staffing lower bounds (" +
                    std::to_string(floor) + ")");
  }
  return out;
}

PoolStructure classify_structure(const Instance& inst) {
  const int units = inst.unit_count();
  const int pools = inst.pool_count();

  const bool all_idle = std::all_of(inst.pools.begin(), inst.pools.end(),
                                    [](const PoolSpec& p) { return p.staff_max == 0; });
  if (pools == 0 || all_idle) return PoolStructure::NoPool;

  if (pools == 1 && static_cast<int>(inst.pools[0].members.size()) == units)
    return PoolStructure::OnePool;

  if (pools == units) {
    bool chained = true;
    for (int i = 0; i < pools && chained; ++i) {
      std::vector<int> want = {i, (i + 1) % units};
      std::sort(want.begin(), want.end());
      want.erase(std::unique(want.begin(), want.end()), want.end());
      chained = inst.pools[i].members == want;
    }
    if (chained) return PoolStructure::Chained;
  }

  std::set<int> seen;
  bool disjoint = true;
  for (const auto& p : inst.pools)
    for (int j : p.members)
      if (!seen.insert(j).second) disjoint = false;
  if (disjoint) return PoolStructure::Disjoint;

  return PoolStructure::Arbitrary;
}

Instance generate_instance(std::uint64_t seed, int units, int pools,
                           PoolStructure structure, SafetyFactors safety) {
  if (units < 1) throw std::invalid_argument("generate_instance: need at least one unit");
  switch (structure) {
    case PoolStructure::NoPool:
      if (pools != 0) throw std::invalid_argument("no-pool structure needs zero pools");
      break;
    case PoolStructure::OnePool:
      if (pools != 1) throw std::invalid_argument("one-pool structure needs exactly one pool");
      break;
    case PoolStructure::Chained:
      if (pools != units || units < 2)
        throw std::invalid_argument("chained structure needs one pool per unit and >= 2 units");
      break;
    case PoolStructure::Disjoint:
      if (pools < 2 || pools > units)
        throw std::invalid_argument("disjoint structure needs 2..units pools");
      break;
    case PoolStructure::Arbitrary:
      if (pools < 2 || units < 3)
        throw std::invalid_argument("arbitrary structure needs >= 2 pools and >= 3 units");
      break;
  }

  Rng rng(seed);
  Instance inst;
  inst.costs = {100.0, 130.0, 400.0, 50.0};

  double mean_sum = 0.0, rate_sum = 0.0;
  for (int j = 0; j < units; ++j) {
    UnitSpec u;
    const double mean = rng.uniform(5.0, 20.0);
    const double sd = rng.uniform(0.0, 20.0);
    const double rate = rng.uniform(0.60, 0.98);
    u.moments = {mean, mean * mean + sd * sd};
    u.demand_min = std::max(0, static_cast<int>(std::floor(mean - 3.0 * sd)));
    u.demand_max = static_cast<int>(std::ceil(mean + 3.0 * sd));
    u.staff_min = static_cast<int>(std::floor(safety.staff_floor * rate * mean));
    u.staff_max = 200;
    u.attendance = AttendanceFunction::linear(rate, u.staff_min, u.staff_max);
    mean_sum += mean;
    rate_sum += rate;
    inst.units.push_back(std::move(u));
  }

  std::vector<std::vector<int>> member_sets;
  switch (structure) {
    case PoolStructure::NoPool:
      break;
    case PoolStructure::OnePool: {
      std::vector<int> all(units);
      std::iota(all.begin(), all.end(), 0);
      member_sets.push_back(all);
      break;
    }
    case PoolStructure::Chained:
      for (int i = 0; i < pools; ++i) {
        std::vector<int> mem = {i, (i + 1) % units};
        std::sort(mem.begin(), mem.end());
        member_sets.push_back(mem);
      }
      break;
    case PoolStructure::Disjoint:
      // Balanced contiguous blocks covering every unit.
      for (int i = 0; i < pools; ++i) {
        const int lo = static_cast<int>(static_cast<long long>(i) * units / pools);
        const int hi = static_cast<int>(static_cast<long long>(i + 1) * units / pools);
        std::vector<int> mem;
        for (int j = lo; j < hi; ++j) mem.push_back(j);
        member_sets.push_back(mem);
      }
      break;
    case PoolStructure::Arbitrary:
      // Overlapping windows of three units.
      for (int i = 0; i < pools; ++i) {
        std::set<int> mem = {i % units, (i + 1) % units, (i + 2) % units};
        member_sets.emplace_back(mem.begin(), mem.end());
      }
      break;
  }

  for (auto& mem : member_sets) {
    PoolSpec p;
    p.members = std::move(mem);
    const double rate = rng.uniform(0.98, 1.00);
    p.staff_min = 0;
    p.staff_max = 200;
    p.attendance = AttendanceFunction::linear(rate, p.staff_min, p.staff_max);
    rate_sum += rate;
    inst.pools.push_back(std::move(p));
  }

  const double avg_rate = rate_sum / (units + pools);
  inst.resource_cap = static_cast<long long>(
      std::ceil(safety.resource_ceiling * avg_rate * mean_sum));

  std::ostringstream label;
  label << "gen-" << to_string(structure) << "-J" << units << "-I" << pools
        << "-seed" << seed;
  inst.label = label.str();
  return inst;
}

}  // namespace drns
