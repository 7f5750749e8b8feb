#pragma once

#include <vector>

#include "drns/model.hpp"

namespace drns::test {

// Small hand-built instance: J units, one optional pool over given members.
// Attendance is linear at the given rates; demand box is [0, demand_max].
inline Instance tiny_instance(int units, const std::vector<std::vector<int>>& pools,
                              int staff_max = 6, int demand_max = 6,
                              double unit_rate = 1.0, double pool_rate = 1.0) {
  Instance inst;
  inst.costs = {100.0, 130.0, 400.0, 50.0};
  for (int j = 0; j < units; ++j) {
    UnitSpec u;
    const double mean = 1.0 + j % 3;
    u.moments = {mean, mean * mean + 1.0};
    u.demand_min = 0;
    u.demand_max = demand_max;
    u.staff_min = 0;
    u.staff_max = staff_max;
    u.attendance = AttendanceFunction::linear(unit_rate, 0, staff_max);
    inst.units.push_back(std::move(u));
  }
  for (const auto& members : pools) {
    PoolSpec p;
    p.members = members;
    p.staff_min = 0;
    p.staff_max = staff_max;
    p.attendance = AttendanceFunction::linear(pool_rate, 0, staff_max);
    inst.pools.push_back(std::move(p));
  }
  inst.label = "tiny";
  return inst;
}

}  // namespace drns::test
