#pragma once

// Test-side oracles, built directly from the dual-vertex description of the
// worst-case expectation. Nothing here shares code with the production
// reformulation path: no binary staffing expansion, no vertex encoding.

#include <cmath>
#include <functional>
#include <vector>

#include "drns/backend.hpp"
#include "drns/model.hpp"

namespace drns::test {

// Worst-case expected second-stage cost at a fixed staffing, via an LP whose
// rows enumerate every dual vertex (one per subset of units at the high dual
// value, with the pool multiplier at its tightest feasible response).
inline double fixed_staffing_worst_case(const Instance& inst, const Staffing& st) {
  const int J = inst.unit_count(), I = inst.pool_count();
  const double cx = inst.costs.temp_nurse, ce = inst.costs.excess_credit;

  LinearModel m;
  std::vector<int> gamma(J), hinge_hi(J), hinge_lo(J), sup_hi(J), sup_lo(J);
  std::vector<std::vector<int>> rho(J);
  for (int j = 0; j < J; ++j) {
    gamma[j] = m.add_var(-kInf, kInf, false);
    m.set_objective(gamma[j], inst.units[j].attendance.at(st.unit_staff[j]));
    for (size_t q = 0; q < inst.units[j].moments.size(); ++q) {
      rho[j].push_back(m.add_var(-kInf, kInf, false));
      m.set_objective(rho[j].back(), inst.units[j].moments[q]);
    }
    hinge_hi[j] = m.add_var(0.0, kInf, false);
    hinge_lo[j] = m.add_var(0.0, kInf, false);
    // H >= (-alpha - gamma) * w  <=>  H + w * gamma >= -alpha * w
    const double w = st.unit_staff[j];
    m.add_row({hinge_hi[j], gamma[j]}, {1.0, w}, RowSense::GreaterEqual, -cx * w);
    m.add_row({hinge_lo[j], gamma[j]}, {1.0, w}, RowSense::GreaterEqual, -ce * w);

    sup_hi[j] = m.add_var(-kInf, kInf, false);
    sup_lo[j] = m.add_var(-kInf, kInf, false);
    for (int d = inst.units[j].demand_min; d <= inst.units[j].demand_max; ++d) {
      std::vector<int> idx = {sup_hi[j]};
      std::vector<double> coef = {1.0};
      double power = 1.0;
      for (int rv : rho[j]) {
        power *= d;
        idx.push_back(rv);
        coef.push_back(power);
      }
      m.add_row(idx, coef, RowSense::GreaterEqual, cx * d);
      idx[0] = sup_lo[j];
      m.add_row(idx, coef, RowSense::GreaterEqual, ce * d);
    }
  }

  std::vector<int> lambda(I), pool_hi(I), pool_lo(I);
  for (int i = 0; i < I; ++i) {
    lambda[i] = m.add_var(-kInf, kInf, false);
    m.set_objective(lambda[i], inst.pools[i].attendance.at(st.pool_staff[i]));
    pool_hi[i] = m.add_var(0.0, kInf, false);
    pool_lo[i] = m.add_var(0.0, kInf, false);
    const double y = st.pool_staff[i];
    m.add_row({pool_hi[i], lambda[i]}, {1.0, y}, RowSense::GreaterEqual, -cx * y);
    m.add_row({pool_lo[i], lambda[i]}, {1.0, y}, RowSense::GreaterEqual, -ce * y);
  }

  const int theta = m.add_var(-kInf, kInf, false);
  m.set_objective(theta, 1.0);
  for (unsigned mask = 0; mask < (1u << J); ++mask) {
    std::vector<int> idx = {theta};
    std::vector<double> coef = {1.0};
    for (int j = 0; j < J; ++j) {
      const bool hi = (mask >> j) & 1u;
      idx.push_back(hi ? hinge_hi[j] : hinge_lo[j]);
      coef.push_back(-1.0);
      idx.push_back(hi ? sup_hi[j] : sup_lo[j]);
      coef.push_back(-1.0);
    }
    for (int i = 0; i < I; ++i) {
      bool any_hi = false;
      for (int j : inst.pools[i].members) any_hi = any_hi || ((mask >> j) & 1u);
      idx.push_back(any_hi ? pool_hi[i] : pool_lo[i]);
      coef.push_back(-1.0);
    }
    m.add_row(idx, coef, RowSense::GreaterEqual, 0.0);
  }

  const SolveOutcome out = solve(m);
  if (out.status != SolveStatus::Optimal)
    throw std::runtime_error("fixed-staffing oracle LP failed (status " +
                             std::to_string(static_cast<int>(out.status)) + ")");
  return out.objective;
}

// Exhaustive optimum over every feasible staffing vector.
inline double grid_optimum(const Instance& inst) {
  const int J = inst.unit_count(), I = inst.pool_count();
  std::vector<int> w(J), y(I);
  double best = kInf;

  auto eval = [&] {
    long long total = 0;
    for (int v : w) total += v;
    for (int v : y) total += v;
    if (inst.resource_cap && total > *inst.resource_cap) return;
    Staffing st{w, y};
    best = std::min(best, first_stage_cost(inst, st) +
                              fixed_staffing_worst_case(inst, st));
  };

  std::function<void(int)> walk_pools = [&](int i) {
    if (i == I) {
      eval();
      return;
    }
    for (y[i] = inst.pools[i].staff_min; y[i] <= inst.pools[i].staff_max; ++y[i])
      walk_pools(i + 1);
  };
  std::function<void(int)> walk_units = [&](int j) {
    if (j == J) {
      walk_pools(0);
      return;
    }
    for (w[j] = inst.units[j].staff_min; w[j] <= inst.units[j].staff_max; ++w[j])
      walk_units(j + 1);
  };
  walk_units(0);
  return best;
}

}  // namespace drns::test
