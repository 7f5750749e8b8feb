#include "drns/second_stage.hpp"

#include <cmath>
#include <functional>

#include "drns/backend.hpp"

namespace drns {

namespace {

void check_inputs(const Instance& inst, const Staffing& st, const Scenario& sc) {
  const int J = inst.unit_count(), I = inst.pool_count();
  if (static_cast<int>(st.unit_staff.size()) != J ||
      static_cast<int>(st.pool_staff.size()) != I ||
      static_cast<int>(sc.unit_show.size()) != J ||
      static_cast<int>(sc.pool_show.size()) != I ||
      static_cast<int>(sc.demand.size()) != J)
    throw std::invalid_argument("recourse: dimension mismatch");
  for (int j = 0; j < J; ++j) {
    if (sc.unit_show[j] < 0 || sc.unit_show[j] > st.unit_staff[j])
      throw std::invalid_argument("recourse: unit show-ups outside [0, staffing]");
    if (sc.demand[j] < inst.units[j].demand_min || sc.demand[j] > inst.units[j].demand_max)
      throw std::invalid_argument("recourse: demand outside the support box");
  }
  for (int i = 0; i < I; ++i)
    if (sc.pool_show[i] < 0 || sc.pool_show[i] > st.pool_staff[i])
      throw std::invalid_argument("recourse: pool show-ups outside [0, staffing]");
}

int round_integral(double v, const char* what) {
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-6)
    throw std::logic_error(std::string("recourse vertex not integral in ") + what);
  return static_cast<int>(r);
}

}  // namespace

RecourseResult recourse_lp(const Instance& inst, const Staffing& st,
                           const Scenario& sc) {
  check_inputs(inst, st, sc);
  const int J = inst.unit_count(), I = inst.pool_count();
  const double cx = inst.costs.temp_nurse, ce = inst.costs.excess_credit;

  LinearModel m;
  std::vector<std::vector<int>> z(I);
  for (int i = 0; i < I; ++i)
    for (size_t k = 0; k < inst.pools[i].members.size(); ++k)
      z[i].push_back(m.add_var(0.0, kInf, false));
  std::vector<int> x(J), e(J);
  for (int j = 0; j < J; ++j) {
    x[j] = m.add_var(0.0, kInf, false);
    e[j] = m.add_var(0.0, kInf, false);
    m.set_objective(x[j], cx);
    m.set_objective(e[j], -ce);
  }

  for (int j = 0; j < J; ++j) {
    std::vector<int> idx = {x[j], e[j]};
    std::vector<double> coef = {1.0, -1.0};
    for (int i = 0; i < I; ++i)
      for (size_t k = 0; k < inst.pools[i].members.size(); ++k)
        if (inst.pools[i].members[k] == j) {
          idx.push_back(z[i][k]);
          coef.push_back(1.0);
        }
    m.add_row(idx, coef, RowSense::Equal,
              static_cast<double>(sc.demand[j] - sc.unit_show[j]));
  }
  for (int i = 0; i < I; ++i) {
    std::vector<double> coef(z[i].size(), 1.0);
    m.add_row(z[i], coef, RowSense::LessEqual,
              static_cast<double>(sc.pool_show[i]));
  }

  const SolveOutcome out = solve(m);
  if (out.status != SolveStatus::Optimal)
    throw BackendError("recourse LP did not solve to optimality");

  RecourseResult res;
  res.value = out.objective;
  res.reassigned.resize(I);
  for (int i = 0; i < I; ++i)
    for (int var : z[i])
      res.reassigned[i].push_back(round_integral(out.values[var], "reassignment"));
  for (int j = 0; j < J; ++j) {
    res.temps.push_back(round_integral(out.values[x[j]], "temporaries"));
    res.excess.push_back(round_integral(out.values[e[j]], "excess"));
  }
  return res;
}

double recourse_dual(const Instance& inst, const Staffing& st, const Scenario& sc) {
  check_inputs(inst, st, sc);
  const int J = inst.unit_count(), I = inst.pool_count();
  if (J > 12)
    throw std::invalid_argument("recourse_dual: enumeration capped at 12 units");
  const double cx = inst.costs.temp_nurse, ce = inst.costs.excess_credit;

  double best = -kInf;
  for (unsigned mask = 0; mask < (1u << J); ++mask) {
    double val = 0.0;
    for (int j = 0; j < J; ++j) {
      const double alpha = (mask >> j) & 1u ? cx : ce;
      val += (sc.demand[j] - sc.unit_show[j]) * alpha;
    }
    for (int i = 0; i < I; ++i) {
      double amax = 0.0;
      for (int j : inst.pools[i].members)
        amax = std::max(amax, (mask >> j) & 1u ? cx : ce);
      val -= sc.pool_show[i] * amax;
    }
    best = std::max(best, val);
  }
  return best;
}

double recourse_bruteforce(const Instance& inst, const Staffing& st,
                           const Scenario& sc, int cap) {
  check_inputs(inst, st, sc);
  const int J = inst.unit_count(), I = inst.pool_count();
  for (int j = 0; j < J; ++j)
    if (cap < inst.units[j].demand_max)
      throw std::invalid_argument("recourse_bruteforce: cap below demand bound");

  double space = 1.0;
  std::vector<std::pair<int, int>> slots;  // (pool, member position)
  for (int i = 0; i < I; ++i)
    for (size_t k = 0; k < inst.pools[i].members.size(); ++k) {
      slots.emplace_back(i, static_cast<int>(k));
      space *= std::min(sc.pool_show[i], cap) + 1;
    }
  if (space > 2e7)
    throw std::invalid_argument("recourse_bruteforce: search space too large");

  const double cx = inst.costs.temp_nurse, ce = inst.costs.excess_credit;
  std::vector<int> shortage(J);
  double base = 0.0;
  for (int j = 0; j < J; ++j) {
    shortage[j] = sc.demand[j] - sc.unit_show[j];
    base += ce * shortage[j];
  }

  std::vector<int> pool_left(I);
  for (int i = 0; i < I; ++i) pool_left[i] = sc.pool_show[i];
  std::vector<int> covered(J, 0);
  double best = kInf;

  std::function<void(size_t)> rec = [&](size_t slot) {
    if (slot == slots.size()) {
      double val = base;
      for (int j = 0; j < J; ++j) {
        const int need = std::max(0, shortage[j] - covered[j]);
        val += (cx - ce) * need - ce * covered[j];
      }
      best = std::min(best, val);
      return;
    }
    const auto [i, k] = slots[slot];
    const int j = inst.pools[i].members[k];
    const int hi = std::min(pool_left[i], cap);
    for (int zz = 0; zz <= hi; ++zz) {
      pool_left[i] -= zz;
      covered[j] += zz;
      rec(slot + 1);
      pool_left[i] += zz;
      covered[j] -= zz;
    }
  };
  rec(0);
  return best;
}

}  // namespace drns
