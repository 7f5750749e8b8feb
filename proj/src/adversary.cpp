#include "drns/adversary.hpp"

#include <cassert>
#include <cmath>

#include "drns/backend.hpp"

namespace drns {

namespace {

double demand_sup(const UnitSpec& u, double alpha, const std::vector<double>& rho) {
  double best = -kInf;
  for (int d = u.demand_min; d <= u.demand_max; ++d) {
    double v = alpha * d;
    double power = 1.0;
    for (double r : rho) {
      power *= d;
      v -= r * power;
    }
    best = std::max(best, v);
  }
  return best;
}

double hinge(double v) { return std::max(v, 0.0); }

void check_coeff_sizes(const Instance& inst, const CutCoefficients& c) {
  if (static_cast<int>(c.t.size()) != inst.unit_count() ||
      static_cast<int>(c.r.size()) != inst.unit_count() ||
      static_cast<int>(c.p.size()) != inst.pool_count() ||
      static_cast<int>(c.s.size()) != inst.pool_count())
    throw std::invalid_argument("cut coefficients do not match the instance");
}

}  // namespace

CutCoefficients coefficients(const Instance& inst, const MasterIterate& it) {
  const double cx = inst.costs.temp_nurse, ce = inst.costs.excess_credit;
  CutCoefficients c;
  for (int j = 0; j < inst.unit_count(); ++j) {
    const auto& u = inst.units[j];
    c.t.push_back(demand_sup(u, cx, it.rho[j]));
    double staff_term = (-ce - it.gamma[j]) * u.staff_min;
    for (size_t k = 0; k < it.u[j].size(); ++k)
      staff_term -= it.phi[j][k] + ce * it.u[j][k];
    c.r.push_back(hinge(staff_term) + demand_sup(u, ce, it.rho[j]));
  }
  for (int i = 0; i < inst.pool_count(); ++i) {
    const auto& p = inst.pools[i];
    double staff_term = (-ce - it.lambda[i]) * p.staff_min;
    for (size_t l = 0; l < it.v[i].size(); ++l)
      staff_term -= it.nu[i][l] + ce * it.v[i][l];
    c.p.push_back(hinge(staff_term));
    c.s.push_back(0.0);
  }
  return c;
}

double point_value(const Instance& inst, const CutCoefficients& c,
                   const AdversaryPoint& pt) {
  double v = 0.0;
  for (int j = 0; j < inst.unit_count(); ++j)
    v += c.t[j] * pt.t[j] + c.r[j] * pt.r[j];
  for (int i = 0; i < inst.pool_count(); ++i) {
    v += c.p[i] * pt.p[i];
    for (auto b : pt.s[i]) v += c.s[i] * b;
  }
  return v;
}

bool in_feasible_set(const Instance& inst, const AdversaryPoint& pt) {
  const int J = inst.unit_count(), I = inst.pool_count();
  if (static_cast<int>(pt.t.size()) != J || static_cast<int>(pt.r.size()) != J ||
      static_cast<int>(pt.s.size()) != I || static_cast<int>(pt.p.size()) != I)
    return false;
  for (int j = 0; j < J; ++j) {
    if (pt.t[j] > 1 || pt.r[j] > 1) return false;
    if (pt.t[j] + pt.r[j] != 1) return false;
  }
  for (int i = 0; i < I; ++i) {
    const auto& mem = inst.pools[i].members;
    if (pt.s[i].size() != mem.size() || pt.p[i] > 1) return false;
    int total = pt.p[i];
    for (size_t m = 0; m < mem.size(); ++m) {
      if (pt.s[i][m] > 1) return false;
      total += pt.s[i][m];
      if (pt.s[i][m] > pt.t[mem[m]]) return false;
      // no marked unit may sit above the designated one
      for (size_t m2 = m + 1; m2 < mem.size(); ++m2)
        if (pt.s[i][m] && pt.t[mem[m2]]) return false;
    }
    if (total != 1) return false;
    for (int j : mem) {
      int cover = 0;
      for (auto b : pt.s[i]) cover += b;
      if (pt.t[j] > cover) return false;
    }
  }
  return true;
}

AdversaryPoint complete_point(const Instance& inst, const CutCoefficients& c,
                              const std::vector<std::uint8_t>& t) {
  AdversaryPoint pt;
  pt.t = t;
  pt.r.resize(t.size());
  for (size_t j = 0; j < t.size(); ++j) pt.r[j] = t[j] ? 0 : 1;
  for (int i = 0; i < inst.pool_count(); ++i) {
    const auto& mem = inst.pools[i].members;
    std::vector<std::uint8_t> s(mem.size(), 0);
    int designated = -1;
    for (int m = static_cast<int>(mem.size()) - 1; m >= 0; --m)
      if (t[mem[m]]) {
        designated = m;
        break;
      }
    if (designated >= 0) s[designated] = 1;
    pt.s.push_back(std::move(s));
    pt.p.push_back(designated >= 0 ? 0 : 1);
  }
  pt.value = point_value(inst, c, pt);
  return pt;
}

AdversaryPoint solve_bruteforce(const Instance& inst, const CutCoefficients& c) {
  check_coeff_sizes(inst, c);
  const int J = inst.unit_count();
  if (J > 20)
    throw std::invalid_argument("solve_bruteforce: enumeration capped at 20 units");

  AdversaryPoint best;
  bool have = false;
  for (unsigned mask = 0; mask < (1u << J); ++mask) {
    std::vector<std::uint8_t> t(J);
    for (int j = 0; j < J; ++j) t[j] = (mask >> j) & 1u;
    AdversaryPoint pt = complete_point(inst, c, t);
    if (!have || pt.value > best.value) {
      best = std::move(pt);
      have = true;
    }
  }
  return best;
}

AdversaryPoint solve_generic(const Instance& inst, const CutCoefficients& c) {
  check_coeff_sizes(inst, c);
  const int J = inst.unit_count(), I = inst.pool_count();

  LinearModel m;
  m.set_minimize(false);
  std::vector<int> t(J), r(J), p(I);
  std::vector<std::vector<int>> s(I);
  for (int j = 0; j < J; ++j) {
    t[j] = m.add_var(0.0, 1.0, true);
    r[j] = m.add_var(0.0, 1.0, false);
    m.set_objective(t[j], c.t[j]);
    m.set_objective(r[j], c.r[j]);
  }
  for (int i = 0; i < I; ++i) {
    p[i] = m.add_var(0.0, 1.0, false);
    m.set_objective(p[i], c.p[i]);
    for (size_t k = 0; k < inst.pools[i].members.size(); ++k) {
      s[i].push_back(m.add_var(0.0, 1.0, true));
      m.set_objective(s[i].back(), c.s[i]);
    }
  }

  for (int j = 0; j < J; ++j)
    m.add_row({t[j], r[j]}, {1.0, 1.0}, RowSense::Equal, 1.0);
  for (int i = 0; i < I; ++i) {
    const auto& mem = inst.pools[i].members;
    const int n = static_cast<int>(mem.size());
    {
      std::vector<int> idx = s[i];
      std::vector<double> coef(idx.size(), 1.0);
      idx.push_back(p[i]);
      coef.push_back(1.0);
      m.add_row(idx, coef, RowSense::Equal, 1.0);
    }
    for (int k = 0; k < n; ++k) {
      m.add_row({s[i][k], t[mem[k]]}, {1.0, -1.0}, RowSense::LessEqual, 0.0);
      for (int k2 = k + 1; k2 < n; ++k2)
        m.add_row({t[mem[k2]], s[i][k]}, {1.0, 1.0}, RowSense::LessEqual, 1.0);
      // marked units force a designated member at or above them
      std::vector<int> idx = {t[mem[k]]};
      std::vector<double> coef = {1.0};
      for (int k2 = k; k2 < n; ++k2) {
        idx.push_back(s[i][k2]);
        coef.push_back(-1.0);
      }
      m.add_row(idx, coef, RowSense::LessEqual, 0.0);
    }
  }

  const SolveOutcome out = solve(m);
  if (out.status != SolveStatus::Optimal)
    throw BackendError("adversary MILP did not solve to optimality");
  std::vector<std::uint8_t> tbits(J);
  for (int j = 0; j < J; ++j)
    tbits[j] = out.values[t[j]] > 0.5 ? 1 : 0;
  AdversaryPoint pt = complete_point(inst, c, tbits);
  assert(std::abs(pt.value - out.objective) <= 1e-6 * (1.0 + std::abs(pt.value)));
  return pt;
}

namespace {

// One-pool maximization over the member list: either no member is marked
// (the idle branch, worth cp + sum of r-coefficients), or some member m is
// the designated top mark. Ties go to the idle branch.
struct BranchChoice {
  int pick = -1;  // member position, -1 for the idle branch
  double value = 0.0;
};

BranchChoice best_branch(const std::vector<int>& members, const CutCoefficients& c,
                         double cp, double cs) {
  const int n = static_cast<int>(members.size());
  std::vector<double> suffix_r(n + 1, 0.0);
  for (int m = n - 1; m >= 0; --m)
    suffix_r[m] = suffix_r[m + 1] + c.r[members[m]];

  BranchChoice best{-1, cp + suffix_r[0]};
  double prefix_max = 0.0;
  for (int m = 0; m < n; ++m) {
    const int j = members[m];
    const double val = cs + c.t[j] + prefix_max + suffix_r[m + 1];
    if (val > best.value) best = {m, val};
    prefix_max += std::max(c.t[j], c.r[j]);
  }
  return best;
}

void mark_branch(const std::vector<int>& members, const CutCoefficients& c,
                 const BranchChoice& b, std::vector<std::uint8_t>& t) {
  if (b.pick < 0) return;
  for (int m = 0; m < b.pick; ++m) {
    const int j = members[m];
    t[j] = c.t[j] >= c.r[j] ? 1 : 0;
  }
  t[members[b.pick]] = 1;
}

}  // namespace

AdversaryPoint closed_one_pool(const Instance& inst, const CutCoefficients& c) {
  check_coeff_sizes(inst, c);
  if (classify_structure(inst) != PoolStructure::OnePool)
    throw std::invalid_argument("closed_one_pool: structure mismatch");

  const auto& mem = inst.pools[0].members;
  const BranchChoice b = best_branch(mem, c, c.p[0], c.s[0]);
  std::vector<std::uint8_t> t(inst.unit_count(), 0);
  mark_branch(mem, c, b, t);
  AdversaryPoint pt = complete_point(inst, c, t);
  assert(std::abs(pt.value - b.value) <= 1e-9 * (1.0 + std::abs(b.value)));
  return pt;
}

AdversaryPoint closed_disjoint(const Instance& inst, const CutCoefficients& c) {
  check_coeff_sizes(inst, c);
  const auto structure = classify_structure(inst);
  if (structure != PoolStructure::Disjoint && structure != PoolStructure::NoPool &&
      structure != PoolStructure::OnePool)
    throw std::invalid_argument("closed_disjoint: structure mismatch");

  std::vector<std::uint8_t> t(inst.unit_count(), 0);
  std::vector<bool> covered(inst.unit_count(), false);
  double total = 0.0;
  for (int i = 0; i < inst.pool_count(); ++i) {
    const auto& mem = inst.pools[i].members;
    const BranchChoice b = best_branch(mem, c, c.p[i], c.s[i]);
    mark_branch(mem, c, b, t);
    total += b.value;
    for (int j : mem) covered[j] = true;
  }
  for (int j = 0; j < inst.unit_count(); ++j) {
    if (covered[j]) continue;
    t[j] = c.t[j] > c.r[j] ? 1 : 0;
    total += std::max(c.t[j], c.r[j]);
  }
  AdversaryPoint pt = complete_point(inst, c, t);
  assert(std::abs(pt.value - total) <= 1e-9 * (1.0 + std::abs(total)));
  return pt;
}

AdversaryPoint solve_chained(const Instance& inst, const CutCoefficients& c) {
  check_coeff_sizes(inst, c);
  if (classify_structure(inst) != PoolStructure::Chained)
    throw std::invalid_argument("solve_chained: structure mismatch");
  const int n = inst.unit_count();

  // Pools contribute via 1 - p_i only; fold the s-coefficient into the
  // p-coefficient and a constant so the recursion tracks t alone.
  double base = 0.0;
  std::vector<double> cp(n);
  for (int i = 0; i < n; ++i) {
    base += c.s[i];
    cp[i] = c.p[i] - c.s[i];
  }

  // value[t1][ti], choice[i][t1][ti] = maximizing t_{i-1}
  double value[2][2];
  std::vector<std::array<std::array<std::uint8_t, 2>, 2>> choice(n);
  for (int t1 = 0; t1 < 2; ++t1)
    value[t1][t1] = c.t[0] * t1 + c.r[0] * (1 - t1);
  for (int i = 1; i < n; ++i) {
    double next[2][2];
    for (int t1 = 0; t1 < 2; ++t1)
      for (int ti = 0; ti < 2; ++ti) {
        next[t1][ti] = -kInf;
        const int lo = i == 1 ? t1 : 0;
        const int hi = i == 1 ? t1 : 1;
        for (int tp = lo; tp <= hi; ++tp) {
          const double cand = value[t1][tp] + c.t[i] * ti + c.r[i] * (1 - ti) +
                              cp[i - 1] * (1 - tp) * (1 - ti);
          if (cand > next[t1][ti]) {
            next[t1][ti] = cand;
            choice[i][t1][ti] = static_cast<std::uint8_t>(tp);
          }
        }
      }
    for (int t1 = 0; t1 < 2; ++t1)
      for (int ti = 0; ti < 2; ++ti) value[t1][ti] = next[t1][ti];
  }

  double best = -kInf;
  int best_t1 = 0, best_tn = 0;
  for (int t1 = 0; t1 < 2; ++t1)
    for (int tn = 0; tn < 2; ++tn) {
      const double cand =
          value[t1][tn] + cp[n - 1] * (1 - tn) * (1 - t1);
      if (cand > best) {
        best = cand;
        best_t1 = t1;
        best_tn = tn;
      }
    }

  std::vector<std::uint8_t> t(n);
  t[n - 1] = static_cast<std::uint8_t>(best_tn);
  t[0] = static_cast<std::uint8_t>(best_t1);
  for (int i = n - 1; i >= 1; --i)
    t[i - 1] = choice[i][best_t1][t[i]];

  AdversaryPoint pt = complete_point(inst, c, t);
  const double total = best + base;
  assert(std::abs(pt.value - total) <= 1e-9 * (1.0 + std::abs(total)));
  return pt;
}

AdversaryPoint solve_adversary(const Instance& inst, const CutCoefficients& c,
                               PoolStructure structure) {
  switch (structure) {
    case PoolStructure::NoPool:
    case PoolStructure::Disjoint:
      return closed_disjoint(inst, c);
    case PoolStructure::OnePool:
      return closed_one_pool(inst, c);
    case PoolStructure::Chained:
      return solve_chained(inst, c);
    case PoolStructure::Arbitrary:
      return solve_generic(inst, c);
  }
  throw std::logic_error("unreachable");
}

}  // namespace drns
