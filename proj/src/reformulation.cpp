#include "drns/reformulation.hpp"

#include <cmath>

namespace drns {

ExpansionVars add_expansion(LinearModel& m, const Instance& inst) {
  const double cx = inst.costs.temp_nurse;
  const double cw = inst.costs.unit_nurse;
  const double cy = inst.costs.pool_nurse;

  ExpansionVars x;
  for (int j = 0; j < inst.unit_count(); ++j) {
    const auto& unit = inst.units[j];
    const std::string tag = "u" + std::to_string(j);
    const int gamma = m.add_var(-cx, 0.0, false, "gamma_" + tag);
    m.add_objective(gamma, unit.attendance.values.front());  // f_j at the lower bound
    x.gamma.push_back(gamma);

    std::vector<int> rho;
    for (size_t q = 0; q < unit.moments.size(); ++q) {
      rho.push_back(m.add_var(-kInf, kInf, false,
                              "rho_" + tag + "_" + std::to_string(q + 1)));
      m.add_objective(rho.back(), unit.moments[q]);
    }
    x.rho.push_back(std::move(rho));
    m.add_objective_constant(cw * unit.staff_min);

    std::vector<int> u, phi;
    const int range = unit.staff_max - unit.staff_min;
    for (int k = 0; k < range; ++k) {
      const std::string kk = tag + "_" + std::to_string(k + 1);
      u.push_back(m.add_var(0.0, 1.0, true, "w_" + kk));
      phi.push_back(m.add_var(-cx, 0.0, false, "phi_" + kk));
      m.add_objective(u.back(), cw);
      m.add_objective(phi.back(), unit.attendance.increment(k + 1));
      // exact product rows: phi = u * gamma for binary u, gamma in [-cx, 0]
      m.add_row({phi.back(), gamma}, {1.0, -1.0}, RowSense::GreaterEqual, 0.0);
      m.add_row({phi.back(), u.back()}, {1.0, cx}, RowSense::GreaterEqual, 0.0);
      m.add_row({phi.back(), gamma, u.back()}, {1.0, -1.0, cx}, RowSense::LessEqual, cx);
      if (k > 0)
        m.add_row({u[k - 1], u[k]}, {1.0, -1.0}, RowSense::GreaterEqual, 0.0);
    }
    x.u.push_back(std::move(u));
    x.phi.push_back(std::move(phi));
  }

  for (int i = 0; i < inst.pool_count(); ++i) {
    const auto& pool = inst.pools[i];
    const std::string tag = "p" + std::to_string(i);
    const int lambda = m.add_var(-cx, 0.0, false, "lambda_" + tag);
    m.add_objective(lambda, pool.attendance.values.front());
    x.lambda.push_back(lambda);
    m.add_objective_constant(cy * pool.staff_min);

    std::vector<int> v, nu;
    const int range = pool.staff_max - pool.staff_min;
    for (int l = 0; l < range; ++l) {
      const std::string ll = tag + "_" + std::to_string(l + 1);
      v.push_back(m.add_var(0.0, 1.0, true, "y_" + ll));
      nu.push_back(m.add_var(-cx, 0.0, false, "nu_" + ll));
      m.add_objective(v.back(), cy);
      m.add_objective(nu.back(), pool.attendance.increment(l + 1));
      m.add_row({nu.back(), lambda}, {1.0, -1.0}, RowSense::GreaterEqual, 0.0);
      m.add_row({nu.back(), v.back()}, {1.0, cx}, RowSense::GreaterEqual, 0.0);
      m.add_row({nu.back(), lambda, v.back()}, {1.0, -1.0, cx}, RowSense::LessEqual, cx);
      if (l > 0)
        m.add_row({v[l - 1], v[l]}, {1.0, -1.0}, RowSense::GreaterEqual, 0.0);
    }
    x.v.push_back(std::move(v));
    x.nu.push_back(std::move(nu));
  }
  return x;
}

EpigraphVars add_epigraphs(LinearModel& m, const Instance& inst,
                           const ExpansionVars& x) {
  const double cx = inst.costs.temp_nurse, ce = inst.costs.excess_credit;
  EpigraphVars e;
  for (int j = 0; j < inst.unit_count(); ++j) {
    const auto& unit = inst.units[j];
    const int points = unit.demand_max - unit.demand_min + 1;
    if (points > 10000)
      throw std::invalid_argument("demand support too large for unit " +
                                  std::to_string(j));
    const std::string tag = std::to_string(j);
    const int eta_x = m.add_var(-kInf, kInf, false, "eta_x_" + tag);
    const int eta_e = m.add_var(-kInf, kInf, false, "eta_e_" + tag);
    const int zeta = m.add_var(0.0, kInf, false, "zeta_" + tag);
    const int chi = m.add_var(-kInf, kInf, false, "chi_" + tag);

    for (int d = unit.demand_min; d <= unit.demand_max; ++d) {
      std::vector<int> idx = {eta_x};
      std::vector<double> coef = {1.0};
      double power = 1.0;
      for (int rho : x.rho[j]) {
        power *= d;
        idx.push_back(rho);
        coef.push_back(power);
      }
      m.add_row(idx, coef, RowSense::GreaterEqual, cx * d);
      idx[0] = eta_e;
      m.add_row(idx, coef, RowSense::GreaterEqual, ce * d);
    }

    // zeta >= (-ce - gamma) w_min - sum_k (phi_k + ce u_k)
    std::vector<int> idx = {zeta, x.gamma[j]};
    std::vector<double> coef = {1.0, static_cast<double>(unit.staff_min)};
    for (size_t k = 0; k < x.u[j].size(); ++k) {
      idx.push_back(x.phi[j][k]);
      coef.push_back(1.0);
      idx.push_back(x.u[j][k]);
      coef.push_back(ce);
    }
    m.add_row(idx, coef, RowSense::GreaterEqual, -ce * unit.staff_min);

    m.add_row({chi, eta_x}, {1.0, -1.0}, RowSense::GreaterEqual, 0.0);
    m.add_row({chi, zeta, eta_e}, {1.0, -1.0, -1.0}, RowSense::GreaterEqual, 0.0);

    e.eta_x.push_back(eta_x);
    e.eta_e.push_back(eta_e);
    e.zeta.push_back(zeta);
    e.chi.push_back(chi);
  }

  for (int i = 0; i < inst.pool_count(); ++i) {
    const auto& pool = inst.pools[i];
    const int hinge = m.add_var(0.0, kInf, false, "pool_hinge_" + std::to_string(i));
    std::vector<int> idx = {hinge, x.lambda[i]};
    std::vector<double> coef = {1.0, static_cast<double>(pool.staff_min)};
    for (size_t l = 0; l < x.v[i].size(); ++l) {
      idx.push_back(x.nu[i][l]);
      coef.push_back(1.0);
      idx.push_back(x.v[i][l]);
      coef.push_back(ce);
    }
    m.add_row(idx, coef, RowSense::GreaterEqual, -ce * pool.staff_min);
    e.pool_hinge.push_back(hinge);
  }
  return e;
}

void add_budget_row(LinearModel& m, const Instance& inst, const ExpansionVars& x) {
  if (!inst.resource_cap) return;
  double rhs = static_cast<double>(*inst.resource_cap);
  std::vector<int> idx;
  for (int j = 0; j < inst.unit_count(); ++j) {
    rhs -= inst.units[j].staff_min;
    for (int var : x.u[j]) idx.push_back(var);
  }
  for (int i = 0; i < inst.pool_count(); ++i) {
    rhs -= inst.pools[i].staff_min;
    for (int var : x.v[i]) idx.push_back(var);
  }
  if (!idx.empty())
    m.add_row(idx, std::vector<double>(idx.size(), 1.0), RowSense::LessEqual, rhs,
              "budget");
}

double theta_floor(const Instance& inst) {
  double demand_side = 0.0, excess_side = 0.0;
  for (const auto& u : inst.units) {
    demand_side += inst.costs.temp_nurse * u.demand_max;
    excess_side += inst.costs.excess_credit * u.staff_max;
  }
  for (const auto& p : inst.pools)
    excess_side += inst.costs.excess_credit * p.staff_max;
  return std::min(-demand_side, -excess_side) - 1.0;
}

MasterModel build_master(const Instance& inst) {
  MasterModel mm;
  mm.vars = add_expansion(mm.model, inst);
  mm.epi = add_epigraphs(mm.model, inst, mm.vars);
  add_budget_row(mm.model, inst, mm.vars);
  mm.theta = mm.model.add_var(theta_floor(inst), kInf, false, "theta");
  mm.model.set_objective(mm.theta, 1.0);
  return mm;
}

bool encode_cut(MasterModel& mm, const Instance& inst, const AdversaryPoint& pt) {
  std::vector<std::uint8_t> key = pt.t;
  for (const auto& s : pt.s) key.insert(key.end(), s.begin(), s.end());
  if (!mm.cut_keys.insert(key).second) return false;

  std::vector<int> idx = {mm.theta};
  std::vector<double> coef = {1.0};
  for (int j = 0; j < inst.unit_count(); ++j) {
    if (pt.t[j]) {
      idx.push_back(mm.epi.eta_x[j]);
      coef.push_back(-1.0);
    } else {
      idx.push_back(mm.epi.zeta[j]);
      coef.push_back(-1.0);
      idx.push_back(mm.epi.eta_e[j]);
      coef.push_back(-1.0);
    }
  }
  for (int i = 0; i < inst.pool_count(); ++i)
    if (pt.p[i]) {
      idx.push_back(mm.epi.pool_hinge[i]);
      coef.push_back(-1.0);
    }
  mm.model.add_row(std::move(idx), std::move(coef), RowSense::GreaterEqual, 0.0,
                   "cut_" + std::to_string(mm.cut_keys.size()));
  return true;
}

MasterIterate extract_iterate(const Instance& inst, const MasterModel& mm,
                              const std::vector<double>& x) {
  MasterIterate it;
  for (int j = 0; j < inst.unit_count(); ++j) {
    it.gamma.push_back(x[mm.vars.gamma[j]]);
    std::vector<double> rho, u, phi;
    for (int var : mm.vars.rho[j]) rho.push_back(x[var]);
    for (int var : mm.vars.u[j]) u.push_back(std::round(x[var]));
    for (int var : mm.vars.phi[j]) phi.push_back(x[var]);
    it.rho.push_back(std::move(rho));
    it.u.push_back(std::move(u));
    it.phi.push_back(std::move(phi));
  }
  for (int i = 0; i < inst.pool_count(); ++i) {
    it.lambda.push_back(x[mm.vars.lambda[i]]);
    std::vector<double> v, nu;
    for (int var : mm.vars.v[i]) v.push_back(std::round(x[var]));
    for (int var : mm.vars.nu[i]) nu.push_back(x[var]);
    it.v.push_back(std::move(v));
    it.nu.push_back(std::move(nu));
  }
  return it;
}

Staffing extract_staffing(const Instance& inst, const MasterModel& mm,
                          const std::vector<double>& x) {
  Staffing st;
  for (int j = 0; j < inst.unit_count(); ++j) {
    int w = inst.units[j].staff_min;
    for (int var : mm.vars.u[j]) w += x[var] > 0.5 ? 1 : 0;
    st.unit_staff.push_back(w);
  }
  for (int i = 0; i < inst.pool_count(); ++i) {
    int y = inst.pools[i].staff_min;
    for (int var : mm.vars.v[i]) y += x[var] > 0.5 ? 1 : 0;
    st.pool_staff.push_back(y);
  }
  return st;
}

}  // namespace drns
