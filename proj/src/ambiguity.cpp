#include "drns/ambiguity.hpp"

#include <cmath>

#include "drns/backend.hpp"

namespace drns {

std::vector<MomentFit> moment_feasibility(const Instance& inst) {
  std::vector<MomentFit> fits;
  fits.reserve(inst.units.size());
  for (const auto& u : inst.units) {
    const int points = u.demand_max - u.demand_min + 1;
    const int Q = static_cast<int>(u.moments.size());

    LinearModel m;
    std::vector<int> p(points);
    for (int k = 0; k < points; ++k) p[k] = m.add_var(0.0, kInf, false);
    std::vector<int> tau_pos(Q), tau_neg(Q);
    for (int q = 0; q < Q; ++q) {
      tau_pos[q] = m.add_var(0.0, kInf, false);
      tau_neg[q] = m.add_var(0.0, kInf, false);
      m.set_objective(tau_pos[q], 1.0);
      m.set_objective(tau_neg[q], 1.0);
    }

    for (int q = 0; q < Q; ++q) {
      std::vector<int> idx;
      std::vector<double> coef;
      for (int k = 0; k < points; ++k) {
        idx.push_back(p[k]);
        coef.push_back(std::pow(static_cast<double>(u.demand_min + k), q + 1));
      }
      idx.push_back(tau_pos[q]);
      coef.push_back(1.0);
      idx.push_back(tau_neg[q]);
      coef.push_back(-1.0);
      m.add_row(idx, coef, RowSense::Equal, u.moments[q]);
    }
    m.add_row(p, std::vector<double>(points, 1.0), RowSense::Equal, 1.0);

    const SolveOutcome out = solve(m);
    if (out.status != SolveStatus::Optimal)
      throw BackendError("moment feasibility LP did not solve");
    MomentFit fit;
    fit.gap = out.objective;
    for (int k = 0; k < points; ++k)
      fit.pmf.push_back(std::max(0.0, out.values[p[k]]));
    fits.push_back(std::move(fit));
  }
  return fits;
}

FeasibilityReport check_feasibility(const Instance& inst, const Staffing& st,
                                    double tol) {
  const int J = inst.unit_count(), I = inst.pool_count();
  if (static_cast<int>(st.unit_staff.size()) != J ||
      static_cast<int>(st.pool_staff.size()) != I)
    throw std::invalid_argument("check_feasibility: staffing dimension mismatch");

  FeasibilityReport rep;
  rep.overall = true;
  for (int j = 0; j < J; ++j) {
    const double mean = inst.units[j].attendance.at(st.unit_staff[j]);
    const bool ok = mean >= 0.0 && mean <= st.unit_staff[j];
    rep.unit_mean_ok.push_back(ok);
    rep.overall = rep.overall && ok;
  }
  for (int i = 0; i < I; ++i) {
    const double mean = inst.pools[i].attendance.at(st.pool_staff[i]);
    const bool ok = mean >= 0.0 && mean <= st.pool_staff[i];
    rep.pool_mean_ok.push_back(ok);
    rep.overall = rep.overall && ok;
  }
  for (auto& fit : moment_feasibility(inst)) {
    rep.overall = rep.overall && fit.gap <= tol;
    rep.moment_gap.push_back(fit.gap);
    rep.demand_pmf.push_back(std::move(fit.pmf));
  }
  return rep;
}

std::optional<std::string> staffing_box_feasible(const Instance& inst) {
  for (int j = 0; j < inst.unit_count(); ++j) {
    const auto& u = inst.units[j];
    for (int w = u.staff_min; w <= u.staff_max; ++w) {
      const double mean = u.attendance.at(w);
      if (mean < 0.0 || mean > w)
        return "units[" + std::to_string(j) + "]: expected show-ups " +
               std::to_string(mean) + " outside [0, " + std::to_string(w) +
               "] at staffing " + std::to_string(w);
    }
  }
  for (int i = 0; i < inst.pool_count(); ++i) {
    const auto& p = inst.pools[i];
    for (int y = p.staff_min; y <= p.staff_max; ++y) {
      const double mean = p.attendance.at(y);
      if (mean < 0.0 || mean > y)
        return "pools[" + std::to_string(i) + "]: expected show-ups " +
               std::to_string(mean) + " outside [0, " + std::to_string(y) +
               "] at staffing " + std::to_string(y);
    }
  }
  return std::nullopt;
}

}  // namespace drns
