#include "drns/solver.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>

#include "drns/adversary.hpp"
#include "drns/ambiguity.hpp"
#include "drns/reformulation.hpp"

namespace drns {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_feasible_data(const Instance& inst) {
  if (auto why = staffing_box_feasible(inst))
    throw SolverError("ambiguity set may be empty: " + *why);
  const auto fits = moment_feasibility(inst);
  for (size_t j = 0; j < fits.size(); ++j)
    if (fits[j].gap > 1e-7)
      throw SolverError("ambiguity set is empty: demand moments of unit " +
                        std::to_string(j) + " are not representable on the "
                        "support box (gap " + std::to_string(fits[j].gap) + ")");
}

StaffingSolution make_solution(const Instance& inst, const Staffing& st,
                               double dr_cost, std::string method, int cuts,
                               double wall) {
  StaffingSolution sol;
  sol.unit_staff = st.unit_staff;
  sol.pool_staff = st.pool_staff;
  sol.dr_cost = dr_cost;
  sol.first_stage_cost = first_stage_cost(inst, st);
  sol.worst_case_expectation = dr_cost - sol.first_stage_cost;
  sol.method = std::move(method);
  sol.cuts_used = cuts;
  sol.wall_time_s = wall;
  return sol;
}

// theta >= eta_x[pivot] + sum_{l member, l < pivot} chi_l
//        + sum_{l member, l > pivot} (zeta_l + eta_e_l); pivot < 0 encodes the
// idle branch theta >= [hinge +] sum_l (zeta_l + eta_e_l).
void add_pool_rows(LinearModel& m, const EpigraphVars& epi, int theta,
                   const std::vector<int>& members, int hinge_var) {
  {
    std::vector<int> idx = {theta};
    std::vector<double> coef = {1.0};
    if (hinge_var >= 0) {
      idx.push_back(hinge_var);
      coef.push_back(-1.0);
    }
    for (int l : members) {
      idx.push_back(epi.zeta[l]);
      coef.push_back(-1.0);
      idx.push_back(epi.eta_e[l]);
      coef.push_back(-1.0);
    }
    m.add_row(idx, coef, RowSense::GreaterEqual, 0.0);
  }
  for (size_t mpos = 0; mpos < members.size(); ++mpos) {
    std::vector<int> idx = {theta, epi.eta_x[members[mpos]]};
    std::vector<double> coef = {1.0, -1.0};
    for (size_t l = 0; l < mpos; ++l) {
      idx.push_back(epi.chi[members[l]]);
      coef.push_back(-1.0);
    }
    for (size_t l = mpos + 1; l < members.size(); ++l) {
      idx.push_back(epi.zeta[members[l]]);
      coef.push_back(-1.0);
      idx.push_back(epi.eta_e[members[l]]);
      coef.push_back(-1.0);
    }
    m.add_row(idx, coef, RowSense::GreaterEqual, 0.0);
  }
}

void add_chain_rows(LinearModel& m, const Instance& inst, const EpigraphVars& epi,
                    int theta) {
  const int n = inst.unit_count();
  const int source = m.add_var(-kInf, kInf, false, "path_source");
  const int sink = m.add_var(-kInf, kInf, false, "path_sink");
  m.add_row({theta, source, sink}, {1.0, -1.0, 1.0}, RowSense::GreaterEqual, 0.0);

  // node potentials: layer 1 per t1, layers 2..n per (t1, ti)
  int first_layer[2];
  for (int t1 = 0; t1 < 2; ++t1)
    first_layer[t1] = m.add_var(-kInf, kInf, false,
                                "path_1_" + std::to_string(t1));
  std::vector<std::array<std::array<int, 2>, 2>> layers(n);
  for (int i = 1; i < n; ++i)
    for (int t1 = 0; t1 < 2; ++t1)
      for (int ti = 0; ti < 2; ++ti)
        layers[i][t1][ti] = m.add_var(-kInf, kInf, false,
                                      "path_" + std::to_string(i + 1) + "_" +
                                          std::to_string(t1) + std::to_string(ti));

  for (int t1 = 0; t1 < 2; ++t1) {
    std::vector<int> idx = {source, first_layer[t1]};
    std::vector<double> coef = {1.0, -1.0};
    if (t1 == 1) {
      idx.push_back(epi.eta_x[0]);
      coef.push_back(-1.0);
    } else {
      idx.push_back(epi.zeta[0]);
      coef.push_back(-1.0);
      idx.push_back(epi.eta_e[0]);
      coef.push_back(-1.0);
    }
    m.add_row(idx, coef, RowSense::GreaterEqual, 0.0);
  }

  for (int i = 1; i < n; ++i)
    for (int t1 = 0; t1 < 2; ++t1)
      for (int tp = 0; tp < 2; ++tp) {
        if (i == 1 && tp != t1) continue;  // layer 1 only has the diagonal state
        const int tail = i == 1 ? first_layer[t1] : layers[i - 1][t1][tp];
        for (int ti = 0; ti < 2; ++ti) {
          std::vector<int> idx = {tail, layers[i][t1][ti]};
          std::vector<double> coef = {1.0, -1.0};
          if (ti == 1) {
            idx.push_back(epi.eta_x[i]);
            coef.push_back(-1.0);
          } else {
            idx.push_back(epi.zeta[i]);
            coef.push_back(-1.0);
            idx.push_back(epi.eta_e[i]);
            coef.push_back(-1.0);
            if (tp == 0) {
              idx.push_back(epi.pool_hinge[i - 1]);
              coef.push_back(-1.0);
            }
          }
          m.add_row(idx, coef, RowSense::GreaterEqual, 0.0);
        }
      }

  for (int t1 = 0; t1 < 2; ++t1)
    for (int tn = 0; tn < 2; ++tn) {
      std::vector<int> idx = {layers[n - 1][t1][tn], sink};
      std::vector<double> coef = {1.0, -1.0};
      if (t1 == 0 && tn == 0) {
        idx.push_back(epi.pool_hinge[n - 1]);
        coef.push_back(-1.0);
      }
      m.add_row(idx, coef, RowSense::GreaterEqual, 0.0);
    }
}

}  // namespace

Instance strip_pools(const Instance& inst) {
  Instance copy = inst;
  copy.pools.clear();
  copy.label = inst.label + "-nopool";
  return copy;
}

Instance merge_to_one_pool(const Instance& inst) {
  if (inst.pools.empty())
    throw SolverError("merge_to_one_pool: no pool spec to replicate");
  Instance copy = inst;
  PoolSpec merged = inst.pools[0];
  merged.members.resize(inst.unit_count());
  std::iota(merged.members.begin(), merged.members.end(), 0);
  copy.pools = {std::move(merged)};
  copy.label = inst.label + "-onepool";
  return copy;
}

StaffingSolution solve_monolithic(const Instance& inst, PoolStructure structure,
                                  const SolveParams& params) {
  if (classify_structure(inst) != structure)
    throw SolverError(std::string("solve_monolithic: instance is not ") +
                      to_string(structure));
  if (structure == PoolStructure::Arbitrary)
    throw SolverError("solve_monolithic: arbitrary structures need the separation solver");
  require_feasible_data(inst);

  const auto start = Clock::now();
  LinearModel m;
  const ExpansionVars vars = add_expansion(m, inst);
  const EpigraphVars epi = add_epigraphs(m, inst, vars);
  add_budget_row(m, inst, vars);

  switch (structure) {
    case PoolStructure::NoPool: {
      const int theta = m.add_var(-kInf, kInf, false, "theta");
      m.set_objective(theta, 1.0);
      std::vector<int> all(inst.unit_count());
      std::iota(all.begin(), all.end(), 0);
      add_pool_rows(m, epi, theta, all, -1);
      break;
    }
    case PoolStructure::OnePool: {
      const int theta = m.add_var(-kInf, kInf, false, "theta");
      m.set_objective(theta, 1.0);
      add_pool_rows(m, epi, theta, inst.pools[0].members, epi.pool_hinge[0]);
      break;
    }
    case PoolStructure::Disjoint: {
      std::vector<bool> covered(inst.unit_count(), false);
      for (int i = 0; i < inst.pool_count(); ++i) {
        const int theta_i =
            m.add_var(-kInf, kInf, false, "theta_" + std::to_string(i));
        m.set_objective(theta_i, 1.0);
        add_pool_rows(m, epi, theta_i, inst.pools[i].members, epi.pool_hinge[i]);
        for (int j : inst.pools[i].members) covered[j] = true;
      }
      for (int j = 0; j < inst.unit_count(); ++j)
        if (!covered[j]) m.set_objective(epi.chi[j], 1.0);
      break;
    }
    case PoolStructure::Chained: {
      const int theta = m.add_var(-kInf, kInf, false, "theta");
      m.set_objective(theta, 1.0);
      add_chain_rows(m, inst, epi, theta);
      break;
    }
    case PoolStructure::Arbitrary:
      break;  // rejected above
  }

  const SolveOutcome out = solve(m, params);
  if (out.status == SolveStatus::Infeasible)
    throw SolverError("monolithic model infeasible; check the staffing budget");
  if (!out.has_point())
    throw BackendError("monolithic solve returned no point");

  MasterModel shim;
  shim.vars = vars;
  const Staffing st = extract_staffing(inst, shim, out.values);
  return make_solution(inst, st, out.objective,
                       std::string("milp-") + to_string(structure), 0,
                       seconds_since(start));
}

SeparationResult solve_separation(const Instance& inst,
                                  const SeparationParams& params) {
  require_feasible_data(inst);
  const auto start = Clock::now();
  const PoolStructure structure = classify_structure(inst);

  MasterModel mm = build_master(inst);
  const CutCoefficients zero{std::vector<double>(inst.unit_count(), 0.0),
                             std::vector<double>(inst.unit_count(), 0.0),
                             std::vector<double>(inst.pool_count(), 0.0),
                             std::vector<double>(inst.pool_count(), 0.0)};
  encode_cut(mm, inst, complete_point(inst, zero,
                                      std::vector<std::uint8_t>(inst.unit_count(), 0)));
  encode_cut(mm, inst, complete_point(inst, zero,
                                      std::vector<std::uint8_t>(inst.unit_count(), 1)));

  SeparationResult res;
  SolveOutcome incumbent;
  for (int iter = 1; iter <= params.max_iter; ++iter) {
    SolveParams sp = params.backend;
    if (params.time_limit < kInf)
      sp.time_limit = std::min(sp.time_limit,
                               std::max(1.0, params.time_limit - seconds_since(start)));
    SolveOutcome out = solve(mm.model, sp);
    if (out.status != SolveStatus::Optimal) {
      if (out.status == SolveStatus::Limit && out.has_point()) {
        incumbent = std::move(out);
        break;
      }
      throw SolverError("separation master did not solve to optimality");
    }
    incumbent = std::move(out);

    const MasterIterate it = extract_iterate(inst, mm, incumbent.values);
    const CutCoefficients coef = coefficients(inst, it);
    const AdversaryPoint pt = solve_adversary(inst, coef, structure);
    const double theta = incumbent.values[mm.theta];
    const double violation = pt.value - theta;

    res.log.push_back({iter, incumbent.objective, pt.value, violation,
                       static_cast<int>(mm.cut_keys.size()),
                       seconds_since(start)});

    if (theta >= pt.value - params.eps) {
      const Staffing st = extract_staffing(inst, mm, incumbent.values);
      res.solution = make_solution(inst, st, incumbent.objective,
                                   std::string("separation-") + to_string(structure),
                                   static_cast<int>(mm.cut_keys.size()),
                                   seconds_since(start));
      res.converged = true;
      res.final_iterate = it;
      res.final_theta = theta;
      return res;
    }
    if (!encode_cut(mm, inst, pt))
      throw SolverError("separation stalled: the violated vertex was already encoded");
    if (seconds_since(start) > params.time_limit) break;
  }

  // Limit hit: report the last master point as the incumbent.
  if (!incumbent.has_point())
    throw SolverError("separation hit its limit without an incumbent");
  res.final_iterate = extract_iterate(inst, mm, incumbent.values);
  res.final_theta = incumbent.values[mm.theta];
  const Staffing st = extract_staffing(inst, mm, incumbent.values);
  res.solution = make_solution(inst, st, incumbent.objective,
                               std::string("separation-limit-") + to_string(structure),
                               static_cast<int>(mm.cut_keys.size()),
                               seconds_since(start));
  res.converged = false;
  return res;
}

FlexibilityValue flexibility_value(const Instance& inst, const SolveParams& params) {
  for (const auto& p : inst.pools)
    if (p.staff_min != 0)
      throw SolverError("flexibility_value needs zero pool staffing lower bounds");

  FlexibilityValue fv;
  fv.no_pool_cost =
      solve_monolithic(strip_pools(inst), PoolStructure::NoPool, params).dr_cost;
  fv.one_pool_cost =
      solve_monolithic(merge_to_one_pool(inst), PoolStructure::OnePool, params).dr_cost;
  fv.ovg_percent = fv.no_pool_cost != 0.0
                       ? (fv.no_pool_cost - fv.one_pool_cost) / fv.no_pool_cost * 100.0
                       : 0.0;
  return fv;
}

void write_iteration_log(const std::vector<IterationRecord>& log,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SolverError("cannot write " + path.string());
  out << "iter,master_obj,separation_value,violation,cuts,elapsed_s\n";
  out.precision(12);
  for (const auto& r : log)
    out << r.iter << ',' << r.master_obj << ',' << r.separation_value << ','
        << r.violation << ',' << r.cuts << ',' << r.elapsed_s << '\n';
}

}  // namespace drns
