#include "drns/pool_design.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <thread>

#include "drns/reformulation.hpp"
#include "drns/solver.hpp"
#include "json.hpp"

namespace drns {

double default_big_k(const Instance& inst) {
  int max_demand = 0, max_range = 0;
  for (const auto& u : inst.units) {
    max_demand = std::max(max_demand, u.demand_max);
    max_range = std::max(max_range, u.staff_max - u.staff_min);
  }
  return inst.costs.temp_nurse * (max_demand + max_range);
}

namespace {

// Working instance whose pools are the candidate specs (members are
// irrelevant for the shared variable blocks and set to all units).
Instance candidate_instance(const Instance& tmpl, int candidates) {
  if (tmpl.pools.empty())
    throw DesignError("pool design needs at least one pool spec as a template");
  Instance work = tmpl;
  work.pools.clear();
  std::vector<int> all(tmpl.unit_count());
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i < candidates; ++i) {
    PoolSpec p = tmpl.pools[std::min<size_t>(i, tmpl.pools.size() - 1)];
    p.members = all;
    work.pools.push_back(std::move(p));
  }
  return work;
}

struct TargetRow {
  std::vector<int> idx;
  std::vector<double> coef;
  double constant = 0.0;  // added back when reporting the achieved cost
};

}  // namespace

PoolDesign solve_opd(const Instance& tmpl, double target, const OpdParams& params) {
  const int J = tmpl.unit_count();
  const int I = params.candidate_pools > 0 ? params.candidate_pools
                                           : std::max(1, J / 2);
  const Instance work = candidate_instance(tmpl, I);
  const double cx = work.costs.temp_nurse;
  const double cy = work.costs.pool_nurse;
  const double K = params.big_k > 0.0 ? params.big_k : default_big_k(work);

  LinearModel m;
  const ExpansionVars vars = add_expansion(m, work);
  const EpigraphVars epi = add_epigraphs(m, work, vars);

  // Move the staffing-cost and dual objective terms into the target row; the
  // design objective is the number of cross-trained pairs.
  TargetRow row;
  for (int var = 0; var < m.var_count(); ++var)
    if (m.objective_coeff(var) != 0.0) {
      row.idx.push_back(var);
      row.coef.push_back(m.objective_coeff(var));
    }
  row.constant = m.objective_constant();
  for (int i = 0; i < I; ++i)
    row.constant -= cy * work.pools[i].staff_min;  // re-added below, gated on o_i
  m.clear_objective();

  // assignment, open flags, pairing
  std::vector<std::vector<int>> a(I + 1, std::vector<int>(J));
  for (int i = 0; i <= I; ++i)
    for (int j = 0; j < J; ++j)
      a[i][j] = m.add_var(0.0, 1.0, true,
                          "assign_" + std::to_string(i) + "_" + std::to_string(j));
  std::vector<int> open(I);
  for (int i = 0; i < I; ++i)
    open[i] = m.add_var(0.0, 1.0, true, "open_" + std::to_string(i));
  std::vector<std::vector<int>> pair(J, std::vector<int>(J, -1));
  for (int j = 0; j < J; ++j)
    for (int k = j + 1; k < J; ++k) {
      pair[j][k] = m.add_var(0.0, 1.0, false,
                             "pair_" + std::to_string(j) + "_" + std::to_string(k));
      m.set_objective(pair[j][k], 1.0);
    }

  for (int j = 0; j < J; ++j) {
    std::vector<int> idx;
    for (int i = 0; i <= I; ++i) idx.push_back(a[i][j]);
    m.add_row(idx, std::vector<double>(idx.size(), 1.0), RowSense::Equal, 1.0);
  }
  for (int i = 0; i < I; ++i)
    for (int j = 0; j < J; ++j)
      m.add_row({a[i][j], open[i]}, {1.0, -1.0}, RowSense::LessEqual, 0.0);
  for (int i = 0; i < I; ++i)
    for (int j = 0; j < J; ++j)
      for (int k = j + 1; k < J; ++k)
        m.add_row({pair[j][k], a[i][j], a[i][k]}, {1.0, -1.0, -1.0},
                  RowSense::GreaterEqual, -1.0);

  // open-pool couplings: a closed pool keeps its dual multiplier and its
  // staffing variables at zero
  for (int i = 0; i < I; ++i) {
    m.add_row({vars.lambda[i], open[i]}, {1.0, cx}, RowSense::GreaterEqual, 0.0);
    if (!vars.v[i].empty())
      m.add_row({vars.v[i][0], open[i]}, {1.0, -1.0}, RowSense::LessEqual, 0.0);
  }

  if (params.symmetry_breaking) {
    for (int i = 0; i + 1 < I; ++i)
      m.add_row({open[i], open[i + 1]}, {1.0, -1.0}, RowSense::GreaterEqual, 0.0);
    // rank opened pools by their smallest member index
    for (int i = 0; i + 1 < I; ++i)
      for (int j = 0; j < J; ++j) {
        std::vector<int> idx = {a[i + 1][j]};
        std::vector<double> coef = {-1.0};
        for (int l = 0; l < j; ++l) {
          idx.push_back(a[i][l]);
          coef.push_back(1.0);
        }
        m.add_row(idx, coef, RowSense::GreaterEqual, 0.0);
      }
  }

  // per-(pool, unit) copies of the epigraph trio, boxed by the assignment
  std::vector<std::vector<int>> zeta_c(I + 1), eta_x_c(I + 1), eta_e_c(I + 1),
      chi_c(I + 1);
  for (int i = 0; i <= I; ++i)
    for (int j = 0; j < J; ++j) {
      const std::string tag = std::to_string(i) + "_" + std::to_string(j);
      const int zc = m.add_var(0.0, kInf, false, "zeta_c_" + tag);
      const int xc = m.add_var(-kInf, kInf, false, "eta_x_c_" + tag);
      const int ec = m.add_var(-kInf, kInf, false, "eta_e_c_" + tag);
      const int cc = m.add_var(-kInf, kInf, false, "chi_c_" + tag);
      m.add_row({zc, a[i][j]}, {1.0, -K}, RowSense::LessEqual, 0.0);
      m.add_row({xc, a[i][j]}, {1.0, -K}, RowSense::LessEqual, 0.0);
      m.add_row({xc, a[i][j]}, {1.0, K}, RowSense::GreaterEqual, 0.0);
      m.add_row({ec, a[i][j]}, {1.0, -K}, RowSense::LessEqual, 0.0);
      m.add_row({ec, a[i][j]}, {1.0, K}, RowSense::GreaterEqual, 0.0);
      m.add_row({cc, xc}, {1.0, -1.0}, RowSense::GreaterEqual, 0.0);
      m.add_row({cc, zc, ec}, {1.0, -1.0, -1.0}, RowSense::GreaterEqual, 0.0);
      zeta_c[i].push_back(zc);
      eta_x_c[i].push_back(xc);
      eta_e_c[i].push_back(ec);
      chi_c[i].push_back(cc);
    }
  for (int j = 0; j < J; ++j) {
    for (auto [agg, copies] : {std::pair{epi.zeta[j], &zeta_c},
                               std::pair{epi.eta_x[j], &eta_x_c},
                               std::pair{epi.eta_e[j], &eta_e_c}}) {
      std::vector<int> idx = {agg};
      std::vector<double> coef = {1.0};
      for (int i = 0; i <= I; ++i) {
        idx.push_back((*copies)[i][j]);
        coef.push_back(-1.0);
      }
      m.add_row(idx, coef, RowSense::Equal, 0.0);
    }
  }

  // worst-case rows per candidate (and the slot for unpooled units)
  std::vector<int> theta(I + 1);
  for (int i = 0; i <= I; ++i) {
    theta[i] = m.add_var(-kInf, kInf, false, "theta_" + std::to_string(i));
    {
      std::vector<int> idx = {theta[i]};
      std::vector<double> coef = {1.0};
      if (i < I) {
        idx.push_back(epi.pool_hinge[i]);
        coef.push_back(-1.0);
      }
      for (int l = 0; l < J; ++l) {
        idx.push_back(zeta_c[i][l]);
        coef.push_back(-1.0);
        idx.push_back(eta_e_c[i][l]);
        coef.push_back(-1.0);
      }
      m.add_row(idx, coef, RowSense::GreaterEqual, 0.0);
    }
    for (int j = 0; j < J; ++j) {
      std::vector<int> idx = {theta[i], eta_x_c[i][j]};
      std::vector<double> coef = {1.0, -1.0};
      for (int l = 0; l < j; ++l) {
        idx.push_back(chi_c[i][l]);
        coef.push_back(-1.0);
      }
      for (int l = j + 1; l < J; ++l) {
        idx.push_back(zeta_c[i][l]);
        coef.push_back(-1.0);
        idx.push_back(eta_e_c[i][l]);
        coef.push_back(-1.0);
      }
      m.add_row(idx, coef, RowSense::GreaterEqual, 0.0);
    }
  }

  // staffing budget, with pool lower bounds active only when opened
  if (work.resource_cap) {
    double rhs = static_cast<double>(*work.resource_cap);
    std::vector<int> idx;
    std::vector<double> coef;
    for (int j = 0; j < J; ++j) {
      rhs -= work.units[j].staff_min;
      for (int var : vars.u[j]) {
        idx.push_back(var);
        coef.push_back(1.0);
      }
    }
    for (int i = 0; i < I; ++i) {
      if (work.pools[i].staff_min > 0) {
        idx.push_back(open[i]);
        coef.push_back(static_cast<double>(work.pools[i].staff_min));
      }
      for (int var : vars.v[i]) {
        idx.push_back(var);
        coef.push_back(1.0);
      }
    }
    m.add_row(idx, coef, RowSense::LessEqual, rhs, "budget");
  }

  // the cost target
  {
    std::vector<int> idx = row.idx;
    std::vector<double> coef = row.coef;
    for (int i = 0; i <= I; ++i) {
      idx.push_back(theta[i]);
      coef.push_back(1.0);
    }
    for (int i = 0; i < I; ++i)
      if (work.pools[i].staff_min > 0) {
        idx.push_back(open[i]);
        coef.push_back(cy * work.pools[i].staff_min);
      }
    m.add_row(idx, coef, RowSense::LessEqual, target - row.constant, "target");
  }

  const SolveOutcome out = solve(m, params.backend);
  if (out.status == SolveStatus::Infeasible)
    throw DesignError("no disjoint design reaches the cost target " +
                      std::to_string(target));
  if (!out.has_point()) throw BackendError("pool design solve returned no point");

  PoolDesign d;
  d.target = target;
  d.assign.assign(I + 1, std::vector<std::uint8_t>(J, 0));
  for (int i = 0; i <= I; ++i)
    for (int j = 0; j < J; ++j)
      d.assign[i][j] = out.values[a[i][j]] > 0.5 ? 1 : 0;
  for (int i = 0; i < I; ++i)
    d.open.push_back(out.values[open[i]] > 0.5 ? 1 : 0);
  for (int j = 0; j < J; ++j)
    for (int k = j + 1; k < J; ++k)
      if (out.values[pair[j][k]] > 0.5) d.trained_pairs.emplace_back(j, k);
  d.pair_count = static_cast<int>(d.trained_pairs.size());

  double achieved = row.constant;
  for (size_t n = 0; n < row.idx.size(); ++n)
    achieved += row.coef[n] * out.values[row.idx[n]];
  for (int i = 0; i <= I; ++i) achieved += out.values[theta[i]];
  for (int i = 0; i < I; ++i)
    if (work.pools[i].staff_min > 0 && d.open[i])
      achieved += cy * work.pools[i].staff_min;
  d.achieved_dr_cost = achieved;
  return d;
}

std::vector<std::pair<double, int>> frontier(const Instance& tmpl, int points,
                                             const OpdParams& params) {
  if (points < 2) throw DesignError("frontier needs at least two points");
  const double z_one =
      solve_monolithic(merge_to_one_pool(tmpl), PoolStructure::OnePool,
                       params.backend)
          .dr_cost;
  const double z_none =
      solve_monolithic(strip_pools(tmpl), PoolStructure::NoPool, params.backend)
          .dr_cost;

  std::vector<double> targets(points);
  for (int k = 0; k < points; ++k)
    targets[k] = z_none + (z_one - z_none) * k / (points - 1);

  std::vector<std::pair<double, int>> out(points);
  const int jobs = std::max(1, params.jobs);
  std::vector<std::thread> workers;
  std::atomic<int> next{0};
  auto run = [&] {
    for (int k = next.fetch_add(1); k < points; k = next.fetch_add(1))
      out[k] = {targets[k], solve_opd(tmpl, targets[k], params).pair_count};
  };
  if (jobs == 1) {
    run();
  } else {
    for (int t = 0; t < jobs; ++t) workers.emplace_back(run);
    for (auto& w : workers) w.join();
  }
  return out;
}

Instance realize_design(const Instance& tmpl, const PoolDesign& design) {
  const int I = static_cast<int>(design.open.size());
  Instance out = tmpl;
  out.pools.clear();
  for (int i = 0; i < I; ++i) {
    if (!design.open[i]) continue;
    PoolSpec p = tmpl.pools[std::min<size_t>(i, tmpl.pools.size() - 1)];
    p.members.clear();
    for (int j = 0; j < tmpl.unit_count(); ++j)
      if (design.assign[i][j]) p.members.push_back(j);
    if (!p.members.empty()) out.pools.push_back(std::move(p));
  }
  out.label = tmpl.label + "-designed";
  return out;
}

void write_design(const PoolDesign& d, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["target"] = d.target;
  doc["achieved_dr_cost"] = d.achieved_dr_cost;
  doc["pair_count"] = d.pair_count;
  doc["open"] = d.open;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : d.assign) rows.push_back(r);
  doc["assign"] = rows;
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [j, k] : d.trained_pairs) pairs.push_back({j + 1, k + 1});
  doc["trained_pairs"] = pairs;
  std::ofstream out(path);
  if (!out) throw DesignError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

PoolDesign read_design(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DesignError("cannot open " + path.string());
  nlohmann::json doc = nlohmann::json::parse(in);
  PoolDesign d;
  d.target = doc.at("target").get<double>();
  d.achieved_dr_cost = doc.at("achieved_dr_cost").get<double>();
  d.pair_count = doc.at("pair_count").get<int>();
  d.open = doc.at("open").get<std::vector<std::uint8_t>>();
  for (const auto& r : doc.at("assign"))
    d.assign.push_back(r.get<std::vector<std::uint8_t>>());
  for (const auto& pr : doc.at("trained_pairs"))
    d.trained_pairs.emplace_back(pr.at(0).get<int>() - 1, pr.at(1).get<int>() - 1);
  return d;
}

}  // namespace drns
