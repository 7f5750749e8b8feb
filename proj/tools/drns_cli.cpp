#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "drns/ambiguity.hpp"
#include "drns/evaluate.hpp"
#include "drns/model.hpp"
#include "drns/pool_design.hpp"
#include "drns/solver.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kRejected = 2;  // validation failure or infeasibility

drns::PoolStructure parse_structure(const std::string& name) {
  const auto s = drns::structure_from_string(name);
  if (!s) throw CLI::ValidationError("structure", "unknown structure " + name);
  return *s;
}

int cmd_generate(const std::string& out_path, std::uint64_t seed, int units,
                 int pools, const std::string& structure, double staff_floor,
                 double ceiling) {
  drns::Instance inst = drns::generate_instance(
      seed, units, pools, parse_structure(structure), {staff_floor, ceiling});
  drns::write_instance(inst, out_path);
  std::cerr << "wrote " << inst.label << " to " << out_path << "\n";
  return kOk;
}

int cmd_check(const std::string& path) {
  const drns::Instance inst = drns::read_instance(path);
  const auto violations = drns::validate(inst);
  for (const auto& v : violations) std::cout << "violation: " << v << "\n";
  if (!violations.empty()) return kRejected;

  if (const auto why = drns::staffing_box_feasible(inst)) {
    std::cout << "ambiguity set may be empty (mean show-up condition): " << *why
              << "\n";
    return kRejected;
  }
  bool ok = true;
  const auto fits = drns::moment_feasibility(inst);
  for (size_t j = 0; j < fits.size(); ++j)
    if (fits[j].gap > 1e-7) {
      std::cout << "ambiguity set is empty (moment representability): unit "
                << j + 1 << " gap " << fits[j].gap << "\n";
      ok = false;
    }
  if (!ok) return kRejected;
  std::cout << "ok: " << (inst.label.empty() ? path : inst.label) << " ("
            << drns::to_string(drns::classify_structure(inst)) << ", "
            << inst.unit_count() << " units, " << inst.pool_count()
            << " pools)\n";
  return kOk;
}

int cmd_solve(const std::string& path, const std::string& method,
              const std::string& structure, const std::string& out_path,
              const std::string& log_path, double eps, int max_iter,
              double time_limit, double mip_gap) {
  const drns::Instance inst = drns::read_instance(path);
  const auto violations = drns::validate(inst);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
    return kRejected;
  }
  const drns::PoolStructure actual = drns::classify_structure(inst);
  const drns::PoolStructure wanted =
      structure == "auto" ? actual : parse_structure(structure);

  drns::SolveParams sp;
  sp.mip_gap = mip_gap;
  if (time_limit > 0) sp.time_limit = time_limit;

  drns::StaffingSolution sol;
  std::vector<drns::IterationRecord> log;
  const bool use_milp =
      method == "milp" ||
      (method == "auto" && wanted != drns::PoolStructure::Arbitrary);
  if (use_milp) {
    sol = drns::solve_monolithic(inst, wanted, sp);
  } else {
    drns::SeparationParams params;
    params.eps = eps;
    params.max_iter = max_iter;
    if (time_limit > 0) params.time_limit = time_limit;
    params.backend = sp;
    auto res = drns::solve_separation(inst, params);
    sol = res.solution;
    log = std::move(res.log);
    if (!res.converged)
      std::cerr << "warning: stopped at the iteration/time limit; the solution "
                   "is the current incumbent\n";
  }

  std::cerr << "dr_cost=" << sol.dr_cost << " first_stage=" << sol.first_stage_cost
            << " worst_case=" << sol.worst_case_expectation
            << " method=" << sol.method << " cuts=" << sol.cuts_used
            << " time=" << sol.wall_time_s << "s eps=" << eps
            << " mip_gap=" << mip_gap << "\n";
  if (!out_path.empty()) drns::write_solution(sol, out_path);
  if (!log_path.empty()) drns::write_iteration_log(log, log_path);
  return kOk;
}

int cmd_design(const std::string& path, double target, int candidates,
               double big_k, bool no_symmetry, int jobs,
               const std::string& out_path) {
  const drns::Instance inst = drns::read_instance(path);
  drns::OpdParams params;
  params.candidate_pools = candidates;
  params.big_k = big_k;
  params.symmetry_breaking = !no_symmetry;
  params.jobs = jobs;
  const drns::PoolDesign d = drns::solve_opd(inst, target, params);
  std::cerr << "pairs=" << d.pair_count << " achieved=" << d.achieved_dr_cost
            << " target=" << target << "\n";
  if (!out_path.empty()) drns::write_design(d, out_path);
  for (auto [j, k] : d.trained_pairs)
    std::cout << "cross-train units " << j + 1 << " and " << k + 1 << "\n";
  return kOk;
}

int cmd_frontier(const std::string& path, int points, int candidates, int jobs,
                 const std::string& out_path) {
  const drns::Instance inst = drns::read_instance(path);
  drns::OpdParams params;
  params.candidate_pools = candidates;
  params.jobs = jobs;
  const auto curve = drns::frontier(inst, points, params);
  FILE* out = out_path.empty() ? stdout : std::fopen(out_path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot write " + out_path);
  std::fprintf(out, "target,pairs\n");
  for (auto [t, pairs] : curve) std::fprintf(out, "%.10g,%d\n", t, pairs);
  if (out != stdout) std::fclose(out);
  return kOk;
}

int cmd_simulate(const std::string& path, const std::string& solution_path,
                 int samples, std::uint64_t seed, bool blind, int jobs,
                 const std::string& out_path, bool per_scenario) {
  const drns::Instance inst = drns::read_instance(path);
  drns::Staffing staffing;
  if (!solution_path.empty()) {
    const auto sol = drns::read_solution(solution_path);
    staffing = sol.staffing();
  } else {
    const drns::Instance solve_on =
        blind ? drns::absenteeism_blind_variant(inst) : inst;
    const auto structure = drns::classify_structure(solve_on);
    if (structure == drns::PoolStructure::Arbitrary)
      staffing = drns::solve_separation(solve_on).solution.staffing();
    else
      staffing = drns::solve_monolithic(solve_on, structure).staffing();
  }

  // Scenarios always follow the true attendance rates.
  const auto batch = drns::sample_scenarios(inst, staffing, samples, seed);
  const auto report = drns::out_of_sample(inst, staffing, batch, jobs);
  std::cout << "avg_cost=" << report.avg_cost
            << " avg_temporaries=" << report.avg_temporaries
            << " stddev=" << report.cost_stddev << " samples=" << samples
            << " seed=" << seed << (blind ? " (absenteeism-blind staffing)" : "")
            << "\n";
  if (!out_path.empty())
    drns::write_report(report, inst, staffing, seed, out_path, per_scenario);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributionally robust staffing for hospital units and float pools"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a random test instance");
  std::string gen_out = "instance.json", gen_structure = "one-pool";
  std::uint64_t gen_seed = 1;
  int gen_units = 5, gen_pools = 1;
  double gen_floor = 0.1, gen_ceiling = 1.5;
  gen->add_option("-o,--output", gen_out, "output file");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--units", gen_units, "number of units");
  gen->add_option("--pools", gen_pools, "number of pools");
  gen->add_option("--structure", gen_structure,
                  "no-pool|one-pool|disjoint|chained|arbitrary");
  gen->add_option("--staff-floor", gen_floor, "staffing lower-bound safety factor");
  gen->add_option("--resource-ceiling", gen_ceiling, "budget safety factor");

  // check
  auto* chk = app.add_subcommand("check", "validate an instance and certify the ambiguity set");
  std::string chk_path;
  chk->add_option("instance", chk_path, "instance file")->required();

  // solve
  auto* slv = app.add_subcommand("solve", "solve the robust staffing model");
  std::string slv_path, slv_method = "auto", slv_structure = "auto";
  std::string slv_out = "solution.json", slv_log;
  double slv_eps = 1e-6, slv_time = 0, slv_gap = 1e-9;
  int slv_iter = 500;
  slv->add_option("instance", slv_path, "instance file")->required();
  slv->add_option("--method", slv_method, "auto|separation|milp");
  slv->add_option("--structure", slv_structure, "auto|no-pool|one-pool|disjoint|chained");
  slv->add_option("-o,--output", slv_out, "solution file");
  slv->add_option("--log", slv_log, "iteration log (csv)");
  slv->add_option("--eps", slv_eps, "separation stopping tolerance");
  slv->add_option("--max-iter", slv_iter, "separation iteration limit");
  slv->add_option("--time-limit", slv_time, "wall-clock limit in seconds");
  slv->add_option("--mip-gap", slv_gap, "relative gap for the engine");

  // design
  auto* dsg = app.add_subcommand("design", "minimum cross-training pool design");
  std::string dsg_path, dsg_out = "design.json";
  double dsg_target = 0, dsg_bigk = 0;
  int dsg_candidates = 0, dsg_jobs = 1;
  bool dsg_nosym = false;
  dsg->add_option("instance", dsg_path, "instance file")->required();
  dsg->add_option("--target", dsg_target, "staffing cost target")->required();
  dsg->add_option("--candidates", dsg_candidates, "candidate pool count");
  dsg->add_option("--big-k", dsg_bigk, "override the box constant");
  dsg->add_flag("--no-symmetry", dsg_nosym, "drop the symmetry-breaking rows");
  dsg->add_option("--jobs", dsg_jobs, "threads");
  dsg->add_option("-o,--output", dsg_out, "design file");

  // frontier
  auto* frt = app.add_subcommand("frontier", "cost-target vs cross-training sweep");
  std::string frt_path, frt_out;
  int frt_points = 10, frt_candidates = 0, frt_jobs = 1;
  frt->add_option("instance", frt_path, "instance file")->required();
  frt->add_option("--points", frt_points, "number of sweep points");
  frt->add_option("--candidates", frt_candidates, "candidate pool count");
  frt->add_option("--jobs", frt_jobs, "points solved concurrently");
  frt->add_option("-o,--output", frt_out, "csv output (default stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "out-of-sample Monte Carlo evaluation");
  std::string sim_path, sim_solution, sim_out;
  int sim_samples = 10000, sim_jobs = 1;
  std::uint64_t sim_seed = 1;
  bool sim_blind = false, sim_per_scenario = false;
  sim->add_option("instance", sim_path, "instance file")->required();
  sim->add_option("--solution", sim_solution, "staffing to evaluate (file)");
  sim->add_option("--samples", sim_samples, "scenario count");
  sim->add_option("--seed", sim_seed, "scenario seed");
  sim->add_flag("--blind", sim_blind,
                "staff as if everyone shows up, then evaluate under the true rates");
  sim->add_option("--jobs", sim_jobs, "threads");
  sim->add_flag("--per-scenario", sim_per_scenario, "emit per-scenario costs");
  sim->add_option("-o,--output", sim_out, "report file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(gen_out, gen_seed, gen_units, gen_pools, gen_structure,
                          gen_floor, gen_ceiling);
    if (chk->parsed()) return cmd_check(chk_path);
    if (slv->parsed())
      return cmd_solve(slv_path, slv_method, slv_structure, slv_out, slv_log,
                       slv_eps, slv_iter, slv_time, slv_gap);
    if (dsg->parsed())
      return cmd_design(dsg_path, dsg_target, dsg_candidates, dsg_bigk, dsg_nosym,
                        dsg_jobs, dsg_out);
    if (frt->parsed())
      return cmd_frontier(frt_path, frt_points, frt_candidates, frt_jobs, frt_out);
    if (sim->parsed())
      return cmd_simulate(sim_path, sim_solution, sim_samples, sim_seed, sim_blind,
                          sim_jobs, sim_out, sim_per_scenario);
  } catch (const drns::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRejected;
  } catch (const drns::SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRejected;
  } catch (const drns::DesignError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRejected;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRejected;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
