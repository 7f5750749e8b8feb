#pragma once

#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace drns {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class SolveStatus { Optimal, Infeasible, Unbounded, Limit };

enum class RowSense { LessEqual, GreaterEqual, Equal };

// Column-oriented linear model handed to the engine in one shot.
class LinearModel {
 public:
  int add_var(double lb, double ub, bool integer, std::string name = {});
  int add_row(std::vector<int> idx, std::vector<double> coef, RowSense sense,
              double rhs, std::string name = {});

  void set_minimize(bool minimize) { minimize_ = minimize; }
  void set_objective(int var, double coef) { obj_.at(var) = coef; }
  void add_objective(int var, double coef) { obj_.at(var) += coef; }
  void add_objective_constant(double c) { obj_constant_ += c; }

  int var_count() const { return static_cast<int>(obj_.size()); }
  int row_count() const { return static_cast<int>(row_rhs_.size()); }
  bool has_integers() const;
  double objective_constant() const { return obj_constant_; }
  double objective_coeff(int var) const { return obj_.at(var); }
  void clear_objective();

  // Evaluates the objective (including the constant) at a point.
  double objective_value(const std::vector<double>& x) const;

 private:
  friend struct BackendAccess;
  std::vector<double> lb_, ub_, obj_;
  std::vector<bool> integer_;
  std::vector<std::string> var_names_;
  std::vector<std::vector<int>> row_idx_;
  std::vector<std::vector<double>> row_coef_;
  std::vector<RowSense> row_sense_;
  std::vector<double> row_rhs_;
  std::vector<std::string> row_names_;
  bool minimize_ = true;
  double obj_constant_ = 0.0;
};

struct SolveParams {
  double time_limit = kInf;
  double mip_gap = 1e-9;
  double feasibility_tol = 1e-7;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Limit;
  double objective = 0.0;          // includes the model's objective constant
  std::vector<double> values;      // primal point; empty unless an incumbent exists
  std::vector<double> row_duals;   // filled for pure LPs solved to optimality
  double gap = 0.0;
  double wall_time_s = 0.0;

  bool has_point() const { return !values.empty(); }
};

struct BackendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solves via the embedded engine. Deterministic for a fixed seed; single
// threaded unless DRNS_SOLVER_THREADS is set. When DRNS_DUMP_LP_DIR is set,
// every model is also written there in LP format.
SolveOutcome solve(const LinearModel& model, const SolveParams& params = {});

void write_lp_file(const LinearModel& model, const std::filesystem::path& path);

}  // namespace drns
