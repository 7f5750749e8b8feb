#include "drns/backend.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>

#include "Highs.h"

namespace drns {

int LinearModel::add_var(double lb, double ub, bool integer, std::string name) {
  if (!(lb <= ub)) throw BackendError("variable bounds crossed: " + name);
  lb_.push_back(lb);
  ub_.push_back(ub);
  obj_.push_back(0.0);
  integer_.push_back(integer);
  var_names_.push_back(std::move(name));
  return static_cast<int>(lb_.size()) - 1;
}

int LinearModel::add_row(std::vector<int> idx, std::vector<double> coef,
                         RowSense sense, double rhs, std::string name) {
  if (idx.size() != coef.size()) throw BackendError("row term size mismatch");
  for (int v : idx)
    if (v < 0 || v >= var_count())
      throw BackendError("row references unknown variable");
  row_idx_.push_back(std::move(idx));
  row_coef_.push_back(std::move(coef));
  row_sense_.push_back(sense);
  row_rhs_.push_back(rhs);
  row_names_.push_back(std::move(name));
  return static_cast<int>(row_rhs_.size()) - 1;
}

bool LinearModel::has_integers() const {
  for (bool b : integer_)
    if (b) return true;
  return false;
}

void LinearModel::clear_objective() {
  std::fill(obj_.begin(), obj_.end(), 0.0);
  obj_constant_ = 0.0;
}

double LinearModel::objective_value(const std::vector<double>& x) const {
  double v = obj_constant_;
  for (int i = 0; i < var_count(); ++i) v += obj_[i] * x[i];
  return v;
}

struct BackendAccess {
  static HighsModel to_highs(const LinearModel& m) {
    HighsModel hm;
    HighsLp& lp = hm.lp_;
    lp.num_col_ = m.var_count();
    lp.num_row_ = m.row_count();
    lp.col_cost_ = m.obj_;
    lp.col_lower_ = m.lb_;
    lp.col_upper_ = m.ub_;
    lp.offset_ = m.obj_constant_;
    lp.sense_ = m.minimize_ ? ObjSense::kMinimize : ObjSense::kMaximize;

    lp.row_lower_.resize(lp.num_row_);
    lp.row_upper_.resize(lp.num_row_);
    for (int r = 0; r < lp.num_row_; ++r) {
      switch (m.row_sense_[r]) {
        case RowSense::LessEqual:
          lp.row_lower_[r] = -kInf;
          lp.row_upper_[r] = m.row_rhs_[r];
          break;
        case RowSense::GreaterEqual:
          lp.row_lower_[r] = m.row_rhs_[r];
          lp.row_upper_[r] = kInf;
          break;
        case RowSense::Equal:
          lp.row_lower_[r] = lp.row_upper_[r] = m.row_rhs_[r];
          break;
      }
    }

    lp.a_matrix_.format_ = MatrixFormat::kRowwise;
    lp.a_matrix_.start_.assign(1, 0);
    for (int r = 0; r < lp.num_row_; ++r) {
      for (size_t k = 0; k < m.row_idx_[r].size(); ++k) {
        lp.a_matrix_.index_.push_back(m.row_idx_[r][k]);
        lp.a_matrix_.value_.push_back(m.row_coef_[r][k]);
      }
      lp.a_matrix_.start_.push_back(static_cast<HighsInt>(lp.a_matrix_.index_.size()));
    }
    lp.a_matrix_.num_col_ = lp.num_col_;
    lp.a_matrix_.num_row_ = lp.num_row_;

    if (m.has_integers()) {
      lp.integrality_.resize(lp.num_col_, HighsVarType::kContinuous);
      for (int c = 0; c < lp.num_col_; ++c)
        if (m.integer_[c]) lp.integrality_[c] = HighsVarType::kInteger;
    }
    return hm;
  }
};

namespace {

int configured_threads() {
  if (const char* env = std::getenv("DRNS_SOLVER_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void apply_options(Highs& highs, const SolveParams& params) {
  highs.setOptionValue("output_flag", false);
  highs.setOptionValue("random_seed", 0);
  highs.setOptionValue("threads", configured_threads());
  if (params.time_limit < kInf) highs.setOptionValue("time_limit", params.time_limit);
  highs.setOptionValue("mip_rel_gap", params.mip_gap);
  highs.setOptionValue("primal_feasibility_tolerance", params.feasibility_tol);
}

std::atomic<int> dump_counter{0};

void maybe_dump(Highs& highs) {
  if (const char* dir = std::getenv("DRNS_DUMP_LP_DIR")) {
    const int n = dump_counter.fetch_add(1);
    const auto path =
        std::filesystem::path(dir) / ("model_" + std::to_string(n) + ".lp");
    highs.writeModel(path.string());
  }
}

}  // namespace

SolveOutcome solve(const LinearModel& model, const SolveParams& params) {
  Highs highs;
  apply_options(highs, params);
  if (highs.passModel(BackendAccess::to_highs(model)) != HighsStatus::kOk)
    throw BackendError("engine rejected the model");
  maybe_dump(highs);

  const auto start = std::chrono::steady_clock::now();
  if (highs.run() == HighsStatus::kError)
    throw BackendError("engine failed: " + highs.modelStatusToString(highs.getModelStatus()));
  auto status = highs.getModelStatus();
  if (status == HighsModelStatus::kUnboundedOrInfeasible) {
    highs.setOptionValue("presolve", "off");
    highs.run();
    status = highs.getModelStatus();
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;

  SolveOutcome out;
  out.wall_time_s = elapsed.count();
  const HighsInfo& info = highs.getInfo();

  switch (status) {
    case HighsModelStatus::kOptimal:
      out.status = SolveStatus::Optimal;
      break;
    case HighsModelStatus::kInfeasible:
      out.status = SolveStatus::Infeasible;
      break;
    case HighsModelStatus::kUnbounded:
    case HighsModelStatus::kUnboundedOrInfeasible:
      out.status = SolveStatus::Unbounded;
      break;
    case HighsModelStatus::kTimeLimit:
    case HighsModelStatus::kIterationLimit:
    case HighsModelStatus::kSolutionLimit:
      out.status = SolveStatus::Limit;
      break;
    default:
      throw BackendError("engine stopped: " +
                         highs.modelStatusToString(status));
  }

  const bool have_point =
      info.primal_solution_status == kSolutionStatusFeasible &&
      (out.status == SolveStatus::Optimal || out.status == SolveStatus::Limit);
  if (have_point) {
    out.values = highs.getSolution().col_value;
    out.objective = info.objective_function_value;
    out.gap = model.has_integers() && info.mip_gap >= 0 ? info.mip_gap : 0.0;
    if (!model.has_integers() && out.status == SolveStatus::Optimal)
      out.row_duals = highs.getSolution().row_dual;
  }
  return out;
}

void write_lp_file(const LinearModel& model, const std::filesystem::path& path) {
  Highs highs;
  highs.setOptionValue("output_flag", false);
  highs.passModel(BackendAccess::to_highs(model));
  if (highs.writeModel(path.string()) == HighsStatus::kError)
    throw BackendError("cannot write model to " + path.string());
}

}  // namespace drns
