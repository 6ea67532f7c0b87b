#include <chrono>
#include <cmath>

#include "Highs.h"
#include "fixb/milp/backend.hpp"

namespace fixb::milp {

namespace {

class HighsBackend : public Backend {
 public:
  std::string name() const override { return "highs"; }

  std::string parameters() const override {
    return "highs " + std::string(highsVersion()) + " defaults, output_flag=false";
  }

  SolveOutcome solve(const Model& model, const SolveOptions& options) override {
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    Highs highs;
    highs.setOptionValue("output_flag", false);
    if (std::isfinite(options.time_limit)) {
      highs.setOptionValue("time_limit", std::max(options.time_limit, 0.0));
    }
    if (highs.passModel(to_lp(model, options.relax)) == HighsStatus::kError) {
      out.message = "highs rejected the model";
      return out;
    }
    HighsStatus run = highs.run();
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (run == HighsStatus::kError) {
      out.message = "highs run failed: " + highs.modelStatusToString(highs.getModelStatus());
      return out;
    }

    const HighsInfo& info = highs.getInfo();
    const bool has_solution = info.primal_solution_status == kSolutionStatusFeasible;
    const HighsModelStatus status = highs.getModelStatus();
    switch (status) {
      case HighsModelStatus::kOptimal:
        out.status = Status::kOptimal;
        break;
      case HighsModelStatus::kInfeasible:
      case HighsModelStatus::kUnboundedOrInfeasible:
        out.status = Status::kInfeasible;
        break;
      case HighsModelStatus::kTimeLimit:
        out.status = Status::kTimeLimit;
        break;
      case HighsModelStatus::kInterrupt:
      case HighsModelStatus::kSolutionLimit:
      case HighsModelStatus::kIterationLimit:
        out.status = has_solution ? Status::kFeasible : Status::kError;
        break;
      default:
        out.status = Status::kError;
        break;
    }
    out.message = highs.modelStatusToString(status);
    if (out.status == Status::kOptimal && !has_solution) {
      out.status = Status::kError;
      out.message = "optimal status without a primal solution";
    }
    if (has_solution && out.status != Status::kInfeasible && out.status != Status::kError) {
      out.values = highs.getSolution().col_value;
      out.objective = info.objective_function_value;
    }
    if (!options.relax && highs.getLp().isMip() && std::isfinite(info.mip_dual_bound)) {
      out.bound = info.mip_dual_bound;
    } else if (out.status == Status::kOptimal) {
      out.bound = out.objective;
    }
    return out;
  }

 private:
  static HighsLp to_lp(const Model& model, bool relax) {
    HighsLp lp;
    const auto& vars = model.variables();
    const auto& rows = model.constraints();
    lp.num_col_ = static_cast<HighsInt>(vars.size());
    lp.num_row_ = static_cast<HighsInt>(rows.size());
    lp.col_cost_.assign(vars.size(), 0.0);
    for (const Term& t : model.objective()) lp.col_cost_[t.var] += t.coef;
    lp.offset_ = model.objective_constant();
    bool any_integer = false;
    for (const Variable& v : vars) {
      lp.col_lower_.push_back(v.lower);
      lp.col_upper_.push_back(v.upper);
      bool integer = !relax && v.kind == VarKind::kBinary;
      any_integer |= integer;
      lp.integrality_.push_back(integer ? HighsVarType::kInteger : HighsVarType::kContinuous);
    }
    if (!any_integer) lp.integrality_.clear();

    const double inf = kHighsInf;
    lp.a_matrix_.format_ = MatrixFormat::kRowwise;
    lp.a_matrix_.num_col_ = lp.num_col_;
    lp.a_matrix_.num_row_ = lp.num_row_;
    lp.a_matrix_.start_.assign(1, 0);
    for (const Constraint& c : rows) {
      lp.row_lower_.push_back(c.sense == Sense::kLessEqual ? -inf : c.rhs);
      lp.row_upper_.push_back(c.sense == Sense::kGreaterEqual ? inf : c.rhs);
      for (const Term& t : c.terms) {
        lp.a_matrix_.index_.push_back(t.var);
        lp.a_matrix_.value_.push_back(t.coef);
      }
      lp.a_matrix_.start_.push_back(static_cast<HighsInt>(lp.a_matrix_.index_.size()));
    }
    return lp;
  }
};

}  // namespace

std::unique_ptr<Backend> make_highs_backend() { return std::make_unique<HighsBackend>(); }

}  // namespace fixb::milp
