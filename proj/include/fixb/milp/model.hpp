#pragma once

// Backend-neutral mixed-integer linear model: variables, linear rows, a
// linear objective to minimize, and variable fixings.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fixb::milp {

enum class VarKind { kBinary, kContinuous };
enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = 0.0;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Model {
 public:
  explicit Model(std::string name = "model") : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  int add_variable(std::string name, VarKind kind, double lower, double upper);
  int add_binary(std::string name) { return add_variable(std::move(name), VarKind::kBinary, 0, 1); }
  int add_constraint(std::string name, std::vector<Term> terms, Sense sense, double rhs);
  void set_objective(std::vector<Term> terms, double constant = 0.0);

  // Fixes a variable by tightening both bounds. Binary variables accept only
  // 0 or 1. Throws ModelError when the value lies outside the current bounds.
  void fix(int var, double value);
  void fix(std::string_view name, double value);
  bool is_fixed(int var) const { return vars_[var].lower == vars_[var].upper; }

  std::optional<int> find(std::string_view name) const;

  int variable_count() const { return static_cast<int>(vars_.size()); }
  int constraint_count() const { return static_cast<int>(rows_.size()); }
  int binary_count() const;
  const std::vector<Variable>& variables() const { return vars_; }
  const Variable& variable(int var) const { return vars_[var]; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const std::vector<Term>& objective() const { return objective_; }
  double objective_constant() const { return objective_constant_; }

  // True when every objective and row coefficient, right-hand side and bound
  // is integral, so optimal objective values of the MIP are integers.
  bool integral_data() const;

  // CPLEX LP text format.
  void write_lp(std::ostream& out) const;

 private:
  void check_var(int var) const;

  std::string name_;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<Term> objective_;
  double objective_constant_ = 0.0;
  std::unordered_map<std::string, int> by_name_;
};

}  // namespace fixb::milp
