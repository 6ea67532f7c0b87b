#include "fixb/milp/model.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace fixb::milp {

int Model::add_variable(std::string name, VarKind kind, double lower, double upper) {
  if (lower > upper) throw ModelError("variable " + name + " has empty bounds");
  if (by_name_.contains(name)) throw ModelError("duplicate variable name " + name);
  int id = static_cast<int>(vars_.size());
  by_name_.emplace(name, id);
  vars_.push_back({std::move(name), kind, lower, upper});
  return id;
}

int Model::add_constraint(std::string name, std::vector<Term> terms, Sense sense, double rhs) {
  for (const Term& t : terms) check_var(t.var);
  rows_.push_back({std::move(name), std::move(terms), sense, rhs});
  return static_cast<int>(rows_.size()) - 1;
}

void Model::set_objective(std::vector<Term> terms, double constant) {
  for (const Term& t : terms) check_var(t.var);
  objective_ = std::move(terms);
  objective_constant_ = constant;
}

void Model::fix(int var, double value) {
  check_var(var);
  Variable& v = vars_[var];
  if (v.kind == VarKind::kBinary && value != 0.0 && value != 1.0) {
    throw ModelError("binary " + v.name + " cannot be fixed to " + std::to_string(value));
  }
  if (value < v.lower || value > v.upper) {
    throw ModelError("cannot fix " + v.name + " to " + std::to_string(value) +
                     " outside its bounds [" + std::to_string(v.lower) + ", " +
                     std::to_string(v.upper) + "]");
  }
  v.lower = v.upper = value;
}

void Model::fix(std::string_view name, double value) {
  auto id = find(name);
  if (!id) throw ModelError("unknown variable " + std::string(name));
  fix(*id, value);
}

std::optional<int> Model::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

int Model::binary_count() const {
  int count = 0;
  for (const Variable& v : vars_) count += v.kind == VarKind::kBinary;
  return count;
}

bool Model::integral_data() const {
  auto integral = [](double x) { return !std::isfinite(x) || x == std::floor(x); };
  for (const Term& t : objective_) {
    if (!integral(t.coef)) return false;
  }
  if (!integral(objective_constant_)) return false;
  for (const Constraint& c : rows_) {
    if (!integral(c.rhs)) return false;
    for (const Term& t : c.terms) {
      if (!integral(t.coef)) return false;
    }
  }
  return true;
}

void Model::check_var(int var) const {
  if (var < 0 || var >= variable_count()) {
    throw ModelError("variable id " + std::to_string(var) + " does not exist");
  }
}

namespace {

void write_terms(std::ostream& out, const Model& model, const std::vector<Term>& terms) {
  if (terms.empty()) {
    out << " 0 " << model.variable(0).name;
    return;
  }
  int on_line = 0;
  for (const Term& t : terms) {
    out << (t.coef < 0 ? " - " : " + ") << std::abs(t.coef) << ' ' << model.variable(t.var).name;
    if (++on_line % 8 == 0) out << "\n  ";
  }
}

void write_bound(std::ostream& out, double x) {
  if (x == std::numeric_limits<double>::infinity()) {
    out << "+inf";
  } else if (x == -std::numeric_limits<double>::infinity()) {
    out << "-inf";
  } else {
    out << x;
  }
}

}  // namespace

void Model::write_lp(std::ostream& out) const {
  out.precision(17);
  out << "\\ " << name_ << "\nMinimize\n obj:";
  write_terms(out, *this, objective_);
  if (objective_constant_ != 0.0) {
    out << (objective_constant_ < 0 ? " - " : " + ") << std::abs(objective_constant_);
  }
  out << "\nSubject To\n";
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Constraint& c = rows_[r];
    out << ' ' << (c.name.empty() ? "r" + std::to_string(r) : c.name) << ':';
    write_terms(out, *this, c.terms);
    switch (c.sense) {
      case Sense::kLessEqual: out << " <= "; break;
      case Sense::kGreaterEqual: out << " >= "; break;
      case Sense::kEqual: out << " = "; break;
    }
    out << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (const Variable& v : vars_) {
    out << ' ';
    write_bound(out, v.lower);
    out << " <= " << v.name << " <= ";
    write_bound(out, v.upper);
    out << '\n';
  }
  bool any_binary = false;
  for (const Variable& v : vars_) {
    if (v.kind != VarKind::kBinary) continue;
    if (!any_binary) out << "Generals\n";
    any_binary = true;
    out << ' ' << v.name << '\n';
  }
  out << "End\n";
}

}  // namespace fixb::milp
