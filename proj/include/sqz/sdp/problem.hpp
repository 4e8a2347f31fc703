#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sqz/sdp/linear_map.hpp"

namespace sqz::sdp {

enum class Cone { Psd, FreeHermitian };
enum class Sense { Minimize, Maximize };
enum class SolveStatus { Optimal, PrimalInfeasible, DualInfeasible, NumericalFailure };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::PrimalInfeasible: return "primal-infeasible";
    case SolveStatus::DualInfeasible: return "dual-infeasible";
    case SolveStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

struct ToleranceSet {
  double gap = 1e-8;
  double feas = 1e-8;
  double infeas = 1e-9;
  int max_iter = 200;
  double step_fraction = 0.98;
};

struct Variable {
  std::string name;
  int dim = 0;
  Cone cone = Cone::Psd;
};

struct Term {
  int var = 0;
  LinearMap map;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  CMat rhs;
};

/// Σ_i Re tr[C_i X_i] over Hermitian blocks X_i, subject to Σ_j L_ij(X_j) = B_i.
class SdpProblem {
 public:
  int add_variable(std::string name, int dim, Cone cone = Cone::Psd) {
    if (dim < 1) throw ModelError("SdpProblem: variable '" + name + "' has dimension < 1");
    if (find_variable(name) >= 0) throw ModelError("SdpProblem: duplicate variable '" + name + "'");
    vars_.push_back({std::move(name), dim, cone});
    objective_.push_back(CMat::Zero(dim, dim));
    return static_cast<int>(vars_.size()) - 1;
  }

  void set_sense(Sense s) { sense_ = s; }
  Sense sense() const { return sense_; }

  void set_objective(int var, const CMat& coeff) {
    check_var(var);
    const int n = vars_[var].dim;
    if (coeff.rows() != n || coeff.cols() != n) throw ModelError("SdpProblem: objective coefficient dimension");
    if (max_abs(coeff - coeff.adjoint()) > tol::kHermitian)
      throw ModelError("SdpProblem: objective coefficient is not Hermitian");
    objective_[var] = hermitian_part(coeff);
  }

  void add_constraint(std::string name, std::vector<Term> terms, const CMat& rhs) {
    if (terms.empty()) throw ModelError("SdpProblem: constraint '" + name + "' has no terms");
    if (rhs.rows() != rhs.cols()) throw ModelError("SdpProblem: constraint '" + name + "' rhs not square");
    if (max_abs(rhs - rhs.adjoint()) > tol::kHermitian)
      throw ModelError("SdpProblem: constraint '" + name + "' rhs is not Hermitian");
    for (const auto& t : terms) {
      check_var(t.var);
      if (t.map.in_dim() != vars_[t.var].dim)
        throw ModelError("SdpProblem: constraint '" + name + "' map input does not match variable '" +
                         vars_[t.var].name + "'");
      if (t.map.out_dim() != rhs.rows())
        throw ModelError("SdpProblem: constraint '" + name + "' map output does not match rhs");
    }
    cons_.push_back({std::move(name), std::move(terms), hermitian_part(rhs)});
  }

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return cons_; }
  const CMat& objective(int var) const { return objective_.at(var); }

  int find_variable(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return static_cast<int>(i);
    return -1;
  }

  /// Objective value at the given blocks, in the problem's own sense.
  double objective_value(const std::vector<CMat>& x) const {
    double v = 0.0;
    for (std::size_t i = 0; i < vars_.size(); ++i) v += (objective_[i] * x[i]).trace().real();
    return v;
  }

 private:
  void check_var(int var) const {
    if (var < 0 || var >= static_cast<int>(vars_.size())) throw ModelError("SdpProblem: unknown variable index");
  }

  std::vector<Variable> vars_;
  std::vector<CMat> objective_;
  std::vector<Constraint> cons_;
  Sense sense_ = Sense::Minimize;
};

struct SdpSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  double primal_value = 0.0;
  double dual_value = 0.0;
  std::map<std::string, CMat> variable_values;
  /// Hermitian multiplier Y_i per constraint. Lagrangian ⟨C,X⟩ + Σ Re tr[Y_i (B_i − L_i(X))].
  std::map<std::string, CMat> dual_values;
  /// C_j − Σ_i L_ij*(Y_i) per variable (PSD at optimality, zero for free blocks).
  std::map<std::string, CMat> dual_slacks;
  double max_residual = 0.0;
  int iterations = 0;

  const CMat& value(const std::string& name) const {
    auto it = variable_values.find(name);
    if (it == variable_values.end()) throw ModelError("SdpSolution: no variable '" + name + "'");
    return it->second;
  }
  const CMat& dual(const std::string& name) const {
    auto it = dual_values.find(name);
    if (it == dual_values.end()) throw ModelError("SdpSolution: no constraint '" + name + "'");
    return it->second;
  }
};

}  // namespace sqz::sdp
