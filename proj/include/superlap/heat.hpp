#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "superlap/elliptic.hpp"

namespace superlap {

enum class TimeScheme { implicit_euler, crank_nicolson };

std::string to_string(TimeScheme scheme);
TimeScheme parse_time_scheme(const std::string& text);

struct HeatTrace {
  std::vector<double> times;
  std::vector<double> mass;       ///< int_Omega u
  std::vector<double> energy;     ///< 1/2 u^T A~ u
  std::vector<double> deviation;  ///< int_Omega |u - m|^2
  Eigen::VectorXd final_interior;
  Eigen::VectorXd final_field;  ///< with the exterior lifted
};

/// theta-scheme (M + theta dt A~) u_{n+1} = (M - (1-theta) dt A~) u_n on the
/// interior DOFs; the exterior follows through the Neumann lift. The left
/// matrix is factorized once.
class HeatStepper {
 public:
  HeatStepper(const AssembledSystem& sys, double dt, TimeScheme scheme);
  HeatStepper(const AssembledSystem& sys, ReducedOperator reduced, double dt, TimeScheme scheme);

  Eigen::VectorXd step(const Eigen::VectorXd& u) const;
  double dt() const { return dt_; }
  TimeScheme scheme() const { return scheme_; }
  const ReducedOperator& reduced() const { return reduced_; }
  const Eigen::MatrixXd& mass() const { return mass_; }

  double total_mass(const Eigen::VectorXd& u) const;
  double energy(const Eigen::VectorXd& u) const;
  double deviation(const Eigen::VectorXd& u) const;

 private:
  ReducedOperator reduced_;
  Eigen::MatrixXd mass_;
  Eigen::VectorXd ones_mass_;  // M 1
  double omega_length_;
  double dt_;
  TimeScheme scheme_;
  Eigen::MatrixXd rhs_;
  Eigen::LLT<Eigen::MatrixXd> lhs_;
};

/// Integrates from t = 0 to T_end (rounded to a whole number of steps) and
/// records the diagnostics at every step, including t = 0.
HeatTrace evolve(const HeatStepper& stepper, const Eigen::VectorXd& u0, double t_end);
HeatTrace evolve(const AssembledSystem& sys, const Eigen::VectorXd& u0, double dt, double t_end,
                 TimeScheme scheme);

}  // namespace superlap
